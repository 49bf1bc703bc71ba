#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcar/cross_entropy.hpp"
#include "qcar/metrics.hpp"
#include "qcar/objective.hpp"

namespace qcar {

// Declarative description of a study, loadable from a JSON file
// (see configs/ and the README for the schema).
struct StudyConfig {
    std::string vehicle = "light";  // "light", "mid_heavy", or "custom"
    VehicleParams params = light_vehicle();
    ProfileSpec road;
    double speed = 40.0;
    std::vector<double> fn_grid = {1.0, 1.25, 1.5, 1.75, 2.0};
    std::vector<ObjectiveConfig> presets = {ObjectiveConfig::preset(PresetTag::MinSigmaAw)};
    CEConfig ce;
    int contour_resolution = 41;
    int n_realizations = 1;
    double warmup = 2.0;
    double dt = 1e-3;
    BumpInput bump{0.05, 3.7, 10.0};
    double transient_speed = 5.0;
    double settling_band = 0.05;
    std::string transient_type = "bump";  // or "step"
    std::vector<std::pair<double, double>> transient_designs;  // (zeta_n, zeta_p)
    std::vector<std::uint64_t> study_seeds;  // realization-study seeds
    int workers = 1;
    std::string out_dir = "results";

    Scenario scenario(double f_n) const;
    void validate() const;
};

StudyConfig load_study_config(const std::string& path);
StudyConfig parse_study_config(const std::string& json_text);

// Full resolved configuration as one-line JSON; embedded in every output
// file so results can be reproduced bitwise.
std::string resolved_config(const StudyConfig& config);

struct SweepCell {
    double f_n;
    ObjectiveConfig preset;
    double zeta_n, zeta_p;       // optimum found
    Evaluation at_optimum;       // metrics at the optimum (settling included)
    CEResult ce;
    bool failed = false;
    std::string error;
};

struct StudyResult {
    std::vector<SweepCell> cells;
    std::string provenance;
};

// One Cross-Entropy optimization per (f_n, preset); writes sweep_summary.csv
// plus a per-cell trace file into out_dir. Per-cell failures are recorded
// and the remaining cells still run.
StudyResult run_optimization_sweep(const StudyConfig& study);

struct ContourGrid {
    double f_n;
    int resolution;
    std::vector<double> zeta_n, zeta_p;     // grid axes (both length `resolution`)
    std::vector<double> sigma_aw, R_ft, t_s;  // row-major [i_zn * resolution + i_zp]; NaN on failure
};

// Dense metric maps over (zeta_n, zeta_p) at fixed f_n: one stochastic run
// per cell plus one bump run for settling time; writes contour_fn<..>.csv.
ContourGrid run_contour_grid(const StudyConfig& study, double f_n);

struct TransientRun {
    double zeta_n, zeta_p;
    SimResult result;
    double disturbance_end;  // [s]
    SettlingResult settling;
};

// Bump/step response of each listed design at the transient speed; writes
// one time-series file per design.
std::vector<TransientRun> run_transient_comparison(const StudyConfig& study,
                                                   const std::vector<std::pair<double, double>>& designs,
                                                   const RoadExcitation& excitation);

struct RealizationSummary {
    std::vector<std::uint64_t> seeds;
    std::vector<SweepCell> per_seed;          // flattened per (seed, f_n, preset)
    // mean/std over seeds per (f_n, preset), aligned with mean_keys; std is
    // NaN when only one seed was run.
    std::vector<std::pair<double, std::string>> mean_keys;  // (f_n, preset name)
    std::vector<std::vector<double>> mean_rows;  // zeta_n, zeta_p, sigma_aw, R_ft
    std::vector<std::vector<double>> std_rows;
};

// Repeats the optimization sweep across seeds and reports the dispersion of
// the optima; writes realization_summary.csv.
RealizationSummary run_realization_study(const StudyConfig& study, int n_seeds);

}  // namespace qcar
