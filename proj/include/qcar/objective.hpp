#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcar/model.hpp"
#include "qcar/road.hpp"
#include "qcar/simulate.hpp"

namespace qcar {

// The four stock weighting presets for J = A_s*|sigma_aw - sigma_ref| +
// A_f*|R_ft - R_ref|, plus free-form custom weights.
enum class PresetTag {
    MinSigmaAw,     // (A_s, A_f) = (1, 0), refs 0: J = sigma_aw
    MinRft,         // (0, 1), refs 0: J = R_ft
    SigmaGivenRft,  // (1, 100), R_ref set: comfort subject to a road-holding target
    RftGivenSigma,  // (100, 1), sigma_ref set: road-holding subject to a comfort target
    Custom,
};

struct ObjectiveConfig {
    double A_s = 1.0;        // comfort weight [-]
    double A_f = 0.0;        // contact weight [-]
    double sigma_ref = 0.0;  // comfort reference [m/s^2]
    double R_ref = 0.0;      // road-holding reference [-]
    PresetTag tag = PresetTag::Custom;

    static ObjectiveConfig preset(PresetTag tag, double ref = 0.0);
    std::string name() const;
    void validate() const;
};

PresetTag preset_from_string(const std::string& name);
const char* to_string(PresetTag tag);

// One operating condition: vehicle, natural frequency, stochastic road
// spec, speed, plus the transient input used for settling time.
struct Scenario {
    VehicleParams params = light_vehicle();
    double f_n = 1.5;          // [Hz]
    ProfileSpec road;          // stochastic excitation (seed = base seed)
    double v = 40.0;           // traversal speed [m/s]
    SimConfig sim;             // dt / integrator settings (v, duration come from the scenario)
    double warmup = 2.0;       // leading seconds excluded from stochastic metrics [s]
    int n_realizations = 1;    // profiles averaged per evaluation
    BumpInput bump{0.05, 3.7, 10.0};  // transient input for settling time
    double transient_speed = 5.0;     // [m/s]
    double settling_band = 0.05;      // settling tolerance band [-]
    bool with_settling = false;       // compute t_s on every evaluation
    void validate() const;
};

// A Scenario with every road realization pre-sampled onto the integrator
// grid. Building one is the expensive step; evaluations then cost a single
// RK4 pass per realization. Safe to share across threads (read-only).
struct PreparedScenario {
    Scenario scenario;
    std::vector<std::uint64_t> realization_seeds;
    std::vector<std::vector<double>> road_half_grids;
    int nsteps = 0;   // output steps of the stochastic run
    int n_sub = 1;    // internal substeps per output interval
    std::vector<double> bump_half_grid;
    int bump_nsteps = 0;
    double bump_disturbance_end = 0.0;  // [s]
};

PreparedScenario prepare(const Scenario& scenario);

struct Evaluation {
    double J;         // objective value
    double sigma_aw;  // weighted RMS acceleration [m/s^2] (realization average)
    double R_ft;      // contact-force ratio [-] (realization average)
    double t_s;       // settling time [s]; NaN unless settling was computed
    bool settled = false;
};

// Simulates every realization at (zeta_n, zeta_p), averages the metrics, and
// scalarizes them. Deterministic per (zeta, scenario, config).
Evaluation evaluate(double zeta_n, double zeta_p, const PreparedScenario& prepared,
                    const ObjectiveConfig& config);

}  // namespace qcar
