// Command-line entry point: scenario studies for a passive quarter-car
// suspension with asymmetric damping. See README.md for the config schema.
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcar/metrics.hpp"
#include "qcar/runner.hpp"
#include "qcar/util.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::uint64_t seed = 0;
    std::string out_dir;
    int workers = 0;
    std::string road_class;
    double speed = 0.0;
    double fn = 0.0;
    std::string preset;
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "Study configuration file (JSON)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--seed", args.seed, "Master seed (road synthesis and optimizer)");
    cmd->add_option("--out", args.out_dir, "Output directory");
    cmd->add_option("--workers", args.workers, "Worker threads (default 1)");
    cmd->add_option("--road-class", args.road_class, "ISO road class A..H");
    cmd->add_option("--speed", args.speed, "Vehicle speed over the stochastic road [m/s]");
    cmd->add_option("--fn", args.fn, "Natural frequency [Hz]; replaces the config grid");
    cmd->add_option("--preset", args.preset,
                    "Objective preset: min_sigma_aw, min_r_ft, sigma_given_r_ft, r_ft_given_sigma");
}

qcar::StudyConfig load_study(const CLI::App* cmd, const CommonArgs& args) {
    qcar::StudyConfig study;
    if (!args.config_path.empty()) study = qcar::load_study_config(args.config_path);
    if (cmd->count("--seed")) {
        study.road.seed = args.seed;
        study.ce.seed = args.seed;
    }
    if (cmd->count("--out")) study.out_dir = args.out_dir;
    if (cmd->count("--workers")) study.workers = args.workers;
    if (cmd->count("--road-class"))
        study.road.road_class = qcar::road_class_from_string(args.road_class);
    if (cmd->count("--speed")) study.speed = args.speed;
    if (cmd->count("--fn")) study.fn_grid = {args.fn};
    if (cmd->count("--preset"))
        study.presets = {qcar::ObjectiveConfig::preset(qcar::preset_from_string(args.preset))};
    study.validate();
    return study;
}

int run_sweep(const CLI::App* cmd, const CommonArgs& args) {
    qcar::StudyConfig study = load_study(cmd, args);
    qcar::StudyResult result = qcar::run_optimization_sweep(study);
    int failures = 0;
    for (const qcar::SweepCell& cell : result.cells) {
        std::cout << "f_n=" << qcar::format_double(cell.f_n) << " preset=" << cell.preset.name();
        if (cell.failed) {
            std::cout << " FAILED: " << cell.error << "\n";
            ++failures;
            continue;
        }
        std::cout << " zeta_n=" << qcar::format_double(cell.zeta_n)
                  << " zeta_p=" << qcar::format_double(cell.zeta_p)
                  << " sigma_aw=" << qcar::format_double(cell.at_optimum.sigma_aw)
                  << " R_ft=" << qcar::format_double(cell.at_optimum.R_ft)
                  << " t_s=" << qcar::format_double(cell.at_optimum.t_s) << "\n";
    }
    std::cout << "wrote " << study.out_dir << "/sweep_summary.csv\n";
    return failures == 0 ? 0 : 1;
}

int run_contour(const CLI::App* cmd, const CommonArgs& args) {
    qcar::StudyConfig study = load_study(cmd, args);
    double fn = cmd->count("--fn") ? args.fn : study.fn_grid.front();
    qcar::ContourGrid grid = qcar::run_contour_grid(study, fn);
    std::cout << "wrote " << study.out_dir << "/contour_fn";
    std::string label = qcar::format_double(fn);
    for (char& c : label)
        if (c == '.') c = 'p';
    std::cout << label << ".csv (" << grid.resolution << "x" << grid.resolution << " cells)\n";
    return 0;
}

int run_transient(const CLI::App* cmd, const CommonArgs& args) {
    qcar::StudyConfig study = load_study(cmd, args);
    std::vector<std::pair<double, double>> designs = study.transient_designs;
    if (designs.empty()) designs = {{0.3, 0.3}, {0.2, 0.6}};
    qcar::RoadExcitation excitation;
    if (study.transient_type == "step")
        excitation = qcar::StepInput{study.bump.height, study.bump.x0};
    else
        excitation = study.bump;
    std::vector<qcar::TransientRun> runs =
        qcar::run_transient_comparison(study, designs, excitation);
    for (const qcar::TransientRun& run : runs) {
        std::cout << "zeta_n=" << qcar::format_double(run.zeta_n)
                  << " zeta_p=" << qcar::format_double(run.zeta_p)
                  << " t_s=" << qcar::format_double(run.settling.t_s)
                  << " settled=" << (run.settling.settled ? "yes" : "no") << "\n";
    }
    std::cout << "wrote " << runs.size() << " time-series files to " << study.out_dir << "\n";
    return 0;
}

int run_realizations(const CLI::App* cmd, const CommonArgs& args, int n_seeds) {
    qcar::StudyConfig study = load_study(cmd, args);
    if (n_seeds <= 0)
        n_seeds = study.study_seeds.empty() ? 5 : static_cast<int>(study.study_seeds.size());
    qcar::RealizationSummary summary = qcar::run_realization_study(study, n_seeds);
    for (std::size_t i = 0; i < summary.mean_keys.size(); ++i) {
        const auto& key = summary.mean_keys[i];
        const auto& mean = summary.mean_rows[i];
        const auto& sd = summary.std_rows[i];
        std::cout << "f_n=" << qcar::format_double(key.first) << " preset=" << key.second
                  << " zeta_n=" << qcar::format_double(mean[0]) << "+-"
                  << qcar::format_double(sd[0]) << " zeta_p=" << qcar::format_double(mean[1])
                  << "+-" << qcar::format_double(sd[1]) << "\n";
    }
    std::cout << "wrote " << study.out_dir << "/realization_summary.csv\n";
    return 0;
}

int run_single(const CLI::App* cmd, const CommonArgs& args, double zeta_n, double zeta_p) {
    qcar::StudyConfig study = load_study(cmd, args);
    double fn = cmd->count("--fn") ? args.fn : study.fn_grid.front();
    qcar::Scenario scenario = study.scenario(fn);
    scenario.with_settling = true;
    qcar::PreparedScenario prepared = qcar::prepare(scenario);
    qcar::Evaluation ev =
        qcar::evaluate(zeta_n, zeta_p, prepared, qcar::ObjectiveConfig::preset(qcar::PresetTag::MinSigmaAw));
    std::string comfort;
    for (qcar::ComfortLevel level : qcar::classify_comfort(ev.sigma_aw)) {
        if (!comfort.empty()) comfort += "|";
        comfort += qcar::to_string(level);
    }
    std::cout << "sigma_aw=" << qcar::format_double(ev.sigma_aw)
              << " R_ft=" << qcar::format_double(ev.R_ft) << " comfort=" << comfort
              << " t_s=" << qcar::format_double(ev.t_s)
              << " settled=" << (ev.settled ? "yes" : "no") << "\n";

    qcar::SuspensionDesign design{fn, zeta_p, zeta_n};
    qcar::SimConfig sim = scenario.sim;
    qcar::SyntheticProfile profile = qcar::synthesize(scenario.road);
    qcar::SimResult result = qcar::simulate(study.params, design, profile, sim);
    std::filesystem::create_directories(study.out_dir);
    std::string path = (std::filesystem::path(study.out_dir) / "timeseries.csv").string();
    std::string provenance = "zeta_n: " + qcar::format_double(zeta_n) +
                             ", zeta_p: " + qcar::format_double(zeta_p) +
                             ", f_n: " + qcar::format_double(fn) +
                             ", config: " + qcar::resolved_config(study);
    qcar::export_timeseries(result, path, provenance);
    std::cout << "wrote " << path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scenario-driven optimization of a passive quarter-car suspension "
                 "with asymmetric damping"};
    app.set_version_flag("--version", std::string(qcar::kVersion));
    app.require_subcommand(1);

    CommonArgs args;
    int n_seeds = 0;
    double zeta_n = 0.3, zeta_p = 0.3;

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Optimize damping ratios for every (f_n, preset) pair in the study");
    add_common_options(sweep, args);

    CLI::App* contour = app.add_subcommand(
        "contour", "Dense metric maps over the damping-ratio box at fixed f_n");
    add_common_options(contour, args);

    CLI::App* transient = app.add_subcommand(
        "transient", "Bump/step response comparison for a list of designs");
    add_common_options(transient, args);

    CLI::App* realizations = app.add_subcommand(
        "realizations", "Repeat the sweep across road seeds and report optimum dispersion");
    add_common_options(realizations, args);
    realizations->add_option("--n", n_seeds, "Number of road seeds (default 5 or |study_seeds|)");

    CLI::App* simulate = app.add_subcommand(
        "simulate", "Single stochastic run for one design; prints metrics, writes the series");
    add_common_options(simulate, args);
    simulate->add_option("--zeta-n", zeta_n, "Compression damping ratio (suspension closing)");
    simulate->add_option("--zeta-p", zeta_p, "Rebound damping ratio (suspension extending)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) return run_sweep(sweep, args);
        if (contour->parsed()) return run_contour(contour, args);
        if (transient->parsed()) return run_transient(transient, args);
        if (realizations->parsed()) return run_realizations(realizations, args, n_seeds);
        if (simulate->parsed()) return run_single(simulate, args, zeta_n, zeta_p);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
