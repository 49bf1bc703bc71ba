#include "qcar/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qcar/metrics.hpp"
#include "qcar/util.hpp"

namespace qcar {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_known_keys(const json& j, const std::vector<std::string>& known,
                      const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            throw std::runtime_error("config: unknown key '" + it.key() + "' in " + where);
}

ObjectiveConfig parse_preset(const json& j) {
    if (j.is_string()) {
        PresetTag tag = preset_from_string(j.get<std::string>());
        if (tag == PresetTag::Custom)
            throw std::runtime_error("config: custom presets need an object with weights");
        return ObjectiveConfig::preset(tag);
    }
    check_known_keys(j, {"name", "A_s", "A_f", "sigma_ref", "R_ref"}, "presets[]");
    std::string name = j.value("name", "custom");
    PresetTag tag = preset_from_string(name);
    ObjectiveConfig cfg;
    if (tag == PresetTag::Custom) {
        cfg.tag = tag;
        cfg.A_s = j.value("A_s", 1.0);
        cfg.A_f = j.value("A_f", 0.0);
        cfg.sigma_ref = j.value("sigma_ref", 0.0);
        cfg.R_ref = j.value("R_ref", 0.0);
    } else {
        double ref = 0.0;
        if (tag == PresetTag::SigmaGivenRft) ref = j.value("R_ref", 0.0);
        if (tag == PresetTag::RftGivenSigma) ref = j.value("sigma_ref", 0.0);
        cfg = ObjectiveConfig::preset(tag, ref);
        if (j.contains("A_s")) cfg.A_s = j["A_s"].get<double>();
        if (j.contains("A_f")) cfg.A_f = j["A_f"].get<double>();
    }
    cfg.validate();
    return cfg;
}

json preset_to_json(const ObjectiveConfig& p) {
    return json{{"name", p.name()}, {"A_s", p.A_s},         {"A_f", p.A_f},
                {"sigma_ref", p.sigma_ref}, {"R_ref", p.R_ref}};
}

std::string sanitize_cell(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n') c = ';';
    return s;
}

std::ofstream open_output(const std::string& dir, const std::string& name,
                          const std::string& provenance) {
    fs::create_directories(dir);
    fs::path path = fs::path(dir) / name;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path.string());
    if (!provenance.empty()) out << "# config: " << provenance << "\n";
    return out;
}

std::string fn_label(double f_n) {
    std::string s = format_double(f_n);
    for (char& c : s)
        if (c == '.') c = 'p';
    return s;
}

// Shared by sweep and realization study: optimize every (f_n, preset) cell
// of one study configuration, reusing the sampled road across cells.
std::vector<SweepCell> sweep_cells(const StudyConfig& study, std::uint64_t cell_seed_salt) {
    std::vector<SweepCell> cells;
    PreparedScenario prepared = prepare(study.scenario(study.fn_grid.front()));
    for (std::size_t fi = 0; fi < study.fn_grid.size(); ++fi) {
        prepared.scenario.f_n = study.fn_grid[fi];
        for (std::size_t pi = 0; pi < study.presets.size(); ++pi) {
            SweepCell cell;
            cell.f_n = study.fn_grid[fi];
            cell.preset = study.presets[pi];
            try {
                CEConfig ce = study.ce;
                ce.lower = {0.0, 0.0};
                ce.upper = {1.0, 1.0};
                ce.seed = derive_seed(study.ce.seed, {cell_seed_salt, fi, pi});
                const PreparedScenario& prep = prepared;
                const ObjectiveConfig& preset = cell.preset;
                auto objective = [&prep, &preset](const std::vector<double>& x) {
                    return evaluate(x[0], x[1], prep, preset).J;
                };
                cell.ce = optimize(objective, ce, study.workers);
                cell.zeta_n = cell.ce.x_best[0];
                cell.zeta_p = cell.ce.x_best[1];
                prepared.scenario.with_settling = true;
                cell.at_optimum = evaluate(cell.zeta_n, cell.zeta_p, prepared, cell.preset);
                prepared.scenario.with_settling = false;
            } catch (const std::exception& e) {
                cell.failed = true;
                cell.error = e.what();
            }
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

void write_sweep_summary(std::ofstream& out, const std::vector<SweepCell>& cells,
                         const std::uint64_t* seed /*nullable*/) {
    out << "# columns: ";
    if (seed) out << "seed,";
    out << "f_n,preset,zeta_n,zeta_p,J,sigma_aw,R_ft,t_s,settled,ce_iterations,termination,"
           "status\n";
    for (const SweepCell& c : cells) {
        if (seed) out << *seed << ",";
        out << format_double(c.f_n) << "," << c.preset.name() << ",";
        if (c.failed) {
            out << "nan,nan,nan,nan,nan,nan,0,0,none,failed: " << sanitize_cell(c.error) << "\n";
            continue;
        }
        out << format_double(c.zeta_n) << "," << format_double(c.zeta_p) << ","
            << format_double(c.at_optimum.J) << "," << format_double(c.at_optimum.sigma_aw) << ","
            << format_double(c.at_optimum.R_ft) << "," << format_double(c.at_optimum.t_s) << ","
            << (c.at_optimum.settled ? 1 : 0) << "," << c.ce.iterations << ","
            << to_string(c.ce.reason) << ",ok\n";
    }
}

}  // namespace

Scenario StudyConfig::scenario(double f_n) const {
    Scenario sc;
    sc.params = params;
    sc.f_n = f_n;
    sc.road = road;
    sc.v = speed;
    sc.sim.dt = dt;
    sc.sim.v = speed;
    sc.warmup = warmup;
    sc.n_realizations = n_realizations;
    sc.bump = bump;
    sc.transient_speed = transient_speed;
    sc.settling_band = settling_band;
    return sc;
}

void StudyConfig::validate() const {
    params.validate();
    road.validate();
    if (fn_grid.empty()) throw std::domain_error("StudyConfig: fn_grid must be nonempty");
    for (double f : fn_grid)
        if (!(f >= 1.0 && f <= 2.0))
            throw std::domain_error("StudyConfig: fn_grid entries must lie in [1, 2]");
    if (presets.empty()) throw std::domain_error("StudyConfig: presets must be nonempty");
    for (const auto& p : presets) p.validate();
    if (contour_resolution < 11)
        throw std::domain_error("StudyConfig: contour resolution must be >= 11");
    if (workers < 1) throw std::domain_error("StudyConfig: workers must be >= 1");
    if (transient_type != "bump" && transient_type != "step")
        throw std::domain_error("StudyConfig: transient type must be 'bump' or 'step'");
    CEConfig chk = ce;
    chk.lower = {0.0, 0.0};
    chk.upper = {1.0, 1.0};
    chk.validate();
    scenario(fn_grid.front()).validate();
}

StudyConfig parse_study_config(const std::string& text) {
    json j = json::parse(text);
    // "version" is written by resolved_config() so that resolved snapshots
    // can be fed back in as configs
    check_known_keys(j,
                     {"vehicle", "road", "speed", "fn_grid", "presets", "ce", "contour",
                      "n_realizations", "warmup", "dt", "transient", "study_seeds", "workers",
                      "out_dir", "version"},
                     "top level");
    StudyConfig c;
    if (j.contains("vehicle")) {
        const json& v = j["vehicle"];
        if (v.is_string()) {
            c.vehicle = v.get<std::string>();
            if (c.vehicle == "light") c.params = light_vehicle();
            else if (c.vehicle == "mid_heavy") c.params = mid_heavy_vehicle();
            else throw std::runtime_error("config: vehicle must be 'light', 'mid_heavy', or an object");
        } else {
            check_known_keys(v, {"m_s", "m_u", "k_t", "g"}, "vehicle");
            c.vehicle = "custom";
            c.params.m_s = v.at("m_s").get<double>();
            c.params.m_u = v.at("m_u").get<double>();
            c.params.k_t_nom = v.at("k_t").get<double>();
            c.params.g = v.value("g", 9.81);
        }
    }
    if (j.contains("road")) {
        const json& r = j["road"];
        check_known_keys(r, {"class", "length", "n_min", "n_max", "components", "seed"}, "road");
        c.road.road_class = road_class_from_string(r.value("class", "B"));
        c.road.length = r.value("length", 1000.0);
        c.road.n_min = r.value("n_min", 0.011);
        c.road.n_max = r.value("n_max", 2.83);
        c.road.n_components = r.value("components", 1000);
        c.road.seed = r.value("seed", std::uint64_t{0});
    }
    c.speed = j.value("speed", 40.0);
    if (j.contains("fn_grid")) c.fn_grid = j["fn_grid"].get<std::vector<double>>();
    if (j.contains("presets")) {
        c.presets.clear();
        for (const json& p : j["presets"]) c.presets.push_back(parse_preset(p));
    }
    if (j.contains("ce")) {
        const json& e = j["ce"];
        check_known_keys(e,
                         {"population", "elite_fraction", "smoothing", "max_iterations",
                          "std_tolerance", "seed", "retry_cap"},
                         "ce");
        c.ce.population = e.value("population", 75);
        c.ce.elite_fraction = e.value("elite_fraction", 0.1);
        c.ce.smoothing = e.value("smoothing", 0.8);
        c.ce.max_iterations = e.value("max_iterations", 25);
        c.ce.std_tolerance = e.value("std_tolerance", 1e-3);
        c.ce.seed = e.value("seed", std::uint64_t{0});
        c.ce.retry_cap = e.value("retry_cap", 32);
    }
    if (j.contains("contour")) {
        check_known_keys(j["contour"], {"resolution"}, "contour");
        c.contour_resolution = j["contour"].value("resolution", 41);
    }
    c.n_realizations = j.value("n_realizations", 1);
    c.warmup = j.value("warmup", 2.0);
    c.dt = j.value("dt", 1e-3);
    if (j.contains("transient")) {
        const json& t = j["transient"];
        check_known_keys(t, {"type", "height", "length", "x0", "speed", "band", "designs"},
                         "transient");
        c.transient_type = t.value("type", "bump");
        c.bump.height = t.value("height", 0.05);
        c.bump.base_length = t.value("length", 3.7);
        c.bump.x0 = t.value("x0", 10.0);
        c.transient_speed = t.value("speed", 5.0);
        c.settling_band = t.value("band", 0.05);
        if (t.contains("designs")) {
            c.transient_designs.clear();
            for (const json& d : t["designs"]) {
                if (!d.is_array() || d.size() != 2)
                    throw std::runtime_error("config: transient designs must be [zeta_n, zeta_p] pairs");
                c.transient_designs.emplace_back(d[0].get<double>(), d[1].get<double>());
            }
        }
    }
    if (j.contains("study_seeds"))
        c.study_seeds = j["study_seeds"].get<std::vector<std::uint64_t>>();
    c.workers = j.value("workers", 1);
    c.out_dir = j.value("out_dir", "results");
    c.validate();
    return c;
}

StudyConfig load_study_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_study_config(ss.str());
}

std::string resolved_config(const StudyConfig& c) {
    json j;
    if (c.vehicle == "custom")
        j["vehicle"] = {{"m_s", c.params.m_s}, {"m_u", c.params.m_u},
                        {"k_t", c.params.k_t_nom}, {"g", c.params.g}};
    else
        j["vehicle"] = c.vehicle;
    j["road"] = {{"class", to_string(c.road.road_class)}, {"length", c.road.length},
                 {"n_min", c.road.n_min},                 {"n_max", c.road.n_max},
                 {"components", c.road.n_components},     {"seed", c.road.seed}};
    j["speed"] = c.speed;
    j["fn_grid"] = c.fn_grid;
    j["presets"] = json::array();
    for (const auto& p : c.presets) j["presets"].push_back(preset_to_json(p));
    j["ce"] = {{"population", c.ce.population},   {"elite_fraction", c.ce.elite_fraction},
               {"smoothing", c.ce.smoothing},     {"max_iterations", c.ce.max_iterations},
               {"std_tolerance", c.ce.std_tolerance}, {"seed", c.ce.seed},
               {"retry_cap", c.ce.retry_cap}};
    j["contour"] = {{"resolution", c.contour_resolution}};
    j["n_realizations"] = c.n_realizations;
    j["warmup"] = c.warmup;
    j["dt"] = c.dt;
    json designs = json::array();
    for (const auto& d : c.transient_designs) designs.push_back({d.first, d.second});
    j["transient"] = {{"type", c.transient_type}, {"height", c.bump.height},
                      {"length", c.bump.base_length}, {"x0", c.bump.x0},
                      {"speed", c.transient_speed},   {"band", c.settling_band},
                      {"designs", designs}};
    j["study_seeds"] = c.study_seeds;
    j["workers"] = c.workers;
    j["out_dir"] = c.out_dir;
    j["version"] = kVersion;
    return j.dump();
}

StudyResult run_optimization_sweep(const StudyConfig& study) {
    study.validate();
    StudyResult result;
    result.provenance = resolved_config(study);
    result.cells = sweep_cells(study, /*cell_seed_salt=*/0);

    std::ofstream out = open_output(study.out_dir, "sweep_summary.csv", result.provenance);
    write_sweep_summary(out, result.cells, nullptr);
    for (const SweepCell& c : result.cells) {
        if (c.failed) continue;
        std::string name = "ce_trace_" + c.preset.name() + "_fn" + fn_label(c.f_n) + ".csv";
        fs::path path = fs::path(study.out_dir) / name;
        export_trace(c.ce, path.string(), "config: " + result.provenance);
    }
    return result;
}

ContourGrid run_contour_grid(const StudyConfig& study, double f_n) {
    study.validate();
    const int res = study.contour_resolution;
    ContourGrid grid;
    grid.f_n = f_n;
    grid.resolution = res;
    grid.zeta_n.resize(res);
    grid.zeta_p.resize(res);
    for (int i = 0; i < res; ++i) grid.zeta_n[i] = grid.zeta_p[i] = i / double(res - 1);
    const std::size_t cells = static_cast<std::size_t>(res) * res;
    grid.sigma_aw.assign(cells, kNaN);
    grid.R_ft.assign(cells, kNaN);
    grid.t_s.assign(cells, kNaN);

    PreparedScenario prepared = prepare(study.scenario(f_n));
    prepared.scenario.with_settling = true;
    ObjectiveConfig probe = ObjectiveConfig::preset(PresetTag::MinSigmaAw);
    parallel_for(cells, study.workers, [&](std::size_t idx) {
        int i = static_cast<int>(idx) / res, k = static_cast<int>(idx) % res;
        try {
            Evaluation ev = evaluate(grid.zeta_n[i], grid.zeta_p[k], prepared, probe);
            grid.sigma_aw[idx] = ev.sigma_aw;
            grid.R_ft[idx] = ev.R_ft;
            grid.t_s[idx] = ev.t_s;
        } catch (const std::exception&) {
            // cell stays NaN
        }
    });

    std::string provenance = resolved_config(study);
    std::ofstream out =
        open_output(study.out_dir, "contour_fn" + fn_label(f_n) + ".csv", provenance);
    out << "# f_n: " << format_double(f_n) << "\n";
    out << "# columns: zeta_n,zeta_p,sigma_aw,R_ft,t_s\n";
    for (int i = 0; i < res; ++i)
        for (int k = 0; k < res; ++k) {
            std::size_t idx = static_cast<std::size_t>(i) * res + k;
            out << format_double(grid.zeta_n[i]) << "," << format_double(grid.zeta_p[k]) << ","
                << format_double(grid.sigma_aw[idx]) << "," << format_double(grid.R_ft[idx]) << ","
                << format_double(grid.t_s[idx]) << "\n";
        }
    return grid;
}

std::vector<TransientRun> run_transient_comparison(
    const StudyConfig& study, const std::vector<std::pair<double, double>>& designs,
    const RoadExcitation& excitation) {
    study.validate();
    if (designs.empty())
        throw std::domain_error("run_transient_comparison: designs must be nonempty");
    const double f_n = study.fn_grid.front();
    const double extent = deterministic_extent(excitation);
    std::vector<TransientRun> runs(designs.size());
    parallel_for(designs.size(), study.workers, [&](std::size_t i) {
        TransientRun run;
        run.zeta_n = designs[i].first;
        run.zeta_p = designs[i].second;
        SuspensionDesign design{f_n, run.zeta_p, run.zeta_n};
        SimConfig cfg;
        cfg.dt = study.dt;
        run.result = simulate_transient(study.params, design, excitation, study.transient_speed, cfg);
        run.disturbance_end = extent / study.transient_speed;
        run.settling = settling_time(run.result.x_s, run.result.t, run.disturbance_end,
                                     study.settling_band);
        runs[i] = std::move(run);
    });

    std::string provenance = resolved_config(study);
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const TransientRun& r = runs[i];
        std::ostringstream name;
        name << "transient_" << i << "_zn" << fn_label(r.zeta_n) << "_zp" << fn_label(r.zeta_p)
             << ".csv";
        std::ofstream out = open_output(study.out_dir, name.str(), provenance);
        out << "# f_n: " << format_double(f_n) << ", zeta_n: " << format_double(r.zeta_n)
            << ", zeta_p: " << format_double(r.zeta_p)
            << ", disturbance_end: " << format_double(r.disturbance_end)
            << ", t_s: " << format_double(r.settling.t_s) << ", settled: " << r.settling.settled
            << "\n";
        out << "# columns: t,x_s,x_u,wheel_travel,a_s,f_t\n";
        for (std::size_t k = 0; k < r.result.t.size(); ++k)
            out << format_double(r.result.t[k]) << "," << format_double(r.result.x_s[k]) << ","
                << format_double(r.result.x_u[k]) << ","
                << format_double(r.result.x_s[k] - r.result.x_u[k]) << ","
                << format_double(r.result.a_s[k]) << "," << format_double(r.result.f_t[k]) << "\n";
    }
    return runs;
}

RealizationSummary run_realization_study(const StudyConfig& study, int n_seeds) {
    study.validate();
    if (n_seeds < 1) throw std::domain_error("run_realization_study: n_seeds must be >= 1");
    RealizationSummary summary;
    summary.seeds.resize(n_seeds);
    for (int s = 0; s < n_seeds; ++s) {
        if (s < static_cast<int>(study.study_seeds.size()))
            summary.seeds[s] = study.study_seeds[s];
        else if (study.study_seeds.empty())
            summary.seeds[s] = study.road.seed + static_cast<std::uint64_t>(s);
        else
            throw std::domain_error(
                "run_realization_study: study_seeds provided but shorter than n_seeds");
    }

    std::string provenance = resolved_config(study);
    std::ofstream out = open_output(study.out_dir, "realization_summary.csv", provenance);
    out << "# columns: row,seed,f_n,preset,zeta_n,zeta_p,J,sigma_aw,R_ft,t_s\n";

    const std::size_t n_cells = study.fn_grid.size() * study.presets.size();
    std::vector<std::vector<const SweepCell*>> by_cell(n_cells);
    for (int s = 0; s < n_seeds; ++s) {
        StudyConfig per_seed = study;
        per_seed.road.seed = summary.seeds[s];
        std::vector<SweepCell> cells = sweep_cells(per_seed, /*cell_seed_salt=*/summary.seeds[s]);
        for (const SweepCell& c : cells) {
            out << "seed," << summary.seeds[s] << "," << format_double(c.f_n) << ","
                << c.preset.name() << ",";
            if (c.failed)
                out << "nan,nan,nan,nan,nan,nan\n";
            else
                out << format_double(c.zeta_n) << "," << format_double(c.zeta_p) << ","
                    << format_double(c.at_optimum.J) << "," << format_double(c.at_optimum.sigma_aw)
                    << "," << format_double(c.at_optimum.R_ft) << ","
                    << format_double(c.at_optimum.t_s) << "\n";
        }
        for (SweepCell& c : cells) summary.per_seed.push_back(std::move(c));
    }

    for (std::size_t i = 0; i < summary.per_seed.size(); ++i)
        by_cell[i % n_cells].push_back(&summary.per_seed[i]);

    for (std::size_t cell = 0; cell < n_cells; ++cell) {
        const auto& group = by_cell[cell];
        if (group.empty()) continue;
        summary.mean_keys.emplace_back(group[0]->f_n, group[0]->preset.name());
        // mean and sample standard deviation of (zeta_n, zeta_p, sigma_aw, R_ft)
        std::vector<double> mean(4, 0.0), sd(4, kNaN);
        int n_ok = 0;
        for (const SweepCell* c : group) {
            if (c->failed) continue;
            ++n_ok;
            mean[0] += c->zeta_n;
            mean[1] += c->zeta_p;
            mean[2] += c->at_optimum.sigma_aw;
            mean[3] += c->at_optimum.R_ft;
        }
        if (n_ok > 0)
            for (double& m : mean) m /= n_ok;
        if (n_ok > 1) {
            std::fill(sd.begin(), sd.end(), 0.0);
            for (const SweepCell* c : group) {
                if (c->failed) continue;
                double d0 = c->zeta_n - mean[0], d1 = c->zeta_p - mean[1];
                double d2 = c->at_optimum.sigma_aw - mean[2], d3 = c->at_optimum.R_ft - mean[3];
                sd[0] += d0 * d0;
                sd[1] += d1 * d1;
                sd[2] += d2 * d2;
                sd[3] += d3 * d3;
            }
            for (double& v : sd) v = std::sqrt(v / (n_ok - 1));
        }
        summary.mean_rows.push_back(mean);
        summary.std_rows.push_back(sd);
        out << "mean,-," << format_double(group[0]->f_n) << "," << group[0]->preset.name() << ","
            << format_double(mean[0]) << "," << format_double(mean[1]) << ",-,"
            << format_double(mean[2]) << "," << format_double(mean[3]) << ",-\n";
        out << "std,-," << format_double(group[0]->f_n) << "," << group[0]->preset.name() << ","
            << format_double(sd[0]) << "," << format_double(sd[1]) << ",-,"
            << format_double(sd[2]) << "," << format_double(sd[3]) << ",-\n";
    }
    return summary;
}

}  // namespace qcar
