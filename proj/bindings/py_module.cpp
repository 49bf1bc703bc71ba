// Python bindings for the quarter-car suspension toolkit.
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcar/cross_entropy.hpp"
#include "qcar/metrics.hpp"
#include "qcar/model.hpp"
#include "qcar/objective.hpp"
#include "qcar/road.hpp"
#include "qcar/runner.hpp"
#include "qcar/simulate.hpp"
#include "qcar/util.hpp"

namespace py = pybind11;
using namespace qcar;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Scenario-driven optimization of a passive quarter-car suspension "
              "with asymmetric damping";
    m.attr("__version__") = kVersion;

    // --- model ---
    py::class_<VehicleParams>(m, "VehicleParams")
        .def(py::init<>())
        .def_readwrite("m_s", &VehicleParams::m_s)
        .def_readwrite("m_u", &VehicleParams::m_u)
        .def_readwrite("k_t_nom", &VehicleParams::k_t_nom)
        .def_readwrite("g", &VehicleParams::g);
    m.def("light_vehicle", &light_vehicle);
    m.def("mid_heavy_vehicle", &mid_heavy_vehicle);

    py::class_<SuspensionDesign>(m, "SuspensionDesign")
        .def(py::init<>())
        .def(py::init([](double f_n, double zeta_p, double zeta_n) {
                 return SuspensionDesign{f_n, zeta_p, zeta_n};
             }),
             py::arg("f_n"), py::arg("zeta_p"), py::arg("zeta_n"))
        .def_readwrite("f_n", &SuspensionDesign::f_n)
        .def_readwrite("zeta_p", &SuspensionDesign::zeta_p)
        .def_readwrite("zeta_n", &SuspensionDesign::zeta_n);

    py::class_<PhysicalSuspension>(m, "PhysicalSuspension")
        .def_readwrite("k_s", &PhysicalSuspension::k_s)
        .def_readwrite("c_p", &PhysicalSuspension::c_p)
        .def_readwrite("c_n", &PhysicalSuspension::c_n);
    m.def("derive_physical", &derive_physical, py::arg("design"), py::arg("params"));
    m.def("smoothed_damping", &smoothed_damping, py::arg("v_rel"), py::arg("phys"),
          py::arg("eps") = kDefaultEps);
    m.def("smoothed_tire_stiffness", &smoothed_tire_stiffness, py::arg("deflection"),
          py::arg("params"), py::arg("eps") = kDefaultEps);

    py::class_<State>(m, "State")
        .def(py::init<>())
        .def(py::init([](double x_u, double v_u, double x_s, double v_s) {
                 return State{x_u, v_u, x_s, v_s};
             }),
             py::arg("x_u"), py::arg("v_u"), py::arg("x_s"), py::arg("v_s"))
        .def_readwrite("x_u", &State::x_u)
        .def_readwrite("v_u", &State::v_u)
        .def_readwrite("x_s", &State::x_s)
        .def_readwrite("v_s", &State::v_s);
    py::class_<Outputs>(m, "Outputs")
        .def_readonly("a_s", &Outputs::a_s)
        .def_readonly("f_t", &Outputs::f_t);
    m.def(
        "state_derivative",
        [](const State& s, double y, const VehicleParams& p, const SuspensionDesign& d) {
            return state_derivative(s, y, p, d);
        },
        py::arg("state"), py::arg("y"), py::arg("params"), py::arg("design"));
    m.def(
        "outputs",
        [](const State& s, double y, const VehicleParams& p, const SuspensionDesign& d) {
            return outputs(s, y, p, d);
        },
        py::arg("state"), py::arg("y"), py::arg("params"), py::arg("design"));
    m.def(
        "static_equilibrium",
        [](const VehicleParams& p, const SuspensionDesign& d) { return static_equilibrium(p, d); },
        py::arg("params"), py::arg("design"));

    // --- road excitation ---
    py::enum_<RoadClass>(m, "RoadClass")
        .value("A", RoadClass::A)
        .value("B", RoadClass::B)
        .value("C", RoadClass::C)
        .value("D", RoadClass::D)
        .value("E", RoadClass::E)
        .value("F", RoadClass::F)
        .value("G", RoadClass::G)
        .value("H", RoadClass::H);
    m.def("road_class_from_string", &road_class_from_string);
    m.def("psd_reference", &psd_reference, py::arg("road_class"));
    m.def("psd", &psd, py::arg("road_class"), py::arg("n"));

    py::class_<ProfileSpec>(m, "ProfileSpec")
        .def(py::init<>())
        .def_readwrite("road_class", &ProfileSpec::road_class)
        .def_readwrite("length", &ProfileSpec::length)
        .def_readwrite("n_min", &ProfileSpec::n_min)
        .def_readwrite("n_max", &ProfileSpec::n_max)
        .def_readwrite("n_components", &ProfileSpec::n_components)
        .def_readwrite("seed", &ProfileSpec::seed);
    py::class_<Component>(m, "Component")
        .def_readonly("amplitude", &Component::amplitude)
        .def_readonly("frequency", &Component::frequency)
        .def_readonly("phase", &Component::phase);
    py::class_<SyntheticProfile>(m, "SyntheticProfile")
        .def_readonly("components", &SyntheticProfile::components)
        .def_readonly("length", &SyntheticProfile::length);
    py::class_<StepInput>(m, "StepInput")
        .def(py::init([](double height, double x0) {
                 return StepInput{height, x0};
             }),
             py::arg("height") = 0.05, py::arg("x0") = 0.0)
        .def_readwrite("height", &StepInput::height)
        .def_readwrite("x0", &StepInput::x0);
    py::class_<BumpInput>(m, "BumpInput")
        .def(py::init([](double height, double base_length, double x0) {
                 return BumpInput{height, base_length, x0};
             }),
             py::arg("height") = 0.05, py::arg("base_length") = 3.7, py::arg("x0") = 0.0)
        .def_readwrite("height", &BumpInput::height)
        .def_readwrite("base_length", &BumpInput::base_length)
        .def_readwrite("x0", &BumpInput::x0);
    py::class_<FlatRoad>(m, "FlatRoad").def(py::init<>());
    m.def("synthesize", &synthesize, py::arg("spec"));
    m.def("eval_road", &eval, py::arg("excitation"), py::arg("x"));
    m.def("sample_road", &sample, py::arg("excitation"), py::arg("x0"), py::arg("dx"),
          py::arg("count"));
    m.def("deterministic_extent", &deterministic_extent, py::arg("excitation"));

    // --- simulation ---
    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("v", &SimConfig::v)
        .def_readwrite("duration", &SimConfig::duration)
        .def_readwrite("dt", &SimConfig::dt)
        .def_readwrite("max_internal_step", &SimConfig::max_internal_step)
        .def_readwrite("eps", &SimConfig::eps);
    py::class_<SimResult>(m, "SimResult")
        .def_readonly("t", &SimResult::t)
        .def_readonly("a_s", &SimResult::a_s)
        .def_readonly("f_t", &SimResult::f_t)
        .def_readonly("x_s", &SimResult::x_s)
        .def_readonly("x_u", &SimResult::x_u)
        .def_readonly("sample_rate", &SimResult::sample_rate);
    m.def(
        "simulate",
        [](const VehicleParams& p, const SuspensionDesign& d, const RoadExcitation& road,
           const SimConfig& cfg) {
            py::gil_scoped_release release;
            return simulate(p, d, road, cfg);
        },
        py::arg("params"), py::arg("design"), py::arg("excitation"),
        py::arg("config") = SimConfig{});
    m.def(
        "simulate_transient",
        [](const VehicleParams& p, const SuspensionDesign& d, const RoadExcitation& road, double v,
           const SimConfig& cfg) {
            py::gil_scoped_release release;
            return simulate_transient(p, d, road, v, cfg);
        },
        py::arg("params"), py::arg("design"), py::arg("excitation"), py::arg("v") = 5.0,
        py::arg("config") = SimConfig{});

    // --- metrics ---
    m.def("weight_acceleration", &weight_acceleration, py::arg("a_s"), py::arg("sample_rate"));
    m.def("weighted_rms", &weighted_rms, py::arg("a_w"), py::arg("duration"));
    py::enum_<ComfortLevel>(m, "ComfortLevel")
        .value("NotUncomfortable", ComfortLevel::NotUncomfortable)
        .value("ALittleUncomfortable", ComfortLevel::ALittleUncomfortable)
        .value("FairlyUncomfortable", ComfortLevel::FairlyUncomfortable)
        .value("Uncomfortable", ComfortLevel::Uncomfortable)
        .value("VeryUncomfortable", ComfortLevel::VeryUncomfortable)
        .value("ExtremelyUncomfortable", ComfortLevel::ExtremelyUncomfortable);
    m.def("classify_comfort", &classify_comfort, py::arg("sigma_aw"));
    m.def("comfort_label", [](ComfortLevel level) { return std::string(to_string(level)); });
    m.def("contact_force_ratio", &contact_force_ratio, py::arg("f_t"), py::arg("params"));
    py::class_<SettlingResult>(m, "SettlingResult")
        .def_readonly("t_s", &SettlingResult::t_s)
        .def_readonly("settled", &SettlingResult::settled);
    m.def("settling_time", &settling_time, py::arg("x_s"), py::arg("t"),
          py::arg("disturbance_end"), py::arg("band") = 0.05);
    m.def("wk_analog_magnitude", &wk_analog_magnitude, py::arg("f"));

    // --- objective ---
    py::enum_<PresetTag>(m, "PresetTag")
        .value("MinSigmaAw", PresetTag::MinSigmaAw)
        .value("MinRft", PresetTag::MinRft)
        .value("SigmaGivenRft", PresetTag::SigmaGivenRft)
        .value("RftGivenSigma", PresetTag::RftGivenSigma)
        .value("Custom", PresetTag::Custom);
    py::class_<ObjectiveConfig>(m, "ObjectiveConfig")
        .def(py::init<>())
        .def_static("preset", &ObjectiveConfig::preset, py::arg("tag"), py::arg("ref") = 0.0)
        .def_readwrite("A_s", &ObjectiveConfig::A_s)
        .def_readwrite("A_f", &ObjectiveConfig::A_f)
        .def_readwrite("sigma_ref", &ObjectiveConfig::sigma_ref)
        .def_readwrite("R_ref", &ObjectiveConfig::R_ref)
        .def_readwrite("tag", &ObjectiveConfig::tag)
        .def("name", &ObjectiveConfig::name);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("params", &Scenario::params)
        .def_readwrite("f_n", &Scenario::f_n)
        .def_readwrite("road", &Scenario::road)
        .def_readwrite("v", &Scenario::v)
        .def_readwrite("sim", &Scenario::sim)
        .def_readwrite("warmup", &Scenario::warmup)
        .def_readwrite("n_realizations", &Scenario::n_realizations)
        .def_readwrite("bump", &Scenario::bump)
        .def_readwrite("transient_speed", &Scenario::transient_speed)
        .def_readwrite("settling_band", &Scenario::settling_band)
        .def_readwrite("with_settling", &Scenario::with_settling);
    py::class_<PreparedScenario>(m, "PreparedScenario")
        .def_readonly("scenario", &PreparedScenario::scenario);
    m.def(
        "prepare",
        [](const Scenario& sc) {
            py::gil_scoped_release release;
            return prepare(sc);
        },
        py::arg("scenario"));
    py::class_<Evaluation>(m, "Evaluation")
        .def_readonly("J", &Evaluation::J)
        .def_readonly("sigma_aw", &Evaluation::sigma_aw)
        .def_readonly("R_ft", &Evaluation::R_ft)
        .def_readonly("t_s", &Evaluation::t_s)
        .def_readonly("settled", &Evaluation::settled);
    m.def(
        "evaluate",
        [](double zeta_n, double zeta_p, const PreparedScenario& prep,
           const ObjectiveConfig& cfg) {
            py::gil_scoped_release release;
            return evaluate(zeta_n, zeta_p, prep, cfg);
        },
        py::arg("zeta_n"), py::arg("zeta_p"), py::arg("prepared"), py::arg("config"));

    // --- optimizer ---
    py::class_<CEConfig>(m, "CEConfig")
        .def(py::init<>())
        .def_readwrite("population", &CEConfig::population)
        .def_readwrite("elite_fraction", &CEConfig::elite_fraction)
        .def_readwrite("smoothing", &CEConfig::smoothing)
        .def_readwrite("max_iterations", &CEConfig::max_iterations)
        .def_readwrite("lower", &CEConfig::lower)
        .def_readwrite("upper", &CEConfig::upper)
        .def_readwrite("std_tolerance", &CEConfig::std_tolerance)
        .def_readwrite("seed", &CEConfig::seed)
        .def_readwrite("retry_cap", &CEConfig::retry_cap);
    py::class_<CEIteration>(m, "CEIteration")
        .def_readonly("mean", &CEIteration::mean)
        .def_readonly("stddev", &CEIteration::stddev)
        .def_readonly("best_J", &CEIteration::best_J)
        .def_readonly("elite_threshold", &CEIteration::elite_threshold);
    py::enum_<CETermination>(m, "CETermination")
        .value("MaxIterations", CETermination::MaxIterations)
        .value("StdConverged", CETermination::StdConverged);
    py::class_<CEResult>(m, "CEResult")
        .def_readonly("x_best", &CEResult::x_best)
        .def_readonly("J_best", &CEResult::J_best)
        .def_readonly("history", &CEResult::history)
        .def_readonly("iterations", &CEResult::iterations)
        .def_readonly("reason", &CEResult::reason);
    m.def(
        "optimize",
        [](std::function<double(std::vector<double>)> objective, const CEConfig& cfg,
           int workers) {
            py::gil_scoped_release release;
            return optimize(objective, cfg, workers);
        },
        py::arg("objective"), py::arg("config"), py::arg("workers") = 1,
        "Cross-Entropy minimization; the objective is called with a list of "
        "design variables and must return a scalar cost.");

    // --- study runner ---
    py::class_<StudyConfig>(m, "StudyConfig")
        .def(py::init<>())
        .def_readwrite("vehicle", &StudyConfig::vehicle)
        .def_readwrite("params", &StudyConfig::params)
        .def_readwrite("road", &StudyConfig::road)
        .def_readwrite("speed", &StudyConfig::speed)
        .def_readwrite("fn_grid", &StudyConfig::fn_grid)
        .def_readwrite("presets", &StudyConfig::presets)
        .def_readwrite("ce", &StudyConfig::ce)
        .def_readwrite("contour_resolution", &StudyConfig::contour_resolution)
        .def_readwrite("n_realizations", &StudyConfig::n_realizations)
        .def_readwrite("warmup", &StudyConfig::warmup)
        .def_readwrite("dt", &StudyConfig::dt)
        .def_readwrite("bump", &StudyConfig::bump)
        .def_readwrite("transient_speed", &StudyConfig::transient_speed)
        .def_readwrite("settling_band", &StudyConfig::settling_band)
        .def_readwrite("transient_type", &StudyConfig::transient_type)
        .def_readwrite("transient_designs", &StudyConfig::transient_designs)
        .def_readwrite("study_seeds", &StudyConfig::study_seeds)
        .def_readwrite("workers", &StudyConfig::workers)
        .def_readwrite("out_dir", &StudyConfig::out_dir)
        .def("scenario", &StudyConfig::scenario, py::arg("f_n"))
        .def("validate", &StudyConfig::validate);
    m.def("parse_study_config", &parse_study_config, py::arg("json_text"));
    m.def("load_study_config", &load_study_config, py::arg("path"));
    m.def("resolved_config", &resolved_config, py::arg("config"));

    py::class_<SweepCell>(m, "SweepCell")
        .def_readonly("f_n", &SweepCell::f_n)
        .def_readonly("preset", &SweepCell::preset)
        .def_readonly("zeta_n", &SweepCell::zeta_n)
        .def_readonly("zeta_p", &SweepCell::zeta_p)
        .def_readonly("at_optimum", &SweepCell::at_optimum)
        .def_readonly("ce", &SweepCell::ce)
        .def_readonly("failed", &SweepCell::failed)
        .def_readonly("error", &SweepCell::error);
    py::class_<StudyResult>(m, "StudyResult")
        .def_readonly("cells", &StudyResult::cells)
        .def_readonly("provenance", &StudyResult::provenance);
    py::class_<ContourGrid>(m, "ContourGrid")
        .def_readonly("f_n", &ContourGrid::f_n)
        .def_readonly("resolution", &ContourGrid::resolution)
        .def_readonly("zeta_n", &ContourGrid::zeta_n)
        .def_readonly("zeta_p", &ContourGrid::zeta_p)
        .def_readonly("sigma_aw", &ContourGrid::sigma_aw)
        .def_readonly("R_ft", &ContourGrid::R_ft)
        .def_readonly("t_s", &ContourGrid::t_s);
    py::class_<TransientRun>(m, "TransientRun")
        .def_readonly("zeta_n", &TransientRun::zeta_n)
        .def_readonly("zeta_p", &TransientRun::zeta_p)
        .def_readonly("result", &TransientRun::result)
        .def_readonly("disturbance_end", &TransientRun::disturbance_end)
        .def_readonly("settling", &TransientRun::settling);
    py::class_<RealizationSummary>(m, "RealizationSummary")
        .def_readonly("seeds", &RealizationSummary::seeds)
        .def_readonly("per_seed", &RealizationSummary::per_seed)
        .def_readonly("mean_keys", &RealizationSummary::mean_keys)
        .def_readonly("mean_rows", &RealizationSummary::mean_rows)
        .def_readonly("std_rows", &RealizationSummary::std_rows);
    m.def(
        "run_optimization_sweep",
        [](const StudyConfig& study) {
            py::gil_scoped_release release;
            return run_optimization_sweep(study);
        },
        py::arg("study"));
    m.def(
        "run_contour_grid",
        [](const StudyConfig& study, double f_n) {
            py::gil_scoped_release release;
            return run_contour_grid(study, f_n);
        },
        py::arg("study"), py::arg("f_n"));
    m.def(
        "run_transient_comparison",
        [](const StudyConfig& study, const std::vector<std::pair<double, double>>& designs,
           const RoadExcitation& excitation) {
            py::gil_scoped_release release;
            return run_transient_comparison(study, designs, excitation);
        },
        py::arg("study"), py::arg("designs"), py::arg("excitation"));
    m.def(
        "run_realization_study",
        [](const StudyConfig& study, int n_seeds) {
            py::gil_scoped_release release;
            return run_realization_study(study, n_seeds);
        },
        py::arg("study"), py::arg("n_seeds"));
}
