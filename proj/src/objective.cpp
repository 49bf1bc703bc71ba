#include "qcar/objective.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qcar/metrics.hpp"
#include "qcar/util.hpp"

namespace qcar {

ObjectiveConfig ObjectiveConfig::preset(PresetTag tag, double ref) {
    switch (tag) {
        case PresetTag::MinSigmaAw: return {1.0, 0.0, 0.0, 0.0, tag};
        case PresetTag::MinRft: return {0.0, 1.0, 0.0, 0.0, tag};
        case PresetTag::SigmaGivenRft: return {1.0, 100.0, 0.0, ref, tag};
        case PresetTag::RftGivenSigma: return {100.0, 1.0, ref, 0.0, tag};
        case PresetTag::Custom: break;
    }
    throw std::domain_error("ObjectiveConfig::preset: custom configs are built directly");
}

std::string ObjectiveConfig::name() const { return to_string(tag); }

void ObjectiveConfig::validate() const {
    if (!(A_s >= 0.0 && A_f >= 0.0))
        throw std::domain_error("ObjectiveConfig: weights must be >= 0");
    if (A_s == 0.0 && A_f == 0.0)
        throw std::domain_error("ObjectiveConfig: at least one weight must be positive");
    if (!(sigma_ref >= 0.0 && R_ref >= 0.0))
        throw std::domain_error("ObjectiveConfig: references must be >= 0");
}

PresetTag preset_from_string(const std::string& name) {
    if (name == "min_sigma_aw") return PresetTag::MinSigmaAw;
    if (name == "min_r_ft") return PresetTag::MinRft;
    if (name == "sigma_given_r_ft") return PresetTag::SigmaGivenRft;
    if (name == "r_ft_given_sigma") return PresetTag::RftGivenSigma;
    if (name == "custom") return PresetTag::Custom;
    throw std::domain_error("unknown objective preset '" + name + "'");
}

const char* to_string(PresetTag tag) {
    switch (tag) {
        case PresetTag::MinSigmaAw: return "min_sigma_aw";
        case PresetTag::MinRft: return "min_r_ft";
        case PresetTag::SigmaGivenRft: return "sigma_given_r_ft";
        case PresetTag::RftGivenSigma: return "r_ft_given_sigma";
        case PresetTag::Custom: return "custom";
    }
    return "?";
}

void Scenario::validate() const {
    params.validate();
    if (!(f_n >= 1.0 && f_n <= 2.0))
        throw std::domain_error("Scenario: f_n must lie in [1, 2] Hz");
    road.validate();
    if (!(v > 0.0)) throw std::domain_error("Scenario: v must be > 0");
    if (!(warmup >= 0.0)) throw std::domain_error("Scenario: warmup must be >= 0");
    if (n_realizations < 1) throw std::domain_error("Scenario: need at least 1 realization");
    if (!(transient_speed > 0.0)) throw std::domain_error("Scenario: transient_speed must be > 0");
    SimConfig chk = sim;
    chk.v = v;
    chk.validate();
    double T = road.length / v;
    if (!(warmup < T)) throw std::domain_error("Scenario: warmup must be shorter than the run");
}

PreparedScenario prepare(const Scenario& scenario) {
    scenario.validate();
    PreparedScenario prep;
    prep.scenario = scenario;

    SimConfig cfg = scenario.sim;
    cfg.v = scenario.v;
    prep.n_sub = substeps_per_output(cfg);
    double h = cfg.dt / prep.n_sub;
    double T = scenario.road.length / scenario.v;
    prep.nsteps = static_cast<int>(std::llround(T / cfg.dt));
    if (0.5 / cfg.dt <= scenario.road.n_max * scenario.v)
        throw std::invalid_argument(
            "prepare: dt too coarse for the excitation band at this speed");

    prep.realization_seeds.resize(scenario.n_realizations);
    prep.road_half_grids.resize(scenario.n_realizations);
    std::size_t count = 2 * static_cast<std::size_t>(prep.nsteps) * prep.n_sub + 1;
    for (int r = 0; r < scenario.n_realizations; ++r) {
        ProfileSpec spec = scenario.road;
        // realization 0 uses the configured seed verbatim; later ones use
        // derived substreams
        spec.seed = r == 0 ? scenario.road.seed : derive_seed(scenario.road.seed, {static_cast<std::uint64_t>(r)});
        prep.realization_seeds[r] = spec.seed;
        RoadExcitation profile = synthesize(spec);
        prep.road_half_grids[r] = sample(profile, 0.0, scenario.v * h / 2.0, count);
    }

    // Transient input for settling time, sampled once as well.
    RoadExcitation bump = scenario.bump;
    double extent = deterministic_extent(bump);
    prep.bump_disturbance_end = extent / scenario.transient_speed;
    double bump_T = prep.bump_disturbance_end + 10.0;
    prep.bump_nsteps = static_cast<int>(std::llround(bump_T / cfg.dt));
    double bump_h = cfg.dt / prep.n_sub;
    prep.bump_half_grid =
        sample(bump, 0.0, scenario.transient_speed * bump_h / 2.0,
               2 * static_cast<std::size_t>(prep.bump_nsteps) * prep.n_sub + 1);
    return prep;
}

Evaluation evaluate(double zeta_n, double zeta_p, const PreparedScenario& prepared,
                    const ObjectiveConfig& config) {
    config.validate();
    const Scenario& sc = prepared.scenario;
    SuspensionDesign design{sc.f_n, zeta_p, zeta_n};
    design.validate();
    PhysicalSuspension phys = derive_physical(design, sc.params);

    const double dt = sc.sim.dt;
    const std::size_t warm_idx = static_cast<std::size_t>(std::ceil(sc.warmup / dt));
    double sigma_sum = 0.0, R_sum = 0.0;
    for (std::size_t r = 0; r < prepared.road_half_grids.size(); ++r) {
        SimResult res = simulate_sampled(sc.params, phys, prepared.road_half_grids[r],
                                         prepared.nsteps, prepared.n_sub, dt, sc.sim.eps);
        if (warm_idx + 2 >= res.a_s.size())
            throw std::domain_error("evaluate: warmup leaves too few samples");
        std::vector<double> a(res.a_s.begin() + warm_idx, res.a_s.end());
        std::vector<double> f(res.f_t.begin() + warm_idx, res.f_t.end());
        std::vector<double> aw = weight_acceleration(a, res.sample_rate);
        double T = dt * static_cast<double>(aw.size() - 1);
        sigma_sum += weighted_rms(aw, T);
        R_sum += contact_force_ratio(f, sc.params);
    }
    double n_real = static_cast<double>(prepared.road_half_grids.size());

    Evaluation ev;
    ev.sigma_aw = sigma_sum / n_real;
    ev.R_ft = R_sum / n_real;
    ev.t_s = std::numeric_limits<double>::quiet_NaN();
    ev.settled = false;
    if (sc.with_settling) {
        SimResult res = simulate_sampled(sc.params, phys, prepared.bump_half_grid,
                                         prepared.bump_nsteps, prepared.n_sub, dt, sc.sim.eps);
        SettlingResult s =
            settling_time(res.x_s, res.t, prepared.bump_disturbance_end, sc.settling_band);
        ev.t_s = s.t_s;
        ev.settled = s.settled;
    }
    ev.J = config.A_s * std::abs(ev.sigma_aw - config.sigma_ref) +
           config.A_f * std::abs(ev.R_ft - config.R_ref);
    return ev;
}

}  // namespace qcar
