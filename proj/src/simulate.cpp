#include "qcar/simulate.hpp"

#include <cmath>
#include <fstream>

#include "qcar/util.hpp"

namespace qcar {

void SimConfig::validate() const {
    if (!(v > 0.0)) throw std::domain_error("SimConfig: v must be > 0");
    if (!(dt > 0.0)) throw std::domain_error("SimConfig: dt must be > 0");
    if (!(max_internal_step > 0.0))
        throw std::domain_error("SimConfig: max_internal_step must be > 0");
    if (!(eps > 0.0)) throw std::domain_error("SimConfig: eps must be > 0");
}

int substeps_per_output(const SimConfig& config) {
    if (config.dt <= config.max_internal_step) return 1;
    return static_cast<int>(std::ceil(config.dt / config.max_internal_step - 1e-12));
}

namespace {

void validate_excitation(const RoadExcitation& excitation) {
    if (const auto* s = std::get_if<StepInput>(&excitation)) {
        if (!(s->height >= 0.0)) throw std::domain_error("StepInput: height must be >= 0");
    } else if (const auto* b = std::get_if<BumpInput>(&excitation)) {
        if (!(b->height >= 0.0)) throw std::domain_error("BumpInput: height must be >= 0");
        if (!(b->base_length > 0.0)) throw std::domain_error("BumpInput: base_length must be > 0");
    }
}

double auto_duration(const RoadExcitation& excitation, double v) {
    if (const auto* p = std::get_if<SyntheticProfile>(&excitation)) return p->length / v;
    if (std::holds_alternative<FlatRoad>(excitation)) return 5.0;
    return deterministic_extent(excitation) / v + 10.0;
}

}  // namespace

SimResult simulate_sampled(const VehicleParams& params, const PhysicalSuspension& phys,
                           const std::vector<double>& road_half_grid, int nsteps, int n_sub,
                           double dt, double eps) {
    const std::size_t needed = 2 * static_cast<std::size_t>(nsteps) * n_sub + 1;
    if (road_half_grid.size() < needed)
        throw std::invalid_argument("simulate_sampled: road grid shorter than the run");
    const double h = dt / n_sub;
    SimResult r;
    r.sample_rate = 1.0 / dt;
    r.t.resize(nsteps + 1);
    r.a_s.resize(nsteps + 1);
    r.f_t.resize(nsteps + 1);
    r.x_s.resize(nsteps + 1);
    r.x_u.resize(nsteps + 1);

    State s = static_equilibrium(params, phys, eps);
    auto record = [&](int k, double y) {
        Outputs out = outputs(s, y, params, phys, eps);
        r.t[k] = k * dt;
        r.a_s[k] = out.a_s;
        r.f_t[k] = out.f_t;
        r.x_s[k] = s.x_s;
        r.x_u[k] = s.x_u;
    };
    record(0, road_half_grid[0]);

    const double* y = road_half_grid.data();
    for (int k = 0; k < nsteps; ++k) {
        for (int j = 0; j < n_sub; ++j) {
            const std::size_t base = 2 * static_cast<std::size_t>(k) * n_sub + 2 * j;
            const double y0 = y[base], ym = y[base + 1], y1 = y[base + 2];
            State k1 = state_derivative(s, y0, params, phys, eps);
            State mid{s.x_u + 0.5 * h * k1.x_u, s.v_u + 0.5 * h * k1.v_u,
                      s.x_s + 0.5 * h * k1.x_s, s.v_s + 0.5 * h * k1.v_s};
            State k2 = state_derivative(mid, ym, params, phys, eps);
            mid = {s.x_u + 0.5 * h * k2.x_u, s.v_u + 0.5 * h * k2.v_u,
                   s.x_s + 0.5 * h * k2.x_s, s.v_s + 0.5 * h * k2.v_s};
            State k3 = state_derivative(mid, ym, params, phys, eps);
            mid = {s.x_u + h * k3.x_u, s.v_u + h * k3.v_u,
                   s.x_s + h * k3.x_s, s.v_s + h * k3.v_s};
            State k4 = state_derivative(mid, y1, params, phys, eps);
            s.x_u += h / 6.0 * (k1.x_u + 2.0 * k2.x_u + 2.0 * k3.x_u + k4.x_u);
            s.v_u += h / 6.0 * (k1.v_u + 2.0 * k2.v_u + 2.0 * k3.v_u + k4.v_u);
            s.x_s += h / 6.0 * (k1.x_s + 2.0 * k2.x_s + 2.0 * k3.x_s + k4.x_s);
            s.v_s += h / 6.0 * (k1.v_s + 2.0 * k2.v_s + 2.0 * k3.v_s + k4.v_s);
        }
        if (!(std::isfinite(s.x_u) && std::isfinite(s.v_u) && std::isfinite(s.x_s) &&
              std::isfinite(s.v_s)))
            throw SimulationError("simulate: non-finite state at t = " +
                                      std::to_string((k + 1) * dt) + " s",
                                  (k + 1) * dt);
        record(k + 1, y[2 * static_cast<std::size_t>(k + 1) * n_sub]);
    }
    return r;
}

SimResult simulate(const VehicleParams& params, const SuspensionDesign& design,
                   const RoadExcitation& excitation, const SimConfig& config) {
    params.validate();
    design.validate();
    config.validate();
    validate_excitation(excitation);

    double T = config.duration > 0.0 ? config.duration : auto_duration(excitation, config.v);
    int nsteps = static_cast<int>(std::llround(T / config.dt));
    if (nsteps < 1) throw std::domain_error("simulate: duration shorter than one sample");

    // The sampled output must resolve the highest excitation frequency.
    if (const auto* p = std::get_if<SyntheticProfile>(&excitation)) {
        double n_top = 0.0;
        for (const Component& c : p->components) n_top = std::max(n_top, c.frequency);
        if (0.5 / config.dt <= n_top * config.v)
            throw std::invalid_argument(
                "simulate: dt too coarse for the excitation band (output Nyquist below "
                "the top road frequency)");
    }

    int n_sub = substeps_per_output(config);
    double h = config.dt / n_sub;
    std::vector<double> road =
        sample(excitation, 0.0, config.v * h / 2.0, 2 * static_cast<std::size_t>(nsteps) * n_sub + 1);
    PhysicalSuspension phys = derive_physical(design, params);
    return simulate_sampled(params, phys, road, nsteps, n_sub, config.dt, config.eps);
}

SimResult simulate_transient(const VehicleParams& params, const SuspensionDesign& design,
                             const RoadExcitation& excitation, double v, SimConfig config) {
    config.v = v;
    return simulate(params, design, excitation, config);
}

void export_timeseries(const SimResult& result, const std::string& path,
                       const std::string& provenance) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("export_timeseries: cannot open " + path);
    if (!provenance.empty()) out << "# " << provenance << "\n";
    out << "# columns: t,a_s,f_t,x_s,x_u\n";
    for (std::size_t k = 0; k < result.t.size(); ++k)
        out << format_double(result.t[k]) << "," << format_double(result.a_s[k]) << ","
            << format_double(result.f_t[k]) << "," << format_double(result.x_s[k]) << ","
            << format_double(result.x_u[k]) << "\n";
}

}  // namespace qcar
