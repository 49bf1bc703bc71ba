#include "qcar/model.hpp"

#include <cmath>
#include <stdexcept>

namespace qcar {

void VehicleParams::validate() const {
    if (!(m_s > 0.0)) throw std::domain_error("VehicleParams: m_s must be > 0");
    if (!(m_u > 0.0)) throw std::domain_error("VehicleParams: m_u must be > 0");
    if (!(k_t_nom > 0.0)) throw std::domain_error("VehicleParams: k_t_nom must be > 0");
    if (!(g >= 0.0)) throw std::domain_error("VehicleParams: g must be >= 0");
}

VehicleParams light_vehicle() { return {250.0, 40.0, 200000.0, 9.81}; }
VehicleParams mid_heavy_vehicle() { return {500.0, 50.0, 250000.0, 9.81}; }

void SuspensionDesign::validate() const {
    if (!(f_n >= 1.0 && f_n <= 2.0))
        throw std::domain_error("SuspensionDesign: f_n must lie in [1, 2] Hz");
    if (!(zeta_p >= 0.0 && zeta_p <= 1.0))
        throw std::domain_error("SuspensionDesign: zeta_p must lie in [0, 1]");
    if (!(zeta_n >= 0.0 && zeta_n <= 1.0))
        throw std::domain_error("SuspensionDesign: zeta_n must lie in [0, 1]");
}

PhysicalSuspension derive_physical(const SuspensionDesign& design, const VehicleParams& params) {
    design.validate();
    params.validate();
    const double two_pi = 2.0 * M_PI;
    double k_s = (two_pi * design.f_n) * (two_pi * design.f_n) * params.m_s;
    double c_crit = 2.0 * std::sqrt(k_s * params.m_s);
    return {k_s, design.zeta_p * c_crit, design.zeta_n * c_crit};
}

State state_derivative(const State& s, double y, const VehicleParams& p,
                       const SuspensionDesign& design, double eps) {
    return state_derivative(s, y, p, derive_physical(design, p), eps);
}

Outputs outputs(const State& s, double y, const VehicleParams& p,
                const SuspensionDesign& design, double eps) {
    return outputs(s, y, p, derive_physical(design, p), eps);
}

State static_equilibrium(const VehicleParams& params, const PhysicalSuspension& phys,
                         double eps) {
    params.validate();
    double weight = (params.m_s + params.m_u) * params.g;
    // Solve k~_t(d) * d = weight for the static tire compression d.
    double d = weight / params.k_t_nom;
    for (int i = 0; i < 64; ++i) {
        double denom = std::abs(d) + eps;
        double kt = 0.5 * params.k_t_nom * (1.0 + d / denom);
        double f = kt * d - weight;
        // derivative of k~_t(d)*d for d > 0
        double df = 0.5 * params.k_t_nom * (1.0 + d / denom + d * eps / (denom * denom));
        double step = f / df;
        d -= step;
        if (std::abs(step) <= 1e-16 * std::abs(d) + 1e-300) break;
    }
    State s;
    s.x_u = -d;
    s.v_u = 0.0;
    s.x_s = s.x_u - params.m_s * params.g / phys.k_s;
    s.v_s = 0.0;
    return s;
}

State static_equilibrium(const VehicleParams& params, const SuspensionDesign& design,
                         double eps) {
    return static_equilibrium(params, derive_physical(design, params), eps);
}

}  // namespace qcar
