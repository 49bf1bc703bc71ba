#pragma once

#include <cmath>
#include <stdexcept>

namespace qcar {

inline constexpr double kDefaultEps = 1e-6;

// Quarter-car physical parameters: body (sprung) mass over wheel (unsprung)
// mass, wheel on a tire spring of nominal stiffness k_t_nom.
struct VehicleParams {
    double m_s;             // sprung mass [kg]
    double m_u;             // unsprung mass [kg]
    double k_t_nom;         // nominal tire stiffness [N/m]
    double g = 9.81;        // gravitational acceleration [m/s^2]
    void validate() const;  // throws std::domain_error on violation
};

VehicleParams light_vehicle();      // 250 kg / 40 kg / 200 kN/m
VehicleParams mid_heavy_vehicle();  // 500 kg / 50 kg / 250 kN/m

// Normalized design variables: the optimization searches (zeta_n, zeta_p)
// at fixed f_n inside the box [1,2] x [0,1] x [0,1].
struct SuspensionDesign {
    double f_n;     // suspension natural frequency [Hz]
    double zeta_p;  // rebound (extension) damping ratio [-]
    double zeta_n;  // compression damping ratio [-]
    void validate() const;
};

// Dimensional suspension coefficients derived from a SuspensionDesign.
struct PhysicalSuspension {
    double k_s;  // spring stiffness [N/m]
    double c_p;  // rebound damping coefficient [N*s/m]
    double c_n;  // compression damping coefficient [N*s/m]
};

struct State {
    double x_u;  // unsprung displacement [m]
    double v_u;  // unsprung velocity [m/s]
    double x_s;  // sprung displacement [m]
    double v_s;  // sprung velocity [m/s]
};

struct Outputs {
    double a_s;  // sprung-mass vertical acceleration [m/s^2]
    double f_t;  // tire-ground contact force [N], compressive positive
};

// k_s = (2*pi*f_n)^2 * m_s ; c_i = 2*zeta_i*sqrt(k_s*m_s).
PhysicalSuspension derive_physical(const SuspensionDesign& design, const VehicleParams& params);

// Smooth blend between the rebound coefficient c_p (v_rel > 0) and the
// compression coefficient c_n (v_rel < 0); equals (c_p+c_n)/2 at v_rel = 0.
inline double smoothed_damping(double v_rel, const PhysicalSuspension& phys,
                               double eps = kDefaultEps) {
    return 0.5 * (phys.c_p + phys.c_n) +
           0.5 * (phys.c_p - phys.c_n) * v_rel / (std::abs(v_rel) + eps);
}

// Smooth tire lift-off law: ~k_t_nom while compressed (deflection > 0),
// ~0 once the wheel leaves the ground; k_t_nom/2 at zero deflection.
inline double smoothed_tire_stiffness(double deflection, const VehicleParams& params,
                                      double eps = kDefaultEps) {
    return 0.5 * params.k_t_nom * (1.0 + deflection / (std::abs(deflection) + eps));
}

// Time derivative of the state under road height y, with the smoothed
// coefficient laws frozen at the current state. Gravity acts on both masses.
inline State state_derivative(const State& s, double y, const VehicleParams& p,
                              const PhysicalSuspension& phys, double eps = kDefaultEps) {
    double v_rel = s.v_s - s.v_u;   // suspension extension rate
    double deflection = y - s.x_u;  // tire compression
    double c = smoothed_damping(v_rel, phys, eps);
    double kt = smoothed_tire_stiffness(deflection, p, eps);
    double spring = phys.k_s * (s.x_s - s.x_u);
    double damper = c * v_rel;
    State d;
    d.x_u = s.v_u;
    d.v_u = (kt * deflection + spring + damper) / p.m_u - p.g;
    d.x_s = s.v_s;
    d.v_s = (-spring - damper) / p.m_s - p.g;
    if (!(std::isfinite(d.v_u) && std::isfinite(d.v_s)))
        throw std::runtime_error("state_derivative: non-finite force balance");
    return d;
}
State state_derivative(const State& state, double road_height, const VehicleParams& params,
                       const SuspensionDesign& design, double eps = kDefaultEps);

// Observable outputs at a state: a_s is the sprung-mass force balance over
// m_s (identical to the v_s derivative); f_t is the physical compressive
// contact force k~_t * (y - x_u), so mean f_t = (m_s+m_u)*g at rest.
inline Outputs outputs(const State& s, double y, const VehicleParams& p,
                       const PhysicalSuspension& phys, double eps = kDefaultEps) {
    double v_rel = s.v_s - s.v_u;
    double deflection = y - s.x_u;
    double c = smoothed_damping(v_rel, phys, eps);
    double kt = smoothed_tire_stiffness(deflection, p, eps);
    Outputs out;
    out.a_s = (-phys.k_s * (s.x_s - s.x_u) - c * v_rel) / p.m_s - p.g;
    out.f_t = kt * deflection;
    return out;
}
Outputs outputs(const State& state, double road_height, const VehicleParams& params,
                const SuspensionDesign& design, double eps = kDefaultEps);

// Rest state on flat road (y = 0): tire statically compressed by the total
// weight, spring by the sprung weight. Solves the smoothed tire law by
// Newton iteration so the state-derivative residual is at machine precision.
State static_equilibrium(const VehicleParams& params, const SuspensionDesign& design,
                         double eps = kDefaultEps);
State static_equilibrium(const VehicleParams& params, const PhysicalSuspension& phys,
                         double eps = kDefaultEps);

}  // namespace qcar
