#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qcar/model.hpp"
#include "qcar/road.hpp"

namespace qcar {

struct SimConfig {
    double v = 40.0;                // travel speed [m/s]
    double duration = -1.0;         // total simulated time [s]; <= 0 selects an automatic value
    double dt = 1e-3;               // output sampling interval [s]
    double max_internal_step = 1e-3;  // upper bound on the integrator step [s]
    double eps = kDefaultEps;       // regularization of the switching laws
    void validate() const;
};

struct SimResult {
    std::vector<double> t;    // uniform time grid [s]
    std::vector<double> a_s;  // sprung-mass acceleration [m/s^2]
    std::vector<double> f_t;  // tire contact force [N]
    std::vector<double> x_s;  // sprung displacement [m]
    std::vector<double> x_u;  // unsprung displacement [m]
    double sample_rate = 0.0;  // [Hz]
};

class SimulationError : public std::runtime_error {
  public:
    SimulationError(const std::string& what, double t_fail)
        : std::runtime_error(what), t_fail(t_fail) {}
    double t_fail;  // simulation time at which integration failed [s]
};

// Integrates a traversal of the excitation at constant speed (x = v*t) with
// classic fixed-step RK4, starting from static equilibrium. Automatic
// duration: profile length / v for synthetic roads, full decay window for
// deterministic inputs, 5 s for flat.
SimResult simulate(const VehicleParams& params, const SuspensionDesign& design,
                   const RoadExcitation& excitation, const SimConfig& config);

// Transient variant: same integrator, default speed 5 m/s, duration extended
// 10 s past the end of the deterministic input to capture the full decay.
SimResult simulate_transient(const VehicleParams& params, const SuspensionDesign& design,
                             const RoadExcitation& excitation, double v = 5.0,
                             SimConfig config = {});

// Core integrator on a pre-sampled road height grid (half-step spacing:
// road_half_grid[j] = y at t = j*h/2 with h the internal step). Lets scenario
// code sample an expensive profile once and reuse it across many designs.
SimResult simulate_sampled(const VehicleParams& params, const PhysicalSuspension& phys,
                           const std::vector<double>& road_half_grid, int nsteps, int n_sub,
                           double dt, double eps);

// Number of internal substeps per output interval implied by a config.
int substeps_per_output(const SimConfig& config);

// Writes (t, a_s, f_t, x_s, x_u) as delimited text with '#' header lines.
void export_timeseries(const SimResult& result, const std::string& path,
                       const std::string& provenance = {});

}  // namespace qcar
