#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace qcar {

// Roughness classes defined by the displacement PSD value at the reference
// spatial frequency n0 = 0.1 cycles/m.
enum class RoadClass { A, B, C, D, E, F, G, H };

RoadClass road_class_from_string(const std::string& label);
const char* to_string(RoadClass c);

// PSD at the reference frequency, G_d(n0) [m^3].
double psd_reference(RoadClass c);

// G_d(n) = G_d(n0) * (n / 0.1)^-2  [m^3]; throws std::domain_error for n <= 0.
double psd(RoadClass c, double n);

struct ProfileSpec {
    RoadClass road_class = RoadClass::B;
    double length = 1000.0;       // [m]
    double n_min = 0.011;         // band lower edge [cycles/m]
    double n_max = 2.83;          // band upper edge [cycles/m]
    int n_components = 1000;      // number of superposed sinusoids
    std::uint64_t seed = 0;       // RNG seed for the phases
    void validate() const;
};

struct Component {
    double amplitude;  // A_i [m]
    double frequency;  // n_i [cycles/m]
    double phase;      // Phi_i [rad], in [0, 2*pi)
};

// Sum of N sinusoids on a uniform frequency grid with PSD-matched amplitudes
// A_i = sqrt(G_d(n_i) * dn) and i.i.d. uniform phases.
struct SyntheticProfile {
    std::vector<Component> components;
    double length = 0.0;  // nominal profile length [m]
};

struct StepInput {
    double height = 0.05;  // [m]
    double x0 = 0.0;       // step location [m]
};

struct BumpInput {
    double height = 0.05;      // apex height [m]
    double base_length = 3.7;  // half-sine base [m]
    double x0 = 0.0;           // leading edge [m]
};

struct FlatRoad {};

using RoadExcitation = std::variant<SyntheticProfile, StepInput, BumpInput, FlatRoad>;

SyntheticProfile synthesize(const ProfileSpec& spec);

// Road height y at longitudinal position x [m].
double eval(const RoadExcitation& excitation, double x);

// Heights at x0 + k*dx for k = 0..count-1. For synthetic profiles this uses
// a phase-rotation recurrence (with periodic exact re-anchoring), orders of
// magnitude faster than per-point evaluation of the sinusoid sum.
std::vector<double> sample(const RoadExcitation& excitation, double x0, double dx,
                           std::size_t count);

// Two-column (x, y) delimited text export for inspection/plotting.
void export_profile(const RoadExcitation& excitation, double x0, double dx, std::size_t count,
                    const std::string& path);

// Longitudinal extent of the non-flat part (0 for flat/synthetic inputs):
// end of the step rise / bump base, used to time transient metrics.
double deterministic_extent(const RoadExcitation& excitation);

}  // namespace qcar
