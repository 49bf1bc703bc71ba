#pragma once

#include <array>
#include <vector>

#include "qcar/model.hpp"

namespace qcar {

struct BiquadSection {
    double b0, b1, b2;  // numerator
    double a1, a2;      // denominator (a0 normalized to 1)
};

// Vertical whole-body-vibration weighting: band-limiting high-pass (0.4 Hz)
// and low-pass (100 Hz), acceleration-velocity transition (12.5 Hz, Q 0.63),
// and an upward-step stage (zeros 2.37 Hz / poles 3.35 Hz, both Q 0.91),
// discretized by bilinear transform with per-section corner prewarping.
struct WkFilter {
    std::array<BiquadSection, 4> sections;
    double sample_rate;  // [Hz]
};

// Throws std::invalid_argument below 500 Hz (discretization quality floor).
WkFilter make_wk_filter(double sample_rate);

// Magnitude of the analog weighting prototype at f [Hz] (validation oracle).
double wk_analog_magnitude(double f);

// Magnitude of the discretized cascade at f [Hz].
double wk_digital_magnitude(const WkFilter& filter, double f);

// Applies the weighting cascade with zero initial filter state.
std::vector<double> weight_acceleration(const std::vector<double>& a_s, double sample_rate);

// RMS over the exposure window by trapezoidal integration: the series is
// read as uniform samples spanning [0, T].
double weighted_rms(const std::vector<double>& a_w, double T);

// Subjective comfort labels with deliberately overlapping RMS ranges.
enum class ComfortLevel {
    NotUncomfortable,      // < 0.315 m/s^2
    ALittleUncomfortable,  // 0.315 - 0.63
    FairlyUncomfortable,   // 0.5 - 1.0
    Uncomfortable,         // 0.8 - 1.6
    VeryUncomfortable,     // 1.25 - 2.5
    ExtremelyUncomfortable // > 2.0
};
const char* to_string(ComfortLevel level);

// All labels whose range contains sigma_aw (bounds inclusive).
std::vector<ComfortLevel> classify_comfort(double sigma_aw);

// Population standard deviation of f_t normalized by the static load
// (m_s + m_u) * g.
double contact_force_ratio(const std::vector<double>& f_t, const VehicleParams& params);

struct SettlingResult {
    double t_s;    // settling time past disturbance_end [s]; horizon length if not settled
    bool settled;
};

// Smallest tau such that |x_s(t) - x_s(inf)| <= band * peak excursion for all
// t >= disturbance_end + tau, with x_s(inf) estimated from the series tail.
SettlingResult settling_time(const std::vector<double>& x_s, const std::vector<double>& t,
                             double disturbance_end, double band = 0.05);

}  // namespace qcar
