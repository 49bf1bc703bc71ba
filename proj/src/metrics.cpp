#include "qcar/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace qcar {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Corner frequencies [Hz] and resonance factors of the weighting stages.
constexpr double kF1 = 0.4;    // band-limiting high-pass
constexpr double kF2 = 100.0;  // band-limiting low-pass
constexpr double kF3 = 12.5;   // acceleration-velocity transition zero
constexpr double kF4 = 12.5;   // acceleration-velocity transition pole pair
constexpr double kQ4 = 0.63;
constexpr double kF5 = 2.37;   // upward-step zeros
constexpr double kQ5 = 0.91;
constexpr double kF6 = 3.35;   // upward-step poles
constexpr double kQ6 = 0.91;

struct AnalogBiquad {
    // (b2 s^2 + b1 s + b0) / (a2 s^2 + a1 s + a0)
    double b2, b1, b0;
    double a2, a1, a0;
    double f_warp;  // bilinear prewarp frequency [Hz]
};

std::array<AnalogBiquad, 4> analog_sections() {
    const double w1 = kTwoPi * kF1, w2 = kTwoPi * kF2, w3 = kTwoPi * kF3, w4 = kTwoPi * kF4;
    const double w5 = kTwoPi * kF5, w6 = kTwoPi * kF6;
    const double rt2 = std::sqrt(2.0);
    return {{
        {1.0, 0.0, 0.0, /**/ 1.0, rt2 * w1, w1 * w1, kF1},                            // high-pass
        {0.0, 0.0, w2 * w2, /**/ 1.0, rt2 * w2, w2 * w2, kF2},                        // low-pass
        {0.0, w4 * w4 / w3, w4 * w4, /**/ 1.0, w4 / kQ4, w4 * w4, kF4},               // transition
        {1.0, w5 / kQ5, w5 * w5, /**/ 1.0, w6 / kQ6, w6 * w6, kF6},                   // upward step
    }};
}

BiquadSection bilinear(const AnalogBiquad& s, double fs) {
    double wc = kTwoPi * s.f_warp;
    double K = wc / std::tan(wc / (2.0 * fs));  // prewarped so the corner maps exactly
    double K2 = K * K;
    double B0 = s.b2 * K2 + s.b1 * K + s.b0;
    double B1 = 2.0 * (s.b0 - s.b2 * K2);
    double B2 = s.b2 * K2 - s.b1 * K + s.b0;
    double A0 = s.a2 * K2 + s.a1 * K + s.a0;
    double A1 = 2.0 * (s.a0 - s.a2 * K2);
    double A2 = s.a2 * K2 - s.a1 * K + s.a0;
    return {B0 / A0, B1 / A0, B2 / A0, A1 / A0, A2 / A0};
}

}  // namespace

WkFilter make_wk_filter(double sample_rate) {
    if (!(sample_rate >= 500.0))
        throw std::invalid_argument(
            "make_wk_filter: sample rate must be >= 500 Hz for a faithful discretization");
    WkFilter f;
    f.sample_rate = sample_rate;
    auto analog = analog_sections();
    for (std::size_t i = 0; i < analog.size(); ++i) f.sections[i] = bilinear(analog[i], sample_rate);
    return f;
}

double wk_analog_magnitude(double f) {
    std::complex<double> s(0.0, kTwoPi * f);
    std::complex<double> h = 1.0;
    for (const AnalogBiquad& q : analog_sections())
        h *= (q.b2 * s * s + q.b1 * s + q.b0) / (q.a2 * s * s + q.a1 * s + q.a0);
    return std::abs(h);
}

double wk_digital_magnitude(const WkFilter& filter, double f) {
    std::complex<double> z_inv = std::exp(std::complex<double>(0.0, -kTwoPi * f / filter.sample_rate));
    std::complex<double> h = 1.0;
    for (const BiquadSection& q : filter.sections)
        h *= (q.b0 + q.b1 * z_inv + q.b2 * z_inv * z_inv) /
             (1.0 + q.a1 * z_inv + q.a2 * z_inv * z_inv);
    return std::abs(h);
}

std::vector<double> weight_acceleration(const std::vector<double>& a_s, double sample_rate) {
    WkFilter filter = make_wk_filter(sample_rate);
    std::vector<double> y(a_s);
    for (const BiquadSection& q : filter.sections) {
        double z1 = 0.0, z2 = 0.0;  // transposed direct form II, zero initial state
        for (double& v : y) {
            double x = v;
            double out = q.b0 * x + z1;
            z1 = q.b1 * x - q.a1 * out + z2;
            z2 = q.b2 * x - q.a2 * out;
            v = out;
        }
    }
    return y;
}

double weighted_rms(const std::vector<double>& a_w, double T) {
    if (a_w.size() < 2) throw std::domain_error("weighted_rms: need at least 2 samples");
    if (!(T > 0.0)) throw std::domain_error("weighted_rms: exposure must be > 0");
    double sum = 0.0;
    for (double v : a_w) sum += v * v;
    sum -= 0.5 * (a_w.front() * a_w.front() + a_w.back() * a_w.back());
    double dt = T / static_cast<double>(a_w.size() - 1);
    return std::sqrt(sum * dt / T);
}

const char* to_string(ComfortLevel level) {
    switch (level) {
        case ComfortLevel::NotUncomfortable: return "not uncomfortable";
        case ComfortLevel::ALittleUncomfortable: return "a little uncomfortable";
        case ComfortLevel::FairlyUncomfortable: return "fairly uncomfortable";
        case ComfortLevel::Uncomfortable: return "uncomfortable";
        case ComfortLevel::VeryUncomfortable: return "very uncomfortable";
        case ComfortLevel::ExtremelyUncomfortable: return "extremely uncomfortable";
    }
    return "?";
}

std::vector<ComfortLevel> classify_comfort(double sigma_aw) {
    if (!(sigma_aw >= 0.0)) throw std::domain_error("classify_comfort: sigma_aw must be >= 0");
    std::vector<ComfortLevel> levels;
    if (sigma_aw < 0.315) levels.push_back(ComfortLevel::NotUncomfortable);
    if (sigma_aw >= 0.315 && sigma_aw <= 0.63) levels.push_back(ComfortLevel::ALittleUncomfortable);
    if (sigma_aw >= 0.5 && sigma_aw <= 1.0) levels.push_back(ComfortLevel::FairlyUncomfortable);
    if (sigma_aw >= 0.8 && sigma_aw <= 1.6) levels.push_back(ComfortLevel::Uncomfortable);
    if (sigma_aw >= 1.25 && sigma_aw <= 2.5) levels.push_back(ComfortLevel::VeryUncomfortable);
    if (sigma_aw > 2.0) levels.push_back(ComfortLevel::ExtremelyUncomfortable);
    return levels;
}

double contact_force_ratio(const std::vector<double>& f_t, const VehicleParams& params) {
    if (f_t.empty()) throw std::domain_error("contact_force_ratio: empty series");
    double stat = (params.m_s + params.m_u) * params.g;
    if (!(stat > 0.0)) throw std::domain_error("contact_force_ratio: zero static load");
    double mean = 0.0;
    for (double v : f_t) mean += v;
    mean /= static_cast<double>(f_t.size());
    double var = 0.0;
    for (double v : f_t) var += (v - mean) * (v - mean);
    var /= static_cast<double>(f_t.size());  // population variance
    return std::sqrt(var) / stat;
}

SettlingResult settling_time(const std::vector<double>& x_s, const std::vector<double>& t,
                             double disturbance_end, double band) {
    if (x_s.size() != t.size() || x_s.empty())
        throw std::domain_error("settling_time: series and time grid must match and be nonempty");
    if (!(band > 0.0 && band < 1.0))
        throw std::domain_error("settling_time: band must lie in (0, 1)");
    std::size_t start = 0;
    while (start < t.size() && t[start] < disturbance_end) ++start;
    if (start + 2 >= t.size())
        throw std::domain_error("settling_time: series does not extend past the disturbance");

    const std::size_t n = t.size();
    const std::size_t window = n - start;
    const std::size_t tail = std::max<std::size_t>(window / 10, 1);
    double x_inf = 0.0;
    for (std::size_t i = n - tail; i < n; ++i) x_inf += x_s[i];
    x_inf /= static_cast<double>(tail);

    double max_dev = 0.0;
    for (std::size_t i = start; i < n; ++i) max_dev = std::max(max_dev, std::abs(x_s[i] - x_inf));
    if (max_dev == 0.0) return {0.0, true};

    const double threshold = band * max_dev;
    std::size_t last_violation = n;  // sentinel: none
    for (std::size_t i = n; i-- > start;) {
        if (std::abs(x_s[i] - x_inf) > threshold) {
            last_violation = i;
            break;
        }
    }
    if (last_violation == n) return {0.0, true};
    if (last_violation >= n - tail)  // still violating inside the tail: not settled
        return {t[n - 1] - disturbance_end, false};
    return {t[last_violation + 1] - disturbance_end, true};
}

}  // namespace qcar
