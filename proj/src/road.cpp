#include "qcar/road.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

#include "qcar/util.hpp"

namespace qcar {

RoadClass road_class_from_string(const std::string& label) {
    if (label.size() == 1 && label[0] >= 'A' && label[0] <= 'H')
        return static_cast<RoadClass>(label[0] - 'A');
    if (label.size() == 1 && label[0] >= 'a' && label[0] <= 'h')
        return static_cast<RoadClass>(label[0] - 'a');
    throw std::domain_error("unknown road class '" + label + "' (expected A..H)");
}

const char* to_string(RoadClass c) {
    static const char* names[] = {"A", "B", "C", "D", "E", "F", "G", "H"};
    return names[static_cast<int>(c)];
}

double psd_reference(RoadClass c) {
    // Degree of roughness at n0 = 0.1 cycles/m, geometric progression x4.
    static const double gd[] = {16e-6,    64e-6,    256e-6,   1024e-6,
                                4096e-6,  16384e-6, 65536e-6, 262144e-6};
    return gd[static_cast<int>(c)];
}

double psd(RoadClass c, double n) {
    if (!(n > 0.0)) throw std::domain_error("psd: spatial frequency must be > 0");
    double r = n / 0.1;
    return psd_reference(c) / (r * r);
}

void ProfileSpec::validate() const {
    if (!(n_min >= 0.011 && n_min < n_max && n_max <= 2.83))
        throw std::domain_error("ProfileSpec: band must satisfy 0.011 <= n_min < n_max <= 2.83");
    if (n_components < 2) throw std::domain_error("ProfileSpec: need at least 2 components");
    if (!(length > 0.0)) throw std::domain_error("ProfileSpec: length must be > 0");
}

SyntheticProfile synthesize(const ProfileSpec& spec) {
    spec.validate();
    SyntheticProfile profile;
    profile.length = spec.length;
    profile.components.resize(spec.n_components);
    double dn = (spec.n_max - spec.n_min) / spec.n_components;
    std::mt19937_64 rng(spec.seed);
    const double two_pi = 2.0 * M_PI;
    for (int i = 0; i < spec.n_components; ++i) {
        double n_i = spec.n_min + (i + 0.5) * dn;  // band-center frequency grid
        profile.components[i].frequency = n_i;
        profile.components[i].amplitude = std::sqrt(psd(spec.road_class, n_i) * dn);
        profile.components[i].phase = two_pi * uniform01(rng());
    }
    return profile;
}

double eval(const RoadExcitation& excitation, double x) {
    struct Visitor {
        double x;
        double operator()(const SyntheticProfile& p) const {
            const double two_pi = 2.0 * M_PI;
            double y = 0.0;
            for (const Component& c : p.components)
                y += c.amplitude * std::sin(two_pi * c.frequency * x + c.phase);
            return y;
        }
        double operator()(const StepInput& s) const { return x < s.x0 ? 0.0 : s.height; }
        double operator()(const BumpInput& b) const {
            if (x < b.x0 || x > b.x0 + b.base_length) return 0.0;
            return b.height * std::sin(M_PI * (x - b.x0) / b.base_length);
        }
        double operator()(const FlatRoad&) const { return 0.0; }
    };
    return std::visit(Visitor{x}, excitation);
}

namespace {

// Accumulates one sinusoid onto y via the rotation recurrence
// sin(t+d) = sin(t)cos(d) + cos(t)sin(d), re-anchored with exact calls
// every block to stop rounding drift.
void add_component_sampled(std::vector<double>& y, const Component& c, double x0, double dx) {
    const double two_pi = 2.0 * M_PI;
    const std::size_t resync = 8192;
    double dtheta = two_pi * c.frequency * dx;
    double cd = std::cos(dtheta), sd = std::sin(dtheta);
    double s = 0.0, co = 1.0;
    for (std::size_t k = 0; k < y.size(); ++k) {
        if (k % resync == 0) {
            double theta = two_pi * c.frequency * (x0 + static_cast<double>(k) * dx) + c.phase;
            s = std::sin(theta);
            co = std::cos(theta);
        }
        y[k] += c.amplitude * s;
        double s2 = s * cd + co * sd;
        co = co * cd - s * sd;
        s = s2;
    }
}

}  // namespace

std::vector<double> sample(const RoadExcitation& excitation, double x0, double dx,
                           std::size_t count) {
    if (const auto* p = std::get_if<SyntheticProfile>(&excitation)) {
        std::vector<double> y(count, 0.0);
        for (const Component& c : p->components) add_component_sampled(y, c, x0, dx);
        return y;
    }
    std::vector<double> y(count);
    for (std::size_t k = 0; k < count; ++k) y[k] = eval(excitation, x0 + static_cast<double>(k) * dx);
    return y;
}

void export_profile(const RoadExcitation& excitation, double x0, double dx, std::size_t count,
                    const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("export_profile: cannot open " + path);
    out << "# columns: x,y\n";
    std::vector<double> y = sample(excitation, x0, dx, count);
    for (std::size_t k = 0; k < count; ++k)
        out << format_double(x0 + static_cast<double>(k) * dx) << "," << format_double(y[k]) << "\n";
}

double deterministic_extent(const RoadExcitation& excitation) {
    if (const auto* s = std::get_if<StepInput>(&excitation)) return s->x0;
    if (const auto* b = std::get_if<BumpInput>(&excitation)) return b->x0 + b->base_length;
    return 0.0;
}

}  // namespace qcar
