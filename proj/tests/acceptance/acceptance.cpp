// Acceptance suite: end-to-end reproduction checks against the published
// study values, spectral/LTI/brute-force oracles, and property suites.
// Each criterion prints exactly one [PASS]/[FAIL] line (plus indented
// sub-check details) and the process exits nonzero if any run criterion
// failed. All tolerances are pinned here, in code.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "qcar/cross_entropy.hpp"
#include "qcar/metrics.hpp"
#include "qcar/model.hpp"
#include "qcar/objective.hpp"
#include "qcar/road.hpp"
#include "qcar/simulate.hpp"

using namespace qcar;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct SubCheck {
    bool ok;
    std::string text;
};

std::vector<SubCheck> g_checks;

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return std::string(buf);
}

void check_band(const std::string& label, double value, double target, double tol) {
    bool ok = std::isfinite(value) && std::abs(value - target) <= tol;
    g_checks.push_back({ok, fmt("%s = %.4g (target %.4g +- %.3g)", label.c_str(), value, target,
                                tol)});
}

void check_true(const std::string& label, bool ok) { g_checks.push_back({ok, label}); }

// ---------------------------------------------------------------- shared

Scenario study_scenario(const VehicleParams& params, RoadClass road_class, double v, double f_n,
                        std::uint64_t seed) {
    Scenario sc;
    sc.params = params;
    sc.f_n = f_n;
    sc.road.road_class = road_class;
    sc.road.length = 1000.0;
    sc.road.seed = seed;
    sc.v = v;
    sc.sim.v = v;
    sc.warmup = 2.0;
    sc.with_settling = true;
    return sc;
}

CEConfig default_ce(std::uint64_t seed) {
    CEConfig ce;
    ce.lower = {0.0, 0.0};
    ce.upper = {1.0, 1.0};
    ce.seed = seed;
    return ce;
}

struct OptimumReport {
    double zeta_n, zeta_p;
    Evaluation at_optimum;
};

OptimumReport optimize_scenario(const PreparedScenario& prepared, const ObjectiveConfig& preset,
                                std::uint64_t ce_seed) {
    auto objective = [&prepared, &preset](const std::vector<double>& x) {
        return evaluate(x[0], x[1], prepared, preset).J;
    };
    CEResult r = optimize(objective, default_ce(ce_seed));
    OptimumReport report;
    report.zeta_n = r.x_best[0];
    report.zeta_p = r.x_best[1];
    report.at_optimum = evaluate(report.zeta_n, report.zeta_p, prepared, preset);
    return report;
}

// Steady-state amplitude at frequency f by quadrature demodulation over whole
// periods, after t_start.
double demod_amplitude(const std::vector<double>& x, double dt, double f, double t_start) {
    std::size_t i0 = static_cast<std::size_t>(std::ceil(t_start / dt));
    double span = (x.size() - 1 - i0) * dt;
    int periods = static_cast<int>(std::floor(span * f));
    std::size_t n = static_cast<std::size_t>(std::round(periods / f / dt));
    double re = 0.0, im = 0.0;
    for (std::size_t k = i0; k < i0 + n; ++k) {
        double ph = 2.0 * kPi * f * (k * dt);
        re += x[k] * std::cos(ph);
        im += x[k] * std::sin(ph);
    }
    return 2.0 * std::hypot(re, im) / double(n);
}

// ---------------------------------------------------------------- criteria

// Published contact-force ratios across road classes B/C/D for the symmetric
// mid-band design, averaged over ten seeds.
void criterion_1() {
    VehicleParams light = light_vehicle();
    SuspensionDesign design{1.5, 0.3, 0.3};
    const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

    struct ClassTarget {
        RoadClass road_class;
        const char* name;
        double target;
    };
    const ClassTarget cases[] = {{RoadClass::B, "class B", 0.15},
                                 {RoadClass::C, "class C", 0.30},
                                 {RoadClass::D, "class D", 0.53}};

    auto t0 = std::chrono::steady_clock::now();
    bool contact_kept = true;
    double min_ft_b = 1e300;
    for (const ClassTarget& c : cases) {
        double mean_R = 0.0;
        for (std::uint64_t seed : seeds) {
            ProfileSpec spec;
            spec.road_class = c.road_class;
            spec.length = 1000.0;
            spec.seed = seed;
            SimConfig cfg;
            cfg.v = 40.0;
            SimResult r = simulate(light, design, synthesize(spec), cfg);
            std::size_t warm = static_cast<std::size_t>(std::ceil(2.0 / 1e-3));
            std::vector<double> ft(r.f_t.begin() + warm, r.f_t.end());
            mean_R += contact_force_ratio(ft, light);
            if (c.road_class == RoadClass::B)
                for (double v : r.f_t) {
                    min_ft_b = std::min(min_ft_b, v);
                    if (v <= 0.0) contact_kept = false;
                }
        }
        mean_R /= double(seeds.size());
        check_band(fmt("mean R_ft %s (10 seeds)", c.name), mean_R, c.target, 0.03);
    }
    check_true(fmt("class-B tire force stays positive (min %.1f N)", min_ft_b), contact_kept);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    check_true(fmt("runtime %.1f s < 30 s", secs), secs < 30.0);
}

// Class-B optimization study: the three presets reach the published
// comfort/contact/settling levels.
void criterion_2() {
    Scenario sc = study_scenario(light_vehicle(), RoadClass::B, 40.0, 1.5, 0);
    PreparedScenario prepared = prepare(sc);

    OptimumReport min_r =
        optimize_scenario(prepared, ObjectiveConfig::preset(PresetTag::MinRft), 0);
    check_band("Min-R_ft: sigma_aw [m/s^2]", min_r.at_optimum.sigma_aw, 0.688, 0.07);
    check_band("Min-R_ft: R_ft", min_r.at_optimum.R_ft, 0.140, 0.02);
    check_band("Min-R_ft: t_s [s]", min_r.at_optimum.t_s, 1.0, 0.3);

    OptimumReport min_sigma =
        optimize_scenario(prepared, ObjectiveConfig::preset(PresetTag::MinSigmaAw), 0);
    check_band("Min-sigma_aw: t_s [s]", min_sigma.at_optimum.t_s, 3.27, 1.0);

    OptimumReport constrained = optimize_scenario(
        prepared, ObjectiveConfig::preset(PresetTag::SigmaGivenRft, 0.141), 0);
    check_band("Constrained (R_ref 0.141): sigma_aw [m/s^2]", constrained.at_optimum.sigma_aw,
               0.628, 0.07);
    check_band("Constrained (R_ref 0.141): t_s [s]", constrained.at_optimum.t_s, 1.2, 0.3);
}

// Class-C light vehicle: comfort-first design is infeasible for road holding;
// the contact-first optimum and its comfort classification.
void criterion_3() {
    Scenario sc = study_scenario(light_vehicle(), RoadClass::C, 40.0, 1.5, 0);
    PreparedScenario prepared = prepare(sc);

    OptimumReport min_sigma =
        optimize_scenario(prepared, ObjectiveConfig::preset(PresetTag::MinSigmaAw), 0);
    check_true(fmt("Min-sigma_aw leaves R_ft = %.3f > 0.3 (infeasible road holding)",
                   min_sigma.at_optimum.R_ft),
               min_sigma.at_optimum.R_ft > 0.3);

    OptimumReport min_r =
        optimize_scenario(prepared, ObjectiveConfig::preset(PresetTag::MinRft), 0);
    check_band("Min-R_ft: R_ft", min_r.at_optimum.R_ft, 0.26, 0.03);
    check_band("Min-R_ft: sigma_aw [m/s^2]", min_r.at_optimum.sigma_aw, 1.33, 0.15);

    std::vector<ComfortLevel> labels = classify_comfort(min_r.at_optimum.sigma_aw);
    bool very = std::find(labels.begin(), labels.end(), ComfortLevel::VeryUncomfortable) !=
                labels.end();
    check_true(fmt("comfort classification of sigma_aw = %.3f includes 'very uncomfortable'",
                   min_r.at_optimum.sigma_aw),
               very);
}

// Mid-heavy vehicle at 20 m/s: asymmetric optimum on class D, compromise cell
// on class C.
void criterion_4() {
    VehicleParams heavy = mid_heavy_vehicle();

    Scenario class_d = study_scenario(heavy, RoadClass::D, 20.0, 1.5, 0);
    PreparedScenario prep_d = prepare(class_d);
    OptimumReport min_r = optimize_scenario(prep_d, ObjectiveConfig::preset(PresetTag::MinRft), 0);
    check_true(fmt("class-D minimum R_ft = %.3f in [0.22, 0.33]", min_r.at_optimum.R_ft),
               min_r.at_optimum.R_ft >= 0.22 && min_r.at_optimum.R_ft <= 0.33);
    check_true(fmt("asymmetry at the optimum: zeta_p = %.3f > zeta_n = %.3f", min_r.zeta_p,
                   min_r.zeta_n),
               min_r.zeta_p > min_r.zeta_n);

    Scenario class_c = study_scenario(heavy, RoadClass::C, 20.0, 1.5, 0);
    PreparedScenario prep_c = prepare(class_c);
    Evaluation cell = evaluate(0.26, 0.57, prep_c, ObjectiveConfig::preset(PresetTag::MinSigmaAw));
    check_band("compromise cell (0.26, 0.57): t_s [s]", cell.t_s, 1.0, 0.3);
    check_band("compromise cell (0.26, 0.57): sigma_aw [m/s^2]", cell.sigma_aw, 1.1, 0.15);
}

// Spectral check of the synthesized road: the periodogram recovers the class-C
// level and the -2 slope. The synthesis law A_i^2 = G_d * dn makes the
// sinusoid-ensemble signal PSD G_d/2, so the estimator carries a factor 2 to
// report on the amplitude-law scale that the class table defines.
void criterion_5() {
    ProfileSpec spec;
    spec.road_class = RoadClass::C;
    spec.length = 1000.0;
    spec.seed = 3;
    SyntheticProfile profile = synthesize(spec);

    const double dx = 0.125;
    const std::size_t M = 8000;
    std::vector<double> y = sample(profile, 0.0, dx, M);

    // direct DFT via per-bin phasor recurrence
    std::size_t K = M / 2;
    std::vector<double> G(K + 1, 0.0), freq(K + 1, 0.0);
    for (std::size_t k = 1; k <= K; ++k) {
        double ang = -2.0 * kPi * double(k) / double(M);
        std::complex<double> w(std::cos(ang), std::sin(ang));
        std::complex<double> ph(1.0, 0.0), acc(0.0, 0.0);
        for (std::size_t m = 0; m < M; ++m) {
            acc += y[m] * ph;
            ph *= w;
        }
        freq[k] = double(k) / (double(M) * dx);
        G[k] = 4.0 * dx * std::norm(acc) / double(M);
    }

    // level: linear band average around n = 0.1 (band chosen with geometric
    // mean exactly 0.1 so the n^-2 curvature bias cancels)
    double level = 0.0;
    int n_level = 0;
    for (std::size_t k = 1; k <= K; ++k)
        if (freq[k] >= 0.08 && freq[k] <= 0.125) {
            level += G[k];
            ++n_level;
        }
    level /= n_level;
    bool level_ok = std::abs(level - 256e-6) <= 0.25 * 256e-6;
    g_checks.push_back({level_ok, fmt("PSD level near n=0.1: %.1f x 1e-6 m^3 (target 256 +- 25%%)",
                                      level * 1e6)});

    // slope: log-binned averages over [0.02, 1], least squares in log-log
    const int n_bins = 12;
    std::vector<double> lx, ly;
    for (int b = 0; b < n_bins; ++b) {
        double lo = 0.02 * std::pow(50.0, double(b) / n_bins);
        double hi = 0.02 * std::pow(50.0, double(b + 1) / n_bins);
        double sum = 0.0;
        int cnt = 0;
        for (std::size_t k = 1; k <= K; ++k)
            if (freq[k] >= lo && freq[k] < hi) {
                sum += G[k];
                ++cnt;
            }
        if (cnt > 0) {
            lx.push_back(std::log(std::sqrt(lo * hi)));
            ly.push_back(std::log(sum / cnt));
        }
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= double(lx.size());
    my /= double(ly.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    double slope = sxy / sxx;
    check_band("log-log PSD slope over [0.02, 1]", slope, -2.0, 0.1);
}

// LTI oracle: simulated steady-state acceleration amplitude matches the
// analytic transfer function in the symmetric linear regime.
void criterion_6() {
    VehicleParams light = light_vehicle();
    SuspensionDesign design{1.5, 0.3, 0.3};
    PhysicalSuspension phys = derive_physical(design, light);

    const double v = 15.0, amplitude = 0.001;
    bool all_ok = true;
    double worst = 0.0, worst_f = 0.0;
    for (int i = 0; i < 10; ++i) {
        double f = 0.5 * std::pow(20.0 / 0.5, double(i) / 9.0);

        SyntheticProfile mono;
        mono.length = 1e9;
        mono.components.push_back(Component{amplitude, f / v, 0.7});
        SimConfig cfg;
        cfg.v = v;
        cfg.duration = 5.0 + 10.0 / f;
        SimResult r = simulate(light, design, mono, cfg);
        double measured = demod_amplitude(r.a_s, 1e-3, f, 5.0);

        std::complex<double> s(0.0, 2.0 * kPi * f);
        std::complex<double> cs_ks = phys.c_p * s + phys.k_s;
        std::complex<double> den = (light.m_u * s * s + cs_ks + light.k_t_nom) *
                                       (light.m_s * s * s + cs_ks) -
                                   cs_ks * cs_ks;
        double expected = std::abs(s * s * light.k_t_nom * cs_ks / den) * amplitude;

        double rel = std::abs(measured - expected) / expected;
        if (rel > worst) {
            worst = rel;
            worst_f = f;
        }
        if (rel > 0.01) all_ok = false;
    }
    check_true(fmt("steady-state |a_s| within 1%% of the analytic response at 10 "
                   "frequencies 0.5-20 Hz (worst %.2f%% at %.2f Hz)",
                   100.0 * worst, worst_f),
               all_ok);
}

// Brute-force oracle: CE lands within one 51x51 grid cell of the dense-grid
// argmin for all four presets, for five optimizer seeds.
void criterion_7() {
    Scenario sc = study_scenario(light_vehicle(), RoadClass::B, 40.0, 1.5, 0);
    sc.with_settling = false;
    PreparedScenario prepared = prepare(sc);

    const int res = 51;
    const double cell = 1.0 / double(res - 1);
    std::vector<double> sigma(res * res), rft(res * res);
    ObjectiveConfig probe = ObjectiveConfig::preset(PresetTag::MinSigmaAw);
    for (int i = 0; i < res; ++i)
        for (int k = 0; k < res; ++k) {
            Evaluation ev = evaluate(i * cell, k * cell, prepared, probe);
            sigma[i * res + k] = ev.sigma_aw;
            rft[i * res + k] = ev.R_ft;
        }

    const ObjectiveConfig presets[] = {
        ObjectiveConfig::preset(PresetTag::MinSigmaAw),
        ObjectiveConfig::preset(PresetTag::MinRft),
        ObjectiveConfig::preset(PresetTag::SigmaGivenRft, 0.141),
        // comfort reference pinned mid-range; the oracle-equivalence property
        // is what is under test, not the reference itself
        ObjectiveConfig::preset(PresetTag::RftGivenSigma, 0.7),
    };
    for (const ObjectiveConfig& preset : presets) {
        int best = 0;
        double best_j = 1e300;
        for (int idx = 0; idx < res * res; ++idx) {
            double j = preset.A_s * std::abs(sigma[idx] - preset.sigma_ref) +
                       preset.A_f * std::abs(rft[idx] - preset.R_ref);
            if (j < best_j) {
                best_j = j;
                best = idx;
            }
        }
        double grid_zn = (best / res) * cell, grid_zp = (best % res) * cell;

        bool all_within = true;
        double worst = 0.0, worst_excess = -1e300;
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            OptimumReport r = optimize_scenario(prepared, preset, seed);
            double d = std::max(std::abs(r.zeta_n - grid_zn), std::abs(r.zeta_p - grid_zp));
            worst = std::max(worst, d);
            worst_excess = std::max(worst_excess, r.at_optimum.J - best_j);
            if (d > cell * 1.0001) all_within = false;
        }
        check_true(fmt("%s: 5 CE seeds within one cell of grid argmin (%.2f, %.2f); "
                       "max distance %.4f, cell %.2f, max J_CE - J_grid %+.4f",
                       preset.name().c_str(), grid_zn, grid_zp, worst, cell, worst_excess),
                   all_within);
    }
}

// Property suites: equilibrium residual, dissipativity, smoothing agreement,
// metric equivariances, filter fidelity, optimizer contracts, bitwise
// reproducibility including parallel execution.
void criterion_8() {
    VehicleParams light = light_vehicle();
    VehicleParams heavy = mid_heavy_vehicle();

    {  // static equilibrium residual
        double worst = 0.0;
        for (const VehicleParams* p : {&light, &heavy})
            for (double zn : {0.0, 0.3, 0.9})
                for (double fn : {1.0, 1.5, 2.0}) {
                    SuspensionDesign d{fn, 0.5, zn};
                    State eq = static_equilibrium(*p, d);
                    State der = state_derivative(eq, 0.0, *p, d);
                    worst = std::max({worst, std::abs(der.x_u), std::abs(der.v_u),
                                      std::abs(der.x_s), std::abs(der.v_s)});
                }
        check_true(fmt("static equilibrium residual %.2e < 1e-10", worst), worst < 1e-10);
    }
    {  // energy non-increase on damped free decay (linear-regime deviation energy)
        SuspensionDesign d{1.5, 0.3, 0.2};
        PhysicalSuspension phys = derive_physical(d, light);
        State eq = static_equilibrium(light, d);
        double rel_eq = eq.x_s - eq.x_u;

        SimConfig cfg;
        cfg.duration = 8.0;
        // perturb by integrating from a displaced start: simulate_transient
        // always starts at equilibrium, so integrate manually here
        std::vector<double> energy;
        State s = eq;
        s.x_s += 0.05;
        s.v_u += 0.3;
        double h = 5e-4;
        auto deriv = [&](const State& st) { return state_derivative(st, 0.0, light, d); };
        auto energy_of = [&](const State& st) {
            double rel = (st.x_s - st.x_u) - rel_eq;
            double tire = st.x_u - eq.x_u;
            return 0.5 * light.m_s * st.v_s * st.v_s + 0.5 * light.m_u * st.v_u * st.v_u +
                   0.5 * phys.k_s * rel * rel + 0.5 * light.k_t_nom * tire * tire;
        };
        for (int step = 0; step < 16000; ++step) {
            if (step % 2 == 0) energy.push_back(energy_of(s));
            State k1 = deriv(s);
            State m1{s.x_u + 0.5 * h * k1.x_u, s.v_u + 0.5 * h * k1.v_u,
                     s.x_s + 0.5 * h * k1.x_s, s.v_s + 0.5 * h * k1.v_s};
            State k2 = deriv(m1);
            State m2{s.x_u + 0.5 * h * k2.x_u, s.v_u + 0.5 * h * k2.v_u,
                     s.x_s + 0.5 * h * k2.x_s, s.v_s + 0.5 * h * k2.v_s};
            State k3 = deriv(m2);
            State m3{s.x_u + h * k3.x_u, s.v_u + h * k3.v_u, s.x_s + h * k3.x_s,
                     s.v_s + h * k3.v_s};
            State k4 = deriv(m3);
            s.x_u += h / 6.0 * (k1.x_u + 2 * k2.x_u + 2 * k3.x_u + k4.x_u);
            s.v_u += h / 6.0 * (k1.v_u + 2 * k2.v_u + 2 * k3.v_u + k4.v_u);
            s.x_s += h / 6.0 * (k1.x_s + 2 * k2.x_s + 2 * k3.x_s + k4.x_s);
            s.v_s += h / 6.0 * (k1.v_s + 2 * k2.v_s + 2 * k3.v_s + k4.v_s);
        }
        bool non_increasing = true;
        for (std::size_t i = 1; i < energy.size(); ++i)
            if (energy[i] > energy[i - 1] + 1e-4 * energy[0]) non_increasing = false;
        check_true(fmt("free-decay energy never increases (E end/start = %.1e)",
                       energy.back() / energy.front()),
                   non_increasing && energy.back() < 0.01 * energy.front());
    }
    {  // smoothed laws agree with the piecewise laws away from switching
        PhysicalSuspension phys{22000.0, 2000.0, 800.0};
        const double eps = 1e-6;
        double worst = 0.0;
        for (double v : {0.2, 1.0, 3.0}) {
            worst = std::max(worst, std::abs(smoothed_damping(v, phys, eps) - phys.c_p));
            worst = std::max(worst, std::abs(smoothed_damping(-v, phys, eps) - phys.c_n));
        }
        bool damp_ok = worst <= (phys.c_p - phys.c_n) / 2.0 * eps / 0.2 * 1.01;
        double tire_dev =
            std::max(std::abs(smoothed_tire_stiffness(0.01, light, eps) - light.k_t_nom),
                     std::abs(smoothed_tire_stiffness(-0.01, light, eps)));
        bool tire_ok = tire_dev <= light.k_t_nom / 2.0 * eps / 0.01 * 1.01;
        check_true(fmt("smoothed laws match piecewise away from zero (damping dev %.2e N s/m, "
                       "tire dev %.2e N/m)",
                       worst, tire_dev),
                   damp_ok && tire_ok);
    }
    {  // weighted-RMS scale equivariance, contact-ratio offset invariance
        std::vector<double> x;
        for (int i = 0; i < 4000; ++i)
            x.push_back(std::sin(0.013 * i) + 0.4 * std::sin(0.11 * i + 1.0));
        double base = weighted_rms(x, 4.0);
        std::vector<double> scaled = x;
        for (double& v : scaled) v *= -2.5;
        bool rms_ok = std::abs(weighted_rms(scaled, 4.0) - 2.5 * base) <= 1e-12 * base;

        std::vector<double> ft;
        double w = (light.m_s + light.m_u) * light.g;
        for (int i = 0; i < 2000; ++i) ft.push_back(w + 300.0 * std::sin(0.05 * i));
        double r0 = contact_force_ratio(ft, light);
        for (double& v : ft) v += 250.0;
        bool ratio_ok = std::abs(contact_force_ratio(ft, light) - r0) <= 1e-9;
        check_true("weighted RMS is scale-equivariant; contact ratio is offset-invariant",
                   rms_ok && ratio_ok);
    }
    {  // Wk discretization within 2% of the analog prototype up to 50 Hz
        WkFilter filter = make_wk_filter(1000.0);
        double worst = 0.0, worst_f = 0.0;
        for (int i = 0; i <= 40; ++i) {
            double f = 0.1 * std::pow(500.0, double(i) / 40.0);
            double rel = std::abs(wk_digital_magnitude(filter, f) - wk_analog_magnitude(f)) /
                         wk_analog_magnitude(f);
            if (rel > worst) {
                worst = rel;
                worst_f = f;
            }
        }
        check_true(fmt("Wk discretization within 2%% of analog to 50 Hz (worst %.2f%% at %.1f Hz)",
                       100.0 * worst, worst_f),
                   worst <= 0.02);
    }
    {  // CE contracts: monotone best-so-far, feasibility, parallel == serial
        std::vector<std::vector<double>> seen;
        auto record = [&seen](const std::vector<double>& x) {
            seen.push_back(x);
            return (x[0] - 0.37) * (x[0] - 0.37) + 0.5 * (x[1] - 0.81) * (x[1] - 0.81);
        };
        CEConfig cfg = default_ce(12);
        CEResult serial = optimize(record, cfg, 1);
        bool feasible = true;
        for (const auto& x : seen)
            for (double v : x)
                if (v < 0.0 || v > 1.0) feasible = false;
        bool monotone = true;
        for (std::size_t i = 1; i < serial.history.size(); ++i)
            if (serial.history[i].best_J > serial.history[i - 1].best_J) monotone = false;

        auto pure = [](const std::vector<double>& x) {
            return (x[0] - 0.37) * (x[0] - 0.37) + 0.5 * (x[1] - 0.81) * (x[1] - 0.81);
        };
        CEResult a = optimize(pure, cfg, 1);
        CEResult b = optimize(pure, cfg, 4);
        bool identical = a.x_best == b.x_best && a.J_best == b.J_best &&
                         a.history.size() == b.history.size();
        for (std::size_t i = 0; identical && i < a.history.size(); ++i)
            identical = a.history[i].mean == b.history[i].mean &&
                        a.history[i].stddev == b.history[i].stddev;
        check_true("CE: best-so-far monotone, samples feasible, 4 workers bitwise equal to serial",
                   feasible && monotone && identical);
    }
    {  // bitwise reproducibility of synthesis and full scenario evaluation
        ProfileSpec spec;
        spec.road_class = RoadClass::C;
        spec.length = 500.0;
        spec.seed = 21;
        SyntheticProfile p1 = synthesize(spec), p2 = synthesize(spec);
        bool same_profile = p1.components.size() == p2.components.size();
        for (std::size_t i = 0; same_profile && i < p1.components.size(); ++i)
            same_profile = p1.components[i].amplitude == p2.components[i].amplitude &&
                           p1.components[i].phase == p2.components[i].phase;

        Scenario sc = study_scenario(light, RoadClass::B, 40.0, 1.5, 4);
        sc.road.length = 300.0;
        PreparedScenario prep1 = prepare(sc), prep2 = prepare(sc);
        Evaluation e1 = evaluate(0.25, 0.55, prep1, ObjectiveConfig::preset(PresetTag::MinRft));
        Evaluation e2 = evaluate(0.25, 0.55, prep2, ObjectiveConfig::preset(PresetTag::MinRft));
        bool same_eval = e1.J == e2.J && e1.sigma_aw == e2.sigma_aw && e1.R_ft == e2.R_ft &&
                         e1.t_s == e2.t_s;
        check_true("identical seeds reproduce bitwise (synthesis and scenario evaluation)",
                   same_profile && same_eval);
    }
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
    }

    void (*criteria[])() = {criterion_1, criterion_2, criterion_3, criterion_4,
                            criterion_5, criterion_6, criterion_7, criterion_8};
    const char* titles[] = {
        "contact-force ratios across road classes B/C/D",
        "class-B light-vehicle optimization study",
        "class-C light-vehicle optimization study",
        "mid-heavy vehicle study (class D optimum, class C compromise cell)",
        "road-synthesis spectral check",
        "LTI transfer-function oracle",
        "CE vs 51x51 brute-force grid for all four presets",
        "property suites",
    };

    bool all_ok = true;
    for (int c = 1; c <= 8; ++c) {
        if (only != 0 && c != only) continue;
        g_checks.clear();
        auto t0 = std::chrono::steady_clock::now();
        criteria[c - 1]();
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        bool ok = true;
        for (const SubCheck& chk : g_checks) ok = ok && chk.ok;
        all_ok = all_ok && ok;
        std::printf("[%s] criterion %d: %s (%.1f s)\n", ok ? "PASS" : "FAIL", c, titles[c - 1],
                    secs);
        for (const SubCheck& chk : g_checks)
            std::printf("    %s %s\n", chk.ok ? "-" : "x", chk.text.c_str());
        std::fflush(stdout);
    }
    return all_ok ? 0 : 1;
}
