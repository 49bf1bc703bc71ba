#include "qcar/cross_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "qcar/util.hpp"

namespace qcar {

void CEConfig::validate() const {
    if (population < 2) throw std::domain_error("CEConfig: population must be >= 2");
    if (!(elite_fraction > 0.0 && elite_fraction <= 0.5))
        throw std::domain_error("CEConfig: elite_fraction must lie in (0, 0.5]");
    if (!(smoothing > 0.0 && smoothing <= 1.0))
        throw std::domain_error("CEConfig: smoothing must lie in (0, 1]");
    if (max_iterations < 1) throw std::domain_error("CEConfig: max_iterations must be >= 1");
    if (lower.empty() || lower.size() != upper.size())
        throw std::domain_error("CEConfig: bounds must be nonempty and of equal size");
    for (std::size_t d = 0; d < lower.size(); ++d)
        if (!(std::isfinite(lower[d]) && std::isfinite(upper[d]) && lower[d] < upper[d]))
            throw std::domain_error("CEConfig: bounds must be finite with lower < upper");
    if (!(std::isfinite(std_tolerance) && std_tolerance >= 0.0))
        throw std::domain_error("CEConfig: std_tolerance must be >= 0");
    if (retry_cap < 1) throw std::domain_error("CEConfig: retry_cap must be >= 1");
}

const char* to_string(CETermination reason) {
    switch (reason) {
        case CETermination::MaxIterations: return "max_iterations";
        case CETermination::StdConverged: return "std_converged";
    }
    return "?";
}

namespace {

// One truncated-Gaussian draw per dimension: rejection against the box with
// a cap, then clamping as a last resort.
std::vector<double> draw_sample(std::mt19937_64& rng, const std::vector<double>& mean,
                                const std::vector<double>& stddev, const CEConfig& cfg) {
    std::normal_distribution<double> normal;
    std::vector<double> x(mean.size());
    for (std::size_t d = 0; d < mean.size(); ++d) {
        double value = 0.0;
        bool inside = false;
        for (int tries = 0; tries < 100; ++tries) {
            value = mean[d] + stddev[d] * normal(rng);
            if (value >= cfg.lower[d] && value <= cfg.upper[d]) {
                inside = true;
                break;
            }
        }
        if (!inside) value = std::clamp(value, cfg.lower[d], cfg.upper[d]);
        x[d] = value;
    }
    return x;
}

}  // namespace

CEResult optimize(const std::function<double(const std::vector<double>&)>& objective,
                  const CEConfig& config, int workers) {
    config.validate();
    const std::size_t dim = config.lower.size();
    const int n_elite = static_cast<int>(std::ceil(config.elite_fraction * config.population));

    std::vector<double> mean(dim), stddev(dim);
    for (std::size_t d = 0; d < dim; ++d) {
        mean[d] = 0.5 * (config.lower[d] + config.upper[d]);
        stddev[d] = 0.5 * (config.upper[d] - config.lower[d]);
    }

    CEResult result;
    result.J_best = std::numeric_limits<double>::infinity();
    result.reason = CETermination::MaxIterations;

    std::vector<std::vector<double>> xs(config.population);
    std::vector<double> js(config.population);

    for (int iter = 0; iter < config.max_iterations; ++iter) {
        parallel_for(static_cast<std::size_t>(config.population), workers, [&](std::size_t i) {
            std::exception_ptr last_error;
            for (int attempt = 0; attempt < config.retry_cap; ++attempt) {
                std::mt19937_64 rng(derive_seed(config.seed,
                                                {static_cast<std::uint64_t>(iter), i,
                                                 static_cast<std::uint64_t>(attempt)}));
                std::vector<double> x = draw_sample(rng, mean, stddev, config);
                try {
                    double j = objective(x);
                    if (std::isfinite(j)) {
                        xs[i] = std::move(x);
                        js[i] = j;
                        return;
                    }
                    last_error = std::make_exception_ptr(
                        std::runtime_error("objective returned a non-finite value"));
                } catch (...) {
                    last_error = std::current_exception();
                }
            }
            std::rethrow_exception(last_error);  // retry cap exhausted
        });

        // Elite selection; index tie-break keeps the order deterministic.
        std::vector<int> order(config.population);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (js[a] != js[b]) return js[a] < js[b];
            return a < b;
        });
        if (js[order[0]] < result.J_best) {
            result.J_best = js[order[0]];
            result.x_best = xs[order[0]];
        }

        std::vector<double> elite_mean(dim, 0.0), elite_std(dim, 0.0);
        for (int e = 0; e < n_elite; ++e)
            for (std::size_t d = 0; d < dim; ++d) elite_mean[d] += xs[order[e]][d];
        for (std::size_t d = 0; d < dim; ++d) elite_mean[d] /= n_elite;
        for (int e = 0; e < n_elite; ++e)
            for (std::size_t d = 0; d < dim; ++d) {
                double dev = xs[order[e]][d] - elite_mean[d];
                elite_std[d] += dev * dev;
            }
        for (std::size_t d = 0; d < dim; ++d) elite_std[d] = std::sqrt(elite_std[d] / n_elite);

        for (std::size_t d = 0; d < dim; ++d) {
            mean[d] = config.smoothing * elite_mean[d] + (1.0 - config.smoothing) * mean[d];
            stddev[d] = config.smoothing * elite_std[d] + (1.0 - config.smoothing) * stddev[d];
        }

        result.history.push_back({mean, stddev, result.J_best, js[order[n_elite - 1]]});
        result.iterations = iter + 1;

        bool converged = true;
        for (std::size_t d = 0; d < dim; ++d)
            if (stddev[d] >= config.std_tolerance * (config.upper[d] - config.lower[d]))
                converged = false;
        if (converged) {
            result.reason = CETermination::StdConverged;
            break;
        }
    }
    return result;
}

void export_trace(const CEResult& result, const std::string& path, const std::string& provenance) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("export_trace: cannot open " + path);
    if (!provenance.empty()) out << "# " << provenance << "\n";
    std::size_t dim = result.x_best.size();
    out << "# columns: iteration";
    for (std::size_t d = 0; d < dim; ++d) out << ",mean_" << d;
    for (std::size_t d = 0; d < dim; ++d) out << ",std_" << d;
    out << ",best_J,elite_threshold\n";
    for (std::size_t i = 0; i < result.history.size(); ++i) {
        const CEIteration& it = result.history[i];
        out << i;
        for (double m : it.mean) out << "," << format_double(m);
        for (double s : it.stddev) out << "," << format_double(s);
        out << "," << format_double(it.best_J) << "," << format_double(it.elite_threshold) << "\n";
    }
}

}  // namespace qcar
