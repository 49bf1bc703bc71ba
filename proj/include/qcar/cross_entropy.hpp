#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qcar {

struct CEConfig {
    int population = 75;          // samples per iteration
    double elite_fraction = 0.1;  // share of best samples fitted each iteration
    double smoothing = 0.8;       // mixing weight toward the elite statistics
    int max_iterations = 25;
    std::vector<double> lower;    // box bounds, one entry per dimension
    std::vector<double> upper;
    double std_tolerance = 1e-3;  // stop when every std < tol * box width
    std::uint64_t seed = 0;
    int retry_cap = 32;           // resample attempts per failed objective call
    void validate() const;
};

struct CEIteration {
    std::vector<double> mean;    // sampling mean after the update
    std::vector<double> stddev;  // sampling std after the update
    double best_J;               // best-so-far objective value
    double elite_threshold;      // J of the worst elite this iteration
};

enum class CETermination { MaxIterations, StdConverged };
const char* to_string(CETermination reason);

struct CEResult {
    std::vector<double> x_best;
    double J_best;
    std::vector<CEIteration> history;
    int iterations = 0;
    CETermination reason = CETermination::MaxIterations;
};

// Cross-Entropy minimization over a box: per iteration, draw the population
// from an independent truncated Gaussian, keep the ceil(rho*N) lowest-J
// samples, and blend their mean/std into the sampling distribution. Samples
// draw from substreams keyed by (seed, iteration, sample, attempt), so
// results are identical for any worker count. A sample whose objective
// throws or returns non-finite is resampled up to retry_cap times, then the
// failure is rethrown.
CEResult optimize(const std::function<double(const std::vector<double>&)>& objective,
                  const CEConfig& config, int workers = 1);

// Optimization trace (iteration, mean, std, best J, elite threshold) as
// delimited text with '#' provenance header lines.
void export_trace(const CEResult& result, const std::string& path,
                  const std::string& provenance = {});

}  // namespace qcar
