#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "asvlim/model.hpp"

namespace asvlim {

enum class Scheme { FullTruncationEuler };

struct SimConfig {
    std::size_t n_paths = 100000;
    double dt = 1.0 / 256.0;  // years
    double t_final = 1.0;
    std::uint64_t seed = 12345;
    Scheme scheme = Scheme::FullTruncationEuler;
    bool antithetic = false;
    unsigned threads = 0;  // 0 = hardware concurrency

    void validate() const;
};

struct TerminalSample {
    double x;  // X_T
    double v;  // V_T, nonnegative (truncated state)
};

/// Full-truncation Euler paths of (X, V). The random stream is keyed by
/// (seed, path index), so path i is bit-identical for any thread count, and
/// the result is a deterministic function of (params, config).
std::vector<TerminalSample> simulate_terminal(const ModelParams& p,
                                              const SimConfig& c);

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_effective = 0;
    bool heavy_tail = false;  // top 1% of weights carried > 50% of the sum
};

/// log of the sample mean of e^{u (X_t - x0)} with a delta-method standard
/// error; compare against lambda_t(u, t). Sets heavy_tail when the largest 1%
/// of the weights dominate the sum (estimate unstable near the domain edge).
McEstimate mc_mgf_check(double u, double t, const ModelParams& p,
                        const SimConfig& c);
McEstimate mc_mgf_check(double u, std::span<const TerminalSample> samples,
                        const ModelParams& p);

struct LdpPoint {
    double t = 0.0;
    McEstimate estimate;   // -t^{-1} log P((X_t - x0)/t >= x)
    bool zero_hit = false; // no path reached the threshold; value is the
                           // one-sided bound -t^{-1} log(1/n)
};

/// Tail decay-rate estimates along a maturity grid; compare against the
/// transform value at x (right tail, x above the rate minimiser).
std::vector<LdpPoint> mc_ldp_rate(double x, std::span<const double> t_grid,
                                  const ModelParams& p, const SimConfig& c);

/// Pairwise (cascade) summation in fixed order; deterministic reductions.
double pairwise_sum(std::span<const double> xs);

}  // namespace asvlim
