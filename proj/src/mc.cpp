#include "asvlim/mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace asvlim {

namespace {

// splitmix64: cheap, well-mixed stream keys.
std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256++, seeded per path via splitmix64(seed ^ path index). Fully
// self-contained so the stream does not depend on the standard library's
// distribution implementations.
class PathRng {
  public:
    PathRng(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t sm = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
        for (auto& w : s_) w = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in (0, 1]
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // standard normal, Box-Muller pair with caching
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

TerminalSample run_path(const ModelParams& p, const SimConfig& c, PathRng& rng,
                        bool negate) {
    const double sa = std::sqrt(p.alpha);
    const double one_m_r2 = 1.0 - p.rho * p.rho;
    const std::size_t n_steps =
        static_cast<std::size_t>(std::ceil(c.t_final / c.dt - 1e-12));

    double x = p.x0;
    double v = p.v0;  // raw state; only its positive part feeds the dynamics
    double remaining = c.t_final;
    for (std::size_t k = 0; k < n_steps; ++k) {
        const double h = std::min(c.dt, remaining);
        remaining -= h;
        const double sq_h = std::sqrt(h);
        double z1 = rng.next_normal();
        double z2 = rng.next_normal();
        if (negate) {
            z1 = -z1;
            z2 = -z2;
        }
        const double vp = std::max(v, 0.0);
        const double sqvp = std::sqrt(vp);
        x += -0.5 * (p.a + vp) * h + p.rho * sqvp * sq_h * z1 +
             std::sqrt(p.a + one_m_r2 * vp) * sq_h * z2;
        v += (p.b + p.beta * vp) * h + sa * sqvp * sq_h * z1;
    }
    return {x, std::max(v, 0.0)};
}

}  // namespace

void SimConfig::validate() const {
    if (!(n_paths >= 1)) throw std::invalid_argument("n_paths must be at least 1");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(t_final > 0.0)) throw std::invalid_argument("t_final must be positive");
    if (!(dt <= t_final)) throw std::invalid_argument("dt must not exceed t_final");
}

std::vector<TerminalSample> simulate_terminal(const ModelParams& p,
                                              const SimConfig& c) {
    c.validate();
    std::vector<TerminalSample> out(c.n_paths);

    const auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            // Antithetic pairing shares the stream of the even path.
            const std::uint64_t stream = c.antithetic ? i / 2 : i;
            const bool negate = c.antithetic && (i % 2 == 1);
            PathRng rng(c.seed, stream);
            out[i] = run_path(p, c, rng, negate);
        }
    };

    unsigned n_threads = c.threads != 0 ? c.threads
                                        : std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(
        std::min<std::size_t>(n_threads, c.n_paths));
    if (n_threads <= 1) {
        worker(0, c.n_paths);
        return out;
    }
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    const std::size_t chunk = (c.n_paths + n_threads - 1) / n_threads;
    for (unsigned ti = 0; ti < n_threads; ++ti) {
        const std::size_t begin = ti * chunk;
        const std::size_t end = std::min(c.n_paths, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
    return out;
}

double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 32) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

McEstimate mc_mgf_check(double u, std::span<const TerminalSample> samples,
                        const ModelParams& p) {
    const std::size_t n = samples.size();
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = std::exp(u * (samples[i].x - p.x0));

    const double total = pairwise_sum(w);
    const double mean = total / static_cast<double>(n);

    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = w[i] - mean;
        sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / static_cast<double>(n > 1 ? n - 1 : 1);
    const double se_mean = std::sqrt(var / static_cast<double>(n));

    McEstimate est;
    est.value = std::log(mean);
    est.std_error = se_mean / mean;  // delta method for log
    const double sum_sq = pairwise_sum(sq) + total * mean;  // ~ sum w^2
    est.n_effective = static_cast<std::size_t>(
        std::min<double>(static_cast<double>(n),
                         total * total / std::max(sum_sq, 1e-300)));

    // Heavy-tail warning: share of the sum carried by the top 1% of weights.
    std::vector<double> sorted(w);
    const std::size_t top = std::max<std::size_t>(1, n / 100);
    std::nth_element(sorted.begin(), sorted.begin() + (n - top), sorted.end());
    const double top_share =
        pairwise_sum(std::span<const double>(sorted).subspan(n - top)) / total;
    est.heavy_tail = top_share > 0.5;
    return est;
}

McEstimate mc_mgf_check(double u, double t, const ModelParams& p,
                        const SimConfig& c) {
    SimConfig cc = c;
    cc.t_final = t;
    const auto samples = simulate_terminal(p, cc);
    return mc_mgf_check(u, samples, p);
}

std::vector<LdpPoint> mc_ldp_rate(double x, std::span<const double> t_grid,
                                  const ModelParams& p, const SimConfig& c) {
    std::vector<LdpPoint> out;
    out.reserve(t_grid.size());
    std::size_t idx = 0;
    for (double t : t_grid) {
        SimConfig cc = c;
        cc.t_final = t;
        cc.seed = c.seed + 0x51ed2701u * (idx + 1);  // decorrelate maturities
        const auto samples = simulate_terminal(p, cc);

        std::size_t hits = 0;
        for (const auto& s : samples)
            if ((s.x - p.x0) / t >= x) ++hits;

        LdpPoint pt;
        pt.t = t;
        const double n = static_cast<double>(samples.size());
        if (hits == 0) {
            pt.zero_hit = true;
            pt.estimate.value = std::log(n) / t;  // one-sided bound
            pt.estimate.std_error = std::numeric_limits<double>::infinity();
            pt.estimate.n_effective = 0;
        } else {
            const double phat = static_cast<double>(hits) / n;
            pt.estimate.value = -std::log(phat) / t;
            const double se_p = std::sqrt(phat * (1.0 - phat) / n);
            pt.estimate.std_error = se_p / (phat * t);  // delta method
            pt.estimate.n_effective = hits;
        }
        out.push_back(pt);
        ++idx;
    }
    return out;
}

}  // namespace asvlim
