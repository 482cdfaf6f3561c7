#include "scdf/montecarlo.hpp"
#include "scdf/errors.hpp"
#include "scdf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace scdf {

std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block_index) {
    // splitmix64 over seed advanced by the block index.
    std::uint64_t z = seed + (block_index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double draw_branch_snr(const BranchRates& b, BlockRng& rng) {
    double g1 = rng.gamma_int(b.s1.m, b.s1.rate);
    double gs = g1;
    if (b.antennas == 2) {
        double g2 = rng.gamma_int(b.s2.m, b.s2.rate);
        gs = std::max(g1, g2);
    }
    double g3 = rng.gamma_int(b.rd.m, b.rd.rate);
    return std::min(gs, g3);
}

double draw_sc_snr(const std::vector<BranchRates>& branches, BlockRng& rng) {
    double best = 0.0;
    for (const auto& b : branches) best = std::max(best, draw_branch_snr(b, rng));
    return best;
}

double conditional_sep_mpsk(double gamma, int mod_order) {
    if (mod_order < 2)
        throw config_error("conditional_sep_mpsk: modulation order must be >= 2");
    static const GaussLegendre gl(48);
    double g = std::pow(std::sin(M_PI / mod_order), 2);
    double upper = (mod_order - 1) * M_PI / mod_order;
    auto f = [&](double theta) {
        double s = std::sin(theta);
        return std::exp(-gamma * g / (s * s));
    };
    // Split at the integrand's peak (theta = pi/2) so the rule tracks the
    // narrow bump at high SNR.
    double mid = std::min(upper, M_PI / 2.0);
    double val = gl.integrate(f, 0.0, mid);
    if (upper > mid) val += gl.integrate(f, mid, upper);
    return val / M_PI;
}

namespace {

struct BlockStats {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;
};

std::vector<BranchRates> all_branch_rates(const SystemConfig& cfg) {
    std::vector<BranchRates> out;
    out.reserve(cfg.relays.size());
    for (const auto& b : cfg.relays)
        out.push_back(branch_rates(b, cfg.antennas, cfg.p_source, cfg.p_relay));
    return out;
}

void check_samples(std::uint64_t n) {
    if (n < 1000)
        throw config_error("montecarlo: n_samples must be >= 1000");
}

// Runs `per_sample` over all blocks, Welford within a block, and returns
// per-block stats in block order. Work is split across threads by block
// index; the result is independent of the thread count.
template <class PerSample>
std::vector<BlockStats> run_blocks(std::uint64_t n_samples, std::uint64_t seed,
                                   const PerSample& per_sample) {
    std::uint64_t n_blocks = (n_samples + kMcBlockSize - 1) / kMcBlockSize;
    std::vector<BlockStats> stats(n_blocks);
    unsigned n_threads = std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(
        std::min<std::uint64_t>(n_threads, n_blocks));

    auto work = [&](unsigned tid) {
        for (std::uint64_t b = tid; b < n_blocks; b += n_threads) {
            BlockRng rng(block_seed(seed, b));
            std::uint64_t count =
                std::min<std::uint64_t>(kMcBlockSize, n_samples - b * kMcBlockSize);
            BlockStats s;
            for (std::uint64_t i = 0; i < count; ++i) {
                double x = per_sample(rng);
                ++s.n;
                double d = x - s.mean;
                s.mean += d / static_cast<double>(s.n);
                s.m2 += d * (x - s.mean);
            }
            stats[b] = s;
        }
    };

    if (n_threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    return stats;
}

McEstimate merge_blocks(const std::vector<BlockStats>& stats, std::uint64_t seed) {
    BlockStats acc;
    for (const auto& s : stats) {
        if (s.n == 0) continue;
        std::uint64_t n = acc.n + s.n;
        double d = s.mean - acc.mean;
        double mean = acc.mean + d * (static_cast<double>(s.n) / n);
        acc.m2 += s.m2 + d * d * (static_cast<double>(acc.n) *
                                  static_cast<double>(s.n) / n);
        acc.mean = mean;
        acc.n = n;
    }
    McEstimate est;
    est.mean = acc.mean;
    est.n_samples = acc.n;
    est.seed = seed;
    if (acc.n > 1)
        est.std_error = std::sqrt(acc.m2 / (acc.n - 1) / acc.n);
    return est;
}

} // namespace

McEstimate simulate_outage(const SystemConfig& cfg, std::uint64_t n_samples,
                           std::uint64_t seed) {
    validate_config(cfg);
    check_samples(n_samples);
    auto branches = all_branch_rates(cfg);
    double th = cfg.gamma_th;
    auto stats = run_blocks(n_samples, seed, [&](BlockRng& rng) {
        return draw_sc_snr(branches, rng) < th ? 1.0 : 0.0;
    });
    McEstimate est = merge_blocks(stats, seed);
    // Binomial standard error.
    est.std_error = std::sqrt(est.mean * (1.0 - est.mean) /
                              static_cast<double>(est.n_samples));
    return est;
}

McEstimate simulate_sep(const SystemConfig& cfg, std::uint64_t n_samples,
                        std::uint64_t seed) {
    validate_config(cfg);
    check_samples(n_samples);
    auto branches = all_branch_rates(cfg);
    int M = cfg.modulation_order;
    auto stats = run_blocks(n_samples, seed, [&](BlockRng& rng) {
        return conditional_sep_mpsk(draw_sc_snr(branches, rng), M);
    });
    return merge_blocks(stats, seed);
}

McEstimate simulate_sep_decisions(const SystemConfig& cfg, std::uint64_t n_samples,
                                  std::uint64_t seed) {
    validate_config(cfg);
    check_samples(n_samples);
    auto branches = all_branch_rates(cfg);
    int M = cfg.modulation_order;
    double sector = M_PI / M;
    auto stats = run_blocks(n_samples, seed, [&](BlockRng& rng) {
        double snr = draw_sc_snr(branches, rng);
        double u1 = rng.uniform(), u2 = rng.uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double ni = r * std::cos(2.0 * M_PI * u2);
        double nq = r * std::sin(2.0 * M_PI * u2);
        double phase = std::atan2(nq, std::sqrt(2.0 * snr) + ni);
        return std::abs(phase) > sector ? 1.0 : 0.0;
    });
    McEstimate est = merge_blocks(stats, seed);
    est.std_error = std::sqrt(est.mean * (1.0 - est.mean) /
                              static_cast<double>(est.n_samples));
    return est;
}

McEstimate simulate_capacity(const SystemConfig& cfg, std::uint64_t n_samples,
                             std::uint64_t seed) {
    validate_config(cfg);
    check_samples(n_samples);
    auto branches = all_branch_rates(cfg);
    double half_bw = 0.5 * cfg.bandwidth;
    auto stats = run_blocks(n_samples, seed, [&](BlockRng& rng) {
        return half_bw * std::log2(1.0 + draw_sc_snr(branches, rng));
    });
    return merge_blocks(stats, seed);
}

std::vector<McEstimate> simulate_outage_sweep(const SystemConfig& cfg,
                                              const std::vector<double>& snr_db,
                                              std::uint64_t n_samples,
                                              std::uint64_t seed) {
    validate_config(cfg);
    check_samples(n_samples);
    auto branches = all_branch_rates(cfg);
    std::vector<double> thresholds;
    thresholds.reserve(snr_db.size());
    for (double s : snr_db)
        thresholds.push_back(cfg.gamma_th * std::pow(10.0, -s / 10.0));

    std::uint64_t n_blocks = (n_samples + kMcBlockSize - 1) / kMcBlockSize;
    std::vector<std::vector<std::uint64_t>> hits(
        n_blocks, std::vector<std::uint64_t>(snr_db.size(), 0));
    unsigned n_threads = std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(std::min<std::uint64_t>(n_threads, n_blocks));

    auto work = [&](unsigned tid) {
        for (std::uint64_t b = tid; b < n_blocks; b += n_threads) {
            BlockRng rng(block_seed(seed, b));
            std::uint64_t count =
                std::min<std::uint64_t>(kMcBlockSize, n_samples - b * kMcBlockSize);
            for (std::uint64_t i = 0; i < count; ++i) {
                double snr = draw_sc_snr(branches, rng);
                for (std::size_t j = 0; j < thresholds.size(); ++j)
                    if (snr < thresholds[j]) ++hits[b][j];
            }
        }
    };
    if (n_threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }

    std::vector<McEstimate> out(snr_db.size());
    for (std::size_t j = 0; j < snr_db.size(); ++j) {
        std::uint64_t total = 0;
        for (std::uint64_t b = 0; b < n_blocks; ++b) total += hits[b][j];
        McEstimate& e = out[j];
        e.n_samples = n_samples;
        e.seed = seed;
        e.mean = static_cast<double>(total) / static_cast<double>(n_samples);
        e.std_error =
            std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(n_samples));
    }
    return out;
}

} // namespace scdf
