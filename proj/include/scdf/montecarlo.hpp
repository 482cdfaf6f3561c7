#ifndef SCDF_MONTECARLO_HPP
#define SCDF_MONTECARLO_HPP

#include "scdf/channel.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace scdf {

/// A Monte-Carlo point estimate. Reproducible: identical
/// (config, seed, n_samples) gives bitwise-identical results regardless of
/// how sample blocks are scheduled.
struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
};

/// Samples are partitioned into fixed blocks of this many draws; block b is
/// driven by an mt19937_64 seeded from splitmix64(seed, b), so the merged
/// estimate does not depend on the number of worker threads.
inline constexpr std::uint64_t kMcBlockSize = 1u << 16;

std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block_index);

class BlockRng {
public:
    explicit BlockRng(std::uint64_t seed) : eng_(seed) {}
    /// Uniform draw in (0, 1].
    double uniform() {
        return static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53;
    }
    /// Gamma draw with integer shape m and the given rate, as a sum of m
    /// exponentials: -ln(U_1 ... U_m) / rate.
    double gamma_int(int m, double rate) {
        double prod = 1.0;
        for (int i = 0; i < m; ++i) prod *= uniform();
        return -std::log(prod) / rate;
    }

private:
    std::mt19937_64 eng_;
};

/// One end-to-end branch SNR draw: min(max(g1, g2), g3), or min(g1, g3)
/// for single-antenna relays.
double draw_branch_snr(const BranchRates& b, BlockRng& rng);

/// One selection-combining SNR draw: max over the K branch draws.
double draw_sc_snr(const std::vector<BranchRates>& branches, BlockRng& rng);

/// Exact conditional M-PSK symbol error probability at SNR gamma,
/// (1/pi) int_0^{(M-1)pi/M} exp(-gamma g / sin^2 t) dt.
double conditional_sep_mpsk(double gamma, int mod_order);

McEstimate simulate_outage(const SystemConfig& cfg, std::uint64_t n_samples,
                           std::uint64_t seed);

/// Rao-Blackwellized SEP estimate: averages the exact conditional SEP over
/// SNR draws.
McEstimate simulate_sep(const SystemConfig& cfg, std::uint64_t n_samples,
                        std::uint64_t seed);

/// Symbol-decision SEP estimate (draws noise, decides by received phase).
/// Far higher variance; kept for spot checks of the conditional estimator.
McEstimate simulate_sep_decisions(const SystemConfig& cfg, std::uint64_t n_samples,
                                  std::uint64_t seed);

McEstimate simulate_capacity(const SystemConfig& cfg, std::uint64_t n_samples,
                             std::uint64_t seed);

/// Outage estimates for a whole SNR sweep from one pass of draws. Scaling
/// every link mean SNR by c scales each draw by c, so evaluating the base
/// draws against thresholds gamma_th * 10^{-snr/10} gives each grid point
/// the same distribution as a fresh 10^7-draw run at that SNR, at the cost
/// of a single pass. Deterministic in (config, grid, seed, n).
std::vector<McEstimate> simulate_outage_sweep(const SystemConfig& cfg,
                                              const std::vector<double>& snr_db,
                                              std::uint64_t n_samples,
                                              std::uint64_t seed);

} // namespace scdf

#endif
