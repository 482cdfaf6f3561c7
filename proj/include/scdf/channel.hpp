#ifndef SCDF_CHANNEL_HPP
#define SCDF_CHANNEL_HPP

#include <string>
#include <vector>

namespace scdf {

/// One fading link: integer Nakagami shape m and mean-SNR scale omega.
/// The instantaneous link SNR is gamma-distributed with shape m and mean
/// omega * power * mean_sq_gain / noise_var, so omega doubles as the mean
/// SNR itself when powers, gains and noises are all 1 (the statistical
/// parameterization) and as a dimensionless unit scale in the physical one.
struct LinkParams {
    int m = 1;
    double omega = 1.0;

    bool operator==(const LinkParams&) const = default;
};

/// Per-relay branch description: the two source->relay antenna links, the
/// relay->destination link, noise variances and mean square channel gains.
struct BranchParams {
    LinkParams s_relay_ant1;
    LinkParams s_relay_ant2;
    LinkParams relay_dest;
    double relay_noise_var = 1.0; // sigma_k^2
    double dest_noise_var = 1.0;  // sigma_d^2
    double gain_sq_s1 = 1.0;      // mu^2 source -> antenna 1
    double gain_sq_s2 = 1.0;      // mu^2 source -> antenna 2
    double gain_sq_rd = 1.0;      // mu^2 relay -> destination

    bool operator==(const BranchParams&) const = default;
};

struct SystemConfig {
    std::vector<BranchParams> relays;
    int antennas = 2;
    double p_source = 1.0;
    double p_relay = 1.0;
    double gamma_th = 3.0;
    int modulation_order = 16;
    double bandwidth = 1.0;
};

/// Result of validate_config: whether every relay shares identical link
/// statistics on every link (the closed-form mixture path).
struct IidCheck {
    bool is_iid = false;
    LinkParams shared_link; // meaningful only when is_iid
};

/// Gamma rate parameter alpha = m / (mean SNR) of one link's instantaneous
/// SNR, with mean SNR = link.omega * power * mean_sq_gain / noise_var.
double link_rate(const LinkParams& link, double power, double noise_var,
                 double mean_sq_gain);

/// Canonical per-branch form everything downstream consumes: shape and rate
/// for each of the (up to) three links.
struct LinkRate {
    int m = 1;
    double rate = 1.0;
};

struct BranchRates {
    LinkRate s1;
    LinkRate s2; // unused when antennas == 1
    LinkRate rd;
    int antennas = 2;
};

BranchRates branch_rates(const BranchParams& b, int antennas, double p_source,
                         double p_relay);

/// Full validation: positive parameters, integer m >= 1, K >= 1,
/// antennas in {1,2}, modulation order a power of two. Throws config_error
/// naming the offending field. Returns the i.i.d. check.
IidCheck validate_config(const SystemConfig& cfg);

/// Copy of cfg with every link omega multiplied by 10^(snr_db/10). This is
/// the sweep semantics used by the CLI: "SNR (dB)" scales all link mean
/// SNRs jointly.
SystemConfig scaled_config(const SystemConfig& cfg, double snr_db);

/// Reference topology presets.
///   "symmetric":           K relays, every link m=2, omega=3.
///   "asymmetric":          3 relays, omega/m = (1,1,3),(2,2,2),(3,3,1).
///   "rayleigh-symmetric":  symmetric omegas with m=1 everywhere.
///   "rayleigh-asymmetric": asymmetric omegas with m=1 everywhere.
/// `relays` overrides K where the preset allows it (symmetric variants).
SystemConfig make_preset(const std::string& name, int relays = 3, int antennas = 2);

} // namespace scdf

#endif
