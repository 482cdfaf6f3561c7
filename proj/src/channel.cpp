#include "scdf/channel.hpp"
#include "scdf/errors.hpp"

#include <cmath>
#include <string>

namespace scdf {

namespace {

void require_positive(double v, const std::string& field) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw config_error("config: " + field + " must be positive and finite");
}

void check_link(const LinkParams& l, const std::string& field) {
    if (l.m < 1)
        throw config_error("config: " + field + ".m must be an integer >= 1");
    require_positive(l.omega, field + ".omega");
}

} // namespace

double link_rate(const LinkParams& link, double power, double noise_var,
                 double mean_sq_gain) {
    check_link(link, "link");
    require_positive(power, "power");
    require_positive(noise_var, "noise_var");
    require_positive(mean_sq_gain, "mean_sq_gain");
    double mean_snr = link.omega * power * mean_sq_gain / noise_var;
    return static_cast<double>(link.m) / mean_snr;
}

BranchRates branch_rates(const BranchParams& b, int antennas, double p_source,
                         double p_relay) {
    BranchRates r;
    r.antennas = antennas;
    r.s1 = {b.s_relay_ant1.m,
            link_rate(b.s_relay_ant1, p_source, b.relay_noise_var, b.gain_sq_s1)};
    if (antennas == 2)
        r.s2 = {b.s_relay_ant2.m,
                link_rate(b.s_relay_ant2, p_source, b.relay_noise_var, b.gain_sq_s2)};
    // Relay->destination uses the relay transmit power; the source power
    // only enters the two source->relay links.
    r.rd = {b.relay_dest.m,
            link_rate(b.relay_dest, p_relay, b.dest_noise_var, b.gain_sq_rd)};
    return r;
}

IidCheck validate_config(const SystemConfig& cfg) {
    if (cfg.relays.empty())
        throw config_error("config: relays must contain at least one entry (K >= 1)");
    if (cfg.antennas != 1 && cfg.antennas != 2)
        throw config_error("config: antennas must be 1 or 2");
    require_positive(cfg.p_source, "p_source");
    require_positive(cfg.p_relay, "p_relay");
    require_positive(cfg.gamma_th, "gamma_th");
    require_positive(cfg.bandwidth, "bandwidth");
    if (cfg.modulation_order < 2 ||
        (cfg.modulation_order & (cfg.modulation_order - 1)) != 0)
        throw config_error("config: modulation_order must be a power of 2, >= 2");

    std::size_t i = 0;
    for (const auto& b : cfg.relays) {
        std::string tag = "relays[" + std::to_string(i) + "]";
        check_link(b.s_relay_ant1, tag + ".s_relay_ant1");
        if (cfg.antennas == 2) check_link(b.s_relay_ant2, tag + ".s_relay_ant2");
        check_link(b.relay_dest, tag + ".relay_dest");
        require_positive(b.relay_noise_var, tag + ".relay_noise_var");
        require_positive(b.dest_noise_var, tag + ".dest_noise_var");
        require_positive(b.gain_sq_s1, tag + ".gain_sq_s1");
        if (cfg.antennas == 2) require_positive(b.gain_sq_s2, tag + ".gain_sq_s2");
        require_positive(b.gain_sq_rd, tag + ".gain_sq_rd");
        ++i;
    }

    // i.i.d. iff every link of every relay shares one (m, rate) pair.
    IidCheck out;
    BranchRates r0 = branch_rates(cfg.relays.front(), cfg.antennas, cfg.p_source,
                                  cfg.p_relay);
    auto same = [](const LinkRate& a, const LinkRate& b) {
        return a.m == b.m && a.rate == b.rate;
    };
    bool iid = same(r0.s1, r0.rd) && (cfg.antennas == 1 || same(r0.s1, r0.s2));
    for (const auto& b : cfg.relays) {
        BranchRates r = branch_rates(b, cfg.antennas, cfg.p_source, cfg.p_relay);
        iid = iid && same(r.s1, r0.s1) && same(r.rd, r0.rd) &&
              (cfg.antennas == 1 || same(r.s2, r0.s2));
    }
    out.is_iid = iid;
    if (iid) out.shared_link = cfg.relays.front().s_relay_ant1;
    return out;
}

SystemConfig scaled_config(const SystemConfig& cfg, double snr_db) {
    SystemConfig out = cfg;
    double scale = std::pow(10.0, snr_db / 10.0);
    for (auto& b : out.relays) {
        b.s_relay_ant1.omega *= scale;
        b.s_relay_ant2.omega *= scale;
        b.relay_dest.omega *= scale;
    }
    return out;
}

SystemConfig make_preset(const std::string& name, int relays, int antennas) {
    if (relays < 1) throw config_error("preset: relay count must be >= 1");
    if (antennas != 1 && antennas != 2)
        throw config_error("preset: antennas must be 1 or 2");

    auto uniform_branch = [](int m, double omega) {
        BranchParams b;
        b.s_relay_ant1 = {m, omega};
        b.s_relay_ant2 = {m, omega};
        b.relay_dest = {m, omega};
        return b;
    };

    SystemConfig cfg;
    cfg.antennas = antennas;
    if (name == "symmetric") {
        for (int k = 0; k < relays; ++k) cfg.relays.push_back(uniform_branch(2, 3.0));
    } else if (name == "rayleigh-symmetric") {
        for (int k = 0; k < relays; ++k) cfg.relays.push_back(uniform_branch(1, 3.0));
    } else if (name == "asymmetric" || name == "rayleigh-asymmetric") {
        bool rayleigh = (name[0] == 'r');
        const double om_sr[3] = {1, 2, 3};
        const double om_rd[3] = {3, 2, 1};
        for (int k = 0; k < 3; ++k) {
            BranchParams b;
            int m_sr = rayleigh ? 1 : static_cast<int>(om_sr[k]);
            int m_rd = rayleigh ? 1 : static_cast<int>(om_rd[k]);
            b.s_relay_ant1 = {m_sr, om_sr[k]};
            b.s_relay_ant2 = {m_sr, om_sr[k]};
            b.relay_dest = {m_rd, om_rd[k]};
            cfg.relays.push_back(b);
        }
    } else {
        throw config_error("preset: unknown preset '" + name + "'");
    }
    return cfg;
}

} // namespace scdf
