#include "doctest.h"

#include "scdf/channel.hpp"
#include "scdf/errors.hpp"

#include <random>

using namespace scdf;

TEST_CASE("link_rate basics") {
    // unit mean SNR, m = 1
    CHECK(link_rate({1, 1.0}, 1.0, 1.0, 1.0) == 1.0);
    // alpha = m / mean SNR
    CHECK(link_rate({2, 3.0}, 1.0, 1.0, 1.0) == doctest::Approx(2.0 / 3.0));
    // doubling power halves the rate, exactly
    double r1 = link_rate({2, 3.0}, 1.0, 1.0, 1.0);
    double r2 = link_rate({2, 3.0}, 2.0, 1.0, 1.0);
    CHECK(r2 == r1 / 2.0);
    CHECK(r2 == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("link_rate power homogeneity, randomized") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int i = 0; i < 200; ++i) {
        LinkParams l{1 + static_cast<int>(rng() % 5), u(rng)};
        double p = u(rng), nv = u(rng), g = u(rng);
        CHECK(link_rate(l, 2.0 * p, nv, g) == link_rate(l, p, nv, g) / 2.0);
    }
}

TEST_CASE("validate_config iid detection") {
    SystemConfig sym = make_preset("symmetric", 3);
    IidCheck c = validate_config(sym);
    CHECK(c.is_iid);
    CHECK(c.shared_link.m == 2);
    CHECK(c.shared_link.omega == 3.0);

    SystemConfig asym = make_preset("asymmetric");
    CHECK_FALSE(validate_config(asym).is_iid);

    // equal omegas but unequal powers break the iid closed-form path
    SystemConfig skew = make_preset("symmetric", 2);
    skew.p_relay = 2.0;
    CHECK_FALSE(validate_config(skew).is_iid);
}

TEST_CASE("validate_config rejects bad fields") {
    SystemConfig cfg;
    CHECK_THROWS_AS(validate_config(cfg), config_error); // K = 0

    cfg = make_preset("symmetric", 2);
    cfg.antennas = 3;
    CHECK_THROWS_AS(validate_config(cfg), config_error);

    cfg = make_preset("symmetric", 2);
    cfg.gamma_th = -1.0;
    CHECK_THROWS_AS(validate_config(cfg), config_error);

    cfg = make_preset("symmetric", 2);
    cfg.modulation_order = 12;
    CHECK_THROWS_AS(validate_config(cfg), config_error);

    cfg = make_preset("symmetric", 2);
    cfg.relays[1].s_relay_ant1.m = 0;
    CHECK_THROWS_AS(validate_config(cfg), config_error);

    cfg = make_preset("symmetric", 2);
    cfg.relays[0].relay_noise_var = 0.0;
    CHECK_THROWS_AS(validate_config(cfg), config_error);
}

TEST_CASE("validate_config accepts iff every invariant holds, randomized") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    for (int trial = 0; trial < 300; ++trial) {
        SystemConfig cfg = make_preset("symmetric", 1 + static_cast<int>(rng() % 4),
                                       1 + static_cast<int>(rng() % 2));
        for (auto& b : cfg.relays) {
            b.s_relay_ant1 = {1 + static_cast<int>(rng() % 4), u(rng)};
            b.s_relay_ant2 = {1 + static_cast<int>(rng() % 4), u(rng)};
            b.relay_dest = {1 + static_cast<int>(rng() % 4), u(rng)};
        }
        bool corrupt = (rng() % 2) == 0;
        if (corrupt) {
            auto& victim = cfg.relays[rng() % cfg.relays.size()];
            switch (rng() % 3) {
                case 0: victim.s_relay_ant1.omega = -u(rng); break;
                case 1: victim.relay_dest.m = -1; break;
                default: victim.dest_noise_var = 0.0; break;
            }
        }
        if (corrupt)
            CHECK_THROWS_AS(validate_config(cfg), config_error);
        else
            CHECK_NOTHROW(validate_config(cfg));
    }
}

TEST_CASE("branch_rates uses relay power on the relay->destination link") {
    BranchParams b;
    b.relay_dest = {1, 1.0};
    BranchRates r1 = branch_rates(b, 2, 1.0, 1.0);
    BranchRates r2 = branch_rates(b, 2, 1.0, 4.0);
    CHECK(r2.rd.rate == r1.rd.rate / 4.0);
    CHECK(r2.s1.rate == r1.s1.rate);
}

TEST_CASE("scaled_config applies 10^(dB/10) to every link") {
    SystemConfig cfg = make_preset("asymmetric");
    SystemConfig s = scaled_config(cfg, 10.0);
    for (std::size_t k = 0; k < cfg.relays.size(); ++k) {
        CHECK(s.relays[k].s_relay_ant1.omega ==
              doctest::Approx(10.0 * cfg.relays[k].s_relay_ant1.omega));
        CHECK(s.relays[k].relay_dest.omega ==
              doctest::Approx(10.0 * cfg.relays[k].relay_dest.omega));
    }
}

TEST_CASE("presets match the published topologies") {
    SystemConfig sym = make_preset("symmetric", 3);
    CHECK(sym.relays.size() == 3);
    for (const auto& b : sym.relays) {
        CHECK(b.s_relay_ant1.m == 2);
        CHECK(b.s_relay_ant1.omega == 3.0);
        CHECK(b.relay_dest.m == 2);
        CHECK(b.relay_dest.omega == 3.0);
    }
    SystemConfig asym = make_preset("asymmetric");
    REQUIRE(asym.relays.size() == 3);
    CHECK(asym.relays[0].s_relay_ant1.m == 1);
    CHECK(asym.relays[0].s_relay_ant1.omega == 1.0);
    CHECK(asym.relays[0].relay_dest.m == 3);
    CHECK(asym.relays[0].relay_dest.omega == 3.0);
    CHECK(asym.relays[2].s_relay_ant1.m == 3);
    CHECK(asym.relays[2].relay_dest.omega == 1.0);

    SystemConfig ray = make_preset("rayleigh-asymmetric");
    for (const auto& b : ray.relays) {
        CHECK(b.s_relay_ant1.m == 1);
        CHECK(b.relay_dest.m == 1);
    }
    CHECK(ray.relays[1].s_relay_ant1.omega == 2.0);

    CHECK_THROWS_AS(make_preset("nope"), config_error);
}
