#include "doctest.h"

#include "scdf/analytic.hpp"
#include "scdf/errors.hpp"
#include "scdf/montecarlo.hpp"

#include <cmath>

using namespace scdf;

TEST_CASE("draw_branch_snr distribution checks") {
    // m=1 everywhere, all rates 1: branch CDF at ln 2 is 5/8
    BranchRates r;
    r.antennas = 2;
    r.s1 = r.s2 = r.rd = {1, 1.0};
    const std::uint64_t n = 1000000;
    BlockRng rng(block_seed(3, 0));
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < n; ++i)
        if (draw_branch_snr(r, rng) < std::log(2.0)) ++hits;
    double p = static_cast<double>(hits) / n;
    double se = std::sqrt(p * (1 - p) / n);
    CHECK(std::abs(p - 0.625) < 3 * se);

    // empirical mean of one m=2, Omega=3 link
    BlockRng rng2(block_seed(4, 0));
    double acc = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) acc += rng2.gamma_int(2, 2.0 / 3.0);
    double mean = acc / n;
    // var of gamma(2, scale 3/2) is 2 * (3/2)^2 = 4.5
    CHECK(std::abs(mean - 3.0) < 3 * std::sqrt(4.5 / n));
}

TEST_CASE("fixed seed reproduces the sample sequence") {
    BranchRates r;
    r.antennas = 2;
    r.s1 = r.s2 = r.rd = {2, 0.5};
    BlockRng a(block_seed(123, 7)), b(block_seed(123, 7));
    for (int i = 0; i < 1000; ++i)
        CHECK(draw_branch_snr(r, a) == draw_branch_snr(r, b));
}

TEST_CASE("simulate_outage") {
    SystemConfig cfg = make_preset("symmetric", 1);
    cfg.relays[0].s_relay_ant1 = {1, 1.0};
    cfg.relays[0].s_relay_ant2 = {1, 1.0};
    cfg.relays[0].relay_dest = {1, 1.0};

    SUBCASE("gamma_th -> 0 gives zero exactly") {
        cfg.gamma_th = 1e-300;
        McEstimate e = simulate_outage(cfg, 10000, 5);
        CHECK(e.mean == 0.0);
    }
    SUBCASE("known closed value at ln 2") {
        cfg.gamma_th = std::log(2.0);
        McEstimate e = simulate_outage(cfg, 1000000, 5);
        CHECK(std::abs(e.mean - 0.625) < 3 * e.std_error);
    }
    SUBCASE("brackets the analytic value, symmetric K=3") {
        SystemConfig sym = scaled_config(make_preset("symmetric", 3), 4.0);
        McEstimate e = simulate_outage(sym, 2000000, 11);
        CHECK(std::abs(e.mean - outage_probability(sym)) < 3 * e.std_error);
    }
    SUBCASE("rejects tiny sample counts") {
        CHECK_THROWS_AS(simulate_outage(cfg, 10, 5), config_error);
    }
}

TEST_CASE("bitwise determinism of every estimator") {
    SystemConfig cfg = scaled_config(make_preset("symmetric", 2), 5.0);
    auto o1 = simulate_outage(cfg, 50000, 99);
    auto o2 = simulate_outage(cfg, 50000, 99);
    CHECK(o1.mean == o2.mean);
    CHECK(o1.std_error == o2.std_error);
    auto s1 = simulate_sep(cfg, 20000, 99);
    auto s2 = simulate_sep(cfg, 20000, 99);
    CHECK(s1.mean == s2.mean);
    auto c1 = simulate_capacity(cfg, 20000, 99);
    auto c2 = simulate_capacity(cfg, 20000, 99);
    CHECK(c1.mean == c2.mean);
    // different seed moves the estimate
    CHECK(simulate_outage(cfg, 50000, 100).mean != o1.mean);
}

TEST_CASE("standard error scales as 1/sqrt(n)") {
    SystemConfig cfg = scaled_config(make_preset("symmetric", 2), 2.0);
    double se1 = 0.0, se4 = 0.0;
    int trials = 5;
    for (int t = 0; t < trials; ++t) {
        se1 += simulate_capacity(cfg, 100000, 7 + t).std_error;
        se4 += simulate_capacity(cfg, 400000, 107 + t).std_error;
    }
    double ratio = se1 / se4;
    CHECK(ratio > 2.0 * 0.8);
    CHECK(ratio < 2.0 * 1.2);
}

TEST_CASE("conditional SEP") {
    // integrand is 1 at gamma = 0
    for (int M : {2, 4, 16})
        CHECK(conditional_sep_mpsk(0.0, M) ==
              doctest::Approx((M - 1.0) / M).epsilon(1e-12));
    // BPSK at fixed gamma equals Q(sqrt(2 gamma))
    for (double g0 : {0.25, 1.0, 4.0, 9.0}) {
        double q = 0.5 * std::erfc(std::sqrt(g0));
        CHECK(conditional_sep_mpsk(g0, 2) == doctest::Approx(q).epsilon(1e-9));
    }
}

TEST_CASE("SEP three-way consistency (MGF / conditional MC / decision MC)") {
    SystemConfig cfg = scaled_config(make_preset("symmetric", 2), 6.0);
    cfg.modulation_order = 16;
    double analytic = sep_mpsk(sc_pdf_mixture(cfg), 16);
    McEstimate rb = simulate_sep(cfg, 500000, 21);
    McEstimate dec = simulate_sep_decisions(cfg, 2000000, 22);
    CHECK(std::abs(analytic - rb.mean) < 3 * rb.std_error);
    CHECK(std::abs(analytic - dec.mean) < 3 * dec.std_error);
    // Rao-Blackwellization reduces variance at equal n
    McEstimate dec_same_n = simulate_sep_decisions(cfg, 500000, 23);
    CHECK(rb.std_error < dec_same_n.std_error);
}

TEST_CASE("simulate_capacity") {
    SystemConfig cfg = scaled_config(make_preset("symmetric", 3), 5.0);
    SUBCASE("BW = 0 gives 0") {
        SystemConfig z = cfg;
        z.bandwidth = 1e-300; // validation requires positive bandwidth
        McEstimate e = simulate_capacity(z, 10000, 3);
        CHECK(e.mean < 1e-290);
    }
    SUBCASE("brackets the analytic capacity") {
        McEstimate e = simulate_capacity(cfg, 1000000, 31);
        double a = avg_capacity(sc_pdf_mixture(cfg), cfg.bandwidth);
        CHECK(std::abs(a - e.mean) < 3 * e.std_error);
    }
}

TEST_CASE("sweep estimator matches per-point runs statistically") {
    SystemConfig cfg = make_preset("symmetric", 2);
    std::vector<double> grid{0.0, 4.0, 8.0};
    auto sweep = simulate_outage_sweep(cfg, grid, 500000, 404);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        SystemConfig pt = scaled_config(cfg, grid[j]);
        McEstimate direct = simulate_outage(pt, 500000, 404);
        double se = std::hypot(sweep[j].std_error, direct.std_error);
        // same seed, so the draws are common; they agree almost exactly
        CHECK(std::abs(sweep[j].mean - direct.mean) <= 3 * se + 1e-12);
        CHECK(std::abs(sweep[j].mean - outage_probability(pt)) <
              3 * sweep[j].std_error + 1e-12);
    }
}
