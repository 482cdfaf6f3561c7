#include "doctest.h"

#include "scdf/errors.hpp"
#include "scdf/mixture.hpp"
#include "scdf/special_functions.hpp"

#include <cmath>

using namespace scdf;

TEST_CASE("ExpPoly algebra") {
    // S(z) for m = 3 is 1 + z + z^2/2
    ExpPoly s = ExpPoly::trunc_series(3);
    CHECK(s.size() == 3);
    CHECK(static_cast<double>(s.eval(2.0L)) == doctest::Approx(5.0));

    // (1 + z)^2 = 1 + 2z + z^2
    ExpPoly p = ExpPoly::trunc_series(2);
    ExpPoly p2 = p.pow(2);
    CHECK(p2.size() == 3);
    CHECK(static_cast<double>(p2.eval(3.0L)) == doctest::Approx(16.0));

    // derivative of z^2 e^{-3z} is 2 z e^{-3z} - 3 z^2 e^{-3z}
    ExpPoly q;
    q.add_term(2, 3, 1.0L);
    ExpPoly dq = q.derivative();
    double z = 0.7;
    double expect = (2.0 * z - 3.0 * z * z) * std::exp(-3.0 * z);
    CHECK(static_cast<double>(dq.eval(z)) == doctest::Approx(expect).epsilon(1e-14));

    // cancellation removes the key entirely
    ExpPoly a = ExpPoly::constant(1.0L);
    a.add_term(0, 0, -1.0L);
    CHECK(a.size() == 0);
}

TEST_CASE("mixture evaluation and mass") {
    // 4 e^{-2g} - 3 e^{-3g}: a proper density
    ExpPoly p;
    p.add_term(0, 2, 4.0L);
    p.add_term(0, 3, -3.0L);
    ExpPolyMixture mix = ExpPolyMixture::from_expoly(p, 1.0);
    CHECK(mix.terms().size() == 2);
    CHECK(mix.total_mass() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mix.pdf(0.0) == doctest::Approx(1.0));
    CHECK(mix.pdf(1.0) ==
          doctest::Approx(4.0 * std::exp(-2.0) - 3.0 * std::exp(-3.0)));
    CHECK(mix.cdf(0.0) == doctest::Approx(0.0));
    // CDF = 1 - 2 e^{-2g} + e^{-3g}
    CHECK(mix.cdf(0.9) ==
          doctest::Approx(1.0 - 2.0 * std::exp(-1.8) + std::exp(-2.7)).epsilon(1e-14));
    // mean = 4/4 - 3/9 = 2/3
    CHECK(mix.mean() == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("mixture alpha scaling") {
    ExpPoly p;
    p.add_term(1, 2, 4.0L); // 4 z e^{-2z}, mass 1
    ExpPolyMixture unit = ExpPolyMixture::from_expoly(p, 1.0);
    ExpPolyMixture half = ExpPolyMixture::from_expoly(p, 0.5);
    CHECK(half.total_mass() == doctest::Approx(1.0));
    // pdf_half(g) = 0.5 * pdf_unit(0.5 g)
    CHECK(half.pdf(2.0) == doctest::Approx(0.5 * unit.pdf(1.0)).epsilon(1e-14));
    CHECK(half.cdf(2.0) == doctest::Approx(unit.cdf(1.0)).epsilon(1e-14));
    CHECK(half.rate(0) == doctest::Approx(1.0));
    // gamma-variable coefficient picks up alpha^{power+1}
    CHECK(half.gamma_coeff(0) == doctest::Approx(4.0 * 0.25));
}

TEST_CASE("density validation rejects a non-density") {
    ExpPoly p;
    p.add_term(0, 2, 4.0L); // mass 2, not 1
    CHECK_THROWS_AS(ExpPolyMixture::from_expoly(p, 1.0), numerical_error);
    // non-decaying term
    ExpPoly q = ExpPoly::constant(1.0L);
    CHECK_THROWS_AS(ExpPolyMixture::from_expoly(q, 1.0), numerical_error);
    // fine when not required to be a density
    CHECK_NOTHROW(ExpPolyMixture::from_expoly(p, 1.0, false));
}
