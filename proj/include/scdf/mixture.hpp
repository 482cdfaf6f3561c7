#ifndef SCDF_MIXTURE_HPP
#define SCDF_MIXTURE_HPP

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace scdf {

/// One term c * z^power * e^{-rate_mult * z} of a mixture in the normalized
/// variable z = alpha*gamma. Rates are exact integer multiples of alpha, so
/// like-term collection keys on (power, rate_mult) and never compares
/// floating-point rates.
struct ExpPolyTerm {
    double coeff = 0.0;
    int power = 0;
    int rate_mult = 1;
};

/// Sum of terms c * z^p * e^{-k z}, z = alpha*gamma, kept exact under
/// products and powers. This is the working form for the branch CDF and its
/// powers; coefficients are accumulated in long double.
class ExpPoly {
public:
    using Key = std::pair<int, int>; // (power, rate_mult)

    static ExpPoly constant(long double c);
    /// Truncated exponential series sum_{i<m} z^i/i! as a plain polynomial.
    static ExpPoly trunc_series(int m);

    void add_term(int power, int rate_mult, long double coeff);
    ExpPoly operator*(const ExpPoly& rhs) const;
    ExpPoly operator+(const ExpPoly& rhs) const;
    ExpPoly scaled(long double s) const;
    ExpPoly pow(int n) const;
    /// d/dz, exact term-by-term.
    ExpPoly derivative() const;

    long double eval(long double z) const;
    std::size_t size() const { return terms_.size(); }
    const std::map<Key, long double>& terms() const { return terms_; }

private:
    std::map<Key, long double> terms_;
};

/// An SNR density (or general function) represented as a finite mixture
/// sum c_i * gamma^{p_i} * e^{-k_i * alpha * gamma} carried in normalized
/// form. Construction as a density validates normalization.
class ExpPolyMixture {
public:
    ExpPolyMixture(double alpha, std::vector<ExpPolyTerm> terms);

    /// Builds from a normalized-variable ExpPoly density p(z) such that
    /// pdf(gamma) = alpha * p(alpha*gamma); validates unit mass to 1e-9 and
    /// throws numerical_error on failure when `require_density`.
    static ExpPolyMixture from_expoly(const ExpPoly& p, double alpha,
                                      bool require_density = true);

    double alpha() const { return alpha_; }
    const std::vector<ExpPolyTerm>& terms() const { return terms_; }
    /// Decay rate (in gamma) of term i: rate_mult * alpha.
    double rate(std::size_t i) const { return terms_[i].rate_mult * alpha_; }
    /// Coefficient of gamma^p e^{-rate*gamma} in the gamma variable.
    double gamma_coeff(std::size_t i) const;

    double pdf(double gamma) const;
    /// int_0^g pdf.
    double cdf(double gamma) const;
    /// int_0^inf of the mixture (1 for densities), computed term-wise.
    double total_mass() const;
    /// Mean, term-wise: sum c (p+1)! / k^{p+2} / alpha.
    double mean() const;
    int max_power() const;

private:
    double alpha_;
    std::vector<ExpPolyTerm> terms_;
};

} // namespace scdf

#endif
