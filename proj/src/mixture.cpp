#include "scdf/mixture.hpp"
#include "scdf/errors.hpp"
#include "scdf/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace scdf {

ExpPoly ExpPoly::constant(long double c) {
    ExpPoly p;
    p.add_term(0, 0, c);
    return p;
}

ExpPoly ExpPoly::trunc_series(int m) {
    ExpPoly p;
    long double f = 1.0L;
    for (int i = 0; i < m; ++i) {
        if (i > 0) f /= i;
        p.add_term(i, 0, f);
    }
    return p;
}

void ExpPoly::add_term(int power, int rate_mult, long double coeff) {
    if (coeff == 0.0L) return;
    auto [it, fresh] = terms_.try_emplace({power, rate_mult}, coeff);
    if (!fresh) {
        it->second += coeff;
        if (it->second == 0.0L) terms_.erase(it);
    }
}

ExpPoly ExpPoly::operator*(const ExpPoly& rhs) const {
    ExpPoly out;
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : rhs.terms_)
            out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return out;
}

ExpPoly ExpPoly::operator+(const ExpPoly& rhs) const {
    ExpPoly out = *this;
    for (const auto& [k, c] : rhs.terms_) out.add_term(k.first, k.second, c);
    return out;
}

ExpPoly ExpPoly::scaled(long double s) const {
    ExpPoly out;
    for (const auto& [k, c] : terms_) out.add_term(k.first, k.second, c * s);
    return out;
}

ExpPoly ExpPoly::pow(int n) const {
    ExpPoly out = constant(1.0L);
    for (int i = 0; i < n; ++i) out = out * (*this);
    return out;
}

ExpPoly ExpPoly::derivative() const {
    ExpPoly out;
    for (const auto& [k, c] : terms_) {
        if (k.first > 0) out.add_term(k.first - 1, k.second, c * k.first);
        if (k.second > 0) out.add_term(k.first, k.second, -c * k.second);
    }
    return out;
}

long double ExpPoly::eval(long double z) const {
    long double acc = 0.0L;
    for (const auto& [k, c] : terms_)
        acc += c * std::pow(z, (long double)k.first) * std::exp(-k.second * z);
    return acc;
}

ExpPolyMixture::ExpPolyMixture(double alpha, std::vector<ExpPolyTerm> terms)
    : alpha_(alpha), terms_(std::move(terms)) {
    if (!(alpha > 0.0))
        throw config_error("ExpPolyMixture: alpha must be positive");
    for (const auto& t : terms_)
        if (t.rate_mult <= 0)
            throw config_error("ExpPolyMixture: rate multiplier must be positive");
}

ExpPolyMixture ExpPolyMixture::from_expoly(const ExpPoly& p, double alpha,
                                           bool require_density) {
    std::vector<ExpPolyTerm> terms;
    terms.reserve(p.terms().size());
    for (const auto& [k, c] : p.terms()) {
        if (k.second <= 0)
            throw numerical_error(
                "mixture: non-decaying term z^" + std::to_string(k.first) +
                " survived aggregation; density construction failed");
        terms.push_back({static_cast<double>(c), k.first, k.second});
    }
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        return std::tie(a.rate_mult, a.power) < std::tie(b.rate_mult, b.power);
    });
    ExpPolyMixture mix(alpha, std::move(terms));
    if (require_density) {
        double mass = mix.total_mass();
        if (std::abs(mass - 1.0) > 1e-9)
            throw numerical_error("mixture: normalization failed, total mass = " +
                                  std::to_string(mass));
    }
    return mix;
}

double ExpPolyMixture::gamma_coeff(std::size_t i) const {
    const auto& t = terms_[i];
    return t.coeff * std::pow(alpha_, t.power + 1);
}

double ExpPolyMixture::pdf(double gamma) const {
    long double z = (long double)alpha_ * gamma;
    long double acc = 0.0L;
    for (const auto& t : terms_)
        acc += (long double)t.coeff * std::pow(z, (long double)t.power) *
               std::exp(-t.rate_mult * z);
    return static_cast<double>(alpha_ * acc);
}

double ExpPolyMixture::cdf(double gamma) const {
    // Term-wise: int_0^g c z^p e^{-kz} dz/alpha-normalized
    //          = c p!/k^{p+1} (1 - e^{-kz} sum_{i<=p} (kz)^i/i!).
    long double z = (long double)alpha_ * gamma;
    long double acc = 0.0L;
    for (const auto& t : terms_) {
        long double kz = t.rate_mult * z;
        long double lower =
            1.0L - std::exp(-kz) * (long double)truncated_exp_series(
                                       t.power + 1, static_cast<double>(kz));
        acc += (long double)t.coeff * (long double)factorial(t.power) /
               std::pow((long double)t.rate_mult, (long double)(t.power + 1)) * lower;
    }
    return static_cast<double>(acc);
}

double ExpPolyMixture::total_mass() const {
    long double acc = 0.0L;
    for (const auto& t : terms_)
        acc += (long double)t.coeff * (long double)factorial(t.power) /
               std::pow((long double)t.rate_mult, (long double)(t.power + 1));
    return static_cast<double>(acc);
}

double ExpPolyMixture::mean() const {
    long double acc = 0.0L;
    for (const auto& t : terms_)
        acc += (long double)t.coeff * (long double)factorial(t.power + 1) /
               std::pow((long double)t.rate_mult, (long double)(t.power + 2));
    return static_cast<double>(acc) / alpha_;
}

int ExpPolyMixture::max_power() const {
    int p = 0;
    for (const auto& t : terms_) p = std::max(p, t.power);
    return p;
}

} // namespace scdf
