#include "scdf/special_functions.hpp"
#include "scdf/errors.hpp"
#include "scdf/quadrature.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace scdf {

double factorial(int n) {
    if (n < 0)
        throw std::range_error("factorial: n must be >= 0, got " + std::to_string(n));
    if (n > 170)
        throw std::range_error("factorial: overflow for n > 170, got " + std::to_string(n));
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

double truncated_exp_series(int m, double x) {
    if (m < 1)
        throw std::range_error("truncated_exp_series: m must be >= 1");
    CompensatedSum s;
    double term = 1.0;
    s.add(term);
    for (int i = 1; i < m; ++i) {
        term *= x / i;
        s.add(term);
    }
    return s.value();
}

double upper_incomplete_gamma_int(int n, double x) {
    if (n < 1)
        throw std::range_error("upper_incomplete_gamma_int: n must be >= 1");
    if (x < 0)
        throw std::range_error("upper_incomplete_gamma_int: x must be >= 0");
    return factorial(n - 1) * std::exp(-x) * truncated_exp_series(n, x);
}

namespace {

// e^x E_n(x) for x > 1 via the modified Lentz continued fraction
//   E_n(x) = e^{-x} / (x + n/(1 + 1/(x + (n+1)/(1 + 2/(x + ...)))))
double en_scaled_contfrac(int n, double x) {
    const double tiny = 1e-300;
    const double eps = std::numeric_limits<double>::epsilon();
    double b = x + n;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 10000; ++i) {
        double a = -static_cast<double>(i) * (n - 1 + i);
        b += 2.0;
        d = a * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + a / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) <= eps) return h;
    }
    throw numerical_error("expint_en: continued fraction failed to converge");
}

// E_n(x) for 0 < x <= 1 via the series
//   E_n(x) = (-x)^{n-1}/(n-1)! [ -ln x + psi(n) ] - sum_{i!=n-1} (-x)^i / (i! (i - n + 1))
double en_series(int n, double x) {
    const double euler = 0.5772156649015328606;
    double psi = -euler;
    for (int i = 1; i < n; ++i) psi += 1.0 / i;
    double lead = 1.0;
    for (int i = 1; i < n; ++i) lead *= -x / i;
    CompensatedSum s;
    s.add(lead * (psi - std::log(x)));
    double pow_term = 1.0; // (-x)^i / i!
    for (int i = 0; i <= 1000; ++i) {
        if (i > 0) pow_term *= -x / i;
        if (i != n - 1) {
            double t = -pow_term / (i - n + 1);
            s.add(t);
            if (i > n && std::abs(t) < 1e-18 * std::abs(s.value())) return s.value();
        }
    }
    throw numerical_error("expint_en: series failed to converge");
}

} // namespace

double expint_en(int n, double x) {
    if (n < 1) throw std::range_error("expint_en: n must be >= 1");
    if (x <= 0) throw std::range_error("expint_en: x must be > 0");
    if (x > 1.0) return std::exp(-x) * en_scaled_contfrac(n, x);
    return en_series(n, x);
}

double expint_en_scaled(int n, double x) {
    if (n < 1) throw std::range_error("expint_en_scaled: n must be >= 1");
    if (x <= 0) throw std::range_error("expint_en_scaled: x must be > 0");
    if (x > 1.0) return en_scaled_contfrac(n, x);
    return std::exp(x) * en_series(n, x);
}

double exp_log_integral(int n, double a) {
    if (a <= 0) throw std::range_error("exp_log_integral: a must be > 0");
    // n! / a^{n+1} * sum_{j=1}^{n+1} e^a E_j(a); every summand is positive.
    CompensatedSum s;
    for (int j = 1; j <= n + 1; ++j) s.add(expint_en_scaled(j, a));
    return factorial(n) / std::pow(a, n + 1) * s.value();
}

double exp_log_integral_quad(int n, double a, double rel_tol) {
    if (a <= 0) throw std::range_error("exp_log_integral_quad: a must be > 0");
    // Substituting t = a*x makes the integrand scale-free:
    //   a^{-(n+1)} int_0^inf t^n e^{-t} ln(1 + t/a) dt, peak near t = n.
    auto f = [n, a](double t) {
        return std::pow(t, n) * std::exp(-t) * std::log1p(t / a);
    };
    double upper = n + 40.0;
    return integrate_semi_infinite(f, upper, rel_tol) / std::pow(a, n + 1);
}

} // namespace scdf
