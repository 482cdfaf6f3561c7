#ifndef SCDF_SPECIAL_FUNCTIONS_HPP
#define SCDF_SPECIAL_FUNCTIONS_HPP

#include <cmath>
#include <cstddef>

namespace scdf {

/// Neumaier compensated accumulator. All alternating-sign coefficient sums
/// in this library go through one of these.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

/// n! as a double. Throws std::range_error for n < 0 or n > 170.
double factorial(int n);

/// Sum_{i=0}^{m-1} x^i / i!, the truncated exponential series. Requires m >= 1.
double truncated_exp_series(int m, double x);

/// Upper incomplete gamma Gamma(n, x) for integer n >= 1, x >= 0, via the
/// finite series (n-1)! e^{-x} sum_{i<n} x^i/i!.
double upper_incomplete_gamma_int(int n, double x);

/// Exponential integral E_n(x) = int_1^inf e^{-x t} t^{-n} dt, n >= 1, x > 0.
double expint_en(int n, double x);

/// e^x E_n(x); safe for large x where e^x alone would overflow.
double expint_en_scaled(int n, double x);

/// int_0^inf x^n e^{-a x} ln(1+x) dx via the exponential-integral closed form
///   n! e^a a^{-(n+1)} sum_{j=1}^{n+1} E_j(a).
/// Requires a > 0, 0 <= n <= 170.
double exp_log_integral(int n, double a);

/// Same integral by adaptive quadrature; the independent cross-check path.
/// Throws numerical_error if the quadrature does not converge.
double exp_log_integral_quad(int n, double a, double rel_tol = 1e-10);

} // namespace scdf

#endif
