#ifndef SCDF_QUADRATURE_HPP
#define SCDF_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace scdf {

/// Adaptive Simpson on [a, b]. Throws numerical_error when the recursion
/// depth cap is hit before the tolerance is met.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int max_depth = 60);

/// Integral over [0, inf) of a function decaying at least exponentially.
/// The upper limit is doubled from `initial_upper` until the last panel is
/// negligible relative to the accumulated value.
double integrate_semi_infinite(const std::function<double(double)>& f,
                               double initial_upper, double tol = 1e-12);

/// Gauss-Legendre nodes/weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(int order);

    /// Integrate f over [a, b] with this rule.
    double integrate(const std::function<double(double)>& f, double a, double b) const;
};

} // namespace scdf

#endif
