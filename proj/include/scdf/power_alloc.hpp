#ifndef SCDF_POWER_ALLOC_HPP
#define SCDF_POWER_ALLOC_HPP

#include "scdf/channel.hpp"

#include <optional>
#include <vector>

namespace scdf {

enum class SplitMethod { equal, adaptive, numeric, cubic };

const char* to_string(SplitMethod m);

/// A feasible (P_s, P_r) pair with provenance. objective_value is the exact
/// outage probability at the split.
struct PowerSplit {
    double p_source = 0.0;
    double p_relay = 0.0;
    SplitMethod method = SplitMethod::equal;
    double objective_value = 0.0;
    bool grid_fallback = false; // numeric path fell back to a dense grid
};

/// KKT cubic coefficients h1..h3 built from the per-relay constants
/// a = sigma_d^2 g_th / mu_rd^2, b = sigma_k^4 g_th^2 / (mu_1^2 mu_2^2),
/// c = a*b.
struct CubicCoefficients {
    double h1 = 0.0, h2 = 0.0, h3 = 0.0;
    double a = 0.0, b = 0.0, c = 0.0;
};

/// Cardano/trigonometric solution record of x^3 + h1 x^2 + h2 x + h3 = 0.
struct CubicSolution {
    double Q = 0.0, R = 0.0, D = 0.0;
    double S = 0.0, T = 0.0;               // meaningful when D >= 0
    std::optional<double> theta;           // present when D < 0
    std::vector<double> roots;             // all real roots, ascending
    std::optional<double> alt_branch_root; // 2 sqrt(-Q) cos((theta+4pi)/3) - h1/3
    double selected_root = 0.0;            // filled by rayleigh_optimal_split
};

PowerSplit equal_split(const SystemConfig& cfg, double p_tot);

/// Adaptive allocation evaluated on one relay's parameters:
/// Ps = (1/(Ant+1) + Omega3/(Omega+Omega3) + m/(m+m3)) * P_tot / 3.
/// Requires the two source->relay links to share m and omega.
double adaptive_source_power(const BranchParams& b, int antennas, double p_tot);

/// Adaptive split for a whole config (per-relay suggestions averaged).
PowerSplit adaptive_split(const SystemConfig& cfg, double p_tot);

/// Exact-outage minimizer over P_s in (0, P_tot) by coarse grid bracketing
/// plus golden-section refinement on the log objective.
PowerSplit numeric_split(const SystemConfig& cfg, double p_tot, double tol = 1e-10);

/// Small-gamma Rayleigh outage surrogate
/// prod_k (beta g + alpha eta g^2 - alpha eta beta g^3). Requires m = 1 and
/// two antennas on every link. If `in_domain` is given it is set to false
/// when any per-branch factor leaves [0, 1] (approximation invalid there).
double approx_outage_rayleigh(const SystemConfig& cfg, double gamma_th,
                              bool* in_domain = nullptr);

/// log of the surrogate, sum_k log(a_k/Pr + b_k/Ps^2 - c_k/(Ps^2 Pr)).
double rayleigh_surrogate_log(const SystemConfig& cfg, double gamma_th,
                              double p_source, double p_relay);

CubicCoefficients cubic_coefficients(double a, double b, double c, double p_tot);

/// All real roots with the Cardano (D >= 0) or trigonometric (D < 0)
/// branch; each root is Newton-polished to relative residual <= 1e-8.
CubicSolution solve_cubic(double h1, double h2, double h3);
inline CubicSolution solve_cubic(const CubicCoefficients& h) {
    return solve_cubic(h.h1, h.h2, h.h3);
}

/// Closed-form (identical relays) or surrogate-minimizing (heterogeneous)
/// Rayleigh power split. Requires all m = 1, antennas = 2. Throws
/// numerical_error when no cubic root is feasible in (0, P_tot).
PowerSplit rayleigh_optimal_split(const SystemConfig& cfg, double p_tot);

} // namespace scdf

#endif
