#include "scdf/power_alloc.hpp"
#include "scdf/analytic.hpp"
#include "scdf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace scdf {

const char* to_string(SplitMethod m) {
    switch (m) {
        case SplitMethod::equal: return "equal";
        case SplitMethod::adaptive: return "adaptive";
        case SplitMethod::numeric: return "numeric";
        case SplitMethod::cubic: return "cubic";
    }
    return "?";
}

namespace {

SystemConfig with_powers(const SystemConfig& cfg, double ps, double pr) {
    SystemConfig out = cfg;
    out.p_source = ps;
    out.p_relay = pr;
    return out;
}

double exact_outage_at(const SystemConfig& cfg, double ps, double pr) {
    return outage_probability(with_powers(cfg, ps, pr));
}

// Golden-section minimization on [lo, hi]; f assumed unimodal there.
double golden_min(const std::function<double(double)>& f, double lo, double hi,
                  double tol) {
    const double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// Scalar minimization: coarse grid for a bracket, golden section inside it.
// Sets *fallback when the coarse scan shows more than one local minimum and
// a dense grid pass was used to pick the bracket.
double bracketed_min(const std::function<double(double)>& f, double lo, double hi,
                     double tol, bool* fallback) {
    auto scan = [&](int n, int* best_idx, int* n_local_min) {
        std::vector<double> xs(n), fs(n);
        for (int i = 0; i < n; ++i) {
            xs[i] = lo + (hi - lo) * i / (n - 1);
            fs[i] = f(xs[i]);
        }
        int bi = 0;
        int locals = 0;
        for (int i = 0; i < n; ++i) {
            if (fs[i] < fs[bi]) bi = i;
            bool left_up = (i == 0) || fs[i] <= fs[i - 1];
            bool right_up = (i == n - 1) || fs[i] <= fs[i + 1];
            if (i > 0 && i < n - 1 && left_up && right_up) ++locals;
        }
        *best_idx = bi;
        *n_local_min = locals;
        return xs;
    };

    int bi = 0, locals = 0;
    int n = 129;
    std::vector<double> xs = scan(n, &bi, &locals);
    if (locals > 1) {
        if (fallback) *fallback = true;
        n = 8193;
        xs = scan(n, &bi, &locals);
    }
    double blo = xs[std::max(0, bi - 1)];
    double bhi = xs[std::min(n - 1, bi + 1)];
    return golden_min(f, blo, bhi, tol);
}

void require_link_symmetry(const BranchParams& b, std::size_t k) {
    if (b.s_relay_ant1.m != b.s_relay_ant2.m ||
        b.s_relay_ant1.omega != b.s_relay_ant2.omega)
        throw config_error("adaptive_split: relays[" + std::to_string(k) +
                           "] must have identical source->relay links "
                           "(m1 = m2, omega1 = omega2)");
}

struct SurrogateConsts {
    double a, b, c;
};

// a_k, b_k, c_k of the Rayleigh surrogate, with omega folded into the
// effective mean square gains.
SurrogateConsts surrogate_consts(const BranchParams& br, double gamma_th) {
    double eff1 = br.s_relay_ant1.omega * br.gain_sq_s1;
    double eff2 = br.s_relay_ant2.omega * br.gain_sq_s2;
    double eff3 = br.relay_dest.omega * br.gain_sq_rd;
    double a = br.dest_noise_var * gamma_th / eff3;
    double b = br.relay_noise_var * br.relay_noise_var * gamma_th * gamma_th /
               (eff1 * eff2);
    return {a, b, a * b};
}

void require_rayleigh_two_antenna(const SystemConfig& cfg, const char* who) {
    if (cfg.antennas != 2)
        throw unsupported_error(std::string(who) +
                                ": derived for two-antenna relays only");
    for (const auto& b : cfg.relays)
        if (b.s_relay_ant1.m != 1 || b.s_relay_ant2.m != 1 || b.relay_dest.m != 1)
            throw unsupported_error(std::string(who) +
                                    ": requires Rayleigh links (all m = 1)");
}

} // namespace

PowerSplit equal_split(const SystemConfig& cfg, double p_tot) {
    validate_config(cfg);
    PowerSplit s;
    s.p_source = s.p_relay = 0.5 * p_tot;
    s.method = SplitMethod::equal;
    s.objective_value = exact_outage_at(cfg, s.p_source, s.p_relay);
    return s;
}

double adaptive_source_power(const BranchParams& b, int antennas, double p_tot) {
    require_link_symmetry(b, 0);
    double om = b.s_relay_ant1.omega;
    double om3 = b.relay_dest.omega;
    double m = b.s_relay_ant1.m;
    double m3 = b.relay_dest.m;
    double frac = 1.0 / (antennas + 1) + om3 / (om + om3) + m / (m + m3);
    return frac * p_tot / 3.0;
}

PowerSplit adaptive_split(const SystemConfig& cfg, double p_tot) {
    validate_config(cfg);
    for (std::size_t k = 0; k < cfg.relays.size(); ++k)
        require_link_symmetry(cfg.relays[k], k);
    double ps = 0.0;
    for (const auto& b : cfg.relays)
        ps += adaptive_source_power(b, cfg.antennas, p_tot);
    ps /= static_cast<double>(cfg.relays.size());
    PowerSplit s;
    s.p_source = ps;
    s.p_relay = p_tot - ps;
    s.method = SplitMethod::adaptive;
    s.objective_value = exact_outage_at(cfg, s.p_source, s.p_relay);
    return s;
}

PowerSplit numeric_split(const SystemConfig& cfg, double p_tot, double tol) {
    validate_config(cfg);
    if (!(tol > 0)) throw config_error("numeric_split: tol must be positive");
    double eps = 1e-9 * p_tot;
    bool fallback = false;
    auto obj = [&](double ps) {
        return std::log(std::max(exact_outage_at(cfg, ps, p_tot - ps), 1e-300));
    };
    double ps = bracketed_min(obj, eps, p_tot - eps, tol * p_tot, &fallback);
    // The optimum can never lose to the equal split, a feasible point.
    double out_opt = exact_outage_at(cfg, ps, p_tot - ps);
    double out_eq = exact_outage_at(cfg, 0.5 * p_tot, 0.5 * p_tot);
    if (out_eq < out_opt) {
        ps = 0.5 * p_tot;
        out_opt = out_eq;
    }
    PowerSplit s;
    s.p_source = ps;
    s.p_relay = p_tot - ps;
    s.method = SplitMethod::numeric;
    s.objective_value = out_opt;
    s.grid_fallback = fallback;
    return s;
}

double approx_outage_rayleigh(const SystemConfig& cfg, double gamma_th,
                              bool* in_domain) {
    validate_config(cfg);
    require_rayleigh_two_antenna(cfg, "approx_outage_rayleigh");
    if (in_domain) *in_domain = true;
    double prod = 1.0;
    for (const auto& br : cfg.relays) {
        BranchRates r = branch_rates(br, cfg.antennas, cfg.p_source, cfg.p_relay);
        double al = r.s1.rate, eta = r.s2.rate, be = r.rd.rate;
        double g = gamma_th;
        double v = be * g + al * eta * g * g - al * eta * be * g * g * g;
        if (in_domain && (v < 0.0 || v > 1.0)) *in_domain = false;
        prod *= v;
    }
    return prod;
}

double rayleigh_surrogate_log(const SystemConfig& cfg, double gamma_th,
                              double p_source, double p_relay) {
    require_rayleigh_two_antenna(cfg, "rayleigh_surrogate_log");
    double acc = 0.0;
    for (const auto& br : cfg.relays) {
        SurrogateConsts sc = surrogate_consts(br, gamma_th);
        double v = sc.a / p_relay + sc.b / (p_source * p_source) -
                   sc.c / (p_source * p_source * p_relay);
        acc += std::log(std::max(v, 1e-300));
    }
    return acc;
}

CubicCoefficients cubic_coefficients(double a, double b, double c, double p_tot) {
    if (!(a > 0) || !(b > 0) || !(c > 0))
        throw config_error("cubic_coefficients: a, b, c must be positive");
    CubicCoefficients h;
    h.a = a;
    h.b = b;
    h.c = c;
    h.h1 = -2.0 * b / a;
    h.h2 = (4.0 * b * p_tot - 3.0 * c) / a;
    h.h3 = (2.0 * c * p_tot - 2.0 * b * p_tot * p_tot) / a;
    return h;
}

CubicSolution solve_cubic(double h1, double h2, double h3) {
    CubicSolution sol;
    sol.Q = (3.0 * h2 - h1 * h1) / 9.0;
    sol.R = (9.0 * h1 * h2 - 27.0 * h3 - 2.0 * h1 * h1 * h1) / 54.0;
    sol.D = sol.Q * sol.Q * sol.Q + sol.R * sol.R;

    std::vector<double> roots;
    if (sol.D >= 0.0) {
        double sq = std::sqrt(sol.D);
        sol.S = std::cbrt(sol.R + sq);
        sol.T = std::cbrt(sol.R - sq);
        roots.push_back(sol.S + sol.T - h1 / 3.0);
        if (sol.D == 0.0 && (sol.S + sol.T) != 0.0)
            roots.push_back(-0.5 * (sol.S + sol.T) - h1 / 3.0);
    } else {
        double arg = sol.R / std::sqrt(-sol.Q * sol.Q * sol.Q);
        arg = std::clamp(arg, -1.0, 1.0);
        double theta = std::acos(arg);
        sol.theta = theta;
        double scale = 2.0 * std::sqrt(-sol.Q);
        for (int j = 0; j < 3; ++j)
            roots.push_back(scale * std::cos((theta + 2.0 * M_PI * j) / 3.0) -
                            h1 / 3.0);
        sol.alt_branch_root = roots[2]; // the (theta + 4*pi)/3 branch
    }

    // Newton polish; the closed forms lose digits when the coefficients span
    // many orders of magnitude.
    for (double& r : roots) {
        for (int it = 0; it < 8; ++it) {
            double fval = ((r + h1) * r + h2) * r + h3;
            double fder = (3.0 * r + 2.0 * h1) * r + h2;
            if (fder == 0.0) break;
            double step = fval / fder;
            r -= step;
            if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(r))) break;
        }
    }
    std::sort(roots.begin(), roots.end());
    sol.roots = std::move(roots);
    if (sol.alt_branch_root) {
        // re-identify the (theta + 4*pi)/3 branch after polishing/sorting
        double raw = *sol.alt_branch_root;
        double best = sol.roots.front();
        for (double r : sol.roots)
            if (std::abs(r - raw) < std::abs(best - raw)) best = r;
        sol.alt_branch_root = best;
    }
    return sol;
}

PowerSplit rayleigh_optimal_split(const SystemConfig& cfg, double p_tot) {
    validate_config(cfg);
    require_rayleigh_two_antenna(cfg, "rayleigh_optimal_split");
    double eps = 1e-9 * p_tot;

    bool identical = std::all_of(cfg.relays.begin(), cfg.relays.end(),
                                 [&](const BranchParams& b) {
                                     return b == cfg.relays.front();
                                 });

    double ps;
    if (identical) {
        SurrogateConsts sc = surrogate_consts(cfg.relays.front(), cfg.gamma_th);
        CubicCoefficients h = cubic_coefficients(sc.a, sc.b, sc.c, p_tot);
        CubicSolution sol = solve_cubic(h);
        double best = std::numeric_limits<double>::quiet_NaN();
        double best_obj = std::numeric_limits<double>::infinity();
        for (double r : sol.roots) {
            if (r <= eps || r >= p_tot - eps) continue;
            double obj = rayleigh_surrogate_log(cfg, cfg.gamma_th, r, p_tot - r);
            if (obj < best_obj) {
                best_obj = obj;
                best = r;
            }
        }
        if (!std::isfinite(best))
            throw numerical_error(
                "rayleigh_optimal_split: no cubic root in (0, P_tot); "
                "use numeric_split instead");
        ps = best;
    } else {
        // Heterogeneous relays: the single-relay cubic reduction does not
        // apply; minimize the same surrogate objective directly.
        auto obj = [&](double x) {
            return rayleigh_surrogate_log(cfg, cfg.gamma_th, x, p_tot - x);
        };
        ps = bracketed_min(obj, eps, p_tot - eps, 1e-10 * p_tot, nullptr);
    }

    PowerSplit s;
    s.p_source = ps;
    s.p_relay = p_tot - ps;
    s.method = SplitMethod::cubic;
    s.objective_value = exact_outage_at(cfg, s.p_source, s.p_relay);
    return s;
}

} // namespace scdf
