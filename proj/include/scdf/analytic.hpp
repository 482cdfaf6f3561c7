#ifndef SCDF_ANALYTIC_HPP
#define SCDF_ANALYTIC_HPP

#include "scdf/channel.hpp"
#include "scdf/mixture.hpp"

#include <cstddef>

namespace scdf {

/// CDF of one branch's end-to-end SNR min(max(g1,g2), g3) (two antennas) or
/// min(g1, g3) (one antenna), with general per-link shapes and rates.
double branch_cdf(const BranchRates& b, double gamma);

/// Exact derivative of branch_cdf.
double branch_pdf(const BranchRates& b, double gamma);

/// Exact density of the selection-combining SNR max over K i.i.d. branches
/// whose links all share shape m and rate alpha. Built by raising the branch
/// CDF to the (K-1)-th power by coefficient convolution and multiplying by
/// K times the branch density. `term_cap` bounds intermediate term counts.
ExpPolyMixture sc_pdf_mixture(int K, int m, double alpha, int antennas,
                              std::size_t term_cap = 1000000);

/// Convenience: mixture for a validated i.i.d. config. Throws
/// unsupported_error for non-i.i.d. configs (use the Monte-Carlo module).
ExpPolyMixture sc_pdf_mixture(const SystemConfig& cfg);

/// P[gamma_SC < gamma_th] = product of per-branch CDFs; heterogeneous
/// relays allowed.
double outage_probability(const SystemConfig& cfg);

/// M(s) = E[e^{-s gamma}] of the mixture; sum of c p!/(rate+s)^{p+1}.
double mgf(const ExpPolyMixture& mix, double s);

/// M-PSK symbol error probability via the MGF method:
/// (1/pi) int_0^{(M-1)pi/M} M(g/sin^2 t) dt, g = sin^2(pi/M).
double sep_mpsk(const ExpPolyMixture& mix, int mod_order);

/// Average channel capacity (BW/2) E[log2(1+gamma)] in closed form, bits/s.
double avg_capacity(const ExpPolyMixture& mix, double bandwidth);

} // namespace scdf

#endif
