#ifndef PARACALC_NORMS_HPP
#define PARACALC_NORMS_HPP

#include <vector>

#include "paracalc/grid.hpp"

namespace paracalc {

/** Grid quadrature of the L_p quasi-norm; p = inf gives the sup over samples.
 *  Requires p > 0. */
double lp_norm(const GridFunction& u, double p);

/** ell_q quasi-norm of a finite sequence; q = inf gives the max. */
double lq_seq(const std::vector<double>& a, double q);

/** Band decomposition u_j = F^{-1} Phi_j F u for j = 0..J (J = -1 means the
 *  system top level).  Costs one forward transform plus one inverse per band. */
std::vector<GridFunction> band_decompose(const GridFunction& u, const BandSystem& sys, int J = -1);

/** ell_q over j of 2^{s j} ||u_j||_{L_p}. */
double besov_norm(const GridFunction& u, const BandSystem& sys, double s, double p, double q,
                  int J = -1);
double besov_from_band_norms(const std::vector<double>& band_lp, double s, double q);

/** L_p of the pointwise ell_q of {2^{s j} u_j(x)}.  p = inf is rejected. */
double tl_norm(const GridFunction& u, const BandSystem& sys, double s, double p, double q,
               int J = -1);
double tl_from_bands(const std::vector<GridFunction>& bands, double s, double p, double q);

/** Ratio of the weighted cumulative sequence norm
 *  || {2^{s j} (sum_{k<=j} |a_k|^r)^{1/r}} ||_{ell_q}
 *  to || {2^{s j} a_j} ||_{ell_q}; bounded uniformly when s < 0.  r = inf
 *  takes the running maximum.  Returns 0 when the denominator vanishes. */
double weighted_cumulative_ratio(const std::vector<double>& a, double s, double q, double r);

}  // namespace paracalc

#endif
