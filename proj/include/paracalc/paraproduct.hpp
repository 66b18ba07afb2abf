#ifndef PARACALC_PARAPRODUCT_HPP
#define PARACALC_PARAPRODUCT_HPP

#include <vector>

#include "paracalc/grid.hpp"

namespace paracalc {

/** All pieces live on the 2x oversampled grid so that pointwise products of
 *  band-limited factors are alias-free. */
struct ParaproductResult {
    GridFunction pi1;    // sum_j u^{j-2} v_j        (low-high)
    GridFunction pi2;    // sum_j near-diagonal terms
    GridFunction pi3;    // sum_j u_j v^{j-2}        (high-low)
    GridFunction total;  // u^J v^J
    int level = 0;       // J used
};

/** Default truncation level for products of two functions resolved on g:
 *  the largest J whose product band 1.3 2^{J+1} still fits after 2x
 *  oversampling. */
int product_level(const TorusGrid& g);

GridFunction pi1(const GridFunction& u, const GridFunction& v, const BandSystem& sys, int J = -1);
GridFunction pi2(const GridFunction& u, const GridFunction& v, const BandSystem& sys, int J = -1);
GridFunction pi3(const GridFunction& u, const GridFunction& v, const BandSystem& sys, int J = -1);

/** Truncated product u^k v^k on the oversampled grid; zero for k < 0. */
GridFunction pi_product(const GridFunction& u, const GridFunction& v, const BandSystem& sys, int k);

/** Full decomposition; pi1 + pi2 + pi3 telescopes to u^J v^J exactly. */
ParaproductResult decompose(const GridFunction& u, const GridFunction& v, const BandSystem& sys,
                            int J = -1);

/** Spectral leakage of the level-j summands outside their predicted windows:
 *  the low-high summand u^{j-2} v_j must sit in the annulus
 *  |R/4 - r/2| 2^j <= [xi] <= (5R/4) 2^j and the near-diagonal block in the
 *  ball [xi] <= R 2^{j+1}, with r, R the profile plateau/support radii.
 *  Leakage is max outside-magnitude over max magnitude (0 for a zero block). */
struct SupportRow {
    int j = 0;
    double low_high_leak = 0.0;
    double diagonal_leak = 0.0;
};
std::vector<SupportRow> spectral_support_report(const GridFunction& u, const GridFunction& v,
                                                const BandSystem& sys, int J = -1);

}  // namespace paracalc

#endif
