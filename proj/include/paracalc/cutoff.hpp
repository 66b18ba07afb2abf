#ifndef PARACALC_CUTOFF_HPP
#define PARACALC_CUTOFF_HPP

#include "paracalc/weight.hpp"

namespace paracalc {

/** Smooth transition profile: identically 1 on [0, a], identically 0 on
 *  [b, inf), strictly decreasing in between.  Realized with the classical
 *  exp(-1/x) glue, so it is C^infinity.  Defaults a = 11/10, b = 13/10. */
struct CutoffProfile {
    double a = 1.1;
    double b = 1.3;

    double operator()(double t) const;

    static CutoffProfile standard() { return {}; }
    /** Alternative admissible profile, used to probe that product operations
     *  do not depend on the particular partition chosen. */
    static CutoffProfile alternative() { return {0.85, 1.25}; }
};

/** Dyadic anisotropic Littlewood-Paley system: low-pass symbols
 *  Psi_j(xi) = Psi(2^{-j}[xi]) for j >= 0 (zero for j < 0) and band symbols
 *  Phi_j = Psi_j - Psi_{j-1}, truncated at a top level J. */
struct BandSystem {
    Weight weight;
    CutoffProfile profile;
    int top_level = 0;  // J >= 0

    /** Low-pass symbol evaluated at modulus value r = [xi]. */
    double psi_r(int j, double r) const;
    /** Band symbol at modulus value r. */
    double phi_r(int j, double r) const;

    double psi(int j, const Point& xi) const;
    double phi(int j, const Point& xi) const;

    /** |sum_{j=0}^{J} Phi_j(xi) - Psi_J(xi)|; zero up to rounding because the
     *  band sum telescopes. */
    double partition_defect(const Point& xi) const;
    double partition_defect_r(double r) const;
};

}  // namespace paracalc

#endif
