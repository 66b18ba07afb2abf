#ifndef PARACALC_WITNESS_HPP
#define PARACALC_WITNESS_HPP

#include <string>
#include <vector>

#include "paracalc/grid.hpp"

namespace paracalc {

/** Witness request.  Kinds:
 *    theta, rho, omega                       base functions
 *    theta_k, rho_k, omega_k                 dilated / modulated members (index k)
 *    rho_sq_k, omega_sq_k                    squared members
 *    theta_theta_k, theta_omega_k            base-times-member products
 *    theta_family_plus, theta_family_minus   sum_{k=1}^{N} 2^{-k t} theta_{+-k}
 *    rho_family                              sum_{k=l+1}^{l+N} 2^{-k t} rho_k
 *    omega_family                            sum_{k=N+1}^{2N} 2^{-k t} omega_k
 *    Omega_family                            sum_{k=2}^{N+1} 2^{-2^k t} omega_{2^k}
 *    omega_pair                              omega_{3N} times omega_family(t = 0)
 *
 *  theta has a small frequency ball, rho a dyadic annulus, omega an annulus
 *  piece concentrated near the unit vector on the first axis with m_j = 1.
 *  theta and omega are normalized to value 1 at the origin. */
struct WitnessSpec {
    std::string kind;
    int k = 0;
    int l = 0;
    int N = 0;
    double t = 0.0;
};

WitnessSpec parse_witness_spec(const std::string& json_text);

GridFunction make_witness(const GridPtr& grid, const WitnessSpec& spec);

/** Continuum evaluation of a base witness (theta / rho / omega) at a point,
 *  by quadrature of its explicit frequency-side formula. */
cplx witness_eval(const std::string& base_kind, const Weight& w, const Point& x);

/** Closed-form quasi-norm predicted for a witness in the scale ('B' or 'F')
 *  with parameters (s, p, q); base L_p factors are measured on the grid.
 *  Throws std::invalid_argument for combinations without a closed form. */
double oracle_norm(const GridPtr& grid, const WitnessSpec& spec, char scale, double s, double p,
                   double q);

struct DemoCurve {
    std::vector<double> param;
    std::vector<double> value;
};

/** L_p distance between the rescaled low-pass part of rho_k^2 and its
 *  concentration limit, for k = 1..kmax; decreasing in k. */
DemoCurve demo_lowpass_concentration(const GridPtr& grid, int kmax, double p);

/** Sup distance between omega * (1/N) sum_{k=N}^{2N-1} omega(2^{-kM} x) and
 *  omega, per N; evaluated from the continuum formulas. */
DemoCurve demo_dilation_average(const Weight& w, const std::vector<int>& Ns);

/** Relative error of: band-0 part of theta_family_plus(t=s0) times
 *  theta_family_minus(t=-s0) against N theta^2. */
double demo_modulation_pairing(const GridPtr& grid, int N, double s0);

/** Relative error of: band (2^kk + 1) part of Omega_family(t0) times
 *  Omega_family(t1) against 2^{-2^kk (t0+t1)} omega_{2^kk}^2.
 *  Runs on its own high-bandwidth 1D grid. */
double demo_band_extraction(int N, int kk, double t0, double t1);

}  // namespace paracalc

#endif
