#ifndef PARACALC_WEIGHT_HPP
#define PARACALC_WEIGHT_HPP

#include <string>
#include <vector>

namespace paracalc {

using Point = std::vector<double>;

/** Anisotropy weight M = (m_1,...,m_n).  Every m_j >= 1 and min_j m_j = 1,
 *  so the smallest scaling direction is Euclidean. */
struct Weight {
    std::vector<double> m;
    double total = 0.0;  // |M| = m_1 + ... + m_n

    std::size_t dim() const { return m.size(); }
    bool isotropic() const;

    static Weight of(std::vector<double> exponents);  // validates
};

/** Anisotropic dilation t^M x = (t^{m_1} x_1, ..., t^{m_n} x_n). */
Point dilate(double t, const Weight& w, const Point& x);

/** The anisotropic modulus [x]: the unique t > 0 with
 *  sum_j (x_j / t^{m_j})^2 = 1, and [0] = 0. */
double aniso_modulus(const Point& x, const Weight& w);

}  // namespace paracalc

#endif
