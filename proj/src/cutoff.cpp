#include "paracalc/cutoff.hpp"

#include <cmath>
#include <stdexcept>

namespace paracalc {

namespace {
inline double glue(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
}

double CutoffProfile::operator()(double t) const {
    if (t <= a) return 1.0;
    if (t >= b) return 0.0;
    double num = glue(b - t);
    return num / (num + glue(t - a));
}

double BandSystem::psi_r(int j, double r) const {
    if (j < 0) return 0.0;
    return profile(std::ldexp(r, -j));
}

double BandSystem::phi_r(int j, double r) const {
    return psi_r(j, r) - psi_r(j - 1, r);
}

double BandSystem::psi(int j, const Point& xi) const {
    return psi_r(j, aniso_modulus(xi, weight));
}

double BandSystem::phi(int j, const Point& xi) const {
    return phi_r(j, aniso_modulus(xi, weight));
}

double BandSystem::partition_defect_r(double r) const {
    double s = 0.0;
    for (int j = 0; j <= top_level; ++j) s += phi_r(j, r);
    return std::fabs(s - psi_r(top_level, r));
}

double BandSystem::partition_defect(const Point& xi) const {
    return partition_defect_r(aniso_modulus(xi, weight));
}

}  // namespace paracalc
