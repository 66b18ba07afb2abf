#include "paracalc/weight.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "paracalc/util.hpp"

namespace paracalc {

bool Weight::isotropic() const {
    for (double mj : m)
        if (!approx_eq(mj, 1.0)) return false;
    return true;
}

Weight Weight::of(std::vector<double> exponents) {
    if (exponents.empty()) throw std::invalid_argument("weight: empty exponent list");
    double mn = exponents[0];
    double tot = 0.0;
    for (double mj : exponents) {
        if (!(mj >= 1.0 - kParamTol)) throw std::invalid_argument("weight: every exponent must be >= 1");
        mn = std::min(mn, mj);
        tot += mj;
    }
    if (!approx_eq(mn, 1.0)) throw std::invalid_argument("weight: smallest exponent must equal 1");
    Weight w;
    w.m = std::move(exponents);
    w.total = tot;
    return w;
}

Point dilate(double t, const Weight& w, const Point& x) {
    if (x.size() != w.dim()) throw std::invalid_argument("dilate: dimension mismatch");
    Point y(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) y[j] = std::pow(t, w.m[j]) * x[j];
    return y;
}

namespace {

// g(t) = sum_j (x_j / t^{m_j})^2 - 1, strictly decreasing on (0,inf).
double defect(const Point& x, const Weight& w, double t) {
    double s = -1.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        double r = x[j] / std::pow(t, w.m[j]);
        s += r * r;
    }
    return s;
}

double defect_deriv(const Point& x, const Weight& w, double t) {
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        double r = x[j] / std::pow(t, w.m[j]);
        s += -2.0 * w.m[j] * r * r / t;
    }
    return s;
}

}  // namespace

double aniso_modulus(const Point& x, const Weight& w) {
    if (x.size() != w.dim()) throw std::invalid_argument("aniso_modulus: dimension mismatch");
    // Scale out the overall magnitude via homogeneity [t^M x] = t [x] so the
    // solve always runs near t = 1; this keeps |x_j| up to ~1e300 safe.
    double scale = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        double a = std::fabs(x[j]);
        if (a == 0.0) continue;
        // |x_j|^{1/m_j} in the log domain to dodge overflow for huge inputs
        scale = std::max(scale, std::exp(std::log(a) / w.m[j]));
    }
    if (scale == 0.0) return 0.0;

    Point y(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) y[j] = x[j] / std::pow(scale, w.m[j]);

    // Now max_j |y_j|^{1/m_j} = 1, so sqrt(1/n) <= [y] <= sqrt(n).
    double n = static_cast<double>(x.size());
    double lo = 0.9 / std::sqrt(n), hi = 1.1 * std::sqrt(n);
    while (defect(y, w, lo) < 0.0) lo *= 0.5;
    while (defect(y, w, hi) > 0.0) hi *= 2.0;

    // Bisect to a loose bracket, then polish with Newton.
    for (int it = 0; it < 40 && (hi - lo) > 1e-6 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (defect(y, w, mid) > 0.0 ? lo : hi) = mid;
    }
    double t = 0.5 * (lo + hi);
    for (int it = 0; it < 50; ++it) {
        double f = defect(y, w, t);
        double df = defect_deriv(y, w, t);
        double step = f / df;
        double tn = t - step;
        if (!(tn > 0.25 * lo) || !(tn < 4.0 * hi)) tn = 0.5 * (lo + hi);
        if (std::fabs(tn - t) <= 1e-16 * t) { t = tn; break; }
        t = tn;
    }
    return scale * t;
}

}  // namespace paracalc
