#include "paracalc/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace paracalc {

double lp_norm(const GridFunction& u, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("lp_norm: p must be positive");
    if (std::isinf(p)) {
        double mx = 0.0;
        for (const cplx& z : u.v) mx = std::max(mx, std::abs(z));
        return mx;
    }
    double s = 0.0;
    for (const cplx& z : u.v) s += std::pow(std::abs(z), p);
    return std::pow(s * u.grid->cell_volume(), 1.0 / p);
}

double lq_seq(const std::vector<double>& a, double q) {
    if (!(q > 0.0)) throw std::invalid_argument("lq_seq: q must be positive");
    if (std::isinf(q)) {
        double mx = 0.0;
        for (double x : a) mx = std::max(mx, std::fabs(x));
        return mx;
    }
    double s = 0.0;
    for (double x : a) s += std::pow(std::fabs(x), q);
    return std::pow(s, 1.0 / q);
}

std::vector<GridFunction> band_decompose(const GridFunction& u, const BandSystem& sys, int J) {
    if (J < 0) J = sys.top_level;
    auto spec = dft(u);
    std::vector<GridFunction> out;
    out.reserve(static_cast<std::size_t>(J) + 1);
    for (int j = 0; j <= J; ++j) {
        auto band = spec;
        apply_band(band, *u.grid, sys, j);
        bool occupied = false;
        for (const cplx& z : band)
            if (z != cplx{0.0, 0.0}) {
                occupied = true;
                break;
            }
        out.push_back(occupied ? idft(u.grid, band) : GridFunction(u.grid));
    }
    return out;
}

double besov_from_band_norms(const std::vector<double>& band_lp, double s, double q) {
    std::vector<double> a(band_lp.size());
    for (std::size_t j = 0; j < band_lp.size(); ++j)
        a[j] = std::exp2(s * static_cast<double>(j)) * band_lp[j];
    return lq_seq(a, q);
}

double besov_norm(const GridFunction& u, const BandSystem& sys, double s, double p, double q, int J) {
    auto bands = band_decompose(u, sys, J);
    std::vector<double> lp(bands.size());
    for (std::size_t j = 0; j < bands.size(); ++j) lp[j] = lp_norm(bands[j], p);
    return besov_from_band_norms(lp, s, q);
}

double tl_from_bands(const std::vector<GridFunction>& bands, double s, double p, double q) {
    if (std::isinf(p))
        throw std::invalid_argument("tl_norm: p = inf is outside the Triebel-Lizorkin scale here");
    if (bands.empty()) return 0.0;
    const GridPtr& grid = bands[0].grid;
    std::vector<double> w(bands.size());
    for (std::size_t j = 0; j < bands.size(); ++j) w[j] = std::exp2(s * static_cast<double>(j));
    double acc = 0.0;
    const bool qinf = std::isinf(q);
    for (std::size_t k = 0; k < grid->total(); ++k) {
        double g;
        if (qinf) {
            g = 0.0;
            for (std::size_t j = 0; j < bands.size(); ++j)
                g = std::max(g, w[j] * std::abs(bands[j].v[k]));
        } else {
            double s_q = 0.0;
            for (std::size_t j = 0; j < bands.size(); ++j)
                s_q += std::pow(w[j] * std::abs(bands[j].v[k]), q);
            g = std::pow(s_q, 1.0 / q);
        }
        acc += std::pow(g, p);
    }
    return std::pow(acc * grid->cell_volume(), 1.0 / p);
}

double tl_norm(const GridFunction& u, const BandSystem& sys, double s, double p, double q, int J) {
    auto bands = band_decompose(u, sys, J);
    return tl_from_bands(bands, s, p, q);
}

double weighted_cumulative_ratio(const std::vector<double>& a, double s, double q, double r) {
    if (!(s < 0.0)) throw std::invalid_argument("weighted_cumulative_ratio: requires s < 0");
    if (!(r > 0.0)) throw std::invalid_argument("weighted_cumulative_ratio: requires r > 0");
    std::vector<double> lhs(a.size()), rhs(a.size());
    const bool rinf = std::isinf(r);
    double cum = 0.0;  // running r-sum, or running max for r = inf
    for (std::size_t j = 0; j < a.size(); ++j) {
        cum = rinf ? std::max(cum, std::fabs(a[j])) : cum + std::pow(std::fabs(a[j]), r);
        double wj = std::exp2(s * static_cast<double>(j));
        lhs[j] = wj * (rinf ? cum : std::pow(cum, 1.0 / r));
        rhs[j] = wj * std::fabs(a[j]);
    }
    double den = lq_seq(rhs, q);
    if (den == 0.0) return 0.0;
    return lq_seq(lhs, q) / den;
}

}  // namespace paracalc
