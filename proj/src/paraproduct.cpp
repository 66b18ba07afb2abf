#include "paracalc/paraproduct.hpp"

#include <cmath>
#include <numbers>

namespace paracalc {

namespace {

int fine_max_level(const TorusGrid& g) {
    auto fits = [&](int J) {
        for (std::size_t i = 0; i < g.dim(); ++i) {
            double nyq = 2.0 * std::numbers::pi * g.sizes()[i] / g.periods()[i];
            if (!(std::pow(1.3 * std::ldexp(1.0, J), g.weight().m[i]) < nyq)) return false;
        }
        return true;
    };
    if (!fits(0)) return -1;
    int J = 0;
    while (J < 62 && fits(J + 1)) ++J;
    return J;
}

int resolve_level(const TorusGrid& g, int J) {
    int pl = product_level(g);
    if (J < 0) return pl;
    if (J > pl)
        throw AliasError("product level " + std::to_string(J) + " exceeds alias-free limit " +
                         std::to_string(pl));
    return J;
}

struct FinePair {
    GridFunction uf, vf;
    std::vector<cplx> su, sv;
};

FinePair lift(const GridFunction& u, const GridFunction& v) {
    FinePair fp;
    fp.uf = upsample2x(u);
    fp.vf = upsample2x(v);
    fp.su = dft(fp.uf);
    fp.sv = dft(fp.vf);
    return fp;
}

GridFunction filtered(const FinePair& fp, const std::vector<cplx>& spec, const BandSystem& sys,
                      int j, bool lowpass) {
    const GridPtr& g = fp.uf.grid;
    if (lowpass && j < 0) return GridFunction(g);
    auto s = spec;
    if (lowpass)
        apply_lowpass(s, *g, sys, j);
    else
        apply_band(s, *g, sys, j);
    return idft(g, s);
}

// sum_{j=2}^{J} a^{j-2} b_j, the generic low-high half.
GridFunction lowhigh(const GridFunction& a, const GridFunction& b, const BandSystem& sys, int J) {
    J = resolve_level(*a.grid, J);
    FinePair fp = lift(a, b);
    GridFunction acc(fp.uf.grid);
    for (int j = 2; j <= J; ++j) {
        GridFunction lo = filtered(fp, fp.su, sys, j - 2, true);
        GridFunction hi = filtered(fp, fp.sv, sys, j, false);
        acc = acc + lo * hi;
    }
    return acc;
}

GridFunction diagonal(const GridFunction& u, const GridFunction& v, const BandSystem& sys, int J) {
    J = resolve_level(*u.grid, J);
    FinePair fp = lift(u, v);
    std::vector<GridFunction> ub, vb;
    for (int j = 0; j <= J; ++j) {
        ub.push_back(filtered(fp, fp.su, sys, j, false));
        vb.push_back(filtered(fp, fp.sv, sys, j, false));
    }
    GridFunction acc(fp.uf.grid);
    for (int j = 0; j <= J; ++j) {
        acc = acc + ub[j] * vb[j];
        if (j >= 1) acc = acc + ub[j - 1] * vb[j] + ub[j] * vb[j - 1];
    }
    return acc;
}

}  // namespace

int product_level(const TorusGrid& g) {
    int base = g.max_level();
    int fine = fine_max_level(g);
    return std::min(base, fine - 1);
}

GridFunction pi1(const GridFunction& u, const GridFunction& v, const BandSystem& sys, int J) {
    return lowhigh(u, v, sys, J);
}

GridFunction pi3(const GridFunction& u, const GridFunction& v, const BandSystem& sys, int J) {
    return lowhigh(v, u, sys, J);
}

GridFunction pi2(const GridFunction& u, const GridFunction& v, const BandSystem& sys, int J) {
    return diagonal(u, v, sys, J);
}

GridFunction pi_product(const GridFunction& u, const GridFunction& v, const BandSystem& sys, int k) {
    FinePair fp = lift(u, v);
    if (k < 0) return GridFunction(fp.uf.grid);
    int pl = product_level(*u.grid);
    if (k > pl)
        throw AliasError("truncation level " + std::to_string(k) + " exceeds alias-free limit " +
                         std::to_string(pl));
    GridFunction lu = filtered(fp, fp.su, sys, k, true);
    GridFunction lv = filtered(fp, fp.sv, sys, k, true);
    return lu * lv;
}

ParaproductResult decompose(const GridFunction& u, const GridFunction& v, const BandSystem& sys,
                            int J) {
    J = resolve_level(*u.grid, J);
    ParaproductResult r;
    r.level = J;
    r.pi1 = pi1(u, v, sys, J);
    r.pi2 = pi2(u, v, sys, J);
    r.pi3 = pi3(u, v, sys, J);
    r.total = pi_product(u, v, sys, J);
    return r;
}

std::vector<SupportRow> spectral_support_report(const GridFunction& u, const GridFunction& v,
                                                const BandSystem& sys, int J) {
    J = resolve_level(*u.grid, J);
    FinePair fp = lift(u, v);
    const TorusGrid& g = *fp.uf.grid;
    const double r = sys.profile.a, R = sys.profile.b;

    auto leak = [&](const GridFunction& block, double inner, double outer) {
        auto spec = dft(block);
        double peak = 0.0, outside = 0.0;
        const auto& mod = g.modulus();
        for (std::size_t k = 0; k < spec.size(); ++k) {
            double m = std::abs(spec[k]);
            peak = std::max(peak, m);
            if (mod[k] < inner || mod[k] > outer) outside = std::max(outside, m);
        }
        return peak > 0.0 ? outside / peak : 0.0;
    };

    std::vector<SupportRow> rows;
    for (int j = 0; j <= J; ++j) {
        SupportRow row;
        row.j = j;
        double two_j = std::ldexp(1.0, j);
        if (j >= 2) {
            GridFunction s1 = filtered(fp, fp.su, sys, j - 2, true) * filtered(fp, fp.sv, sys, j, false);
            row.low_high_leak = leak(s1, std::fabs(R / 4.0 - r / 2.0) * two_j, 1.25 * R * two_j);
        }
        GridFunction uj = filtered(fp, fp.su, sys, j, false);
        GridFunction vj = filtered(fp, fp.sv, sys, j, false);
        GridFunction s2 = uj * vj;
        if (j >= 1) {
            s2 = s2 + filtered(fp, fp.su, sys, j - 1, false) * vj +
                 uj * filtered(fp, fp.sv, sys, j - 1, false);
        }
        row.diagonal_leak = leak(s2, -1.0, 2.0 * R * two_j);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace paracalc
