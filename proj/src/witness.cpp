#include "paracalc/witness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "paracalc/norms.hpp"
#include "paracalc/util.hpp"

namespace paracalc {

namespace {

const CutoffProfile P = CutoffProfile::standard();

// Frequency-side formulas.  theta: small ball at the origin; rho: annulus
// 3/4 <= [xi] <= 1, real and sign-definite; omega: the part of the rho
// annulus near the unit vector zeta on the first Euclidean axis.
double theta_hat_raw(double r) { return P(26.0 * r); }

double rho_hat(double r) { return P(1.3 * r) - P(44.0 / 30.0 * r); }

std::size_t zeta_axis(const Weight& w) {
    for (std::size_t j = 0; j < w.dim(); ++j)
        if (approx_eq(w.m[j], 1.0)) return j;
    throw std::logic_error("weight has no exponent equal to 1");
}

double omega_hat_raw(const Point& xi, double r, const Weight& w, std::size_t za) {
    double f = rho_hat(r);
    if (f == 0.0) return 0.0;
    Point y = xi;
    y[za] -= 1.0;
    return f * P(13.0 / 3.0 * aniso_modulus(y, w));
}

void check_axis_nyquist(const TorusGrid& g, std::size_t axis, double radius, const char* what) {
    double nyq = std::numbers::pi * g.sizes()[axis] / g.periods()[axis];
    if (!(radius < nyq))
        throw AliasError(std::string(what) + " spectrum exceeds grid Nyquist limit");
}

void check_ball_nyquist(const TorusGrid& g, double radius, const char* what) {
    // [xi] <= R confines |xi_i| to R^{m_i}
    for (std::size_t i = 0; i < g.dim(); ++i)
        check_axis_nyquist(g, i, std::pow(radius, g.weight().m[i]), what);
}

void normalize_unit_at_origin(std::vector<cplx>& spec, const TorusGrid& g, const char* what) {
    cplx sum{0.0, 0.0};
    for (const cplx& z : spec) sum += z;
    double v0 = (sum / g.volume()).real();
    if (!(std::fabs(v0) > 1e-14)) throw ResolutionError(std::string(what) + " unresolved on this grid");
    for (cplx& z : spec) z /= v0;
}

void require_resolution(std::size_t nonzero, const char* what) {
    if (nonzero < 8)
        throw ResolutionError(std::string(what) + " spans fewer than 8 frequency bins");
}

std::vector<cplx> theta_member_spectrum(const GridPtr& grid, int k) {
    const TorusGrid& g = *grid;
    const Weight& w = g.weight();
    const std::size_t za = zeta_axis(w);
    const double shift = k == 0 ? 0.0 : (k > 0 ? 1.0 : -1.0) * std::ldexp(1.0, std::abs(k));
    if (k != 0) check_axis_nyquist(g, za, std::fabs(shift) + 0.06, "theta_k");
    std::vector<cplx> spec(g.total());
    const auto& mod = g.modulus();
    parallel_for(g.total(), [&](std::size_t lo, std::size_t hi) {
        Point xi(g.dim());
        for (std::size_t i = lo; i < hi; ++i) {
            double val = 0.0;
            if (k == 0) {
                val = theta_hat_raw(mod[i]);
            } else if (std::fabs(mod[i] - std::fabs(shift)) <= 0.1) {
                for (std::size_t a = 0; a < g.dim(); ++a) xi[a] = g.freq(i, a);
                xi[za] -= shift;
                val = theta_hat_raw(aniso_modulus(xi, w));
            }
            spec[i] = val;
        }
    });
    normalize_unit_at_origin(spec, g, "theta");
    return spec;
}

std::vector<cplx> rho_member_spectrum(const GridPtr& grid, int k) {
    const TorusGrid& g = *grid;
    check_ball_nyquist(g, std::ldexp(1.05, k), "rho_k");
    const double scale = std::ldexp(1.0, -k);
    const double amp = std::exp2(-static_cast<double>(k) * g.weight().total);
    std::vector<cplx> spec(g.total());
    const auto& mod = g.modulus();
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < g.total(); ++i) {
        double v = rho_hat(scale * mod[i]);
        if (v != 0.0) ++nonzero;
        spec[i] = amp * v;
    }
    require_resolution(nonzero, "rho_k annulus");
    return spec;
}

std::vector<cplx> omega_member_spectrum(const GridPtr& grid, int k) {
    const TorusGrid& g = *grid;
    const Weight& w = g.weight();
    const std::size_t za = zeta_axis(w);
    check_ball_nyquist(g, std::ldexp(1.05, k), "omega_k");
    const double scale = std::ldexp(1.0, -k);
    const double amp = std::exp2(-static_cast<double>(k) * w.total);
    std::vector<cplx> spec(g.total());
    const auto& mod = g.modulus();
    std::size_t nonzero = 0;
    std::mutex count_mutex;
    parallel_for(g.total(), [&](std::size_t lo, std::size_t hi) {
        Point y(g.dim());
        std::size_t local = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            double r = scale * mod[i];
            double val = 0.0;
            if (rho_hat(r) != 0.0) {
                // resolution is a property of the annulus scale, not of the
                // one-sided zeta window carved out of it
                ++local;
                for (std::size_t a = 0; a < g.dim(); ++a)
                    y[a] = std::pow(scale, w.m[a]) * g.freq(i, a);
                val = omega_hat_raw(y, r, w, za);
            }
            spec[i] = amp * val;
        }
        std::lock_guard<std::mutex> lock(count_mutex);
        nonzero += local;
    });
    require_resolution(nonzero, "omega_k annulus piece");
    normalize_unit_at_origin(spec, g, "omega");
    return spec;
}

std::vector<cplx> family_spectrum(const GridPtr& grid, const WitnessSpec& spec) {
    if (spec.N < 1) throw std::invalid_argument("witness family needs N >= 1");
    std::vector<cplx> acc(grid->total(), cplx{0.0, 0.0});
    auto add = [&](double coeff, const std::vector<cplx>& s) {
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += coeff * s[i];
    };
    if (spec.kind == "theta_family_plus" || spec.kind == "theta_family_minus") {
        int sign = spec.kind == "theta_family_plus" ? 1 : -1;
        for (int k = 1; k <= spec.N; ++k)
            add(std::exp2(-spec.t * k), theta_member_spectrum(grid, sign * k));
    } else if (spec.kind == "rho_family") {
        for (int k = spec.l + 1; k <= spec.l + spec.N; ++k)
            add(std::exp2(-spec.t * k), rho_member_spectrum(grid, k));
    } else if (spec.kind == "omega_family") {
        for (int k = spec.N + 1; k <= 2 * spec.N; ++k)
            add(std::exp2(-spec.t * k), omega_member_spectrum(grid, k));
    } else if (spec.kind == "Omega_family") {
        for (int k = 2; k <= spec.N + 1; ++k)
            add(std::exp2(-spec.t * std::exp2(k)), omega_member_spectrum(grid, 1 << k));
    } else {
        throw std::invalid_argument("unknown witness family: " + spec.kind);
    }
    return acc;
}

GridFunction pointwise(const GridFunction& a, const GridFunction& b) { return a * b; }

}  // namespace

WitnessSpec parse_witness_spec(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    WitnessSpec s;
    s.kind = j.at("kind").get<std::string>();
    s.k = j.value("k", 0);
    s.l = j.value("l", 0);
    s.N = j.value("N", 0);
    s.t = j.value("t", 0.0);
    return s;
}

GridFunction make_witness(const GridPtr& grid, const WitnessSpec& spec) {
    const std::string& k = spec.kind;
    if (k == "theta") return idft(grid, theta_member_spectrum(grid, 0));
    if (k == "rho") return idft(grid, rho_member_spectrum(grid, 0));
    if (k == "omega") return idft(grid, omega_member_spectrum(grid, 0));
    if (k == "theta_k") return idft(grid, theta_member_spectrum(grid, spec.k));
    if (k == "rho_k") return idft(grid, rho_member_spectrum(grid, spec.k));
    if (k == "omega_k") return idft(grid, omega_member_spectrum(grid, spec.k));
    if (k == "rho_sq_k") {
        check_ball_nyquist(*grid, std::ldexp(1.05, spec.k + 1), "rho_sq_k");
        GridFunction r = idft(grid, rho_member_spectrum(grid, spec.k));
        return pointwise(r, r);
    }
    if (k == "omega_sq_k") {
        check_ball_nyquist(*grid, std::ldexp(1.05, spec.k + 1), "omega_sq_k");
        GridFunction w = idft(grid, omega_member_spectrum(grid, spec.k));
        return pointwise(w, w);
    }
    if (k == "theta_theta_k") {
        GridFunction th = idft(grid, theta_member_spectrum(grid, 0));
        GridFunction tk = idft(grid, theta_member_spectrum(grid, spec.k));
        return pointwise(th, tk);
    }
    if (k == "theta_omega_k") {
        check_ball_nyquist(*grid, std::ldexp(1.05, spec.k) + 0.06, "theta_omega_k");
        GridFunction th = idft(grid, theta_member_spectrum(grid, 0));
        GridFunction wk = idft(grid, omega_member_spectrum(grid, spec.k));
        return pointwise(th, wk);
    }
    if (k == "omega_pair") {
        if (spec.N < 4) throw std::invalid_argument("omega_pair needs N >= 4");
        check_ball_nyquist(*grid, std::ldexp(1.05, 3 * spec.N + 1), "omega_pair");
        GridFunction hi = idft(grid, omega_member_spectrum(grid, 3 * spec.N));
        WitnessSpec fam{"omega_family", 0, 0, spec.N, 0.0};
        GridFunction fam_fn = idft(grid, family_spectrum(grid, fam));
        return pointwise(hi, fam_fn);
    }
    return idft(grid, family_spectrum(grid, spec));
}

// ---------------------------------------------------------------------------
// Continuum evaluation by quadrature of the frequency formulas.

namespace {

struct QuadTable {
    std::vector<Point> nodes;
    std::vector<double> weights;  // f_hat(node) * dvol / (2 pi)^n, normalized
};

std::string weight_key(const Weight& w) {
    std::ostringstream os;
    os.precision(17);
    for (double m : w.m) os << m << ",";
    return os.str();
}

const QuadTable& quad_table(const std::string& kind, const Weight& w) {
    static std::map<std::string, QuadTable> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    std::string key = kind + "|" + weight_key(w);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const std::size_t n = w.dim();
    const double box = kind == "theta" ? 0.055 : 1.05;
    const std::size_t K = n == 1 ? 8192 : (n == 2 ? 220 : 48);
    const double h = 2.0 * box / K;
    const double dvol = std::pow(h, static_cast<double>(n));
    const double inv2pin = std::pow(2.0 * std::numbers::pi, -static_cast<double>(n));
    const std::size_t za = zeta_axis(w);

    QuadTable tab;
    std::vector<std::size_t> idx(n, 0);
    Point xi(n);
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= K;
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (std::size_t i = n; i-- > 0;) {
            idx[i] = rem % K;
            rem /= K;
        }
        for (std::size_t i = 0; i < n; ++i) xi[i] = -box + (idx[i] + 0.5) * h;
        double r = aniso_modulus(xi, w);
        double f;
        if (kind == "theta")
            f = theta_hat_raw(r);
        else if (kind == "rho")
            f = rho_hat(r);
        else if (kind == "omega")
            f = omega_hat_raw(xi, r, w, za);
        else
            throw std::invalid_argument("witness_eval: unknown base kind " + kind);
        if (f != 0.0) {
            tab.nodes.push_back(xi);
            tab.weights.push_back(f * dvol * inv2pin);
        }
    }
    if (kind != "rho") {
        // normalize so the evaluator gives exactly 1 at x = 0
        double z = 0.0;
        for (double wt : tab.weights) z += wt;
        for (double& wt : tab.weights) wt /= z;
    }
    return cache.emplace(std::move(key), std::move(tab)).first->second;
}

}  // namespace

cplx witness_eval(const std::string& base_kind, const Weight& w, const Point& x) {
    const QuadTable& tab = quad_table(base_kind, w);
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < tab.nodes.size(); ++i) {
        double phase = 0.0;
        for (std::size_t a = 0; a < x.size(); ++a) phase += x[a] * tab.nodes[i][a];
        acc += tab.weights[i] * std::polar(1.0, phase);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Oracle norms.

namespace {

std::string grid_key(const TorusGrid& g) {
    std::ostringstream os;
    os.precision(17);
    os << weight_key(g.weight());
    for (std::size_t i = 0; i < g.dim(); ++i) os << g.sizes()[i] << ":" << g.periods()[i] << ";";
    return os.str();
}

double cached_value(const std::string& key, const std::function<double()>& compute) {
    static std::map<std::string, double> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    double v = compute();
    std::lock_guard<std::mutex> lock(mtx);
    cache.emplace(key, v);
    return v;
}

/** Grid whose frequency lattice is the caller's shrunk by 2^{-kM}.  A scale-1
 *  base built on it samples the base spectrum at exactly the points the
 *  caller's grid uses for the dilated member, so the dilation identity holds
 *  with one shared quadrature instead of two unrelated ones. */
GridPtr dilation_matched(const GridPtr& grid, int k) {
    if (k == 0) return grid;
    std::vector<double> periods = grid->periods();
    for (std::size_t i = 0; i < periods.size(); ++i)
        periods[i] *= std::exp2(static_cast<double>(k) * grid->weight().m[i]);
    return make_grid(grid->weight(), grid->sizes(), periods);
}

/** Converged 1-D reference grid for scale-1 base norms of family rows; the
 *  members of a family live at many scales, so no single matched grid exists
 *  and the continuum value is the right yardstick.  theta bases stay on the
 *  caller's grid: theta_k is an exact lattice modulation of theta there. */
GridPtr base_norm_grid(const GridPtr& grid, const std::string& base) {
    if (grid->dim() != 1 || base == "theta" || base == "theta_sq") return grid;
    static const GridPtr ref =
        make_grid(Weight::of({1.0}), {1 << 15}, {1024.0 * std::numbers::pi});
    return ref;
}

double base_lp(const GridPtr& grid, const std::string& base, double p) {
    std::ostringstream key;
    key.precision(17);
    key << "base|" << base << "|" << p << "|" << grid_key(*grid);
    return cached_value(key.str(), [&] {
        if (base == "theta_sq") {
            GridFunction th = make_witness(grid, {"theta", 0, 0, 0, 0.0});
            return lp_norm(th * th, p);
        }
        if (base == "rho_sq") {
            GridFunction r = make_witness(grid, {"rho", 0, 0, 0, 0.0});
            return lp_norm(r * r, p);
        }
        if (base == "omega_sq") {
            GridFunction w = make_witness(grid, {"omega", 0, 0, 0, 0.0});
            return lp_norm(w * w, p);
        }
        return lp_norm(make_witness(grid, {base, 0, 0, 0, 0.0}), p);
    });
}

Point symmetric_point(const TorusGrid& g, std::size_t flat) {
    Point x = g.sample_point(flat);
    for (std::size_t i = 0; i < g.dim(); ++i)
        if (x[i] >= 0.5 * g.periods()[i]) x[i] -= g.periods()[i];
    return x;
}

/** || omega * theta(2^{-kM} .) ||_p, quadrature on the grid with the theta
 *  factor evaluated from the continuum formula (it is too wide for the
 *  frequency lattice at large k). */
double theta_omega_factor(const GridPtr& grid, int k, double p) {
    std::ostringstream key;
    key.precision(17);
    key << "thom|" << k << "|" << p << "|" << grid_key(*grid);
    return cached_value(key.str(), [&] {
        GridFunction w = make_witness(grid, {"omega", 0, 0, 0, 0.0});
        const Weight& wt = grid->weight();
        GridFunction prod(grid);
        for (std::size_t i = 0; i < grid->total(); ++i) {
            Point x = symmetric_point(*grid, i);
            for (std::size_t a = 0; a < grid->dim(); ++a)
                x[a] *= std::exp2(-static_cast<double>(k) * wt.m[a]);
            prod.v[i] = w.v[i] * witness_eval("theta", wt, x);
        }
        return lp_norm(prod, p);
    });
}

/** || omega * sum_{j=N}^{2N-1} omega(2^{-jM} .) ||_p, same technique. */
double omega_pair_factor(const GridPtr& grid, int N, double p) {
    std::ostringstream key;
    key.precision(17);
    key << "ompair|" << N << "|" << p << "|" << grid_key(*grid);
    return cached_value(key.str(), [&] {
        GridFunction w = make_witness(grid, {"omega", 0, 0, 0, 0.0});
        const Weight& wt = grid->weight();
        GridFunction prod(grid);
        for (std::size_t i = 0; i < grid->total(); ++i) {
            Point x0 = symmetric_point(*grid, i);
            cplx sum{0.0, 0.0};
            for (int j = N; j <= 2 * N - 1; ++j) {
                Point x = x0;
                for (std::size_t a = 0; a < grid->dim(); ++a)
                    x[a] *= std::exp2(-static_cast<double>(j) * wt.m[a]);
                sum += witness_eval("omega", wt, x);
            }
            prod.v[i] = w.v[i] * sum;
        }
        return lp_norm(prod, p);
    });
}

}  // namespace

double oracle_norm(const GridPtr& grid, const WitnessSpec& spec, char scale, double s, double p,
                   double q) {
    if (scale != 'B' && scale != 'F') throw std::invalid_argument("oracle_norm: scale must be B or F");
    if (scale == 'F' && std::isinf(p))
        throw std::invalid_argument("oracle_norm: p = inf only in the B scale");
    const double mtot = grid->weight().total;
    const double ip = std::isinf(p) ? 0.0 : 1.0 / p;
    const double iq = std::isinf(q) ? 0.0 : 1.0 / q;
    const double k = spec.k;
    const std::string& kind = spec.kind;

    if (kind == "theta" || kind == "rho" || kind == "omega") return base_lp(grid, kind, p);
    if (kind == "theta_k") return base_lp(grid, "theta", p) * std::exp2(std::fabs(k) * s);
    if (kind == "rho_k" || kind == "omega_k") {
        const std::string base = kind == "rho_k" ? "rho" : "omega";
        double b = base_lp(dilation_matched(grid, spec.k), base, p);
        if (spec.k >= 1) return b * std::exp2(k * (s - mtot * ip));
        return b * std::exp2(-k * mtot * ip);
    }
    if (kind == "rho_sq_k") {
        if (spec.k > -1) throw std::invalid_argument("oracle_norm: rho_sq_k requires k <= -1");
        return base_lp(dilation_matched(grid, spec.k), "rho_sq", p) * std::exp2(-k * mtot * ip);
    }
    if (kind == "omega_sq_k") {
        if (spec.k < 1) throw std::invalid_argument("oracle_norm: omega_sq_k requires k >= 1");
        return base_lp(dilation_matched(grid, spec.k), "omega_sq", p) *
               std::exp2(k * (s - mtot * ip) + s);
    }
    if (kind == "theta_theta_k") {
        if (spec.k == 0) throw std::invalid_argument("oracle_norm: theta_theta_k requires k != 0");
        return base_lp(grid, "theta_sq", p) * std::exp2(std::fabs(k) * s);
    }
    if (kind == "theta_omega_k") {
        if (spec.k < 1) throw std::invalid_argument("oracle_norm: theta_omega_k requires k >= 1");
        return theta_omega_factor(dilation_matched(grid, spec.k), spec.k, p) *
               std::exp2(k * (s - mtot * ip));
    }
    if (kind == "theta_family_plus" || kind == "theta_family_minus") {
        if (!approx_eq(spec.t, s, 1e-9))
            throw std::invalid_argument("oracle_norm: theta family needs decay t = s");
        return base_lp(grid, "theta", p) * std::pow(spec.N, iq);
    }
    if (kind == "rho_family" || kind == "omega_family" || kind == "Omega_family") {
        if (scale != 'B')
            throw std::invalid_argument("oracle_norm: " + kind + " has a closed form in the B scale only");
        if (!approx_eq(spec.t, s - mtot * ip, 1e-9))
            throw std::invalid_argument("oracle_norm: " + kind + " needs decay t = s - |M|/p");
        const std::string base = kind == "rho_family" ? "rho" : "omega";
        return base_lp(base_norm_grid(grid, base), base, p) * std::pow(spec.N, iq);
    }
    if (kind == "omega_pair") {
        if (spec.N < 4) throw std::invalid_argument("oracle_norm: omega_pair requires N >= 4");
        return omega_pair_factor(grid, spec.N, p) * std::exp2(3.0 * spec.N * (s - mtot * ip));
    }
    throw std::invalid_argument("oracle_norm: no closed form for kind " + kind);
}

// ---------------------------------------------------------------------------
// Limit demonstrations.

DemoCurve demo_lowpass_concentration(const GridPtr& grid, int kmax, double p) {
    BandSystem sys = grid->bands();
    GridFunction rho = make_witness(grid, {"rho", 0, 0, 0, 0.0});
    const double rho_sq_l1 = std::pow(lp_norm(rho, 2.0), 2.0);
    std::vector<cplx> tgt_spec(grid->total());
    for (std::size_t i = 0; i < grid->total(); ++i)
        tgt_spec[i] = rho_sq_l1 * sys.phi_r(0, grid->modulus()[i]);
    GridFunction target = idft(grid, tgt_spec);

    DemoCurve curve;
    for (int k = 1; k <= kmax; ++k) {
        GridFunction rk = make_witness(grid, {"rho_k", k, 0, 0, 0.0});
        check_ball_nyquist(*grid, std::ldexp(1.05, k + 1), "rho_k^2");
        GridFunction low = band_project(rk * rk, sys, 0);
        cplx amp{std::exp2(k * grid->weight().total), 0.0};
        curve.param.push_back(k);
        curve.value.push_back(lp_norm(amp * low - target, p));
    }
    return curve;
}

DemoCurve demo_dilation_average(const Weight& w, const std::vector<int>& Ns) {
    const std::size_t n = w.dim();
    std::vector<Point> samples;
    const std::size_t za = zeta_axis(w);
    for (int i = -256; i <= 256; ++i) {
        Point x(n, 0.0);
        x[za] = 60.0 * i / 256.0;
        samples.push_back(x);
    }
    std::vector<cplx> base(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) base[i] = witness_eval("omega", w, samples[i]);

    DemoCurve curve;
    for (int N : Ns) {
        double dist = 0.0;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            cplx avg{0.0, 0.0};
            for (int k = N; k <= 2 * N - 1; ++k) {
                Point x = samples[i];
                for (std::size_t a = 0; a < n; ++a) x[a] *= std::exp2(-static_cast<double>(k) * w.m[a]);
                avg += witness_eval("omega", w, x);
            }
            avg /= static_cast<double>(N);
            dist = std::max(dist, std::abs(base[i] * avg - base[i]));
        }
        curve.param.push_back(N);
        curve.value.push_back(dist);
    }
    return curve;
}

double demo_modulation_pairing(const GridPtr& grid, int N, double s0) {
    BandSystem sys = grid->bands();
    check_ball_nyquist(*grid, std::ldexp(1.0, N) + 0.2, "theta family product");
    GridFunction fp = make_witness(grid, {"theta_family_plus", 0, 0, N, s0});
    GridFunction fm = make_witness(grid, {"theta_family_minus", 0, 0, N, -s0});
    GridFunction low = band_project(fp * fm, sys, 0);
    GridFunction th = make_witness(grid, {"theta", 0, 0, 0, 0.0});
    GridFunction target = cplx{static_cast<double>(N), 0.0} * (th * th);
    return lp_norm(low - target, INFINITY) / lp_norm(target, INFINITY);
}

double demo_band_extraction(int N, int kk, double t0, double t1) {
    GridPtr grid = make_grid(Weight::of({1.0}), {1 << 21}, {8.0 * std::numbers::pi});
    BandSystem sys = grid->bands();
    check_ball_nyquist(*grid, std::ldexp(2.1, 1 << (N + 1)), "Omega family product");
    GridFunction f0 = make_witness(grid, {"Omega_family", 0, 0, N, t0});
    GridFunction f1 = make_witness(grid, {"Omega_family", 0, 0, N, t1});
    int level = 1 << kk;
    GridFunction part = band_project(f0 * f1, sys, level + 1);
    GridFunction wk = make_witness(grid, {"omega_k", level, 0, 0, 0.0});
    GridFunction target = cplx{std::exp2(-static_cast<double>(level) * (t0 + t1)), 0.0} * (wk * wk);
    return lp_norm(part - target, 2.0) / lp_norm(target, 2.0);
}

}  // namespace paracalc
