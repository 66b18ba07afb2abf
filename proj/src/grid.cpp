#include "paracalc/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>

#include "paracalc/util.hpp"

namespace paracalc {

TorusGrid::TorusGrid(Weight w, std::vector<int> sizes, std::vector<double> periods)
    : weight_(std::move(w)), sizes_(std::move(sizes)), periods_(std::move(periods)) {
    const std::size_t n = weight_.dim();
    if (sizes_.size() != n || periods_.size() != n)
        throw std::invalid_argument("grid: dimension mismatch");
    total_ = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (sizes_[i] < 2 || sizes_[i] % 2 != 0)
            throw std::invalid_argument("grid: sizes must be even and >= 2");
        if (!(periods_[i] > 0.0)) throw std::invalid_argument("grid: periods must be positive");
        total_ *= static_cast<std::size_t>(sizes_[i]);
        cell_volume_ *= periods_[i] / sizes_[i];
        volume_ *= periods_[i];
    }
    strides_.assign(n, 1);
    for (std::size_t i = n; i-- > 1;) strides_[i - 1] = strides_[i] * static_cast<std::size_t>(sizes_[i]);

    // Largest alias-free band level: support of Phi_J reaches [xi] = 13/10 2^J,
    // and [xi] <= R forces |xi_i| <= R^{m_i}, which must stay under Nyquist.
    auto fits = [&](int J) {
        for (std::size_t i = 0; i < n; ++i) {
            double nyq = std::numbers::pi * sizes_[i] / periods_[i];
            if (!(std::pow(1.3 * std::ldexp(1.0, J), weight_.m[i]) < nyq)) return false;
        }
        return true;
    };
    if (fits(0)) {
        max_level_ = 0;
        while (max_level_ < 62 && fits(max_level_ + 1)) ++max_level_;
    }

    modulus_.resize(total_);
    const bool iso = weight_.isotropic();
    parallel_for(total_, [&](std::size_t lo, std::size_t hi) {
        Point xi(n);
        for (std::size_t k = lo; k < hi; ++k) {
            for (std::size_t i = 0; i < n; ++i) xi[i] = freq(k, i);
            if (iso) {
                double s = 0.0;
                for (double c : xi) s += c * c;
                modulus_[k] = std::sqrt(s);
            } else {
                modulus_[k] = aniso_modulus(xi, weight_);
            }
        }
    });
}

long TorusGrid::signed_index(std::size_t flat, std::size_t axis) const {
    long idx = static_cast<long>((flat / strides_[axis]) % static_cast<std::size_t>(sizes_[axis]));
    long N = sizes_[axis];
    return idx < N / 2 ? idx : idx - N;
}

double TorusGrid::freq(std::size_t flat, std::size_t axis) const {
    return 2.0 * std::numbers::pi * signed_index(flat, axis) / periods_[axis];
}

Point TorusGrid::freq_point(std::size_t flat) const {
    Point xi(dim());
    for (std::size_t i = 0; i < dim(); ++i) xi[i] = freq(flat, i);
    return xi;
}

Point TorusGrid::sample_point(std::size_t flat) const {
    Point x(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        std::size_t idx = (flat / strides_[i]) % static_cast<std::size_t>(sizes_[i]);
        x[i] = periods_[i] * static_cast<double>(idx) / sizes_[i];
    }
    return x;
}

BandSystem TorusGrid::bands(CutoffProfile profile) const {
    if (max_level_ < 0) throw ResolutionError("grid too coarse for any dyadic band");
    return BandSystem{weight_, profile, max_level_};
}

GridPtr make_grid(Weight w, std::vector<int> sizes, std::vector<double> periods) {
    return std::make_shared<const TorusGrid>(std::move(w), std::move(sizes), std::move(periods));
}

GridPtr default_grid() {
    static GridPtr g = make_grid(Weight::of({1.0}), {4096}, {64.0 * std::numbers::pi});
    return g;
}

namespace {

void check_same_grid(const GridFunction& a, const GridFunction& b) {
    if (a.grid == b.grid) return;
    // distinct objects with identical geometry are interchangeable
    if (a.grid && b.grid && a.grid->weight().m == b.grid->weight().m &&
        a.grid->sizes() == b.grid->sizes() && a.grid->periods() == b.grid->periods())
        return;
    throw std::invalid_argument("grid functions live on different grids");
}

std::mutex fftw_mutex;

void run_fft(const TorusGrid& g, const std::vector<cplx>& in, std::vector<cplx>& out, int sign) {
    out.resize(in.size());
    std::vector<int> dims(g.sizes().begin(), g.sizes().end());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(),
                             reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                             reinterpret_cast<fftw_complex*>(out.data()), sign,
                             FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        fftw_destroy_plan(plan);
    }
}

}  // namespace

std::vector<cplx> dft(const GridFunction& u) {
    std::vector<cplx> spec;
    run_fft(*u.grid, u.v, spec, FFTW_FORWARD);
    const double scale = u.grid->cell_volume();
    for (auto& z : spec) z *= scale;
    return spec;
}

GridFunction idft(const GridPtr& grid, const std::vector<cplx>& spectrum) {
    if (spectrum.size() != grid->total()) throw std::invalid_argument("idft: spectrum size mismatch");
    GridFunction u(grid);
    run_fft(*grid, spectrum, u.v, FFTW_BACKWARD);
    const double scale = 1.0 / grid->volume();
    for (auto& z : u.v) z *= scale;
    return u;
}

GridFunction from_spectrum(const GridPtr& grid, const std::vector<cplx>& spectrum) {
    return idft(grid, spectrum);
}

void apply_band(std::vector<cplx>& spectrum, const TorusGrid& grid, const BandSystem& sys, int j) {
    if (j > grid.max_level())
        throw AliasError("band level " + std::to_string(j) + " exceeds grid Nyquist limit");
    const auto& mod = grid.modulus();
    for (std::size_t k = 0; k < spectrum.size(); ++k) spectrum[k] *= sys.phi_r(j, mod[k]);
}

void apply_lowpass(std::vector<cplx>& spectrum, const TorusGrid& grid, const BandSystem& sys, int j) {
    if (j > grid.max_level())
        throw AliasError("low-pass level " + std::to_string(j) + " exceeds grid Nyquist limit");
    const auto& mod = grid.modulus();
    for (std::size_t k = 0; k < spectrum.size(); ++k) spectrum[k] *= sys.psi_r(j, mod[k]);
}

GridFunction band_project(const GridFunction& u, const BandSystem& sys, int j) {
    auto spec = dft(u);
    apply_band(spec, *u.grid, sys, j);
    return idft(u.grid, spec);
}

GridFunction smooth_truncate(const GridFunction& u, const BandSystem& sys, int j) {
    if (j < 0) return GridFunction(u.grid);
    auto spec = dft(u);
    apply_lowpass(spec, *u.grid, sys, j);
    return idft(u.grid, spec);
}

GridFunction upsample2x(const GridFunction& u) {
    const TorusGrid& g = *u.grid;
    std::vector<int> sizes2(g.sizes());
    for (int& N : sizes2) N *= 2;
    GridPtr fine = make_grid(g.weight(), sizes2, g.periods());

    auto spec = dft(u);
    std::vector<cplx> spec2(fine->total(), cplx{0.0, 0.0});
    const std::size_t n = g.dim();
    for (std::size_t k = 0; k < spec.size(); ++k) {
        // same signed lattice frequency on the doubled grid
        std::size_t flat = 0;
        std::size_t rem = k;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t N = static_cast<std::size_t>(g.sizes()[i]);
            std::size_t stride_tail = 1;
            for (std::size_t t = i + 1; t < n; ++t) stride_tail *= static_cast<std::size_t>(g.sizes()[t]);
            long idx = static_cast<long>(rem / stride_tail);
            rem %= stride_tail;
            long s = idx < static_cast<long>(N) / 2 ? idx : idx - static_cast<long>(N);
            long N2 = 2 * static_cast<long>(N);
            long idx2 = s >= 0 ? s : s + N2;
            std::size_t stride2_tail = 1;
            for (std::size_t t = i + 1; t < n; ++t) stride2_tail *= static_cast<std::size_t>(2 * g.sizes()[t]);
            flat += static_cast<std::size_t>(idx2) * stride2_tail;
        }
        spec2[flat] = spec[k];
    }
    return idft(fine, spec2);
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    check_same_grid(a, b);
    GridFunction r = a;
    for (std::size_t k = 0; k < r.v.size(); ++k) r.v[k] += b.v[k];
    return r;
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    check_same_grid(a, b);
    GridFunction r = a;
    for (std::size_t k = 0; k < r.v.size(); ++k) r.v[k] -= b.v[k];
    return r;
}

GridFunction operator*(const GridFunction& a, const GridFunction& b) {
    check_same_grid(a, b);
    GridFunction r = a;
    for (std::size_t k = 0; k < r.v.size(); ++k) r.v[k] *= b.v[k];
    return r;
}

GridFunction operator*(cplx c, const GridFunction& a) {
    GridFunction r = a;
    for (auto& z : r.v) z *= c;
    return r;
}

void write_alpg(const std::string& path, const GridFunction& u) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    const TorusGrid& g = *u.grid;
    out << "ALPG1 " << g.dim() << "\n";
    for (std::size_t i = 0; i < g.dim(); ++i) {
        std::ostringstream line;
        line.precision(17);
        line << g.weight().m[i] << " " << g.sizes()[i] << " " << g.periods()[i] << "\n";
        out << line.str();
    }
    static_assert(sizeof(double) == 8);
    for (const cplx& z : u.v) {
        double re = z.real(), im = z.imag();
        out.write(reinterpret_cast<const char*>(&re), 8);
        out.write(reinterpret_cast<const char*>(&im), 8);
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

GridFunction read_alpg(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string magic;
    std::size_t n = 0;
    in >> magic >> n;
    if (magic != "ALPG1" || n == 0 || n > 16) throw std::runtime_error("bad ALPG1 header in " + path);
    std::vector<double> m(n), L(n);
    std::vector<int> N(n);
    for (std::size_t i = 0; i < n; ++i) in >> m[i] >> N[i] >> L[i];
    in.ignore(2, '\n');
    if (!in) throw std::runtime_error("bad ALPG1 axis line in " + path);
    GridFunction u(make_grid(Weight::of(m), N, L));
    for (cplx& z : u.v) {
        double re, im;
        in.read(reinterpret_cast<char*>(&re), 8);
        in.read(reinterpret_cast<char*>(&im), 8);
        z = {re, im};
    }
    if (!in) throw std::runtime_error("truncated ALPG1 payload in " + path);
    return u;
}

}  // namespace paracalc
