#ifndef PARACALC_GRID_HPP
#define PARACALC_GRID_HPP

#include <complex>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "paracalc/cutoff.hpp"
#include "paracalc/weight.hpp"

namespace paracalc {

using cplx = std::complex<double>;

/** Requested frequency band does not fit under the grid Nyquist limit. */
struct AliasError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Requested feature is too coarse on the grid (spans < 8 frequency bins). */
struct ResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Uniform grid on the torus prod_i [0, L_i) with N_i (even) points per axis.
 *  Frequencies are the signed lattice xi_k = 2 pi k / L_i, k in [-N/2, N/2).
 *  The anisotropic modulus of every frequency bin is tabulated once. */
class TorusGrid {
public:
    TorusGrid(Weight w, std::vector<int> sizes, std::vector<double> periods);

    const Weight& weight() const { return weight_; }
    const std::vector<int>& sizes() const { return sizes_; }
    const std::vector<double>& periods() const { return periods_; }
    std::size_t total() const { return total_; }
    double cell_volume() const { return cell_volume_; }
    double volume() const { return volume_; }
    std::size_t dim() const { return sizes_.size(); }

    /** Signed frequency index along one axis for a flat row-major bin. */
    long signed_index(std::size_t flat, std::size_t axis) const;
    /** Frequency component xi_axis of a flat bin. */
    double freq(std::size_t flat, std::size_t axis) const;
    Point freq_point(std::size_t flat) const;
    /** Sample point x of a flat bin (row-major). */
    Point sample_point(std::size_t flat) const;

    /** [xi] for every frequency bin, same row-major layout as spectra. */
    const std::vector<double>& modulus() const { return modulus_; }

    /** Largest J >= 0 with (13/10 2^J)^{m_i} < pi N_i / L_i on every axis;
     *  -1 when not even level 0 fits. */
    int max_level() const { return max_level_; }

    BandSystem bands(CutoffProfile profile = CutoffProfile::standard()) const;

private:
    Weight weight_;
    std::vector<int> sizes_;
    std::vector<double> periods_;
    std::vector<std::size_t> strides_;
    std::size_t total_ = 0;
    double cell_volume_ = 1.0;
    double volume_ = 1.0;
    std::vector<double> modulus_;
    int max_level_ = -1;
};

using GridPtr = std::shared_ptr<const TorusGrid>;

GridPtr make_grid(Weight w, std::vector<int> sizes, std::vector<double> periods);
/** Default desk grid: 1D, M = (1), L = 64 pi, N = 4096. */
GridPtr default_grid();

/** Complex samples over a TorusGrid, row-major. */
struct GridFunction {
    GridPtr grid;
    std::vector<cplx> v;

    GridFunction() = default;
    explicit GridFunction(GridPtr g) : grid(std::move(g)), v(grid->total(), cplx{0.0, 0.0}) {}
};

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(const GridFunction& a, const GridFunction& b);  // pointwise
GridFunction operator*(cplx c, const GridFunction& a);

/** Forward transform, scaled by the cell volume so it approximates the
 *  continuum integral int e^{-i x xi} u(x) dx at the lattice frequencies. */
std::vector<cplx> dft(const GridFunction& u);
/** Inverse of dft (exact round trip on the lattice). */
GridFunction idft(const GridPtr& grid, const std::vector<cplx>& spectrum);

/** Build samples from a continuum Fourier-transform formula evaluated on the
 *  frequency lattice (i.e. the periodization of the continuum function). */
GridFunction from_spectrum(const GridPtr& grid, const std::vector<cplx>& spectrum);

/** Band projection u_j = F^{-1} Phi_j F u.  Throws AliasError when the band
 *  support exceeds the Nyquist region. */
GridFunction band_project(const GridFunction& u, const BandSystem& sys, int j);
/** Low-pass u^j = F^{-1} Psi_j F u (zero function for j < 0). */
GridFunction smooth_truncate(const GridFunction& u, const BandSystem& sys, int j);

/** Spectrum-side versions (input spectrum gets multiplied by the symbol). */
void apply_band(std::vector<cplx>& spectrum, const TorusGrid& grid, const BandSystem& sys, int j);
void apply_lowpass(std::vector<cplx>& spectrum, const TorusGrid& grid, const BandSystem& sys, int j);

/** Zero-pad the spectrum to a grid with 2 N_i points per axis (same periods),
 *  doubling the Nyquist radius; exact for band-limited data. */
GridFunction upsample2x(const GridFunction& u);

/** ALPG1 file I/O: ASCII header ("ALPG1 n", then "m_i N_i L_i" per axis),
 *  followed by little-endian float64 re/im pairs in row-major order. */
void write_alpg(const std::string& path, const GridFunction& u);
GridFunction read_alpg(const std::string& path);

}  // namespace paracalc

#endif
