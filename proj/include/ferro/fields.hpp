#pragma once

#include <complex>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ferro/chebyshev.hpp"
#include "ferro/lattice.hpp"

namespace ferro {

using cplx = std::complex<double>;

struct divergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Truncated Fourier coefficient map over the dual lattice block. Real-valued
// fields, so coeff(-k) = conj(coeff(k)); every operation here preserves that.
class SurfaceField {
public:
    SurfaceField() = default;
    explicit SurfaceField(const Lattice& lat) : lat_(&lat), c_(lat.size(), cplx{}) {}

    const Lattice& lattice() const { return *lat_; }
    bool empty() const { return lat_ == nullptr; }

    cplx coeff(int m, int n) const {
        const int s = lat_->index_of(m, n);
        return s < 0 ? cplx{} : c_[s];
    }
    void set(int m, int n, cplx v) {
        const int s = lat_->index_of(m, n);
        if (s < 0) throw std::invalid_argument("SurfaceField::set: index outside truncation");
        c_[s] = v;
    }
    void add(int m, int n, cplx v) {
        const int s = lat_->index_of(m, n);
        if (s >= 0) c_[s] += v;
    }
    // Real field with a single cosine pair: amp*cos(k_{m,n}.x).
    void add_cos(int m, int n, double amp) {
        add(m, n, cplx(amp / 2.0, 0.0));
        add(-m, -n, cplx(amp / 2.0, 0.0));
    }
    void add_sin(int m, int n, double amp) {
        add(m, n, cplx(0.0, -amp / 2.0));
        add(-m, -n, cplx(0.0, amp / 2.0));
    }

    const std::vector<cplx>& data() const { return c_; }
    std::vector<cplx>& data() { return c_; }

    double eval(Vec2 x) const;      // pointwise value (real)
    double max_hermitian_defect() const;

    SurfaceField& operator+=(const SurfaceField& o);
    SurfaceField& operator-=(const SurfaceField& o);
    SurfaceField& operator*=(double s);

private:
    const Lattice* lat_ = nullptr;
    std::vector<cplx> c_;
};

SurfaceField operator+(SurfaceField a, const SurfaceField& b);
SurfaceField operator-(SurfaceField a, const SurfaceField& b);
SurfaceField operator*(double s, SurfaceField a);

// Exact truncated convolution (fully dealiased product, truncated back to
// the block). Exact whenever the true product fits inside the truncation.
SurfaceField multiply(const SurfaceField& a, const SurfaceField& b);

// (d/dx f, d/dz f): coefficient-wise (i kx, i kz).
std::pair<SurfaceField, SurfaceField> grad_h(const SurfaceField& f);

// || f ||_r = sqrt( C(Gamma) sum (1+|k|^2)^r |f_k|^2 ).
double sobolev_norm(const SurfaceField& f, double r);

// Truncated Neumann series sum_{j<=order} (-scale f)^j for 1/(1 + scale f).
// Throws divergence_error if sup |scale f| >= 1 on an oversampled grid.
SurfaceField reciprocal_one_plus(double scale, const SurfaceField& f, int order);

// Average over the pattern's cyclic rotation group (orders 2/4/6); the
// projection onto the rotation-invariant subspace.
SurfaceField symmetrize(const SurfaceField& f, const Lattice& lat);

// --- physical grid (theta torus) -----------------------------------------
// x(theta) = (theta1 l1 + theta2 l2)/(2 pi); products of band-limited fields
// are alias-free when the grid exceeds the combined bandwidth.

struct GridSize {
    int n1 = 1;
    int n2 = 1;
};
GridSize grid_for(const Lattice& lat, int oversample = 2);

std::vector<double> to_grid(const SurfaceField& f, GridSize g);
SurfaceField from_grid(const Lattice& lat, const std::vector<double>& values, GridSize g);
double grid_sup(const SurfaceField& f, GridSize g);
// Mean of the grid values (= cell average; exact for band-limited fields).
double grid_mean(const std::vector<double>& values);

// --- volume fields --------------------------------------------------------

enum class Strip { Lower, Upper };

// Per-wavevector vertical profiles on a shared Chebyshev-Lobatto grid.
// Lower strip lives on [-depth, 0], upper on [0, depth]; level 0 is the
// trace at y = 0 in both cases.
class VolumeField {
public:
    VolumeField() = default;
    VolumeField(const Lattice& lat, Strip strip, std::shared_ptr<const ChebGrid> grid)
        : lat_(&lat), strip_(strip), grid_(std::move(grid)),
          c_(static_cast<size_t>(lat.size()) * grid_->y.size(), cplx{}) {}

    const Lattice& lattice() const { return *lat_; }
    Strip strip() const { return strip_; }
    const ChebGrid& grid() const { return *grid_; }
    std::shared_ptr<const ChebGrid> grid_ptr() const { return grid_; }
    int ny() const { return static_cast<int>(grid_->y.size()); }

    cplx* profile(int slot) { return c_.data() + static_cast<size_t>(slot) * ny(); }
    const cplx* profile(int slot) const { return c_.data() + static_cast<size_t>(slot) * ny(); }

    SurfaceField level(int j) const;
    void set_level(int j, const SurfaceField& f);
    SurfaceField trace_top() const { return level(0); }

    VolumeField& operator+=(const VolumeField& o);
    VolumeField& operator-=(const VolumeField& o);
    VolumeField& operator*=(double s);

    const std::vector<cplx>& data() const { return c_; }
    std::vector<cplx>& data() { return c_; }

private:
    const Lattice* lat_ = nullptr;
    Strip strip_ = Strip::Lower;
    std::shared_ptr<const ChebGrid> grid_;
    std::vector<cplx> c_;
};

VolumeField vf_dx(const VolumeField& u);
VolumeField vf_dz(const VolumeField& u);
VolumeField vf_dy(const VolumeField& u);
// Per-level product with a surface field (truncated convolution per level).
VolumeField vf_mul_surface(const VolumeField& u, const SurfaceField& s);
// Scale level j by w(y_j).
VolumeField vf_scale_levels(const VolumeField& u, const std::vector<double>& w);

// --- state triples ---------------------------------------------------------

// (eta, Phi', Phi): surface elevation and the two magnetic-potential traces.
// Phi' (upper strip) carries a zero-mean constraint.
struct StateTriple {
    SurfaceField eta;
    SurfaceField phi_upper;
    SurfaceField phi_lower;

    StateTriple() = default;
    explicit StateTriple(const Lattice& lat) : eta(lat), phi_upper(lat), phi_lower(lat) {}

    void project_phi_upper_mean() {
        if (!phi_upper.empty()) phi_upper.set(0, 0, cplx{});
    }
    StateTriple& operator+=(const StateTriple& o);
    StateTriple& operator-=(const StateTriple& o);
    StateTriple& operator*=(double s);
};

StateTriple operator+(StateTriple a, const StateTriple& b);
StateTriple operator-(StateTriple a, const StateTriple& b);
StateTriple operator*(double s, StateTriple a);

double sup_coeff_norm(const SurfaceField& f);
double sup_coeff_norm(const StateTriple& t);

StateTriple symmetrize(const StateTriple& t, const Lattice& lat);

}  // namespace ferro
