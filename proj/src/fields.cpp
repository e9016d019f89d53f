#include "ferro/fields.hpp"

#include <algorithm>
#include <cmath>

namespace ferro {

namespace {

void check_same_lattice(const SurfaceField& a, const SurfaceField& b, const char* who) {
    if (&a.lattice() != &b.lattice())
        throw std::invalid_argument(std::string(who) + ": lattice mismatch");
}

}  // namespace

double SurfaceField::eval(Vec2 x) const {
    double v = 0.0;
    const auto& idx = lat_->indices();
    for (int s = 0; s < lat_->size(); ++s) {
        const Vec2 k = lat_->wavevector(idx[s].first, idx[s].second);
        const double ph = dot(k, x);
        v += c_[s].real() * std::cos(ph) - c_[s].imag() * std::sin(ph);
    }
    return v;
}

double SurfaceField::max_hermitian_defect() const {
    double d = 0.0;
    const auto& idx = lat_->indices();
    for (int s = 0; s < lat_->size(); ++s) {
        const cplx other = coeff(-idx[s].first, -idx[s].second);
        d = std::max(d, std::abs(c_[s] - std::conj(other)));
    }
    return d;
}

SurfaceField& SurfaceField::operator+=(const SurfaceField& o) {
    check_same_lattice(*this, o, "SurfaceField::operator+=");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}
SurfaceField& SurfaceField::operator-=(const SurfaceField& o) {
    check_same_lattice(*this, o, "SurfaceField::operator-=");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}
SurfaceField& SurfaceField::operator*=(double s) {
    for (auto& v : c_) v *= s;
    return *this;
}

SurfaceField operator+(SurfaceField a, const SurfaceField& b) { return a += b; }
SurfaceField operator-(SurfaceField a, const SurfaceField& b) { return a -= b; }
SurfaceField operator*(double s, SurfaceField a) { return a *= s; }

SurfaceField multiply(const SurfaceField& a, const SurfaceField& b) {
    check_same_lattice(a, b, "multiply");
    const Lattice& lat = a.lattice();
    SurfaceField out(lat);
    const auto& idx = lat.indices();
    const auto& av = a.data();
    const auto& bv = b.data();
    auto& ov = out.data();
    const int B = lat.size();
    for (int sa = 0; sa < B; ++sa) {
        const cplx ca = av[sa];
        if (ca == cplx{}) continue;
        const auto [ma, na] = idx[sa];
        for (int sb = 0; sb < B; ++sb) {
            const cplx cb = bv[sb];
            if (cb == cplx{}) continue;
            const int t = lat.index_of(ma + idx[sb].first, na + idx[sb].second);
            if (t >= 0) ov[t] += ca * cb;
        }
    }
    return out;
}

std::pair<SurfaceField, SurfaceField> grad_h(const SurfaceField& f) {
    const Lattice& lat = f.lattice();
    SurfaceField fx(lat), fz(lat);
    const auto& idx = lat.indices();
    for (int s = 0; s < lat.size(); ++s) {
        const Vec2 k = lat.wavevector(idx[s].first, idx[s].second);
        const cplx ik_x(0.0, k.x), ik_z(0.0, k.z);
        fx.data()[s] = ik_x * f.data()[s];
        fz.data()[s] = ik_z * f.data()[s];
    }
    return {std::move(fx), std::move(fz)};
}

double sobolev_norm(const SurfaceField& f, double r) {
    const Lattice& lat = f.lattice();
    const auto& idx = lat.indices();
    double s2 = 0.0;
    for (int s = 0; s < lat.size(); ++s) {
        const Vec2 k = lat.wavevector(idx[s].first, idx[s].second);
        const double k2 = dot(k, k);
        s2 += std::pow(1.0 + k2, r) * std::norm(f.data()[s]);
    }
    return std::sqrt(lat.cell_constant * s2);
}

SurfaceField reciprocal_one_plus(double scale, const SurfaceField& f, int order) {
    const Lattice& lat = f.lattice();
    const double sup = std::abs(scale) * grid_sup(f, grid_for(lat, 4));
    if (sup >= 1.0)
        throw divergence_error("reciprocal_one_plus: sup |scale*f| >= 1, series diverges");
    SurfaceField p = (-scale) * f;
    SurfaceField acc(lat), term(lat);
    acc.set(0, 0, 1.0);
    term.set(0, 0, 1.0);
    for (int j = 1; j <= order; ++j) {
        term = multiply(term, p);
        acc += term;
    }
    return acc;
}

SurfaceField symmetrize(const SurfaceField& f, const Lattice& lat) {
    if (&f.lattice() != &lat) throw std::invalid_argument("symmetrize: lattice mismatch");
    SurfaceField out(lat);
    const auto& idx = lat.indices();
    const double w = 1.0 / lat.rotation_order;
    for (int g = 0; g < lat.rotation_order; ++g) {
        for (int s = 0; s < lat.size(); ++s) {
            int m = idx[s].first, n = idx[s].second;
            for (int r = 0; r < g; ++r) std::tie(m, n) = lat.rotate_index(m, n);
            out.add(m, n, w * f.data()[s]);
        }
    }
    return out;
}

GridSize grid_for(const Lattice& lat, int oversample) {
    const int N = lat.trunc;
    GridSize g;
    g.n1 = std::max(oversample * (2 * N + 1), 8);
    g.n2 = (lat.pattern == Pattern::Rolls) ? 1 : g.n1;
    return g;
}

std::vector<double> to_grid(const SurfaceField& f, GridSize g) {
    const Lattice& lat = f.lattice();
    const int N = lat.trunc;
    const auto& idx = lat.indices();
    // partial[n + N][i1] = sum_m c_{mn} e^{i m theta1}
    std::vector<cplx> partial(static_cast<size_t>(2 * N + 1) * g.n1, cplx{});
    for (int s = 0; s < lat.size(); ++s) {
        const cplx c = f.data()[s];
        if (c == cplx{}) continue;
        const auto [m, n] = idx[s];
        for (int i1 = 0; i1 < g.n1; ++i1) {
            const double th = 2.0 * M_PI * i1 / g.n1;
            partial[static_cast<size_t>(n + N) * g.n1 + i1] +=
                c * cplx(std::cos(m * th), std::sin(m * th));
        }
    }
    std::vector<double> out(static_cast<size_t>(g.n1) * g.n2, 0.0);
    for (int n = -N; n <= N; ++n) {
        const cplx* row = partial.data() + static_cast<size_t>(n + N) * g.n1;
        bool any = false;
        for (int i1 = 0; i1 < g.n1 && !any; ++i1) any = row[i1] != cplx{};
        if (!any) continue;
        for (int i2 = 0; i2 < g.n2; ++i2) {
            const double th = 2.0 * M_PI * i2 / g.n2;
            const cplx e(std::cos(n * th), std::sin(n * th));
            for (int i1 = 0; i1 < g.n1; ++i1)
                out[static_cast<size_t>(i2) * g.n1 + i1] += (row[i1] * e).real();
        }
    }
    return out;
}

SurfaceField from_grid(const Lattice& lat, const std::vector<double>& values, GridSize g) {
    const int N = lat.trunc;
    if (g.n1 < 2 * N + 1 || (lat.pattern != Pattern::Rolls && g.n2 < 2 * N + 1))
        throw std::invalid_argument("from_grid: grid too small for the truncation");
    // partial[n + N][i1] = (1/n2) sum_{i2} f e^{-i n theta2}
    std::vector<cplx> partial(static_cast<size_t>(2 * N + 1) * g.n1, cplx{});
    for (int n = -N; n <= N; ++n) {
        if (lat.pattern == Pattern::Rolls && n != 0) continue;
        for (int i2 = 0; i2 < g.n2; ++i2) {
            const double th = 2.0 * M_PI * i2 / g.n2;
            const cplx e(std::cos(n * th), -std::sin(n * th));
            const double* row = values.data() + static_cast<size_t>(i2) * g.n1;
            cplx* prow = partial.data() + static_cast<size_t>(n + N) * g.n1;
            for (int i1 = 0; i1 < g.n1; ++i1) prow[i1] += e * row[i1];
        }
    }
    SurfaceField out(lat);
    const double norm = 1.0 / (static_cast<double>(g.n1) * g.n2);
    for (auto [m, n] : lat.indices()) {
        const cplx* prow = partial.data() + static_cast<size_t>(n + N) * g.n1;
        cplx acc{};
        for (int i1 = 0; i1 < g.n1; ++i1) {
            const double th = 2.0 * M_PI * i1 / g.n1;
            acc += prow[i1] * cplx(std::cos(m * th), -std::sin(m * th));
        }
        out.set(m, n, acc * norm);
    }
    return out;
}

double grid_sup(const SurfaceField& f, GridSize g) {
    const auto v = to_grid(f, g);
    double s = 0.0;
    for (double x : v) s = std::max(s, std::abs(x));
    return s;
}

double grid_mean(const std::vector<double>& values) {
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

// --- volume fields ----------------------------------------------------------

SurfaceField VolumeField::level(int j) const {
    SurfaceField f(*lat_);
    const int n = ny();
    for (int s = 0; s < lat_->size(); ++s) f.data()[s] = c_[static_cast<size_t>(s) * n + j];
    return f;
}

void VolumeField::set_level(int j, const SurfaceField& f) {
    const int n = ny();
    for (int s = 0; s < lat_->size(); ++s) c_[static_cast<size_t>(s) * n + j] = f.data()[s];
}

VolumeField& VolumeField::operator+=(const VolumeField& o) {
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}
VolumeField& VolumeField::operator-=(const VolumeField& o) {
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}
VolumeField& VolumeField::operator*=(double s) {
    for (auto& v : c_) v *= s;
    return *this;
}

VolumeField vf_dx(const VolumeField& u) {
    VolumeField out(u.lattice(), u.strip(), u.grid_ptr());
    const auto& idx = u.lattice().indices();
    const int n = u.ny();
    for (int s = 0; s < u.lattice().size(); ++s) {
        const cplx ik(0.0, u.lattice().wavevector(idx[s].first, idx[s].second).x);
        const cplx* src = u.profile(s);
        cplx* dst = out.profile(s);
        for (int j = 0; j < n; ++j) dst[j] = ik * src[j];
    }
    return out;
}

VolumeField vf_dz(const VolumeField& u) {
    VolumeField out(u.lattice(), u.strip(), u.grid_ptr());
    const auto& idx = u.lattice().indices();
    const int n = u.ny();
    for (int s = 0; s < u.lattice().size(); ++s) {
        const cplx ik(0.0, u.lattice().wavevector(idx[s].first, idx[s].second).z);
        const cplx* src = u.profile(s);
        cplx* dst = out.profile(s);
        for (int j = 0; j < n; ++j) dst[j] = ik * src[j];
    }
    return out;
}

VolumeField vf_dy(const VolumeField& u) {
    VolumeField out(u.lattice(), u.strip(), u.grid_ptr());
    const Eigen::MatrixXd& D = u.grid().deriv;
    const int n = u.ny();
    for (int s = 0; s < u.lattice().size(); ++s) {
        const cplx* src = u.profile(s);
        cplx* dst = out.profile(s);
        for (int i = 0; i < n; ++i) {
            cplx acc{};
            for (int j = 0; j < n; ++j) acc += D(i, j) * src[j];
            dst[i] = acc;
        }
    }
    return out;
}

VolumeField vf_mul_surface(const VolumeField& u, const SurfaceField& s) {
    VolumeField out(u.lattice(), u.strip(), u.grid_ptr());
    const int n = u.ny();
    for (int j = 0; j < n; ++j) out.set_level(j, multiply(u.level(j), s));
    return out;
}

VolumeField vf_scale_levels(const VolumeField& u, const std::vector<double>& w) {
    VolumeField out(u.lattice(), u.strip(), u.grid_ptr());
    const int n = u.ny();
    for (int s = 0; s < u.lattice().size(); ++s) {
        const cplx* src = u.profile(s);
        cplx* dst = out.profile(s);
        for (int j = 0; j < n; ++j) dst[j] = w[j] * src[j];
    }
    return out;
}

// --- state triples ----------------------------------------------------------

StateTriple& StateTriple::operator+=(const StateTriple& o) {
    eta += o.eta;
    phi_upper += o.phi_upper;
    phi_lower += o.phi_lower;
    return *this;
}
StateTriple& StateTriple::operator-=(const StateTriple& o) {
    eta -= o.eta;
    phi_upper -= o.phi_upper;
    phi_lower -= o.phi_lower;
    return *this;
}
StateTriple& StateTriple::operator*=(double s) {
    eta *= s;
    phi_upper *= s;
    phi_lower *= s;
    return *this;
}

StateTriple operator+(StateTriple a, const StateTriple& b) { return a += b; }
StateTriple operator-(StateTriple a, const StateTriple& b) { return a -= b; }
StateTriple operator*(double s, StateTriple a) { return a *= s; }

double sup_coeff_norm(const SurfaceField& f) {
    double m = 0.0;
    for (const auto& c : f.data()) m = std::max(m, std::abs(c));
    return m;
}

double sup_coeff_norm(const StateTriple& t) {
    return std::max({sup_coeff_norm(t.eta), sup_coeff_norm(t.phi_upper),
                     sup_coeff_norm(t.phi_lower)});
}

StateTriple symmetrize(const StateTriple& t, const Lattice& lat) {
    StateTriple out;
    out.eta = symmetrize(t.eta, lat);
    out.phi_upper = symmetrize(t.phi_upper, lat);
    out.phi_lower = symmetrize(t.phi_lower, lat);
    return out;
}

}  // namespace ferro
