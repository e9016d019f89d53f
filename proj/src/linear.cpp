#include "ferro/linear.hpp"

#include <algorithm>
#include <cmath>

namespace ferro {

namespace {

double coth(double x) { return 1.0 / std::tanh(x); }
double csch2(double x) {
    const double s = std::sinh(x);
    return 1.0 / (s * s);
}

// h(x) = mu1 coth x + S1 coth(S1 x) and its derivative.
double h_fn(double x, const LawConstants& lc) {
    return lc.mu1 * coth(x) + lc.S1 * coth(lc.S1 * x);
}
double h_fn_prime(double x, const LawConstants& lc) {
    return -lc.mu1 * csch2(x) - lc.S1 * lc.S1 * csch2(lc.S1 * x);
}

}  // namespace

Eigen::Matrix3d pencil(double kmag, double beta0, const LawConstants& lc, double gamma0) {
    const double a = kmag * std::tanh(kmag / beta0);
    const double b = lc.mu1 / lc.S1 * kmag * std::tanh(lc.S1 * kmag / beta0);
    Eigen::Matrix3d M;
    M << lc.mu1 - 1.0, 1.0, -1.0,
         0.0, a, b,
         -kmag * kmag - gamma0, -lc.mu1 * a, -b;
    return M;
}

double pencil_det(double kmag, double beta0, const LawConstants& lc, double gamma0) {
    const double t = std::tanh(kmag / beta0);
    const double tS = std::tanh(lc.S1 * kmag / beta0);
    const double k2 = kmag * kmag;
    return lc.mu1 * (lc.mu1 - 1.0) * (lc.mu1 - 1.0) / lc.S1 * k2 * t * tS -
           (k2 + gamma0) * (kmag * t + lc.mu1 / lc.S1 * kmag * tS);
}

double dispersion_r(double kmag, double beta0, const LawConstants& lc) {
    if (kmag <= 0.0) return 0.0;
    const double den = lc.mu1 * kmag * coth(kmag / beta0) + lc.S1 * kmag * coth(lc.S1 * kmag / beta0);
    return (lc.mu1 * (lc.mu1 - 1.0) * (lc.mu1 - 1.0) / den - 1.0) * kmag * kmag;
}

double dispersion_r(double kmag, double beta0, const MagnetizationLaw& law) {
    return dispersion_r(kmag, beta0, law.constants_at_one());
}

double dispersion_r_prime(double kmag, double beta0, const LawConstants& lc) {
    // r(k) = A k / h(k/b) - k^2 with A = mu1 (mu1-1)^2
    const double A = lc.mu1 * (lc.mu1 - 1.0) * (lc.mu1 - 1.0);
    const double x = kmag / beta0;
    const double h = h_fn(x, lc);
    const double hp = h_fn_prime(x, lc);
    return A * (h - x * hp) / (h * h) - 2.0 * kmag;
}

double dispersion_threshold(const LawConstants& lc) {
    return lc.mu1 * (lc.mu1 - 1.0) * (lc.mu1 - 1.0) / (lc.mu1 + 1.0);
}

CriticalPoint critical_point(double beta0, const MagnetizationLaw& law) {
    if (!(beta0 > 0.0)) throw std::invalid_argument("critical_point: beta0 must be positive");
    const LawConstants lc = law.constants_at_one();
    if (!(lc.mu1 > 1.0))
        throw no_maximum_error("critical_point: mu(1) <= 1, the dispersion relation is negative");
    const double thr = dispersion_threshold(lc);
    if (beta0 >= thr)
        throw no_maximum_error("critical_point: beta0 >= mu1(mu1-1)^2/(mu1+1), r has no positive maximum");

    // r < 0 beyond ksup since h >= mu1 + S1.
    const double ksup = lc.mu1 * (lc.mu1 - 1.0) * (lc.mu1 - 1.0) / (lc.mu1 + lc.S1);
    const int M = 400;
    int best = 1, nmax = 0;
    double rbest = -1e300;
    std::vector<double> rv(M + 1, 0.0);
    for (int i = 1; i <= M; ++i) {
        rv[i] = dispersion_r(ksup * i / M, beta0, lc);
        if (rv[i] > rbest) {
            rbest = rv[i];
            best = i;
        }
    }
    for (int i = 2; i < M; ++i)
        if (rv[i] > rv[i - 1] && rv[i] > rv[i + 1] && rv[i] > 0.0) ++nmax;
    if (!(rbest > 0.0))
        throw no_maximum_error("critical_point: dispersion relation has no positive values");

    // golden-section refine on the bracketing interval, then Newton on r'.
    double lo = ksup * std::max(1, best - 1) / M, hi = ksup * std::min(M, best + 1) / M;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double rc = dispersion_r(c, beta0, lc), rd = dispersion_r(d, beta0, lc);
    for (int it = 0; it < 80 && hi - lo > 1e-12 * ksup; ++it) {
        if (rc > rd) {
            hi = d;
            d = c;
            rd = rc;
            c = hi - gr * (hi - lo);
            rc = dispersion_r(c, beta0, lc);
        } else {
            lo = c;
            c = d;
            rc = rd;
            d = lo + gr * (hi - lo);
            rd = dispersion_r(d, beta0, lc);
        }
    }
    double w = (lo + hi) / 2.0;
    for (int it = 0; it < 50; ++it) {
        const double rp = dispersion_r_prime(w, beta0, lc);
        const double dk = 1e-6 * w;
        const double rpp =
            (dispersion_r_prime(w + dk, beta0, lc) - dispersion_r_prime(w - dk, beta0, lc)) /
            (2.0 * dk);
        if (rpp >= 0.0) break;
        const double step = rp / rpp;
        w -= step;
        if (std::abs(step) < 1e-15 * w) break;
    }

    CriticalPoint cp;
    cp.beta0 = beta0;
    cp.lc = lc;
    cp.omega = w;
    cp.gamma0 = dispersion_r(w, beta0, lc);
    cp.omega_tilde = w / beta0;
    cp.local_maxima = std::max(1, nmax);

    const double wt = cp.omega_tilde;
    const double a = w * std::tanh(wt);
    const double b = lc.mu1 / lc.S1 * w * std::tanh(lc.S1 * wt);
    const double cc = w * w + cp.gamma0;
    cp.v = Eigen::Vector3d((1.0 + b / a) / (lc.mu1 - 1.0), -b / a, 1.0);
    cp.v_star = Eigen::Vector3d(cc / (lc.mu1 - 1.0), (lc.mu1 * a + b) / (a + b), 1.0);
    cp.C_star = 1.0 / cp.v.dot(cp.v_star);

    // self-checks: kernel equations and the stationarity identity
    const Eigen::Matrix3d L = pencil(w, beta0, lc, cp.gamma0);
    const double kres = std::max((L * cp.v).cwiseAbs().maxCoeff(),
                                 (L.transpose() * cp.v_star).cwiseAbs().maxCoeff());
    if (kres > 1e-8 * std::max(1.0, cc))
        throw std::runtime_error("critical_point: kernel residual too large");
    const double h = h_fn(wt, lc), hp = h_fn_prime(wt, lc);
    const double beta_chk =
        lc.mu1 * (lc.mu1 - 1.0) * (lc.mu1 - 1.0) * (h - wt * hp) / (2.0 * wt * h * h);
    if (std::abs(beta_chk - beta0) > 1e-8 * beta0)
        throw std::runtime_error("critical_point: stationarity identity violated");
    return cp;
}

double beta0_for_omega_tilde(const MagnetizationLaw& law, double omega_tilde) {
    if (!(omega_tilde > 0.0))
        throw std::invalid_argument("beta0_for_omega_tilde: omega_tilde must be positive");
    const LawConstants lc = law.constants_at_one();
    const double h = h_fn(omega_tilde, lc), hp = h_fn_prime(omega_tilde, lc);
    return lc.mu1 * (lc.mu1 - 1.0) * (lc.mu1 - 1.0) * (h - omega_tilde * hp) /
           (2.0 * omega_tilde * h * h);
}

SurfaceField e1_field(const Lattice& lat) {
    SurfaceField e(lat);
    e.add_cos(1, 0, 1.0);
    if (lat.pattern == Pattern::Rectangles) e.add_cos(0, 1, 1.0);
    if (lat.pattern == Pattern::Hexagons) {
        e.add_cos(0, 1, 1.0);
        e.add_cos(-1, 1, 1.0);  // k3 = k2 - k1
    }
    return e;
}

StateTriple v0_triple(const Lattice& lat, const CriticalPoint& cp) {
    const SurfaceField e1 = e1_field(lat);
    StateTriple t(lat);
    t.eta = cp.v[0] * e1;
    t.phi_upper = cp.v[1] * e1;
    t.phi_lower = cp.v[2] * e1;
    return t;
}

std::vector<StateTriple> kernel_basis(const Lattice& lat, const CriticalPoint& cp) {
    if (std::abs(lat.omega - cp.omega) > 1e-9 * cp.omega)
        throw std::invalid_argument("kernel_basis: lattice omega differs from the critical omega");
    const auto shell = dual_vectors_of_length(lat, cp.omega, 1e-9 * cp.omega);
    std::vector<StateTriple> basis;
    for (const auto& k : shell) {
        if (k.m < 0 || (k.m == 0 && k.n < 0)) continue;  // one representative per +-pair
        for (int kind = 0; kind < 2; ++kind) {
            StateTriple t(lat);
            auto put = [&](SurfaceField& f, double amp) {
                if (kind == 0)
                    f.add_cos(k.m, k.n, amp);
                else
                    f.add_sin(k.m, k.n, amp);
            };
            put(t.eta, cp.v[0]);
            put(t.phi_upper, cp.v[1]);
            put(t.phi_lower, cp.v[2]);
            basis.push_back(std::move(t));
        }
    }
    return basis;
}

StateTriple apply_pencil(const Lattice& lat, const CriticalPoint& cp, const StateTriple& x) {
    StateTriple out(lat);
    for (int s = 0; s < lat.size(); ++s) {
        const auto [m, n] = lat.indices()[s];
        const Eigen::Matrix3d L = pencil(lat.kmag(m, n), cp.beta0, cp.lc, cp.gamma0);
        const Eigen::Vector3cd xv(x.eta.data()[s], x.phi_upper.data()[s], x.phi_lower.data()[s]);
        const Eigen::Vector3cd yv = L.cast<cplx>() * xv;
        out.eta.data()[s] = yv[0];
        out.phi_upper.data()[s] = yv[1];
        out.phi_lower.data()[s] = yv[2];
    }
    return out;
}

Eigen::Vector3d bracket1(const Lattice& lat, const StateTriple& f) {
    (void)lat;
    return Eigen::Vector3d(2.0 * f.eta.coeff(1, 0).real(), 2.0 * f.phi_upper.coeff(1, 0).real(),
                           2.0 * f.phi_lower.coeff(1, 0).real());
}

StateTriple projection_P(const Lattice& lat, const CriticalPoint& cp, const StateTriple& f) {
    const double scalar = cp.C_star * bracket1(lat, f).dot(cp.v_star);
    StateTriple out = v0_triple(lat, cp);
    out *= scalar;
    return out;
}

StateTriple resolvent_solve(const Lattice& lat, const CriticalPoint& cp, const StateTriple& rhs) {
    StateTriple sol(lat);
    const double scale = std::max(1.0, sup_coeff_norm(rhs));
    std::vector<int> tolerated;  // slots whose defect is accounted for separately
    for (int s = 0; s < lat.size(); ++s) {
        const auto [m, n] = lat.indices()[s];
        const Eigen::Vector3cd r(rhs.eta.data()[s], rhs.phi_upper.data()[s],
                                 rhs.phi_lower.data()[s]);
        Eigen::Vector3cd x = Eigen::Vector3cd::Zero();
        if (m == 0 && n == 0) {
            if (std::abs(r[1]) > 1e-7 * scale)
                throw not_in_range_error("resolvent_solve: k=0 rhs has a nonzero mean second component");
            x[0] = -r[2] / cp.gamma0;
            x[1] = cplx{};
            x[2] = -r[0] - (cp.lc.mu1 - 1.0) / cp.gamma0 * r[2];
            tolerated.push_back(s);
        } else {
            const double kmag = lat.kmag(m, n);
            if (std::abs(kmag - cp.omega) <= 1e-9 * cp.omega) {
                // singular mode: bordered solve picks the solution orthogonal
                // to v; lambda is the kernel-direction content of the rhs.
                Eigen::Matrix4d B = Eigen::Matrix4d::Zero();
                B.topLeftCorner<3, 3>() = pencil(cp.omega, cp.beta0, cp.lc, cp.gamma0);
                B.topRightCorner<3, 1>() = cp.v;
                B.bottomLeftCorner<1, 3>() = cp.v.transpose();
                Eigen::PartialPivLU<Eigen::Matrix4d> lu(B);
                Eigen::Matrix<double, 4, 2> R;
                R << r[0].real(), r[0].imag(), r[1].real(), r[1].imag(), r[2].real(), r[2].imag(),
                    0.0, 0.0;
                Eigen::Matrix<double, 4, 2> X = lu.solve(R);
                const cplx lambda(X(3, 0), X(3, 1));
                if (std::abs(lambda) > 1e-8 * scale)
                    throw not_in_range_error(
                        "resolvent_solve: rhs has a kernel-direction component at |k| = omega");
                for (int i = 0; i < 3; ++i) x[i] = cplx(X(i, 0), X(i, 1));
                // shift along ker L0(omega) so the solution carries no P
                // component (the w1 convention: complement of <v0> under P)
                const cplx pv = (x[0] * cp.v_star[0] + x[1] * cp.v_star[1] + x[2] * cp.v_star[2]) *
                                cp.C_star;
                for (int i = 0; i < 3; ++i) x[i] -= pv * cp.v[i];
                tolerated.push_back(s);
            } else if (std::abs(kmag - cp.omega) < 1e-6 * cp.omega) {
                throw std::runtime_error("resolvent_solve: near-resonant mode |k| ~ omega");
            } else {
                const Eigen::Matrix3d L = pencil(kmag, cp.beta0, cp.lc, cp.gamma0);
                Eigen::FullPivLU<Eigen::Matrix3d> lu(L);
                Eigen::Matrix<double, 3, 2> R;
                R << r[0].real(), r[0].imag(), r[1].real(), r[1].imag(), r[2].real(), r[2].imag();
                Eigen::Matrix<double, 3, 2> X = lu.solve(R);
                for (int i = 0; i < 3; ++i) x[i] = cplx(X(i, 0), X(i, 1));
            }
        }
        sol.eta.data()[s] = x[0];
        sol.phi_upper.data()[s] = x[1];
        sol.phi_lower.data()[s] = x[2];
    }

    // residual check against the applied pencil; slots with tolerated defects
    // (kernel shell, k=0 mean row) are bounded by the throws above.
    StateTriple chk = apply_pencil(lat, cp, sol);
    chk -= rhs;
    for (int s : tolerated) {
        chk.eta.data()[s] = cplx{};
        chk.phi_upper.data()[s] = cplx{};
        chk.phi_lower.data()[s] = cplx{};
    }
    if (sup_coeff_norm(chk) > 1e-9 * scale)
        throw std::runtime_error("resolvent_solve: residual check failed");
    return sol;
}

double transversality(const CriticalPoint& cp) { return -cp.C_star * cp.v[0]; }

}  // namespace ferro
