#include "ferro/bifurcation.hpp"

#include <cmath>

namespace ferro {

const char* branch_class_name(BranchClass c) {
    switch (c) {
        case BranchClass::Transcritical: return "transcritical";
        case BranchClass::Supercritical: return "supercritical";
        case BranchClass::Subcritical: return "subcritical";
    }
    return "?";
}

StateTriple l1_apply(const StateTriple& x) {
    StateTriple out(x.eta.lattice());
    out.phi_lower = (-1.0) * x.eta;  // third component of the Y triple
    return out;
}

StateTriple residual(DnWorkspace& ws, double gamma, const StateTriple& state, double tol_nl) {
    const Lattice& lat = ws.lat();
    const auto& lc = ws.constants();
    const double mu1 = lc.mu1;
    const double M1 = ws.law().potential(1.0);

    NonlinearDn low = nonlinear_dn(ws, Strip::Lower, state.eta, state.phi_lower, tol_nl);
    NonlinearDn up = nonlinear_dn(ws, Strip::Upper, state.eta, state.phi_upper, tol_nl);

    const GridSize g = grid_for(lat, 2);
    const int P = g.n1 * g.n2;
    auto [exf, ezf] = grad_h(state.eta);
    auto [plxf, plzf] = grad_h(state.phi_lower);
    auto [puxf, puzf] = grad_h(state.phi_upper);
    const auto ex = to_grid(exf, g), ez = to_grid(ezf, g);
    const auto plx = to_grid(plxf, g), plz = to_grid(plzf, g);
    const auto pux = to_grid(puxf, g), puz = to_grid(puzf, g);
    const auto Hg = to_grid(low.H, g), Gg = to_grid(low.G, g), Hpg = to_grid(up.H, g);

    std::vector<double> comp2g(P), comp3g(P), qx(P), qz(P);
    for (int p = 0; p < P; ++p) {
        const double g2 = ex[p] * ex[p] + ez[p] * ez[p];
        const double gp2 = pux[p] * pux[p] + puz[p] * puz[p];
        const double gl2 = plx[p] * plx[p] + plz[p] * plz[p];
        const double edotl = ex[p] * plx[p] + ez[p] * plz[p];
        const double arg = std::sqrt(gl2 + 2.0 * (1.0 - edotl) * Hg[p] +
                                     (1.0 + g2) * Hg[p] * Hg[p] + 1.0);
        const double mu_star = ws.law().mu(arg);
        const double M_star = ws.law().potential(arg);
        comp2g[p] = mu_star - mu1;
        comp3g[p] = 0.5 * (1.0 + g2) * Hpg[p] * Hpg[p] - 0.5 * gp2 - (mu_star - mu1) +
                    (M_star - M1) - mu_star * Hg[p] - Hg[p] * Gg[p];
        const double w = 1.0 / std::sqrt(1.0 + g2);
        qx[p] = ex[p] * w;
        qz[p] = ez[p] * w;
    }

    StateTriple out(lat);
    out.eta = state.phi_upper - state.phi_lower + (mu1 - 1.0) * state.eta;
    out.phi_upper = up.G + low.G + from_grid(lat, comp2g, g);
    // curvature div( grad eta / sqrt(1+|grad eta|^2) )
    const SurfaceField qxf = from_grid(lat, qx, g);
    const SurfaceField qzf = from_grid(lat, qz, g);
    const SurfaceField curv = grad_h(qxf).first + grad_h(qzf).second;
    out.phi_lower = (-gamma) * state.eta + curv - mu1 * up.G - low.G + from_grid(lat, comp3g, g);
    return out;
}

namespace {

// shared second-order data for Q0
struct FormParts {
    SurfaceField G1, G2, H1, H2, Gp1, Gp2;
    SurfaceField gradPhi2, gradPhip2;
};

FormParts taylor_parts2(DnWorkspace& ws, const StateTriple& x) {
    FormParts f;
    DnExpansion lo = taylor_dn(ws, Strip::Lower, x.eta, x.phi_lower, 2);
    DnExpansion up = taylor_dn(ws, Strip::Upper, x.eta, x.phi_upper, 2);
    f.G1 = lo.G[0];
    f.G2 = lo.G[1];
    f.H1 = lo.H[0];
    f.H2 = lo.H[1];
    f.Gp1 = up.G[0];
    f.Gp2 = up.G[1];
    auto [lx, lz] = grad_h(x.phi_lower);
    f.gradPhi2 = multiply(lx, lx) + multiply(lz, lz);
    auto [ux, uz] = grad_h(x.phi_upper);
    f.gradPhip2 = multiply(ux, ux) + multiply(uz, uz);
    return f;
}

}  // namespace

StateTriple q0_diag(DnWorkspace& ws, const StateTriple& x) {
    const Lattice& lat = ws.lat();
    const auto& lc = ws.constants();
    FormParts f = taylor_parts2(ws, x);

    StateTriple out(lat);
    // second component: G'2 + G2 + dmu1 H2 + 1/2 (ddmu1 H1^2 + dmu1 |grad Phi|^2)
    out.phi_upper = f.Gp2 + f.G2 + lc.dmu1 * f.H2 +
                    0.5 * lc.ddmu1 * multiply(f.H1, f.H1) + 0.5 * lc.dmu1 * f.gradPhi2;
    // third component per the quadratic display
    SurfaceField H1sq = multiply(f.H1, f.H1);
    out.phi_lower = 0.5 * (multiply(f.Gp1, f.Gp1) - f.gradPhip2 +
                           (lc.mu1 - lc.dmu1 - lc.ddmu1) * H1sq +
                           (lc.mu1 - lc.dmu1) * f.gradPhi2 - 2.0 * multiply(f.G1, f.H1)) -
                    lc.mu1 * f.Gp2 - f.G2 - lc.dmu1 * f.H2;
    return out;
}

StateTriple c0_diag(DnWorkspace& ws, const StateTriple& x) {
    const Lattice& lat = ws.lat();
    const auto& lc = ws.constants();
    DnExpansion lo = taylor_dn(ws, Strip::Lower, x.eta, x.phi_lower, 3);
    DnExpansion up = taylor_dn(ws, Strip::Upper, x.eta, x.phi_upper, 3);
    const SurfaceField &G1 = lo.G[0], &G2 = lo.G[1], &G3 = lo.G[2];
    const SurfaceField &H1 = lo.H[0], &H2 = lo.H[1], &H3 = lo.H[2];
    const SurfaceField &Gp1 = up.G[0], &Gp2 = up.G[1], &Gp3 = up.G[2];

    auto [ex, ez] = grad_h(x.eta);
    auto [plx, plz] = grad_h(x.phi_lower);
    auto [pux, puz] = grad_h(x.phi_upper);
    SurfaceField gradPhi2 = multiply(plx, plx) + multiply(plz, plz);
    SurfaceField gDotPhi = multiply(ex, plx) + multiply(ez, plz);
    SurfaceField gDotPhip = multiply(ex, pux) + multiply(ez, puz);
    SurfaceField H1sq = multiply(H1, H1);
    SurfaceField H1cu = multiply(H1sq, H1);

    StateTriple out(lat);
    // mu* cubic part, shared between the two components with opposite sign
    SurfaceField mu_cubic = lc.dmu1 * H3 + lc.ddmu1 * multiply(H1, H2) +
                            0.5 * (lc.ddmu1 - lc.dmu1) * multiply(gradPhi2, H1) -
                            lc.dmu1 * multiply(gDotPhi, H1) + (lc.dddmu1 / 6.0) * H1cu;
    out.phi_upper = Gp3 + G3 + mu_cubic;

    // curvature cubic: eta_x^2 eta_zz + eta_z^2 eta_xx - 2 eta_x eta_z eta_xz
    //                  - 3/2 |grad eta|^2 lap eta
    const SurfaceField exx = grad_h(ex).first;
    const SurfaceField exz = grad_h(ex).second;
    const SurfaceField ezz = grad_h(ez).second;
    SurfaceField grad2 = multiply(ex, ex) + multiply(ez, ez);
    SurfaceField curv = multiply(multiply(ex, ex), ezz) + multiply(multiply(ez, ez), exx) -
                        2.0 * multiply(multiply(ex, ez), exz) -
                        1.5 * multiply(grad2, exx + ezz);

    out.phi_lower = (-lc.mu1) * Gp3 - G3 - mu_cubic + multiply(Gp1, Gp2 - gDotPhip) -
                    multiply(H1, G2 + lc.mu1 * gDotPhi) + (lc.mu1 - lc.dmu1) * multiply(H1, H2) +
                    ((lc.dmu1 - lc.ddmu1) / 3.0) * H1cu - multiply(G1, H2) + curv;
    return out;
}

StateTriple q0_apply(DnWorkspace& ws, const StateTriple& a, const StateTriple& b) {
    if (&a.eta.lattice() != &b.eta.lattice())
        throw std::invalid_argument("q0_apply: lattice mismatch");
    StateTriple p = a + b;
    StateTriple m = a - b;
    StateTriple out = q0_diag(ws, p);
    out -= q0_diag(ws, m);
    out *= 0.25;
    return out;
}

StateTriple c0_apply(DnWorkspace& ws, const StateTriple& a, const StateTriple& b,
                     const StateTriple& c) {
    StateTriple s1 = a + b + c;
    StateTriple s2 = a + b - c;
    StateTriple s3 = (a - b) + c;
    StateTriple s4 = (a - b) - c;
    StateTriple out = c0_diag(ws, s1);
    out -= c0_diag(ws, s2);
    out -= c0_diag(ws, s3);
    out += c0_diag(ws, s4);
    out *= 1.0 / 24.0;
    return out;
}

double branch_gamma1(const Lattice& lat, DnWorkspace& ws, const CriticalPoint& cp) {
    StateTriple v0 = v0_triple(lat, cp);
    StateTriple q = q0_diag(ws, v0);
    const double num = bracket1(lat, q).dot(cp.v_star);
    const double den = bracket1(lat, l1_apply(v0)).dot(cp.v_star);
    if (std::abs(den) < 1e-14)
        throw std::runtime_error("branch_gamma1: degenerate transversality denominator");
    return -num / den;
}

StateTriple solve_w1(const Lattice& lat, DnWorkspace& ws, const CriticalPoint& cp,
                     double gamma1) {
    StateTriple v0 = v0_triple(lat, cp);
    StateTriple rhs = q0_diag(ws, v0);
    StateTriple lv = l1_apply(v0);
    lv *= gamma1;
    rhs += lv;
    rhs *= -1.0;
    rhs -= projection_P(lat, cp, rhs);
    return resolvent_solve(lat, cp, rhs);
}

double branch_gamma2(const Lattice& lat, DnWorkspace& ws, const CriticalPoint& cp,
                     const StateTriple& w1, double gamma1) {
    StateTriple v0 = v0_triple(lat, cp);
    const double den = bracket1(lat, l1_apply(v0)).dot(cp.v_star);
    if (std::abs(gamma1) > 1e-8 * std::abs(den))
        throw branch_type_error("branch_gamma2: branch is transcritical (gamma1 != 0)");
    StateTriple total = q0_apply(ws, v0, w1);
    total *= 2.0;
    total += c0_diag(ws, v0);
    return -bracket1(lat, total).dot(cp.v_star) / den;
}

BranchResult classify_branch(Pattern pattern, const MagnetizationLaw& law, double beta0,
                             const BranchOptions& opt) {
    BranchResult res;
    res.pattern = pattern;
    res.beta0 = beta0;
    res.cp = critical_point(beta0, law);

    res.lattice =
        std::make_shared<const Lattice>(make_lattice(pattern, res.cp.omega, opt.truncation));
    const Lattice& lat = *res.lattice;
    DnOptions dopt;
    dopt.ny = opt.ny;
    dopt.kmax_hint = 4.0 * res.cp.omega;
    DnWorkspace ws(lat, law, beta0, dopt);

    StateTriple v0 = v0_triple(lat, res.cp);
    res.diagnostics["pencil_v0_residual"] = sup_coeff_norm(apply_pencil(lat, res.cp, v0));
    res.diagnostics["kernel_dim"] =
        static_cast<double>(dual_vectors_of_length(lat, res.cp.omega, 1e-9 * res.cp.omega).size());

    res.gamma1 = branch_gamma1(lat, ws, res.cp);
    const double den = bracket1(lat, l1_apply(v0)).dot(res.cp.v_star);
    const double tol_trans = 1e-8 * std::abs(den);
    res.diagnostics["gamma1_denominator"] = den;
    res.diagnostics["tol_transcritical"] = tol_trans;

    res.w1 = solve_w1(lat, ws, res.cp, res.gamma1);
    {
        StateTriple chk = apply_pencil(lat, res.cp, res.w1);
        StateTriple rhs = q0_diag(ws, v0);
        StateTriple lv = l1_apply(v0);
        lv *= res.gamma1;
        rhs += lv;
        rhs -= projection_P(lat, res.cp, rhs);
        chk += rhs;
        res.diagnostics["w1_residual"] = sup_coeff_norm(chk);
    }

    if (std::abs(res.gamma1) > tol_trans) {
        res.classification = BranchClass::Transcritical;
    } else {
        const double g2 = branch_gamma2(lat, ws, res.cp, res.w1, res.gamma1);
        res.gamma2 = g2;
        res.classification = g2 > 0.0 ? BranchClass::Supercritical : BranchClass::Subcritical;
    }
    return res;
}

}  // namespace ferro
