#pragma once

#include <Eigen/Dense>
#include <map>
#include <memory>
#include <vector>

#include "ferro/chebyshev.hpp"
#include "ferro/fields.hpp"
#include "ferro/lattice.hpp"
#include "ferro/magnetization.hpp"

namespace ferro {

struct convergence_error : std::runtime_error {
    double last_residual;
    convergence_error(const std::string& msg, double r)
        : std::runtime_error(msg), last_residual(r) {}
};

// Strip depth 1/beta0 capped where every tanh(S|k| depth) factor has
// saturated to 1 in double precision; returns the effective beta (= 1/depth).
// The flattening factors and strip geometry use the effective value, which
// leaves results unchanged up to ~1e-25 in the capped regime.
double effective_beta(double beta0, double omega, double S1);

struct DnOptions {
    int ny = 0;            // 0 = choose from the resolvable vertical scale
    double kmax_hint = 0;  // largest |k| expected to be active (0 = whole block)
};

// Shared discretization for the two flattened strips: Chebyshev grids and
// prefactored per-mode operators mu1 (S1^-2 D^2 - |k|^2) resp. (D^2 - |k|^2)
// with the Dirichlet row at y=0 and the flux/Neumann row at the far wall.
class DnWorkspace {
public:
    DnWorkspace(const Lattice& lat, const MagnetizationLaw& law, double beta0,
                DnOptions opt = {});

    const Lattice& lat() const { return *lat_; }
    const MagnetizationLaw& law() const { return law_; }
    const LawConstants& constants() const { return lc_; }
    double beta() const { return beta_; }
    double depth() const { return depth_; }
    int ny() const { return ny_; }
    std::shared_ptr<const ChebGrid> grid(Strip s) const {
        return s == Strip::Lower ? grid_lower_ : grid_upper_;
    }

    // Solves the frozen per-mode operator; rhs rows are
    // [Dirichlet at y=0, interior equation, far-wall row].
    Eigen::VectorXcd solve_mode(Strip s, int slot, const Eigen::VectorXcd& rhs) const;

private:
    const Lattice* lat_;
    MagnetizationLaw law_;
    LawConstants lc_;
    double beta_ = 0.0, depth_ = 0.0;
    int ny_ = 0;
    std::shared_ptr<const ChebGrid> grid_lower_, grid_upper_;
    std::map<long, Eigen::PartialPivLU<Eigen::MatrixXd>> lu_lower_, lu_upper_;
    long mode_key(int slot) const;
};

// Order-one (flat interface) solutions of the strip problems by collocation.
// Closed forms, kept as the test oracle:
//   lower: u_k(y) = Phi_k cosh(S1 |k| (y+d)) / cosh(S1 |k| d)
//   upper: u_k(y) = Phi'_k cosh(|k| (y-d)) / cosh(|k| d)
VolumeField solve_order_one(DnWorkspace& ws, Strip strip, const SurfaceField& bnd);
double closed_form_profile(double kappa, double depth, double y, Strip strip);

// n-homogeneous Taylor terms of the Dirichlet-Neumann operators.
struct DnExpansion {
    Strip strip = Strip::Lower;
    int order = 0;
    std::vector<SurfaceField> G;  // G[i] is the (i+1)-homogeneous term
    std::vector<SurfaceField> H;
    std::vector<VolumeField> u;  // u[i] = u^(i+1)

    SurfaceField sum_G(double eps) const;
    SurfaceField sum_H(double eps) const;
};

DnExpansion taylor_dn(DnWorkspace& ws, Strip strip, const SurfaceField& eta,
                      const SurfaceField& bnd, int order);

// Full nonlinear solve of the flattened boundary-value problem; quasi-Newton
// iteration with the frozen order-one operator, initial guess from
// solve_order_one. Requires sup |beta eta| < 1/2.
struct NonlinearDn {
    SurfaceField G, H;
    VolumeField u;
    int iterations = 0;
    double residual = 0.0;
    std::vector<double> residual_history;  // sup-norm per iteration
};

NonlinearDn nonlinear_dn(DnWorkspace& ws, Strip strip, const SurfaceField& eta,
                         const SurfaceField& bnd, double tol = 1e-11);

// Convenience wrappers constructing a workspace per call.
DnExpansion taylor_dn_lower(const Lattice& lat, const MagnetizationLaw& law, double beta0,
                            const SurfaceField& eta, const SurfaceField& Phi, int order);
DnExpansion taylor_dn_upper(const Lattice& lat, double beta0, const SurfaceField& eta,
                            const SurfaceField& PhiPrime, int order);

}  // namespace ferro
