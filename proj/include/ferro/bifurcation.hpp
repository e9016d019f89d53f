#pragma once

#include <map>
#include <optional>
#include <string>

#include "ferro/dn.hpp"
#include "ferro/fields.hpp"
#include "ferro/lattice.hpp"
#include "ferro/linear.hpp"
#include "ferro/magnetization.hpp"

namespace ferro {

struct branch_type_error : std::logic_error {
    using std::logic_error::logic_error;
};

enum class BranchClass { Transcritical, Supercritical, Subcritical };
const char* branch_class_name(BranchClass c);

// Full nonlinear residual of the three interface equations at (gamma, state);
// G, H, G', H' from the nonlinear strip solves, mu*/M* and the curvature
// evaluated pointwise on a padded grid.
StateTriple residual(DnWorkspace& ws, double gamma, const StateTriple& state,
                     double tol_nl = 1e-11);

// L1 = d1 d2 G [gamma0, 0](1, .) = (0, 0, -eta).
StateTriple l1_apply(const StateTriple& x);

// Quadratic and cubic forms of the residual at (gamma0, 0), evaluated from
// the order-2/3 Taylor terms of the DN operators. q0_diag/c0_diag are the
// diagonal evaluations; the multilinear versions polarize them.
StateTriple q0_diag(DnWorkspace& ws, const StateTriple& x);
StateTriple c0_diag(DnWorkspace& ws, const StateTriple& x);
StateTriple q0_apply(DnWorkspace& ws, const StateTriple& a, const StateTriple& b);
StateTriple c0_apply(DnWorkspace& ws, const StateTriple& a, const StateTriple& b,
                     const StateTriple& c);

// gamma1 = -[Q0(v0,v0)]_1 . v* / [L1 v0]_1 . v*.
double branch_gamma1(const Lattice& lat, DnWorkspace& ws, const CriticalPoint& cp);

// Solves L0 w1 = -(Q0(v0,v0) + gamma1 L1 v0) with the P component removed;
// w1 is orthogonal to the kernel direction at the |k|=omega modes.
StateTriple solve_w1(const Lattice& lat, DnWorkspace& ws, const CriticalPoint& cp, double gamma1);

// gamma2 = -[2 Q0(v0,w1) + C0(v0,v0,v0)]_1 . v* / [L1 v0]_1 . v*.
// Requires |gamma1| below the transcriticality tolerance.
double branch_gamma2(const Lattice& lat, DnWorkspace& ws, const CriticalPoint& cp,
                     const StateTriple& w1, double gamma1);

struct BranchOptions {
    int truncation = 4;
    int ny = 0;  // 0 = automatic
    double tol_nl = 1e-11;
};

struct BranchResult {
    Pattern pattern = Pattern::Rolls;
    double beta0 = 0.0;
    CriticalPoint cp;
    double gamma1 = 0.0;
    std::shared_ptr<const Lattice> lattice;  // owns the lattice w1 refers to
    StateTriple w1;
    std::optional<double> gamma2;
    BranchClass classification = BranchClass::Supercritical;
    std::map<std::string, double> diagnostics;
};

// critical_point -> gamma1 -> (w1, gamma2 when gamma1 vanishes) -> class.
// The lattice is built at the critical omega internally.
BranchResult classify_branch(Pattern pattern, const MagnetizationLaw& law, double beta0,
                             const BranchOptions& opt = {});

}  // namespace ferro
