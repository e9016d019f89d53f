#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "ferro/fields.hpp"
#include "ferro/lattice.hpp"
#include "ferro/magnetization.hpp"

namespace ferro {

struct no_maximum_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct not_in_range_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Per-mode 3x3 matrix of the linearized interface equations,
//   rows: (mu1-1, 1, -1),
//         (0, |k| tanh(|k|/b), mu1/S1 |k| tanh(S1|k|/b)),
//         (-|k|^2-g0, -mu1 |k| tanh(|k|/b), -mu1/S1 |k| tanh(S1|k|/b)).
Eigen::Matrix3d pencil(double kmag, double beta0, const LawConstants& lc, double gamma0);

// Closed-form determinant of the pencil (matches the assembled matrix).
double pencil_det(double kmag, double beta0, const LawConstants& lc, double gamma0);

// Dispersion relation r(|k|); r(0) = 0 by continuous extension.
double dispersion_r(double kmag, double beta0, const LawConstants& lc);
double dispersion_r(double kmag, double beta0, const MagnetizationLaw& law);
double dispersion_r_prime(double kmag, double beta0, const LawConstants& lc);

// r takes positive values iff beta0 < mu1 (mu1-1)^2 / (mu1+1).
double dispersion_threshold(const LawConstants& lc);

struct CriticalPoint {
    double beta0 = 0.0;
    double omega = 0.0;
    double gamma0 = 0.0;
    double omega_tilde = 0.0;  // omega / beta0
    Eigen::Vector3d v;         // ker L0(omega), third component 1
    Eigen::Vector3d v_star;    // ker L0(omega)^T, third component 1
    double C_star = 0.0;       // 1/(v . v_star)
    LawConstants lc;
    int local_maxima = 1;  // >1 flags an unexpected multi-modal dispersion curve
};

// Locates the maximum of r and assembles the kernel data. Throws
// no_maximum_error for beta0 >= threshold.
CriticalPoint critical_point(double beta0, const MagnetizationLaw& law);

// beta0 such that the critical point sits at the given omega_tilde
// (inverts the identity beta0 = mu1(mu1-1)^2 (h - wt h')/(2 wt h^2)).
double beta0_for_omega_tilde(const MagnetizationLaw& law, double omega_tilde);

// e1 pattern function: cos k1.x (+ cos k2.x (+ cos k3.x)).
SurfaceField e1_field(const Lattice& lat);

// Kernel triple v e1.
StateTriple v0_triple(const Lattice& lat, const CriticalPoint& cp);

// The 2/4/6 kernel basis triples v cos(k.x), v sin(k.x) over the |k|=omega
// shell. Lattice must be built at the critical omega.
std::vector<StateTriple> kernel_basis(const Lattice& lat, const CriticalPoint& cp);

// Mode-wise application of the pencil (the operator L0).
StateTriple apply_pencil(const Lattice& lat, const CriticalPoint& cp, const StateTriple& x);

// Cosine-basis coefficient at k1 of each component (2 Re of the complex
// coefficient); with this normalization P(v e1) = v e1 for C* = 1/(v.v*).
Eigen::Vector3d bracket1(const Lattice& lat, const StateTriple& f);

// Rank-one projection onto <v e1> along im L0.
StateTriple projection_P(const Lattice& lat, const CriticalPoint& cp, const StateTriple& f);

// Mode-wise solve of L0 x = rhs for rhs with P rhs = 0; |k|=omega modes are
// solved in the complement of <v> through a bordered system, k=0 through the
// displayed closed-form inverse. Throws not_in_range_error if rhs has a
// component outside im L0.
StateTriple resolvent_solve(const Lattice& lat, const CriticalPoint& cp, const StateTriple& rhs);

// Coefficient of v e1 in P(d1 d2 G [gamma0,0](1, v0)); equals -C* v1.
double transversality(const CriticalPoint& cp);

}  // namespace ferro
