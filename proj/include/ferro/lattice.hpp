#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ferro {

enum class Pattern { Rolls, Rectangles, Hexagons };

const char* pattern_name(Pattern p);
Pattern pattern_from_name(const std::string& name);

struct Vec2 {
    double x = 0.0;
    double z = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.z + b.z}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.z - b.z}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.z}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.z * b.z; }
double norm(Vec2 a);

// A wavevector of the dual lattice, carried both as dual-basis integer
// coordinates (m,n) and in cartesian form m*k1 + n*k2.
struct WaveVector {
    int m = 0;
    int n = 0;
    Vec2 cartesian;
};

// Periodic lattice L, its dual L*, base cell and rotation data for one of
// the three patterns. omega is the fundamental wavenumber: every nonzero
// k in L* has |k| >= omega, with equality exactly on the critical shell.
//
// Truncation: dual-basis indices with |m|,|n| <= trunc, additionally
// |m+n| <= trunc for hexagons so the block is closed under the pi/3
// rotation (the square block is not). Rolls keep n = 0.
struct Lattice {
    Pattern pattern = Pattern::Rolls;
    double omega = 1.0;
    Vec2 l1, l2;  // generators of L (l2 = 0 for rolls)
    Vec2 k1, k2;  // dual generators (k2 = 0 for rolls)
    double cell_constant = 0.0;  // C(Gamma): 2pi/w, 4(pi/w)^2, 8/sqrt(3)(pi/w)^2
    int trunc = 0;
    int rotation_order = 2;  // 2 / 4 / 6 for rotations through pi / pi/2 / pi/3

    bool in_block(int m, int n) const;
    Vec2 wavevector(int m, int n) const { return double(m) * k1 + double(n) * k2; }
    double kmag(int m, int n) const { return norm(wavevector(m, n)); }

    // Index image of k under the pattern's generating rotation R
    // (rolls: R = rotation through pi, i.e. k -> -k).
    std::pair<int, int> rotate_index(int m, int n) const;

    // All block indices, n-major, with (0,0) included. Fixed enumeration
    // order; fields store coefficients in this order.
    const std::vector<std::pair<int, int>>& indices() const { return idx_; }
    int index_of(int m, int n) const;  // -1 if outside the block
    int size() const { return static_cast<int>(idx_.size()); }

    std::vector<std::pair<int, int>> idx_;
    std::vector<int> lookup_;  // (m+N) + (n+N)*(2N+1) -> slot or -1
};

// Builds the lattice for the given pattern per the standard generators:
// rolls l=(2pi/w,0); rectangles l1=(2pi/w,0), l2=(0,2pi/w); hexagons
// l1=(2pi/w)(1,-1/sqrt3), l2=(2pi/w)(0,2/sqrt3), duals k1=(w,0),
// k2=w(1/2,sqrt3/2). Throws std::invalid_argument for nonpositive inputs.
Lattice make_lattice(Pattern pattern, double omega, int truncation);

// All k in the truncated dual lattice with ||k| - rho| <= tol. Closed under
// k -> -k. The overload without tol uses 1e-9*omega (lattice lengths are
// exact multiples of omega up to rounding).
std::vector<WaveVector> dual_vectors_of_length(const Lattice& lat, double rho, double tol);
std::vector<WaveVector> dual_vectors_of_length(const Lattice& lat, double rho);

}  // namespace ferro
