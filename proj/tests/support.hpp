#pragma once

#include <random>

#include "ferro/fields.hpp"
#include "ferro/lattice.hpp"

namespace ferro::test {

// Random real field over the whole truncation block.
inline SurfaceField random_field(const Lattice& lat, std::mt19937_64& rng, double amp = 1.0,
                                 bool zero_mean = false) {
    std::uniform_real_distribution<double> U(-amp, amp);
    SurfaceField f(lat);
    for (auto [m, n] : lat.indices()) {
        if (m < 0 || (m == 0 && n < 0)) continue;
        if (m == 0 && n == 0) {
            if (!zero_mean) f.set(0, 0, cplx(U(rng), 0.0));
            continue;
        }
        const cplx c(U(rng), U(rng));
        f.set(m, n, c);
        f.set(-m, -n, std::conj(c));
    }
    return f;
}

// Random real field supported on the |k| = omega shell.
inline SurfaceField random_shell_field(const Lattice& lat, std::mt19937_64& rng,
                                       double amp = 1.0) {
    std::uniform_real_distribution<double> U(-amp, amp);
    SurfaceField f(lat);
    for (const auto& k : dual_vectors_of_length(lat, lat.omega, 1e-9 * lat.omega)) {
        if (k.m < 0 || (k.m == 0 && k.n < 0)) continue;
        f.add_cos(k.m, k.n, U(rng));
        f.add_sin(k.m, k.n, U(rng));
    }
    return f;
}

inline StateTriple random_triple(const Lattice& lat, std::mt19937_64& rng, double amp = 1.0) {
    StateTriple t(lat);
    t.eta = random_field(lat, rng, amp);
    t.phi_upper = random_field(lat, rng, amp, true);
    t.phi_lower = random_field(lat, rng, amp);
    return t;
}

// Field transformed by the pattern's generating rotation: (R f)(x) = f(R^-1 x).
inline SurfaceField rotate_field(const SurfaceField& f, const Lattice& lat) {
    SurfaceField out(lat);
    for (int s = 0; s < lat.size(); ++s) {
        const auto [m, n] = lat.indices()[s];
        const auto [rm, rn] = lat.rotate_index(m, n);
        out.add(rm, rn, f.data()[s]);
    }
    return out;
}

inline StateTriple rotate_triple(const StateTriple& t, const Lattice& lat) {
    StateTriple out;
    out.eta = rotate_field(t.eta, lat);
    out.phi_upper = rotate_field(t.phi_upper, lat);
    out.phi_lower = rotate_field(t.phi_lower, lat);
    return out;
}

inline double max_diff(const SurfaceField& a, const SurfaceField& b) {
    return sup_coeff_norm(a - b);
}

}  // namespace ferro::test
