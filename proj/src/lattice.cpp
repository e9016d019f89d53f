#include "ferro/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace ferro {

double norm(Vec2 a) { return std::hypot(a.x, a.z); }

const char* pattern_name(Pattern p) {
    switch (p) {
        case Pattern::Rolls: return "rolls";
        case Pattern::Rectangles: return "rectangles";
        case Pattern::Hexagons: return "hexagons";
    }
    return "?";
}

Pattern pattern_from_name(const std::string& name) {
    if (name == "rolls") return Pattern::Rolls;
    if (name == "rectangles") return Pattern::Rectangles;
    if (name == "hexagons") return Pattern::Hexagons;
    throw std::invalid_argument("unknown pattern: " + name);
}

bool Lattice::in_block(int m, int n) const {
    if (pattern == Pattern::Rolls) return n == 0 && std::abs(m) <= trunc;
    if (std::abs(m) > trunc || std::abs(n) > trunc) return false;
    if (pattern == Pattern::Hexagons && std::abs(m + n) > trunc) return false;
    return true;
}

std::pair<int, int> Lattice::rotate_index(int m, int n) const {
    switch (pattern) {
        case Pattern::Rolls: return {-m, 0};
        case Pattern::Rectangles: return {-n, m};  // R(pi/2): k1 -> k2, k2 -> -k1
        case Pattern::Hexagons: return {-n, m + n};  // R(pi/3): k1 -> k2, k2 -> k2-k1
    }
    return {m, n};
}

int Lattice::index_of(int m, int n) const {
    const int N = trunc;
    if (m < -N || m > N || n < -N || n > N) return -1;
    return lookup_[static_cast<size_t>(m + N) + static_cast<size_t>(n + N) * (2 * N + 1)];
}

Lattice make_lattice(Pattern pattern, double omega, int truncation) {
    if (!(omega > 0.0)) throw std::invalid_argument("make_lattice: omega must be positive");
    if (truncation < 1) throw std::invalid_argument("make_lattice: truncation must be >= 1");

    Lattice lat;
    lat.pattern = pattern;
    lat.omega = omega;
    lat.trunc = truncation;
    const double pi = M_PI;
    const double L = 2.0 * pi / omega;
    switch (pattern) {
        case Pattern::Rolls:
            lat.l1 = {L, 0.0};
            lat.l2 = {0.0, 0.0};
            lat.k1 = {omega, 0.0};
            lat.k2 = {0.0, 0.0};
            lat.cell_constant = L;
            lat.rotation_order = 2;
            break;
        case Pattern::Rectangles:
            lat.l1 = {L, 0.0};
            lat.l2 = {0.0, L};
            lat.k1 = {omega, 0.0};
            lat.k2 = {0.0, omega};
            lat.cell_constant = L * L;
            lat.rotation_order = 4;
            break;
        case Pattern::Hexagons:
            lat.l1 = {L, -L / std::sqrt(3.0)};
            lat.l2 = {0.0, 2.0 * L / std::sqrt(3.0)};
            lat.k1 = {omega, 0.0};
            lat.k2 = {omega / 2.0, omega * std::sqrt(3.0) / 2.0};
            lat.cell_constant = 8.0 / std::sqrt(3.0) * (pi / omega) * (pi / omega);
            lat.rotation_order = 6;
            break;
    }

    const int N = truncation;
    lat.lookup_.assign(static_cast<size_t>(2 * N + 1) * (2 * N + 1), -1);
    for (int n = -N; n <= N; ++n)
        for (int m = -N; m <= N; ++m)
            if (lat.in_block(m, n)) {
                lat.lookup_[static_cast<size_t>(m + N) + static_cast<size_t>(n + N) * (2 * N + 1)] =
                    static_cast<int>(lat.idx_.size());
                lat.idx_.emplace_back(m, n);
            }
    return lat;
}

std::vector<WaveVector> dual_vectors_of_length(const Lattice& lat, double rho) {
    return dual_vectors_of_length(lat, rho, 1e-9 * lat.omega);
}

std::vector<WaveVector> dual_vectors_of_length(const Lattice& lat, double rho, double tol) {
    if (!(rho > 0.0)) throw std::invalid_argument("dual_vectors_of_length: rho must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("dual_vectors_of_length: tol must be positive");
    std::vector<WaveVector> out;
    for (auto [m, n] : lat.indices()) {
        if (m == 0 && n == 0) continue;
        Vec2 k = lat.wavevector(m, n);
        if (std::abs(norm(k) - rho) <= tol) out.push_back({m, n, k});
    }
    return out;
}

}  // namespace ferro
