#include "doctest.h"

#include <cmath>
#include <random>

#include "ferro/fields.hpp"
#include "ferro/lattice.hpp"
#include "support.hpp"

using namespace ferro;

TEST_CASE("lattice generators match the three patterns") {
    const Lattice rolls = make_lattice(Pattern::Rolls, 1.0, 8);
    CHECK(rolls.k1.x == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rolls.k1.z == 0.0);
    CHECK(rolls.l1.x == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
    CHECK(rolls.cell_constant == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
    CHECK(rolls.rotation_order == 2);

    const Lattice hex = make_lattice(Pattern::Hexagons, 2.0, 8);
    CHECK(hex.k2.x == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(hex.k2.z == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    CHECK(hex.rotation_order == 6);
    CHECK(hex.cell_constant == doctest::Approx(8.0 / std::sqrt(3.0) * std::pow(M_PI / 2.0, 2)));

    const Lattice rect = make_lattice(Pattern::Rectangles, 1.0, 8);
    CHECK(std::abs(dot(rect.k1, rect.l2)) < 1e-14);
    CHECK(rect.cell_constant == doctest::Approx(4.0 * M_PI * M_PI).epsilon(1e-14));
    CHECK(rect.rotation_order == 4);
}

TEST_CASE("duality relations hold to machine precision") {
    for (Pattern p : {Pattern::Rolls, Pattern::Rectangles, Pattern::Hexagons}) {
        const Lattice lat = make_lattice(p, 0.7, 4);
        CHECK(std::abs(dot(lat.k1, lat.l1) - 2.0 * M_PI) < 1e-12);
        if (p != Pattern::Rolls) {
            CHECK(std::abs(dot(lat.k2, lat.l2) - 2.0 * M_PI) < 1e-12);
            CHECK(std::abs(dot(lat.k1, lat.l2)) < 1e-12);
            CHECK(std::abs(dot(lat.k2, lat.l1)) < 1e-12);
            CHECK(norm(lat.l1) == doctest::Approx(norm(lat.l2)).epsilon(1e-13));
        }
    }
}

TEST_CASE("invalid lattice arguments are rejected") {
    CHECK_THROWS_AS(make_lattice(Pattern::Rolls, 0.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_lattice(Pattern::Rolls, -1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_lattice(Pattern::Hexagons, 1.0, 0), std::invalid_argument);
}

TEST_CASE("dual vectors of length omega: 2 / 4 / 6") {
    const double w = 1.3;
    const double tol = 1e-9 * w;
    auto count = [&](Pattern p) {
        const Lattice lat = make_lattice(p, w, 8);
        auto shell = dual_vectors_of_length(lat, w, tol);
        for (const auto& k : shell) {
            CHECK(norm(k.cartesian) == doctest::Approx(w).epsilon(1e-12));
            bool has_neg = false;
            for (const auto& q : shell) has_neg |= (q.m == -k.m && q.n == -k.n);
            CHECK(has_neg);
        }
        return shell.size();
    };
    CHECK(count(Pattern::Rolls) == 2);
    CHECK(count(Pattern::Rectangles) == 4);
    CHECK(count(Pattern::Hexagons) == 6);

    const Lattice hex = make_lattice(Pattern::Hexagons, w, 8);
    bool has_k3 = false;
    for (const auto& k : dual_vectors_of_length(hex, w, tol))
        has_k3 |= (k.m == -1 && k.n == 1);
    CHECK(has_k3);  // k3 = k2 - k1 lies on the shell

    const Lattice rect = make_lattice(Pattern::Rectangles, w, 8);
    CHECK(dual_vectors_of_length(rect, w / 2.0, tol).empty());
}

TEST_CASE("rotation closes over the truncation block") {
    for (Pattern p : {Pattern::Rolls, Pattern::Rectangles, Pattern::Hexagons}) {
        const Lattice lat = make_lattice(p, 1.0, 5);
        for (auto [m, n] : lat.indices()) {
            int cm = m, cn = n;
            for (int g = 0; g < lat.rotation_order; ++g) {
                std::tie(cm, cn) = lat.rotate_index(cm, cn);
                CHECK(lat.in_block(cm, cn));
            }
            CHECK(cm == m);  // order-many rotations = identity
            CHECK(cn == n);
        }
    }
}

TEST_CASE("symmetrize: fixed points and rotation averages") {
    const double w = 1.0;
    const Lattice hex = make_lattice(Pattern::Hexagons, w, 4);
    SurfaceField e1(hex);
    e1.add_cos(1, 0, 1.0);
    e1.add_cos(0, 1, 1.0);
    e1.add_cos(-1, 1, 1.0);
    CHECK(test::max_diff(symmetrize(e1, hex), e1) < 1e-14);

    const Lattice rolls = make_lattice(Pattern::Rolls, w, 4);
    SurfaceField s(rolls);
    s.add_sin(1, 0, 1.0);
    CHECK(sup_coeff_norm(symmetrize(s, rolls)) < 1e-14);

    const Lattice rect = make_lattice(Pattern::Rectangles, w, 4);
    SurfaceField cz(rect);
    cz.add_cos(0, 1, 1.0);
    SurfaceField expect(rect);
    expect.add_cos(1, 0, 0.5);
    expect.add_cos(0, 1, 0.5);
    CHECK(test::max_diff(symmetrize(cz, rect), expect) < 1e-14);
}

TEST_CASE("symmetrize is an idempotent projection and commutes with R") {
    std::mt19937_64 rng(7);
    for (Pattern p : {Pattern::Rolls, Pattern::Rectangles, Pattern::Hexagons}) {
        const Lattice lat = make_lattice(p, 1.0, 4);
        const SurfaceField f = test::random_field(lat, rng);
        const SurfaceField sf = symmetrize(f, lat);
        CHECK(test::max_diff(symmetrize(sf, lat), sf) < 1e-12);
        CHECK(test::max_diff(symmetrize(test::rotate_field(f, lat), lat), sf) < 1e-12);
        CHECK(test::max_diff(test::rotate_field(sf, lat), sf) < 1e-12);
    }
}
