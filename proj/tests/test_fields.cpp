#include "doctest.h"

#include <cmath>
#include <random>

#include "ferro/chebyshev.hpp"
#include "ferro/fields.hpp"
#include "support.hpp"

using namespace ferro;

TEST_CASE("chebyshev differentiation is spectrally accurate") {
    const ChebGrid g = cheb_grid(24, -2.0, 0.0);
    const int n = static_cast<int>(g.y.size());
    Eigen::VectorXd f(n), fp(n);
    for (int i = 0; i < n; ++i) {
        f[i] = std::exp(g.y[i]) * (1.0 + g.y[i]);
        fp[i] = std::exp(g.y[i]) * (2.0 + g.y[i]);
    }
    CHECK((g.deriv * f - fp).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(g.y[0] == doctest::Approx(0.0));
    CHECK(g.y[n - 1] == doctest::Approx(-2.0));
}

TEST_CASE("multiply: product identities") {
    const Lattice lat = make_lattice(Pattern::Rolls, 1.0, 8);
    SurfaceField c(lat);
    c.add_cos(1, 0, 1.0);
    SurfaceField p = multiply(c, c);  // cos^2 = 1/2 + 1/2 cos 2wx
    SurfaceField expect(lat);
    expect.set(0, 0, 0.5);
    expect.add_cos(2, 0, 0.5);
    CHECK(test::max_diff(p, expect) < 1e-15);

    CHECK(sup_coeff_norm(multiply(c, SurfaceField(lat))) == 0.0);

    const Lattice other = make_lattice(Pattern::Rolls, 1.0, 8);
    CHECK_THROWS_AS(multiply(c, SurfaceField(other)), std::invalid_argument);
}

TEST_CASE("multiply agrees with the physical-grid oracle") {
    std::mt19937_64 rng(3);
    SUBCASE("rolls N=16") {
        const Lattice lat = make_lattice(Pattern::Rolls, 1.0, 16);
        const SurfaceField f = test::random_field(lat, rng), g = test::random_field(lat, rng);
        const GridSize gs = grid_for(lat, 2);
        auto fg = to_grid(f, gs);
        const auto gg = to_grid(g, gs);
        for (size_t i = 0; i < fg.size(); ++i) fg[i] *= gg[i];
        CHECK(test::max_diff(multiply(f, g), from_grid(lat, fg, gs)) < 1e-12);
    }
    SUBCASE("hexagons N=5") {
        const Lattice lat = make_lattice(Pattern::Hexagons, 1.0, 5);
        const SurfaceField f = test::random_field(lat, rng), g = test::random_field(lat, rng);
        const GridSize gs = grid_for(lat, 2);
        auto fg = to_grid(f, gs);
        const auto gg = to_grid(g, gs);
        for (size_t i = 0; i < fg.size(); ++i) fg[i] *= gg[i];
        CHECK(test::max_diff(multiply(f, g), from_grid(lat, fg, gs)) < 1e-12);
    }
}

TEST_CASE("grad_h basics and the hexagon e1 stationary point") {
    const Lattice lat = make_lattice(Pattern::Rolls, 2.0, 4);
    SurfaceField c(lat);
    c.add_cos(1, 0, 1.0);
    auto [cx, cz] = grad_h(c);
    SurfaceField expect(lat);
    expect.add_sin(1, 0, -2.0);  // d/dx cos(2x) = -2 sin(2x)
    CHECK(test::max_diff(cx, expect) < 1e-15);
    CHECK(sup_coeff_norm(cz) == 0.0);

    SurfaceField k(lat);
    k.set(0, 0, 3.0);
    auto [kx, kz] = grad_h(k);
    CHECK(sup_coeff_norm(kx) == 0.0);
    CHECK(sup_coeff_norm(kz) == 0.0);

    const Lattice hex = make_lattice(Pattern::Hexagons, 1.0, 4);
    SurfaceField e1(hex);
    e1.add_cos(1, 0, 1.0);
    e1.add_cos(0, 1, 1.0);
    e1.add_cos(-1, 1, 1.0);
    auto [ex, ez] = grad_h(e1);
    const SurfaceField g2 = multiply(ex, ex) + multiply(ez, ez);
    CHECK(std::abs(g2.eval({0.0, 0.0})) < 1e-12);  // common maximum of the three cosines
}

TEST_CASE("sobolev norm and Parseval") {
    const Lattice lat = make_lattice(Pattern::Rolls, 0.5, 8);
    CHECK(sobolev_norm(SurfaceField(lat), 1.5) == 0.0);
    SurfaceField c(lat);
    c.add_cos(1, 0, 1.0);
    CHECK(sobolev_norm(c, 0.0) ==
          doctest::Approx(std::sqrt(2.0 * M_PI / 0.5 * 0.5)).epsilon(1e-14));

    std::mt19937_64 rng(5);
    for (Pattern p : {Pattern::Rolls, Pattern::Hexagons}) {
        const Lattice l2 = make_lattice(p, 1.0, 4);
        const SurfaceField f = test::random_field(l2, rng);
        const auto grid = to_grid(f, grid_for(l2, 2));
        double mean_sq = 0.0;
        for (double v : grid) mean_sq += v * v;
        mean_sq /= static_cast<double>(grid.size());
        const double integral = l2.cell_constant * mean_sq;
        CHECK(std::pow(sobolev_norm(f, 0.0), 2) == doctest::Approx(integral).epsilon(1e-10));
    }
}

TEST_CASE("reciprocal_one_plus: series and divergence guard") {
    const Lattice lat = make_lattice(Pattern::Rolls, 1.0, 16);
    SurfaceField z(lat);
    SurfaceField one = reciprocal_one_plus(1.0, z, 8);
    SurfaceField unit(lat);
    unit.set(0, 0, 1.0);
    CHECK(test::max_diff(one, unit) < 1e-15);

    SurfaceField f(lat);
    f.add_cos(1, 0, 1.0);
    const SurfaceField lin = reciprocal_one_plus(0.2, f, 1);
    CHECK(test::max_diff(lin, unit - 0.2 * f) < 1e-15);

    SurfaceField f3(lat);
    f3.add_cos(1, 0, 0.3);
    const SurfaceField r = reciprocal_one_plus(1.0, f3, 12);
    const GridSize gs = grid_for(lat, 2);
    const auto rg = to_grid(r, gs);
    const auto fg = to_grid(f3, gs);
    double sup = 0.0;
    for (size_t i = 0; i < rg.size(); ++i)
        sup = std::max(sup, std::abs(rg[i] - 1.0 / (1.0 + fg[i])));
    CHECK(sup < 1e-6);

    SurfaceField big(lat);
    big.add_cos(1, 0, 1.1);
    CHECK_THROWS_AS(reciprocal_one_plus(1.0, big, 4), divergence_error);
}

TEST_CASE("hermitian symmetry survives the field algebra") {
    std::mt19937_64 rng(9);
    const Lattice lat = make_lattice(Pattern::Hexagons, 1.0, 4);
    const SurfaceField f = test::random_field(lat, rng, 0.3);
    const SurfaceField g = test::random_field(lat, rng, 0.3);
    CHECK(multiply(f, g).max_hermitian_defect() < 1e-14);
    auto [fx, fz] = grad_h(f);
    CHECK(fx.max_hermitian_defect() < 1e-14);
    CHECK(fz.max_hermitian_defect() < 1e-14);
    const SurfaceField small = test::random_shell_field(lat, rng, 0.1);
    CHECK(reciprocal_one_plus(0.5, small, 8).max_hermitian_defect() < 1e-13);
}

TEST_CASE("Leibniz rule on products inside the truncation") {
    std::mt19937_64 rng(10);
    const Lattice big = make_lattice(Pattern::Rectangles, 1.0, 8);
    // supports confined to |m|,|n| <= 4 so the product fits in the block
    SurfaceField f(big), g(big);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int m = -4; m <= 4; ++m)
        for (int n = -4; n <= 4; ++n) {
            if (m < 0 || (m == 0 && n < 0)) continue;
            if (m == 0 && n == 0) continue;
            cplx a(U(rng), U(rng)), b(U(rng), U(rng));
            f.set(m, n, a);
            f.set(-m, -n, std::conj(a));
            g.set(m, n, b);
            g.set(-m, -n, std::conj(b));
        }
    auto [px, pz] = grad_h(multiply(f, g));
    auto [fx, fz] = grad_h(f);
    auto [gx, gz] = grad_h(g);
    CHECK(test::max_diff(px, multiply(fx, g) + multiply(f, gx)) < 1e-12);
    CHECK(test::max_diff(pz, multiply(fz, g) + multiply(f, gz)) < 1e-12);
}

TEST_CASE("state triples: mean-zero projection and grid round trip") {
    const Lattice lat = make_lattice(Pattern::Rectangles, 1.0, 3);
    std::mt19937_64 rng(12);
    StateTriple t = test::random_triple(lat, rng);
    t.phi_upper.set(0, 0, cplx(0.3, 0.0));
    t.project_phi_upper_mean();
    CHECK(t.phi_upper.coeff(0, 0) == cplx{});

    const SurfaceField f = test::random_field(lat, rng);
    CHECK(test::max_diff(from_grid(lat, to_grid(f, grid_for(lat, 2)), grid_for(lat, 2)), f) <
          1e-13);
}
