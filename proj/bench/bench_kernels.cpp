// Compares the OpenMP kernels against the serial reference path.
//
//   ./bench/ferro_bench [threads]
//
// Timed kernels: per-mode vertical solves of the order-3 Taylor recursion,
// the quasi-Newton nonlinear strip solve, and a gamma2 sign-map sweep.
// Outputs also cross-check that both paths produce identical coefficients.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <random>
#include <sstream>

#include "ferro/bifurcation.hpp"
#include "ferro/config.hpp"
#include "ferro/dn.hpp"
#include "ferro/io.hpp"
#include "ferro/parallel.hpp"

using namespace ferro;
using clock_type = std::chrono::steady_clock;

namespace {

double ms_since(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

template <class F>
double time_best_of(int reps, F&& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = clock_type::now();
        fn();
        best = std::min(best, ms_since(t0));
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) par::set_threads(std::atoi(argv[1]));

    const auto law = MagnetizationLaw::langevin(1.5, 2.5);
    const double beta0 = 0.4 * dispersion_threshold(law.constants_at_one());
    const CriticalPoint cp = critical_point(beta0, law);
    const Lattice lat = make_lattice(Pattern::Hexagons, cp.omega, 6);
    DnOptions opt;
    opt.ny = 48;
    DnWorkspace ws(lat, law, beta0, opt);

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    SurfaceField eta(lat), Phi(lat);
    for (const auto& k : dual_vectors_of_length(lat, lat.omega)) {
        if (k.m < 0 || (k.m == 0 && k.n < 0)) continue;
        eta.add_cos(k.m, k.n, U(rng));
        Phi.add_cos(k.m, k.n, U(rng));
        Phi.add_sin(k.m, k.n, U(rng));
    }

    std::printf("%-28s %10s %10s %8s %s\n", "kernel", "serial ms", "openmp ms", "speedup",
                "identical");

    // taylor recursion, order 3, both strips
    {
        DnExpansion a, b;
        const double ts = time_best_of(3, [&] {
            par::serial_section guard;
            a = taylor_dn(ws, Strip::Lower, eta, Phi, 3);
        });
        const double tp = time_best_of(3, [&] { b = taylor_dn(ws, Strip::Lower, eta, Phi, 3); });
        const bool same = std::memcmp(a.G[2].data().data(), b.G[2].data().data(),
                                      a.G[2].data().size() * sizeof(cplx)) == 0;
        std::printf("%-28s %10.1f %10.1f %8.2f %s\n", "taylor_dn lower order 3", ts, tp, ts / tp,
                    same ? "yes" : "NO");
    }

    // nonlinear quasi-Newton solve
    {
        NonlinearDn a, b;
        const double ts = time_best_of(3, [&] {
            par::serial_section guard;
            a = nonlinear_dn(ws, Strip::Lower, 0.01 * eta, 0.01 * Phi, 1e-12);
        });
        const double tp =
            time_best_of(3, [&] { b = nonlinear_dn(ws, Strip::Lower, 0.01 * eta, 0.01 * Phi, 1e-12); });
        const bool same =
            std::memcmp(a.G.data().data(), b.G.data().data(), a.G.data().size() * sizeof(cplx)) == 0;
        std::printf("%-28s %10.1f %10.1f %8.2f %s\n", "nonlinear_dn lower", ts, tp, ts / tp,
                    same ? "yes" : "NO");
    }

    // sign-map sweep (embarrassingly parallel grid of classify_branch calls)
    {
        RunConfig cfg;
        cfg.pattern = Pattern::Rolls;
        cfg.law_spec = "constant:mu=2";
        apply_key(cfg, "sweep1", "mu:1.5:6:6");
        apply_key(cfg, "sweep2", "omega_tilde:0.5:4:4");
        std::string sa, sb;
        const double ts = time_best_of(2, [&] {
            par::serial_section guard;
            std::ostringstream os;
            cmd_signmap(cfg, os);
            sa = os.str();
        });
        const double tp = time_best_of(2, [&] {
            std::ostringstream os;
            cmd_signmap(cfg, os);
            sb = os.str();
        });
        std::printf("%-28s %10.1f %10.1f %8.2f %s\n", "signmap 6x4 sweep", ts, tp, ts / tp,
                    sa == sb ? "yes" : "NO");
    }
    return 0;
}
