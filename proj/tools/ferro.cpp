// Command-line driver: dimensionless / dispersion / branch / signmap / surface.
//
// Machine-readable output goes to stdout (or --out); diagnostics to stderr.
// Exit codes: 0 ok, 1 usage, 2 invalid argument or config, 3 no positive
// maximum of the dispersion relation, 4 solver non-convergence, 5 I/O error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "ferro/bifurcation.hpp"
#include "ferro/config.hpp"
#include "ferro/io.hpp"
#include "ferro/parallel.hpp"

namespace {

struct CliState {
    ferro::RunConfig cfg;
    std::string config_path;
    std::string pattern = "rolls";
    std::string law;
    std::optional<double> beta0, omega_tilde, amplitude;
    std::optional<int> truncation, ny, jobs, grid_n;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::string sweep1, sweep2;
    bool pattern_given = false;
};

void add_common(CLI::App* sub, CliState& st) {
    sub->add_option("--config", st.config_path, "key=value configuration file")
        ->envname("FERRO_CONFIG");
    sub->add_option_function<std::string>(
           "--pattern",
           [&st](const std::string& v) {
               st.pattern = v;
               st.pattern_given = true;
           },
           "rolls | rectangles | hexagons")
        ->envname("FERRO_PATTERN");
    sub->add_option("--law", st.law, "constant:mu=.. | langevin:M=..,gamma=.. | table:file")
        ->envname("FERRO_LAW");
    sub->add_option("--beta0", st.beta0, "dimensionless beta")->envname("FERRO_BETA0");
    sub->add_option("--omega-tilde", st.omega_tilde, "deep-style parametrization omega/beta0")
        ->envname("FERRO_OMEGA_TILDE");
    sub->add_option("--truncation", st.truncation, "dual-lattice truncation N")
        ->envname("FERRO_TRUNCATION");
    sub->add_option("--ny", st.ny, "vertical collocation points (0 = auto)")->envname("FERRO_NY");
    sub->add_option("--out", st.out, "output file (default stdout)")->envname("FERRO_OUT");
    sub->add_option("--jobs", st.jobs, "worker threads (0 = library default)")
        ->envname("FERRO_JOBS");
    sub->add_option("--seed", st.seed, "seed recorded in the run configuration")
        ->envname("FERRO_SEED");
    sub->add_option("--amplitude", st.amplitude, "branch amplitude s (surface)")
        ->envname("FERRO_AMPLITUDE");
    sub->add_option("--grid", st.grid_n, "surface sampling grid n (n x n)")
        ->envname("FERRO_GRID");
    sub->add_option("--sweep1", st.sweep1, "sweep axis name:min:max:count")
        ->envname("FERRO_SWEEP1");
    sub->add_option("--sweep2", st.sweep2, "sweep axis name:min:max:count")
        ->envname("FERRO_SWEEP2");
}

ferro::RunConfig assemble(CliState& st) {
    ferro::RunConfig cfg;
    if (!st.config_path.empty()) cfg = ferro::parse_config_file(st.config_path);
    if (st.pattern_given || st.config_path.empty())
        cfg.pattern = ferro::pattern_from_name(st.pattern);
    if (!st.law.empty()) cfg.law_spec = st.law;
    if (st.beta0) cfg.beta0 = *st.beta0;
    if (st.omega_tilde) cfg.omega_tilde = *st.omega_tilde;
    if (st.truncation) cfg.truncation = *st.truncation;
    if (st.ny) cfg.ny = *st.ny;
    if (st.out) cfg.out = *st.out;
    if (st.jobs) cfg.jobs = *st.jobs;
    if (st.seed) cfg.seed = *st.seed;
    if (st.amplitude) cfg.amplitude = *st.amplitude;
    if (st.grid_n) cfg.grid_n = *st.grid_n;
    if (!st.sweep1.empty()) ferro::apply_key(cfg, "sweep1", st.sweep1);
    if (!st.sweep2.empty()) ferro::apply_key(cfg, "sweep2", st.sweep2);
    if (cfg.jobs > 0) ferro::par::set_threads(cfg.jobs);
    return cfg;
}

int run_to_sink(const ferro::RunConfig& cfg, const std::function<int(std::ostream&)>& fn) {
    if (cfg.out.empty()) return fn(std::cout);
    std::ofstream f(cfg.out);
    if (!f) {
        std::cerr << "cannot open output file: " << cfg.out << "\n";
        return 5;
    }
    return fn(f);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"static doubly periodic patterns at a fluid-ferrofluid interface"};
    app.require_subcommand(1);
    CliState st;

    auto* s_dimensionless =
        app.add_subcommand("dimensionless", "physical inputs -> (alpha, beta, gamma)");
    double rho = 0, rho_prime = 0, gravity = 0, depth = 0, sigma = 0, mu0 = 0, hfield = 0;
    s_dimensionless->add_option("--rho", rho, "lower fluid density")->required();
    s_dimensionless->add_option("--rho-prime", rho_prime, "upper fluid density")->required();
    s_dimensionless->add_option("--gravity", gravity, "gravitational acceleration")->required();
    s_dimensionless->add_option("--depth", depth, "fluid depth d")->required();
    s_dimensionless->add_option("--sigma", sigma, "surface tension coefficient")->required();
    s_dimensionless->add_option("--mu0", mu0, "vacuum permeability")->required();
    s_dimensionless->add_option("--hfield", hfield, "applied field strength h")->required();

    auto* s_dispersion = app.add_subcommand("dispersion", "CSV of the dispersion relation r(|k|)");
    add_common(s_dispersion, st);
    auto* s_branch = app.add_subcommand("branch", "classify the bifurcating branch (JSON)");
    add_common(s_branch, st);
    auto* s_signmap = app.add_subcommand("signmap", "CSV sign map of gamma2 over a sweep grid");
    add_common(s_signmap, st);
    auto* s_surface = app.add_subcommand("surface", "CSV of the reconstructed branch surface");
    add_common(s_surface, st);

    CLI11_PARSE(app, argc, argv);

    try {
        if (s_dimensionless->parsed()) {
            const auto d =
                ferro::dimensionless_numbers(rho, rho_prime, gravity, depth, sigma, mu0, hfield);
            std::cout << "alpha=" << ferro::fmt17(d.alpha) << " beta=" << ferro::fmt17(d.beta)
                      << " gamma=" << ferro::fmt17(d.gamma) << "\n";
            return 0;
        }
        ferro::RunConfig cfg = assemble(st);
        if (s_dispersion->parsed())
            return run_to_sink(cfg, [&](std::ostream& os) { return ferro::cmd_dispersion(cfg, os); });
        if (s_branch->parsed()) {
            return run_to_sink(cfg, [&](std::ostream& os) {
                const ferro::BranchResult res = ferro::cmd_branch(cfg, os);
                std::cerr << "pattern=" << ferro::pattern_name(res.pattern)
                          << " classification=" << ferro::branch_class_name(res.classification)
                          << " omega=" << ferro::fmt17(res.cp.omega)
                          << " gamma0=" << ferro::fmt17(res.cp.gamma0) << "\n";
                return 0;
            });
        }
        if (s_signmap->parsed())
            return run_to_sink(cfg, [&](std::ostream& os) { return ferro::cmd_signmap(cfg, os); });
        if (s_surface->parsed())
            return run_to_sink(cfg, [&](std::ostream& os) { return ferro::cmd_surface(cfg, os); });
    } catch (const ferro::no_maximum_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ferro::convergence_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 1;
}
