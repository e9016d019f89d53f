#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ferro/lattice.hpp"
#include "ferro/magnetization.hpp"

namespace ferro {

struct SweepAxis {
    std::string name;
    double min = 0.0, max = 0.0;
    int count = 0;
    bool set() const { return !name.empty(); }
};

// Flat key=value run configuration; command-line flags override file values.
struct RunConfig {
    Pattern pattern = Pattern::Rolls;
    std::string law_spec = "constant:mu=2";

    double beta0 = 0.0;        // 0 = unset
    double omega_tilde = 0.0;  // 0 = unset; deep-style parametrization
    std::optional<double> rho, rho_prime, gravity, depth, sigma, mu0, hfield;

    int truncation = 4;
    int ny = 0;
    double amplitude = 0.01;
    int grid_n = 64;
    SweepAxis sweep1, sweep2;
    std::string out;
    int jobs = 0;
    std::uint64_t seed = 12345;

    bool physical_set() const {
        return rho && rho_prime && gravity && depth && sigma && mu0 && hfield;
    }
    bool physical_any() const {
        return rho || rho_prime || gravity || depth || sigma || mu0 || hfield;
    }
};

// "constant:mu=2", "langevin:M=1,gamma=3", "table:<csv path>".
MagnetizationLaw parse_law(const std::string& spec);

RunConfig parse_config_file(const std::string& path);
void apply_key(RunConfig& cfg, const std::string& key, const std::string& value);

// alpha = (rho-rho') g d / (mu0 h^2), beta = sigma/(mu0 h^2 d), gamma = alpha beta.
struct Dimensionless {
    double alpha, beta, gamma;
};
Dimensionless dimensionless_numbers(double rho, double rho_prime, double gravity, double depth,
                                    double sigma, double mu0, double hfield);

// Exactly one of beta0 / omega_tilde / the physical set must be provided.
double resolve_beta0(const RunConfig& cfg, const MagnetizationLaw& law);

}  // namespace ferro
