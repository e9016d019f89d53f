#include "ferro/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ferro/linear.hpp"

namespace ferro {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::map<std::string, double> parse_kv_list(const std::string& s) {
    std::map<std::string, double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("law parameter needs key=value: " + item);
        out[trim(item.substr(0, eq))] = std::stod(trim(item.substr(eq + 1)));
    }
    return out;
}

}  // namespace

MagnetizationLaw parse_law(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string kind = trim(colon == std::string::npos ? spec : spec.substr(0, colon));
    const std::string rest = colon == std::string::npos ? "" : trim(spec.substr(colon + 1));
    if (kind == "constant") {
        const auto kv = parse_kv_list(rest.empty() ? "mu=2" : rest);
        if (!kv.count("mu")) throw std::invalid_argument("constant law needs mu=<value>");
        return MagnetizationLaw::constant(kv.at("mu"));
    }
    if (kind == "langevin") {
        const auto kv = parse_kv_list(rest);
        if (!kv.count("M") || !kv.count("gamma"))
            throw std::invalid_argument("langevin law needs M=<value>,gamma=<value>");
        return MagnetizationLaw::langevin(kv.at("M"), kv.at("gamma"));
    }
    if (kind == "table" || kind == "custom-table") {
        std::ifstream in(rest);
        if (!in) throw std::invalid_argument("table law: cannot open " + rest);
        std::vector<double> s, mu;
        std::string line;
        while (std::getline(in, line)) {
            line = trim(line);
            if (line.empty() || line[0] == '#') continue;
            std::replace(line.begin(), line.end(), ',', ' ');
            std::stringstream ls(line);
            double a, b;
            if (ls >> a >> b) {
                s.push_back(a);
                mu.push_back(b);
            }
        }
        return MagnetizationLaw::table(std::move(s), std::move(mu));
    }
    throw std::invalid_argument("unknown law kind: " + kind);
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    auto num = [&] { return std::stod(value); };
    if (key == "pattern") cfg.pattern = pattern_from_name(value);
    else if (key == "law") cfg.law_spec = value;
    else if (key == "beta0") cfg.beta0 = num();
    else if (key == "omega_tilde") cfg.omega_tilde = num();
    else if (key == "rho") cfg.rho = num();
    else if (key == "rho_prime") cfg.rho_prime = num();
    else if (key == "gravity") cfg.gravity = num();
    else if (key == "depth") cfg.depth = num();
    else if (key == "sigma") cfg.sigma = num();
    else if (key == "mu0") cfg.mu0 = num();
    else if (key == "hfield") cfg.hfield = num();
    else if (key == "truncation") cfg.truncation = static_cast<int>(num());
    else if (key == "ny") cfg.ny = static_cast<int>(num());
    else if (key == "amplitude") cfg.amplitude = num();
    else if (key == "grid_n") cfg.grid_n = static_cast<int>(num());
    else if (key == "out") cfg.out = value;
    else if (key == "jobs") cfg.jobs = static_cast<int>(num());
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(std::stoull(value));
    else if (key == "sweep1" || key == "sweep2") {
        // name:min:max:count
        std::stringstream ss(value);
        std::string name, smin, smax, scount;
        if (!std::getline(ss, name, ':') || !std::getline(ss, smin, ':') ||
            !std::getline(ss, smax, ':') || !std::getline(ss, scount, ':'))
            throw std::invalid_argument("sweep axis needs name:min:max:count, got " + value);
        SweepAxis ax{trim(name), std::stod(smin), std::stod(smax),
                     static_cast<int>(std::stoul(scount))};
        (key == "sweep1" ? cfg.sweep1 : cfg.sweep2) = ax;
    } else {
        throw std::invalid_argument("unknown config key: " + key);
    }
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected key=value");
        apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

Dimensionless dimensionless_numbers(double rho, double rho_prime, double gravity, double depth,
                                    double sigma, double mu0, double hfield) {
    for (double v : {rho, rho_prime, gravity, depth, sigma, mu0, hfield})
        if (!(v > 0.0)) throw std::invalid_argument("dimensionless: all inputs must be positive");
    if (!(rho > rho_prime))
        throw std::invalid_argument("dimensionless: lower fluid must be denser (rho > rho')");
    Dimensionless d;
    d.alpha = (rho - rho_prime) * gravity * depth / (mu0 * hfield * hfield);
    d.beta = sigma / (mu0 * hfield * hfield * depth);
    d.gamma = d.alpha * d.beta;
    return d;
}

double resolve_beta0(const RunConfig& cfg, const MagnetizationLaw& law) {
    const int provided = (cfg.beta0 > 0.0) + (cfg.omega_tilde > 0.0) + cfg.physical_set();
    if (cfg.physical_any() && !cfg.physical_set())
        throw std::invalid_argument("physical inputs are incomplete (need rho, rho_prime, "
                                    "gravity, depth, sigma, mu0, hfield)");
    if (provided != 1)
        throw std::invalid_argument(
            "exactly one of beta0, omega_tilde, or the physical inputs must be provided");
    if (cfg.beta0 > 0.0) return cfg.beta0;
    if (cfg.omega_tilde > 0.0) return beta0_for_omega_tilde(law, cfg.omega_tilde);
    return dimensionless_numbers(*cfg.rho, *cfg.rho_prime, *cfg.gravity, *cfg.depth, *cfg.sigma,
                                 *cfg.mu0, *cfg.hfield)
        .beta;
}

}  // namespace ferro
