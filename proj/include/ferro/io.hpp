#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "ferro/bifurcation.hpp"
#include "ferro/config.hpp"
#include "ferro/fields.hpp"

namespace ferro {

// Full-precision text form (17 significant digits, round-trips bit-exactly).
std::string fmt17(double v);

nlohmann::json surface_to_json(const SurfaceField& f);
void surface_to_csv(const SurfaceField& f, std::ostream& os, int n);

// Diagnostic dump of a nonlinear DN solve (iteration residual history).
nlohmann::json dn_diagnostics_json(const NonlinearDn& nl);

nlohmann::json branch_result_to_json(const BranchResult& r);

// Scalar view of a serialized BranchResult, for round-trip checks.
struct BranchScalars {
    std::string pattern, classification;
    double beta0, omega, gamma0, omega_tilde, C_star, gamma1;
    bool has_gamma2;
    double gamma2;
};
BranchScalars branch_scalars_from_json(const nlohmann::json& j);

// --- CLI command cores (testable without a process) -----------------------

int cmd_dispersion(const RunConfig& cfg, std::ostream& os);
BranchResult cmd_branch(const RunConfig& cfg, std::ostream& json_out);
int cmd_signmap(const RunConfig& cfg, std::ostream& os);
int cmd_surface(const RunConfig& cfg, std::ostream& os);

}  // namespace ferro
