#include "ferro/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <vector>

#include "ferro/closed_forms.hpp"
#include "ferro/parallel.hpp"

namespace ferro {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::json surface_to_json(const SurfaceField& f) {
    nlohmann::json arr = nlohmann::json::array();
    const auto& idx = f.lattice().indices();
    for (int s = 0; s < f.lattice().size(); ++s) {
        const cplx c = f.data()[s];
        if (c == cplx{}) continue;
        arr.push_back({idx[s].first, idx[s].second, c.real(), c.imag()});
    }
    return arr;
}

void surface_to_csv(const SurfaceField& f, std::ostream& os, int n) {
    const Lattice& lat = f.lattice();
    os << "x,z,value\n";
    for (int i2 = 0; i2 < n; ++i2) {
        for (int i1 = 0; i1 < n; ++i1) {
            const double t1 = 2.0 * M_PI * i1 / n, t2 = 2.0 * M_PI * i2 / n;
            Vec2 x;
            if (lat.pattern == Pattern::Rolls) {
                x = {t1 / (2.0 * M_PI) * lat.l1.x, (t2 / (2.0 * M_PI)) * lat.l1.x};
            } else {
                x = (t1 / (2.0 * M_PI)) * lat.l1 + (t2 / (2.0 * M_PI)) * lat.l2;
            }
            os << fmt17(x.x) << ',' << fmt17(x.z) << ',' << fmt17(f.eval(x)) << '\n';
        }
    }
}

nlohmann::json dn_diagnostics_json(const NonlinearDn& nl) {
    return {{"iterations", nl.iterations},
            {"residual", nl.residual},
            {"residual_history", nl.residual_history}};
}

nlohmann::json branch_result_to_json(const BranchResult& r) {
    nlohmann::json j;
    j["pattern"] = pattern_name(r.pattern);
    j["beta0"] = r.beta0;
    j["critical"] = {{"omega", r.cp.omega},
                     {"gamma0", r.cp.gamma0},
                     {"omega_tilde", r.cp.omega_tilde},
                     {"v", {r.cp.v[0], r.cp.v[1], r.cp.v[2]}},
                     {"v_star", {r.cp.v_star[0], r.cp.v_star[1], r.cp.v_star[2]}},
                     {"C_star", r.cp.C_star},
                     {"law_constants",
                      {{"mu1", r.cp.lc.mu1},
                       {"dmu1", r.cp.lc.dmu1},
                       {"ddmu1", r.cp.lc.ddmu1},
                       {"dddmu1", r.cp.lc.dddmu1},
                       {"S1", r.cp.lc.S1}}}};
    j["gamma1"] = r.gamma1;
    if (r.gamma2)
        j["gamma2"] = *r.gamma2;
    else
        j["gamma2"] = nullptr;
    j["classification"] = branch_class_name(r.classification);
    j["diagnostics"] = r.diagnostics;
    if (r.lattice) {
        j["truncation"] = r.lattice->trunc;
        j["w1"] = {{"eta", surface_to_json(r.w1.eta)},
                   {"phi_upper", surface_to_json(r.w1.phi_upper)},
                   {"phi_lower", surface_to_json(r.w1.phi_lower)}};
    }
    return j;
}

BranchScalars branch_scalars_from_json(const nlohmann::json& j) {
    BranchScalars s;
    s.pattern = j.at("pattern").get<std::string>();
    s.classification = j.at("classification").get<std::string>();
    s.beta0 = j.at("beta0").get<double>();
    s.omega = j.at("critical").at("omega").get<double>();
    s.gamma0 = j.at("critical").at("gamma0").get<double>();
    s.omega_tilde = j.at("critical").at("omega_tilde").get<double>();
    s.C_star = j.at("critical").at("C_star").get<double>();
    s.gamma1 = j.at("gamma1").get<double>();
    s.has_gamma2 = !j.at("gamma2").is_null();
    s.gamma2 = s.has_gamma2 ? j.at("gamma2").get<double>() : 0.0;
    return s;
}

int cmd_dispersion(const RunConfig& cfg, std::ostream& os) {
    const MagnetizationLaw law = parse_law(cfg.law_spec);
    const double beta0 = resolve_beta0(cfg, law);
    const LawConstants lc = law.constants_at_one();
    const double ksup =
        std::max(1e-6, lc.mu1 * (lc.mu1 - 1.0) * (lc.mu1 - 1.0) / (lc.mu1 + lc.S1));

    bool have_max = false;
    CriticalPoint cp;
    try {
        cp = critical_point(beta0, law);
        have_max = true;
    } catch (const no_maximum_error&) {
    }

    os << "# dispersion law=" << cfg.law_spec << " beta0=" << fmt17(beta0) << "\n";
    if (!have_max) os << "# no-maximum\n";
    os << "kmag,r,is_max\n";
    const int n = 400;
    bool wrote_max = false;
    for (int i = 1; i <= n; ++i) {
        const double k = 1.2 * ksup * i / n;
        if (have_max && !wrote_max && k > cp.omega) {
            os << fmt17(cp.omega) << ',' << fmt17(cp.gamma0) << ",1\n";
            wrote_max = true;
        }
        os << fmt17(k) << ',' << fmt17(dispersion_r(k, beta0, lc)) << ",0\n";
    }
    return 0;
}

BranchResult cmd_branch(const RunConfig& cfg, std::ostream& json_out) {
    const MagnetizationLaw law = parse_law(cfg.law_spec);
    const double beta0 = resolve_beta0(cfg, law);
    BranchOptions opt;
    opt.truncation = cfg.truncation;
    opt.ny = cfg.ny;
    BranchResult res = classify_branch(cfg.pattern, law, beta0, opt);
    json_out << branch_result_to_json(res).dump(2) << "\n";
    return res;
}

int cmd_signmap(const RunConfig& cfg, std::ostream& os) {
    const MagnetizationLaw base = parse_law(cfg.law_spec);
    SweepAxis a1 = cfg.sweep1, a2 = cfg.sweep2;
    const bool langevin = base.kind() == MagnetizationLaw::Kind::Langevin;
    if (!a1.set()) a1 = langevin ? SweepAxis{"M", 2.0, 40.0, 13} : SweepAxis{"mu", 1.5, 6.0, 13};
    if (!a2.set())
        a2 = langevin ? SweepAxis{"gamma", 0.5, 8.0, 13} : SweepAxis{"omega_tilde", 0.5, 4.0, 13};
    const double deep_wt = cfg.omega_tilde > 0.0 ? cfg.omega_tilde : 25.0;

    struct Row {
        double p1, p2, gamma2;
        std::string status;
    };
    std::vector<Row> rows(static_cast<size_t>(a1.count) * std::max(a2.count, 1));

    auto value_at = [](const SweepAxis& ax, int i) {
        return ax.count < 2 ? ax.min : ax.min + (ax.max - ax.min) * i / (ax.count - 1);
    };

    par::parallel_for(static_cast<long>(rows.size()), [&](long q) {
        const int i = static_cast<int>(q) % a1.count;
        const int j = static_cast<int>(q) / a1.count;
        const double p1 = value_at(a1, i), p2 = value_at(a2, j);
        Row row{p1, p2, std::nan(""), "ok"};
        try {
            MagnetizationLaw law = base;
            double beta0;
            if (langevin) {
                law = MagnetizationLaw::langevin(p1, p2);
                beta0 = beta0_for_omega_tilde(law, deep_wt);
            } else {
                law = MagnetizationLaw::constant(p1);
                beta0 = closed_forms::critical_for_constant(p1, p2).beta0;
            }
            BranchOptions opt;
            opt.truncation = cfg.truncation;
            opt.ny = cfg.ny;
            BranchResult res = classify_branch(cfg.pattern, law, beta0, opt);
            if (res.gamma2) {
                row.gamma2 = *res.gamma2;
            } else {
                row.status = "transcritical";
            }
        } catch (const std::exception& e) {
            row.status = e.what();
            std::replace(row.status.begin(), row.status.end(), ',', ';');
            std::replace(row.status.begin(), row.status.end(), '\n', ' ');
        }
        rows[q] = std::move(row);
    });

    os << a1.name << ',' << a2.name << ",gamma2,sign,status\n";
    for (const Row& r : rows) {
        const int sign = std::isnan(r.gamma2) ? 0 : (r.gamma2 > 0.0 ? 1 : -1);
        os << fmt17(r.p1) << ',' << fmt17(r.p2) << ',' << fmt17(r.gamma2) << ',' << sign << ','
           << r.status << '\n';
    }
    return 0;
}

int cmd_surface(const RunConfig& cfg, std::ostream& os) {
    const MagnetizationLaw law = parse_law(cfg.law_spec);
    const double beta0 = resolve_beta0(cfg, law);
    BranchOptions opt;
    opt.truncation = cfg.truncation;
    opt.ny = cfg.ny;
    BranchResult res = classify_branch(cfg.pattern, law, beta0, opt);

    const double s = cfg.amplitude;
    SurfaceField eta = (s * res.cp.v[0]) * e1_field(*res.lattice);
    eta += (s * s) * res.w1.eta;
    const double beff = effective_beta(beta0, res.cp.omega, res.cp.lc.S1);
    if (beff * grid_sup(eta, grid_for(*res.lattice, 4)) >= 0.25)
        throw std::invalid_argument("surface: amplitude outside the validated guard");
    surface_to_csv(eta, os, cfg.grid_n);
    return 0;
}

}  // namespace ferro
