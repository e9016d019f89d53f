#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace ferro {

// mu(1) and its first three derivatives, plus S1 = sqrt(mu1/(mu1+dmu1)).
// Everything in the linear pencil and the branch coefficients is a function
// of these four numbers.
struct LawConstants {
    double mu1 = 1.0;
    double dmu1 = 0.0;
    double ddmu1 = 0.0;
    double dddmu1 = 0.0;
    double S1 = 1.0;
};

// Relative permeability law mu(s) = 1 + m(s)/s of the ferrofluid.
//
// Built-in kinds carry analytic derivatives and closed-form potentials;
// Table (monotone cubic through (s, mu) samples) and Custom fall back to
// Richardson-extrapolated central differences and adaptive quadrature.
// Tabulated laws are only finitely smooth; treated as an approximation.
class MagnetizationLaw {
public:
    enum class Kind { Constant, Langevin, Table, Custom };

    static MagnetizationLaw constant(double mu);
    // Langevin: mu(s) = 1 + (M/s)(coth(gamma*s) - 1/(gamma*s)).
    static MagnetizationLaw langevin(double M, double gamma);
    static MagnetizationLaw table(std::vector<double> s, std::vector<double> mu);
    static MagnetizationLaw custom(std::string label, std::function<double(double)> mu);
    // Custom law with analytic derivatives (orders 1..3), used by tests.
    static MagnetizationLaw custom_analytic(std::string label,
                                            std::function<double(double)> mu,
                                            std::function<double(double)> d1,
                                            std::function<double(double)> d2,
                                            std::function<double(double)> d3);

    double mu(double s) const;
    double mu_derivative(double s, int order) const;  // order in 1..3

    // M(s) = int_0^s t mu(t) dt. Closed form for Constant/Langevin,
    // adaptive quadrature (rel tol 1e-12) otherwise. s >= 0 required.
    double potential(double s) const;

    // Throws std::domain_error if mu(1)+mu'(1) <= 0 (ellipticity).
    LawConstants constants_at_one() const;

    Kind kind() const { return kind_; }
    const std::string& label() const { return label_; }
    const std::map<std::string, double>& parameters() const { return params_; }

private:
    MagnetizationLaw() = default;
    Kind kind_ = Kind::Constant;
    std::string label_;
    std::map<std::string, double> params_;
    std::function<double(double)> mu_;
    std::array<std::function<double(double)>, 3> deriv_;  // empty => FD fallback
    std::function<double(double)> potential_;             // empty => quadrature
};

// Symmetric j-linear Taylor coefficient of nu(T) = mu(|T + e_y|) at T = 0,
// applied to the j argument vectors (components ordered x, y, z):
//   nu^0 = mu1
//   nu^1(T) = dmu1 * T_y
//   nu^2(A,B) = 1/2 dmu1 (A_x B_x + A_z B_z) + 1/2 ddmu1 A_y B_y
//   nu^3(A,B,C) = 1/6 (ddmu1 - dmu1) sym[A_y (B_x C_x + B_z C_z)]
//                 + 1/6 dddmu1 A_y B_y C_y
// Throws std::invalid_argument for j > 3.
double nu_apply(const LawConstants& lc, const std::vector<std::array<double, 3>>& args);

}  // namespace ferro
