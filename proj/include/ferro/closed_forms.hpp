#pragma once

namespace ferro::closed_forms {

// gamma2 for a constant permeability law, in terms of the critical data
// (omega, gamma0, omega_tilde); independent of the spectral pipeline.
double gamma2_rolls(double mu, double omega, double gamma0, double omega_tilde);
double gamma2_rectangles(double mu, double omega, double gamma0, double omega_tilde);

// Deep-fluid critical permeabilities where gamma2 changes sign:
// rolls 21/11 + 8 sqrt(5)/11, rectangles (115+160 sqrt2+8 sqrt(184+11 sqrt2))
// / (141+128 sqrt2).
double mu_c1();
double mu_c2();

// Critical point of the constant-mu law parametrized by omega_tilde.
struct ConstantLawCritical {
    double beta0, omega, gamma0;
};
ConstantLawCritical critical_for_constant(double mu, double omega_tilde);

}  // namespace ferro::closed_forms
