#include "ferro/closed_forms.hpp"

#include <cmath>

namespace ferro::closed_forms {

namespace {
double coth(double x) { return 1.0 / std::tanh(x); }
double csch2(double x) {
    const double s = std::sinh(x);
    return 1.0 / (s * s);
}
}  // namespace

double gamma2_rolls(double mu, double omega, double gamma0, double omega_tilde) {
    const double w = omega, g0 = gamma0;
    const double t1 = std::tanh(omega_tilde);
    const double t2 = std::tanh(2.0 * omega_tilde);
    const double mu2m1 = mu * mu - 1.0;
    const double C2 =
        1.0 / (2.0 * mu2m1 * w) / (2.0 * (g0 + w * w) * t2 / t1 - g0 - 4.0 * w * w);

    const double inner1 =
        (8.0 * (mu + 1.0) * w * w * (4.0 * w * w + g0) / t2 - 4.0 * mu2m1 * mu2m1 * w * w * w) *
        (1.0 - t1 * t2) * (1.0 - t1 * t2);
    const double inner2 = w * w * w * std::pow(mu - 1.0, 4) *
                          (2.0 * (1.0 + t1 * t1) * (1.0 - t1 * t2) -
                           0.25 * (1.0 + t1 * t1) * (1.0 + t1 * t1));
    const double term1 = -mu * C2 * (inner1 + inner2);
    const double term2 = -(mu * w * w / (4.0 * g0)) * std::pow(mu - 1.0, 3) / (mu + 1.0) *
                         (1.0 - t1 * t1) * (1.0 - t1 * t1);
    const double term3 = -((mu + 1.0) * (mu + 1.0) * w / (mu - 1.0)) * t1 *
                         (3.0 * w * w / (8.0 * (g0 + w * w)) - 1.5 + t1 * t2);
    return -mu * (mu - 1.0) / (mu + 1.0) * w * w * (term1 + term2 + term3);
}

double gamma2_rectangles(double mu, double omega, double gamma0, double omega_tilde) {
    const double w = omega, g0 = gamma0;
    const double r2 = std::sqrt(2.0);
    const double t1 = std::tanh(omega_tilde);
    const double t2 = std::tanh(2.0 * omega_tilde);
    const double ts = std::tanh(r2 * omega_tilde);
    const double mu2m1 = mu * mu - 1.0;
    const double Cs =
        1.0 / (r2 * mu2m1 * w) / (r2 * (w * w + g0) * ts / t1 - g0 - 2.0 * w * w);
    const double C2 =
        1.0 / (2.0 * mu2m1 * w) / (2.0 * (g0 + w * w) * t2 / t1 - g0 - 4.0 * w * w);

    const double fs = 1.0 - r2 * t1 * ts;
    const double A =
        (8.0 * (mu + 1.0) * w * w * (2.0 * w * w + g0) / ts - 2.0 * r2 * mu2m1 * mu2m1 * w * w * w) *
            fs * fs -
        0.5 * w * w * w * std::pow(mu - 1.0, 4) * r2 *
            (t1 * t1 * t1 * t1 - 4.0 * t1 * t1 * fs);
    const double B =
        (8.0 * (mu + 1.0) * w * w * (4.0 * w * w + g0) / t2 - 4.0 * mu2m1 * mu2m1 * w * w * w) *
            (1.0 - t1 * t2) * (1.0 - t1 * t2) +
        w * w * w * std::pow(mu - 1.0, 4) *
            (2.0 * (1.0 + t1 * t1) * (1.0 - t1 * t2) - 0.25 * (1.0 + t1 * t1) * (1.0 + t1 * t1));
    const double term3 = -(w * (mu + 1.0) * (mu + 1.0) / (2.0 * (mu - 1.0))) * t1 *
                         (5.0 * w * w / (4.0 * (g0 + w * w)) - 9.0 + 2.0 * t1 * t2 +
                          4.0 * r2 * t1 * ts);
    const double term4 = -(w * w * mu * std::pow(mu - 1.0, 3) / (2.0 * g0 * (mu + 1.0))) *
                         (1.0 - t1 * t1) * (1.0 - t1 * t1);
    return -mu * (mu - 1.0) / (mu + 1.0) * w * w * (-mu * Cs * A - mu * C2 * B + term3 + term4);
}

double mu_c1() { return 21.0 / 11.0 + 8.0 / 11.0 * std::sqrt(5.0); }

double mu_c2() {
    const double r2 = std::sqrt(2.0);
    return (115.0 + 160.0 * r2 + 8.0 * std::sqrt(184.0 + 11.0 * r2)) / (141.0 + 128.0 * r2);
}

ConstantLawCritical critical_for_constant(double mu, double omega_tilde) {
    // S1 = 1: h(wt) = (mu+1) coth(wt), h' = -(mu+1) csch^2(wt)
    const double wt = omega_tilde;
    const double h = (mu + 1.0) * coth(wt);
    const double hp = -(mu + 1.0) * csch2(wt);
    const double A = mu * (mu - 1.0) * (mu - 1.0);
    ConstantLawCritical out;
    out.beta0 = A * (h - wt * hp) / (2.0 * wt * h * h);
    out.omega = out.beta0 * wt;
    out.gamma0 = (A / (out.omega * h) - 1.0) * out.omega * out.omega;
    return out;
}

}  // namespace ferro::closed_forms
