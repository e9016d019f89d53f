#include "ferro/magnetization.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/interpolators/pchip.hpp>

#include <cmath>
#include <memory>
#include <stdexcept>

namespace ferro {

namespace {

// Langevin function L(x) = coth x - 1/x and d^k L/dx^k, k <= 3.
// Series branch below x0 avoids the coth(x) - 1/x cancellation.
constexpr double kLangevinX0 = 0.1;

double langevin_L(double x, int order) {
    if (std::abs(x) < kLangevinX0) {
        // L(x) = x/3 - x^3/45 + 2x^5/945 - x^7/4725 + 2x^9/93555 - ...
        // differentiated term-wise; surviving powers share parity, so the
        // sum is (x or 1) * Horner in x^2.
        static const double a[5] = {1.0 / 3.0, -1.0 / 45.0, 2.0 / 945.0, -1.0 / 4725.0,
                                    2.0 / 93555.0};
        const int kmin = (order <= 1) ? 0 : 1;
        double acc = 0.0;
        for (int k = 4; k >= kmin; --k) {
            double c = a[k];
            for (int d = 0; d < order; ++d) c *= (2 * k + 1 - d);
            acc = acc * (x * x) + c;
        }
        return (order % 2 == 0 ? x : 1.0) * acc;
    }
    const double c = 1.0 / std::tanh(x);
    switch (order) {
        case 0: return c - 1.0 / x;
        case 1: return (1.0 - c * c) + 1.0 / (x * x);
        case 2: return -2.0 * c * (1.0 - c * c) - 2.0 / (x * x * x);
        case 3: return -2.0 * (1.0 - c * c) * (1.0 - 3.0 * c * c) + 6.0 / (x * x * x * x);
    }
    throw std::invalid_argument("langevin_L: order out of range");
}

// log(sinh(x)/x), stable for all x > 0.
double log_sinhc(double x) {
    if (x < 0.5) {
        const double x2 = x * x;
        // sinh(x)/x - 1 = x^2/6 (1 + x^2/20 (1 + x^2/42 (1 + x^2/72)))
        const double p = x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0 * (1.0 + x2 / 72.0)));
        return std::log1p(p);
    }
    return x - std::log(2.0 * x) + std::log1p(-std::exp(-2.0 * x));
}

// Richardson-extrapolated central differences, used for Table/Custom laws.
double fd_derivative(const std::function<double(double)>& f, double s, int order) {
    const double scale = std::max(1.0, std::abs(s));
    auto stencil = [&](double h) -> double {
        switch (order) {
            case 1: return (f(s + h) - f(s - h)) / (2.0 * h);
            case 2: return (f(s + h) - 2.0 * f(s) + f(s - h)) / (h * h);
            case 3:
                return (f(s + 2.0 * h) - 2.0 * f(s + h) + 2.0 * f(s - h) - f(s - 2.0 * h)) /
                       (2.0 * h * h * h);
        }
        throw std::invalid_argument("fd_derivative: order out of range");
    };
    const double h0 = (order == 1 ? 1e-3 : order == 2 ? 3e-3 : 8e-3) * scale;
    const double d1 = stencil(h0);
    const double d2 = stencil(h0 / 2.0);
    return (4.0 * d2 - d1) / 3.0;
}

}  // namespace

MagnetizationLaw MagnetizationLaw::constant(double mu) {
    if (!(mu >= 1.0)) throw std::invalid_argument("constant law requires mu >= 1");
    MagnetizationLaw law;
    law.kind_ = Kind::Constant;
    law.label_ = "constant";
    law.params_ = {{"mu", mu}};
    law.mu_ = [mu](double) { return mu; };
    law.deriv_ = {[](double) { return 0.0; }, [](double) { return 0.0; },
                  [](double) { return 0.0; }};
    law.potential_ = [mu](double s) { return mu * s * s / 2.0; };
    return law;
}

MagnetizationLaw MagnetizationLaw::langevin(double M, double gamma) {
    if (!(M > 0.0) || !(gamma > 0.0))
        throw std::invalid_argument("langevin law requires M > 0 and gamma > 0");
    MagnetizationLaw law;
    law.kind_ = Kind::Langevin;
    law.label_ = "langevin";
    law.params_ = {{"M", M}, {"gamma", gamma}};
    // mu(s) = 1 + M L(gamma s)/s; derivatives via d/ds = gamma d/dx.
    law.mu_ = [M, gamma](double s) {
        if (s <= 0.0) return 1.0 + M * gamma / 3.0;  // removable singularity
        return 1.0 + M * langevin_L(gamma * s, 0) / s;
    };
    auto L = [gamma](double s, int k) { return langevin_L(gamma * s, k); };
    law.deriv_[0] = [M, gamma, L](double s) {
        return M * (gamma * L(s, 1) / s - L(s, 0) / (s * s));
    };
    law.deriv_[1] = [M, gamma, L](double s) {
        return M * (gamma * gamma * L(s, 2) / s - 2.0 * gamma * L(s, 1) / (s * s) +
                    2.0 * L(s, 0) / (s * s * s));
    };
    law.deriv_[2] = [M, gamma, L](double s) {
        const double s2 = s * s;
        return M * (gamma * gamma * gamma * L(s, 3) / s - 3.0 * gamma * gamma * L(s, 2) / s2 +
                    6.0 * gamma * L(s, 1) / (s2 * s) - 6.0 * L(s, 0) / (s2 * s2));
    };
    law.potential_ = [M, gamma](double s) {
        if (s <= 0.0) return 0.0;
        return s * s / 2.0 + (M / gamma) * log_sinhc(gamma * s);
    };
    return law;
}

MagnetizationLaw MagnetizationLaw::table(std::vector<double> s, std::vector<double> mu) {
    if (s.size() != mu.size() || s.size() < 4)
        throw std::invalid_argument("table law needs >= 4 (s, mu) samples");
    for (double v : mu)
        if (!(v >= 1.0)) throw std::invalid_argument("table law requires mu >= 1 everywhere");
    const double lo = s.front(), hi = s.back();
    auto interp = std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(
        std::move(s), std::move(mu));
    MagnetizationLaw law;
    law.kind_ = Kind::Table;
    law.label_ = "custom-table";
    law.mu_ = [interp, lo, hi](double x) { return (*interp)(std::clamp(x, lo, hi)); };
    return law;
}

MagnetizationLaw MagnetizationLaw::custom(std::string label, std::function<double(double)> mu) {
    MagnetizationLaw law;
    law.kind_ = Kind::Custom;
    law.label_ = std::move(label);
    law.mu_ = std::move(mu);
    return law;
}

MagnetizationLaw MagnetizationLaw::custom_analytic(std::string label,
                                                   std::function<double(double)> mu,
                                                   std::function<double(double)> d1,
                                                   std::function<double(double)> d2,
                                                   std::function<double(double)> d3) {
    MagnetizationLaw law;
    law.kind_ = Kind::Custom;
    law.label_ = std::move(label);
    law.mu_ = std::move(mu);
    law.deriv_ = {std::move(d1), std::move(d2), std::move(d3)};
    return law;
}

double MagnetizationLaw::mu(double s) const { return mu_(s); }

double MagnetizationLaw::mu_derivative(double s, int order) const {
    if (order < 1 || order > 3)
        throw std::invalid_argument("mu_derivative: order must be in 1..3");
    if (deriv_[order - 1]) return deriv_[order - 1](s);
    return fd_derivative(mu_, s, order);
}

double MagnetizationLaw::potential(double s) const {
    if (s < 0.0) throw std::invalid_argument("potential: s must be nonnegative");
    if (s == 0.0) return 0.0;
    if (potential_) return potential_(s);
    auto integrand = [this](double t) { return t * mu_(t); };
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, 0.0, s, 12,
                                                                         1e-12);
}

LawConstants MagnetizationLaw::constants_at_one() const {
    LawConstants lc;
    lc.mu1 = mu(1.0);
    lc.dmu1 = mu_derivative(1.0, 1);
    lc.ddmu1 = mu_derivative(1.0, 2);
    lc.dddmu1 = mu_derivative(1.0, 3);
    if (!(lc.mu1 + lc.dmu1 > 0.0))
        throw std::domain_error("magnetization law violates ellipticity: mu(1)+mu'(1) <= 0");
    lc.S1 = std::sqrt(lc.mu1 / (lc.mu1 + lc.dmu1));
    return lc;
}

double nu_apply(const LawConstants& lc, const std::vector<std::array<double, 3>>& args) {
    switch (args.size()) {
        case 0: return lc.mu1;
        case 1: return lc.dmu1 * args[0][1];
        case 2: {
            const auto &A = args[0], &B = args[1];
            return 0.5 * lc.dmu1 * (A[0] * B[0] + A[2] * B[2]) + 0.5 * lc.ddmu1 * A[1] * B[1];
        }
        case 3: {
            const auto &A = args[0], &B = args[1], &C = args[2];
            const double sym = A[1] * (B[0] * C[0] + B[2] * C[2]) +
                               B[1] * (A[0] * C[0] + A[2] * C[2]) +
                               C[1] * (A[0] * B[0] + A[2] * B[2]);
            return (lc.ddmu1 - lc.dmu1) / 6.0 * sym + lc.dddmu1 / 6.0 * A[1] * B[1] * C[1];
        }
        default: throw std::invalid_argument("nu_apply: unsupported order (j must be 0..3)");
    }
}

}  // namespace ferro
