#include "ferro/chebyshev.hpp"

#include <cmath>
#include <stdexcept>

namespace ferro {

ChebGrid cheb_grid(int n, double a, double b) {
    if (n < 2) throw std::invalid_argument("cheb_grid: need at least 2 points");
    Eigen::VectorXd t(n);
    for (int j = 0; j < n; ++j) t[j] = std::cos(j * M_PI / (n - 1));

    Eigen::MatrixXd D(n, n);
    auto c = [n](int i) { return (i == 0 || i == n - 1) ? 2.0 : 1.0; };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            D(i, j) = (c(i) / c(j)) * sign / (t[i] - t[j]);
        }
    }
    // negative sum trick for the diagonal
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j)
            if (j != i) s += D(i, j);
        D(i, i) = -s;
    }

    // map t in [1,-1] to y in [b,a]: y = a + (b-a)(t+1)/2, dy = (b-a)/2 dt
    ChebGrid g;
    g.y.resize(n);
    const double half = (b - a) / 2.0;
    for (int j = 0; j < n; ++j) g.y[j] = a + half * (t[j] + 1.0);
    g.deriv = D / half;
    g.deriv2 = g.deriv * g.deriv;
    return g;
}

}  // namespace ferro
