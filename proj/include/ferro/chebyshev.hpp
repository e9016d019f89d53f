#pragma once

#include <Eigen/Dense>

namespace ferro {

// Chebyshev-Lobatto collocation on [a, b].
//
// Points run from y[0] = b down to y[n-1] = a (surface trace first), and
// deriv is the first-derivative collocation matrix on those points.
struct ChebGrid {
    Eigen::VectorXd y;
    Eigen::MatrixXd deriv;
    Eigen::MatrixXd deriv2;
};

ChebGrid cheb_grid(int n, double a, double b);

}  // namespace ferro
