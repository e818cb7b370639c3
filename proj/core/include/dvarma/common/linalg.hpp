#pragma once

#include <Eigen/Dense>

namespace dvarma {

/// Diagonal ridge added to every normal-equation solve so collinear
/// regressors (for example a constant embedding column) stay solvable.
inline constexpr double kRidge = 1e-8;

/// Least-squares coefficients B minimising |Y - X B|^2 + kRidge |B|^2.
/// X is n x k, Y is n x m, result is k x m.
Eigen::MatrixXd least_squares(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y);

/// Largest eigenvalue modulus of a square matrix (0 for an empty matrix).
double spectral_radius(const Eigen::MatrixXd& A);

}  // namespace dvarma
