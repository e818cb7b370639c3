#pragma once

#include "dvarma/varma/model.hpp"

namespace dvarma::varma {

/**
 * Innovations from the inverted recursion
 *   eps_t = y_t - c - sum Phi_i y_{t-i} - sum Gamma_k x_{t-k} - sum_{j>=1} Theta_j eps_{t-j}
 * with innovations before the first row zero. Rows t = max(p, s)..T-1 of `y`
 * (T x m), so the result has T - max(p, s) rows.
 */
Eigen::MatrixXd compute_residuals(const VarmaSpec& spec, const VarmaParams& params, const Eigen::MatrixXd& y,
                                  const Eigen::MatrixXd* exog = nullptr);

/// Panel form; the residual panel carries the timestamps of the rows it covers.
series::Panel compute_residuals(const VarmaSpec& spec, const VarmaParams& params, const series::Panel& y,
                                const series::Panel* exog = nullptr);

/**
 * Conditional Gaussian log-likelihood
 *   sum_t [ -(m/2) ln 2pi - 1/2 ln det Sigma - 1/2 eps_t' Sigma^-1 eps_t ]
 * over residual rows with time index >= max(presample(), likelihood_start).
 * Throws when the Sigma factor has a non-positive diagonal entry or no row
 * enters the sum.
 */
double conditional_loglik(const VarmaSpec& spec, const VarmaParams& params, const Eigen::MatrixXd& y,
                          const Eigen::MatrixXd* exog = nullptr, int likelihood_start = 0);

}  // namespace dvarma::varma
