#pragma once

#include "dvarma/series/panel.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dvarma::varma {

using Index = Eigen::Index;

/**
 * @brief Model orders and dimensions of a VARMA(X) model.
 *
 *   y_t = c + sum_{i=1..p} Phi_i y_{t-i} + sum_{k=0..s} Gamma_k x_{t-k}
 *         + eps_t + sum_{j=1..q} Theta_j eps_{t-j}
 *
 * Theta_0 is fixed to the identity. `allow_trivial` admits models with no
 * AR, MA or exogenous terms (pure noise, optionally with intercept).
 */
struct VarmaSpec {
    int m = 1;
    int p = 0;
    int q = 0;
    int s = 0;
    int exog_dim = 0;
    bool intercept = false;
    bool allow_trivial = false;

    [[nodiscard]] bool has_exog() const noexcept { return exog_dim > 0; }
    /// First time index with a complete lag history: max(p, q, s).
    [[nodiscard]] int presample() const noexcept;
    void validate() const;
};

/// Coefficients of a VARMA(X) model. Sigma is held by its lower-triangular
/// factor L (Sigma = L L').
struct VarmaParams {
    std::vector<Eigen::MatrixXd> phi;    ///< p matrices, m x m
    std::vector<Eigen::MatrixXd> theta;  ///< q matrices, m x m
    std::vector<Eigen::MatrixXd> gamma;  ///< s+1 matrices, m x exog_dim (empty without exog)
    Eigen::VectorXd intercept;           ///< size m, or size 0 without intercept
    Eigen::MatrixXd sigma_factor;        ///< m x m lower triangular

    static VarmaParams zeros(const VarmaSpec& spec);

    [[nodiscard]] Eigen::MatrixXd sigma() const { return sigma_factor * sigma_factor.transpose(); }
    /// Throws std::invalid_argument when shapes disagree with `spec`.
    void check_shapes(const VarmaSpec& spec) const;
};

/// Free parameter count used by the AIC: all entries of Phi, Theta, Gamma and
/// the intercept plus m(m+1)/2 for Sigma.
int count_free_parameters(const VarmaSpec& spec);

struct RootCheck {
    bool stable = true;
    bool invertible = true;
    double ar_radius = 0.0;
    double ma_radius = 0.0;
};

Eigen::MatrixXd ar_companion(const VarmaParams& params);
Eigen::MatrixXd ma_companion(const VarmaParams& params);

/// Stable iff the AR companion spectral radius is below 1; invertible iff the
/// MA companion (built from -Theta_j) spectral radius is below 1.
RootCheck check_roots(const VarmaParams& params);

struct SimulationOptions {
    std::uint64_t seed = 0;
    /// Presample observations, oldest first (rows x m). Missing rows are zero.
    std::optional<Eigen::MatrixXd> initial_y;
    /// Presample innovations, oldest first.
    std::optional<Eigen::MatrixXd> initial_eps;
    series::Date start = series::Date{std::chrono::year{2021}, std::chrono::April, std::chrono::day{2}};
};

/**
 * Generate T observations from the recursion with Gaussian innovations
 * L z_t. A zero Sigma factor is accepted here (noise-free paths). `exog` must
 * be given iff spec.exog_dim > 0 and have at least T rows; exogenous values
 * before the first row are taken as zero.
 */
series::Panel simulate(const VarmaSpec& spec, const VarmaParams& params, Index T, const SimulationOptions& options,
                       const Eigen::MatrixXd* exog = nullptr);

}  // namespace dvarma::varma
