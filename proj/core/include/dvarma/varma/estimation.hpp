#pragma once

#include "dvarma/varma/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dvarma::varma {

struct ConvergenceInfo {
    int iterations = 0;
    double gradient_norm = 0.0;
    bool converged = false;
    std::string stop_reason;
};

/// Result of estimate_mle().
struct FittedVarma {
    VarmaSpec spec;
    VarmaParams params;
    double log_likelihood = 0.0;
    double aic = 0.0;
    int k_params = 0;
    /// Log-likelihood of the (stability-projected) initializer, same sample.
    double init_log_likelihood = 0.0;
    /// First time index whose innovation enters the likelihood.
    int likelihood_start = 0;
    series::Panel residuals;  ///< innovations for rows max(p, s)..T-1
    ConvergenceInfo convergence;
    /// Last max(p, s, 1) observations and matching exogenous rows of the
    /// fitting sample, oldest first; used by forecast().
    Eigen::MatrixXd y_tail;
    Eigen::MatrixXd exog_tail;
};

/// 2 k - 2 log L.
double aic(double log_likelihood, int k_params) noexcept;
double aic(const FittedVarma& fitted) noexcept;

/**
 * Hannan-Rissanen two-stage initializer.
 *
 * Stage 1 fits a long VAR of order max(8, 2 max(p, q)) (with the intercept and
 * exogenous terms of `spec`) to estimate innovations. Stage 2 regresses y_t on
 * its p lags, exogenous lags 0..s and q lagged stage-1 innovations. With q = 0
 * stage 2 is the plain least-squares VARX(p) on rows max(p, s)..T-1. Sigma is
 * the stage-2 residual covariance (1e-8 added to the diagonal when it is not
 * positive definite).
 *
 * Throws on a sample shorter than 10 (p + q + 1) m or a zero-variance column.
 */
VarmaParams hannan_rissanen_init(const Eigen::MatrixXd& y, const VarmaSpec& spec,
                                 const Eigen::MatrixXd* exog = nullptr);

/// Scale AR and MA polynomials so both companion radii are at most `limit`
/// (Phi_i -> lambda^i Phi_i shrinks every root by lambda).
VarmaParams project_to_stable(const VarmaParams& params, double limit = 0.98);

struct MleOptions {
    int max_iterations = 500;
    double relative_tolerance = 1e-8;
    /// Companion radius at which a candidate step is rejected.
    double root_limit = 0.999;
    /// Sum the likelihood from this time index (at least presample()). Order
    /// selection uses a common start so all candidates score the same rows.
    int likelihood_start = 0;
};

/**
 * Conditional maximum likelihood by BFGS ascent with central-difference
 * gradients. Sigma is profiled out: for given mean parameters its maximiser is
 * the residual covariance, so the search runs over intercept/Phi/Theta/Gamma
 * and the returned Sigma factor is the Cholesky factor of the final residual
 * covariance. Steps whose AR or MA companion radius reaches
 * options.root_limit are rejected.
 *
 * The returned log-likelihood is never below the initializer's.
 */
FittedVarma estimate_mle(const series::Panel& y, const VarmaSpec& spec, const series::Panel* exog = nullptr,
                         const std::optional<VarmaParams>& init = std::nullopt, const MleOptions& options = {});

/// Matrix form; residual timestamps are synthetic daily dates.
FittedVarma estimate_mle(const Eigen::MatrixXd& y, const VarmaSpec& spec, const Eigen::MatrixXd* exog = nullptr,
                         const std::optional<VarmaParams>& init = std::nullopt, const MleOptions& options = {});

struct OrderRanges {
    int p_min = 0, p_max = 3;
    int q_min = 0, q_max = 2;
    int s_min = 0, s_max = 1;
};

struct OrderSearchOptions {
    OrderRanges ranges;
    bool intercept = false;
    /// Admit (p, q) = (0, 0) candidates without exogenous input.
    bool allow_trivial = false;
    /// Worker threads; the winner does not depend on this.
    int jobs = 1;
    MleOptions mle;
};

struct CandidateOutcome {
    VarmaSpec spec;
    bool ok = false;
    double aic = 0.0;
    double log_likelihood = 0.0;
    std::string message;
};

struct OrderSelection {
    FittedVarma best;
    std::vector<CandidateOutcome> candidates;
    std::vector<std::string> warnings;
};

/// Fits every (p, q, s) in range, skipping (and recording) failures, and
/// returns the minimum-AIC fit; ties go to smaller p + q, then smaller p.
/// All candidates score the likelihood on the same rows.
OrderSelection select_order(const series::Panel& y, const OrderSearchOptions& options,
                            const series::Panel* exog = nullptr);

/// Tie-aware ordering used by select_order: true when `a` ranks before `b`.
bool ranks_before(const CandidateOutcome& a, const CandidateOutcome& b) noexcept;

}  // namespace dvarma::varma
