#pragma once

#include "dvarma/varma/estimation.hpp"

namespace dvarma::varma {

/// How future exogenous values are obtained when none are supplied.
enum class ExogPolicy { HoldLast, Require };

struct ForecastResult {
    int horizon = 0;
    Eigen::MatrixXd mean;  ///< h x m point forecasts
    ExogPolicy policy = ExogPolicy::HoldLast;
};

/**
 * Conditional-mean forecasts from the end of the fitting sample. Future
 * innovations are zero; the MA part uses the last q in-sample residuals.
 * `future_exog` (at least h x exog_dim) overrides the policy when given;
 * otherwise HoldLast repeats the last observed exogenous row and Require throws.
 */
ForecastResult forecast(const FittedVarma& fitted, int h, ExogPolicy policy = ExogPolicy::HoldLast,
                        const Eigen::MatrixXd* future_exog = nullptr);

/**
 * Same recursion from an arbitrary history: residuals are recomputed over
 * `y_history` (and `exog_history`, row-aligned) with the given parameters and
 * the forecast starts after its last row.
 */
Eigen::MatrixXd forecast_from(const VarmaSpec& spec, const VarmaParams& params, const Eigen::MatrixXd& y_history,
                              const Eigen::MatrixXd* exog_history, int h, ExogPolicy policy = ExogPolicy::HoldLast,
                              const Eigen::MatrixXd* future_exog = nullptr);

}  // namespace dvarma::varma
