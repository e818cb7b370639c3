#pragma once

#include "dvarma/series/panel.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dvarma::stationarity {

/**
 * @brief Augmented Dickey-Fuller test result (constant-only regression).
 *
 * The regression is
 *   dy_t = c + gamma * y_{t-1} + sum_{i=1..L} delta_i * dy_{t-i} + u_t
 * and `statistic` is the t-ratio of gamma.
 */
struct AdfResult {
    double statistic = 0.0;
    double p_value = 1.0;
    int lags = 0;          ///< L selected by AIC
    int max_lag = 0;       ///< largest L considered after the sample-size cap
    long nobs = 0;         ///< observations in the final regression
    double intercept = 0.0;
    double gamma = 0.0;
    std::vector<double> delta;
};

/// Default lag ceiling floor(12 * (T/100)^(1/4)).
int default_max_lag(std::size_t n);

/**
 * Runs the test with lag order chosen by AIC over 0..max_lag on a common
 * sample (ties go to the smaller lag), then refits the chosen lag on the
 * longest available sample.
 *
 * Throws std::invalid_argument for fewer than 15 observations, missing values
 * or a zero-variance series.
 */
AdfResult adf_test(std::span<const double> series, std::optional<int> max_lag = std::nullopt);

/**
 * P-value of a constant-only Dickey-Fuller t statistic from the MacKinnon
 * (1994) response surface, clamped to [0.0001, 0.9999]. Non-decreasing in the
 * statistic.
 */
double adf_pvalue(double statistic);

struct StationarityRow {
    std::string series;
    double original_p = 1.0;
    double diff_p = 1.0;
};

struct StationarityReport {
    std::vector<StationarityRow> rows;
};

/// ADF p-values of every column and of its first difference.
StationarityReport stationarity_report(const series::Panel& panel, std::optional<int> max_lag = std::nullopt);

}  // namespace dvarma::stationarity
