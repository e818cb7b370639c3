#include "dvarma/stationarity/adf.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dvarma::stationarity {

namespace {

// MacKinnon (1994) response-surface coefficients, constant-only case with one
// integrated regressor.
constexpr double kTauMax = 2.74;
constexpr double kTauMin = -18.86;
constexpr double kTauStar = -1.61;
constexpr double kSmallP[3] = {2.1659, 1.4412, 0.038269};
constexpr double kLargeP[4] = {1.7339, 0.93202, -0.12745, -0.010368};

constexpr double kPMin = 0.0001;
constexpr double kPMax = 0.9999;

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

struct Regression {
    Eigen::VectorXd beta;
    double rss = 0.0;
    double se_gamma = 0.0;
    long nobs = 0;
};

// Rows t = first..n-1 of the ADF design with `lags` lagged differences.
Regression fit_adf(std::span<const double> y, int lags, std::size_t first) {
    const std::size_t n = y.size();
    const auto rows = static_cast<Eigen::Index>(n - first);
    const Eigen::Index k = 2 + lags;
    Eigen::MatrixXd X(rows, k);
    Eigen::VectorXd dy(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const std::size_t t = first + static_cast<std::size_t>(r);
        dy(r) = y[t] - y[t - 1];
        X(r, 0) = 1.0;
        X(r, 1) = y[t - 1];
        for (int i = 1; i <= lags; ++i) {
            X(r, 1 + i) = y[t - static_cast<std::size_t>(i)] - y[t - static_cast<std::size_t>(i) - 1];
        }
    }
    const Eigen::MatrixXd XtX = X.transpose() * X;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(XtX);
    Regression reg;
    reg.nobs = rows;
    reg.beta = ldlt.solve(X.transpose() * dy);
    reg.rss = (dy - X * reg.beta).squaredNorm();
    const double sigma2 = reg.rss / static_cast<double>(rows - k);
    Eigen::VectorXd unit = Eigen::VectorXd::Zero(k);
    unit(1) = 1.0;
    const double inv_gg = ldlt.solve(unit)(1);
    reg.se_gamma = std::sqrt(sigma2 * inv_gg);
    return reg;
}

}  // namespace

int default_max_lag(std::size_t n) {
    return static_cast<int>(std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
}

double adf_pvalue(double statistic) {
    double p;
    if (std::isnan(statistic)) {
        p = 1.0;
    } else if (statistic > kTauMax) {
        p = 1.0;
    } else if (statistic < kTauMin) {
        p = 0.0;
    } else if (statistic <= kTauStar) {
        const double t = statistic;
        p = normal_cdf(kSmallP[0] + t * (kSmallP[1] + t * kSmallP[2]));
    } else {
        const double t = statistic;
        p = normal_cdf(kLargeP[0] + t * (kLargeP[1] + t * (kLargeP[2] + t * kLargeP[3])));
    }
    return std::clamp(p, kPMin, kPMax);
}

AdfResult adf_test(std::span<const double> y, std::optional<int> max_lag) {
    const std::size_t n = y.size();
    if (n < 15) throw std::invalid_argument("adf_test: series too short (need at least 15 observations)");
    for (double v : y) {
        if (std::isnan(v)) throw std::invalid_argument("adf_test: series contains missing values");
    }
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    if (*lo == *hi) throw std::invalid_argument("adf_test: zero-variance series");
    bool moving = false;
    for (std::size_t t = 2; t < n && !moving; ++t) moving = (y[t] - y[t - 1]) != (y[1] - y[0]);
    if (!moving) throw std::invalid_argument("adf_test: degenerate series (constant first difference)");

    int configured = max_lag.value_or(default_max_lag(n));
    if (configured < 0) throw std::invalid_argument("adf_test: negative max_lag");
    // Keep at least five residual degrees of freedom in the common sample.
    const int cap = std::max(0, (static_cast<int>(n) - 8) / 2);
    const int top = std::min(configured, cap);

    AdfResult result;
    result.max_lag = top;
    const std::size_t common_first = static_cast<std::size_t>(top) + 1;
    double best_aic = std::numeric_limits<double>::infinity();
    int best = 0;
    for (int L = 0; L <= top; ++L) {
        const Regression reg = fit_adf(y, L, common_first);
        const double aic = static_cast<double>(reg.nobs) * std::log(reg.rss / static_cast<double>(reg.nobs)) +
                           2.0 * static_cast<double>(2 + L);
        if (aic < best_aic) {
            best_aic = aic;
            best = L;
        }
    }

    const Regression fin = fit_adf(y, best, static_cast<std::size_t>(best) + 1);
    result.lags = best;
    result.nobs = fin.nobs;
    result.intercept = fin.beta(0);
    result.gamma = fin.beta(1);
    for (int i = 0; i < best; ++i) result.delta.push_back(fin.beta(2 + i));
    result.statistic = fin.se_gamma > 0.0 ? fin.beta(1) / fin.se_gamma
                                          : -std::numeric_limits<double>::infinity();
    result.p_value = adf_pvalue(result.statistic);
    return result;
}

StationarityReport stationarity_report(const series::Panel& panel, std::optional<int> max_lag) {
    panel.require_complete("stationarity_report");
    StationarityReport report;
    for (Eigen::Index k = 0; k < panel.cols(); ++k) {
        const Eigen::VectorXd col = panel.values().col(k);
        const Eigen::VectorXd diff = col.tail(col.size() - 1) - col.head(col.size() - 1);
        StationarityRow row;
        row.series = panel.columns()[static_cast<std::size_t>(k)];
        row.original_p = adf_test({col.data(), static_cast<std::size_t>(col.size())}, max_lag).p_value;
        row.diff_p = adf_test({diff.data(), static_cast<std::size_t>(diff.size())}, max_lag).p_value;
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace dvarma::stationarity
