#pragma once

#include "dvarma/eval/metrics.hpp"
#include "dvarma/hybrid/pipeline.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace dvarma::eval {

using Index = Eigen::Index;

/// Anything that forecasts h steps after the last row of a history.
class Forecaster {
public:
    virtual ~Forecaster() = default;
    /// `endog_history` is T x m levels; `exog_history` is row-aligned or null.
    /// Returns h x m.
    [[nodiscard]] virtual Eigen::MatrixXd forecast(const Eigen::MatrixXd& endog_history,
                                                   const Eigen::MatrixXd* exog_history, int h) const = 0;
};

class HybridForecaster final : public Forecaster {
public:
    explicit HybridForecaster(std::shared_ptr<const hybrid::HybridModel> model) : model_(std::move(model)) {}
    [[nodiscard]] Eigen::MatrixXd forecast(const Eigen::MatrixXd& endog_history, const Eigen::MatrixXd* exog_history,
                                           int h) const override;

private:
    std::shared_ptr<const hybrid::HybridModel> model_;
};

struct HorizonSpec {
    std::vector<int> points{1, 5, 10, 15};
    std::vector<int> cumulative{5, 10, 15, 20};  ///< column "1:a" for each a

    [[nodiscard]] int max_horizon() const;
    /// "1", "5", ..., "1:5", ...
    [[nodiscard]] std::vector<std::string> column_labels() const;
};

/**
 * @brief Horizon x model MSE grid.
 *
 * cells[model][col] averages the per-series values in
 * by_series[model][series][col]. An inapplicable model (null forecaster) has
 * missing (NaN) cells.
 */
struct HorizonTable {
    HorizonSpec spec;
    std::vector<std::string> models;
    std::vector<std::string> series;
    std::vector<std::vector<double>> cells;
    std::vector<std::vector<std::vector<double>>> by_series;
};

/**
 * Rolling origins o = test_start .. T - H_max (no refitting): forecast steps
 * 1..H_max from history rows [0, o). Point column h is the mean squared error
 * at step h; cumulative column 1:a the mean over origins of the MSE over steps
 * 1..a. Throws when fewer than H_max + 1 test rows exist.
 */
std::vector<std::vector<double>> horizon_errors(const Forecaster& forecaster, const Eigen::MatrixXd& endog,
                                                const Eigen::MatrixXd* exog, Index test_start,
                                                const HorizonSpec& spec);

struct NamedForecaster {
    std::string name;
    std::shared_ptr<const Forecaster> forecaster;  ///< null renders as inapplicable
};

HorizonTable horizon_eval(const std::vector<NamedForecaster>& models, const series::Panel& endog,
                          const series::Panel* exog, Index test_start, const HorizonSpec& spec = {});

/// Per model, per endogenous series metrics; missing = inapplicable ("-").
struct ComparisonReport {
    std::string protocol;
    std::vector<std::string> models;
    std::vector<std::string> series;
    std::vector<std::vector<std::optional<MetricReport>>> cells;  ///< [model][series]
    /// Cross-series mean of each metric per model (missing when inapplicable).
    std::vector<std::optional<MetricReport>> mean;
};

/// One-step forecasts for every test row t >= test_start from history [0, t).
Eigen::MatrixXd rolling_one_step(const Forecaster& forecaster, const Eigen::MatrixXd& endog,
                                 const Eigen::MatrixXd* exog, Index test_start);

ComparisonReport compare(const std::vector<NamedForecaster>& models, const series::Panel& endog,
                         const series::Panel* exog, Index test_start, const std::string& protocol);

}  // namespace dvarma::eval
