#pragma once

#include "dvarma/series/panel.hpp"

#include <span>
#include <string>
#include <vector>

namespace dvarma::series {

/// Fill interior gaps by linear interpolation between the nearest observed
/// neighbours; leading and trailing gaps take the nearest observed value.
/// Throws when a column has no observation at all.
Panel impute_linear(const Panel& panel);

/// Natural log of the named columns; others pass through. Throws on any
/// non-positive (or missing) value in a selected column.
Panel log_transform(const Panel& panel, std::span<const std::string> columns);

/// Result of differencing a series `order` times.
struct DiffSeries {
    std::vector<double> values;   ///< length = original length - order
    std::vector<double> anchors;  ///< anchors[k] = first element of the k-times differenced series
    int order = 0;
};

DiffSeries difference(std::span<const double> series, int order);

/// Exact inversion: rebuilds the full original series (length values + order).
std::vector<double> inverse_difference(const DiffSeries& diff);

/**
 * @brief Continue a differenced sequence from known levels.
 *
 * `last_levels[k]` is the last observed value of the k-times differenced
 * series preceding `values` (so last_levels[0] is the last level). Returns the
 * levels that follow, one per entry of `values`.
 */
std::vector<double> inverse_difference(std::span<const double> values,
                                       std::span<const double> last_levels, int order);

/// last_levels argument for inverse_difference() continuing `series`.
std::vector<double> continuation_anchors(std::span<const double> series, int order);

/// Column-wise first difference of a matrix (rows - 1 rows).
Eigen::MatrixXd difference_rows(const Eigen::MatrixXd& levels);
/// Panel first difference; timestamps start at the second row.
Panel difference_panel(const Panel& panel);
/// Cumulative continuation: row h = last_level + sum of diffs[0..h].
Eigen::MatrixXd integrate_rows(const Eigen::MatrixXd& diffs, const Eigen::RowVectorXd& last_level);

struct SplitRatios {
    double train = 0.6;
    double val = 0.2;
    double test = 0.2;
};

struct SplitSizes {
    Index train = 0;
    Index val = 0;
    Index test = 0;
};

/// test = floor(test*T), val = floor(val*T), remainder to train.
SplitSizes split_sizes(Index T, const SplitRatios& ratios);

struct PanelSplit {
    Panel train;
    Panel val;
    Panel test;
};

PanelSplit split(const Panel& panel, const SplitRatios& ratios);

/// Per-column min/max observed on the fitting range.
struct ScalerParams {
    Eigen::VectorXd min;
    Eigen::VectorXd max;

    [[nodiscard]] bool fitted() const noexcept { return min.size() > 0; }
};

enum class ScaleDirection { Forward, Inverse };

ScalerParams fit_scaler(const Eigen::MatrixXd& values);
ScalerParams fit_scaler(const Panel& panel);

/// Forward maps x to (x - min)/(max - min); constant columns map to 0 and
/// invert to the constant. Throws when the scaler has not been fitted.
Eigen::MatrixXd apply_scaler(const Eigen::MatrixXd& values, const ScalerParams& params,
                             ScaleDirection direction);
Panel apply_scaler(const Panel& panel, const ScalerParams& params, ScaleDirection direction);

/// Pearson correlation; throws on a zero-variance column.
Eigen::MatrixXd correlation_matrix(const Panel& panel);

}  // namespace dvarma::series
