#include "dvarma/series/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dvarma::series {

Panel impute_linear(const Panel& panel) {
    Eigen::MatrixXd v = panel.values();
    const Index T = v.rows();
    for (Index k = 0; k < v.cols(); ++k) {
        Index prev = -1;
        for (Index t = 0; t < T; ++t) {
            if (is_missing(v(t, k))) continue;
            if (prev < 0) {
                for (Index s = 0; s < t; ++s) v(s, k) = v(t, k);
            } else if (t - prev > 1) {
                const double a = v(prev, k);
                const double b = v(t, k);
                const double span = static_cast<double>(t - prev);
                for (Index s = prev + 1; s < t; ++s) {
                    v(s, k) = a + (b - a) * static_cast<double>(s - prev) / span;
                }
            }
            prev = t;
        }
        if (prev < 0) {
            throw std::invalid_argument("impute_linear: column '" + panel.columns()[static_cast<std::size_t>(k)] +
                                        "' has no observed values");
        }
        for (Index s = prev + 1; s < T; ++s) v(s, k) = v(prev, k);
    }
    return panel.with_values(std::move(v));
}

Panel log_transform(const Panel& panel, std::span<const std::string> columns) {
    Eigen::MatrixXd v = panel.values();
    for (const auto& name : columns) {
        const Index k = panel.column_index(name);
        for (Index t = 0; t < v.rows(); ++t) {
            const double x = v(t, k);
            if (is_missing(x) || !(x > 0.0)) {
                throw std::invalid_argument("log_transform: non-positive or missing value in column '" + name +
                                            "'");
            }
            v(t, k) = std::log(x);
        }
    }
    return panel.with_values(std::move(v));
}

DiffSeries difference(std::span<const double> series, int order) {
    if (order < 0) throw std::invalid_argument("difference: negative order");
    if (static_cast<std::size_t>(order) >= series.size()) {
        throw std::invalid_argument("difference: series length must exceed the differencing order");
    }
    DiffSeries out;
    out.order = order;
    out.values.assign(series.begin(), series.end());
    for (double x : out.values) {
        if (is_missing(x)) throw std::invalid_argument("difference: series contains missing values");
    }
    for (int stage = 0; stage < order; ++stage) {
        out.anchors.push_back(out.values.front());
        for (std::size_t i = 0; i + 1 < out.values.size(); ++i) {
            out.values[i] = out.values[i + 1] - out.values[i];
        }
        out.values.pop_back();
    }
    return out;
}

std::vector<double> inverse_difference(const DiffSeries& diff) {
    if (diff.anchors.size() != static_cast<std::size_t>(diff.order)) {
        throw std::invalid_argument("inverse_difference: anchors inconsistent with order");
    }
    std::vector<double> cur = diff.values;
    for (int stage = diff.order - 1; stage >= 0; --stage) {
        std::vector<double> up;
        up.reserve(cur.size() + 1);
        double level = diff.anchors[static_cast<std::size_t>(stage)];
        up.push_back(level);
        for (double d : cur) {
            level += d;
            up.push_back(level);
        }
        cur = std::move(up);
    }
    return cur;
}

std::vector<double> inverse_difference(std::span<const double> values, std::span<const double> last_levels,
                                       int order) {
    if (order < 0 || last_levels.size() != static_cast<std::size_t>(order)) {
        throw std::invalid_argument("inverse_difference: missing anchors for the differencing order");
    }
    std::vector<double> cur(values.begin(), values.end());
    for (int stage = order - 1; stage >= 0; --stage) {
        double level = last_levels[static_cast<std::size_t>(stage)];
        for (double& d : cur) {
            level += d;
            d = level;
        }
    }
    return cur;
}

std::vector<double> continuation_anchors(std::span<const double> series, int order) {
    if (order < 0 || static_cast<std::size_t>(order) > series.size()) {
        throw std::invalid_argument("continuation_anchors: series shorter than order");
    }
    std::vector<double> cur(series.end() - order, series.end());
    std::vector<double> anchors;
    for (int stage = 0; stage < order; ++stage) {
        anchors.push_back(cur.back());
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) cur[i] = cur[i + 1] - cur[i];
        cur.pop_back();
    }
    return anchors;
}

Eigen::MatrixXd difference_rows(const Eigen::MatrixXd& levels) {
    if (levels.rows() < 2) throw std::invalid_argument("difference_rows: need at least two rows");
    return levels.bottomRows(levels.rows() - 1) - levels.topRows(levels.rows() - 1);
}

Panel difference_panel(const Panel& panel) {
    panel.require_complete("difference");
    if (panel.rows() < 2) throw std::invalid_argument("difference: series length must exceed 1");
    std::vector<Date> ts(panel.timestamps().begin() + 1, panel.timestamps().end());
    return Panel(std::move(ts), panel.columns(), difference_rows(panel.values()));
}

Eigen::MatrixXd integrate_rows(const Eigen::MatrixXd& diffs, const Eigen::RowVectorXd& last_level) {
    Eigen::MatrixXd out(diffs.rows(), diffs.cols());
    Eigen::RowVectorXd level = last_level;
    for (Index h = 0; h < diffs.rows(); ++h) {
        level += diffs.row(h);
        out.row(h) = level;
    }
    return out;
}

SplitSizes split_sizes(Index T, const SplitRatios& r) {
    if (r.train < 0 || r.val < 0 || r.test < 0 || std::abs(r.train + r.val + r.test - 1.0) > 1e-12) {
        throw std::invalid_argument("split: ratios must be non-negative and sum to 1");
    }
    if (T < 3) throw std::invalid_argument("split: need at least 3 rows");
    const auto portion = [T](double ratio) {
        return static_cast<Index>(std::floor(ratio * static_cast<double>(T) + 1e-9));
    };
    SplitSizes s;
    s.test = portion(r.test);
    s.val = portion(r.val);
    s.train = T - s.val - s.test;
    if ((r.test > 0 && s.test == 0) || (r.val > 0 && s.val == 0) || (r.train > 0 && s.train <= 0)) {
        throw std::invalid_argument("split: sample too small for the requested ratios");
    }
    return s;
}

PanelSplit split(const Panel& panel, const SplitRatios& ratios) {
    const auto s = split_sizes(panel.rows(), ratios);
    return {panel.slice_rows(0, s.train), panel.slice_rows(s.train, s.val),
            panel.slice_rows(s.train + s.val, s.test)};
}

ScalerParams fit_scaler(const Eigen::MatrixXd& values) {
    if (values.rows() == 0) throw std::invalid_argument("fit_scaler: empty fitting range");
    if (values.hasNaN()) throw std::invalid_argument("fit_scaler: missing values in fitting range");
    return {values.colwise().minCoeff().transpose(), values.colwise().maxCoeff().transpose()};
}

ScalerParams fit_scaler(const Panel& panel) { return fit_scaler(panel.values()); }

Eigen::MatrixXd apply_scaler(const Eigen::MatrixXd& values, const ScalerParams& p, ScaleDirection direction) {
    if (!p.fitted()) throw std::logic_error("apply_scaler: scaler has not been fitted");
    if (values.cols() != p.min.size()) throw std::invalid_argument("apply_scaler: column count mismatch");
    Eigen::MatrixXd out(values.rows(), values.cols());
    for (Index k = 0; k < values.cols(); ++k) {
        const double lo = p.min(k);
        const double range = p.max(k) - lo;
        if (range > 0.0) {
            if (direction == ScaleDirection::Forward) {
                out.col(k) = (values.col(k).array() - lo) / range;
            } else {
                out.col(k) = values.col(k).array() * range + lo;
            }
        } else {
            out.col(k).setConstant(direction == ScaleDirection::Forward ? 0.0 : lo);
        }
    }
    return out;
}

Panel apply_scaler(const Panel& panel, const ScalerParams& params, ScaleDirection direction) {
    panel.require_complete("apply_scaler");
    return panel.with_values(apply_scaler(panel.values(), params, direction));
}

Eigen::MatrixXd correlation_matrix(const Panel& panel) {
    panel.require_complete("correlation_matrix");
    if (panel.rows() < 2) throw std::invalid_argument("correlation_matrix: need at least two rows");
    Eigen::MatrixXd centered = panel.values().rowwise() - panel.values().colwise().mean();
    Eigen::VectorXd norms = centered.colwise().norm().transpose();
    for (Index k = 0; k < norms.size(); ++k) {
        if (!(norms(k) > 0.0)) {
            throw std::invalid_argument("correlation_matrix: zero-variance column '" +
                                        panel.columns()[static_cast<std::size_t>(k)] + "'");
        }
    }
    const Index K = panel.cols();
    Eigen::MatrixXd corr(K, K);
    for (Index i = 0; i < K; ++i) {
        corr(i, i) = 1.0;
        for (Index j = i + 1; j < K; ++j) {
            double r = centered.col(i).dot(centered.col(j)) / (norms(i) * norms(j));
            r = std::clamp(r, -1.0, 1.0);
            corr(i, j) = r;
            corr(j, i) = r;
        }
    }
    return corr;
}

}  // namespace dvarma::series
