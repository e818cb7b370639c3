#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>

namespace dvarma::eval {

/// MSE, RMSE, MAE and MAPE (percent). MAPE is missing when an actual is zero.
struct MetricReport {
    double mse = 0.0;
    double rmse = 0.0;
    double mae = 0.0;
    std::optional<double> mape;
    Eigen::Index n = 0;
};

/// Throws std::invalid_argument on empty or unequal inputs.
MetricReport metrics(std::span<const double> actual, std::span<const double> predicted);
MetricReport metrics(const Eigen::VectorXd& actual, const Eigen::VectorXd& predicted);

}  // namespace dvarma::eval
