#include "dvarma/eval/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace dvarma::eval {

MetricReport metrics(std::span<const double> actual, std::span<const double> predicted) {
    if (actual.size() != predicted.size()) throw std::invalid_argument("metrics: length mismatch");
    if (actual.empty()) throw std::invalid_argument("metrics: empty input");
    double se = 0.0;
    double ae = 0.0;
    double pe = 0.0;
    bool mape_defined = true;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double d = predicted[i] - actual[i];
        se += d * d;
        ae += std::abs(d);
        if (actual[i] == 0.0) {
            mape_defined = false;
        } else {
            pe += std::abs(d / actual[i]);
        }
    }
    const double n = static_cast<double>(actual.size());
    MetricReport r;
    r.n = static_cast<Eigen::Index>(actual.size());
    r.mse = se / n;
    r.rmse = std::sqrt(r.mse);
    r.mae = ae / n;
    if (mape_defined) r.mape = 100.0 * pe / n;
    return r;
}

MetricReport metrics(const Eigen::VectorXd& actual, const Eigen::VectorXd& predicted) {
    return metrics(std::span<const double>(actual.data(), static_cast<std::size_t>(actual.size())),
                   std::span<const double>(predicted.data(), static_cast<std::size_t>(predicted.size())));
}

}  // namespace dvarma::eval
