#include "dvarma/series/describe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dvarma::series {

StatsRow describe(std::span<const double> values, std::string name) {
    if (values.empty()) throw std::invalid_argument("describe: empty series");
    const auto n = static_cast<double>(values.size());
    StatsRow row;
    row.name = std::move(name);
    row.sample_size = static_cast<Index>(values.size());
    row.max = *std::max_element(values.begin(), values.end());
    row.min = *std::min_element(values.begin(), values.end());

    double sum = 0.0;
    for (double v : values) sum += v;
    row.mean = sum / n;
    if (row.max == row.min) {
        row.mean = row.max;
        return row;
    }

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : values) {
        const double d = v - row.mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    row.std_dev = values.size() > 1 ? std::sqrt(m2 / (n - 1.0)) : 0.0;
    if (!(m2 > 0.0)) return row;

    m2 /= n;
    m3 /= n;
    m4 /= n;
    const double g1 = m3 / std::pow(m2, 1.5);
    const double g2 = m4 / (m2 * m2) - 3.0;
    if (values.size() >= 3) row.skewness = g1 * std::sqrt(n * (n - 1.0)) / (n - 2.0);
    if (values.size() >= 4) row.kurtosis = ((n + 1.0) * g2 + 6.0) * (n - 1.0) / ((n - 2.0) * (n - 3.0));
    return row;
}

std::vector<StatsRow> descriptive_stats(const Panel& panel) {
    if (panel.empty() || panel.cols() == 0) throw std::invalid_argument("descriptive_stats: empty panel");
    panel.require_complete("descriptive_stats");
    std::vector<StatsRow> rows;
    for (Index k = 0; k < panel.cols(); ++k) {
        const Eigen::VectorXd col = panel.values().col(k);
        rows.push_back(describe(std::span<const double>(col.data(), static_cast<std::size_t>(col.size())),
                                panel.columns()[static_cast<std::size_t>(k)]));
    }
    return rows;
}

}  // namespace dvarma::series
