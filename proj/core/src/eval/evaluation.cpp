#include "dvarma/eval/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dvarma::eval {

Eigen::MatrixXd HybridForecaster::forecast(const Eigen::MatrixXd& endog_history, const Eigen::MatrixXd* exog_history,
                                           int h) const {
    return model_->forecast_from(endog_history, hybrid::uses_exog(model_->kind) ? exog_history : nullptr, h).y_hat;
}

int HorizonSpec::max_horizon() const {
    int hmax = 0;
    for (int p : points) hmax = std::max(hmax, p);
    for (int c : cumulative) hmax = std::max(hmax, c);
    return hmax;
}

std::vector<std::string> HorizonSpec::column_labels() const {
    std::vector<std::string> out;
    for (int p : points) out.push_back(std::to_string(p));
    for (int c : cumulative) out.push_back("1:" + std::to_string(c));
    return out;
}

std::vector<std::vector<double>> horizon_errors(const Forecaster& forecaster, const Eigen::MatrixXd& endog,
                                                const Eigen::MatrixXd* exog, Index test_start,
                                                const HorizonSpec& spec) {
    for (int p : spec.points) {
        if (p < 1) throw std::invalid_argument("horizon_eval: horizons must be positive");
    }
    for (int c : spec.cumulative) {
        if (c < 1) throw std::invalid_argument("horizon_eval: horizons must be positive");
    }
    const int H = spec.max_horizon();
    if (H < 1) throw std::invalid_argument("horizon_eval: no horizons requested");
    const Index T = endog.rows();
    const Index m = endog.cols();
    if (test_start < 1 || T - test_start < H + 1) {
        throw std::invalid_argument("horizon_eval: test range shorter than the largest horizon + 1");
    }
    // sq[s](o, k): squared error at step k+1 for origin o
    std::vector<Eigen::MatrixXd> sq(static_cast<std::size_t>(m));
    const Index n_origins = T - H - test_start + 1;
    for (auto& s : sq) s.resize(n_origins, H);
    for (Index o = 0; o < n_origins; ++o) {
        const Index origin = test_start + o;
        const Eigen::MatrixXd hist = endog.topRows(origin);
        Eigen::MatrixXd xh;
        if (exog) xh = exog->topRows(origin);
        const Eigen::MatrixXd f = forecaster.forecast(hist, exog ? &xh : nullptr, H);
        const Eigen::MatrixXd d = f - endog.middleRows(origin, H);
        for (Index s = 0; s < m; ++s) sq[static_cast<std::size_t>(s)].row(o) = d.col(s).array().square().matrix().transpose();
    }
    std::vector<std::vector<double>> out(static_cast<std::size_t>(m));
    for (Index s = 0; s < m; ++s) {
        const Eigen::MatrixXd& e = sq[static_cast<std::size_t>(s)];
        auto& row = out[static_cast<std::size_t>(s)];
        for (int p : spec.points) row.push_back(e.col(p - 1).mean());
        for (int c : spec.cumulative) row.push_back(e.leftCols(c).mean());
    }
    return out;
}

HorizonTable horizon_eval(const std::vector<NamedForecaster>& models, const series::Panel& endog,
                          const series::Panel* exog, Index test_start, const HorizonSpec& spec) {
    endog.require_complete("horizon_eval");
    if (exog) exog->require_complete("horizon_eval");
    HorizonTable table;
    table.spec = spec;
    table.series = endog.columns();
    const std::size_t ncol = spec.points.size() + spec.cumulative.size();
    for (const auto& nf : models) {
        table.models.push_back(nf.name);
        if (!nf.forecaster) {
            table.cells.emplace_back(ncol, series::kMissing);
            table.by_series.emplace_back(table.series.size(), std::vector<double>(ncol, series::kMissing));
            continue;
        }
        auto per = horizon_errors(*nf.forecaster, endog.values(), exog ? &exog->values() : nullptr, test_start, spec);
        std::vector<double> mean(ncol, 0.0);
        for (const auto& r : per) {
            for (std::size_t c = 0; c < ncol; ++c) mean[c] += r[c] / static_cast<double>(per.size());
        }
        table.cells.push_back(std::move(mean));
        table.by_series.push_back(std::move(per));
    }
    return table;
}

Eigen::MatrixXd rolling_one_step(const Forecaster& forecaster, const Eigen::MatrixXd& endog,
                                 const Eigen::MatrixXd* exog, Index test_start) {
    const Index T = endog.rows();
    if (test_start < 1 || test_start >= T) throw std::invalid_argument("rolling_one_step: empty test range");
    Eigen::MatrixXd out(T - test_start, endog.cols());
    for (Index t = test_start; t < T; ++t) {
        const Eigen::MatrixXd hist = endog.topRows(t);
        Eigen::MatrixXd xh;
        if (exog) xh = exog->topRows(t);
        out.row(t - test_start) = forecaster.forecast(hist, exog ? &xh : nullptr, 1).row(0);
    }
    return out;
}

ComparisonReport compare(const std::vector<NamedForecaster>& models, const series::Panel& endog,
                         const series::Panel* exog, Index test_start, const std::string& protocol) {
    endog.require_complete("compare");
    if (exog) exog->require_complete("compare");
    ComparisonReport rep;
    rep.protocol = protocol;
    rep.series = endog.columns();
    const Index m = endog.cols();
    const Eigen::MatrixXd actual = endog.values().bottomRows(endog.rows() - test_start);
    for (const auto& nf : models) {
        rep.models.push_back(nf.name);
        std::vector<std::optional<MetricReport>> row(static_cast<std::size_t>(m));
        std::optional<MetricReport> mean;
        if (nf.forecaster) {
            const Eigen::MatrixXd pred =
                rolling_one_step(*nf.forecaster, endog.values(), exog ? &exog->values() : nullptr, test_start);
            MetricReport avg;
            bool mape_ok = true;
            double mape_sum = 0.0;
            for (Index s = 0; s < m; ++s) {
                const MetricReport r = metrics(Eigen::VectorXd(actual.col(s)), Eigen::VectorXd(pred.col(s)));
                avg.mse += r.mse / static_cast<double>(m);
                avg.rmse += r.rmse / static_cast<double>(m);
                avg.mae += r.mae / static_cast<double>(m);
                if (r.mape) {
                    mape_sum += *r.mape / static_cast<double>(m);
                } else {
                    mape_ok = false;
                }
                avg.n = r.n;
                row[static_cast<std::size_t>(s)] = r;
            }
            if (mape_ok) avg.mape = mape_sum;
            mean = avg;
        }
        rep.cells.push_back(std::move(row));
        rep.mean.push_back(mean);
    }
    return rep;
}

}  // namespace dvarma::eval
