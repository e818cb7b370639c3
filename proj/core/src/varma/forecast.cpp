#include "dvarma/varma/forecast.hpp"

#include "dvarma/varma/likelihood.hpp"

#include <stdexcept>

namespace dvarma::varma {

namespace {

// y_recent / eps_recent / x_recent: most recent rows, oldest first; missing
// history (shorter than the lag) counts as zero.
Eigen::MatrixXd iterate(const VarmaSpec& spec, const VarmaParams& params, const Eigen::MatrixXd& y_recent,
                        const Eigen::MatrixXd& eps_recent, const Eigen::MatrixXd& x_recent, int h, ExogPolicy policy,
                        const Eigen::MatrixXd* future_exog) {
    if (h < 1) throw std::invalid_argument("forecast: horizon must be at least 1");
    const Index m = spec.m;
    Eigen::MatrixXd fx;
    if (spec.has_exog()) {
        if (future_exog) {
            if (future_exog->rows() < h || future_exog->cols() != spec.exog_dim) {
                throw std::invalid_argument("forecast: future exogenous input has the wrong shape");
            }
            fx = future_exog->topRows(h);
        } else if (policy == ExogPolicy::Require) {
            throw std::invalid_argument("forecast: future exogenous values are required");
        } else {
            if (x_recent.rows() == 0) throw std::invalid_argument("forecast: no exogenous history to hold");
            fx = x_recent.bottomRows(1).replicate(h, 1);
        }
    }

    const Index hy = y_recent.rows();
    const Index he = eps_recent.rows();
    const Index hx = x_recent.rows();
    Eigen::MatrixXd out(h, m);
    const auto y_at = [&](Index k) -> Eigen::RowVectorXd {  // k < 0 indexes history (-1 = last)
        if (k >= 0) return out.row(k);
        return hy + k >= 0 ? Eigen::RowVectorXd(y_recent.row(hy + k)) : Eigen::RowVectorXd::Zero(m);
    };
    for (Index t = 0; t < h; ++t) {
        Eigen::RowVectorXd v = Eigen::RowVectorXd::Zero(m);
        if (spec.intercept) v += params.intercept.transpose();
        for (int i = 1; i <= spec.p; ++i) v += y_at(t - i) * params.phi[static_cast<std::size_t>(i - 1)].transpose();
        for (int j = 1; j <= spec.q; ++j) {
            const Index k = t - j;
            if (k < 0 && he + k >= 0) {
                v += eps_recent.row(he + k) * params.theta[static_cast<std::size_t>(j - 1)].transpose();
            }
        }
        if (spec.has_exog()) {
            for (int k = 0; k <= spec.s; ++k) {
                const Index idx = t - k;
                Eigen::RowVectorXd xr;
                if (idx >= 0) {
                    xr = fx.row(idx);
                } else if (hx + idx >= 0) {
                    xr = x_recent.row(hx + idx);
                } else {
                    continue;
                }
                v += xr * params.gamma[static_cast<std::size_t>(k)].transpose();
            }
        }
        out.row(t) = v;
    }
    return out;
}

}  // namespace

ForecastResult forecast(const FittedVarma& fitted, int h, ExogPolicy policy, const Eigen::MatrixXd* future_exog) {
    const Eigen::MatrixXd& res = fitted.residuals.values();
    const Index nq = std::min<Index>(res.rows(), fitted.spec.q);
    ForecastResult out;
    out.horizon = h;
    out.policy = policy;
    out.mean = iterate(fitted.spec, fitted.params, fitted.y_tail, res.bottomRows(nq), fitted.exog_tail, h, policy,
                       future_exog);
    return out;
}

Eigen::MatrixXd forecast_from(const VarmaSpec& spec, const VarmaParams& params, const Eigen::MatrixXd& y_history,
                              const Eigen::MatrixXd* exog_history, int h, ExogPolicy policy,
                              const Eigen::MatrixXd* future_exog) {
    const Eigen::MatrixXd eps =
        spec.q > 0 ? compute_residuals(spec, params, y_history, exog_history) : Eigen::MatrixXd(0, spec.m);
    const Index nq = std::min<Index>(eps.rows(), spec.q);
    const Eigen::MatrixXd x = exog_history ? *exog_history : Eigen::MatrixXd(0, spec.exog_dim);
    return iterate(spec, params, y_history, eps.bottomRows(nq), x, h, policy, future_exog);
}

}  // namespace dvarma::varma
