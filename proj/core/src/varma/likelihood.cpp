#include "dvarma/varma/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dvarma::varma {

namespace {

void check_inputs(const VarmaSpec& spec, const VarmaParams& params, const Eigen::MatrixXd& y,
                  const Eigen::MatrixXd* exog) {
    spec.validate();
    params.check_shapes(spec);
    if (y.cols() != spec.m) throw std::invalid_argument("VARMA: data width differs from m");
    if (spec.has_exog() != (exog != nullptr)) {
        throw std::invalid_argument("VARMA: exogenous input must be supplied iff exog_dim > 0");
    }
    if (exog && (exog->rows() != y.rows() || exog->cols() != spec.exog_dim)) {
        throw std::invalid_argument("VARMA: exogenous input shape mismatch");
    }
    if (y.hasNaN() || (exog && exog->hasNaN())) throw std::invalid_argument("VARMA: missing values in input");
}

}  // namespace

Eigen::MatrixXd compute_residuals(const VarmaSpec& spec, const VarmaParams& params, const Eigen::MatrixXd& y,
                                  const Eigen::MatrixXd* exog) {
    check_inputs(spec, params, y, exog);
    const Index T = y.rows();
    const Index L0 = std::max(spec.p, spec.has_exog() ? spec.s : 0);
    if (T <= L0) return Eigen::MatrixXd(0, spec.m);
    const Index n = T - L0;

    // Everything except the MA part is a set of shifted block products.
    Eigen::MatrixXd e = y.bottomRows(n);
    if (spec.intercept) e.rowwise() -= params.intercept.transpose();
    for (int i = 1; i <= spec.p; ++i) {
        e.noalias() -= y.middleRows(L0 - i, n) * params.phi[static_cast<std::size_t>(i - 1)].transpose();
    }
    if (exog) {
        for (int k = 0; k <= spec.s; ++k) {
            e.noalias() -= exog->middleRows(L0 - k, n) * params.gamma[static_cast<std::size_t>(k)].transpose();
        }
    }
    if (spec.q > 0) {
        // Sequential part on a time-major copy so each step is contiguous.
        Eigen::MatrixXd et = e.transpose();
        const Index m = spec.m;
        for (Index r = 0; r < n; ++r) {
            double* cur = et.col(r).data();
            for (int j = 1; j <= spec.q && r - j >= 0; ++j) {
                const double* prev = et.col(r - j).data();
                const Eigen::MatrixXd& th = params.theta[static_cast<std::size_t>(j - 1)];
                for (Index b = 0; b < m; ++b) {
                    const double pb = prev[b];
                    const double* col = th.col(b).data();
                    for (Index a = 0; a < m; ++a) cur[a] -= col[a] * pb;
                }
            }
        }
        e = et.transpose();
    }
    return e;
}

series::Panel compute_residuals(const VarmaSpec& spec, const VarmaParams& params, const series::Panel& y,
                                const series::Panel* exog) {
    const Eigen::MatrixXd* x = exog ? &exog->values() : nullptr;
    Eigen::MatrixXd e = compute_residuals(spec, params, y.values(), x);
    const Index L0 = y.rows() - e.rows();
    std::vector<series::Date> ts(y.timestamps().begin() + L0, y.timestamps().end());
    return series::Panel(std::move(ts), y.columns(), std::move(e));
}

double conditional_loglik(const VarmaSpec& spec, const VarmaParams& params, const Eigen::MatrixXd& y,
                          const Eigen::MatrixXd* exog, int likelihood_start) {
    const Eigen::MatrixXd& L = params.sigma_factor;
    if (L.rows() != spec.m || L.cols() != spec.m) throw std::invalid_argument("conditional_loglik: bad Sigma factor");
    for (Index i = 0; i < spec.m; ++i) {
        if (!(L(i, i) > 0.0)) throw std::invalid_argument("conditional_loglik: Sigma is not positive definite");
    }
    const Eigen::MatrixXd e = compute_residuals(spec, params, y, exog);
    const Index L0 = y.rows() - e.rows();
    const Index start = std::max<Index>(spec.presample(), likelihood_start);
    const Index skip = std::max<Index>(0, start - L0);
    const Index n = e.rows() - skip;
    if (n <= 0) throw std::invalid_argument("conditional_loglik: no residuals enter the likelihood");

    // Solve L z = eps' for all rows at once; eps' Sigma^-1 eps = |z|^2.
    const Eigen::MatrixXd z =
        L.triangularView<Eigen::Lower>().solve(e.bottomRows(n).transpose());
    const double log_det = 2.0 * L.diagonal().array().log().sum();
    const double m = static_cast<double>(spec.m);
    const double nn = static_cast<double>(n);
    return -0.5 * nn * m * std::log(2.0 * std::numbers::pi) - 0.5 * nn * log_det - 0.5 * z.squaredNorm();
}

}  // namespace dvarma::varma
