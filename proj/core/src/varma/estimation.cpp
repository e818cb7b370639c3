#include "dvarma/varma/estimation.hpp"

#include "dvarma/common/linalg.hpp"
#include "dvarma/varma/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dvarma::varma {

double aic(double log_likelihood, int k_params) noexcept {
    return 2.0 * static_cast<double>(k_params) - 2.0 * log_likelihood;
}

double aic(const FittedVarma& fitted) noexcept { return aic(fitted.log_likelihood, fitted.k_params); }

namespace {

// Design matrix rows t = first..T-1: [1] [y_{t-1} .. y_{t-p}] [x_t .. x_{t-s}] [e_{t-1} .. e_{t-q}].
// `innov` holds innovation estimates for rows innov_first..T-1.
Eigen::MatrixXd build_design(const Eigen::MatrixXd& y, const Eigen::MatrixXd* exog, bool intercept, int p, int s,
                             const Eigen::MatrixXd* innov, Index innov_first, int q, Index first) {
    const Index T = y.rows();
    const Index m = y.cols();
    const Index n = T - first;
    const Index dx = exog ? exog->cols() : 0;
    const Index k = (intercept ? 1 : 0) + p * m + (exog ? (s + 1) * dx : 0) + (innov ? q * m : 0);
    Eigen::MatrixXd X(n, k);
    Index c = 0;
    if (intercept) X.col(c++).setOnes();
    for (int i = 1; i <= p; ++i, c += m) X.middleCols(c, m) = y.middleRows(first - i, n);
    if (exog) {
        for (int j = 0; j <= s; ++j, c += dx) X.middleCols(c, dx) = exog->middleRows(first - j, n);
    }
    if (innov) {
        for (int j = 1; j <= q; ++j, c += m) X.middleCols(c, m) = innov->middleRows(first - j - innov_first, n);
    }
    return X;
}

Eigen::MatrixXd cholesky_with_nudge(Eigen::MatrixXd S) {
    S = 0.5 * (S + S.transpose());
    double nudge = 1e-8;
    for (int attempt = 0; attempt < 12; ++attempt) {
        Eigen::LLT<Eigen::MatrixXd> llt(S);
        if (llt.info() == Eigen::Success && (llt.matrixL().toDenseMatrix().diagonal().array() > 0.0).all()) {
            return llt.matrixL();
        }
        S.diagonal().array() += nudge;
        nudge *= 10.0;
    }
    throw std::runtime_error("Sigma could not be made positive definite");
}

void check_exog(const VarmaSpec& spec, const Eigen::MatrixXd& y, const Eigen::MatrixXd* exog) {
    if (y.cols() != spec.m) throw std::invalid_argument("VARMA: data width differs from m");
    if (spec.has_exog() != (exog != nullptr)) {
        throw std::invalid_argument("VARMA: exogenous input must be supplied iff exog_dim > 0");
    }
    if (exog && (exog->rows() != y.rows() || exog->cols() != spec.exog_dim)) {
        throw std::invalid_argument("VARMA: exogenous input shape mismatch");
    }
    if (y.hasNaN() || (exog && exog->hasNaN())) throw std::invalid_argument("VARMA: missing values in input");
}

void unpack_regression(const Eigen::MatrixXd& B, const VarmaSpec& spec, VarmaParams& out) {
    const Index m = spec.m;
    Index r = 0;
    if (spec.intercept) out.intercept = B.row(r++).transpose();
    for (int i = 0; i < spec.p; ++i, r += m) out.phi[static_cast<std::size_t>(i)] = B.middleRows(r, m).transpose();
    if (spec.has_exog()) {
        for (int j = 0; j <= spec.s; ++j, r += spec.exog_dim) {
            out.gamma[static_cast<std::size_t>(j)] = B.middleRows(r, spec.exog_dim).transpose();
        }
    }
    for (int j = 0; j < spec.q; ++j, r += m) out.theta[static_cast<std::size_t>(j)] = B.middleRows(r, m).transpose();
}

// Packed mean-parameter vector: intercept, Phi_i, Theta_j, Gamma_k (column-major blocks).
Eigen::VectorXd pack(const VarmaSpec& spec, const VarmaParams& prm) {
    const int k = count_free_parameters(spec) - spec.m * (spec.m + 1) / 2;
    Eigen::VectorXd v(k);
    Index c = 0;
    const auto put = [&](const Eigen::MatrixXd& M) {
        v.segment(c, M.size()) = Eigen::Map<const Eigen::VectorXd>(M.data(), M.size());
        c += M.size();
    };
    if (spec.intercept) put(prm.intercept);
    for (const auto& a : prm.phi) put(a);
    for (const auto& b : prm.theta) put(b);
    for (const auto& g : prm.gamma) put(g);
    return v;
}

void unpack(const VarmaSpec& spec, const Eigen::VectorXd& v, VarmaParams& prm) {
    Index c = 0;
    const auto take = [&](Eigen::MatrixXd& M) {
        Eigen::Map<Eigen::VectorXd>(M.data(), M.size()) = v.segment(c, M.size());
        c += M.size();
    };
    if (spec.intercept) {
        prm.intercept = v.segment(0, spec.m);
        c = spec.m;
    }
    for (auto& a : prm.phi) take(a);
    for (auto& b : prm.theta) take(b);
    for (auto& g : prm.gamma) take(g);
}

struct ProfileObjective {
    const VarmaSpec& spec;
    const Eigen::MatrixXd& y;
    const Eigen::MatrixXd* exog;
    Index start;  // likelihood start (time index)
    double root_limit;
    mutable VarmaParams work;

    // Half the per-observation negative profile log-likelihood, minus constants:
    // f = 0.5 (m ln 2pi + ln det S + m), S = E'E / n.
    double operator()(const Eigen::VectorXd& v, bool check_roots_now) const {
        unpack(spec, v, work);
        if (check_roots_now) {
            const RootCheck rc = check_roots(work);
            if (!(rc.ar_radius < root_limit) || !(rc.ma_radius < root_limit)) {
                return std::numeric_limits<double>::infinity();
            }
        }
        const Eigen::MatrixXd e = compute_residuals(spec, work, y, exog);
        const Index L0 = y.rows() - e.rows();
        const Index skip = std::max<Index>(0, start - L0);
        const Index n = e.rows() - skip;
        const auto E = e.bottomRows(n);
        if (!E.allFinite()) return std::numeric_limits<double>::infinity();
        const Eigen::MatrixXd S = (E.transpose() * E) / static_cast<double>(n);
        Eigen::LLT<Eigen::MatrixXd> llt(S);
        if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
        const Eigen::VectorXd d = llt.matrixLLT().diagonal();
        if (!(d.array() > 0.0).all()) return std::numeric_limits<double>::infinity();
        const double log_det = 2.0 * d.array().log().sum();
        const double m = static_cast<double>(spec.m);
        const double f = 0.5 * (m * std::log(2.0 * std::numbers::pi) + log_det + m);
        return std::isfinite(f) ? f : std::numeric_limits<double>::infinity();
    }

    Eigen::VectorXd gradient(const Eigen::VectorXd& v) const {
        Eigen::VectorXd g(v.size());
        Eigen::VectorXd x = v;
        for (Index i = 0; i < v.size(); ++i) {
            const double h = 1e-6 * std::max(1.0, std::abs(v(i)));
            x(i) = v(i) + h;
            const double fp = (*this)(x, false);
            x(i) = v(i) - h;
            const double fm = (*this)(x, false);
            x(i) = v(i);
            g(i) = (fp - fm) / (2.0 * h);
        }
        return g;
    }
};

Eigen::MatrixXd profile_sigma_factor(const VarmaSpec& spec, const VarmaParams& prm, const Eigen::MatrixXd& y,
                                     const Eigen::MatrixXd* exog, Index start) {
    const Eigen::MatrixXd e = compute_residuals(spec, prm, y, exog);
    const Index L0 = y.rows() - e.rows();
    const Index skip = std::max<Index>(0, start - L0);
    const auto E = e.bottomRows(e.rows() - skip);
    return cholesky_with_nudge((E.transpose() * E) / static_cast<double>(E.rows()));
}

}  // namespace

VarmaParams hannan_rissanen_init(const Eigen::MatrixXd& y, const VarmaSpec& spec, const Eigen::MatrixXd* exog) {
    spec.validate();
    check_exog(spec, y, exog);
    const Index T = y.rows();
    const Index m = spec.m;
    if (T < 10 * (spec.p + spec.q + 1) * m) {
        throw std::invalid_argument("hannan_rissanen_init: insufficient sample for the requested orders");
    }
    for (Index k = 0; k < m; ++k) {
        if (y.col(k).maxCoeff() == y.col(k).minCoeff()) {
            throw std::invalid_argument("hannan_rissanen_init: zero-variance data in column " + std::to_string(k));
        }
    }

    VarmaParams out = VarmaParams::zeros(spec);
    const int s = spec.has_exog() ? spec.s : 0;

    Eigen::MatrixXd innov;
    Index innov_first = 0;
    Index first = std::max<Index>(spec.p, s);
    if (spec.q > 0) {
        const int h = std::max(8, 2 * std::max(spec.p, spec.q));
        innov_first = std::max<Index>(h, s);
        const Eigen::MatrixXd X1 = build_design(y, exog, spec.intercept, h, s, nullptr, 0, 0, innov_first);
        if (X1.rows() <= X1.cols()) throw std::invalid_argument("hannan_rissanen_init: sample too short for stage 1");
        const Eigen::MatrixXd Y1 = y.bottomRows(T - innov_first);
        innov = Y1 - X1 * least_squares(X1, Y1);
        first = std::max<Index>(first, innov_first + spec.q);
    }

    if (spec.p + spec.q == 0 && !spec.has_exog() && !spec.intercept) {
        out.sigma_factor = cholesky_with_nudge(y.transpose() * y / static_cast<double>(T));
        return out;
    }
    const Eigen::MatrixXd X2 =
        build_design(y, exog, spec.intercept, spec.p, s, spec.q > 0 ? &innov : nullptr, innov_first, spec.q, first);
    if (X2.rows() <= X2.cols()) throw std::invalid_argument("hannan_rissanen_init: sample too short for stage 2");
    const Eigen::MatrixXd Y2 = y.bottomRows(T - first);
    const Eigen::MatrixXd B = least_squares(X2, Y2);
    unpack_regression(B, spec, out);
    const Eigen::MatrixXd R = Y2 - X2 * B;
    out.sigma_factor = cholesky_with_nudge(R.transpose() * R / static_cast<double>(R.rows()));
    return out;
}

VarmaParams project_to_stable(const VarmaParams& params, double limit) {
    VarmaParams out = params;
    const auto shrink = [limit](std::vector<Eigen::MatrixXd>& blocks, double radius) {
        if (!(radius > limit)) return;
        const double lambda = std::isfinite(radius) ? limit / radius : 0.0;
        double scale = 1.0;
        for (auto& b : blocks) {
            scale *= lambda;
            b *= scale;
        }
    };
    const RootCheck rc = check_roots(params);
    shrink(out.phi, rc.ar_radius);
    shrink(out.theta, rc.ma_radius);
    return out;
}

FittedVarma estimate_mle(const Eigen::MatrixXd& y, const VarmaSpec& spec, const Eigen::MatrixXd* exog,
                         const std::optional<VarmaParams>& init, const MleOptions& options) {
    spec.validate();
    check_exog(spec, y, exog);
    const Index T = y.rows();
    const int k_params = count_free_parameters(spec);
    const Index start = std::max<Index>(spec.presample(), options.likelihood_start);
    if (T - start <= std::max<Index>(1, k_params / spec.m)) {
        throw std::invalid_argument("estimate_mle: sample too short for the number of parameters");
    }

    VarmaParams start_params = init ? *init : hannan_rissanen_init(y, spec, exog);
    start_params.check_shapes(spec);
    start_params = project_to_stable(start_params);

    FittedVarma fit;
    fit.spec = spec;
    fit.k_params = k_params;
    fit.likelihood_start = static_cast<int>(start);
    fit.init_log_likelihood = conditional_loglik(spec, start_params, y, exog, static_cast<int>(start));

    ProfileObjective F{spec, y, exog, start, options.root_limit, start_params};
    const double n_obs = static_cast<double>(T - start);
    Eigen::VectorXd x = pack(spec, start_params);
    double f = F(x, true);
    if (!std::isfinite(f)) throw std::runtime_error("estimate_mle: non-finite objective at the initial point");

    ConvergenceInfo& info = fit.convergence;
    if (x.size() > 0) {
        Eigen::VectorXd g = F.gradient(x);
        Eigen::MatrixXd Hinv = Eigen::MatrixXd::Identity(x.size(), x.size());
        bool fresh = true;
        for (int it = 1; it <= options.max_iterations; ++it) {
            info.iterations = it;
            Eigen::VectorXd d = -Hinv * g;
            double slope = g.dot(d);
            if (!(slope < 0.0)) {
                Hinv.setIdentity();
                fresh = true;
                d = -g;
                slope = -g.squaredNorm();
            }
            double step = 1.0;
            double fn = std::numeric_limits<double>::infinity();
            Eigen::VectorXd xn;
            bool accepted = false;
            for (int ls = 0; ls < 50; ++ls, step *= 0.5) {
                xn = x + step * d;
                fn = F(xn, true);
                if (std::isfinite(fn) && fn <= f + 1e-4 * step * slope) {
                    accepted = true;
                    break;
                }
            }
            if (!accepted) {
                if (!fresh) {
                    Hinv.setIdentity();
                    fresh = true;
                    continue;
                }
                info.stop_reason = "line search failed";
                info.converged = g.lpNorm<Eigen::Infinity>() < 1e-5;
                break;
            }
            const Eigen::VectorXd gn = F.gradient(xn);
            const Eigen::VectorXd sv = xn - x;
            const Eigen::VectorXd yv = gn - g;
            const double sy = sv.dot(yv);
            if (sy > 1e-14) {
                if (fresh) Hinv *= sy / yv.squaredNorm();
                const double rho = 1.0 / sy;
                const Eigen::VectorXd Hy = Hinv * yv;
                Hinv += ((sy + yv.dot(Hy)) * rho * rho) * (sv * sv.transpose()) -
                        rho * (Hy * sv.transpose() + sv * Hy.transpose());
                fresh = false;
            }
            const double rel = n_obs * (f - fn) / std::max(1.0, n_obs * std::abs(f));
            x = xn;
            f = fn;
            g = gn;
            if (rel < options.relative_tolerance) {
                info.converged = true;
                info.stop_reason = "relative improvement below tolerance";
                break;
            }
            if (g.lpNorm<Eigen::Infinity>() < 1e-10) {
                info.converged = true;
                info.stop_reason = "gradient below tolerance";
                break;
            }
        }
        if (info.stop_reason.empty()) info.stop_reason = "iteration limit";
        info.gradient_norm = g.norm();
    } else {
        info.converged = true;
        info.stop_reason = "no mean parameters";
    }

    VarmaParams best = start_params;
    unpack(spec, x, best);
    best.sigma_factor = profile_sigma_factor(spec, best, y, exog, start);
    double ll = conditional_loglik(spec, best, y, exog, static_cast<int>(start));
    if (!(ll >= fit.init_log_likelihood)) {
        best = start_params;
        ll = fit.init_log_likelihood;
    }
    if (!std::isfinite(ll)) throw std::runtime_error("estimate_mle: optimizer diverged (non-finite likelihood)");

    fit.params = std::move(best);
    fit.log_likelihood = ll;
    fit.aic = aic(ll, k_params);

    const Eigen::MatrixXd e = compute_residuals(spec, fit.params, y, exog);
    std::vector<std::string> names;
    for (int i = 0; i < spec.m; ++i) names.push_back("y" + std::to_string(i + 1));
    const auto dates = series::daily_dates(series::Date{std::chrono::year{2000}, std::chrono::January,
                                                        std::chrono::day{1}},
                                           T);
    fit.residuals = series::Panel(std::vector<series::Date>(dates.end() - e.rows(), dates.end()), names, e);
    const Index keep_y = std::min<Index>(T, std::max(spec.p, 1));
    fit.y_tail = y.bottomRows(keep_y);
    if (exog) fit.exog_tail = exog->bottomRows(std::min<Index>(T, std::max(spec.s, 1)));
    return fit;
}

FittedVarma estimate_mle(const series::Panel& y, const VarmaSpec& spec, const series::Panel* exog,
                         const std::optional<VarmaParams>& init, const MleOptions& options) {
    y.require_complete("estimate_mle");
    if (exog) {
        exog->require_complete("estimate_mle");
        if (exog->timestamps() != y.timestamps()) {
            throw std::invalid_argument("estimate_mle: exogenous panel is not aligned with the data");
        }
    }
    FittedVarma fit = estimate_mle(y.values(), spec, exog ? &exog->values() : nullptr, init, options);
    const Index n = fit.residuals.rows();
    std::vector<series::Date> ts(y.timestamps().end() - n, y.timestamps().end());
    fit.residuals = series::Panel(std::move(ts), y.columns(), fit.residuals.values());
    return fit;
}

bool ranks_before(const CandidateOutcome& a, const CandidateOutcome& b) noexcept {
    if (a.aic != b.aic) return a.aic < b.aic;
    const int oa = a.spec.p + a.spec.q;
    const int ob = b.spec.p + b.spec.q;
    if (oa != ob) return oa < ob;
    if (a.spec.p != b.spec.p) return a.spec.p < b.spec.p;
    return a.spec.s < b.spec.s;
}

}  // namespace dvarma::varma
