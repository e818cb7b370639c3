#include "dvarma/varma/model.hpp"

#include "dvarma/common/linalg.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace dvarma::varma {

int VarmaSpec::presample() const noexcept { return std::max({p, q, has_exog() ? s : 0}); }

void VarmaSpec::validate() const {
    if (m < 1) throw std::invalid_argument("VarmaSpec: m must be at least 1");
    if (p < 0 || q < 0 || s < 0 || exog_dim < 0) throw std::invalid_argument("VarmaSpec: negative order");
    if (!has_exog() && s != 0) throw std::invalid_argument("VarmaSpec: exogenous lag order without exogenous input");
    if (p + q == 0 && !has_exog() && !allow_trivial) {
        throw std::invalid_argument("VarmaSpec: model has no AR, MA or exogenous terms");
    }
}

VarmaParams VarmaParams::zeros(const VarmaSpec& spec) {
    spec.validate();
    VarmaParams out;
    out.phi.assign(static_cast<std::size_t>(spec.p), Eigen::MatrixXd::Zero(spec.m, spec.m));
    out.theta.assign(static_cast<std::size_t>(spec.q), Eigen::MatrixXd::Zero(spec.m, spec.m));
    if (spec.has_exog()) {
        out.gamma.assign(static_cast<std::size_t>(spec.s + 1), Eigen::MatrixXd::Zero(spec.m, spec.exog_dim));
    }
    if (spec.intercept) out.intercept = Eigen::VectorXd::Zero(spec.m);
    out.sigma_factor = Eigen::MatrixXd::Identity(spec.m, spec.m);
    return out;
}

void VarmaParams::check_shapes(const VarmaSpec& spec) const {
    const auto bad = [](const char* what) { throw std::invalid_argument(std::string("VarmaParams: ") + what); };
    if (phi.size() != static_cast<std::size_t>(spec.p)) bad("Phi count differs from p");
    if (theta.size() != static_cast<std::size_t>(spec.q)) bad("Theta count differs from q");
    for (const auto& a : phi) {
        if (a.rows() != spec.m || a.cols() != spec.m) bad("Phi matrix is not m x m");
    }
    for (const auto& b : theta) {
        if (b.rows() != spec.m || b.cols() != spec.m) bad("Theta matrix is not m x m");
    }
    const std::size_t n_gamma = spec.has_exog() ? static_cast<std::size_t>(spec.s + 1) : 0;
    if (gamma.size() != n_gamma) bad("Gamma count differs from s + 1");
    for (const auto& g : gamma) {
        if (g.rows() != spec.m || g.cols() != spec.exog_dim) bad("Gamma matrix is not m x exog_dim");
    }
    if (intercept.size() != (spec.intercept ? spec.m : 0)) bad("intercept size mismatch");
    if (sigma_factor.rows() != spec.m || sigma_factor.cols() != spec.m) bad("Sigma factor is not m x m");
}

int count_free_parameters(const VarmaSpec& spec) {
    const int m = spec.m;
    int k = (spec.p + spec.q) * m * m + m * (m + 1) / 2;
    if (spec.intercept) k += m;
    if (spec.has_exog()) k += (spec.s + 1) * m * spec.exog_dim;
    return k;
}

namespace {

Eigen::MatrixXd companion(const std::vector<Eigen::MatrixXd>& blocks, double sign) {
    if (blocks.empty()) return Eigen::MatrixXd(0, 0);
    const Index m = blocks.front().rows();
    const Index n = static_cast<Index>(blocks.size());
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(m * n, m * n);
    for (Index i = 0; i < n; ++i) C.block(0, i * m, m, m) = sign * blocks[static_cast<std::size_t>(i)];
    if (n > 1) C.block(m, 0, m * (n - 1), m * (n - 1)).setIdentity();
    return C;
}

}  // namespace

Eigen::MatrixXd ar_companion(const VarmaParams& params) { return companion(params.phi, 1.0); }
Eigen::MatrixXd ma_companion(const VarmaParams& params) { return companion(params.theta, -1.0); }

RootCheck check_roots(const VarmaParams& params) {
    RootCheck rc;
    rc.ar_radius = spectral_radius(ar_companion(params));
    rc.ma_radius = spectral_radius(ma_companion(params));
    rc.stable = rc.ar_radius < 1.0;
    rc.invertible = rc.ma_radius < 1.0;
    return rc;
}

series::Panel simulate(const VarmaSpec& spec, const VarmaParams& params, Index T, const SimulationOptions& options,
                       const Eigen::MatrixXd* exog) {
    spec.validate();
    params.check_shapes(spec);
    if (T < 1) throw std::invalid_argument("simulate: T must be positive");
    if (spec.has_exog() != (exog != nullptr)) {
        throw std::invalid_argument("simulate: exogenous input must be supplied iff exog_dim > 0");
    }
    if (exog && (exog->rows() < T || exog->cols() != spec.exog_dim)) {
        throw std::invalid_argument("simulate: exogenous input has the wrong shape");
    }
    const Eigen::MatrixXd& L = params.sigma_factor;
    for (Index i = 0; i < spec.m; ++i) {
        if (!(L(i, i) >= 0.0)) throw std::invalid_argument("simulate: Sigma factor has a negative diagonal");
    }

    const Index pre = std::max<Index>(spec.p, spec.q);
    // Rows [0, pre) hold the presample, rows [pre, pre + T) the generated path.
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(pre + T, spec.m);
    Eigen::MatrixXd eps = Eigen::MatrixXd::Zero(pre + T, spec.m);
    const auto load_presample = [pre](Eigen::MatrixXd& dst, const std::optional<Eigen::MatrixXd>& src) {
        if (!src) return;
        if (src->cols() != dst.cols()) throw std::invalid_argument("simulate: presample has the wrong width");
        const Index n = std::min<Index>(pre, src->rows());
        dst.middleRows(pre - n, n) = src->bottomRows(n);
    };
    load_presample(y, options.initial_y);
    load_presample(eps, options.initial_eps);

    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd z(spec.m);
    for (Index t = 0; t < T; ++t) {
        const Index r = pre + t;
        for (Index i = 0; i < spec.m; ++i) z(i) = normal(rng);
        eps.row(r) = (L.triangularView<Eigen::Lower>() * z).transpose();
        Eigen::RowVectorXd v = eps.row(r);
        if (spec.intercept) v += params.intercept.transpose();
        for (int i = 1; i <= spec.p; ++i) v += y.row(r - i) * params.phi[static_cast<std::size_t>(i - 1)].transpose();
        for (int j = 1; j <= spec.q; ++j) {
            v += eps.row(r - j) * params.theta[static_cast<std::size_t>(j - 1)].transpose();
        }
        if (exog) {
            for (int k = 0; k <= spec.s; ++k) {
                if (t - k < 0) continue;
                v += exog->row(t - k) * params.gamma[static_cast<std::size_t>(k)].transpose();
            }
        }
        y.row(r) = v;
    }

    std::vector<std::string> names;
    for (int i = 0; i < spec.m; ++i) names.push_back("y" + std::to_string(i + 1));
    return series::Panel(series::daily_dates(options.start, T), std::move(names), y.bottomRows(T));
}

}  // namespace dvarma::varma
