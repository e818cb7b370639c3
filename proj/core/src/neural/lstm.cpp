#include "dvarma/neural/lstm.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace dvarma::neural {

void LstmConfig::validate() const {
    if (input_dim < 1 || hidden_dim < 1 || output_dim < 1) throw std::invalid_argument("LstmConfig: dims must be >= 1");
    if (window < 1) throw std::invalid_argument("LstmConfig: window must be >= 1");
    if (!(learning_rate > 0.0)) throw std::invalid_argument("LstmConfig: learning rate must be positive");
    if (epochs < 0) throw std::invalid_argument("LstmConfig: negative epoch count");
}

LstmWeights LstmWeights::zeros(int input_dim, int hidden_dim, int output_dim) {
    LstmWeights w;
    for (std::size_t g = 0; g < 4; ++g) {
        w.W[g] = Eigen::MatrixXd::Zero(hidden_dim, input_dim);
        w.U[g] = Eigen::MatrixXd::Zero(hidden_dim, hidden_dim);
        w.b[g] = Eigen::VectorXd::Zero(hidden_dim);
    }
    w.Wy = Eigen::MatrixXd::Zero(output_dim, hidden_dim);
    w.by = Eigen::VectorXd::Zero(output_dim);
    return w;
}

Index LstmWeights::size() const noexcept {
    Index n = Wy.size() + by.size();
    for (std::size_t g = 0; g < 4; ++g) n += W[g].size() + U[g].size() + b[g].size();
    return n;
}

Eigen::VectorXd LstmWeights::flatten() const {
    Eigen::VectorXd v(size());
    Index c = 0;
    const auto put = [&](const auto& M) {
        v.segment(c, M.size()) = Eigen::Map<const Eigen::VectorXd>(M.data(), M.size());
        c += M.size();
    };
    for (const auto& M : W) put(M);
    for (const auto& M : U) put(M);
    for (const auto& M : b) put(M);
    put(Wy);
    put(by);
    return v;
}

void LstmWeights::assign(const Eigen::VectorXd& flat) {
    if (flat.size() != size()) throw std::invalid_argument("LstmWeights::assign: size mismatch");
    Index c = 0;
    const auto take = [&](auto& M) {
        Eigen::Map<Eigen::VectorXd>(M.data(), M.size()) = flat.segment(c, M.size());
        c += M.size();
    };
    for (auto& M : W) take(M);
    for (auto& M : U) take(M);
    for (auto& M : b) take(M);
    take(Wy);
    take(by);
}

void LstmWeights::check_same_shape(const LstmWeights& other) const {
    bool same = Wy.rows() == other.Wy.rows() && Wy.cols() == other.Wy.cols() && by.size() == other.by.size();
    for (std::size_t g = 0; g < 4 && same; ++g) {
        same = W[g].rows() == other.W[g].rows() && W[g].cols() == other.W[g].cols() &&
               U[g].rows() == other.U[g].rows() && U[g].cols() == other.U[g].cols() &&
               b[g].size() == other.b[g].size();
    }
    if (!same) throw std::invalid_argument("LstmWeights: shape mismatch");
}

LstmState LstmState::zeros(int hidden_dim) {
    return {Eigen::VectorXd::Zero(hidden_dim), Eigen::VectorXd::Zero(hidden_dim)};
}

LstmWeights init_weights(const LstmConfig& config, std::uint64_t seed) {
    config.validate();
    LstmWeights w = LstmWeights::zeros(config.input_dim, config.hidden_dim, config.output_dim);
    const double r = 1.0 / std::sqrt(static_cast<double>(config.hidden_dim));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-r, r);
    const auto fill = [&](auto& M) {
        for (Index k = 0; k < M.size(); ++k) M.data()[k] = uni(rng);
    };
    for (std::size_t g = 0; g < 4; ++g) {
        fill(w.W[g]);
        fill(w.U[g]);
        fill(w.b[g]);
    }
    fill(w.Wy);
    fill(w.by);
    w.b[kForget].setOnes();
    return w;
}

namespace {

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

Eigen::MatrixXd sigmoid(const Eigen::MatrixXd& Z) {
    return Z.unaryExpr([](double z) { return sigmoid(z); });
}

Eigen::MatrixXd activate(const Eigen::MatrixXd& Z, Activation act) {
    if (act == Activation::Tanh) return Z.array().tanh().matrix();
    return Z.cwiseMax(0.0);
}

struct Stacked {
    Eigen::MatrixXd W;  // 4h x input
    Eigen::MatrixXd U;  // 4h x h
    Eigen::VectorXd b;  // 4h
};

Stacked stack(const LstmWeights& w) {
    const Index H = w.hidden_dim();
    Stacked s{Eigen::MatrixXd(4 * H, w.input_dim()), Eigen::MatrixXd(4 * H, H), Eigen::VectorXd(4 * H)};
    for (std::size_t g = 0; g < 4; ++g) {
        const Index r = static_cast<Index>(g) * H;
        s.W.middleRows(r, H) = w.W[g];
        s.U.middleRows(r, H) = w.U[g];
        s.b.segment(r, H) = w.b[g];
    }
    return s;
}

}  // namespace

std::pair<LstmState, GateRecord> cell_forward(const Eigen::VectorXd& x, const LstmState& state,
                                              const LstmWeights& weights, Activation act) {
    if (x.size() != weights.input_dim() || state.h.size() != weights.hidden_dim() ||
        state.C.size() != weights.hidden_dim()) {
        throw std::invalid_argument("cell_forward: dimension mismatch");
    }
    const auto pre = [&](Gate g) -> Eigen::VectorXd {
        return weights.W[g] * x + weights.U[g] * state.h + weights.b[g];
    };
    GateRecord rec;
    rec.f = sigmoid(pre(kForget));
    rec.i = sigmoid(pre(kInput));
    rec.o = sigmoid(pre(kOutput));
    rec.g = activate(pre(kCandidate), act);
    LstmState next;
    next.C = rec.f.cwiseProduct(state.C) + rec.i.cwiseProduct(rec.g);
    next.h = rec.o.cwiseProduct(next.C.array().tanh().matrix());
    return {std::move(next), std::move(rec)};
}

Trajectory forward_batch(const std::vector<Eigen::MatrixXd>& steps, const LstmWeights& weights, Activation act) {
    if (steps.empty()) throw std::invalid_argument("forward: empty window");
    const Index H = weights.hidden_dim();
    const Index B = steps.front().cols();
    const Stacked s = stack(weights);
    Trajectory tr;
    const std::size_t n = steps.size();
    tr.h.assign(n + 1, Eigen::MatrixXd::Zero(H, B));
    tr.C.assign(n + 1, Eigen::MatrixXd::Zero(H, B));
    tr.f.resize(n);
    tr.i.resize(n);
    tr.o.resize(n);
    tr.g.resize(n);
    tr.tanh_C.resize(n);
    Eigen::MatrixXd Z(4 * H, B);
    for (std::size_t t = 0; t < n; ++t) {
        if (steps[t].rows() != weights.input_dim() || steps[t].cols() != B) {
            throw std::invalid_argument("forward: input dimension mismatch");
        }
        Z.noalias() = s.W * steps[t];
        Z.noalias() += s.U * tr.h[t];
        Z.colwise() += s.b;
        tr.f[t] = sigmoid(Z.middleRows(0, H));
        tr.i[t] = sigmoid(Z.middleRows(H, H));
        tr.o[t] = sigmoid(Z.middleRows(2 * H, H));
        tr.g[t] = activate(Z.middleRows(3 * H, H), act);
        tr.C[t + 1] = tr.f[t].cwiseProduct(tr.C[t]) + tr.i[t].cwiseProduct(tr.g[t]);
        tr.tanh_C[t] = tr.C[t + 1].array().tanh().matrix();
        tr.h[t + 1] = tr.o[t].cwiseProduct(tr.tanh_C[t]);
    }
    tr.prediction = weights.Wy * tr.h[n];
    tr.prediction.colwise() += weights.by;
    return tr;
}

std::pair<Eigen::VectorXd, Trajectory> forward(const Eigen::MatrixXd& window_rows, const LstmWeights& weights,
                                               int window, Activation act) {
    if (window_rows.rows() != window) throw std::invalid_argument("forward: window length differs from config");
    std::vector<Eigen::MatrixXd> steps;
    for (Index t = 0; t < window_rows.rows(); ++t) steps.push_back(window_rows.row(t).transpose());
    Trajectory tr = forward_batch(steps, weights, act);
    Eigen::VectorXd y = tr.prediction.col(0);
    return {std::move(y), std::move(tr)};
}

double batch_loss(const std::vector<Eigen::MatrixXd>& steps, const Eigen::MatrixXd& targets,
                  const LstmWeights& weights, Activation act) {
    if (targets.cols() == 0) throw std::invalid_argument("batch_loss: empty batch");
    const Trajectory tr = forward_batch(steps, weights, act);
    return (tr.prediction - targets).squaredNorm() / static_cast<double>(targets.size());
}

LossAndGradient bptt_gradients(const std::vector<Eigen::MatrixXd>& steps, const Eigen::MatrixXd& targets,
                               const LstmWeights& weights, Activation act) {
    if (targets.cols() == 0) throw std::invalid_argument("bptt_gradients: empty batch");
    if (targets.rows() != weights.output_dim()) throw std::invalid_argument("bptt_gradients: target dimension");
    const Trajectory tr = forward_batch(steps, weights, act);
    const Index H = weights.hidden_dim();
    const std::size_t n = steps.size();

    LossAndGradient out;
    const Eigen::MatrixXd diff = tr.prediction - targets;
    out.loss = diff.squaredNorm() / static_cast<double>(targets.size());
    const Eigen::MatrixXd dY = diff * (2.0 / static_cast<double>(targets.size()));

    out.grad = LstmWeights::zeros(weights.input_dim(), weights.hidden_dim(), weights.output_dim());
    out.grad.Wy.noalias() = dY * tr.h[n].transpose();
    out.grad.by = dY.rowwise().sum();

    const Stacked s = stack(weights);
    Eigen::MatrixXd gW = Eigen::MatrixXd::Zero(4 * H, weights.input_dim());
    Eigen::MatrixXd gU = Eigen::MatrixXd::Zero(4 * H, H);
    Eigen::VectorXd gb = Eigen::VectorXd::Zero(4 * H);

    Eigen::MatrixXd dH = weights.Wy.transpose() * dY;
    Eigen::MatrixXd dC = Eigen::MatrixXd::Zero(H, dY.cols());
    Eigen::MatrixXd A(4 * H, dY.cols());
    for (std::size_t k = n; k-- > 0;) {
        const auto& f = tr.f[k];
        const auto& i = tr.i[k];
        const auto& o = tr.o[k];
        const auto& g = tr.g[k];
        const auto& tc = tr.tanh_C[k];
        dC.array() += dH.array() * o.array() * (1.0 - tc.array().square());
        A.middleRows(0, H) = (dC.array() * tr.C[k].array() * f.array() * (1.0 - f.array())).matrix();
        A.middleRows(H, H) = (dC.array() * g.array() * i.array() * (1.0 - i.array())).matrix();
        A.middleRows(2 * H, H) = (dH.array() * tc.array() * o.array() * (1.0 - o.array())).matrix();
        if (act == Activation::Tanh) {
            A.middleRows(3 * H, H) = (dC.array() * i.array() * (1.0 - g.array().square())).matrix();
        } else {
            A.middleRows(3 * H, H) = (dC.array() * i.array() * (g.array() > 0.0).cast<double>()).matrix();
        }
        gW.noalias() += A * steps[k].transpose();
        gU.noalias() += A * tr.h[k].transpose();
        gb += A.rowwise().sum();
        dH.noalias() = s.U.transpose() * A;
        dC = dC.cwiseProduct(f);
    }
    for (std::size_t gi = 0; gi < 4; ++gi) {
        const Index r = static_cast<Index>(gi) * H;
        out.grad.W[gi] = gW.middleRows(r, H);
        out.grad.U[gi] = gU.middleRows(r, H);
        out.grad.b[gi] = gb.segment(r, H);
    }
    return out;
}

}  // namespace dvarma::neural
