#include "dvarma/neural/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace dvarma::neural {

AdamState AdamState::for_weights(const LstmWeights& weights) {
    AdamState s;
    s.m = Eigen::VectorXd::Zero(weights.size());
    s.v = Eigen::VectorXd::Zero(weights.size());
    return s;
}

void adam_update(LstmWeights& weights, const LstmWeights& gradients, AdamState& state, double learning_rate) {
    weights.check_same_shape(gradients);
    if (state.m.size() != weights.size() || state.v.size() != weights.size()) {
        throw std::invalid_argument("adam_update: optimizer state does not match the weights");
    }
    const Eigen::VectorXd g = gradients.flatten();
    state.step += 1;
    state.m = state.beta1 * state.m + (1.0 - state.beta1) * g;
    state.v = state.beta2 * state.v + (1.0 - state.beta2) * g.cwiseAbs2();
    const double c1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
    const double c2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
    const Eigen::ArrayXd m_hat = state.m.array() / c1;
    const Eigen::ArrayXd v_hat = state.v.array() / c2;
    Eigen::VectorXd w = weights.flatten();
    w.array() -= learning_rate * m_hat / (v_hat.sqrt() + state.epsilon);
    weights.assign(w);
}

}  // namespace dvarma::neural
