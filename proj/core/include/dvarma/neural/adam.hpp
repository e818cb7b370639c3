#pragma once

#include "dvarma/neural/lstm.hpp"

namespace dvarma::neural {

/// Bias-corrected Adam moments over the flat parameter layout of LstmWeights.
struct AdamState {
    Eigen::VectorXd m;
    Eigen::VectorXd v;
    long step = 0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    static AdamState for_weights(const LstmWeights& weights);
};

/// One update in place; throws std::invalid_argument on shape mismatch.
void adam_update(LstmWeights& weights, const LstmWeights& gradients, AdamState& state, double learning_rate);

}  // namespace dvarma::neural
