#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <vector>

namespace dvarma::neural {

using Index = Eigen::Index;

enum class Activation { Tanh, Relu };
enum class EarlySelection { Final, BestVal };

/// Hyperparameters of a single-layer LSTM with a linear output head.
struct LstmConfig {
    int input_dim = 1;
    int hidden_dim = 8;
    int output_dim = 1;
    int window = 3;
    double learning_rate = 0.01;
    int epochs = 200;
    std::uint64_t seed = 0;
    /// Candidate-cell activation.
    Activation activation = Activation::Tanh;
    EarlySelection selection = EarlySelection::BestVal;

    void validate() const;
};

/// Gate order used for the W, U and b arrays.
enum Gate : std::size_t { kForget = 0, kInput = 1, kOutput = 2, kCandidate = 3 };

/**
 * @brief Weights of the cell and the output head.
 *
 *   f = sigmoid(W_f x + U_f h + b_f)    i = sigmoid(W_i x + U_i h + b_i)
 *   o = sigmoid(W_o x + U_o h + b_o)    g = act(W_c x + U_c h + b_c)
 *   C' = f * C + i * g                  h' = o * tanh(C')
 *   prediction = W_y h_last + b_y
 */
struct LstmWeights {
    std::array<Eigen::MatrixXd, 4> W;  ///< hidden x input
    std::array<Eigen::MatrixXd, 4> U;  ///< hidden x hidden
    std::array<Eigen::VectorXd, 4> b;  ///< hidden
    Eigen::MatrixXd Wy;                ///< output x hidden
    Eigen::VectorXd by;                ///< output

    static LstmWeights zeros(int input_dim, int hidden_dim, int output_dim);

    [[nodiscard]] int input_dim() const noexcept { return static_cast<int>(W[0].cols()); }
    [[nodiscard]] int hidden_dim() const noexcept { return static_cast<int>(W[0].rows()); }
    [[nodiscard]] int output_dim() const noexcept { return static_cast<int>(Wy.rows()); }

    /// Number of scalar parameters; the flat layout is W[0..3], U[0..3],
    /// b[0..3], Wy, by, each column-major.
    [[nodiscard]] Index size() const noexcept;
    [[nodiscard]] Eigen::VectorXd flatten() const;
    /// Overwrite from a flat vector produced by flatten() on equal shapes.
    void assign(const Eigen::VectorXd& flat);
    /// Throws std::invalid_argument when `other` has different shapes.
    void check_same_shape(const LstmWeights& other) const;
};

struct LstmState {
    Eigen::VectorXd h;
    Eigen::VectorXd C;

    static LstmState zeros(int hidden_dim);
};

/// Gate activations of one cell step.
struct GateRecord {
    Eigen::VectorXd f, i, o, g;
};

/// Uniform in [-1/sqrt(hidden), 1/sqrt(hidden)], forget bias 1.0.
LstmWeights init_weights(const LstmConfig& config, std::uint64_t seed);

std::pair<LstmState, GateRecord> cell_forward(const Eigen::VectorXd& x, const LstmState& state,
                                              const LstmWeights& weights, Activation act = Activation::Tanh);

/**
 * Batched trajectory: one column per sample. h[0], C[0] are the zero initial
 * state; entries 1..window follow each step.
 */
struct Trajectory {
    std::vector<Eigen::MatrixXd> h, C, f, i, o, g, tanh_C;
    Eigen::MatrixXd prediction;  ///< output x batch
};

/// `steps[t]` is input x batch for t = 0..window-1 (oldest first).
Trajectory forward_batch(const std::vector<Eigen::MatrixXd>& steps, const LstmWeights& weights,
                         Activation act = Activation::Tanh);

/// Single window given as window x input (rows oldest first). Throws when the
/// row count differs from `window`.
std::pair<Eigen::VectorXd, Trajectory> forward(const Eigen::MatrixXd& window_rows, const LstmWeights& weights,
                                               int window, Activation act = Activation::Tanh);

struct LossAndGradient {
    double loss = 0.0;
    LstmWeights grad;
};

/// Mean squared error over batch and output dimensions and its exact gradient
/// by backpropagation through time. `targets` is output x batch.
LossAndGradient bptt_gradients(const std::vector<Eigen::MatrixXd>& steps, const Eigen::MatrixXd& targets,
                               const LstmWeights& weights, Activation act = Activation::Tanh);

/// Loss only (forward pass).
double batch_loss(const std::vector<Eigen::MatrixXd>& steps, const Eigen::MatrixXd& targets,
                  const LstmWeights& weights, Activation act = Activation::Tanh);

}  // namespace dvarma::neural
