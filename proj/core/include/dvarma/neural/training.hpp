#pragma once

#include "dvarma/neural/adam.hpp"
#include "dvarma/series/panel.hpp"
#include "dvarma/series/transforms.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dvarma::neural {

/// Supervised windows in time-major batch layout.
struct Dataset {
    std::vector<Eigen::MatrixXd> steps;  ///< window entries, each input x N
    Eigen::MatrixXd targets;             ///< output x N

    [[nodiscard]] Index size() const noexcept { return targets.cols(); }
    [[nodiscard]] bool empty() const noexcept { return targets.cols() == 0; }
};

/**
 * Pairs (rows t-window..t-1 of all columns -> row t of the target columns) for
 * t = window..T-1, so the dataset has T - window samples.
 */
Dataset windowize(const Eigen::MatrixXd& values, int window, const std::vector<Index>& target_columns);
Dataset windowize(const series::Panel& panel, int window, const std::vector<std::string>& target_columns);
/// All columns are targets.
Dataset windowize(const Eigen::MatrixXd& values, int window);

struct TrainedLstm {
    LstmWeights weights;
    LstmConfig config;
    std::optional<series::ScalerParams> scaler;
    /// Per epoch, measured at the weights entering that epoch.
    std::vector<double> train_loss;
    std::vector<double> val_loss;
    /// Epoch whose entering weights were returned (best-val), or `epochs` for final.
    int selected_epoch = 0;
};

/// Full-batch Adam training; `val` may be empty.
TrainedLstm train(const Dataset& train_set, const Dataset& val_set, const LstmConfig& config);

/// Predictions (output x N) for every sample of `data`.
Eigen::MatrixXd predict(const TrainedLstm& model, const Dataset& data);

/**
 * Iterated one-step predictions: each output is appended to the window (oldest
 * row dropped). `seed_window` is window x input (oldest first); requires
 * input_dim == output_dim. Returns h x output.
 */
Eigen::MatrixXd predict_recursive(const TrainedLstm& model, const Eigen::MatrixXd& seed_window, int h);

struct EmbeddingSequence {
    Eigen::MatrixXd H;  ///< (T - window + 1) x hidden
    /// Row r of H summarizes input rows r..r+offset.
    int offset = 0;
};

/// Final hidden state over each trailing window of `values` (T x input).
EmbeddingSequence encode(const TrainedLstm& encoder, const Eigen::MatrixXd& values);

struct GridResult {
    std::size_t best_index = 0;
    TrainedLstm model;
    std::vector<double> val_mse;  ///< per grid entry, validation MSE of the returned weights
};

/// Default grid around `base`: hidden {4, 8, 16} x rate {0.01, 0.001} x epochs {200, 500}.
std::vector<LstmConfig> default_grid(const LstmConfig& base);

/// Trains every entry (optionally on `jobs` threads) and keeps the minimum
/// validation MSE; ties go to the earlier entry. With an empty validation set
/// the training loss is used.
GridResult grid_search(const std::vector<LstmConfig>& grid, const Dataset& train_set, const Dataset& val_set,
                       int jobs = 1);

}  // namespace dvarma::neural
