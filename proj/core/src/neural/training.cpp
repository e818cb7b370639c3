#include "dvarma/neural/training.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>

namespace dvarma::neural {

Dataset windowize(const Eigen::MatrixXd& values, int window, const std::vector<Index>& target_columns) {
    if (window < 1) throw std::invalid_argument("windowize: window must be >= 1");
    const Index T = values.rows();
    if (T <= window) throw std::invalid_argument("windowize: series length must exceed the window");
    if (values.hasNaN()) throw std::invalid_argument("windowize: missing values in input");
    const Index N = T - window;
    Dataset d;
    d.steps.reserve(static_cast<std::size_t>(window));
    for (int k = 0; k < window; ++k) d.steps.push_back(values.middleRows(k, N).transpose());
    d.targets.resize(static_cast<Index>(target_columns.size()), N);
    for (std::size_t j = 0; j < target_columns.size(); ++j) {
        const Index c = target_columns[j];
        if (c < 0 || c >= values.cols()) throw std::invalid_argument("windowize: target column out of range");
        d.targets.row(static_cast<Index>(j)) = values.col(c).segment(window, N).transpose();
    }
    return d;
}

Dataset windowize(const Eigen::MatrixXd& values, int window) {
    std::vector<Index> all(static_cast<std::size_t>(values.cols()));
    for (Index j = 0; j < values.cols(); ++j) all[static_cast<std::size_t>(j)] = j;
    return windowize(values, window, all);
}

Dataset windowize(const series::Panel& panel, int window, const std::vector<std::string>& target_columns) {
    panel.require_complete("windowize");
    std::vector<Index> idx;
    for (const auto& name : target_columns) idx.push_back(panel.column_index(name));
    return windowize(panel.values(), window, idx);
}

TrainedLstm train(const Dataset& train_set, const Dataset& val_set, const LstmConfig& config) {
    config.validate();
    if (train_set.empty()) throw std::invalid_argument("train: empty training set");
    if (static_cast<int>(train_set.steps.size()) != config.window) {
        throw std::invalid_argument("train: dataset window differs from config");
    }
    TrainedLstm model;
    model.config = config;
    model.weights = init_weights(config, config.seed);
    AdamState adam = AdamState::for_weights(model.weights);
    const bool use_val = config.selection == EarlySelection::BestVal && !val_set.empty();

    LstmWeights best = model.weights;
    double best_val = std::numeric_limits<double>::infinity();
    int best_epoch = 0;
    model.train_loss.reserve(static_cast<std::size_t>(config.epochs));
    for (int e = 0; e < config.epochs; ++e) {
        LossAndGradient lg = bptt_gradients(train_set.steps, train_set.targets, model.weights, config.activation);
        model.train_loss.push_back(lg.loss);
        if (!val_set.empty()) {
            const double vl = batch_loss(val_set.steps, val_set.targets, model.weights, config.activation);
            model.val_loss.push_back(vl);
            if (use_val && vl < best_val) {
                best_val = vl;
                best = model.weights;
                best_epoch = e;
            }
        }
        adam_update(model.weights, lg.grad, adam, config.learning_rate);
    }
    if (use_val) {
        model.weights = std::move(best);
        model.selected_epoch = best_epoch;
    } else {
        model.selected_epoch = config.epochs;
    }
    return model;
}

Eigen::MatrixXd predict(const TrainedLstm& model, const Dataset& data) {
    return forward_batch(data.steps, model.weights, model.config.activation).prediction;
}

Eigen::MatrixXd predict_recursive(const TrainedLstm& model, const Eigen::MatrixXd& seed_window, int h) {
    if (h < 1) throw std::invalid_argument("predict_recursive: horizon must be at least 1");
    const int w = model.config.window;
    if (seed_window.rows() != w || seed_window.cols() != model.weights.input_dim()) {
        throw std::invalid_argument("predict_recursive: seed window has the wrong shape");
    }
    if (model.weights.input_dim() != model.weights.output_dim()) {
        throw std::invalid_argument("predict_recursive: output cannot be fed back as input");
    }
    Eigen::MatrixXd win = seed_window;
    Eigen::MatrixXd out(h, model.weights.output_dim());
    for (int k = 0; k < h; ++k) {
        const Eigen::VectorXd y = forward(win, model.weights, w, model.config.activation).first;
        out.row(k) = y.transpose();
        if (w > 1) win.topRows(w - 1) = win.bottomRows(w - 1).eval();
        win.row(w - 1) = y.transpose();
    }
    return out;
}

EmbeddingSequence encode(const TrainedLstm& encoder, const Eigen::MatrixXd& values) {
    const int w = encoder.config.window;
    const Index T = values.rows();
    if (T < w) throw std::invalid_argument("encode: series shorter than the window");
    if (values.cols() != encoder.weights.input_dim()) throw std::invalid_argument("encode: input dimension mismatch");
    if (values.hasNaN()) throw std::invalid_argument("encode: missing values in input");
    const Index N = T - w + 1;
    std::vector<Eigen::MatrixXd> steps;
    for (int k = 0; k < w; ++k) steps.push_back(values.middleRows(k, N).transpose());
    const Trajectory tr = forward_batch(steps, encoder.weights, encoder.config.activation);
    return {tr.h.back().transpose(), w - 1};
}

std::vector<LstmConfig> default_grid(const LstmConfig& base) {
    std::vector<LstmConfig> grid;
    for (int hidden : {4, 8, 16}) {
        for (double rate : {0.01, 0.001}) {
            for (int epochs : {200, 500}) {
                LstmConfig c = base;
                c.hidden_dim = hidden;
                c.learning_rate = rate;
                c.epochs = epochs;
                grid.push_back(c);
            }
        }
    }
    return grid;
}

GridResult grid_search(const std::vector<LstmConfig>& grid, const Dataset& train_set, const Dataset& val_set,
                       int jobs) {
    if (grid.empty()) throw std::invalid_argument("grid_search: empty grid");
    std::vector<TrainedLstm> models(grid.size());
    std::vector<double> scores(grid.size());
    const auto run = [&](std::size_t k) {
        models[k] = train(train_set, val_set, grid[k]);
        const Dataset& score_set = val_set.empty() ? train_set : val_set;
        const double mse = (predict(models[k], score_set) - score_set.targets).squaredNorm() /
                           static_cast<double>(score_set.targets.size());
        scores[k] = std::isfinite(mse) ? mse : std::numeric_limits<double>::infinity();
    };
    const std::size_t n_jobs = static_cast<std::size_t>(std::max(1, jobs));
    if (n_jobs == 1) {
        for (std::size_t k = 0; k < grid.size(); ++k) run(k);
    } else {
        for (std::size_t base = 0; base < grid.size(); base += n_jobs) {
            std::vector<std::future<void>> pending;
            for (std::size_t k = base; k < std::min(grid.size(), base + n_jobs); ++k) {
                pending.push_back(std::async(std::launch::async, run, k));
            }
            for (auto& f : pending) f.get();
        }
    }
    GridResult out;
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (scores[k] < scores[out.best_index]) out.best_index = k;
    }
    out.model = std::move(models[out.best_index]);
    out.val_mse = std::move(scores);
    return out;
}

}  // namespace dvarma::neural
