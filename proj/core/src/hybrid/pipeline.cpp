#include "dvarma/hybrid/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dvarma::hybrid {

std::string_view to_string(ModelKind kind) noexcept {
    switch (kind) {
        case ModelKind::Varma: return "varma";
        case ModelKind::Varmax: return "varmax";
        case ModelKind::Lstm: return "lstm";
        case ModelKind::DeepVarmaRe: return "deepvarma-re";
        case ModelKind::DeepVarmaEn: return "deepvarma-en";
        case ModelKind::DeepVarma: return "deepvarma";
    }
    return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
    for (ModelKind k : {ModelKind::Varma, ModelKind::Varmax, ModelKind::Lstm, ModelKind::DeepVarmaRe,
                        ModelKind::DeepVarmaEn, ModelKind::DeepVarma}) {
        if (name == to_string(k)) return k;
    }
    throw std::invalid_argument("unknown model: " + std::string(name));
}

bool uses_predictor(ModelKind kind) noexcept {
    return kind == ModelKind::Lstm || kind == ModelKind::DeepVarmaRe || kind == ModelKind::DeepVarma;
}
bool uses_encoder(ModelKind kind) noexcept { return kind == ModelKind::DeepVarmaEn || kind == ModelKind::DeepVarma; }
bool uses_exog(ModelKind kind) noexcept { return kind == ModelKind::Varmax || uses_encoder(kind); }
bool uses_statistical(ModelKind kind) noexcept { return kind != ModelKind::Lstm; }

std::string_view to_string(ExogForecastPolicy policy) noexcept {
    switch (policy) {
        case ExogForecastPolicy::HoldLast: return "hold-last";
        case ExogForecastPolicy::EncoderRollout: return "encoder-rollout";
        case ExogForecastPolicy::Require: return "require";
    }
    return "unknown";
}

ExogForecastPolicy parse_exog_policy(std::string_view name) {
    for (auto p : {ExogForecastPolicy::HoldLast, ExogForecastPolicy::EncoderRollout, ExogForecastPolicy::Require}) {
        if (name == to_string(p)) return p;
    }
    throw std::invalid_argument("unknown exogenous policy: " + std::string(name));
}

namespace {

using series::ScaleDirection;

neural::Dataset subset(const neural::Dataset& d, Index begin, Index count) {
    neural::Dataset out;
    for (const auto& s : d.steps) out.steps.push_back(s.middleCols(begin, count));
    out.targets = d.targets.middleCols(begin, count);
    return out;
}

// Trains (or adopts) a next-step LSTM on `values` (working units); the first
// n_train rows form the scaler range and the training targets.
neural::TrainedLstm train_component(const Eigen::MatrixXd& values, Index n_train, neural::LstmConfig cfg,
                                    const std::vector<neural::LstmConfig>& grid,
                                    const std::optional<neural::TrainedLstm>& fixed, int jobs) {
    const int dim = static_cast<int>(values.cols());
    if (fixed) {
        neural::TrainedLstm model = *fixed;
        if (model.weights.input_dim() != dim || model.weights.output_dim() != dim) {
            throw std::invalid_argument("pretrained LSTM does not match the data width");
        }
        if (!model.scaler) model.scaler = series::fit_scaler(values.topRows(n_train));
        return model;
    }
    const series::ScalerParams scaler = series::fit_scaler(values.topRows(n_train));
    const Eigen::MatrixXd scaled = series::apply_scaler(values, scaler, ScaleDirection::Forward);
    cfg.input_dim = cfg.output_dim = dim;
    cfg.validate();
    const Index n = values.rows();
    if (n_train <= cfg.window) throw std::invalid_argument("training range shorter than the LSTM window");
    const neural::Dataset all = neural::windowize(scaled, cfg.window);
    const Index n_tr = n_train - cfg.window;
    const neural::Dataset tr = subset(all, 0, n_tr);
    const neural::Dataset va = subset(all, n_tr, n - cfg.window - n_tr);
    neural::TrainedLstm model;
    if (grid.empty()) {
        model = neural::train(tr, va, cfg);
    } else {
        std::vector<neural::LstmConfig> g = grid;
        for (auto& c : g) {
            c.input_dim = c.output_dim = dim;
            c.window = cfg.window;
        }
        model = neural::grid_search(g, tr, va, jobs).model;
    }
    model.scaler = scaler;
    return model;
}

const series::ScalerParams& scaler_of(const neural::TrainedLstm& m) {
    if (!m.scaler) throw std::logic_error("LSTM component has no fitted scaler");
    return *m.scaler;
}

// One-step predictions for rows window..n-1 of `values` (working units).
Eigen::MatrixXd in_sample_mu(const neural::TrainedLstm& model, const Eigen::MatrixXd& values) {
    const Eigen::MatrixXd scaled = series::apply_scaler(values, scaler_of(model), ScaleDirection::Forward);
    const neural::Dataset d = neural::windowize(scaled, model.config.window);
    return series::apply_scaler(Eigen::MatrixXd(neural::predict(model, d).transpose()), scaler_of(model),
                                ScaleDirection::Inverse);
}

// Embeddings for rows window-1..n-1, restricted to `kept` hidden units.
Eigen::MatrixXd embed(const neural::TrainedLstm& enc, const Eigen::MatrixXd& exog, const std::vector<Index>& kept) {
    const Eigen::MatrixXd scaled = series::apply_scaler(exog, scaler_of(enc), ScaleDirection::Forward);
    const Eigen::MatrixXd H = neural::encode(enc, scaled).H;
    Eigen::MatrixXd out(H.rows(), static_cast<Index>(kept.size()));
    for (std::size_t j = 0; j < kept.size(); ++j) out.col(static_cast<Index>(j)) = H.col(kept[j]);
    return out;
}

std::vector<std::string> embedding_names(const std::vector<Index>& kept) {
    std::vector<std::string> names;
    for (Index k : kept) names.push_back("h" + std::to_string(k + 1));
    return names;
}

Eigen::MatrixXd cumulative(const Eigen::MatrixXd& steps, const Eigen::RowVectorXd& start) {
    Eigen::MatrixXd out(steps.rows(), steps.cols());
    Eigen::RowVectorXd acc = start;
    for (Index r = 0; r < steps.rows(); ++r) {
        acc += steps.row(r);
        out.row(r) = acc;
    }
    return out;
}

}  // namespace

HybridModel fit(ModelKind kind, const series::Panel& endog, const series::Panel* exog, const HybridConfig& config) {
    endog.require_complete("hybrid fit");
    if (uses_exog(kind)) {
        if (!exog) throw std::invalid_argument(std::string(to_string(kind)) + " requires exogenous input");
        exog->require_complete("hybrid fit");
        if (exog->timestamps() != endog.timestamps()) {
            throw std::invalid_argument("exogenous panel is not aligned with the endogenous panel");
        }
    }
    if (!(config.val_fraction >= 0.0 && config.val_fraction < 1.0)) {
        throw std::invalid_argument("val_fraction must lie in [0, 1)");
    }

    HybridModel model;
    model.kind = kind;
    model.config = config;
    model.config.fixed_predictor.reset();
    model.config.fixed_encoder.reset();
    model.endog_names = endog.columns();
    if (uses_exog(kind)) model.exog_names = exog->columns();

    const Eigen::MatrixXd W = config.differencing ? series::difference_rows(endog.values()) : endog.values();
    const Index offset = config.differencing ? 1 : 0;
    const std::vector<series::Date> tw(endog.timestamps().begin() + offset, endog.timestamps().end());
    Eigen::MatrixXd Xw;
    if (uses_exog(kind)) Xw = exog->values().bottomRows(W.rows());
    const Index n = W.rows();
    const Index n_train = n - static_cast<Index>(std::floor(config.val_fraction * static_cast<double>(n)));

    Eigen::MatrixXd mu_all;  // rows wp..n-1
    int wp = 0;
    if (uses_predictor(kind)) {
        if (n <= config.predictor.window) throw std::invalid_argument("series length must exceed the LSTM window");
        model.predictor = train_component(W, n_train, config.predictor, config.predictor_grid,
                                          config.fixed_predictor, config.jobs);
        wp = model.predictor->config.window;
        mu_all = in_sample_mu(*model.predictor, W);
    }

    Eigen::MatrixXd H_all;  // rows we-1..n-1, all hidden units
    int we = 1;
    if (uses_encoder(kind)) {
        model.encoder = train_component(Xw, n_train, config.encoder, config.encoder_grid, config.fixed_encoder,
                                        config.jobs);
        we = model.encoder->config.window;
        const Eigen::MatrixXd scaled = series::apply_scaler(Xw, scaler_of(*model.encoder), ScaleDirection::Forward);
        H_all = neural::encode(*model.encoder, scaled).H;
    }

    int start = 0;
    switch (kind) {
        case ModelKind::Varma:
        case ModelKind::Varmax: start = 0; break;
        case ModelKind::Lstm:
        case ModelKind::DeepVarmaRe: start = wp; break;
        case ModelKind::DeepVarmaEn: start = we - 1; break;
        case ModelKind::DeepVarma: start = std::max(wp, we - 1); break;
    }

    bool stat_exog = kind == ModelKind::Varmax;
    bool en_fallback = false;
    if (uses_encoder(kind)) {
        const Eigen::MatrixXd Hs = H_all.bottomRows(n - start);
        for (Index k = 0; k < Hs.cols(); ++k) {
            const double mean = Hs.col(k).mean();
            const double var = (Hs.col(k).array() - mean).square().sum() / static_cast<double>(Hs.rows());
            if (var > 1e-12) model.kept_dims.push_back(k);
        }
        stat_exog = !model.kept_dims.empty();
        if (!stat_exog) {
            model.warnings.push_back("all embedding dimensions have zero variance; fitting without exogenous input");
            if (kind == ModelKind::DeepVarmaEn) {
                en_fallback = true;
                start = 0;
            }
        }
    }
    model.stat_start = start;

    const Index ns = n - start;
    const std::vector<series::Date> ts(tw.begin() + start, tw.end());
    Eigen::MatrixXd target = W.bottomRows(ns);
    if (uses_predictor(kind)) {
        const Eigen::MatrixXd mu = mu_all.bottomRows(ns);
        model.mu = series::Panel(ts, endog.columns(), mu);
        target -= mu;
    }
    model.residual_target = series::Panel(ts, endog.columns(), target);

    series::Panel stat_exog_panel;
    if (stat_exog) {
        if (kind == ModelKind::Varmax) {
            stat_exog_panel = series::Panel(ts, exog->columns(), Xw.bottomRows(ns));
        } else {
            Eigen::MatrixXd Hk(ns, static_cast<Index>(model.kept_dims.size()));
            for (std::size_t j = 0; j < model.kept_dims.size(); ++j) {
                Hk.col(static_cast<Index>(j)) = H_all.col(model.kept_dims[j]).bottomRows(ns);
            }
            stat_exog_panel = series::Panel(ts, embedding_names(model.kept_dims), Hk);
        }
    }
    if (uses_encoder(kind) && !en_fallback) model.embedding = stat_exog_panel;

    if (!uses_statistical(kind)) return model;

    const bool residual_kind = kind == ModelKind::DeepVarmaRe || kind == ModelKind::DeepVarma;
    if (residual_kind && (target.array() == 0.0).all()) {
        model.warnings.push_back("residual panel is identically zero; statistical layer skipped");
        return model;
    }
    varma::OrderSearchOptions opts;
    opts.ranges = config.orders;
    opts.intercept = !residual_kind && !config.differencing && config.level_intercept;
    opts.allow_trivial = true;
    opts.jobs = config.jobs;
    opts.mle = config.mle;
    try {
        varma::OrderSelection sel =
            varma::select_order(model.residual_target, opts, stat_exog ? &stat_exog_panel : nullptr);
        for (auto& w : sel.warnings) model.warnings.push_back(std::move(w));
        model.statistical = std::move(sel.best);
    } catch (const std::exception& e) {
        if (!residual_kind) throw;
        model.warnings.push_back(std::string("residual model failed, statistical layer skipped: ") + e.what());
    }
    return model;
}

HybridModel fit_deepvarma_re(const series::Panel& endog, const HybridConfig& config) {
    return fit(ModelKind::DeepVarmaRe, endog, nullptr, config);
}

HybridModel fit_deepvarma_en(const series::Panel& endog, const series::Panel& exog, const HybridConfig& config) {
    return fit(ModelKind::DeepVarmaEn, endog, &exog, config);
}

HybridModel fit_deepvarma(const series::Panel& endog, const series::Panel& exog, const HybridConfig& config) {
    return fit(ModelKind::DeepVarma, endog, &exog, config);
}

HybridForecast HybridModel::forecast_from(const Eigen::MatrixXd& endog_history, const Eigen::MatrixXd* exog_history,
                                          int h, const Eigen::MatrixXd* exog_future) const {
    if (h < 1) throw std::invalid_argument("forecast: horizon must be at least 1");
    const Index m = static_cast<Index>(endog_names.size());
    if (endog_history.cols() != m) throw std::invalid_argument("forecast: endogenous history has the wrong width");
    const bool need_exog = uses_exog(kind);
    if (need_exog) {
        if (!exog_history) throw std::invalid_argument("forecast: exogenous history required");
        if (exog_history->rows() != endog_history.rows() ||
            exog_history->cols() != static_cast<Index>(exog_names.size())) {
            throw std::invalid_argument("forecast: exogenous history has the wrong shape");
        }
    }
    if (exog_future && need_exog &&
        (exog_future->rows() < h || exog_future->cols() != static_cast<Index>(exog_names.size()))) {
        throw std::invalid_argument("forecast: future exogenous input has the wrong shape");
    }
    const Eigen::MatrixXd W =
        config.differencing ? series::difference_rows(endog_history) : endog_history;
    const Index n = W.rows();
    Eigen::MatrixXd Xw;
    if (need_exog) Xw = exog_history->bottomRows(n);

    Eigen::MatrixXd mu_w = Eigen::MatrixXd::Zero(h, m);
    if (predictor) {
        const int wp = predictor->config.window;
        if (n < wp) throw std::invalid_argument("forecast: history shorter than the LSTM window");
        const auto& sc = scaler_of(*predictor);
        const Eigen::MatrixXd seed = series::apply_scaler(W.bottomRows(wp), sc, ScaleDirection::Forward);
        mu_w = series::apply_scaler(neural::predict_recursive(*predictor, seed, h), sc, ScaleDirection::Inverse);
    }

    Eigen::MatrixXd e_w = Eigen::MatrixXd::Zero(h, m);
    if (statistical) {
        const Index start = stat_start;
        if (n <= start) throw std::invalid_argument("forecast: history too short");
        Eigen::MatrixXd target = W.bottomRows(n - start);
        if (predictor) target -= in_sample_mu(*predictor, W).bottomRows(n - start);

        const varma::VarmaSpec& spec = statistical->spec;
        Eigen::MatrixXd xs, xf;
        const Eigen::MatrixXd* xs_ptr = nullptr;
        const Eigen::MatrixXd* xf_ptr = nullptr;
        varma::ExogPolicy vpolicy = varma::ExogPolicy::HoldLast;
        if (spec.has_exog()) {
            if (kind == ModelKind::Varmax) {
                xs = Xw.bottomRows(n - start);
                if (exog_future) {
                    xf = exog_future->topRows(h);
                    xf_ptr = &xf;
                } else if (config.policy == ExogForecastPolicy::Require) {
                    throw std::invalid_argument("forecast: future exogenous values are required");
                }
            } else {
                const int we = encoder->config.window;
                xs = embed(*encoder, Xw, kept_dims).bottomRows(n - start);
                const auto& sc = scaler_of(*encoder);
                Eigen::MatrixXd future_scaled;
                if (exog_future) {
                    future_scaled = series::apply_scaler(exog_future->topRows(h), sc, ScaleDirection::Forward);
                } else if (config.policy == ExogForecastPolicy::EncoderRollout) {
                    const Eigen::MatrixXd seed = series::apply_scaler(Xw.bottomRows(we), sc, ScaleDirection::Forward);
                    future_scaled = neural::predict_recursive(*encoder, seed, h);
                } else if (config.policy == ExogForecastPolicy::Require) {
                    throw std::invalid_argument("forecast: future exogenous values are required");
                }
                if (future_scaled.rows() > 0) {
                    Eigen::MatrixXd joined(we - 1 + h, Xw.cols());
                    joined.topRows(we - 1) =
                        series::apply_scaler(Xw.bottomRows(we - 1), sc, ScaleDirection::Forward);
                    joined.bottomRows(h) = future_scaled;
                    const Eigen::MatrixXd Hf = neural::encode(*encoder, joined).H;
                    xf.resize(h, static_cast<Index>(kept_dims.size()));
                    for (std::size_t j = 0; j < kept_dims.size(); ++j) {
                        xf.col(static_cast<Index>(j)) = Hf.col(kept_dims[j]);
                    }
                    xf_ptr = &xf;
                }
            }
            xs_ptr = &xs;
        }
        e_w = varma::forecast_from(spec, statistical->params, target, xs_ptr, h, vpolicy, xf_ptr);
    }

    HybridForecast out;
    if (!config.differencing) {
        out.mu = mu_w;
        out.e_hat = e_w;
    } else {
        const Eigen::RowVectorXd anchor = endog_history.bottomRows(1);
        if (predictor) {
            out.mu = cumulative(mu_w, anchor);
            out.e_hat = cumulative(e_w, Eigen::RowVectorXd::Zero(m));
        } else {
            out.mu = Eigen::MatrixXd::Zero(h, m);
            out.e_hat = cumulative(e_w, anchor);
        }
    }
    out.y_hat = out.mu + out.e_hat;
    return out;
}

HybridForecast HybridModel::fitted() const {
    HybridForecast out;
    const Index m = static_cast<Index>(endog_names.size());
    if (statistical) {
        const Eigen::MatrixXd& eps = statistical->residuals.values();
        const Index r = eps.rows();
        out.mu = predictor ? Eigen::MatrixXd(mu.values().bottomRows(r)) : Eigen::MatrixXd::Zero(r, m);
        out.e_hat = residual_target.values().bottomRows(r) - eps;
    } else {
        const Index r = residual_target.rows();
        out.mu = predictor ? mu.values() : Eigen::MatrixXd::Zero(r, m);
        out.e_hat = Eigen::MatrixXd::Zero(r, m);
    }
    out.y_hat = out.mu + out.e_hat;
    return out;
}

HybridForecast forecast_hybrid(const HybridModel& model, const series::Panel& endog, const series::Panel* exog, int h,
                               const Eigen::MatrixXd* exog_future) {
    endog.require_complete("forecast");
    if (exog) exog->require_complete("forecast");
    return model.forecast_from(endog.values(), exog ? &exog->values() : nullptr, h, exog_future);
}

}  // namespace dvarma::hybrid
