#pragma once

#include "dvarma/neural/training.hpp"
#include "dvarma/varma/forecast.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dvarma::hybrid {

using Index = Eigen::Index;

/// Every model the toolkit fits. The baselines are degenerate pipelines:
/// Varma/Varmax have no neural stage, Lstm has no statistical stage.
enum class ModelKind { Varma, Varmax, Lstm, DeepVarmaRe, DeepVarmaEn, DeepVarma };

std::string_view to_string(ModelKind kind) noexcept;
/// Accepts "varma", "varmax", "lstm", "deepvarma-re", "deepvarma-en", "deepvarma".
ModelKind parse_model_kind(std::string_view name);

[[nodiscard]] bool uses_predictor(ModelKind kind) noexcept;
[[nodiscard]] bool uses_encoder(ModelKind kind) noexcept;
[[nodiscard]] bool uses_exog(ModelKind kind) noexcept;
[[nodiscard]] bool uses_statistical(ModelKind kind) noexcept;

enum class ExogForecastPolicy { HoldLast, EncoderRollout, Require };

std::string_view to_string(ExogForecastPolicy policy) noexcept;
ExogForecastPolicy parse_exog_policy(std::string_view name);

struct HybridConfig {
    /// Trend predictor; input/output dims are set from the data at fit time.
    neural::LstmConfig predictor;
    /// Exogenous encoder; its hidden_dim is the embedding dimension.
    neural::LstmConfig encoder{.hidden_dim = 4};
    /// Replace the single predictor/encoder config by a grid search over these.
    std::vector<neural::LstmConfig> predictor_grid;
    std::vector<neural::LstmConfig> encoder_grid;
    /// Pretrained components used as-is instead of training.
    std::optional<neural::TrainedLstm> fixed_predictor;
    std::optional<neural::TrainedLstm> fixed_encoder;

    varma::OrderRanges orders;
    /// Intercept for statistical models of the raw endogenous levels
    /// (Varma, Varmax, DeepVarmaEn without differencing). Residual and
    /// differenced models never carry one.
    bool level_intercept = true;
    varma::MleOptions mle;

    ExogForecastPolicy policy = ExogForecastPolicy::HoldLast;
    /// Fit the whole pipeline on first differences and integrate forecasts.
    bool differencing = false;
    /// Tail share of the fitting range used as the LSTM validation set.
    double val_fraction = 0.25;
    int jobs = 1;
};

/// Decomposed forecast; y_hat = mu + e_hat elementwise.
struct HybridForecast {
    Eigen::MatrixXd mu;
    Eigen::MatrixXd e_hat;
    Eigen::MatrixXd y_hat;
};

struct HybridModel {
    ModelKind kind = ModelKind::DeepVarma;
    HybridConfig config;
    std::vector<std::string> endog_names;
    std::vector<std::string> exog_names;

    std::optional<neural::TrainedLstm> predictor;  ///< scaler holds endogenous (working-unit) ranges
    std::optional<neural::TrainedLstm> encoder;    ///< scaler holds exogenous ranges
    std::optional<varma::FittedVarma> statistical;
    /// Encoder hidden units kept as VARMAX regressors (non-constant ones).
    std::vector<Index> kept_dims;
    /// First working-unit time index of the statistical sample.
    int stat_start = 0;

    /// In-sample series on the statistical sample range (working units:
    /// differences when config.differencing). Empty where not applicable.
    series::Panel mu;
    series::Panel residual_target;
    series::Panel embedding;

    std::vector<std::string> warnings;

    /**
     * Forecast h steps after the last row of `endog_history` (levels, T x m).
     * `exog_history` must be row-aligned when the model uses exogenous input.
     * `exog_future` (at least h rows) is used when given; otherwise the policy
     * decides.
     */
    [[nodiscard]] HybridForecast forecast_from(const Eigen::MatrixXd& endog_history,
                                               const Eigen::MatrixXd* exog_history, int h,
                                               const Eigen::MatrixXd* exog_future = nullptr) const;

    /// In-sample decomposition over the statistical residual rows:
    /// mu, e_hat = e - eps, y_hat = mu + e_hat (working units).
    [[nodiscard]] HybridForecast fitted() const;
};

/// Fit on the full given range; `exog` required for kinds using it and must
/// share the timestamps of `endog`.
HybridModel fit(ModelKind kind, const series::Panel& endog, const series::Panel* exog, const HybridConfig& config);

HybridModel fit_deepvarma_re(const series::Panel& endog, const HybridConfig& config);
HybridModel fit_deepvarma_en(const series::Panel& endog, const series::Panel& exog, const HybridConfig& config);
HybridModel fit_deepvarma(const series::Panel& endog, const series::Panel& exog, const HybridConfig& config);

/// Forecast after the fitting sample stored with the model.
HybridForecast forecast_hybrid(const HybridModel& model, const series::Panel& endog, const series::Panel* exog, int h,
                               const Eigen::MatrixXd* exog_future = nullptr);

}  // namespace dvarma::hybrid
