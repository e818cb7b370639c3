#include "dvarma/eval/benchmark.hpp"
#include "dvarma/hybrid/pipeline.hpp"
#include "dvarma/series/transforms.hpp"

#include <gtest/gtest.h>

using namespace dvarma;
using namespace dvarma::hybrid;

namespace {

struct Data {
    series::Panel endog, exog;
};

Data benchmark(Eigen::Index T = 200, std::uint64_t seed = 3) {
    const series::Panel all = eval::make_benchmark({.T = T, .seed = seed});
    return {all.select(eval::kBenchmarkEndog), all.select(eval::kBenchmarkExog)};
}

HybridConfig quick_config() {
    HybridConfig c;
    c.predictor = {.hidden_dim = 4, .window = 3, .learning_rate = 0.01, .epochs = 40, .seed = 1};
    c.encoder = {.hidden_dim = 3, .window = 3, .learning_rate = 0.01, .epochs = 40, .seed = 2};
    c.orders = {.p_min = 0, .p_max = 1, .q_min = 0, .q_max = 1, .s_min = 0, .s_max = 1};
    return c;
}

series::Panel constant_panel(Eigen::Index T, std::vector<double> levels) {
    Eigen::MatrixXd v(T, static_cast<Eigen::Index>(levels.size()));
    std::vector<std::string> names;
    for (std::size_t j = 0; j < levels.size(); ++j) {
        v.col(static_cast<Eigen::Index>(j)).setConstant(levels[j]);
        names.push_back("c" + std::to_string(j));
    }
    return {series::daily_dates(series::parse_date("2022-01-01"), T), names, v};
}

void expect_identity(const HybridForecast& f) {
    ASSERT_EQ(f.y_hat.rows(), f.mu.rows());
    ASSERT_EQ(f.y_hat.rows(), f.e_hat.rows());
    const Eigen::MatrixXd sum = f.mu + f.e_hat;
    EXPECT_TRUE((f.y_hat.array() == sum.array()).all());
}

}  // namespace

TEST(ModelKind, NamesRoundTrip) {
    for (ModelKind k : {ModelKind::Varma, ModelKind::Varmax, ModelKind::Lstm, ModelKind::DeepVarmaRe,
                        ModelKind::DeepVarmaEn, ModelKind::DeepVarma}) {
        EXPECT_EQ(parse_model_kind(to_string(k)), k);
    }
    EXPECT_THROW(parse_model_kind("arima"), std::invalid_argument);
    EXPECT_EQ(parse_exog_policy("encoder-rollout"), ExogForecastPolicy::EncoderRollout);
    EXPECT_THROW(parse_exog_policy("guess"), std::invalid_argument);
}

TEST(DeepVarmaRe, ResidualIdentityAndAlignment) {
    const Data d = benchmark();
    const HybridModel m = fit_deepvarma_re(d.endog, quick_config());
    ASSERT_TRUE(m.predictor);
    ASSERT_TRUE(m.statistical);
    const Eigen::Index n = m.residual_target.rows();
    EXPECT_EQ(n, d.endog.rows() - 3);
    const Eigen::MatrixXd y = d.endog.values().bottomRows(n);
    EXPECT_TRUE((m.residual_target.values().array() == (y - m.mu.values()).array()).all());
    EXPECT_EQ(m.mu.timestamps(), m.residual_target.timestamps());
    EXPECT_EQ(m.residual_target.timestamps().front(), d.endog.timestamps()[3]);
    EXPECT_FALSE(m.statistical->spec.intercept);
}

TEST(DeepVarma, SeriesShareTimestamps) {
    const Data d = benchmark();
    const HybridModel m = fit_deepvarma(d.endog, d.exog, quick_config());
    ASSERT_FALSE(m.kept_dims.empty());
    EXPECT_EQ(m.mu.timestamps(), m.residual_target.timestamps());
    EXPECT_EQ(m.embedding.timestamps(), m.residual_target.timestamps());
    EXPECT_EQ(m.embedding.cols(), static_cast<Eigen::Index>(m.kept_dims.size()));
}

TEST(DeepVarmaRe, ConstantSeriesIsFitExactly) {
    const series::Panel y = constant_panel(120, {5.0, -2.0});
    const HybridModel m = fit_deepvarma_re(y, quick_config());
    EXPECT_LT(m.residual_target.values().cwiseAbs().maxCoeff(), 1e-6);
    const HybridForecast f = forecast_hybrid(m, y, nullptr, 10);
    expect_identity(f);
    EXPECT_LT(f.e_hat.cwiseAbs().maxCoeff(), 1e-3);
    EXPECT_LT((f.y_hat - f.mu).cwiseAbs().maxCoeff(), 1e-3);
    EXPECT_NEAR(f.y_hat(9, 0), 5.0, 1e-9);
}

TEST(DeepVarma, ZeroResidualFixture) {
    const series::Panel y = constant_panel(120, {1.5});
    const Data d = benchmark(120);
    const series::Panel xa(y.timestamps(), d.exog.columns(), d.exog.values());
    const HybridModel m = fit_deepvarma(y, xa, quick_config());
    const HybridForecast f = forecast_hybrid(m, y, &xa, 5);
    expect_identity(f);
    EXPECT_LT((f.y_hat - f.mu).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(DeepVarmaEn, ZeroEncoderMatchesPlainVarma) {
    const Data d = benchmark();
    HybridConfig c = quick_config();
    neural::TrainedLstm zero;
    zero.weights = neural::LstmWeights::zeros(3, 3, 3);
    zero.config = c.encoder;
    zero.config.input_dim = zero.config.output_dim = 3;
    c.fixed_encoder = zero;
    const HybridModel en = fit_deepvarma_en(d.endog, d.exog, c);
    EXPECT_TRUE(en.kept_dims.empty());
    EXPECT_FALSE(en.warnings.empty());
    const HybridModel plain = fit(ModelKind::Varma, d.endog, nullptr, quick_config());
    ASSERT_TRUE(en.statistical);
    EXPECT_FALSE(en.statistical->spec.has_exog());
    EXPECT_LE((en.fitted().y_hat - plain.fitted().y_hat).cwiseAbs().maxCoeff(), 1e-6);
    const HybridForecast a = forecast_hybrid(en, d.endog, &d.exog, 12);
    const HybridForecast b = forecast_hybrid(plain, d.endog, nullptr, 12);
    EXPECT_LE((a.y_hat - b.y_hat).cwiseAbs().maxCoeff(), 1e-6);
    EXPECT_EQ(a.mu, Eigen::MatrixXd::Zero(12, 3));
}

TEST(DeepVarmaEn, GammaShapeFollowsEmbedding) {
    const Data d = benchmark();
    const HybridModel m = fit_deepvarma_en(d.endog, d.exog, quick_config());
    ASSERT_TRUE(m.statistical);
    const auto& spec = m.statistical->spec;
    ASSERT_TRUE(spec.has_exog());
    EXPECT_EQ(spec.exog_dim, static_cast<int>(m.kept_dims.size()));
    EXPECT_LE(m.kept_dims.size(), 3u);
    for (const auto& g : m.statistical->params.gamma) {
        EXPECT_EQ(g.rows(), 3);
        EXPECT_EQ(g.cols(), spec.exog_dim);
    }
    EXPECT_TRUE(spec.intercept);
}

TEST(DeepVarmaEn, HoldLastRepeatsFinalEmbedding) {
    const Data d = benchmark();
    const HybridModel m = fit_deepvarma_en(d.endog, d.exog, quick_config());
    ASSERT_TRUE(m.statistical && m.statistical->spec.has_exog());
    const int h = 6;
    const Eigen::MatrixXd H = m.embedding.values();
    const Eigen::MatrixXd held = H.bottomRows(1).replicate(h, 1);
    const Eigen::MatrixXd expected = varma::forecast_from(m.statistical->spec, m.statistical->params,
                                                          m.residual_target.values(), &H, h,
                                                          varma::ExogPolicy::Require, &held);
    const HybridForecast f = forecast_hybrid(m, d.endog, &d.exog, h);
    EXPECT_LE((f.y_hat - expected).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_EQ(f.e_hat, f.y_hat);
}

TEST(DeepVarmaEn, RequirePolicyNeedsFutureExog) {
    const Data d = benchmark();
    HybridConfig c = quick_config();
    c.policy = ExogForecastPolicy::Require;
    const HybridModel m = fit_deepvarma_en(d.endog, d.exog, c);
    ASSERT_TRUE(m.statistical && m.statistical->spec.has_exog());
    EXPECT_THROW(forecast_hybrid(m, d.endog, &d.exog, 3), std::invalid_argument);
    const Eigen::MatrixXd future = d.exog.values().bottomRows(3);
    expect_identity(forecast_hybrid(m, d.endog, &d.exog, 3, &future));
}

TEST(DeepVarmaRe, OneStepCombinesComponents) {
    const Data d = benchmark();
    const HybridModel m = fit_deepvarma_re(d.endog, quick_config());
    const HybridForecast f = forecast_hybrid(m, d.endog, nullptr, 1);
    const auto& sc = *m.predictor->scaler;
    const Eigen::MatrixXd seed =
        series::apply_scaler(Eigen::MatrixXd(d.endog.values().bottomRows(3)), sc, series::ScaleDirection::Forward);
    const Eigen::MatrixXd mu = series::apply_scaler(
        Eigen::MatrixXd(neural::forward(seed, m.predictor->weights, 3).first.transpose()), sc,
        series::ScaleDirection::Inverse);
    const Eigen::MatrixXd e = varma::forecast_from(m.statistical->spec, m.statistical->params,
                                                   m.residual_target.values(), nullptr, 1);
    EXPECT_LE((f.mu - mu).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((f.e_hat - e).cwiseAbs().maxCoeff(), 1e-12);
    const HybridForecast g = forecast_hybrid(m, d.endog, nullptr, 8);
    EXPECT_EQ(g.y_hat.row(0), f.y_hat.row(0));
}

TEST(Hybrid, IdentityAcrossKindsAndDifferencing) {
    const Data d = benchmark(150);
    for (bool diff : {false, true}) {
        HybridConfig c = quick_config();
        c.differencing = diff;
        for (ModelKind k : {ModelKind::Varma, ModelKind::Varmax, ModelKind::Lstm, ModelKind::DeepVarmaRe,
                            ModelKind::DeepVarmaEn, ModelKind::DeepVarma}) {
            const series::Panel* x = uses_exog(k) ? &d.exog : nullptr;
            const HybridModel m = fit(k, d.endog, x, c);
            for (int h : {1, 7}) expect_identity(forecast_hybrid(m, d.endog, x, h));
            expect_identity(m.fitted());
        }
    }
}

TEST(Hybrid, DifferencedVarmaIntegratesForecast) {
    const Data d = benchmark(150);
    HybridConfig c = quick_config();
    c.differencing = true;
    const HybridModel m = fit(ModelKind::Varma, d.endog, nullptr, c);
    ASSERT_TRUE(m.statistical);
    EXPECT_FALSE(m.statistical->spec.intercept);
    const Eigen::MatrixXd dy = series::difference_rows(d.endog.values());
    const Eigen::MatrixXd steps = varma::forecast_from(m.statistical->spec, m.statistical->params, dy, nullptr, 5);
    Eigen::RowVectorXd level = d.endog.values().bottomRows(1);
    const HybridForecast f = forecast_hybrid(m, d.endog, nullptr, 5);
    for (Eigen::Index r = 0; r < 5; ++r) {
        level += steps.row(r);
        EXPECT_LE((f.y_hat.row(r) - level).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Hybrid, Deterministic) {
    const Data d = benchmark(150);
    const HybridModel a = fit_deepvarma(d.endog, d.exog, quick_config());
    const HybridModel b = fit_deepvarma(d.endog, d.exog, quick_config());
    EXPECT_EQ(forecast_hybrid(a, d.endog, &d.exog, 10).y_hat, forecast_hybrid(b, d.endog, &d.exog, 10).y_hat);
}

TEST(Hybrid, Preconditions) {
    const Data d = benchmark(150);
    const HybridModel m = fit(ModelKind::Varma, d.endog, nullptr, quick_config());
    EXPECT_THROW(forecast_hybrid(m, d.endog, nullptr, 0), std::invalid_argument);
    EXPECT_THROW(fit_deepvarma_re(constant_panel(3, {1.0}), quick_config()), std::invalid_argument);
    EXPECT_THROW(fit(ModelKind::Varmax, d.endog, nullptr, quick_config()), std::invalid_argument);
    const series::Panel shifted(series::daily_dates(series::parse_date("2030-01-01"), d.exog.rows()),
                                d.exog.columns(), d.exog.values());
    EXPECT_THROW(fit_deepvarma_en(d.endog, shifted, quick_config()), std::invalid_argument);
}
