#include "dvarma/stationarity/adf.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace dvarma;
using stationarity::adf_pvalue;
using stationarity::adf_test;

namespace {

std::vector<double> white_noise(int T, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n;
    std::vector<double> v(static_cast<std::size_t>(T));
    for (auto& x : v) x = n(rng);
    return v;
}

std::vector<double> cumsum(std::vector<double> v) {
    for (std::size_t i = 1; i < v.size(); ++i) v[i] += v[i - 1];
    return v;
}

// Dickey-Fuller t-ratio with constant and no lagged differences, by direct
// 2x2 normal equations.
struct DfFit {
    double c, gamma, t;
};

DfFit df_ols(const std::vector<double>& y) {
    const std::size_t n = y.size() - 1;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t t = 1; t <= n; ++t) {
        const double x = y[t - 1], d = y[t] - y[t - 1];
        sx += x;
        sy += d;
        sxx += x * x;
        sxy += x * d;
    }
    const double nn = static_cast<double>(n);
    const double det = nn * sxx - sx * sx;
    const double gamma = (nn * sxy - sx * sy) / det;
    const double c = (sy - gamma * sx) / nn;
    double rss = 0;
    for (std::size_t t = 1; t <= n; ++t) {
        const double r = y[t] - y[t - 1] - c - gamma * y[t - 1];
        rss += r * r;
    }
    const double s2 = rss / (nn - 2);
    return {c, gamma, gamma / std::sqrt(s2 * nn / det)};
}

// Null distribution of the statistic from 100k random walks of length 500.
const std::vector<double>& null_draws() {
    static const std::vector<double> draws = [] {
        std::vector<double> d;
        d.reserve(100000);
        std::mt19937_64 rng(42);
        std::normal_distribution<double> n;
        std::vector<double> y(500);
        for (int r = 0; r < 100000; ++r) {
            double lvl = 0;
            for (auto& v : y) v = lvl += n(rng);
            d.push_back(df_ols(y).t);
        }
        std::sort(d.begin(), d.end());
        return d;
    }();
    return draws;
}

double empirical_p(double stat) {
    const auto& d = null_draws();
    return static_cast<double>(std::upper_bound(d.begin(), d.end(), stat) - d.begin()) / static_cast<double>(d.size());
}

}  // namespace

TEST(AdfPvalue, MatchesMonteCarloQuantiles) {
    const auto& d = null_draws();
    for (double a : {0.01, 0.025, 0.05, 0.10, 0.25, 0.5, 0.75, 0.9}) {
        const double q = d[static_cast<std::size_t>(a * static_cast<double>(d.size()))];
        EXPECT_NEAR(adf_pvalue(q), a, 0.1 * a + 0.003) << "quantile " << a;
    }
}

TEST(AdfPvalue, MonotoneAndClamped) {
    double prev = 0.0;
    for (double s = -12.0; s <= 6.0; s += 0.01) {
        const double p = adf_pvalue(s);
        ASSERT_GE(p, 0.0001);
        ASSERT_LE(p, 0.9999);
        ASSERT_GE(p, prev);
        prev = p;
    }
    EXPECT_EQ(adf_pvalue(-50.0), 0.0001);
    EXPECT_EQ(adf_pvalue(50.0), 0.9999);
}

TEST(AdfTest, WhiteNoiseRejects) {
    const auto r = adf_test(white_noise(500, 7));
    EXPECT_LT(r.p_value, 0.01);
    EXPECT_LT(empirical_p(r.statistic), 0.01);
}

TEST(AdfTest, RandomWalkDoesNotReject) {
    const auto r = adf_test(cumsum(white_noise(500, 7)));
    EXPECT_GT(r.p_value, 0.10);
    EXPECT_GT(empirical_p(r.statistic), 0.10);
}

TEST(AdfTest, Preconditions) {
    EXPECT_THROW(adf_test(white_noise(10, 1)), std::invalid_argument);
    EXPECT_THROW(adf_test(std::vector<double>(40, 3.0)), std::invalid_argument);
    auto v = white_noise(40, 1);
    v[5] = std::nan("");
    EXPECT_THROW(adf_test(v), std::invalid_argument);
}

TEST(AdfTest, LagZeroMatchesDirectRegression) {
    const auto y = cumsum(white_noise(300, 9));
    const auto r = adf_test(y, 0);
    const DfFit f = df_ols(y);
    EXPECT_EQ(r.lags, 0);
    EXPECT_NEAR(r.statistic, f.t, 1e-9);
    EXPECT_NEAR(r.gamma, f.gamma, 1e-12);
    EXPECT_NEAR(r.intercept, f.c, 1e-10);
    EXPECT_TRUE(r.delta.empty());
}

TEST(AdfTest, LagOrderBoundedAndDeterministic) {
    EXPECT_EQ(stationarity::default_max_lag(100), 12);
    EXPECT_EQ(stationarity::default_max_lag(500), 17);
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto y = white_noise(200, s);
        const auto a = adf_test(y, 4);
        EXPECT_LE(a.lags, 4);
        EXPECT_EQ(static_cast<int>(a.delta.size()), a.lags);
        const auto b = adf_test(y, 4);
        EXPECT_EQ(a.statistic, b.statistic);
        EXPECT_EQ(a.p_value, b.p_value);
    }
}

TEST(AdfTest, SelectsLagsForAutocorrelatedDifferences) {
    // AR(2) in differences needs lagged terms; AIC should find at least one.
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n;
    std::vector<double> d(600, 0.0), y(600, 0.0);
    for (std::size_t t = 2; t < d.size(); ++t) d[t] = 0.6 * d[t - 1] - 0.3 * d[t - 2] + n(rng);
    for (std::size_t t = 1; t < y.size(); ++t) y[t] = y[t - 1] + d[t];
    EXPECT_GE(adf_test(y).lags, 1);
}

TEST(AdfTest, SizeAndPowerSmallSample) {
    int rej_null = 0, rej_alt = 0;
    for (int r = 0; r < 400; ++r) {
        std::mt19937_64 rng(5000 + static_cast<std::uint64_t>(r));
        std::normal_distribution<double> n;
        std::vector<double> w(250), a(250);
        double lw = 0, la = 0;
        for (std::size_t t = 0; t < 250; ++t) {
            const double e = n(rng);
            w[t] = lw += e;
            a[t] = la = 0.5 * la + e;
        }
        rej_null += adf_test(w).p_value < 0.05;
        rej_alt += adf_test(a).p_value < 0.05;
    }
    EXPECT_GE(rej_null, 8);
    EXPECT_LE(rej_null, 36);
    EXPECT_GE(rej_alt, 380);
}

TEST(StationarityReport, OneRowPerColumn) {
    Eigen::MatrixXd v(300, 3);
    for (int j = 0; j < 3; ++j) {
        const auto w = white_noise(300, 100 + static_cast<std::uint64_t>(j));
        for (int t = 0; t < 300; ++t) v(t, j) = w[static_cast<std::size_t>(t)];
    }
    const series::Panel p(series::daily_dates(series::parse_date("2021-01-01"), 300), {"a", "b", "c"}, v);
    const auto rep = stationarity::stationarity_report(p);
    ASSERT_EQ(rep.rows.size(), 3u);
    for (const auto& row : rep.rows) {
        EXPECT_LT(row.original_p, 0.05);
        EXPECT_LT(row.diff_p, 0.05);
    }
    EXPECT_EQ(rep.rows[1].series, "b");
}

TEST(StationarityReport, RandomWalkBecomesStationaryAfterDifferencing) {
    const auto y = cumsum(white_noise(400, 11));
    Eigen::MatrixXd v(400, 1);
    for (int t = 0; t < 400; ++t) v(t, 0) = y[static_cast<std::size_t>(t)];
    const series::Panel p(series::daily_dates(series::parse_date("2021-01-01"), 400), {"walk"}, v);
    const auto rep = stationarity::stationarity_report(p);
    EXPECT_GT(rep.rows[0].original_p, 0.10);
    EXPECT_LT(rep.rows[0].diff_p, 0.01);
}
