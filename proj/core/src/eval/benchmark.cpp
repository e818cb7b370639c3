#include "dvarma/eval/benchmark.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace dvarma::eval {

series::Panel make_benchmark(const BenchmarkOptions& options) {
    if (options.T < 10) throw std::invalid_argument("make_benchmark: T too small");
    const Eigen::Index T = options.T;
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    Eigen::Matrix3d A;
    A << 0.5, 0.1, 0.0,
         0.0, 0.4, 0.1,
         0.1, 0.0, 0.3;
    Eigen::Matrix3d G;
    G << 0.6, -0.3, 0.2,
         0.2, 0.5, -0.3,
         -0.2, 0.3, 0.6;
    G *= options.exog_effect;
    const Eigen::Vector3d level{100.0, 80.0, 120.0};
    const Eigen::Vector3d slope{1.0, 0.6, 1.4};
    const Eigen::Vector3d phase{0.0, 1.3, 2.6};
    const Eigen::Vector3d x_level{60.0, 6.5, 100.0};
    const Eigen::Vector3d x_scale{3.0, 0.2, 5.0};

    const Eigen::Index burn = 100;
    Eigen::Vector3d x = Eigen::Vector3d::Zero();
    Eigen::Vector3d u = Eigen::Vector3d::Zero();
    Eigen::MatrixXd out(T, 6);
    const double innov_sd = std::sqrt(1.0 - options.exog_ar * options.exog_ar);
    for (Eigen::Index t = -burn; t < T; ++t) {
        Eigen::Vector3d e;
        Eigen::Vector3d ex;
        for (int k = 0; k < 3; ++k) e(k) = options.noise * normal(rng);
        for (int k = 0; k < 3; ++k) ex(k) = innov_sd * normal(rng);
        u = A * u + G * x + e;  // x still holds x_{t-1}
        x = options.exog_ar * x + ex;
        if (t < 0) continue;
        const double td = static_cast<double>(t);
        for (int k = 0; k < 3; ++k) {
            const double wave = std::sin(2.0 * std::numbers::pi * td / options.period + phase(k));
            out(t, k) = level(k) + options.trend * slope(k) * td + options.seasonal * wave + u(k);
            out(t, 3 + k) = x_level(k) + x_scale(k) * x(k);
        }
    }
    std::vector<std::string> names = kBenchmarkEndog;
    names.insert(names.end(), kBenchmarkExog.begin(), kBenchmarkExog.end());
    return series::Panel(series::daily_dates(series::Date{std::chrono::year{2021}, std::chrono::April,
                                                          std::chrono::day{2}},
                                             T),
                         std::move(names), std::move(out));
}

}  // namespace dvarma::eval
