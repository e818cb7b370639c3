#pragma once

#include "dvarma/series/panel.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dvarma::eval {

/**
 * Synthetic benchmark: three endogenous series, each a linear trend plus a
 * seasonal wave plus a stable VAR(1) disturbance u_t, and three persistent
 * AR(1) exogenous drivers x_t that enter u_t with one lag:
 *
 *   u_t = A u_{t-1} + G x_{t-1} + e_t
 */
struct BenchmarkOptions {
    Eigen::Index T = 750;
    std::uint64_t seed = 7;
    double trend = 0.004;       ///< slope per step (scaled per series)
    double seasonal = 2.0;      ///< amplitude
    double period = 60.0;       ///< steps per cycle
    double exog_ar = 0.9;
    double exog_effect = 0.8;   ///< scale of G
    double noise = 0.3;         ///< innovation standard deviation of u
};

inline const std::vector<std::string> kBenchmarkEndog{"fiber", "plastic", "rubber"};
inline const std::vector<std::string> kBenchmarkExog{"energy", "fx", "traffic"};

/// Columns kBenchmarkEndog then kBenchmarkExog; daily dates from 2021-04-02.
series::Panel make_benchmark(const BenchmarkOptions& options = {});

}  // namespace dvarma::eval
