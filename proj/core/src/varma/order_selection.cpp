#include "dvarma/varma/estimation.hpp"

#include <algorithm>
#include <future>
#include <stdexcept>

namespace dvarma::varma {

namespace {

struct Candidate {
    VarmaSpec spec;
    CandidateOutcome outcome;
    std::optional<FittedVarma> fit;
};

void run_candidate(Candidate& c, const Eigen::MatrixXd& y, const Eigen::MatrixXd* x, const MleOptions& mle) {
    c.outcome.spec = c.spec;
    try {
        FittedVarma fit = estimate_mle(y, c.spec, x, std::nullopt, mle);
        c.outcome.ok = true;
        c.outcome.aic = fit.aic;
        c.outcome.log_likelihood = fit.log_likelihood;
        c.fit = std::move(fit);
    } catch (const std::exception& e) {
        c.outcome.ok = false;
        c.outcome.message = e.what();
    }
}

}  // namespace

OrderSelection select_order(const series::Panel& y, const OrderSearchOptions& options, const series::Panel* exog) {
    const OrderRanges& r = options.ranges;
    if (r.p_min > r.p_max || r.q_min > r.q_max || r.s_min > r.s_max || r.p_min < 0 || r.q_min < 0 || r.s_min < 0) {
        throw std::invalid_argument("select_order: empty or negative order range");
    }
    y.require_complete("select_order");
    if (exog) {
        exog->require_complete("select_order");
        if (exog->timestamps() != y.timestamps()) {
            throw std::invalid_argument("select_order: exogenous panel is not aligned with the data");
        }
    }

    std::vector<Candidate> cands;
    const int s_lo = exog ? r.s_min : 0;
    const int s_hi = exog ? r.s_max : 0;
    int common_start = 0;
    for (int p = r.p_min; p <= r.p_max; ++p) {
        for (int q = r.q_min; q <= r.q_max; ++q) {
            for (int s = s_lo; s <= s_hi; ++s) {
                VarmaSpec spec;
                spec.m = static_cast<int>(y.cols());
                spec.p = p;
                spec.q = q;
                spec.s = s;
                spec.exog_dim = exog ? static_cast<int>(exog->cols()) : 0;
                spec.intercept = options.intercept;
                spec.allow_trivial = options.allow_trivial;
                if (p + q == 0 && !exog && !options.allow_trivial) continue;
                cands.push_back({spec, {}, std::nullopt});
                common_start = std::max(common_start, spec.presample());
            }
        }
    }
    if (cands.empty()) throw std::invalid_argument("select_order: no admissible candidate orders");

    MleOptions mle = options.mle;
    mle.likelihood_start = std::max(mle.likelihood_start, common_start);
    const Eigen::MatrixXd& Y = y.values();
    const Eigen::MatrixXd* X = exog ? &exog->values() : nullptr;

    const std::size_t jobs = static_cast<std::size_t>(std::max(1, options.jobs));
    if (jobs == 1) {
        for (auto& c : cands) run_candidate(c, Y, X, mle);
    } else {
        for (std::size_t base = 0; base < cands.size(); base += jobs) {
            std::vector<std::future<void>> pending;
            for (std::size_t i = base; i < std::min(cands.size(), base + jobs); ++i) {
                pending.push_back(std::async(std::launch::async, [&, i] { run_candidate(cands[i], Y, X, mle); }));
            }
            for (auto& f : pending) f.get();
        }
    }

    OrderSelection out;
    const Candidate* best = nullptr;
    for (const auto& c : cands) {
        out.candidates.push_back(c.outcome);
        if (!c.outcome.ok) {
            out.warnings.push_back("candidate (p=" + std::to_string(c.spec.p) + ", q=" + std::to_string(c.spec.q) +
                                   ", s=" + std::to_string(c.spec.s) + ") failed: " + c.outcome.message);
            continue;
        }
        if (!best || ranks_before(c.outcome, best->outcome)) best = &c;
    }
    if (!best) throw std::runtime_error("select_order: all candidate fits failed");

    out.best = *best->fit;
    const Index n = out.best.residuals.rows();
    std::vector<series::Date> ts(y.timestamps().end() - n, y.timestamps().end());
    out.best.residuals = series::Panel(std::move(ts), y.columns(), out.best.residuals.values());
    return out;
}

}  // namespace dvarma::varma
