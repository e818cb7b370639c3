#pragma once

#include "dvarma/hybrid/pipeline.hpp"

#include <set>
#include <string>
#include <string_view>

namespace dvarma::io {

/// JSON documents; doubles are written in shortest round-trip form so
/// reading back reproduces every value exactly.
std::string to_json(const varma::FittedVarma& fitted);
varma::FittedVarma fitted_varma_from_json(std::string_view text);

std::string to_json(const neural::TrainedLstm& model);
neural::TrainedLstm trained_lstm_from_json(std::string_view text);

/// Bundle of the components plus alignment metadata. In-sample panels
/// (mu, residual_target, embedding) are not stored.
std::string to_json(const hybrid::HybridModel& model);
hybrid::HybridModel hybrid_model_from_json(std::string_view text);

std::string to_json(const hybrid::HybridConfig& config);

/**
 * Override fields of `config` from a JSON object whose keys mirror the
 * HybridConfig / LstmConfig / OrderRanges / MleOptions member names. Keys in
 * `ignored` are skipped; any other unknown key throws std::invalid_argument.
 */
void apply_config_json(std::string_view text, hybrid::HybridConfig& config, const std::set<std::string>& ignored = {});

/// Model description used by `simulate`: {"spec": {...}, "params": {...}}.
struct ModelDescription {
    varma::VarmaSpec spec;
    varma::VarmaParams params;
};
ModelDescription model_description_from_json(std::string_view text);
std::string to_json(const ModelDescription& description);

}  // namespace dvarma::io
