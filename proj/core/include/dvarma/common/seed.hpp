#pragma once

#include <cstdint>
#include <string_view>

namespace dvarma {

/// Sub-seed for a named component: the base seed plus a stable FNV-1a hash of
/// the tag, so adding a component never shifts another component's stream.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) noexcept;

}  // namespace dvarma
