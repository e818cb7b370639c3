#include "dvarma/common/seed.hpp"

namespace dvarma {

std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return seed + h;
}

}  // namespace dvarma
