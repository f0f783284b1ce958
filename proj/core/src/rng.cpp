#include "smartson/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace smartson {

std::uint64_t SplitMix64::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("below(0)");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t r;
    do {
        r = next();
    } while (r >= limit);
    return r % bound;
}

std::vector<std::size_t> SplitMix64::sample_without_replacement(std::size_t k, std::size_t n) {
    if (k > n) throw std::invalid_argument("sample larger than population");
    std::vector<std::size_t> picked;
    picked.reserve(k);
    while (picked.size() < k) {
        const auto candidate = static_cast<std::size_t>(below(n));
        if (std::find(picked.begin(), picked.end(), candidate) == picked.end())
            picked.push_back(candidate);
    }
    std::sort(picked.begin(), picked.end());
    return picked;
}

}  // namespace smartson
