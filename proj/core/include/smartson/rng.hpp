#pragma once

#include <cstdint>
#include <vector>

namespace smartson {

/// SplitMix64 (Steele, Lea, Flood 2014). Chosen over std:: engines because
/// its output sequence is fully pinned by the algorithm, so seeded scenarios
/// replay identically on any toolchain.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform draw in [0, bound) by rejection, no modulo bias.
    std::uint64_t below(std::uint64_t bound);

    /// k distinct indices from [0, n), returned ascending so a catalogue
    /// sampled from a trace keeps the trace's row order.
    std::vector<std::size_t> sample_without_replacement(std::size_t k, std::size_t n);

private:
    std::uint64_t state_;
};

}  // namespace smartson
