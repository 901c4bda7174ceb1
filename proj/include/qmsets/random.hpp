#pragma once

#include <cstdint>
#include <random>

#include "qmsets/rational.hpp"

namespace qmsets {

// Deterministic sampling source. Each draw consumes one mt19937_64 step and
// yields the exact rational k/2^32 from the top 32 bits, so comparisons
// against cumulative exact probabilities never need a tolerance. The seed
// and this draw rule are part of the reproducibility contract.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    Rational next_unit() {
        const std::uint64_t k = engine_() >> 32;
        return Rational(static_cast<std::int64_t>(k), std::int64_t{1} << 32);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace qmsets
