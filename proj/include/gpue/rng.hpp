// Copyright 2026 The gpue Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>

namespace gpue {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Stateless:
/// the output is a pure function of (counter, key).
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter counter, Key key);
};

/// Independent random streams used by the library. Each consumer draws from
/// its own stream so that, e.g., group-axiom checks never alias ensemble
/// samples for the same seed.
enum class Stream : std::uint32_t {
    ensemble = 0,
    group_axioms = 1,
    algebra_checks = 2,
};

/// Seeded random source keyed by (seed, stream, index). Every draw is a pure
/// function of its key, so disjoint index ranges can be generated on any
/// number of threads with bit-identical results.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    /// Four uniforms in the open interval (0, 1) with 53-bit resolution.
    std::array<double, 4> uniforms(Stream stream, std::uint64_t index) const noexcept;

    /// Four independent standard normal deviates (Box-Muller on `uniforms`).
    std::array<double, 4> normals(Stream stream, std::uint64_t index) const noexcept;

private:
    std::uint64_t seed_;
};

} // namespace gpue
