// Copyright 2026 The gpue Authors
// SPDX-License-Identifier: Apache-2.0

#include "gpue/rng.hpp"

#include <cmath>
#include <numbers>

namespace gpue {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo)
{
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

// (0, 1) exclusive: the half-ulp offset keeps log() finite in Box-Muller.
inline double to_open_unit(std::uint32_t hi, std::uint32_t lo)
{
    const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

} // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key)
{
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kPhiloxW0;
        key[1] += kPhiloxW1;
    }
    return ctr;
}

std::array<double, 4> CounterRng::uniforms(Stream stream, std::uint64_t index) const noexcept
{
    const Philox4x32::Key key{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)};
    const auto lo = static_cast<std::uint32_t>(index);
    const auto hi = static_cast<std::uint32_t>(index >> 32);
    const auto s = static_cast<std::uint32_t>(stream) << 1;
    const auto r0 = Philox4x32::block({lo, hi, s, 0u}, key);
    const auto r1 = Philox4x32::block({lo, hi, s | 1u, 0u}, key);
    return {to_open_unit(r0[0], r0[1]), to_open_unit(r0[2], r0[3]), to_open_unit(r1[0], r1[1]),
            to_open_unit(r1[2], r1[3])};
}

std::array<double, 4> CounterRng::normals(Stream stream, std::uint64_t index) const noexcept
{
    const auto u = uniforms(stream, index);
    const double r0 = std::sqrt(-2.0 * std::log(u[0]));
    const double r1 = std::sqrt(-2.0 * std::log(u[2]));
    const double t0 = 2.0 * std::numbers::pi * u[1];
    const double t1 = 2.0 * std::numbers::pi * u[3];
    return {r0 * std::cos(t0), r0 * std::sin(t0), r1 * std::cos(t1), r1 * std::sin(t1)};
}

} // namespace gpue
