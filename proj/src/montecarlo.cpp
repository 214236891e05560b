// Copyright 2026 The gpue Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "gpue/errors.hpp"
#include "gpue/stats.hpp"
#include "parallel.hpp"

namespace gpue {

namespace {

// Fixed partition of the sample index space. Block boundaries never depend on
// the worker count, and per-block partial results are merged in block order.
constexpr std::uint64_t kBlockSize = 1u << 15;

struct SpacingBlock {
    Histogram histogram;
    std::uint64_t accepted = 0;
    double spacing_sum = 0.0;
};

struct LevelBlock {
    Histogram histogram;
    std::uint64_t accepted = 0;
    std::uint64_t draws = 0;
};

void merge_counts(Histogram& into, const Histogram& from)
{
    for (std::size_t i = 0; i < into.counts.size(); ++i) {
        into.counts[i] += from.counts[i];
    }
    into.total += from.total;
    into.underflow += from.underflow;
    into.overflow += from.overflow;
}

// Processes indices [first, first + count) and stops early once `limit`
// real-spectrum draws have been accepted.
LevelBlock level_block(const GpueParams& params, const CounterRng& rng, const BinSpec& spec, std::uint64_t first,
                       std::uint64_t count, std::uint64_t limit)
{
    LevelBlock out{Histogram(spec)};
    for (std::uint64_t k = 0; k < count && out.accepted < limit; ++k) {
        const HSample s = sample(params, rng, first + k);
        ++out.draws;
        if (const auto* real = std::get_if<RealSpectrum>(&s.spectrum)) {
            out.histogram.add(spec, real->e_plus);
            out.histogram.add(spec, real->e_minus);
            ++out.accepted;
        }
    }
    return out;
}

} // namespace

Histogram spacing_histogram(std::span<const HSample> samples, const BinSpec& spec, double scale)
{
    spec.validate();
    Histogram h(spec);
    for (const HSample& s : samples) {
        if (const auto* real = std::get_if<RealSpectrum>(&s.spectrum)) {
            h.add(spec, real->spacing() / scale);
        }
    }
    return h;
}

McSpacingResult mc_spacing(const GpueParams& params, std::uint64_t n, const BinSpec& spec, std::uint64_t seed,
                           const McOptions& options)
{
    params.validate();
    spec.validate();
    if (n == 0) {
        throw DomainError("mc_spacing: need at least one draw");
    }
    const double scale = options.unit_mean ? mean_spacing(params.sigma) : 1.0;
    const CounterRng rng(seed);
    const std::uint64_t n_blocks = (n + kBlockSize - 1) / kBlockSize;
    std::vector<SpacingBlock> blocks(n_blocks);

    detail::for_each_block(n_blocks, options.workers, [&](std::size_t b) {
        SpacingBlock out{Histogram(spec)};
        const std::uint64_t first = b * kBlockSize;
        const std::uint64_t last = std::min(n, first + kBlockSize);
        for (std::uint64_t i = first; i < last; ++i) {
            const HSample s = sample(params, rng, i);
            if (const auto* real = std::get_if<RealSpectrum>(&s.spectrum)) {
                const double x = real->spacing() / scale;
                out.histogram.add(spec, x);
                out.spacing_sum += x;
                ++out.accepted;
            }
        }
        blocks[b] = std::move(out);
    });

    McSpacingResult result{Histogram(spec)};
    double sum = 0.0;
    for (const SpacingBlock& blk : blocks) {
        merge_counts(result.histogram, blk.histogram);
        result.accepted += blk.accepted;
        sum += blk.spacing_sum;
    }
    result.draws = n;
    result.rejected = n - result.accepted;
    result.scale = scale;
    if (result.accepted == 0) {
        throw StatisticsError("mc_spacing: no real-spectrum draws were accepted");
    }
    result.mean_spacing = sum / static_cast<double>(result.accepted);

    const auto p = spacing_bin_probabilities(params.sigma, spec, options.unit_mean);
    result.report = compare(result.histogram, result.accepted, p);
    result.report.rejected_fraction = static_cast<double>(result.rejected) / static_cast<double>(n);
    return result;
}

McDensityResult mc_level_density(const GpueParams& params, std::uint64_t accepted_target, const BinSpec& spec,
                                 std::uint64_t seed, unsigned workers)
{
    params.validate();
    spec.validate();
    if (accepted_target == 0) {
        throw DomainError("mc_level_density: need at least one accepted sample");
    }
    const CounterRng rng(seed);
    const std::uint64_t wave = 4 * static_cast<std::uint64_t>(std::max(1u, workers));
    constexpr std::uint64_t no_limit = std::numeric_limits<std::uint64_t>::max();

    McDensityResult result{Histogram(spec)};
    std::uint64_t next_block = 0;
    while (result.accepted < accepted_target) {
        std::vector<LevelBlock> blocks(wave);
        detail::for_each_block(wave, workers, [&](std::size_t b) {
            blocks[b] = level_block(params, rng, spec, (next_block + b) * kBlockSize, kBlockSize, no_limit);
        });
        for (std::uint64_t b = 0; b < wave && result.accepted < accepted_target; ++b) {
            const std::uint64_t need = accepted_target - result.accepted;
            const LevelBlock& full = blocks[b];
            if (full.accepted <= need) {
                merge_counts(result.histogram, full.histogram);
                result.accepted += full.accepted;
                result.draws += full.draws;
            } else {
                // Truncate the crossing block at exactly `need` acceptances.
                const LevelBlock part =
                    level_block(params, rng, spec, (next_block + b) * kBlockSize, kBlockSize, need);
                merge_counts(result.histogram, part.histogram);
                result.accepted += part.accepted;
                result.draws += part.draws;
            }
        }
        next_block += wave;
    }

    const auto p = level_bin_probabilities(params.sigma, spec);
    result.report = compare(result.histogram, 2 * result.accepted, p);
    result.report.rejected_fraction =
        static_cast<double>(result.draws - result.accepted) / static_cast<double>(result.draws);
    return result;
}

} // namespace gpue
