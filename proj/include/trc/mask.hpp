#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "trc/rng.hpp"

namespace trc {

enum class MaskKind { RandomEntries, Stripes };

/// Which image axis a stripe runs along. Columns (the default) removes whole
/// image columns, i.e. vertical stripes; Rows removes whole image rows.
enum class StripeAxis { Columns, Rows };

struct MaskSpec {
    MaskKind kind = MaskKind::RandomEntries;
    double missing_ratio = 0.0;  // in [0, 1)
    std::uint64_t seed = 0;
    StripeAxis stripe_axis = StripeAxis::Columns;
    bool per_frame_stripes = false;  // video: draw a fresh stripe set per frame

    void validate() const {
        if (!(missing_ratio >= 0.0) || missing_ratio >= 1.0) {
            throw std::invalid_argument("missing ratio must be in [0, 1), got " +
                                        std::to_string(missing_ratio));
        }
    }
};

/// Image (or frame-stack) dimensions. Mask entries are indexed
/// ((f * height + h) * width + w) * channels + c, matching ImageBuffer
/// storage with frames stacked outermost.
struct FrameDims {
    std::int64_t height = 0;
    std::int64_t width = 0;
    std::int64_t channels = 1;
    std::int64_t frames = 1;

    std::int64_t pixel_count() const { return height * width * channels * frames; }
};

/// Bernoulli mask over `count` flat entries: each entry is missing
/// independently with probability mr. 1 = observed.
inline std::vector<std::uint8_t> random_entry_mask(std::int64_t count, double mr, std::uint64_t seed) {
    if (!(mr >= 0.0) || mr >= 1.0) {
        throw std::invalid_argument("missing ratio must be in [0, 1), got " + std::to_string(mr));
    }
    RandomStream rng(seed);
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(count));
    for (auto& m : mask) m = rng.uniform01() < mr ? 0 : 1;
    return mask;
}

namespace detail {

/// First ceil(mr * extent) entries of a seeded Fisher-Yates shuffle of
/// 0..extent-1.
inline std::vector<std::uint8_t> pick_stripes(std::int64_t extent, double mr, RandomStream& rng) {
    const auto n_missing = static_cast<std::int64_t>(std::ceil(mr * static_cast<double>(extent)));
    if (n_missing >= extent) {
        throw std::invalid_argument("stripe ratio " + std::to_string(mr) +
                                    " leaves no observed stripes");
    }
    std::vector<std::int64_t> order(static_cast<std::size_t>(extent));
    std::iota(order.begin(), order.end(), 0);
    for (std::int64_t i = 0; i < n_missing; ++i) {
        const std::int64_t j = i + rng.below(extent - i);
        std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
    }
    std::vector<std::uint8_t> missing(static_cast<std::size_t>(extent), 0);
    for (std::int64_t i = 0; i < n_missing; ++i) missing[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 1;
    return missing;
}

}  // namespace detail

/// Observation mask in image space. Random-entries: per-entry Bernoulli.
/// Stripes: ceil(mr * W) image columns (or rows) chosen uniformly at random
/// are missing across all rows, channels and frames; stripe sets are shared
/// across frames unless per_frame_stripes is set. Deterministic per seed.
inline std::vector<std::uint8_t> make_mask(const FrameDims& dims, const MaskSpec& spec) {
    spec.validate();
    if (dims.pixel_count() <= 0) {
        throw std::invalid_argument("mask dimensions must be positive");
    }
    if (spec.kind == MaskKind::RandomEntries) {
        return random_entry_mask(dims.pixel_count(), spec.missing_ratio, spec.seed);
    }

    const std::int64_t extent = spec.stripe_axis == StripeAxis::Columns ? dims.width : dims.height;
    RandomStream rng(spec.seed);
    std::vector<std::uint8_t> missing = detail::pick_stripes(extent, spec.missing_ratio, rng);
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(dims.pixel_count()), 1);
    std::size_t idx = 0;
    for (std::int64_t f = 0; f < dims.frames; ++f) {
        if (spec.per_frame_stripes && f > 0) {
            missing = detail::pick_stripes(extent, spec.missing_ratio, rng);
        }
        for (std::int64_t h = 0; h < dims.height; ++h) {
            for (std::int64_t w = 0; w < dims.width; ++w) {
                const std::int64_t pos = spec.stripe_axis == StripeAxis::Columns ? w : h;
                const std::uint8_t obs = missing[static_cast<std::size_t>(pos)] ? 0 : 1;
                for (std::int64_t c = 0; c < dims.channels; ++c) mask[idx++] = obs;
            }
        }
    }
    return mask;
}

}  // namespace trc
