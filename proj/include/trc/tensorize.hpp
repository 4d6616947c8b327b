#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "trc/image_io.hpp"
#include "trc/mask.hpp"
#include "trc/tensor.hpp"

namespace trc {

/// Pixel ordering for tensorization (fixed and load-bearing: it decides which
/// entries share unfolding rows): channel fastest, then width, then height,
/// then frame. Flat position p = c + C*(w + W*(h + H*f)); the tensor is the
/// flat array relabelled with the target shape, first index fastest.
inline std::int64_t tensorize_position(const FrameDims& dims, std::int64_t f, std::int64_t h,
                                       std::int64_t w, std::int64_t c) {
    return c + dims.channels * (w + dims.width * (h + dims.height * f));
}

namespace detail {

template <typename T>
std::vector<T> reorder_pixels(std::span<const T> image_order, const FrameDims& dims) {
    std::vector<T> flat(image_order.size());
    std::size_t src = 0;
    for (std::int64_t f = 0; f < dims.frames; ++f) {
        for (std::int64_t h = 0; h < dims.height; ++h) {
            for (std::int64_t w = 0; w < dims.width; ++w) {
                for (std::int64_t c = 0; c < dims.channels; ++c) {
                    flat[static_cast<std::size_t>(tensorize_position(dims, f, h, w, c))] =
                        image_order[src++];
                }
            }
        }
    }
    return flat;
}

template <typename T>
std::vector<T> restore_pixels(std::span<const T> tensor_order, const FrameDims& dims) {
    std::vector<T> pixels(tensor_order.size());
    std::size_t dst = 0;
    for (std::int64_t f = 0; f < dims.frames; ++f) {
        for (std::int64_t h = 0; h < dims.height; ++h) {
            for (std::int64_t w = 0; w < dims.width; ++w) {
                for (std::int64_t c = 0; c < dims.channels; ++c) {
                    pixels[dst++] =
                        tensor_order[static_cast<std::size_t>(tensorize_position(dims, f, h, w, c))];
                }
            }
        }
    }
    return pixels;
}

inline void check_target(const FrameDims& dims, const Shape& target) {
    if (shape_product(target) != dims.pixel_count()) {
        throw std::invalid_argument("target shape " + shape_to_string(target) + " has " +
                                    std::to_string(shape_product(target)) + " elements but the image has " +
                                    std::to_string(dims.pixel_count()));
    }
}

}  // namespace detail

inline DenseTensor tensorize(const ImageBuffer& img, const Shape& target) {
    const FrameDims dims{img.height, img.width, img.channels, 1};
    detail::check_target(dims, target);
    return DenseTensor(target, detail::reorder_pixels<double>(img.pixels, dims));
}

inline ImageBuffer detensorize(const DenseTensor& x, std::int64_t height, std::int64_t width,
                               std::int64_t channels) {
    const FrameDims dims{height, width, channels, 1};
    if (x.size() != dims.pixel_count()) {
        throw std::invalid_argument("tensor has " + std::to_string(x.size()) +
                                    " elements, image needs " + std::to_string(dims.pixel_count()));
    }
    ImageBuffer img;
    img.height = height;
    img.width = width;
    img.channels = channels;
    img.pixels = detail::restore_pixels<double>(x.data(), dims);
    return img;
}

/// Stack frames (all with identical dimensions) and tensorize; frame index is
/// the slowest-moving coordinate.
inline DenseTensor tensorize_stack(std::span<const ImageBuffer> frames, const Shape& target) {
    if (frames.empty()) throw std::invalid_argument("no frames to tensorize");
    const FrameDims dims{frames[0].height, frames[0].width, frames[0].channels,
                         static_cast<std::int64_t>(frames.size())};
    std::vector<double> stacked;
    stacked.reserve(static_cast<std::size_t>(dims.pixel_count()));
    for (const auto& fr : frames) {
        if (fr.height != dims.height || fr.width != dims.width || fr.channels != dims.channels) {
            throw std::invalid_argument("frame dimensions differ within the stack");
        }
        stacked.insert(stacked.end(), fr.pixels.begin(), fr.pixels.end());
    }
    detail::check_target(dims, target);
    return DenseTensor(target, detail::reorder_pixels<double>(stacked, dims));
}

inline std::vector<ImageBuffer> detensorize_stack(const DenseTensor& x, const FrameDims& dims) {
    if (x.size() != dims.pixel_count()) {
        throw std::invalid_argument("tensor element count does not match frame dimensions");
    }
    const auto pixels = detail::restore_pixels<double>(x.data(), dims);
    std::vector<ImageBuffer> frames(static_cast<std::size_t>(dims.frames));
    const std::int64_t per_frame = dims.height * dims.width * dims.channels;
    for (std::int64_t f = 0; f < dims.frames; ++f) {
        auto& fr = frames[static_cast<std::size_t>(f)];
        fr.height = dims.height;
        fr.width = dims.width;
        fr.channels = dims.channels;
        fr.pixels.assign(pixels.begin() + f * per_frame, pixels.begin() + (f + 1) * per_frame);
    }
    return frames;
}

/// Reorder an image-space mask (see make_mask) into tensor flat order with
/// the identical mapping used for pixel data, so mask structure survives
/// tensorization unchanged.
inline std::vector<std::uint8_t> tensorize_mask(std::span<const std::uint8_t> image_mask,
                                                const FrameDims& dims) {
    if (static_cast<std::int64_t>(image_mask.size()) != dims.pixel_count()) {
        throw std::invalid_argument("mask length does not match frame dimensions");
    }
    return detail::reorder_pixels<std::uint8_t>(image_mask, dims);
}

}  // namespace trc
