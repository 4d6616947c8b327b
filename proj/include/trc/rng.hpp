#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace trc {

/// Deterministic random stream used everywhere randomness is needed.
///
/// The generator is std::mt19937_64 seeded directly (its output sequence is
/// fixed by the standard), uniforms take the top 53 bits, and normals come
/// from the Box-Muller transform with the spare value cached. No library
/// distribution objects are used, so the sequence is fully determined by the
/// seed and this file.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; two uniforms yield two normals.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    /// Unbiased integer in [0, n) by rejection.
    std::int64_t below(std::int64_t n) {
        const auto bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t v = gen_();
        while (v >= limit) v = gen_();
        return static_cast<std::int64_t>(v % bound);
    }

private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace trc
