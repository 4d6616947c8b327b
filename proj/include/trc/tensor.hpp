#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace trc {

using Shape = std::vector<std::int64_t>;

inline std::int64_t shape_product(const Shape& shape) {
    std::int64_t n = 1;
    for (auto d : shape) n *= d;
    return n;
}

inline std::string shape_to_string(const Shape& shape) {
    std::string s;
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (i) s += 'x';
        s += std::to_string(shape[i]);
    }
    return s;
}

/// Strides of the fixed linearization: first index varies fastest, so
/// stride[0] = 1 and stride[j] = I_1 * ... * I_j.
inline Shape tensor_strides(const Shape& shape) {
    Shape strides(shape.size());
    std::int64_t acc = 1;
    for (std::size_t j = 0; j < shape.size(); ++j) {
        strides[j] = acc;
        acc *= shape[j];
    }
    return strides;
}

inline std::int64_t flat_index(const Shape& shape, std::span<const std::int64_t> idx) {
    std::int64_t flat = 0;
    std::int64_t stride = 1;
    for (std::size_t j = 0; j < shape.size(); ++j) {
        flat += idx[j] * stride;
        stride *= shape[j];
    }
    return flat;
}

inline void multi_index(const Shape& shape, std::int64_t flat, std::span<std::int64_t> out) {
    for (std::size_t j = 0; j < shape.size(); ++j) {
        out[j] = flat % shape[j];
        flat /= shape[j];
    }
}

/// Dense N-dimensional tensor of doubles with value semantics.
///
/// Storage is a flat array under the colexicographic convention: the first
/// index varies fastest, flat = i_1 + I_1*(i_2 + I_2*(i_3 + ...)). Mode
/// numbers in public APIs are 1-based (matching the usual tensor notation);
/// element indices are 0-based.
class DenseTensor {
public:
    DenseTensor() = default;

    explicit DenseTensor(Shape shape)
        : shape_(std::move(shape)) {
        validate_shape();
        data_.assign(static_cast<std::size_t>(shape_product(shape_)), 0.0);
    }

    DenseTensor(Shape shape, std::vector<double> data)
        : shape_(std::move(shape)), data_(std::move(data)) {
        validate_shape();
        if (static_cast<std::int64_t>(data_.size()) != shape_product(shape_)) {
            throw std::invalid_argument(
                "tensor data length " + std::to_string(data_.size()) +
                " does not match shape " + shape_to_string(shape_));
        }
    }

    static DenseTensor filled(Shape shape, double value) {
        DenseTensor t(std::move(shape));
        for (auto& v : t.data_) v = value;
        return t;
    }

    std::int64_t order() const { return static_cast<std::int64_t>(shape_.size()); }
    const Shape& shape() const { return shape_; }
    std::int64_t dim(std::int64_t mode_zero_based) const { return shape_[static_cast<std::size_t>(mode_zero_based)]; }
    std::int64_t size() const { return static_cast<std::int64_t>(data_.size()); }

    double operator[](std::int64_t flat) const { return data_[static_cast<std::size_t>(flat)]; }
    double& operator[](std::int64_t flat) { return data_[static_cast<std::size_t>(flat)]; }

    double at(std::span<const std::int64_t> idx) const { return data_[static_cast<std::size_t>(flat_index(shape_, idx))]; }
    double& at(std::span<const std::int64_t> idx) { return data_[static_cast<std::size_t>(flat_index(shape_, idx))]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

private:
    void validate_shape() const {
        if (shape_.size() < 2) {
            throw std::invalid_argument("tensor order must be at least 2, got " +
                                        std::to_string(shape_.size()));
        }
        for (auto d : shape_) {
            if (d < 1) {
                throw std::invalid_argument("tensor dimensions must be positive, got shape " +
                                            shape_to_string(shape_));
            }
        }
    }

    Shape shape_;
    std::vector<double> data_;
};

/// Flat-data-preserving reshape: the linearized entries are untouched, only
/// the shape changes. Inverse of itself with the shapes swapped.
inline DenseTensor reshape(const DenseTensor& x, Shape new_shape) {
    if (shape_product(new_shape) != x.size()) {
        throw std::invalid_argument("reshape from " + shape_to_string(x.shape()) + " to " +
                                    shape_to_string(new_shape) + " changes the element count");
    }
    return DenseTensor(std::move(new_shape), x.data());
}

inline double frobenius_norm(const DenseTensor& x) {
    double acc = 0.0;
    for (double v : x.data()) acc += v * v;
    return std::sqrt(acc);
}

}  // namespace trc
