#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace trc {

/// Dense matrix, column-major: flat = row + rows * col. Column-major is
/// chosen so that a circular unfolding is a pure mode-rotation of the flat
/// tensor data (see unfold.hpp) and so the data maps straight into Eigen.
class DenseMatrix {
public:
    DenseMatrix() = default;

    DenseMatrix(std::int64_t rows, std::int64_t cols)
        : rows_(rows), cols_(cols) {
        validate_dims();
        data_.assign(static_cast<std::size_t>(rows_ * cols_), 0.0);
    }

    DenseMatrix(std::int64_t rows, std::int64_t cols, std::vector<double> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        validate_dims();
        if (static_cast<std::int64_t>(data_.size()) != rows_ * cols_) {
            throw std::invalid_argument("matrix data length " + std::to_string(data_.size()) +
                                        " does not match " + std::to_string(rows_) + "x" +
                                        std::to_string(cols_));
        }
    }

    std::int64_t rows() const { return rows_; }
    std::int64_t cols() const { return cols_; }
    std::int64_t size() const { return static_cast<std::int64_t>(data_.size()); }

    double operator()(std::int64_t r, std::int64_t c) const {
        return data_[static_cast<std::size_t>(r + rows_ * c)];
    }
    double& operator()(std::int64_t r, std::int64_t c) {
        return data_[static_cast<std::size_t>(r + rows_ * c)];
    }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

private:
    void validate_dims() const {
        if (rows_ < 1 || cols_ < 1) {
            throw std::invalid_argument("matrix dimensions must be positive, got " +
                                        std::to_string(rows_) + "x" + std::to_string(cols_));
        }
    }

    std::int64_t rows_ = 0;
    std::int64_t cols_ = 0;
    std::vector<double> data_;
};

}  // namespace trc
