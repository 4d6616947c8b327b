#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "trc/matrix.hpp"
#include "trc/tensor.hpp"

namespace trc {

/// Circular unfolding X_<k,d>: the d cyclically consecutive modes
/// t, t+1, ..., k enumerate the rows and the remaining N-d modes
/// k+1, ..., t-1 enumerate the columns, with
///
///     t = k - d + 1        if d <= k,
///     t = k - d + 1 + N    otherwise.
///
/// Composite indices are first-listed-fastest within each group (i_t fastest
/// among the rows, i_{k+1} fastest among the columns), so d=1 coincides with
/// the conventional mode-k unfolding.
struct CircularUnfoldingSpec {
    std::int64_t mode = 1;  // k, 1-based
    std::int64_t step = 1;  // d, 1 <= d < N

    void validate_for(std::int64_t order) const {
        if (mode < 1 || mode > order) {
            throw std::invalid_argument("unfolding mode k=" + std::to_string(mode) +
                                        " outside 1.." + std::to_string(order));
        }
        if (step < 1 || step >= order) {
            throw std::invalid_argument("step-length d=" + std::to_string(step) +
                                        " outside 1.." + std::to_string(order - 1));
        }
    }

    /// Start mode t, 1-based.
    std::int64_t start(std::int64_t order) const {
        std::int64_t t = mode - step + 1;
        if (step > mode) t += order;
        return t;
    }

    /// Row-group modes t..k in cyclic order, 0-based.
    std::vector<std::int64_t> row_modes(std::int64_t order) const {
        std::vector<std::int64_t> modes(static_cast<std::size_t>(step));
        const std::int64_t t0 = start(order) - 1;
        for (std::int64_t j = 0; j < step; ++j) modes[static_cast<std::size_t>(j)] = (t0 + j) % order;
        return modes;
    }

    /// Column-group modes k+1..t-1 in cyclic order, 0-based.
    std::vector<std::int64_t> col_modes(std::int64_t order) const {
        std::vector<std::int64_t> modes(static_cast<std::size_t>(order - step));
        for (std::int64_t j = 0; j < order - step; ++j) modes[static_cast<std::size_t>(j)] = (mode + j) % order;
        return modes;
    }
};

namespace detail {

struct UnfoldLayout {
    std::vector<std::int64_t> extents;     // tensor extents in unfolded mode order
    std::vector<std::int64_t> strides;     // matching tensor strides
    std::int64_t rows = 1;
    std::int64_t cols = 1;
};

inline UnfoldLayout unfold_layout(const Shape& shape, const CircularUnfoldingSpec& spec) {
    const auto order = static_cast<std::int64_t>(shape.size());
    spec.validate_for(order);
    const Shape strides = tensor_strides(shape);
    UnfoldLayout layout;
    for (auto m : spec.row_modes(order)) {
        layout.extents.push_back(shape[static_cast<std::size_t>(m)]);
        layout.strides.push_back(strides[static_cast<std::size_t>(m)]);
        layout.rows *= shape[static_cast<std::size_t>(m)];
    }
    for (auto m : spec.col_modes(order)) {
        layout.extents.push_back(shape[static_cast<std::size_t>(m)]);
        layout.strides.push_back(strides[static_cast<std::size_t>(m)]);
        layout.cols *= shape[static_cast<std::size_t>(m)];
    }
    return layout;
}

}  // namespace detail

/// Unfold x into the matrix X_<k,d>. The matrix is column-major, so this is
/// exactly a cyclic rotation of the modes followed by a flat relabelling.
inline DenseMatrix circular_unfold(const DenseTensor& x, const CircularUnfoldingSpec& spec) {
    const auto layout = detail::unfold_layout(x.shape(), spec);
    DenseMatrix m(layout.rows, layout.cols);
    const auto n_modes = layout.extents.size();
    std::vector<std::int64_t> counter(n_modes, 0);
    std::int64_t src = 0;
    const std::int64_t total = x.size();
    for (std::int64_t dst = 0; dst < total; ++dst) {
        m.data()[static_cast<std::size_t>(dst)] = x[src];
        for (std::size_t j = 0; j < n_modes; ++j) {
            ++counter[j];
            src += layout.strides[j];
            if (counter[j] < layout.extents[j]) break;
            src -= layout.strides[j] * layout.extents[j];
            counter[j] = 0;
        }
    }
    return m;
}

/// Inverse of circular_unfold for the given spec and target shape.
inline DenseTensor circular_fold(const DenseMatrix& m, const CircularUnfoldingSpec& spec,
                                 const Shape& shape) {
    const auto layout = detail::unfold_layout(shape, spec);
    if (m.rows() != layout.rows || m.cols() != layout.cols) {
        throw std::invalid_argument(
            "fold of a " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
            " matrix does not match the " + std::to_string(layout.rows) + "x" +
            std::to_string(layout.cols) + " unfolding of shape " + shape_to_string(shape));
    }
    DenseTensor x(shape);
    const auto n_modes = layout.extents.size();
    std::vector<std::int64_t> counter(n_modes, 0);
    std::int64_t dst = 0;
    const std::int64_t total = x.size();
    for (std::int64_t src = 0; src < total; ++src) {
        x[dst] = m.data()[static_cast<std::size_t>(src)];
        for (std::size_t j = 0; j < n_modes; ++j) {
            ++counter[j];
            dst += layout.strides[j];
            if (counter[j] < layout.extents[j]) break;
            dst -= layout.strides[j] * layout.extents[j];
            counter[j] = 0;
        }
    }
    return x;
}

}  // namespace trc
