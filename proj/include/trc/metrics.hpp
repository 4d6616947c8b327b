#pragma once

#include <cmath>
#include <stdexcept>

#include "trc/tensor.hpp"

namespace trc {

/// Relative square error |x - t|_F / |t|_F, the recovery metric.
inline double rse(const DenseTensor& x, const DenseTensor& t) {
    if (x.shape() != t.shape()) {
        throw std::invalid_argument("rse shapes differ: " + shape_to_string(x.shape()) + " vs " +
                                    shape_to_string(t.shape()));
    }
    double diff_sq = 0.0;
    double ref_sq = 0.0;
    for (std::int64_t i = 0; i < x.size(); ++i) {
        const double e = x[i] - t[i];
        diff_sq += e * e;
        ref_sq += t[i] * t[i];
    }
    if (ref_sq == 0.0) {
        throw std::invalid_argument("rse reference tensor has zero norm");
    }
    return std::sqrt(diff_sq) / std::sqrt(ref_sq);
}

}  // namespace trc
