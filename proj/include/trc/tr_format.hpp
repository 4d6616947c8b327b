#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "trc/linalg.hpp"
#include "trc/rng.hpp"
#include "trc/tensor.hpp"
#include "trc/unfold.hpp"

namespace trc {

/// Tensor-ring representation: N third-order cores, core k of shape
/// (r_{k-1}, I_k, r_k) with the ring closed by r_0 = r_N. Element-wise,
/// X(i_1,...,i_N) = Tr{ G_1(i_1) G_2(i_2) ... G_N(i_N) } where G_k(i) is the
/// i-th lateral slice of core k.
struct TRFormat {
    std::vector<DenseTensor> cores;

    std::int64_t order() const { return static_cast<std::int64_t>(cores.size()); }

    Shape dims() const {
        Shape d;
        for (const auto& g : cores) d.push_back(g.shape()[1]);
        return d;
    }

    /// Bond dimensions (r_1, ..., r_N); r_0 is ranks().back().
    Shape ranks() const {
        Shape r;
        for (const auto& g : cores) r.push_back(g.shape()[2]);
        return r;
    }

    void validate() const {
        const auto n = order();
        if (n < 2) throw std::invalid_argument("tensor ring needs at least 2 cores");
        for (std::int64_t k = 0; k < n; ++k) {
            const auto& g = cores[static_cast<std::size_t>(k)];
            if (g.order() != 3) {
                throw std::invalid_argument("core " + std::to_string(k + 1) + " must be third-order");
            }
            const auto& prev = cores[static_cast<std::size_t>((k + n - 1) % n)];
            if (g.shape()[0] != prev.shape()[2]) {
                throw std::invalid_argument(
                    "rank chain broken between cores " + std::to_string(k) + " and " +
                    std::to_string(k + 1) + ": " + std::to_string(prev.shape()[2]) + " vs " +
                    std::to_string(g.shape()[0]));
            }
        }
    }
};

/// Contract the ring into a dense tensor by absorbing cores left to right:
/// A(a, p, b) accumulates G_1..G_k with p running over i_1..i_k (i_1 fastest),
/// then the trace closes the ring. Intended for desk-scale shapes; memory is
/// r_0 * prod(I) * r_k at step k.
inline DenseTensor tr_contract(const TRFormat& tr) {
    tr.validate();
    const auto n = tr.order();
    const Shape dims = tr.dims();
    const std::int64_t r0 = tr.cores[0].shape()[0];

    // acc holds A(a, p, b) with a fastest, then p, then b
    std::vector<double> acc = tr.cores[0].data();
    std::int64_t p_extent = dims[0];
    std::int64_t right = tr.cores[0].shape()[2];

    for (std::int64_t k = 1; k < n; ++k) {
        const auto& g = tr.cores[static_cast<std::size_t>(k)];
        const std::int64_t ik = g.shape()[1];
        const std::int64_t rk = g.shape()[2];
        std::vector<double> next(static_cast<std::size_t>(r0 * p_extent * ik * rk), 0.0);
        for (std::int64_t c = 0; c < rk; ++c) {
            for (std::int64_t i = 0; i < ik; ++i) {
                for (std::int64_t b = 0; b < right; ++b) {
                    const double gv = g.data()[static_cast<std::size_t>(b + right * (i + ik * c))];
                    if (gv == 0.0) continue;
                    const double* src = acc.data() + r0 * p_extent * b;
                    double* dst = next.data() + r0 * p_extent * (i + ik * c);
                    for (std::int64_t ap = 0; ap < r0 * p_extent; ++ap) dst[ap] += src[ap] * gv;
                }
            }
        }
        acc = std::move(next);
        p_extent *= ik;
        right = rk;
    }

    // right == r0 here; trace over the ring index
    DenseTensor x(dims);
    for (std::int64_t p = 0; p < p_extent; ++p) {
        double sum = 0.0;
        for (std::int64_t a = 0; a < r0; ++a) sum += acc[static_cast<std::size_t>(a + r0 * (p + p_extent * a))];
        x[p] = sum;
    }
    return x;
}

/// Random TR-format with i.i.d. standard normal core entries drawn from
/// RandomStream(seed), cores in order, entries in flat storage order.
inline TRFormat random_tr(const Shape& dims, const Shape& ranks, std::uint64_t seed) {
    if (dims.size() != ranks.size()) {
        throw std::invalid_argument("shape has " + std::to_string(dims.size()) + " modes but " +
                                    std::to_string(ranks.size()) + " ranks given");
    }
    for (auto r : ranks) {
        if (r < 1) throw std::invalid_argument("TR ranks must be at least 1");
    }
    RandomStream rng(seed);
    TRFormat tr;
    const auto n = static_cast<std::int64_t>(dims.size());
    for (std::int64_t k = 0; k < n; ++k) {
        const std::int64_t left = ranks[static_cast<std::size_t>((k + n - 1) % n)];
        DenseTensor g(Shape{left, dims[static_cast<std::size_t>(k)], ranks[static_cast<std::size_t>(k)]});
        for (auto& v : g.data()) v = rng.normal();
        tr.cores.push_back(std::move(g));
    }
    return tr;
}

struct RankBoundCheck {
    std::int64_t mode = 0;           // k, 1-based
    std::int64_t observed_rank = 0;  // numerical rank of X_<k,d>
    std::int64_t bound = 0;          // r_k * r_{t-1}
    bool within_bound = false;
};

/// Contract the ring, unfold at every mode with the given step-length, and
/// compare numerical ranks against the r_k * r_{t-1} bound. Rank threshold is
/// 1e-9 * s_max, looser than the reporting default so contraction roundoff
/// cannot inflate ranks.
inline std::vector<RankBoundCheck> check_rank_bound(const TRFormat& tr, std::int64_t step) {
    const DenseTensor x = tr_contract(tr);
    const Shape ranks = tr.ranks();
    const auto n = tr.order();
    std::vector<RankBoundCheck> checks;
    for (std::int64_t k = 1; k <= n; ++k) {
        const CircularUnfoldingSpec spec{k, step};
        const auto s = singular_values(circular_unfold(x, spec));
        const std::int64_t t = spec.start(n);
        // r_{t-1} with r_0 = r_N
        const std::int64_t r_left = ranks[static_cast<std::size_t>((t - 1 + n - 1) % n)];
        const std::int64_t r_k = ranks[static_cast<std::size_t>(k - 1)];
        RankBoundCheck c;
        c.mode = k;
        c.observed_rank = numerical_rank(s, 1e-9);
        c.bound = r_k * r_left;
        c.within_bound = c.observed_rank <= c.bound;
        checks.push_back(c);
    }
    return checks;
}

inline bool all_within_bound(std::span<const RankBoundCheck> checks) {
    for (const auto& c : checks) {
        if (!c.within_bound) return false;
    }
    return true;
}

}  // namespace trc
