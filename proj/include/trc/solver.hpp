#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "trc/linalg.hpp"
#include "trc/tensor.hpp"
#include "trc/unfold.hpp"

namespace trc {

/// Observed entries of the tensor to complete: mask[i] != 0 marks entry i as
/// observed, values holds the observed data and is zero outside the mask by
/// convention.
struct ObservationSet {
    DenseTensor values;
    std::vector<std::uint8_t> mask;

    std::int64_t observed_count() const {
        std::int64_t n = 0;
        for (auto m : mask) n += (m != 0);
        return n;
    }

    void validate() const {
        if (static_cast<std::int64_t>(mask.size()) != values.size()) {
            throw std::invalid_argument("observation mask length " + std::to_string(mask.size()) +
                                        " does not match tensor size " + std::to_string(values.size()));
        }
        if (observed_count() == 0) {
            throw std::invalid_argument("observation set is empty");
        }
        for (std::size_t i = 0; i < mask.size(); ++i) {
            if (mask[i] && !std::isfinite(values[static_cast<std::int64_t>(i)])) {
                throw std::invalid_argument("observed entry " + std::to_string(i) + " is not finite");
            }
        }
    }
};

/// Build an observation set from a fully known tensor, zero-filling the
/// entries outside the mask.
inline ObservationSet make_observation(const DenseTensor& full, std::vector<std::uint8_t> mask) {
    ObservationSet obs{full, std::move(mask)};
    if (static_cast<std::int64_t>(obs.mask.size()) != full.size()) {
        throw std::invalid_argument("mask length does not match tensor size");
    }
    for (std::int64_t i = 0; i < full.size(); ++i) {
        if (!obs.mask[static_cast<std::size_t>(i)]) obs.values[i] = 0.0;
    }
    return obs;
}

struct SolverConfig {
    std::int64_t step = 0;        // d; 0 means the floor(N/2) default
    std::vector<double> alphas;   // weights per mode; empty means uniform 1/N
    double rho = 0.25;            // ADMM penalty; constant unless rho_growth > 1
    double tol = 1e-5;            // relative-change stop; negative disables early stopping
    std::int64_t max_iters = 300;
    double rho_growth = 1.0;      // multiplier applied to rho after each iteration

    std::int64_t resolved_step(std::int64_t order) const {
        return step == 0 ? order / 2 : step;
    }

    std::vector<double> resolved_alphas(std::int64_t order) const {
        if (alphas.empty()) {
            return std::vector<double>(static_cast<std::size_t>(order), 1.0 / static_cast<double>(order));
        }
        return alphas;
    }

    void validate(std::int64_t order) const {
        const auto d = resolved_step(order);
        if (d < 1 || d >= order) {
            throw std::invalid_argument("step-length d=" + std::to_string(d) + " outside 1.." +
                                        std::to_string(order - 1));
        }
        const auto a = resolved_alphas(order);
        if (static_cast<std::int64_t>(a.size()) != order) {
            throw std::invalid_argument("expected " + std::to_string(order) + " alpha weights, got " +
                                        std::to_string(a.size()));
        }
        for (double v : a) {
            if (!(v >= 0.0) || !std::isfinite(v)) {
                throw std::invalid_argument("alpha weights must be finite and non-negative");
            }
        }
        if (!(rho > 0.0) || !std::isfinite(rho)) {
            throw std::invalid_argument("penalty rho must be positive");
        }
        if (!std::isfinite(tol)) {
            throw std::invalid_argument("tolerance must be finite");
        }
        if (max_iters < 1) {
            throw std::invalid_argument("max_iters must be at least 1");
        }
        if (!(rho_growth >= 1.0)) {
            throw std::invalid_argument("rho_growth must be at least 1");
        }
    }
};

/// Iterates of the ADMM solve: the estimate x, the N auxiliary tensors m and
/// dual tensors y, the iteration counter, and the penalty currently in force
/// (equal to the configured rho unless rho_growth > 1).
struct SolverState {
    DenseTensor x;
    std::vector<DenseTensor> m;
    std::vector<DenseTensor> y;
    std::int64_t iter = 0;
    double rho = 0.0;
};

struct IterationStats {
    std::int64_t iter = 0;
    double rel_change = 0.0;       // |x - x_prev|_F / |x_prev|_F
    double primal_residual = 0.0;  // max_k |x - m_k|_F
    double objective = 0.0;        // weighted TR nuclear norm of x
};

struct SolverReport {
    std::vector<IterationStats> trace;
    std::int64_t iterations = 0;
    bool converged = false;
};

struct SolveResult {
    DenseTensor completed;
    SolverReport report;
};

/// Weighted tensor-ring nuclear norm: sum_k alpha_k * |X_<k,d>|_* over all N
/// circular unfoldings with step-length d.
inline double tr_nuclear_norm(const DenseTensor& x, std::int64_t step, std::span<const double> alphas) {
    const auto n = x.order();
    if (static_cast<std::int64_t>(alphas.size()) != n) {
        throw std::invalid_argument("expected " + std::to_string(n) + " alpha weights");
    }
    double acc = 0.0;
    for (std::int64_t k = 1; k <= n; ++k) {
        acc += alphas[static_cast<std::size_t>(k - 1)] *
               nuclear_norm(circular_unfold(x, {k, step}));
    }
    return acc;
}

inline SolverState init_state(const ObservationSet& obs, const SolverConfig& cfg) {
    const auto n = obs.values.order();
    cfg.validate(n);
    SolverState st;
    st.x = DenseTensor(obs.values.shape());
    for (std::int64_t i = 0; i < st.x.size(); ++i) {
        if (obs.mask[static_cast<std::size_t>(i)]) st.x[i] = obs.values[i];
    }
    st.m.assign(static_cast<std::size_t>(n), st.x);
    st.y.assign(static_cast<std::size_t>(n), DenseTensor(obs.values.shape()));
    st.iter = 0;
    st.rho = cfg.rho;
    return st;
}

/// M-update for mode k (1-based): the closed-form minimizer of the k-th
/// subproblem, fold_k[ D_tau( X_<k,d> + (1/rho) Y_<k,d> ) ] with
/// tau = alpha_k / rho.
inline DenseTensor update_m(const SolverState& st, std::int64_t k, const SolverConfig& cfg) {
    const auto n = st.x.order();
    const CircularUnfoldingSpec spec{k, cfg.resolved_step(n)};
    const double alpha_k = cfg.resolved_alphas(n)[static_cast<std::size_t>(k - 1)];
    const auto& y = st.y[static_cast<std::size_t>(k - 1)];
    DenseTensor shifted = st.x;
    const double inv_rho = 1.0 / st.rho;
    for (std::int64_t i = 0; i < shifted.size(); ++i) shifted[i] += inv_rho * y[i];
    return circular_fold(svt(circular_unfold(shifted, spec), alpha_k * inv_rho), spec, st.x.shape());
}

/// X-update: observed entries are pinned to the data, unobserved entries take
/// the average of Z_k = M_k - (1/rho) Y_k over all modes.
inline DenseTensor update_x(const SolverState& st, const ObservationSet& obs, const SolverConfig& cfg) {
    (void)cfg;
    const auto n = static_cast<std::size_t>(st.x.order());
    DenseTensor x(st.x.shape());
    const double inv_rho = 1.0 / st.rho;
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto& m = st.m[k];
        const auto& y = st.y[k];
        for (std::int64_t i = 0; i < x.size(); ++i) x[i] += m[i] - inv_rho * y[i];
    }
    for (std::int64_t i = 0; i < x.size(); ++i) {
        x[i] = obs.mask[static_cast<std::size_t>(i)] ? obs.values[i] : x[i] * inv_n;
    }
    return x;
}

/// Dual ascent for mode k: Y_k + rho (X - M_k).
inline DenseTensor update_y(const SolverState& st, std::int64_t k, const SolverConfig& cfg) {
    (void)cfg;
    const auto& m = st.m[static_cast<std::size_t>(k - 1)];
    DenseTensor y = st.y[static_cast<std::size_t>(k - 1)];
    for (std::int64_t i = 0; i < y.size(); ++i) y[i] += st.rho * (st.x[i] - m[i]);
    return y;
}

using IterationCallback = std::function<void(const SolverState&, const IterationStats&)>;

/// ADMM solve: per iteration all N M-updates, then the X-update, then all N
/// Y-updates, stopping once the relative change of X drops to tol. X, M are
/// initialized to the zero-filled observations and Y to zero. Deterministic:
/// identical inputs and config give identical outputs.
inline SolveResult trnnm_solve(const ObservationSet& obs, const SolverConfig& cfg,
                               const IterationCallback& on_iteration = {}) {
    obs.validate();
    const auto n = obs.values.order();
    cfg.validate(n);
    const auto alphas = cfg.resolved_alphas(n);
    const auto d = cfg.resolved_step(n);

    SolverState st = init_state(obs, cfg);
    SolverReport report;
    report.trace.reserve(static_cast<std::size_t>(cfg.max_iters));

    for (std::int64_t iter = 1; iter <= cfg.max_iters; ++iter) {
        const DenseTensor x_prev = st.x;
        for (std::int64_t k = 1; k <= n; ++k) {
            st.m[static_cast<std::size_t>(k - 1)] = update_m(st, k, cfg);
        }
        st.x = update_x(st, obs, cfg);
        for (std::int64_t k = 1; k <= n; ++k) {
            st.y[static_cast<std::size_t>(k - 1)] = update_y(st, k, cfg);
        }
        st.iter = iter;

        double diff_sq = 0.0;
        double prev_sq = 0.0;
        for (std::int64_t i = 0; i < st.x.size(); ++i) {
            const double e = st.x[i] - x_prev[i];
            diff_sq += e * e;
            prev_sq += x_prev[i] * x_prev[i];
        }
        IterationStats stats;
        stats.iter = iter;
        stats.rel_change = prev_sq == 0.0 ? std::numeric_limits<double>::infinity()
                                          : std::sqrt(diff_sq) / std::sqrt(prev_sq);
        double prim = 0.0;
        for (std::int64_t k = 0; k < n; ++k) {
            double acc = 0.0;
            const auto& m = st.m[static_cast<std::size_t>(k)];
            for (std::int64_t i = 0; i < st.x.size(); ++i) {
                const double e = st.x[i] - m[i];
                acc += e * e;
            }
            prim = std::max(prim, std::sqrt(acc));
        }
        stats.primal_residual = prim;
        stats.objective = tr_nuclear_norm(st.x, d, alphas);
        report.trace.push_back(stats);
        if (on_iteration) on_iteration(st, stats);

        st.rho *= cfg.rho_growth;
        if (stats.rel_change <= cfg.tol) {
            report.converged = true;
            break;
        }
    }
    report.iterations = static_cast<std::int64_t>(report.trace.size());
    return {std::move(st.x), std::move(report)};
}

}  // namespace trc
