#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "trc/matrix.hpp"

namespace trc {

inline Eigen::Map<const Eigen::MatrixXd> eigen_view(const DenseMatrix& m) {
    return {m.data().data(), m.rows(), m.cols()};
}

inline DenseMatrix from_eigen(const Eigen::MatrixXd& m) {
    return {m.rows(), m.cols(),
            std::vector<double>(m.data(), m.data() + m.size())};
}

/// Economy-size SVD: u is rows x p, s has p = min(rows, cols) non-increasing
/// entries, vt is p x cols.
struct SvdResult {
    DenseMatrix u;
    std::vector<double> s;
    DenseMatrix vt;
};

namespace detail {

inline void check_svd_converged(const Eigen::ComputationInfo info, const DenseMatrix& a) {
    if (info != Eigen::Success) {
        throw std::runtime_error("SVD failed to converge on a " + std::to_string(a.rows()) +
                                 "x" + std::to_string(a.cols()) + " matrix");
    }
}

}  // namespace detail

inline SvdResult svd(const DenseMatrix& a) {
    Eigen::BDCSVD<Eigen::MatrixXd> dec(eigen_view(a), Eigen::ComputeThinU | Eigen::ComputeThinV);
    detail::check_svd_converged(dec.info(), a);
    const Eigen::VectorXd& s = dec.singularValues();
    return {from_eigen(dec.matrixU()),
            std::vector<double>(s.data(), s.data() + s.size()),
            from_eigen(dec.matrixV().transpose())};
}

inline std::vector<double> singular_values(const DenseMatrix& a) {
    Eigen::BDCSVD<Eigen::MatrixXd> dec(eigen_view(a));
    detail::check_svd_converged(dec.info(), a);
    const Eigen::VectorXd& s = dec.singularValues();
    return {s.data(), s.data() + s.size()};
}

/// Singular value thresholding D_tau(a) = U max(S - tau*I, 0) V^T, the
/// proximal operator of tau * nuclear norm.
inline DenseMatrix svt(const DenseMatrix& a, double tau) {
    if (tau < 0.0) {
        throw std::invalid_argument("svt threshold must be non-negative, got " + std::to_string(tau));
    }
    Eigen::BDCSVD<Eigen::MatrixXd> dec(eigen_view(a), Eigen::ComputeThinU | Eigen::ComputeThinV);
    detail::check_svd_converged(dec.info(), a);
    Eigen::VectorXd s = dec.singularValues();
    for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = std::max(s(i) - tau, 0.0);
    // keep only the surviving directions; all-zero s still yields a zero matrix
    Eigen::Index kept = 0;
    while (kept < s.size() && s(kept) > 0.0) ++kept;
    Eigen::MatrixXd out(a.rows(), a.cols());
    if (kept == 0) {
        out.setZero();
    } else {
        out.noalias() = dec.matrixU().leftCols(kept) * s.head(kept).asDiagonal() *
                        dec.matrixV().leftCols(kept).transpose();
    }
    return from_eigen(out);
}

inline double nuclear_norm(const DenseMatrix& a) {
    double acc = 0.0;
    for (double s : singular_values(a)) acc += s;
    return acc;
}

/// Count of singular values above rel_tol * s_max. The 1e-12 default is the
/// reporting convention; looser thresholds absorb accumulated roundoff.
inline std::int64_t numerical_rank(std::span<const double> s, double rel_tol = 1e-12) {
    if (s.empty()) return 0;
    const double cutoff = rel_tol * s[0];
    std::int64_t rank = 0;
    for (double v : s) {
        if (v > cutoff) ++rank;
    }
    return rank;
}

}  // namespace trc
