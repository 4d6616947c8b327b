#include <catch2/catch_amalgamated.hpp>

#include "trc/unfold.hpp"

#include <algorithm>
#include <map>

#include "oracles.hpp"

using trc::CircularUnfoldingSpec;
using trc::DenseMatrix;
using trc::DenseTensor;
using trc::Shape;

namespace {

// Def.-style index arithmetic, written out independently of the library:
// t from the two-branch formula, composite indices as mixed-radix numerals
// with the first-listed mode least significant.
void check_against_definition(const DenseTensor& x, std::int64_t k, std::int64_t d) {
    const auto n = x.order();
    std::int64_t t = k - d + 1;
    if (d > k) t += n;
    REQUIRE(t >= 1);
    REQUIRE(t <= n);

    const auto m = trc::circular_unfold(x, {k, d});

    std::vector<std::int64_t> idx(static_cast<std::size_t>(n));
    for (std::int64_t flat = 0; flat < x.size(); ++flat) {
        trc::multi_index(x.shape(), flat, idx);
        std::int64_t row = 0;
        std::int64_t row_stride = 1;
        for (std::int64_t j = 0; j < d; ++j) {
            const auto mode = static_cast<std::size_t>((t - 1 + j) % n);
            row += idx[mode] * row_stride;
            row_stride *= x.shape()[mode];
        }
        std::int64_t col = 0;
        std::int64_t col_stride = 1;
        for (std::int64_t j = 0; j < n - d; ++j) {
            const auto mode = static_cast<std::size_t>((k + j) % n);
            col += idx[mode] * col_stride;
            col_stride *= x.shape()[mode];
        }
        REQUIRE(m(row, col) == x[flat]);
    }
}

}  // namespace

TEST_CASE("unfolding sizes match the definition") {
    const DenseTensor x(Shape{2, 3, 4});

    const auto m22 = trc::circular_unfold(x, {2, 2});  // t = 1
    CHECK(m22.rows() == 6);
    CHECK(m22.cols() == 4);

    const auto m12 = trc::circular_unfold(x, {1, 2});  // t = 1-2+1+3 = 3
    CHECK(m12.rows() == 8);
    CHECK(m12.cols() == 3);
}

TEST_CASE("mode-1 unfolding with d=1 is the tensor read as a matrix") {
    const DenseTensor x(Shape{2, 2}, {1.0, 2.0, 3.0, 4.0});
    const auto m = trc::circular_unfold(x, {1, 1});
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 2);
    // column-major matrix over column-major tensor data: identity relabelling
    CHECK(m.data() == x.data());
    CHECK(m(0, 0) == 1.0);
    CHECK(m(1, 0) == 2.0);
    CHECK(m(0, 1) == 3.0);
    CHECK(m(1, 1) == 4.0);
}

TEST_CASE("invalid specs are rejected") {
    const DenseTensor x(Shape{2, 3, 4});
    CHECK_THROWS_AS(trc::circular_unfold(x, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(trc::circular_unfold(x, {4, 1}), std::invalid_argument);
    CHECK_THROWS_AS(trc::circular_unfold(x, {1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(trc::circular_unfold(x, {1, 0}), std::invalid_argument);
}

TEST_CASE("elements land exactly where the definition puts them") {
    trc::RandomStream rng(5);
    const auto x = oracles::random_tensor(Shape{2, 3, 4, 2}, rng);
    for (std::int64_t k = 1; k <= 4; ++k) {
        for (std::int64_t d = 1; d <= 3; ++d) {
            check_against_definition(x, k, d);
        }
    }
}

TEST_CASE("row*col count always equals the element count") {
    trc::RandomStream rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        Shape shape;
        const auto n = 2 + rng.below(5);
        for (std::int64_t j = 0; j < n; ++j) shape.push_back(1 + rng.below(4));
        const auto x = oracles::random_tensor(shape, rng);
        for (std::int64_t k = 1; k <= n; ++k) {
            for (std::int64_t d = 1; d < n; ++d) {
                const auto m = trc::circular_unfold(x, {k, d});
                REQUIRE(m.rows() * m.cols() == x.size());
            }
        }
    }
}

TEST_CASE("fold is the exact inverse of unfold") {
    trc::RandomStream rng(7);
    const auto x = oracles::random_tensor(Shape{2, 3, 4}, rng);
    for (std::int64_t k = 1; k <= 3; ++k) {
        for (std::int64_t d = 1; d <= 2; ++d) {
            const CircularUnfoldingSpec spec{k, d};
            const auto m = trc::circular_unfold(x, spec);
            const auto back = trc::circular_fold(m, spec, x.shape());
            REQUIRE(back.data() == x.data());  // bitwise
            const auto m2 = trc::circular_unfold(back, spec);
            REQUIRE(m2.data() == m.data());
        }
    }
}

TEST_CASE("folding edge cases") {
    const CircularUnfoldingSpec spec{2, 2};
    const Shape shape{2, 3, 4};

    const auto zero = trc::circular_fold(DenseMatrix(6, 4), spec, shape);
    for (std::int64_t i = 0; i < zero.size(); ++i) REQUIRE(zero[i] == 0.0);

    DenseMatrix m(6, 4);
    m(0, 0) = 5.0;
    const auto t = trc::circular_fold(m, spec, shape);
    const std::int64_t origin[] = {0, 0, 0};
    CHECK(t.at(origin) == 5.0);
    double sum = 0.0;
    for (std::int64_t i = 0; i < t.size(); ++i) sum += std::abs(t[i]);
    CHECK(sum == 5.0);

    CHECK_THROWS_AS(trc::circular_fold(DenseMatrix(4, 6), spec, shape), std::invalid_argument);
}

TEST_CASE("step d and N-d give transposed unfoldings") {
    trc::RandomStream rng(8);
    const auto x = oracles::random_tensor(Shape{2, 3, 2, 3, 2, 3}, rng);
    const auto n = x.order();

    // spec minimum: multiset of (rows, cols) of step d matches the multiset
    // of (cols, rows) of step N-d
    for (std::int64_t d = 1; d < n; ++d) {
        std::multiset<std::pair<std::int64_t, std::int64_t>> lhs, rhs;
        for (std::int64_t k = 1; k <= n; ++k) {
            const auto a = trc::circular_unfold(x, {k, d});
            lhs.insert({a.rows(), a.cols()});
            const auto b = trc::circular_unfold(x, {k, n - d});
            rhs.insert({b.cols(), b.rows()});
        }
        REQUIRE(lhs == rhs);
    }

    // stronger: X_<k,d> equals the exact transpose of X_<k-d mod N, N-d>
    for (std::int64_t d = 1; d < n; ++d) {
        for (std::int64_t k = 1; k <= n; ++k) {
            const std::int64_t k_partner = (k - d - 1 + 2 * n) % n + 1;
            const auto a = trc::circular_unfold(x, {k, d});
            const auto b = trc::circular_unfold(x, {k_partner, n - d});
            REQUIRE(a.rows() == b.cols());
            REQUIRE(a.cols() == b.rows());
            for (std::int64_t r = 0; r < a.rows(); ++r) {
                for (std::int64_t c = 0; c < a.cols(); ++c) {
                    REQUIRE(a(r, c) == b(c, r));
                }
            }
        }
    }
}
