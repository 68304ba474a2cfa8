#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace oddarc;

namespace {

IntegerMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int range) {
    std::uniform_int_distribution<int> d(-range, range);
    IntegerMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = d(rng);
    return m;
}

bool is_unimodular(const IntegerMatrix& u) {
    Integer d = determinant(u);
    return d == 1 || d == -1;
}

}  // namespace

TEST_CASE("hermite form is reached by a unimodular transform") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        IntegerMatrix m = random_matrix(rng, 1 + trial % 5, 1 + (trial / 3) % 5, 6);
        HermiteForm h = hermite_rows(m);
        CHECK(h.u * m == h.h);
        CHECK(is_unimodular(h.u));
        // pivots strictly move right and are positive, entries above pivots are reduced
        for (std::size_t r = 0; r < h.pivot_cols.size(); ++r) {
            std::size_t c = h.pivot_cols[r];
            CHECK(h.h(r, c) > 0);
            if (r > 0) CHECK(h.pivot_cols[r - 1] < c);
            for (std::size_t above = 0; above < r; ++above) {
                CHECK(h.h(above, c) >= 0);
                CHECK(h.h(above, c) < h.h(r, c));
            }
        }
        CHECK(h.pivot_cols.size() == rank(m));
    }
}

TEST_CASE("smith form divisibility and factorisation") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        IntegerMatrix m = random_matrix(rng, 1 + trial % 4, 1 + (trial / 2) % 4, 5);
        SmithForm s = smith_normal_form(m);
        CHECK(s.u * m * s.v == s.d);
        CHECK(is_unimodular(s.u));
        CHECK(is_unimodular(s.v));
        for (std::size_t i = 0; i + 1 < s.invariants.size(); ++i)
            CHECK(mpz_divisible_p(s.invariants[i + 1].get_mpz_t(), s.invariants[i].get_mpz_t()));
    }
}

TEST_CASE("determinant agrees with the Leibniz expansion") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 1 + trial % 5;
        IntegerMatrix m = random_matrix(rng, n, n, 9);
        CHECK(determinant(m) == oracle::leibniz_determinant(m));
    }
}

TEST_CASE("kernel basis is exact and saturated") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        IntegerMatrix m = random_matrix(rng, 1 + trial % 3, 3 + trial % 4, 4);
        IntegerMatrix k = kernel_basis(m);
        CHECK(k.rows() == m.cols());
        CHECK(k.cols() == m.cols() - rank(m));
        CHECK((m * k).is_zero());
        if (k.cols() > 0) {
            SmithForm s = smith_normal_form(k);
            for (const auto& inv : s.invariants) CHECK(inv == 1);
        }
    }
    // 2x + 4y = 0 has the saturated solution (2, -1), not (4, -2)
    IntegerMatrix m = IntegerMatrix::from_rows({{2, 4}}, 2);
    IntegerMatrix k = kernel_basis(m);
    REQUIRE(k.cols() == 1);
    CHECK(abs(k(0, 0)) == 2);
    CHECK(abs(k(1, 0)) == 1);
}

TEST_CASE("cokernel torsion and free rank") {
    Cokernel c = cokernel(IntegerMatrix::from_rows({{2, 0}, {0, 3}}, 2));
    CHECK(c.free_rank == 0);
    REQUIRE(c.torsion.size() == 1);
    CHECK(c.torsion[0] == 6);

    Cokernel d = cokernel(IntegerMatrix::from_rows({{2}, {0}}, 1));
    CHECK(d.free_rank == 1);
    REQUIRE(d.torsion.size() == 1);
    CHECK(d.torsion[0] == 2);
    CHECK((d.reduction * IntegerMatrix::from_rows({{2}, {0}}, 1)).is_zero());
    CHECK(d.reduction * d.free_basis == IntegerMatrix::identity(1));
}

TEST_CASE("integer solutions") {
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int trial = 0; trial < 30; ++trial) {
        IntegerMatrix a = random_matrix(rng, 3, 4, 4);
        std::vector<Integer> x(4);
        for (auto& v : x) v = d(rng);
        auto sol = solve_integer(a, a.apply(x));
        REQUIRE(sol.has_value());
        CHECK(a.apply(*sol) == a.apply(x));
    }
    CHECK_FALSE(solve_integer(IntegerMatrix::from_rows({{2, 4}}, 2), {Integer(1)}).has_value());
}

TEST_CASE("rank modulo a prime and rational spans") {
    IntegerMatrix m = IntegerMatrix::from_rows({{2, 0}, {0, 3}}, 2);
    CHECK(rank(m) == 2);
    CHECK(rank_mod(m, 2) == 1);
    CHECK(rank_mod(m, 3) == 1);
    CHECK(rank_mod(m, 5) == 2);
    IntegerMatrix a = IntegerMatrix::from_rows({{1, 0}, {1, 1}, {0, 1}}, 2);
    IntegerMatrix b = IntegerMatrix::from_rows({{2, 1}, {3, 2}, {1, 1}}, 2);
    CHECK(same_rational_span(a, b));
    CHECK_FALSE(same_rational_span(a, IntegerMatrix::from_rows({{1}, {0}, {0}}, 1)));
}

TEST_CASE("lattice echelon certificates reproduce their targets") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> d(-4, 4);
    LatticeEchelon e(4);
    std::vector<std::vector<Integer>> inputs;
    for (int t = 0; t < 3; ++t) {
        std::vector<Integer> v(4);
        for (auto& x : v) x = d(rng);
        inputs.push_back(v);
        e.add(v, t);
    }
    std::vector<Integer> target(4, Integer(0));
    for (int j = 0; j < 4; ++j) target[j] = 2 * inputs[0][j] - 3 * inputs[2][j];
    auto combo = e.express(target);
    REQUIRE(combo.has_value());
    std::vector<Integer> rebuilt(4, Integer(0));
    for (const auto& [tag, c] : *combo)
        for (int j = 0; j < 4; ++j) rebuilt[j] += c * inputs[tag][j];
    CHECK(rebuilt == target);
    CHECK_FALSE(LatticeEchelon(1).express({Integer(1)}).has_value());
}
