#include <doctest.h>

#include <random>
#include <set>

#include "homlab/fp_matrix.hpp"
#include "homlab/group.hpp"
#include "homlab/int_matrix.hpp"
#include "homlab/linear_system.hpp"
#include "oracles.hpp"

using namespace homlab;

TEST_CASE("group arithmetic") {
    FiniteAbelianGroup g({2, 3});
    CHECK(g.size() == 6);
    CHECK(g.add({1, 2}, {1, 2}) == GroupElement{0, 1});
    CHECK(g.neg({1, 1}) == GroupElement{1, 2});
    CHECK(g.scale(-1, {0, 1}) == GroupElement{0, 2});
    CHECK(g.is_zero(g.sub({1, 2}, {1, 2})));
    CHECK(g.one() == GroupElement{1, 1});
    for (std::uint64_t c = 0; c < g.size(); ++c) CHECK(g.encode(g.decode(c)) == c);
    CHECK(g.sum({{1, 1}, {1, 1}, {0, 1}}) == GroupElement{0, 0});
    CHECK(FiniteAbelianGroup::parse("2x2") == FiniteAbelianGroup({2, 2}));
    CHECK(FiniteAbelianGroup::parse("2,3") == g);
    CHECK(g.to_string() == "2x3");
    CHECK(g.parse_element(g.format({1, 2})) == GroupElement{1, 2});
    CHECK_THROWS_AS(FiniteAbelianGroup({}), std::invalid_argument);
    CHECK_THROWS_AS(FiniteAbelianGroup({0}), std::invalid_argument);
    CHECK_FALSE(g.contains({2, 0}));
    auto z4 = FiniteAbelianGroup::cyclic(4);
    CHECK(parse_group_vector(z4, "1,0,3") == GroupVector{{1}, {0}, {3}});
    CHECK(format_group_vector(z4, {{1}, {0}, {3}}) == "1,0,3");
}

namespace {

IntMatrix random_int_matrix(std::size_t r, std::size_t c, long range, std::mt19937_64& rng) {
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long>(rng() % (2 * range + 1)) - range;
    return m;
}

mpz_class cofactor_det(const IntMatrix& a) {
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    if (n == 1) return a(0, 0);
    mpz_class d = 0;
    for (std::size_t c = 0; c < n; ++c) {
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0, jj = 0; j < n; ++j)
                if (j != c) minor(i - 1, jj++) = a(i, j);
        d += (c % 2 ? -1 : 1) * a(0, c) * cofactor_det(minor);
    }
    return d;
}

} // namespace

TEST_CASE("determinant agrees with cofactor expansion") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 1 + rng() % 4;
        IntMatrix a = random_int_matrix(n, n, 5, rng);
        CHECK(determinant(a) == cofactor_det(a));
    }
}

TEST_CASE("Smith normal form postconditions") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 60; ++t) {
        IntMatrix a = random_int_matrix(1 + rng() % 5, 1 + rng() % 5, 6, rng);
        SmithForm s = smith_normal_form(a);
        CHECK_NOTHROW(check_smith_form(a, s));
        CHECK(s.u * a * s.v == s.d);
        CHECK(abs(determinant(s.u)) == 1);
        CHECK(abs(determinant(s.v)) == 1);
        for (std::size_t i = 0; i + 1 < std::min(a.rows(), a.cols()); ++i)
            if (s.d(i + 1, i + 1) != 0) CHECK(s.d(i + 1, i + 1) % s.d(i, i) == 0);
        if (a.rows() == a.cols()) {
            mpz_class prod = 1;
            for (std::size_t i = 0; i < a.rows(); ++i) prod *= s.d(i, i);
            CHECK(prod == abs(determinant(a)));
        }
    }
    IntMatrix z(2, 3);
    SmithForm s = smith_normal_form(z);
    CHECK(s.rank == 0);
    IntMatrix bad = IntMatrix{{2, 0}, {0, 3}};
    SmithForm wrong{IntMatrix::identity(2), bad, IntMatrix::identity(2), 2};
    CHECK_THROWS_AS(check_smith_form(bad, wrong), std::logic_error);
}

TEST_CASE("solution counts agree with enumeration over cyclic groups") {
    std::mt19937_64 rng(6);
    for (long n : {2L, 3L, 4L, 6L, 8L}) {
        auto gamma = FiniteAbelianGroup::cyclic(static_cast<std::uint64_t>(n));
        for (int t = 0; t < 25; ++t) {
            const std::size_t rows = 1 + rng() % 3, cols = 1 + rng() % 4;
            std::vector<std::vector<long>> a(rows, std::vector<long>(cols));
            IntMatrix m(rows, cols);
            std::vector<long> b(rows);
            GroupVector gb;
            for (std::size_t r = 0; r < rows; ++r) {
                for (std::size_t c = 0; c < cols; ++c) {
                    a[r][c] = static_cast<long>(rng() % 5) - 2;
                    m(r, c) = a[r][c];
                }
                b[r] = static_cast<long>(rng() % n);
                gb.push_back({static_cast<std::uint64_t>(b[r])});
            }
            SolutionCount sc = count_solutions(m, gb, gamma);
            CHECK(sc.count == oracle::count_mod_solutions(a, b, cols, n));
            CHECK(sc.witness.has_value() == (sc.count > 0));
            if (sc.witness) CHECK(satisfies(m, *sc.witness, gb, gamma));
        }
    }
}

TEST_CASE("solution counts over product groups multiply per component") {
    std::mt19937_64 rng(8);
    FiniteAbelianGroup gamma({2, 3});
    for (int t = 0; t < 25; ++t) {
        const std::size_t rows = 1 + rng() % 3, cols = 1 + rng() % 3;
        IntMatrix m(rows, cols);
        std::vector<std::vector<long>> a(rows, std::vector<long>(cols));
        std::vector<long> b2(rows), b3(rows);
        GroupVector gb;
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) m(r, c) = a[r][c] = static_cast<long>(rng() % 3) - 1;
            b2[r] = static_cast<long>(rng() % 2);
            b3[r] = static_cast<long>(rng() % 3);
            gb.push_back({static_cast<std::uint64_t>(b2[r]), static_cast<std::uint64_t>(b3[r])});
        }
        CHECK(count_solutions(m, gb, gamma).count ==
              oracle::count_mod_solutions(a, b2, cols, 2) * oracle::count_mod_solutions(a, b3, cols, 3));
    }
}

namespace {

FpMatrix random_fp(std::size_t r, std::size_t c, std::uint32_t p, std::mt19937_64& rng) {
    FpMatrix m(r, c, p);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<std::uint32_t>(rng() % p);
    return m;
}

// Rank as log_p of the number of distinct vectors m x.
std::size_t image_rank(const FpMatrix& m) {
    const std::uint32_t p = m.prime();
    std::set<std::vector<std::uint32_t>> image;
    std::vector<std::uint32_t> x(m.cols(), 0);
    while (true) {
        std::vector<std::uint32_t> y(m.rows(), 0);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) y[i] = (y[i] + m(i, j) * x[j]) % p;
        image.insert(y);
        std::size_t i = 0;
        while (i < x.size() && ++x[i] == p) x[i++] = 0;
        if (i == x.size()) break;
    }
    std::size_t r = 0;
    for (std::size_t s = 1; s < image.size(); s *= p) ++r;
    return r;
}

} // namespace

TEST_CASE("F_p linear algebra") {
    std::mt19937_64 rng(10);
    CHECK(is_prime(7));
    CHECK_FALSE(is_prime(9));
    CHECK_THROWS_AS(require_prime(4), std::invalid_argument);
    CHECK(inverse_mod(3, 7) == 5);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (int t = 0; t < 30; ++t) {
            FpMatrix m = random_fp(1 + rng() % 3, 1 + rng() % 3, p, rng);
            CHECK(fp_rank(m) == image_rank(m));
            for (const auto& v : fp_nullspace(m)) {
                for (std::size_t i = 0; i < m.rows(); ++i) {
                    std::uint64_t s = 0;
                    for (std::size_t j = 0; j < m.cols(); ++j) s += std::uint64_t(m(i, j)) * v[j];
                    CHECK(s % p == 0);
                }
            }
            CHECK(fp_nullspace(m).size() == m.cols() - fp_rank(m));
            std::vector<std::uint32_t> b(m.rows());
            for (auto& x : b) x = static_cast<std::uint32_t>(rng() % p);
            if (auto x = fp_solve(m, b)) {
                for (std::size_t i = 0; i < m.rows(); ++i) {
                    std::uint64_t s = 0;
                    for (std::size_t j = 0; j < m.cols(); ++j) s += std::uint64_t(m(i, j)) * (*x)[j];
                    CHECK(s % p == b[i]);
                }
            }
            FpMatrix sq = random_fp(m.rows(), m.rows(), p, rng);
            auto inv = fp_inverse(sq);
            CHECK(inv.has_value() == fp_is_invertible(sq));
            CHECK(inv.has_value() == (fp_rank(sq) == sq.rows()));
            if (inv) CHECK(sq * *inv == FpMatrix::identity(sq.rows(), p));
        }
    }
    FpMatrix a(3, {{1, 2}, {0, 1}});
    CHECK((a + a)(0, 1) == 1);
    CHECK((a - a) == FpMatrix(2, 2, 3));
}
