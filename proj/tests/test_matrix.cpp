#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <functional>
#include <algorithm>
#include <doctest.h>

#include <random>

#include "qlm/matrix.hpp"

using namespace qlm;

namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }

// Brute-force rank via enumeration of square minors; independent of the
// elimination path in reduce().
Rational det(const QMatrix& m) {
    if (m.rows() == 0) return 1;
    Rational out = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (m.at(0, j) == 0) continue;
        QMatrix sub(m.rows() - 1, m.cols() - 1);
        for (std::size_t r = 1; r < m.rows(); ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < m.cols(); ++c) {
                if (c == j) continue;
                sub.at(r - 1, cc++) = m.at(r, c);
            }
        }
        Rational term = m.at(0, j) * det(sub);
        out += (j % 2) ? -term : term;
    }
    return out;
}

std::size_t rank_by_minors(const QMatrix& m) {
    std::size_t best = 0;
    std::size_t n = std::min(m.rows(), m.cols());
    for (std::size_t k = 1; k <= n; ++k) {
        // all k-subsets of rows and cols
        std::vector<std::size_t> rs(k), cs(k);
        bool found = false;
        std::function<void(std::size_t, std::size_t)> rows_rec = [&](std::size_t start,
                                                                     std::size_t depth) {
            if (found) return;
            if (depth == k) {
                std::function<void(std::size_t, std::size_t)> cols_rec = [&](std::size_t cstart,
                                                                             std::size_t cdepth) {
                    if (found) return;
                    if (cdepth == k) {
                        QMatrix sub(k, k);
                        for (std::size_t i = 0; i < k; ++i)
                            for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = m.at(rs[i], cs[j]);
                        if (det(sub) != 0) found = true;
                        return;
                    }
                    for (std::size_t c = cstart; c < m.cols(); ++c) {
                        cs[cdepth] = c;
                        cols_rec(c + 1, cdepth + 1);
                    }
                };
                cols_rec(0, 0);
                return;
            }
            for (std::size_t r = start; r < m.rows(); ++r) {
                rs[depth] = r;
                rows_rec(r + 1, depth + 1);
            }
        };
        rows_rec(0, 0);
        if (found) best = k;
    }
    return best;
}

}  // namespace

TEST_CASE("identity reduces to full rank") {
    auto r = reduce(QMatrix::identity(2));
    CHECK(r.rank == 2);
    CHECK(r.kernel_basis.empty());
}

TEST_CASE("zero matrix has rank 0 and full kernel") {
    auto r = reduce(QMatrix(3, 4));
    CHECK(r.rank == 0);
    CHECK(r.kernel_basis.size() == 4);
}

TEST_CASE("rank-1 matrix kernel") {
    QMatrix m = QMatrix::from_rows({{q(1), q(2)}, {q(2), q(4)}});
    auto r = reduce(m);
    CHECK(r.rank == 1);
    REQUIRE(r.kernel_basis.size() == 1);
    // kernel spanned by (-2, 1)
    const auto& k = r.kernel_basis[0];
    CHECK(k[0] * q(1) == -k[1] * q(2));
    CHECK(rank_by_minors(m) == 1);
}

TEST_CASE("rank + kernel dim = columns, and rank matches minor oracle") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
        QMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = q(coef(rng), 1 + rng() % 3);
        auto r = reduce(m);
        CHECK(r.rank + r.kernel_basis.size() == cols);
        CHECK(r.rank == rank_by_minors(m));
        for (const auto& k : r.kernel_basis) {
            auto v = m.apply(k);
            for (const auto& x : v) CHECK(x == 0);
        }
    }
}

TEST_CASE("rank invariant under column permutation") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t rows = 2 + rng() % 3, cols = 2 + rng() % 4;
        QMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                m.at(i, j) = q((int)(rng() % 7) - 3, 1 + rng() % 2);
        std::vector<std::size_t> perm(cols);
        for (std::size_t j = 0; j < cols; ++j) perm[j] = j;
        std::shuffle(perm.begin(), perm.end(), rng);
        QMatrix p(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) p.at(i, j) = m.at(i, perm[j]);
        CHECK(rank(m) == rank(p));
    }
}

TEST_CASE("solve finds exact solutions and rejects inconsistent systems") {
    QMatrix m = QMatrix::from_rows({{q(2), q(1)}, {q(4), q(2)}});
    auto sol = solve(m, {q(1), q(2)});
    REQUIRE(sol.has_value());
    auto check = m.apply(*sol);
    CHECK(check[0] == q(1));
    CHECK(check[1] == q(2));
    CHECK(!solve(m, {q(1), q(3)}).has_value());
}

TEST_CASE("linear solver replays row ops for many right-hand sides") {
    QMatrix m = QMatrix::from_rows({{q(1), q(2), q(0)}, {q(0), q(1), q(1)}, {q(1), q(3), q(1)}});
    LinearSolver s(m);
    std::mt19937 rng(3);
    for (int t = 0; t < 10; ++t) {
        std::vector<Rational> x = {q((int)(rng() % 9) - 4), q((int)(rng() % 9) - 4, 3),
                                   q((int)(rng() % 9) - 4)};
        auto b = m.apply(x);
        auto sol = s.solve(b);
        REQUIRE(sol.has_value());
        CHECK(m.apply(*sol) == b);
    }
}

TEST_CASE("rational parse/format round trip") {
    CHECK(rat_str(rat_parse("6/4")) == "3/2");
    CHECK(rat_str(rat_parse("-2/4")) == "-1/2");
    CHECK(rat_str(rat_parse("7")) == "7");
    CHECK_THROWS(rat_parse("1.5"));
    CHECK_THROWS(rat_parse("1/0"));
}
