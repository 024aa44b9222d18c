#include <doctest.h>

#include <random>

#include "novikov/error.hpp"
#include "novikov/linalg.hpp"
#include "oracle.hpp"

using namespace novikov;

TEST_CASE("rational arithmetic is exact and canonical") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK((Rational(2, 3) * Rational(3, 2)).is_one());
    CHECK(Rational::parse("6/4") == Rational(3, 2));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK(Rational(3, 2).to_fraction_string() == "3/2");
    CHECK(Rational(5).to_fraction_string() == "5/1");
    CHECK_THROWS_AS(Rational::parse("1/0"), Error);
    CHECK_THROWS_AS(Rational::parse("abc"), Error);
    CHECK_THROWS_AS(Rational::parse(""), Error);
}

TEST_CASE("rational overflow promotes to big and demotes back") {
    Rational big(1);
    for (int i = 0; i < 5; ++i) big *= Rational(1'000'000'007);
    CHECK_FALSE(big.is_small());
    mpq_class oracle = 1;
    for (int i = 0; i < 5; ++i) oracle *= 1'000'000'007;
    CHECK(big.to_mpq() == oracle);
    Rational back = big;
    for (int i = 0; i < 5; ++i) back /= Rational(1'000'000'007);
    CHECK(back.is_small());
    CHECK(back.is_one());
    CHECK(Rational(2).pow(-3) == Rational(1, 8));
    CHECK(Rational(2).pow(100).to_mpq() == mpq_class(mpz_class(1) << 100));
}

TEST_CASE("sparse vectors drop zeros and merge duplicates") {
    SparseVector v({{3, Rational(1)}, {1, Rational(2)}, {3, Rational(-1)}, {0, Rational(0)}});
    REQUIRE(v.size() == 1);
    CHECK(v.at(1) == Rational(2));
    SparseVector w = SparseVector::unit(1, Rational(-2));
    v.axpy(Rational(1), w);
    CHECK(v.empty());
}

TEST_CASE("rank examples") {
    CHECK(rank(SparseMatrix(2, 3)) == 0);
    CHECK(rank(SparseMatrix::identity(4)) == 4);
    CHECK(rank(SparseMatrix::from_dense({{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("kernel examples") {
    CHECK(kernel_basis(SparseMatrix::identity(3)).empty());
    auto k0 = kernel_basis(SparseMatrix(2, 3));
    CHECK(k0.size() == 3);
    oracle::Dense span;
    for (const auto& v : k0) span.push_back(oracle::from_sparse(v, 3));
    CHECK(oracle::rank(span) == 3);

    auto m = SparseMatrix::from_dense({{1, 1, 0}, {0, 1, 1}});
    auto k = kernel_basis(m);
    REQUIRE(k.size() == 1);
    auto v = oracle::from_sparse(k[0], 3);
    // proportional to (1, -1, 1)
    CHECK(v[0] != 0);
    CHECK(v[1] == -v[0]);
    CHECK(v[2] == v[0]);
}

TEST_CASE("solve examples") {
    SparseVector b({{0, Rational(1)}, {2, Rational(5, 3)}});
    auto x = solve(SparseMatrix::identity(3), b);
    REQUIRE(x);
    CHECK(*x == b);
    CHECK_FALSE(solve(SparseMatrix(2, 2), SparseVector::unit(0)).has_value());
    auto y = solve(SparseMatrix::from_dense({{2}}), SparseVector::unit(0, Rational(3)));
    REQUIRE(y);
    CHECK(y->at(0) == Rational(3, 2));
}

TEST_CASE("rank, kernel and solve agree with a dense oracle on random matrices") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> dim(1, 9), val(-3, 3), coin(0, 2);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = dim(rng), c = dim(rng);
        std::vector<std::vector<Rational>> rows(r, std::vector<Rational>(c));
        oracle::Dense d = oracle::zeros(r, c);
        // low-rank products hit the dependent cases often
        std::size_t inner = 1 + rng() % std::min<std::size_t>(r, c);
        oracle::Dense a = oracle::zeros(r, inner), bm = oracle::zeros(inner, c);
        for (auto& row : a)
            for (auto& x : row) x = coin(rng) ? val(rng) : 0;
        for (auto& row : bm)
            for (auto& x : row) x = mpq_class(val(rng), 1 + (rng() % 3));
        d = oracle::multiply(a, bm);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) rows[i][j] = Rational(d[i][j]);
        SparseMatrix m = SparseMatrix::from_dense(rows);
        std::size_t rk = oracle::rank(d);
        CHECK(rank(m) == rk);

        auto ker = kernel_basis(m);
        CHECK(ker.size() == c - rk);
        oracle::Dense kd;
        for (const auto& v : ker) {
            CHECK(m.apply(v).empty());
            kd.push_back(oracle::from_sparse(v, c));
        }
        CHECK(oracle::rank(kd) == ker.size());

        // b in the image is solvable, a perturbed b is not when the image is proper
        std::vector<Rational> xs(c);
        for (auto& x : xs) x = Rational(val(rng));
        SparseVector b = m.apply(SparseVector::from_dense(xs));
        auto sol = solve(m, b);
        REQUIRE(sol);
        CHECK(m.apply(*sol) == b);
        if (rk < r) {
            for (Index row = 0; row < r; ++row) {
                oracle::Dense aug = d;
                for (std::size_t i = 0; i < r; ++i) aug[i].push_back(i == row ? 1 : 0);
                bool outside = oracle::rank(aug) > rk;
                CHECK(solve(m, SparseVector::unit(row)).has_value() == !outside);
            }
        }
    }
}

TEST_CASE("quotient coordinates vanish exactly on the subspace") {
    std::vector<SparseVector> w{SparseVector({{0, Rational(1)}, {1, Rational(1)}})};
    Quotient qt(3, w);
    CHECK(qt.dim() == 2);
    auto c = qt.coordinates(SparseVector({{0, Rational(2)}, {1, Rational(2)}}));
    for (const auto& x : c) CHECK(x.is_zero());
    auto u = qt.coordinates(SparseVector::unit(2));
    CHECK(std::count_if(u.begin(), u.end(), [](const Rational& x) { return !x.is_zero(); }) == 1);
}
