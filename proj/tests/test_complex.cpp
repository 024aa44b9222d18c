#include <doctest.h>

#include <random>

#include "novikov/error.hpp"
#include "novikov/local_system.hpp"
#include "novikov/models.hpp"
#include "oracle.hpp"

using namespace novikov;

TEST_CASE("validate_complex examples") {
    CHECK_FALSE(validate_complex(Complex(1, {{0}})));
    CHECK_FALSE(validate_complex(Complex(3, {{0}, {1}, {2}, {0, 1}, {1, 2}, {0, 2}})));
    auto err = validate_complex(Complex(3, {{0}, {1}, {2}, {1, 2}, {0, 2}, {0, 1, 2}}));
    REQUIRE(err);
    CHECK(err->kind == ValidationError::Kind::MissingFace);
    CHECK(err->detail == Simplex{0, 1});
    auto range = validate_complex(Complex(2, {{0}, {1}, {2}}));
    REQUIRE(range);
    CHECK(range->kind == ValidationError::Kind::VertexOutOfRange);
    CHECK_THROWS_AS(Complex::make(3, {{0, 1, 2}}), Error);
}

TEST_CASE("euler characteristic examples") {
    CHECK(point()->euler_characteristic() == 1);
    CHECK(circle(3)->euler_characteristic() == 0);
    CHECK(cp2()->euler_characteristic() == 3);
    auto c = cp2();
    auto f = c->f_vector();
    long alt = 0;
    for (std::size_t k = 0; k < f.size(); ++k) alt += (k % 2 ? -1 : 1) * static_cast<long>(f[k]);
    CHECK(alt == 3);
}

TEST_CASE("closure adds every face") {
    auto c = Complex::closure(4, {{0, 1, 2, 3}});
    CHECK(c->f_vector() == std::vector<std::size_t>{4, 6, 4, 1});
    CHECK(c->maximal_simplices() == std::vector<Simplex>{{0, 1, 2, 3}});
}

TEST_CASE("product examples") {
    auto pc = product(point(), circle(3));
    CHECK(pc.complex->f_vector() == circle(3)->f_vector());
    CHECK(*pc.complex == *circle(3));
    CHECK(pc.pr2.vertex_image == std::vector<Vertex>{0, 1, 2});

    auto seg = simplex(1);
    CHECK(product(seg, seg).complex->f_vector() == std::vector<std::size_t>{4, 5, 2});

    auto t = product(circle(3), circle(3)).complex;
    CHECK(t->f_vector() == std::vector<std::size_t>{9, 27, 18});
    CHECK(t->euler_characteristic() == 0);
    CHECK_FALSE(validate_complex(*t));
}

TEST_CASE("product f-vectors match the shuffle count") {
    // (p+q)-simplices of the staircase product: sum over a p-face and q-face of C(p+q, p)
    auto binom = [](std::size_t n, std::size_t k) {
        std::size_t r = 1;
        for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    };
    // top cells: one staircase per lattice path through each pair of top simplices
    auto count_product = [&](const Complex& a, const Complex& b, int d) {
        return a.count(a.dimension()) * b.count(b.dimension()) * binom(d, a.dimension());
    };
    std::vector<ComplexPtr> factors{simplex(1), simplex(2), circle(4), sphere(2)};
    for (const auto& a : factors)
        for (const auto& b : factors) {
            auto prod = product(a, b).complex;
            int d = a->dimension() + b->dimension();
            CHECK(prod->dimension() == d);
            CHECK(prod->count(d) == count_product(*a, *b, d));
            CHECK(prod->euler_characteristic() == a->euler_characteristic() * b->euler_characteristic());
        }
}

TEST_CASE("subcomplex selection") {
    auto c = circle(3);
    auto all = subcomplex(c, c->maximal_simplices(), SelectMode::CloseFaces);
    CHECK(*all.complex() == *c);
    auto pt = subcomplex(c, std::vector<Simplex>{{0}});
    CHECK(pt.count(0) == 1);
    CHECK(pt.count(1) == 0);
    CHECK_THROWS_AS(subcomplex(c, std::vector<Simplex>{{0, 1}}), Error);

    auto disc = simplex(2);
    auto bd = subcomplex(disc, std::vector<Simplex>{{0, 1}, {1, 2}, {0, 2}}, SelectMode::CloseFaces);
    CHECK(bd.complex()->f_vector() == std::vector<std::size_t>{3, 3});
}

TEST_CASE("validate_system examples") {
    auto tri = simplex(2);
    CHECK_FALSE(validate_system(LocalSystem::trivial(tri)));
    auto ok = LocalSystem::from_edges(tri, {{{0, 1}, Rational(2)}, {{1, 2}, Rational(3)}, {{0, 2}, Rational(6)}});
    CHECK_FALSE(validate_system(ok));
    auto bad = LocalSystem::from_edges(tri, {{{0, 1}, Rational(2)}, {{1, 2}, Rational(3)}, {{0, 2}, Rational(5)}});
    auto v = validate_system(bad);
    REQUIRE(v);
    CHECK(v->triangle == Simplex{0, 1, 2});
    CHECK(v->lhs == Rational(5));
    CHECK(v->rhs == Rational(6));
}

TEST_CASE("monodromy examples") {
    auto c = circle(3);
    std::vector<Vertex> loop{0, 1, 2, 0};
    CHECK(monodromy(LocalSystem::trivial(c), loop) == Rational(1));
    auto s = LocalSystem::from_edges(c, {{{0, 1}, Rational(2)}});
    CHECK(monodromy(s, loop) == Rational(2));
    std::vector<Vertex> reverse{0, 2, 1, 0};
    CHECK(monodromy(s, reverse) == Rational(1, 2));

    auto tri = simplex(2);
    auto valid = LocalSystem::from_edges(tri, {{{0, 1}, Rational(2)}, {{1, 2}, Rational(3)}, {{0, 2}, Rational(6)}});
    CHECK(monodromy(valid, loop) == Rational(1));
    std::vector<Vertex> open{0, 1};
    CHECK_THROWS_AS(monodromy(s, open), Error);
}

TEST_CASE("gauge transform examples") {
    auto c = circle(3);
    auto s = LocalSystem::trivial(c);
    std::vector<Rational> one(3, Rational(1));
    CHECK(gauge_transform(s, one) == s);
    std::vector<Rational> g{Rational(1), Rational(2), Rational(1)};
    auto t = gauge_transform(s, g);
    CHECK(t.weight(0, 1) == Rational(2));
    CHECK(t.weight(1, 2) == Rational(1, 2));
    CHECK(t.weight(0, 2) == Rational(1));
    std::vector<Vertex> loop{0, 1, 2, 0};
    CHECK(monodromy(t, loop) == Rational(1));

    auto tri = simplex(2);
    auto valid = LocalSystem::from_edges(tri, {{{0, 1}, Rational(2)}, {{1, 2}, Rational(3)}, {{0, 2}, Rational(6)}});
    std::vector<Rational> h{Rational(5, 3), Rational(1, 7), Rational(4)};
    CHECK_FALSE(validate_system(gauge_transform(valid, h)));
    std::vector<Rational> neg{Rational(1), Rational(-1), Rational(1)};
    CHECK_THROWS_AS(gauge_transform(valid, neg), Error);
}

TEST_CASE("gauge transforms compose") {
    std::mt19937_64 rng(3);
    auto c = surface(2);
    auto s = generic_system(c, {Rational(2), Rational(3, 5)});
    for (int trial = 0; trial < 10; ++trial) {
        auto g = oracle::random_gauge(rng, c->vertex_count());
        auto h = oracle::random_gauge(rng, c->vertex_count());
        std::vector<Rational> gh;
        for (std::size_t v = 0; v < g.size(); ++v) gh.push_back(g[v] * h[v]);
        CHECK(gauge_transform(gauge_transform(s, g), h) == gauge_transform(s, gh));
        for (const auto& loop : loop_basis(c)) CHECK(monodromy(gauge_transform(s, g), loop) == monodromy(s, loop));
    }
}

TEST_CASE("pullback examples") {
    auto c = circle(3);
    auto s = LocalSystem::from_edges(c, {{{0, 1}, Rational(2)}});
    CHECK(pullback_system(SimplicialMap::identity(c), s) == s);

    auto prod = product(c, sphere(2));
    auto ps = pullback_system(prod.pr1, s);
    CHECK_FALSE(validate_system(ps));
    for (std::size_t i = 0; i < prod.complex->count(1); ++i) {
        const auto& e = prod.complex->simplex(1, i);
        if (prod.pr1.vertex_image[e[0]] == prod.pr1.vertex_image[e[1]]) CHECK(ps.weight(i).is_one());
    }

    auto cover = circle_cover(3, 2);
    auto hex = pullback_system(cover, s);
    std::vector<Vertex> loop{0, 1, 2, 3, 4, 5, 0};
    CHECK(monodromy(hex, loop) == Rational(4));
}

TEST_CASE("pullbacks compose") {
    auto base = circle(3);
    auto s = LocalSystem::from_edges(base, {{{0, 1}, Rational(3)}, {{1, 2}, Rational(1, 2)}});
    auto f = circle_cover(3, 2);   // circle(6) -> circle(3)
    auto g = circle_cover(6, 2);   // circle(12) -> circle(6)
    CHECK(pullback_system(compose(f, g), s) == pullback_system(g, pullback_system(f, s)));
}
