#include <doctest.h>

#include <map>

#include "novikov/cohomology.hpp"
#include "novikov/error.hpp"
#include "novikov/io.hpp"
#include "novikov/models.hpp"
#include "oracle.hpp"

using namespace novikov;

using Betti = std::vector<std::size_t>;

TEST_CASE("every catalog model builds and matches an independent Betti oracle") {
    for (const auto& e : catalog()) {
        CAPTURE(e.name);
        Model m = build_model(e.name);
        CHECK_FALSE(validate_complex(*m.complex));
        CHECK(m.complex->f_vector() == m.descriptor.expected_f_vector);
        CHECK(m.complex->euler_characteristic() == m.descriptor.expected_euler);
        if (m.complex->total_count() < 2000) CHECK(oracle::betti(*m.complex, oracle::unit_weight()) == m.descriptor.untwisted_betti);
    }
}

TEST_CASE("catalog examples") {
    auto s2 = build_model("sphere", {2});
    CHECK(s2.complex->f_vector() == Betti{4, 6, 4});
    CHECK(s2.descriptor.expected_euler == 2);
    CHECK(s2.descriptor.untwisted_betti == Betti{1, 0, 1});

    auto g2 = build_model("surface", {2});
    CHECK(g2.descriptor.expected_euler == -2);
    CHECK(g2.descriptor.untwisted_betti == Betti{1, 4, 1});
    CHECK(oracle::betti(*g2.complex, oracle::unit_weight()) == Betti{1, 4, 1});

    auto t = build_model("torus_2d");
    CHECK(t.complex->f_vector() == Betti{9, 27, 18});

    for (int g = 0; g <= 4; ++g) CHECK(surface(g)->euler_characteristic() == 2 - 2 * g);

    CHECK_THROWS_AS(build_model("klein_bottle"), Error);
    CHECK_THROWS_AS(build_model("circle", {2}), Error);
    CHECK_THROWS_AS(build_model("sphere", {1, 2}), Error);
}

TEST_CASE("cp2 asset: closed 4-pseudomanifold with the right invariants") {
    auto c = cp2();
    CHECK(c->f_vector() == Betti{9, 36, 84, 90, 36});
    CHECK(c->euler_characteristic() == 3);
    // every 3-simplex lies in exactly two 4-simplices
    std::map<Simplex, int> cofaces;
    for (const auto& f : c->simplices(4))
        for (std::size_t i = 0; i < f.size(); ++i) {
            Simplex face = f;
            face.erase(face.begin() + static_cast<long>(i));
            ++cofaces[face];
        }
    CHECK(cofaces.size() == c->count(3));
    for (const auto& [face, n] : cofaces) CHECK(n == 2);
    CHECK(oracle::betti(*c, oracle::unit_weight()) == Betti{1, 0, 1, 0, 1});
    // vertex links of a 9-vertex CP^2 are 8-vertex 3-spheres: each vertex is in 20 facets
    std::vector<int> deg(9, 0);
    for (const auto& f : c->simplices(4))
        for (Vertex v : f) ++deg[v];
    for (int d : deg) CHECK(d == 20);
}

TEST_CASE("projective space generator pairs to one and squares to a generator") {
    for (int m : {1, 2}) {
        auto p = projective_space(m);
        REQUIRE(p.descriptor.h_generator);
        CHECK(pairing(*p.descriptor.h_generator, p.descriptor.h_cycle) == Rational(1));
    }
}

TEST_CASE("generic_system examples") {
    auto c = circle(3);
    auto one = generic_system(c, {Rational(1)});
    CHECK_FALSE(validate_system(one));
    for (const auto& loop : loop_basis(c)) CHECK(monodromy(one, loop) == Rational(1));
    auto s = generic_system(c, {Rational(2)});
    std::vector<Vertex> loop{0, 1, 2, 0};
    auto mono = monodromy(s, loop);
    CHECK((mono == Rational(2) || mono == Rational(1, 2)));
    CHECK(monodromy(s, loop_basis(c).at(0)) == Rational(2));

    auto g2 = surface(2);
    auto sg = generic_system(g2, {Rational(2), Rational(1), Rational(1), Rational(1)});
    CHECK(betti(g2, sg).betti == Betti{0, 2, 0});
    CHECK_THROWS_AS(generic_system(c, {Rational(2), Rational(3)}), Error);
    CHECK(generic_system(sphere(2), {}) == LocalSystem::trivial(sphere(2)));
}

TEST_CASE("generic_system hits every prescribed loop weight") {
    for (const auto& c : {torus_2d(), surface(2), surface(3)}) {
        auto loops = loop_basis(c);
        std::vector<Rational> w;
        for (std::size_t i = 0; i < loops.size(); ++i) w.push_back(Rational(static_cast<long long>(i + 2), 3));
        auto s = generic_system(c, w);
        CHECK_FALSE(validate_system(s));
        for (std::size_t i = 0; i < loops.size(); ++i) CHECK(monodromy(s, loops[i]) == w[i]);
    }
}

TEST_CASE("wedge of circles and slices") {
    auto g2 = surface(2);
    auto w = wedge_of_circles(g2, 2);
    CHECK(w.complex()->dimension() == 1);
    CHECK(oracle::betti(*w.complex(), oracle::unit_weight()) == Betti{1, 2});

    auto prod = product(circle(3), sphere(2));
    auto slice = product_slice(prod, 1, 0);
    CHECK(*slice.complex() == *circle(3));
    auto fibre = product_slice(prod, 2, 1);
    CHECK(*fibre.complex() == *sphere(2));

    auto cp = cp2();
    auto line = cp1_in_cp2(cp);
    CHECK(line.complex()->f_vector() == Betti{4, 6, 4});
}

TEST_CASE("complex files round trip and report closure") {
    LoadLog log;
    auto c = parse_complex_json(R"({"name":"tri","vertex_count":3,"simplices":[[0,1,2]]})", &log);
    CHECK(c->f_vector() == Betti{3, 3, 1});
    REQUIRE(log.size() == 1);
    CHECK(log[0].find("6 added") != std::string::npos);
    auto again = parse_complex_json(complex_to_json(*c).dump());
    CHECK(*again == *c);

    auto full = parse_complex_json(R"({"vertex_count":2,"maximal":false,"simplices":[[0],[1],[0,1]]})");
    CHECK(full->f_vector() == Betti{2, 1});
    auto code = [](const std::string& text) {
        try {
            parse_complex_json(text);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::DimensionMismatch;  // sentinel: no error
    };
    CHECK(code(R"({"vertex_count":2,"maximal":false,"simplices":[[0,1]]})") == ErrorCode::InvalidComplex);
    CHECK(code(R"({"vertex_count":3,"simplices":[[1,0]]})") == ErrorCode::ParseError);
    CHECK(code(R"({"vertex_count":3,"simplices":[[1,1]]})") == ErrorCode::InvalidComplex);
    CHECK(code(R"({"vertex_count":2,"simplices":[[0,5]]})") == ErrorCode::InvalidComplex);
    CHECK(code(R"({"vertex_count":"x","simplices":[]})") == ErrorCode::ParseError);
    CHECK(code(R"({"vertex_count":2,)") == ErrorCode::ParseError);
}

TEST_CASE("system files round trip and are validated") {
    auto tri = simplex(2);
    LoadLog log;
    auto s = parse_system_json(R"({"edges":[[0,1,"2/1"],[1,2,"3"],[0,2,"12/2"]]})", tri, &log);
    CHECK(s.weight(0, 1) == Rational(2));
    CHECK(s.weight(0, 2) == Rational(6));
    REQUIRE(log.empty());

    auto c = circle(3);
    auto partial = parse_system_json(R"({"edges":[[0,1,"2/1"]]})", c, &log);
    CHECK(partial.weight(1, 2).is_one());
    CHECK(log.size() == 1);
    CHECK(parse_system_json(system_to_json(partial).dump(), c) == partial);

    CHECK_THROWS_AS(parse_system_json(R"({"edges":[[0,1,"2"],[1,2,"3"],[0,2,"5"]]})", tri), Error);
    CHECK_THROWS_AS(parse_system_json(R"({"edges":[[0,1,"-2"]]})", c), Error);
    CHECK_THROWS_AS(parse_system_json(R"({"edges":[[0,1,"1/0"]]})", c), Error);
    CHECK_THROWS_AS(parse_system_json(R"({"edges":[[0,7,"2"]]})", c), Error);
}
