#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gbsgi/graph6.hpp"
#include "helpers.hpp"

using namespace gbsgi;

TEST_CASE("known encodings") {
    // K2 on 2 vertices: header 'A' (2+63), one edge bit -> 0b100000+63 = '_'
    CHECK(emit_graph6(helpers::complete(2)) == "A_");
    CHECK(parse_graph6("A_").edges().size() == 1);
    // empty graph on 2 vertices
    CHECK(emit_graph6(Graph(2)) == "A?");
    // C5: known canonical string
    const Graph c5 = parse_graph6("DUW");
    CHECK(c5.order() == 5);
    CHECK(c5.edges().size() == 5);
    for (std::size_t v = 0; v < 5; ++v) CHECK(c5.degree(v) == 2);
}

TEST_CASE("roundtrip is exact for random graphs, including n > 62") {
    std::mt19937 rng(3);
    for (std::size_t order : {0u, 1u, 2u, 5u, 13u, 62u, 70u}) {
        for (int trial = 0; trial < 5; ++trial) {
            const Graph g = helpers::random_graph(rng, order);
            const Graph back = parse_graph6(emit_graph6(g));
            CHECK(back == g);
        }
    }
}

TEST_CASE("optional >>graph6<< prefix and trailing newline") {
    const Graph g = helpers::cycle(4);
    CHECK(parse_graph6(">>graph6<<" + emit_graph6(g)) == g);
    CHECK(parse_graph6(emit_graph6(g) + "\r\n") == g);
}

TEST_CASE("parse errors carry byte offsets") {
    CHECK_THROWS_AS(parse_graph6(""), Graph6ParseError);

    try {  // order byte below the printable range
        parse_graph6("\x20");
        FAIL("expected throw");
    } catch (const Graph6ParseError& e) {
        CHECK(e.offset == 0);
    }

    try {  // 5 vertices need 2 edge bytes; give 1
        parse_graph6("DU");
        FAIL("expected throw");
    } catch (const Graph6ParseError& e) {
        CHECK(e.offset == 1);
        CHECK(std::string(e.what()).find("length mismatch") != std::string::npos);
    }

    try {  // padding bits must be zero: 'DUX' sets a bit past the 10 edge bits
        parse_graph6("DUX");
        FAIL("expected throw");
    } catch (const Graph6ParseError& e) {
        CHECK(e.offset == 2);
        CHECK(std::string(e.what()).find("padding") != std::string::npos);
    }

    try {  // edge byte outside range
        parse_graph6(std::string("B") + '\x1f');
        FAIL("expected throw");
    } catch (const Graph6ParseError& e) {
        CHECK(e.offset == 1);
    }
}

TEST_CASE("multi-graph files parse line by line with labels") {
    const std::string file = emit_graph6(helpers::cycle(4)) + "\n\n" +
                             emit_graph6(helpers::complete(3)) + "\n";
    const auto graphs = parse_graph6_file(file);
    REQUIRE(graphs.size() == 2);
    CHECK(graphs[0].label() == "g0");
    CHECK(graphs[1].label() == "g1");
    CHECK(graphs[0].order() == 4);
    CHECK(graphs[1].order() == 3);
}

TEST_CASE("fixture files hold the documented graphs") {
    const auto [a, b] = helpers::ping6();
    CHECK(a.order() == 6);
    CHECK(b.order() == 6);
    CHECK(is_cospectral(a, b));
    CHECK_FALSE(brute_force_isomorphic(a, b).has_value());
    CHECK(a.connected());
    CHECK(b.connected());
}
