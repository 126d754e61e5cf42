#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "gclass/network.hpp"
#include "gclass/oracle.hpp"

using namespace gclass;

TEST_CASE("minor patterns contain themselves and trees contain nothing") {
    for (const char* m : {"K4", "W4", "K5e", "K5", "K33"})
        CHECK(has_minor(minor_pattern(m), m));
    SmallGraph path;
    path.n = 7;
    for (int i = 0; i < 6; ++i) path.add_edge(i, i + 1);
    for (const char* m : {"K4", "W4", "K5e", "K5", "K33"}) CHECK_FALSE(has_minor(path, m));
}

TEST_CASE("known containments between the patterns") {
    CHECK(has_minor(minor_pattern("K5"), "K5e"));
    CHECK(has_minor(minor_pattern("K5e"), "W4"));
    CHECK(has_minor(minor_pattern("W4"), "K4"));
    CHECK_FALSE(has_minor(minor_pattern("K4"), "W4"));
    CHECK_FALSE(has_minor(minor_pattern("K5e"), "K5"));
    CHECK_FALSE(has_minor(minor_pattern("K33"), "K5"));
}

TEST_CASE("branch-set search agrees with the contraction recursion") {
    std::mt19937 rng(987654);
    for (int t = 0; t < 120; ++t) {
        SmallGraph g;
        g.n = 6;
        g.edges = rng() & ((1u << 15) - 1);
        for (const char* m : {"K4", "W4", "K5e"}) {
            SmallGraph h = minor_pattern(m);
            CHECK(has_minor(g, h) == has_minor_by_contraction(g, h));
        }
    }
}

TEST_CASE("connectivity filters") {
    SmallGraph k2;
    k2.n = 2;
    k2.add_edge(0, 1);
    CHECK(is_connected(k2));
    CHECK(is_two_connected(k2));
    SmallGraph p3;
    p3.n = 3;
    p3.add_edge(0, 1);
    p3.add_edge(1, 2);
    CHECK(is_connected(p3));
    CHECK_FALSE(is_two_connected(p3));  // middle vertex is a cut vertex
    SmallGraph c4;
    c4.n = 4;
    c4.add_edge(0, 1); c4.add_edge(1, 2); c4.add_edge(2, 3); c4.add_edge(3, 0);
    CHECK(is_two_connected(c4));
}

TEST_CASE("small enumerations") {
    auto anycls = [](const SmallGraph&) { return true; };
    CHECK(enumerate(anycls, 1, Connectivity::ANY) == 1);
    CHECK(enumerate(anycls, 2, Connectivity::ANY) == 2);
    CHECK(enumerate(anycls, 3, Connectivity::CONNECTED) == 4);
    // three paths and the triangle, none contains K4
    CHECK(enumerate(class_predicate("ex-k4"), 3, Connectivity::CONNECTED) == 4);
}

TEST_CASE("oracle counts equal series counts for n <= 5") {
    for (const char* nm : {"ex-k4", "ex-w4", "ex-k5e"}) {
        ClassSpec spec = make_builtin(nm);
        Rational y(1);
        auto sys = build_series_system(spec, y, 6);
        auto pred = class_predicate(nm);
        Rational fct(1);
        for (int n = 1; n <= 5; ++n) {
            fct *= n;
            CHECK(Rational((long)enumerate(pred, n, Connectivity::ANY)) == sys.G.c[n] * fct);
            CHECK(Rational((long)enumerate(pred, n, Connectivity::CONNECTED)) == sys.C.c[n] * fct);
            CHECK(Rational((long)enumerate(pred, n, Connectivity::TWO_CONNECTED)) == sys.B.c[n] * fct);
        }
    }
}
