#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gclass/extremal.hpp"

using namespace gclass;

TEST_CASE("discrete core law: probability generating function structure") {
    ClassSpec spec = make_builtin("ex-k4");
    SingularReport rep = analyze(spec, 1.0L);
    PointEngine eng(spec, 1.0L);
    DiscreteCoreLaw law = subcritical_core(spec, rep, 80);
    // q(1) = tau B''(tau) = 1 by the definition of tau
    CHECK((double)core_pgf(rep, eng, 1.0L) == doctest::Approx(1.0).epsilon(1e-10));
    long double partial = 0;
    for (int k = 1; k <= 80; ++k) {
        CHECK(law.q[k] >= 0.0L);
        partial += law.q[k];
    }
    CHECK(partial < 1.0L);
    CHECK(law.tail_kind == "k^-1/2");
    CHECK(law.tail_const > 0.0L);
    // tail regime: q_k / (const k^{-1/2} (tau/R)^k) -> 1
    long double ratio = law.q[80] / (law.tail_const * powl(80.0L, -0.5L) *
                                     powl(law.tau / law.R, 80));
    CHECK((double)ratio == doctest::Approx(1.0).epsilon(0.05));
    CHECK(law.coreless > 0.0L);
    CHECK(law.coreless < 1.0L);
}

TEST_CASE("airy largest-block law on a manifold-sourced class") {
    ClassSpec spec = make_builtin("synth-tsing");
    SingularReport rep = analyze(spec, 1.0L);
    CriticalCoreLaw law = critical_core(spec, rep);
    CHECK(law.alpha > 0.0L);
    CHECK(law.alpha < 1.0L);
    // two derivations of the giant-block fraction must coincide
    CHECK((double)law.alpha0 == doctest::Approx((double)law.alpha).epsilon(1e-10));
    CHECK(law.c > 0.0L);
    CHECK(law.p_s > 0.0L);
    CHECK(law.p_s < 1.0L);
    // the two modes of the core partition are complementary
    long double other = law.Q3 * powl(law.alpha0, -1.5L) / law.M3;
    CHECK((double)(law.p_s + other) == doctest::Approx(1.0).epsilon(1e-12));
    // alpha = 1 - S
    CHECK((double)law.alpha == doctest::Approx((double)(1.0L - rep.c.S)).epsilon(1e-12));
    // discrete core law must refuse this class
    CHECK_THROWS_AS(subcritical_core(spec, rep), std::domain_error);
}

TEST_CASE("tau-mode class refuses the airy law") {
    ClassSpec spec = make_builtin("ex-k4");
    SingularReport rep = analyze(spec, 1.0L);
    CHECK_THROWS_AS(critical_core(spec, rep), std::domain_error);
}

TEST_CASE("3-core edge law and the 3-connected chain") {
    ClassSpec spec = make_builtin("synth-tsing");
    SingularReport rep = analyze(spec, 1.0L);
    ThreeCoreLaw t3 = edges_in_3core(spec, rep);
    CHECK(t3.Dt0 == rep.loc.D0);
    CHECK(t3.Dt2 < 0.0L);
    CHECK(t3.beta > 0.0L);
    CHECK(t3.beta < 1.0L);
    CHECK(t3.c2 > 0.0L);
    EdgeLaw e = edge_law(spec);
    ThreeConnLaw tc = largest_3conn(spec, rep, e.kappa2);
    CHECK(tc.mu > 0.0L);
    CHECK((double)tc.block_edges.a == doctest::Approx((double)(e.kappa2 * tc.block_vertices.a)));
    // composition contracts the center: a < both factors
    CHECK(tc.comp3_edges.a < tc.block_edges.a);
    CHECK(tc.comp3_edges.a < tc.core3_edges.a);
    CHECK((double)tc.comp3_vertices.a ==
          doctest::Approx((double)(tc.mu * tc.comp3_edges.a)).epsilon(1e-15));
    CHECK((double)tc.comp3_vertices.c ==
          doctest::Approx((double)(tc.comp3_edges.c / tc.mu)).epsilon(1e-15));
}

TEST_CASE("branch-only classes never report critical edge weights") {
    ScanResult sr = scan_critical(make_builtin("ex-k4"), 0.2L, 5.0L, 20);
    CHECK(sr.critical.empty());
    for (const auto& p : sr.points) CHECK(p.label == "1");
}

TEST_CASE("scan localizes the constructed coalescence to 1e-8") {
    ScanResult sr = scan_critical(make_builtin("synth-critical"), 0.5L, 1.5L, 21);
    bool found = false;
    for (const auto& c : sr.critical)
        if (fabsl(c.first - 1.0L) < 1e-8L) found = true;
    CHECK(found);
}

TEST_CASE("block law at prescribed density") {
    ClassSpec spec = make_builtin("ex-k4");
    DensityBlockLaw law = block_law_at_density(spec, 1.9L);
    CHECK_FALSE(law.airy_mode);
    CHECK(law.coreless > 0.0L);
    CHECK(law.coreless < 1.0L);
    CHECK((double)kappa_at(spec, law.y0) == doctest::Approx(1.9).epsilon(1e-8));
}
