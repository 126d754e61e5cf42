#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gclass/laws.hpp"

using namespace gclass;

namespace {

void check4(long double got, double want) {
    CHECK((double)got == doctest::Approx(want).epsilon(5e-5));
}

// independent quasi-powers oracle: the block-marked composition has its
// singularity at sigma(u) = psi_u(tau_u) with psi_u(t) = t e^{-u B'(t)} and
// u tau B''(tau) = 1
long double sigma_blocks(PointEngine& eng, long double R, long double u) {
    auto f = [&](long double t) { return u * t * eng.Bpp(t) - 1.0L; };
    long double lo = R / 4, hi = R * (1.0L - 1e-10L);
    for (int it = 0; it < 110; ++it) {
        long double m = (lo + hi) / 2;
        if (f(m) > 0) hi = m; else lo = m;
    }
    long double tau = (lo + hi) / 2;
    return tau * expl(-u * eng.Bp(tau));
}

// cut-vertex-marked composition: psi_u(t) = t / (u(e^{B'(t)} - 1) + 1),
// stationary point u(e^{B'} - 1) + 1 = t u e^{B'} B''
long double sigma_cut(PointEngine& eng, long double R, long double u) {
    auto f = [&](long double t) {
        Jet b = eng.B_jet(t, 2);
        long double e = expl(b.d(1));
        return u * (e - 1.0L) + 1.0L - t * u * e * b.d(2);
    };
    long double lo = R / 4, hi = R * (1.0L - 1e-10L);
    for (int it = 0; it < 110; ++it) {
        long double m = (lo + hi) / 2;
        if (f(m) < 0) hi = m; else lo = m;
    }
    long double tau = (lo + hi) / 2;
    long double e = expl(eng.Bp(tau));
    return tau / (u * (e - 1.0L) + 1.0L);
}

}  // namespace

TEST_CASE("edge-density constants match the published table") {
    EdgeLaw k4 = edge_law(make_builtin("ex-k4"));
    check4(k4.kappa, 1.616735);
    check4(k4.kappa2, 1.718913);
    CHECK(k4.lambda > 0.0L);
    CHECK(k4.lambda2 > 0.0L);
    EdgeLaw w4 = edge_law(make_builtin("ex-w4"));
    check4(w4.kappa, 1.764268);
    check4(w4.kappa2, 1.854321);
}

TEST_CASE("block and cut-vertex constants match the published table") {
    ClassSpec spec = make_builtin("ex-k4");
    SingularReport rep = analyze(spec, 1.0L);
    BlockCutLaw law = block_cut_law(spec, rep);
    check4(law.block_mean, 0.1493738);
    check4(law.cut_mean, 0.1387528);
    CHECK(law.block_var > 0.0L);
    CHECK(law.cut_var > 0.0L);
}

TEST_CASE("block/cut constants agree with the quasi-powers numeric oracle") {
    for (const char* nm : {"ex-k4", "ex-w4"}) {
        CAPTURE(nm);
        ClassSpec spec = make_builtin(nm);
        SingularReport rep = analyze(spec, 1.0L);
        PointEngine eng(spec, 1.0L);
        long double R = rep.loc.R;
        BlockCutLaw law = block_cut_law(spec, rep);
        auto mv = [&](const std::function<long double(long double)>& sig) {
            auto d = detail::stencil_derivs([&](long double u) { return logl(sig(u)); }, 1.0L,
                                            2.5e-3L);
            return std::make_pair(-d.d1, -d.d2 - d.d1);
        };
        auto [bm, bv] = mv([&](long double u) { return sigma_blocks(eng, R, u); });
        auto [cm, cv] = mv([&](long double u) { return sigma_cut(eng, R, u); });
        CHECK((double)law.block_mean == doctest::Approx((double)bm).epsilon(1e-7));
        CHECK((double)law.block_var == doctest::Approx((double)bv).epsilon(1e-5));
        CHECK((double)law.cut_mean == doctest::Approx((double)cm).epsilon(1e-7));
        CHECK((double)law.cut_var == doctest::Approx((double)cv).epsilon(1e-5));
    }
}

TEST_CASE("Poisson component law") {
    SingularReport rep = analyze(make_builtin("ex-k4"), 1.0L);
    ComponentLaw law = component_law(rep);
    check4(law.p, 0.889035);
    CHECK((double)law.p == doctest::Approx((double)expl(-law.nu)).epsilon(1e-15));
}

TEST_CASE("appearance constants") {
    SingularReport rep = analyze(make_builtin("ex-k4"), 1.0L);
    auto [m_sub, v_sub] = appearance_law(rep, 3, AppearanceKind::ROOTED_SUBGRAPH);
    CHECK((double)m_sub ==
          doctest::Approx((double)(rep.c.rho * rep.c.rho * rep.c.rho / 6.0L)).epsilon(1e-15));
    CHECK(v_sub == rep.c.rho);
    auto [m_blk, v_blk] = appearance_law(rep, 3, AppearanceKind::BLOCK);
    CHECK((double)m_blk ==
          doctest::Approx((double)(rep.loc.R * rep.loc.R * rep.loc.R / 6.0L)).epsilon(1e-15));
    CHECK(m_blk == v_blk);
}

TEST_CASE("missed-mass law sums to one and has mean tau") {
    ClassSpec spec = make_builtin("ex-k4");
    SingularReport rep = analyze(spec, 1.0L);
    MissedMassLaw law = missed_mass_law(spec, rep, 60);
    long double sum = 0;
    for (long double p : law.p_k) {
        CHECK(p >= 0.0L);
        sum += p;
    }
    CHECK(sum > 0.99L);
    CHECK(sum < 1.0L + 1e-9L);
    CHECK(law.expectation == rep.c.tau);
    CHECK_FALSE(law.variance_defined);  // branch-point case: variance diverges
}

TEST_CASE("density map inverts the density function") {
    ClassSpec spec = make_builtin("ex-k4");
    for (double mu : {1.4, 1.9}) {
        long double y0 = density_map(spec, (long double)mu);
        CHECK((double)kappa_at(spec, y0) == doctest::Approx(mu).epsilon(1e-8));
    }
    CHECK_THROWS_AS(density_map(spec, 1e9L), std::domain_error);
}
