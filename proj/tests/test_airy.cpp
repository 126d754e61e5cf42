#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gclass/airy.hpp"

using namespace gclass;

TEST_CASE("density normalization and centering") {
    CHECK((double)airy_moment(0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::fabs((double)airy_moment(1)) < 1e-10);
}

TEST_CASE("independent series evaluation agrees with the closed form") {
    long double worst = 0;
    for (long double x = -3.0L; x <= 3.0L; x += 0.0625L) {
        long double d = fabsl(airy_density(x) - airy_density_series(x));
        worst = std::max(worst, d);
    }
    CHECK((double)worst < 1e-10);
}

TEST_CASE("asymptotic regimes join continuously at the switch points") {
    for (long double s : {3.0L, -3.0L}) {
        long double inside = airy_density(s * (1.0L - 1e-6L));
        long double outside = airy_density(s * (1.0L + 1e-6L));
        CHECK((double)inside == doctest::Approx((double)outside).epsilon(1e-6));
    }
    // left tail ~ |x|^{-5/2}/(4 sqrt(pi))
    long double x = -40.0L;
    long double tail = powl(-x, -2.5L) / (4.0L * sqrtl((long double)M_PIl));
    CHECK((double)airy_density(x) == doctest::Approx((double)tail).epsilon(1e-3));
}

TEST_CASE("density is positive on the bulk and integrates to one by trapezoid") {
    long double sum = 0, step = 0.01L;
    // the left tail decays like |x|^{-5/2}, so the window must reach far left
    for (long double x = -50.0L; x <= 8.0L; x += step) {
        long double g = airy_density(x);
        CHECK(g >= 0.0L);
        sum += g * step;
    }
    CHECK((double)sum == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("parameter algebra: scaling and composition") {
    AiryParams p{0.5L, 2.0L};
    AiryParams s = airy_scale(p, 4.0L);
    CHECK(s.a == 2.0L);
    CHECK(s.c == 0.5L);

    // the reference composition: (1/3, 3/4^{2/3}) after (1/3, 3^{4/3}/4)
    AiryParams p1{1.0L / 3.0L, 3.0L / powl(4.0L, 2.0L / 3.0L)};
    AiryParams p2{1.0L / 3.0L, powl(3.0L, 4.0L / 3.0L) / 4.0L};
    AiryParams c = airy_compose(p1, p2);
    CHECK((double)c.a == doctest::Approx(1.0 / 9.0).epsilon(1e-18));
    CHECK((double)c.c == doctest::Approx(1.717080).epsilon(1e-5));
}

TEST_CASE("composition scale cross-checked against numerical convolution") {
    AiryParams p1{1.0L / 3.0L, 3.0L / powl(4.0L, 2.0L / 3.0L)};
    AiryParams p2{1.0L / 3.0L, powl(3.0L, 4.0L / 3.0L) / 4.0L};
    AiryParams c = airy_compose(p1, p2);
    // composed fluctuation = a2 * outer + inner/(a1 n)^{... }: in n^{2/3}
    // units the two summands carry scales c1/a2 and c2 * a1^{-2/3}
    long double ca = p1.c / p2.a, cb = p2.c * powl(p1.a, -2.0L / 3.0L);
    CHECK((double)airy_convolve_scale(ca, cb) == doctest::Approx((double)c.c).epsilon(1e-12));
    // pointwise: density of the sum of independent scaled variables
    auto f1 = [&](long double t) { return ca * airy_density(ca * t); };
    auto f2 = [&](long double t) { return cb * airy_density(cb * t); };
    for (double x0 : {-1.0, 0.0, 1.0}) {
        long double conv = 0, h = 0.02L;
        for (long double t = -14.0L; t <= 10.0L; t += h) conv += f1(t) * f2(x0 - t) * h;
        long double direct = c.c * airy_density(c.c * x0);
        CHECK((double)conv == doctest::Approx((double)direct).epsilon(1e-3));
    }
}
