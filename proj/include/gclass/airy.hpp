#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

extern "C" {
#include <quadmath.h>
}

// The map-Airy density g(x) = 2 e^{-2x^3/3} (x Ai(x^2) - Ai'(x^2)) — the
// stable(3/2) law governing largest-block fluctuations — plus its (a, c)
// parameter algebra for scaling and composition of extremal laws.

namespace gclass {

namespace airy_detail {

inline __float128 qconst(const char* s) { return strtoflt128(s, nullptr); }

inline const __float128 AI0 = qconst("0.355028053887817239260063186004183176397979174");
inline const __float128 AIP0 = qconst("-0.258819403792806798405183560189203963479091138");
inline const __float128 G13 = qconst("2.67893853470774763365569294097467764412868938");
inline const __float128 SQRT3_2 = qconst("0.866025403784438646763723170752936183471402627");
inline const __float128 SQRTPI = qconst("1.77245385090551602729816748334114518279754946");
inline const __float128 PI_Q = qconst("3.14159265358979323846264338327950288419716940");

// Ai and Ai' at t >= 0 by the Taylor series of y'' = t y (quad precision;
// adequate for t <= ~9 where the cancellation is ~e^{2 zeta} <~ 1e16)
inline void ai_taylor(__float128 t, __float128& ai, __float128& aip) {
    // y = sum a_n t^n with a_{n+2} (n+2)(n+1) = a_{n-1}
    // two ODE solutions: f with f(0)=1, f'(0)=0 (powers 3k) and g with
    // g(0)=0, g'(0)=1 (powers 3k+1)
    __float128 sf = 1, sfp = 0, sg = t, sgp = 1;
    // closed recurrences: f has powers 3k, g has powers 3k+1
    __float128 tf = 1, tg = t;
    for (int k = 1; k < 400; ++k) {
        tf *= t * t * t / ((3.0 * k) * (3.0 * k - 1.0));
        tg *= t * t * t / ((3.0 * k + 1.0) * (3.0 * k));
        sf += tf;
        sg += tg;
        sfp += tf * (3.0 * k) / t;      // d/dt of t^{3k}
        sgp += tg * (3.0 * k + 1.0) / t;
        if (fabsq(tf) < 1e-40 * fabsq(sf) && fabsq(tg) < 1e-40 * (fabsq(sg) + 1e-40)) break;
    }
    if (t == 0.0) { sfp = 0; sgp = 1; }
    ai = AI0 * sf + AIP0 * sg;
    aip = AI0 * sfp + AIP0 * sgp;
}

// asymptotic coefficients u_k (Ai) and v_k (Ai') of the zeta expansions
inline const std::vector<__float128>& u_coeffs() {
    static std::vector<__float128> u = [] {
        std::vector<__float128> v(80);
        v[0] = 1;
        for (int k = 1; k < 80; ++k)
            v[k] = v[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
                   (216.0 * k * (2.0 * k - 1.0));
        return v;
    }();
    return u;
}

inline __float128 v_coeff(int k) {
    return u_coeffs()[k] * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
}

}  // namespace airy_detail

// g(x): closed form via Ai for |x| <= 3, cancellation-free asymptotic
// expansions beyond (the direct form loses all digits for x << 0)
inline long double airy_density(long double x) {
    using namespace airy_detail;
    if (!std::isfinite((double)x)) return 0.0L;
    if (fabsl(x) <= 3.0L) {
        __float128 xq = x, t = xq * xq;
        __float128 ai, aip;
        ai_taylor(t, ai, aip);
        __float128 g = 2.0 * expq(-2.0 * xq * xq * xq / 3.0) * (xq * ai - aip);
        return (long double)g;
    }
    __float128 s = fabsl(x);
    __float128 zeta = 2.0 * s * s * s / 3.0;
    const auto& u = u_coeffs();
    if (x < 0) {
        // g = sqrt(s)/sqrt(pi) * sum_k (-1)^k (v_k - u_k) zeta^{-k}
        __float128 sum = 0, pw = 1, prev = 1e30;
        for (int k = 1; k < 80; ++k) {
            pw /= zeta;
            __float128 term = (k % 2 ? -1.0 : 1.0) * (v_coeff(k) - u[k]) * pw;
            if (fabsq(term) > prev) break;  // asymptotic series: stop at smallest term
            sum += term;
            prev = fabsq(term);
            if (prev < 1e-36 * fabsq(sum)) break;
        }
        return (long double)(sqrtq(s) / SQRTPI * sum);
    }
    // right tail: g = sqrt(x) e^{-2 zeta} / sqrt(pi) * sum_k (-1)^k (u_k + v_k) zeta^{-k}
    __float128 sum = 0, pw = 1, prev = 1e30;
    for (int k = 0; k < 80; ++k) {
        __float128 term = (k % 2 ? -1.0 : 1.0) * (u[k] + v_coeff(k)) * pw;
        if (fabsq(term) > prev) break;
        sum += term;
        prev = fabsq(term);
        pw /= zeta;
        if (prev < 1e-36 * fabsq(sum)) break;
    }
    return (long double)(sqrtq(s) * expq(-2.0 * zeta) / SQRTPI * sum);
}

// independent evaluation path: the convergent expansion
// g(x) = (1/(pi x)) sum_{n>=1} (-3^{2/3} x)^n Gamma(1+2n/3) sin(-2n pi/3) / n!
// (three-term-ratio recurrence avoids lgamma; quad precision absorbs the
// cancellation, which reaches ~1e31 at |x| = 3)
inline long double airy_density_series(long double x) {
    using namespace airy_detail;
    if (x == 0.0L) {  // continuous limit
        return (airy_density(1e-30L) + airy_density(-1e-30L)) / 2.0L;
    }
    __float128 xq = x;
    __float128 w = -cbrtq(9.0) * xq;  // -3^{2/3} x
    // residue-1 and residue-2 subseries seeds (n = 1, 2)
    __float128 G53 = G13 * 2.0 / 9.0 * 3.0;  // Gamma(5/3) = (2/3)Gamma(2/3); use reflection instead:
    // Gamma(5/3) = (2/3)Gamma(2/3) and Gamma(2/3) = 2pi/(sqrt(3) Gamma(1/3))
    __float128 G23v = 2.0 * PI_Q / (2.0 * SQRT3_2 * G13);
    G53 = (2.0 / 3.0) * G23v;
    __float128 G73 = (4.0 / 9.0) * G13;  // Gamma(7/3) = (4/3)(1/3)Gamma(1/3)
    __float128 t1 = w * G53 * (-SQRT3_2);            // n = 1 term
    __float128 t2 = w * w * G73 * (SQRT3_2) / 2.0;  // n = 2 term
    __float128 sum = 0;
    for (int base = 1; base < 600; base += 3) {
        sum += t1 + t2;
        if (fabsq(t1) + fabsq(t2) < 1e-40 * fabsq(sum) && base > 30) break;
        // advance each subseries by n -> n+3
        long n1 = base, n2 = base + 1;
        // (1 + 2n/3)(2 + 2n/3) = (2n+3)(2n+6)/9, kept in exact integers
        t1 *= w * w * w * (__float128)(2 * n1 + 3) * (__float128)(2 * n1 + 6) /
              (9.0 * (n1 + 1.0) * (n1 + 2.0) * (n1 + 3.0));
        t2 *= w * w * w * (__float128)(2 * n2 + 3) * (__float128)(2 * n2 + 6) /
              (9.0 * (n2 + 1.0) * (n2 + 2.0) * (n2 + 3.0));
    }
    return (long double)(sum / (PI_Q * xq));
}

// moments by Gauss-Legendre panels on [-8, 6] plus the analytic left tail
// (right tail < e^{-280}, negligible)
inline long double airy_moment(int power) {
    static const long double gl_x[8] = {
        -0.9602898564975362L, -0.7966664774136267L, -0.5255324099163290L, -0.1834346424956498L,
        0.1834346424956498L, 0.5255324099163290L, 0.7966664774136267L, 0.9602898564975362L};
    static const long double gl_w[8] = {
        0.1012285362903763L, 0.2223810344533745L, 0.3137066458778873L, 0.3626837833783620L,
        0.3626837833783620L, 0.3137066458778873L, 0.2223810344533745L, 0.1012285362903763L};
    long double total = 0.0L;
    const long double A = 8.0L, B = 6.0L;
    int panels = 280;  // width 0.05
    for (int p = 0; p < panels; ++p) {
        long double a = -A + (B + A) * p / panels, b = -A + (B + A) * (p + 1) / panels;
        long double mid = (a + b) / 2, half = (b - a) / 2;
        for (int i = 0; i < 8; ++i) {
            long double t = mid + half * gl_x[i];
            total += half * gl_w[i] * powl(t, power) * airy_density(t);
        }
    }
    // left tail: g(-s) = sum_k c_k s^{1/2 - 3k}, c_k = (-1)^k (v_k - u_k)(3/2)^k / sqrt(pi)
    using namespace airy_detail;
    const auto& u = u_coeffs();
    __float128 pw = 1, tail = 0, prev = 1e30;
    for (int k = 1; k < 60; ++k) {
        pw *= 1.5;
        __float128 ck = (k % 2 ? -1.0 : 1.0) * (v_coeff(k) - u[k]) * pw / SQRTPI;
        // integral of (-s)^power * s^{1/2-3k} over s in (A, inf)
        __float128 expo = 0.5 - 3.0 * k + power;  // exponent after multiplying by s^power
        __float128 sgn = (power % 2 ? -1.0 : 1.0);
        __float128 term = sgn * ck * powq((__float128)A, expo + 1.0) / (-(expo + 1.0));
        if (fabsq(term) > prev) break;
        tail += term;
        prev = fabsq(term);
        if (prev < 1e-30) break;
    }
    return total + (long double)tail;
}

// ---- (a, c) parameter algebra --------------------------------------------

struct AiryParams {
    long double a;  // center coefficient: size ~ a n
    long double c;  // scale: density n^{-2/3} c g(c x)
};

// scaled density value: c g(c x)
inline long double airy_map_density(const AiryParams& p, long double x) {
    return p.c * airy_density(p.c * x);
}

// vertices -> edges rescaling: fluctuation carried through a factor kappa2
inline AiryParams airy_scale(const AiryParams& p, long double kappa2) {
    if (!(kappa2 > 0)) throw std::domain_error("airy_scale: factor must be positive");
    return {kappa2 * p.a, p.c / kappa2};
}

// plain stable(3/2) convolution of scales (same center frame)
inline long double airy_convolve_scale(long double c1, long double c2) {
    return powl(powl(c1, -1.5L) + powl(c2, -1.5L), -2.0L / 3.0L);
}

// composition "largest sub-structure of size ~ a2 m inside a structure of
// size ~ a1 n": centers multiply; the outer fluctuation enters the inner
// law through the a's before the stable convolution
inline AiryParams airy_compose(const AiryParams& p1, const AiryParams& p2) {
    if (!(p1.a > 0 && p1.c > 0 && p2.a > 0 && p2.c > 0))
        throw std::domain_error("airy_compose: parameters must be positive");
    AiryParams r;
    r.a = p1.a * p2.a;
    r.c = powl(powl(p1.c / p2.a, -1.5L) + powl(p2.c, -1.5L) * p1.a, -2.0L / 3.0L);
    return r;
}

}  // namespace gclass
