#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

// Truncated Taylor jets in one perturbation parameter t, long double
// coefficients.  Unlike the formal Series kernel, transcendental functions
// here accept arbitrary valid constant terms (log needs c[0] > 0, etc.), so a
// jet seeded at (x0 + t) carries pointwise derivatives of any smooth formula.

namespace gclass {

struct Jet {
    std::vector<long double> c;  // c[k] = coefficient of t^k

    Jet() = default;
    explicit Jet(int order, long double v0 = 0.0L) : c(static_cast<size_t>(order) + 1, 0.0L) { c[0] = v0; }

    int order() const { return static_cast<int>(c.size()) - 1; }
    long double value() const { return c[0]; }
    // k-th derivative at the seed point
    long double d(int k) const {
        long double f = 1.0L;
        for (int i = 2; i <= k; ++i) f *= i;
        return c[static_cast<size_t>(k)] * f;
    }

    static Jet variable(int order, long double x0) {
        Jet j(order, x0);
        if (order >= 1) j.c[1] = 1.0L;
        return j;
    }
    static Jet constant(int order, long double v) { return Jet(order, v); }
};

inline Jet operator+(const Jet& a, const Jet& b) {
    Jet r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
    return r;
}
inline Jet operator-(const Jet& a, const Jet& b) {
    Jet r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
}
inline Jet operator-(const Jet& a) {
    Jet r = a;
    for (auto& v : r.c) v = -v;
    return r;
}
inline Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.order());
    for (int i = 0; i <= a.order(); ++i)
        for (int j = 0; i + j <= a.order(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
}
inline Jet operator/(const Jet& a, const Jet& b) {
    if (b.c[0] == 0.0L) throw std::domain_error("jet division by zero constant term");
    Jet q(a.order());
    for (int i = 0; i <= a.order(); ++i) {
        long double acc = a.c[i];
        for (int k = 0; k < i; ++k) acc -= q.c[k] * b.c[i - k];
        q.c[i] = acc / b.c[0];
    }
    return q;
}
inline Jet operator+(const Jet& a, long double s) { Jet r = a; r.c[0] += s; return r; }
inline Jet operator+(long double s, const Jet& a) { return a + s; }
inline Jet operator-(const Jet& a, long double s) { Jet r = a; r.c[0] -= s; return r; }
inline Jet operator-(long double s, const Jet& a) { return (-a) + s; }
inline Jet operator*(const Jet& a, long double s) {
    Jet r = a;
    for (auto& v : r.c) v *= s;
    return r;
}
inline Jet operator*(long double s, const Jet& a) { return a * s; }
inline Jet operator/(const Jet& a, long double s) { return a * (1.0L / s); }
inline Jet operator/(long double s, const Jet& a) { return Jet::constant(a.order(), s) / a; }

// exp/log with general constant term, via the ODE recurrences on the
// zero-constant part.
inline Jet jet_exp(const Jet& a) {
    int n = a.order();
    Jet e(n);
    e.c[0] = expl(a.c[0]);
    for (int m = 1; m <= n; ++m) {
        long double acc = 0.0L;
        for (int k = 1; k <= m; ++k) acc += k * a.c[k] * e.c[m - k];
        e.c[m] = acc / m;
    }
    return e;
}

inline Jet jet_log(const Jet& a) {
    if (a.c[0] <= 0.0L) throw std::domain_error("jet log needs positive constant term");
    int n = a.order();
    Jet l(n);
    l.c[0] = logl(a.c[0]);
    for (int m = 1; m <= n; ++m) {
        long double acc = m * a.c[m];
        for (int k = 1; k < m; ++k) acc -= k * l.c[k] * a.c[m - k];
        l.c[m] = acc / (m * a.c[0]);
    }
    return l;
}

inline Jet jet_sqrt(const Jet& a) {
    if (a.c[0] <= 0.0L) throw std::domain_error("jet sqrt needs positive constant term");
    int n = a.order();
    Jet s(n);
    s.c[0] = sqrtl(a.c[0]);
    // from s*s = a: a[m] = sum_k s[k] s[m-k]
    for (int m = 1; m <= n; ++m) {
        long double acc = a.c[m];
        for (int k = 1; k < m; ++k) acc -= s.c[k] * s.c[m - k];
        s.c[m] = acc / (2.0L * s.c[0]);
    }
    return s;
}

inline Jet jet_pow(const Jet& a, long e) {
    Jet r = Jet::constant(a.order(), 1.0L);
    if (e < 0) return r / jet_pow(a, -e);
    Jet base = a;
    for (; e > 0; e >>= 1) {
        if (e & 1) r = r * base;
        if (e > 1) base = base * base;
    }
    return r;
}

// a^(p/q) for positive constant term: exp((p/q) log a)
inline Jet jet_pow(const Jet& a, long double e) { return jet_exp(jet_log(a) * e); }

}  // namespace gclass
