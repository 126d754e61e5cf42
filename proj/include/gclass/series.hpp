#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

// Truncated formal power series over an arbitrary coefficient ring K.
// K can itself be a Series (giving bivariate series); constants are therefore
// always built through make_scalar(model, ...) so nested truncation orders are
// preserved.

namespace gclass {

using Rational = mpq_class;
using BigInt = mpz_class;

inline long double make_scalar(const long double&, long num, long den = 1) {
    return static_cast<long double>(num) / static_cast<long double>(den);
}
inline double make_scalar(const double&, long num, long den = 1) {
    return static_cast<double>(num) / static_cast<double>(den);
}
inline Rational make_scalar(const Rational&, long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

template <class K>
struct Series {
    std::vector<K> c;  // c[n] holds the coefficient of x^n; size = order+1

    Series() = default;
    explicit Series(std::vector<K> cc) : c(std::move(cc)) {}

    int order() const { return static_cast<int>(c.size()) - 1; }
    const K& operator[](int n) const { return c[n]; }
    K& operator[](int n) { return c[n]; }

    bool operator==(const Series& o) const { return c == o.c; }
};

template <class K>
Series<K> make_scalar(const Series<K>& model, long num, long den = 1) {
    Series<K> s;
    s.c.reserve(model.c.size());
    s.c.push_back(make_scalar(model.c.at(0), num, den));
    for (size_t i = 1; i < model.c.size(); ++i) s.c.push_back(make_scalar(model.c[0], 0));
    return s;
}

template <class K>
Series<K> series_const(const K& model, long num, long den, int order) {
    Series<K> s;
    s.c.assign(static_cast<size_t>(order) + 1, make_scalar(model, 0));
    s.c[0] = make_scalar(model, num, den);
    return s;
}

template <class K>
Series<K> series_const(const K& model, const K& value, int order) {
    Series<K> s;
    s.c.assign(static_cast<size_t>(order) + 1, make_scalar(model, 0));
    s.c[0] = value;
    return s;
}

// the identity series x
template <class K>
Series<K> series_x(const K& model, int order) {
    Series<K> s = series_const(model, 0, 1, order);
    if (order >= 1) s.c[1] = make_scalar(model, 1);
    return s;
}

template <class K>
Series<K> truncate(const Series<K>& a, int order) {
    if (order >= a.order()) return a;
    Series<K> s;
    s.c.assign(a.c.begin(), a.c.begin() + order + 1);
    return s;
}

template <class K>
bool is_zero_val(const K& v) { return v == make_scalar(v, 0); }
template <class K>
bool is_one_val(const K& v) { return v == make_scalar(v, 1); }

template <class K>
Series<K> operator+(const Series<K>& a, const Series<K>& b) {
    int n = std::min(a.order(), b.order());
    Series<K> r = truncate(a, n);
    for (int i = 0; i <= n; ++i) r.c[i] = r.c[i] + b.c[i];
    return r;
}

template <class K>
Series<K> operator-(const Series<K>& a, const Series<K>& b) {
    int n = std::min(a.order(), b.order());
    Series<K> r = truncate(a, n);
    for (int i = 0; i <= n; ++i) r.c[i] = r.c[i] - b.c[i];
    return r;
}

template <class K>
Series<K> operator-(const Series<K>& a) {
    Series<K> r = a;
    for (auto& v : r.c) v = make_scalar(v, 0) - v;
    return r;
}

template <class K>
Series<K> operator*(const Series<K>& a, const Series<K>& b) {
    int n = std::min(a.order(), b.order());
    Series<K> r = series_const(a.c[0], 0, 1, n);
    for (int i = 0; i <= n; ++i) {
        if (is_zero_val(a.c[i])) continue;
        for (int j = 0; i + j <= n; ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    }
    return r;
}

template <class K>
Series<K> scale(const Series<K>& a, const K& k) {
    Series<K> r = a;
    for (auto& v : r.c) v = v * k;
    return r;
}

// division; requires b[0] invertible
template <class K>
Series<K> operator/(const Series<K>& a, const Series<K>& b) {
    if (is_zero_val(b.c[0])) throw std::domain_error("series division by non-unit");
    int n = std::min(a.order(), b.order());
    Series<K> q = series_const(a.c[0], 0, 1, n);
    for (int i = 0; i <= n; ++i) {
        K acc = a.c[i];
        for (int k = 0; k < i; ++k) acc = acc - q.c[k] * b.c[i - k];
        q.c[i] = acc / b.c[0];
    }
    return q;
}

template <class K>
Series<K> pow_int(const Series<K>& a, long e) {
    Series<K> r = series_const(a.c[0], 1, 1, a.order());
    if (e < 0) return r / pow_int(a, -e);
    Series<K> base = a;
    for (; e > 0; e >>= 1) {
        if (e & 1) r = r * base;
        if (e > 1) base = base * base;
    }
    return r;
}

template <class K>
Series<K> deriv(const Series<K>& a) {
    Series<K> r = series_const(a.c[0], 0, 1, std::max(a.order() - 1, 0));
    for (int i = 1; i <= a.order(); ++i) r.c[i - 1] = a.c[i] * make_scalar(a.c[0], i);
    return r;
}

// antiderivative with constant term 0; output has order+1 coefficients
template <class K>
Series<K> integ(const Series<K>& a) {
    Series<K> r = series_const(a.c[0], 0, 1, a.order() + 1);
    for (int i = 0; i <= a.order(); ++i) r.c[i + 1] = a.c[i] / make_scalar(a.c[0], i + 1);
    return r;
}

// exp of a series with zero constant term
template <class K>
Series<K> exp(const Series<K>& a) {
    if (!is_zero_val(a.c[0])) throw std::domain_error("series exp needs zero constant term");
    int n = a.order();
    Series<K> e = series_const(a.c[0], 1, 1, n);
    for (int m = 1; m <= n; ++m) {
        K acc = make_scalar(a.c[0], 0);
        for (int k = 1; k <= m; ++k) acc = acc + make_scalar(a.c[0], k) * a.c[k] * e.c[m - k];
        e.c[m] = acc / make_scalar(a.c[0], m);
    }
    return e;
}

// log of a series with constant term 1
template <class K>
Series<K> log(const Series<K>& a) {
    if (!is_one_val(a.c[0])) throw std::domain_error("series log needs constant term 1");
    int n = a.order();
    Series<K> l = series_const(a.c[0], 0, 1, n);
    for (int m = 1; m <= n; ++m) {
        K acc = a.c[m] * make_scalar(a.c[0], m);
        for (int k = 1; k < m; ++k) acc = acc - make_scalar(a.c[0], k) * l.c[k] * a.c[m - k];
        l.c[m] = acc / make_scalar(a.c[0], m);
    }
    return l;
}

// a(b(x)); requires b(0) = 0
template <class K>
Series<K> compose(const Series<K>& a, const Series<K>& b) {
    if (!is_zero_val(b.c[0])) throw std::domain_error("series compose needs zero constant term");
    int n = std::min(a.order(), b.order());
    Series<K> bt = truncate(b, n);
    Series<K> r = series_const(a.c[0], 0, 1, n);
    r.c[0] = a.c[std::min(a.order(), n)];
    for (int i = std::min(a.order(), n) - 1; i >= 0; --i) {
        r = r * bt;
        r.c[0] = r.c[0] + a.c[i];
    }
    return r;
}

// compositional inverse g of a: a(g(x)) = x; requires a(0)=0, a'(0) invertible
template <class K>
Series<K> revert(const Series<K>& a) {
    if (!is_zero_val(a.c[0])) throw std::domain_error("series revert needs zero constant term");
    if (a.order() < 1 || is_zero_val(a.c[1])) throw std::domain_error("series revert needs invertible linear term");
    int n = a.order();
    K one = make_scalar(a.c[0], 1);
    Series<K> g = series_x(a.c[0], 1);
    g.c[1] = one / a.c[1];
    Series<K> ap = deriv(a);
    int m = 1;
    while (m < n) {
        m = std::min(2 * m, n);
        Series<K> gm = g;
        gm.c.resize(static_cast<size_t>(m) + 1, make_scalar(a.c[0], 0));
        Series<K> num = compose(truncate(a, m), gm) - series_x(a.c[0], m);
        Series<K> den = compose(truncate(ap, m), gm);
        g = gm - num / den;
    }
    return g;
}

template <class K>
K eval_at(const Series<K>& a, const K& x) {
    K r = a.c[a.order()];
    for (int i = a.order() - 1; i >= 0; --i) r = r * x + a.c[i];
    return r;
}

// bivariate series: outer variable x, inner variable y
using BiSeries = Series<Series<Rational>>;

inline BiSeries bi_zero(int nx, int ny) {
    Series<Rational> inner;
    inner.c.assign(static_cast<size_t>(ny) + 1, Rational(0));
    BiSeries b;
    b.c.assign(static_cast<size_t>(nx) + 1, inner);
    return b;
}

inline BiSeries bi_x(int nx, int ny) {
    BiSeries b = bi_zero(nx, ny);
    if (nx >= 1) b.c[1].c[0] = 1;
    return b;
}

inline BiSeries bi_y(int nx, int ny) {
    BiSeries b = bi_zero(nx, ny);
    if (ny >= 1) b.c[0].c[1] = 1;
    return b;
}

// partial derivative in the inner variable
inline BiSeries d_inner(const BiSeries& a) {
    BiSeries r = a;
    for (auto& inner : r.c) {
        for (int i = 1; i <= inner.order(); ++i) inner.c[i - 1] = inner.c[i] * i;
        inner.c[inner.order()] = 0;
    }
    return r;
}

}  // namespace gclass
