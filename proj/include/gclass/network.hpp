#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "gclass/classspec.hpp"
#include "gclass/jet.hpp"
#include "gclass/series.hpp"

// The network system: D(x,y) is the implicit solution of Phi(x,D) = 0 with
//   Phi(x,z) = (2/x^2) T_z(x,z) - log((1+z)/(1+y)) + x z^2/(1+xz),
// B is recovered by an explicit closed form in (x, D), and the connected /
// all-graph levels come from F = xC' = x exp(B'(F, y)), G = exp(C).
// Two modes share the formulas: exact truncated series (coefficients in any
// exact ring) and pointwise long-double / jet evaluation.

namespace gclass {

// sqrt never occurs in exact-series mode (singular-frame classes have no
// entire T); the overload exists so the shared template instantiates.
template <class K>
Series<K> t_sqrt(const Series<K>&) {
    throw std::domain_error("exact series evaluation is not defined for singular-frame classes");
}

// (2/x^2) T_z with T_z = O(x^4) structurally; series mode divides exactly.
template <class K>
Series<K> shift_div_x2(const Series<K>& a) {
    Series<K> r = series_const(a.c[0], 0, 1, a.order());
    for (int i = 0; i + 2 <= a.order(); ++i) r.c[i] = a.c[i + 2];
    if (!is_zero_val(a.c[0]) || (a.order() >= 1 && !is_zero_val(a.c[1])))
        throw std::domain_error("T_z is not O(x^2): malformed class");
    return r;
}

// ---- exact series pipeline -------------------------------------------------

template <class K>
struct SeriesSystem {
    Series<K> D, B, C, G, F;
    K y;
};

// Newton solution of Phi(x, D) = 0 with D(0,y) = y, order-doubling in x.
template <class K>
Series<K> solve_D_series(const ClassSpec& spec, const K& y, int N) {
    if (spec.conditional && !spec.T && spec.kind == ClassSpec::CLOSED_FORM)
        throw std::domain_error("class '" + spec.name + "' needs external data: " + spec.conditional_reason);
    if (spec.kind == ClassSpec::TABULATED)
        throw std::domain_error("exact series counting is not defined for singular-frame classes");
    const K one = make_scalar(y, 1);
    auto at = [&](int n, const Series<K>& Dn, bool deriv_z) {
        // evaluate Phi or Phi_z at order n (internally padded by 2 for the shift)
        int p = n + 2;
        Series<K> xs = series_x(y, p);
        Series<K> Dp = Dn;
        Dp.c.resize(static_cast<size_t>(p) + 1, make_scalar(y, 0));
        Series<K> onep = series_const(y, 1, 1, p);
        Series<K> xD = xs * Dp;
        if (!deriv_z) {
            Series<K> tz = eval_T(spec, TPart::Tz, xs, Dp);
            Series<K> head = scale(shift_div_x2(tz), make_scalar(y, 2));
            K opy = one + y;
            Series<K> L = log((onep + Dp) / series_const(y, opy, p));
            Series<K> r = head - L + xs * Dp * Dp / (onep + xD);
            return truncate(r, n);
        }
        Series<K> tzz = eval_T(spec, TPart::Tzz, xs, Dp);
        Series<K> head = scale(shift_div_x2(tzz), make_scalar(y, 2));
        Series<K> denom = (onep + xD) * (onep + xD);
        Series<K> r = head - onep / (onep + Dp) +
                      (scale(xD, make_scalar(y, 2)) + xD * xD) / denom;
        return truncate(r, n);
    };
    Series<K> D = series_const(y, y, N);
    int m = 0;
    while (m < N) {
        m = std::min(2 * m + 1, N);
        Series<K> Dt = truncate(D, m);
        Series<K> f = at(m, Dt, false);
        Series<K> fz = at(m, Dt, true);
        Dt = Dt - f / fz;
        D = Dt;
        D.c.resize(static_cast<size_t>(N) + 1, make_scalar(y, 0));
    }
    D = truncate(D, N);
    return D;
}

template <class K>
Series<K> build_B_series(const ClassSpec& spec, const K& y, const Series<K>& D) {
    int N = D.order();
    Series<K> xs = series_x(y, N);
    Series<K> one = series_const(y, 1, 1, N);
    Series<K> xD = xs * D;
    Series<K> T = eval_T(spec, TPart::T, xs, D);
    K opy = make_scalar(y, 1) + y;
    Series<K> L = log((one + D) / series_const(y, opy, N));
    Series<K> half = series_const(y, 1, 2, N);
    return T - half * xD + half * log(one + xD) +
           half * xs * xs * (D + half * D * D - (one + D) * L);
}

// F = xC' from F = x exp(B'(F,y)), then C and G; all at the order of B.
template <class K>
void build_CG_series(const K& y, const Series<K>& B, Series<K>& F, Series<K>& C, Series<K>& G) {
    int N = B.order();
    Series<K> Bp = deriv(B);
    Bp.c.resize(static_cast<size_t>(N) + 1, make_scalar(y, 0));
    Series<K> Bpp = deriv(Bp);
    Bpp.c.resize(static_cast<size_t>(N) + 1, make_scalar(y, 0));
    Series<K> xs = series_x(y, N);
    Series<K> one = series_const(y, 1, 1, N);
    F = series_x(y, N);
    int m = 1;
    while (m < N) {
        m = std::min(2 * m + 1, N);
        Series<K> Ft = truncate(F, m);
        Series<K> e = exp(compose(truncate(Bp, m), Ft));
        Series<K> num = Ft - truncate(xs, m) * e;
        Series<K> den = truncate(one, m) - truncate(xs, m) * e * compose(truncate(Bpp, m), Ft);
        Ft = Ft - num / den;
        F = Ft;
        F.c.resize(static_cast<size_t>(N) + 1, make_scalar(y, 0));
    }
    F = truncate(F, N);
    // C' = F/x exactly (F has zero constant term)
    Series<K> Cp = series_const(y, 0, 1, N - 1 >= 0 ? N - 1 : 0);
    for (int i = 0; i + 1 <= N; ++i) Cp.c[i] = F.c[i + 1];
    C = integ(Cp);  // order N, C(0) = 0
    G = exp(C);
}

template <class K>
SeriesSystem<K> build_series_system(const ClassSpec& spec, const K& y, int N) {
    SeriesSystem<K> sys;
    sys.y = y;
    sys.D = solve_D_series(spec, y, N);
    sys.B = build_B_series(spec, y, sys.D);
    build_CG_series(y, sys.B, sys.F, sys.C, sys.G);
    return sys;
}

// ---- pointwise / jet engine ------------------------------------------------

template <class V>
V phi(const ClassSpec& spec, const V& x, const V& z, const V& y) {
    V one = from_rational(x, Rational(1));
    V tz = eval_T(spec, TPart::Tz, x, z);
    return from_rational(x, Rational(2)) * tz / (x * x) - t_log((one + z) / (one + y)) +
           x * z * z / (one + x * z);
}
template <class V>
V phi_z(const ClassSpec& spec, const V& x, const V& z, const V& y) {
    (void)y;
    V one = from_rational(x, Rational(1));
    V tzz = eval_T(spec, TPart::Tzz, x, z);
    V q = one + x * z;
    return from_rational(x, Rational(2)) * tzz / (x * x) - one / (one + z) +
           (from_rational(x, Rational(2)) * x * z + x * x * z * z) / (q * q);
}
template <class V>
V phi_x(const ClassSpec& spec, const V& x, const V& z, const V& y) {
    (void)y;
    V tz = eval_T(spec, TPart::Tz, x, z);
    V txz = eval_T(spec, TPart::Txz, x, z);
    V one = from_rational(x, Rational(1));
    V q = one + x * z;
    return from_rational(x, Rational(-4)) * tz / (x * x * x) +
           from_rational(x, Rational(2)) * txz / (x * x) + z * z / (q * q);
}
template <class V>
V phi_zz(const ClassSpec& spec, const V& x, const V& z, const V& y) {
    (void)y;
    V tzzz = eval_T(spec, TPart::Tzzz, x, z);
    V one = from_rational(x, Rational(1));
    V q = one + x * z;
    return from_rational(x, Rational(2)) * tzzz / (x * x) + one / ((one + z) * (one + z)) +
           from_rational(x, Rational(2)) * x / (q * q * q);
}
template <class V>
V phi_zx(const ClassSpec& spec, const V& x, const V& z, const V& y) {
    (void)y;
    V tzz = eval_T(spec, TPart::Tzz, x, z);
    V txzz = eval_T(spec, TPart::Txzz, x, z);
    V one = from_rational(x, Rational(1));
    V q = one + x * z;
    return from_rational(x, Rational(-4)) * tzz / (x * x * x) +
           from_rational(x, Rational(2)) * txzz / (x * x) +
           from_rational(x, Rational(2)) * z / (q * q * q);
}

// explicit B(x, D) closed form; valid at any admissible point, including the
// singularity itself (D continuous there)
template <class V>
V B_of_D(const ClassSpec& spec, const V& x, const V& D, const V& y) {
    V one = from_rational(x, Rational(1));
    V half = from_rational(x, Rational(1, 2));
    V T = eval_T(spec, TPart::T, x, D);
    V L = t_log((one + D) / (one + y));
    return T - half * x * D + half * t_log(one + x * D) +
           half * x * x * (D + half * D * D - (one + D) * L);
}

struct NewtonFailure : std::runtime_error {
    long double residual;
    NewtonFailure(const std::string& what, long double res)
        : std::runtime_error(what + " (residual " + std::to_string((double)res) + ")"), residual(res) {}
};

class PointEngine {
  public:
    PointEngine(const ClassSpec& spec, long double y) : spec_(spec), y_(y) {}

    const ClassSpec& spec() const { return spec_; }
    long double y() const { return y_; }

    // Newton polish of D at x from a warm start; throws on non-convergence.
    long double refine_D(long double x, long double z0, long double tol = 1e-13L) const {
        long double z = z0;
        for (int it = 0; it < 200; ++it) {
            long double f = phi(spec_, x, z, y_);
            if (fabsl(f) < tol) return z;
            long double fz = phi_z(spec_, x, z, y_);
            if (fz == 0.0L) break;
            long double dz = -f / fz;
            int halvings = 0;
            while (!domain_ok(spec_, x, z + dz) && halvings < 60) { dz *= 0.5L; ++halvings; }
            if (halvings >= 60) break;
            z += dz;
        }
        long double res = fabsl(phi(spec_, x, z, y_));
        if (res < 1e-11L) return z;  // branch-point neighbourhoods converge slowly
        throw NewtonFailure("network equation Newton did not converge at x=" + std::to_string((double)x), res);
    }

    // continuation from x=0 (where D=y) on a 64-point grid
    long double solve_D(long double x) const {
        long double z = y_;
        for (int k = 1; k <= 64; ++k) z = refine_D(x * k / 64.0L, z);
        return z;
    }

    // Taylor jet of D at x0 to the given order (x0 strictly inside)
    Jet D_jet(long double x0, int order) const {
        long double d0 = solve_D(x0);
        Jet xj = Jet::variable(order, x0);
        Jet yj = Jet::constant(order, y_);
        Jet Dj = Jet::constant(order, d0);
        for (int it = 0; it < order + 3; ++it)
            Dj = Dj - phi(spec_, xj, Dj, yj) / phi_z(spec_, xj, Dj, yj);
        return Dj;
    }

    Jet B_jet(long double x0, int order) const {
        Jet xj = Jet::variable(order, x0);
        Jet yj = Jet::constant(order, y_);
        return B_of_D(spec_, xj, D_jet(x0, order), yj);
    }

    long double B_point(long double x) const {
        return B_of_D(spec_, x, solve_D(x), y_);
    }
    // B at an already-known D (e.g. exactly at the singularity)
    long double B_at(long double x, long double d) const { return B_of_D(spec_, x, d, y_); }

    long double Bp(long double x) const { return B_jet(x, 1).d(1); }
    long double Bpp(long double x) const { return B_jet(x, 2).d(2); }
    long double Bppp(long double x) const { return B_jet(x, 3).d(3); }

    // psi(u) = u exp(-B'(u)); F(x) is its functional inverse on (0, u_max)
    long double psi(long double u) const { return u * expl(-Bp(u)); }

    long double F_point(long double x, long double u_max) const {
        // bracketed Newton: psi is increasing on (0, u_max]
        long double lo = x, hi = u_max;
        long double u = std::min(u_max, x * expl(Bp(x)));
        for (int it = 0; it < 100; ++it) {
            Jet bj = B_jet(u, 2);
            long double e = expl(-bj.d(1));
            long double val = u * e - x;
            if (fabsl(val) < 1e-15L * (fabsl(x) + 1e-30L)) return u;
            if (val > 0) hi = u; else lo = u;
            long double dpsi = e * (1.0L - u * bj.d(2));
            long double un = (dpsi > 0) ? u - val / dpsi : (lo + hi) / 2;
            if (!(un > lo && un < hi)) un = (lo + hi) / 2;
            if (fabsl(un - u) < 1e-18L * fabsl(u)) return un;
            u = un;
        }
        return u;
    }

    long double C_point(long double x, long double u_max) const {
        long double F = F_point(x, u_max);
        return F * (1.0L + logl(x / F)) + B_point(F);
    }

  private:
    const ClassSpec& spec_;
    long double y_;
};

}  // namespace gclass
