#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "gclass/network.hpp"

// Locating the dominant singularity R(y) of B, determining its source
// (branch point of the network equation vs. inherited singularity of T on
// the manifold z = r(x), vs. their coalescence), and computing the singular
// expansion coefficients of D, B, C, G.

namespace gclass {

enum class Source { BRANCH, TSING, CRITICAL };

inline const char* source_name(Source s) {
    switch (s) {
        case Source::BRANCH: return "branch-point";
        case Source::TSING: return "T-singularity";
        case Source::CRITICAL: return "critical-coalescence";
    }
    return "?";
}

struct RLoc {
    long double R = 0, D0 = 0;
    Source source = Source::BRANCH;
    long double phi_z_at = 0;           // Phi_z(R, D0)
    std::optional<long double> R_branch, R_manifold;
};

// Phi restricted to the manifold z = r(x) (closed form: T_z there equals
// -T2(x)/r(x))
template <class V>
V xi_manifold(const ClassSpec& spec, const V& x, const V& y) {
    const SingularData& s = *spec.sing;
    V r = eval(s.r, x, x);
    V T2 = eval(s.T2, x, x);
    V one = from_rational(x, Rational(1));
    return from_rational(x, Rational(-2)) * T2 / (x * x * r) - t_log((one + r) / (one + y)) +
           x * r * r / (one + x * r);
}

namespace detail {

struct MarchEnd { long double x, z; };

inline MarchEnd march_to_singularity(const PointEngine& eng) {
    const ClassSpec& spec = eng.spec();
    long double x = 1e-4L;
    long double z = eng.solve_D(x);
    long double fac = 2.0L;
    while (fac - 1.0L > 1e-12L) {
        long double xn = x * fac;
        bool ok = true;
        long double zn = z;
        try {
            zn = eng.refine_D(xn, z);
            if (zn < z - 1e-10L || fabsl(zn - z) > 0.5L * (1.0L + fabsl(z))) ok = false;
        } catch (const std::exception&) { ok = false; }
        if (ok) { x = xn; z = zn; }
        else fac = 1.0L + (fac - 1.0L) / 2.0L;
    }
    return {x, z};
}

// 2-D Newton for {Phi = 0, Phi_z = 0}
inline std::optional<MarchEnd> branch_newton(const ClassSpec& spec, long double y,
                                             long double x0, long double z0) {
    long double x = x0, z = z0;
    for (int it = 0; it < 120; ++it) {
        long double f1, f2;
        try {
            f1 = phi(spec, x, z, y);
            f2 = phi_z(spec, x, z, y);
        } catch (const std::exception&) { return std::nullopt; }
        if (fabsl(f1) + fabsl(f2) < 1e-13L) return MarchEnd{x, z};
        long double a, b, c, d;
        try {
            a = phi_x(spec, x, z, y); b = f2;  // dPhi/dx, dPhi/dz
            c = phi_zx(spec, x, z, y); d = phi_zz(spec, x, z, y);
        } catch (const std::exception&) { return std::nullopt; }
        long double det = a * d - b * c;
        if (det == 0.0L || !std::isfinite((double)det)) return std::nullopt;
        long double dx = (-f1 * d + f2 * b) / det;
        long double dz = (-a * f2 + c * f1) / det;
        int halvings = 0;
        while ((!domain_ok(spec, x + dx, z + dz) || x + dx <= 0) && halvings < 60) {
            dx *= 0.5L; dz *= 0.5L; ++halvings;
        }
        if (halvings >= 60) return std::nullopt;
        x += dx; z += dz;
    }
    return std::nullopt;
}

inline std::optional<long double> manifold_root(const ClassSpec& spec, long double y,
                                                long double x_near) {
    if (!spec.sing) return std::nullopt;
    auto xi = [&](long double x) { return xi_manifold(spec, x, y); };
    long double a = x_near * (1.0L - 1e-3L), b = x_near;
    long double fa = xi(a), fb = xi(b);
    // expand upward until a sign change brackets the crossing
    int guard = 0;
    while (fa * fb > 0 && guard++ < 200 && b < x_near * 1.6L) {
        a = b; fa = fb;
        b *= 1.003L; fb = xi(b);
    }
    if (fa * fb > 0) return std::nullopt;
    for (int it = 0; it < 200; ++it) {
        long double m = (a + b) / 2;
        long double fm = xi(m);
        if (fm == 0.0L) { a = b = m; break; }
        if (fa * fm <= 0) { b = m; fb = fm; } else { a = m; fa = fm; }
        if (b - a < 1e-20L * b) break;
    }
    long double x = (a + b) / 2;
    // Newton polish with the jet derivative
    for (int it = 0; it < 8; ++it) {
        Jet xj = Jet::variable(1, x);
        Jet yj = Jet::constant(1, y);
        Jet f = xi_manifold(spec, xj, yj);
        if (f.d(1) == 0.0L) break;
        long double step = f.value() / f.d(1);
        if (!std::isfinite((double)step)) break;
        x -= step;
        if (fabsl(step) < 1e-19L * x) break;
    }
    return x;
}

}  // namespace detail

inline RLoc find_R(const ClassSpec& spec, long double y) {
    PointEngine eng(spec, y);
    auto end = detail::march_to_singularity(eng);
    auto branch = detail::branch_newton(spec, y, end.x, end.z);
    if (branch) {
        // reject spurious convergence far from the march end or outside the domain
        bool near = fabsl(branch->x - end.x) < 0.25L * end.x && branch->x > 0 && branch->z > 0;
        if (!near) branch.reset();
        else if (spec.sing) {
            long double r = eval(spec.sing->r, branch->x, branch->x);
            if (1.0L - branch->z / r < 1e-7L) branch.reset();
        }
    }
    auto manifold = detail::manifold_root(spec, y, end.x);
    RLoc loc;
    if (branch) loc.R_branch = branch->x;
    if (manifold) loc.R_manifold = *manifold;
    if (!branch && !manifold)
        throw std::runtime_error("no singularity located for class '" + spec.name +
                                 "' at y=" + std::to_string((double)y));
    auto finish_manifold = [&]() {
        loc.R = *manifold;
        loc.D0 = eval(spec.sing->r, loc.R, loc.R);
        loc.phi_z_at = phi_z(spec, loc.R, loc.D0, y);
        loc.source = (fabsl(loc.phi_z_at) < 1e-9L) ? Source::CRITICAL : Source::TSING;
    };
    if (branch && manifold) {
        if (fabsl(branch->x - *manifold) < 1e-9L * std::max(branch->x, *manifold)) {
            finish_manifold();
            loc.source = Source::CRITICAL;
        } else if (branch->x < *manifold) {
            loc.R = branch->x; loc.D0 = branch->z;
            loc.phi_z_at = phi_z(spec, loc.R, loc.D0, y);
            loc.source = Source::BRANCH;
        } else finish_manifold();
    } else if (branch) {
        loc.R = branch->x; loc.D0 = branch->z;
        loc.phi_z_at = phi_z(spec, loc.R, loc.D0, y);
        loc.source = Source::BRANCH;
    } else finish_manifold();
    return loc;
}

// ---- B-level expansion -----------------------------------------------------

struct BLevel {
    Source source;
    Rational B_exponent;            // 3/2, 5/2 or 5/3
    long double B0 = 0, B1 = 0, B2 = 0, B3 = 0, B4 = 0, B5 = 0;
    long double D1 = 0, D2 = 0, D3 = 0, D43 = 0;
    long double P = 0, Q = 0;
    long double rprime = 0, rsecond = 0;
};

inline BLevel expand_branch(const ClassSpec& spec, long double y, const RLoc& loc) {
    if (loc.source != Source::BRANCH) throw std::domain_error("expand_branch needs a branch-point source");
    BLevel b;
    b.source = loc.source;
    b.B_exponent = Rational(3, 2);
    long double R = loc.R, D0 = loc.D0;
    long double px = phi_x(spec, R, D0, y);
    long double pzz = phi_zz(spec, R, D0, y);
    if (!(px > 0) || !(pzz > 0)) throw std::domain_error("degenerate branch point: vanishing formula denominator");
    b.D1 = -sqrtl(2.0L * R * px / pzz);
    PointEngine eng(spec, y);
    b.B0 = eng.B_at(R, D0);
    b.B1 = 0.0L;
    b.B3 = -(R * R * R * px / 3.0L) * b.D1;
    // B'(x) = -B2/R - (3/2)(B3/R) X + O(X^2); Richardson in X kills the X^2 term
    auto h = [&](long double X) {
        long double x = R * (1.0L - X * X);
        return eng.Bp(x) + 1.5L * (b.B3 / R) * X;
    };
    long double X1 = 2e-3L;
    b.B2 = -R * ((4.0L * h(X1 / 2) - h(X1)) / 3.0L);
    return b;
}

inline BLevel expand_tsing(const ClassSpec& spec, long double y, const RLoc& loc) {
    if (!spec.sing) throw std::domain_error("class lacks singular-frame data");
    BLevel b;
    b.source = loc.source;
    const SingularData& s = *spec.sing;
    long double R = loc.R, D0 = loc.D0;
    long double rp = eval(s.r1, R, R), rpp = eval(s.r2, R, R);
    b.rprime = rp; b.rsecond = rpp;
    // Taylor data of T_i(x) at R in powers of X^2 = 1 - x/R
    auto Ti = [&](const ExprPtr& f) { return (long double)eval(f, R, R); };
    long double T00 = Ti(s.T0), T20 = Ti(s.T2), T40 = Ti(s.T4), T50 = Ti(s.T5);
    long double T02 = -R * Ti(s.T0x), T22 = -R * Ti(s.T2x);
    long double T04 = R * R * Ti(s.T0xx) / 2.0L;
    long double RD = 1.0L + R * D0;
    b.P = -(4.0L * T20 + 2.0L * T22) / (R * R * D0) - 2.0L * T20 * rp / (R * D0 * D0) +
          R * rp / (1.0L + D0) - R * D0 * (D0 + (2.0L + R * D0) * R * rp) / (RD * RD);
    b.Q = -4.0L * T40 / (R * R * D0) + D0 / (1.0L + D0) - 2.0L * R * D0 * D0 / RD +
          R * R * D0 * D0 * D0 / (RD * RD);
    long double Phi30 = -5.0L * T50 / (R * R * D0);
    if (loc.source == Source::CRITICAL) {
        b.B_exponent = Rational(5, 3);
        if (Phi30 == 0.0L) throw std::domain_error("degenerate critical point: Phi_{3,0} = 0");
        b.D43 = -D0 * powl(-b.P / Phi30, 2.0L / 3.0L);
        PointEngine eng(spec, y);
        b.B0 = eng.B_at(R, D0);
        return b;
    }
    b.B_exponent = Rational(5, 2);
    b.D2 = D0 * b.P / b.Q - R * rp;
    b.D3 = -5.0L * T50 * powl(-b.P, 1.5L) / (R * R * powl(b.Q, 2.5L));
    b.B0 = (R * R / 2.0L) * (D0 + D0 * D0 / 2.0L) - R * D0 / 2.0L + 0.5L * logl(RD) -
           0.5L * (1.0L + D0) * R * R * R * D0 * D0 / RD + T00 + (1.0L + D0) / D0 * T20;
    b.B2 = R * R * D0 * (D0 * D0 * R - 2.0L) / (2.0L * RD) + T02 -
           (2.0L * (1.0L + D0) / D0 + R * rp / D0) * T20;
    b.B4 = (T04 + (2.0L * R * R * R * D0 * D0 - powl(R, 4) * powl(D0, 4) + 2.0L * R * R * D0) /
                      (4.0L * RD * RD)) +
           ((1.0L + D0 + rpp) / D0) * T20 + (b.P * b.P / b.Q) * (R * R * D0 / 4.0L) +
           ((2.0L * R / D0) * T20 + powl(R, 4) * D0 * D0 / (2.0L * RD * RD)) * rp +
           (powl(R, 4) / 4.0L) * (D0 / (1.0L + D0) - 1.0L / (RD * RD)) * rp * rp;
    b.B5 = T50 * powl(-b.P / b.Q, 2.5L);
    return b;
}

inline BLevel expand_B(const ClassSpec& spec, long double y, const RLoc& loc) {
    return loc.source == Source::BRANCH ? expand_branch(spec, y, loc) : expand_tsing(spec, y, loc);
}

// ---- C/G level ---------------------------------------------------------------

struct CLevel {
    bool tau_mode = false;          // true: rho = psi(tau) with tau B''(tau) = 1
    long double tau = 0, S = 0, rho = 0;
    Rational C_exponent;            // 3/2, 5/2 or 5/3
    long double C0 = 0, C2 = 0, C3 = 0, C4 = 0, C5 = 0;
    long double G0 = 0, G2 = 0, G3 = 0, G4 = 0, G5 = 0;
    long double F43 = 0;            // X^{4/3} coefficient of F in the critical case
    bool near_critical = false;
};

// unique tau in (0,R) with tau B''(tau) = 1, when it exists
inline std::optional<long double> solve_tau(const PointEngine& eng, long double R) {
    auto f = [&](long double u) { return u * eng.Bpp(u) - 1.0L; };
    long double hi = R * (1.0L - 1e-10L);
    long double fhi;
    try { fhi = f(hi); } catch (const std::exception&) { hi = R * (1.0L - 1e-8L); fhi = f(hi); }
    if (!(fhi > 0)) return std::nullopt;
    long double lo = R / 2;
    long double flo = f(lo);
    int guard = 0;
    while (flo > 0 && guard++ < 60) { lo /= 2; flo = f(lo); }
    if (flo > 0) return std::nullopt;
    for (int it = 0; it < 120; ++it) {
        long double m = (lo + hi) / 2;
        if (f(m) > 0) hi = m; else lo = m;
    }
    return (lo + hi) / 2;
}

inline CLevel connected_level(const ClassSpec& spec, long double y, const RLoc& loc, const BLevel& b) {
    CLevel c;
    PointEngine eng(spec, y);
    long double R = loc.R;
    if (b.B_exponent == Rational(5, 2)) {
        c.S = 2.0L * b.B4 / R;  // S = R B''(R), finite here
        c.near_critical = fabsl(c.S - 1.0L) < 1e-6L && fabsl(c.S - 1.0L) > 1e-9L;
        if (fabsl(c.S - 1.0L) <= 1e-9L) {
            // coalescent connected level: psi'(R) = 0
            c.tau_mode = false;
            c.C_exponent = Rational(5, 3);
            c.rho = R * expl(b.B2 / R);
            long double psi3 = 2.5L * c.rho * b.B5 / R;
            c.F43 = -powl(c.rho, 5.0L / 3.0L) / powl(fabsl(psi3), 2.0L / 3.0L);
            c.C0 = R * (1.0L + logl(c.rho) - logl(R)) + b.B0;
            c.C2 = -R;
            c.G0 = expl(c.C0); c.G2 = c.C2 * c.G0;
            return c;
        }
        if (c.S < 1.0L) {
            c.tau_mode = false;
            c.C_exponent = Rational(5, 2);
            c.rho = R * expl(b.B2 / R);  // psi(R), since B'(R) = -B2/R
            c.C0 = R * (1.0L + logl(c.rho) - logl(R)) + b.B0;
            c.C2 = -R;
            c.C4 = -R * b.B4 / (2.0L * b.B4 - R);
            c.C5 = b.B5 * powl(1.0L - 2.0L * b.B4 / R, -2.5L);
            c.G0 = expl(c.C0);
            c.G2 = c.C2 * c.G0;
            c.G4 = (c.C4 + 0.5L * c.C2 * c.C2) * c.G0;
            c.G5 = c.C5 * c.G0;
            return c;
        }
    }
    // tau route: B'' unbounded at R (exponents 3/2, 5/3) or S > 1
    auto tau = solve_tau(eng, R);
    if (!tau) throw std::domain_error("connected level: no branch point and S not < 1 (near-critical?)");
    c.tau_mode = true;
    c.tau = *tau;
    if (b.B_exponent == Rational(3, 2) || b.B_exponent == Rational(5, 3))
        c.S = std::numeric_limits<long double>::infinity();
    else c.S = 2.0L * b.B4 / R;
    Jet bj = eng.B_jet(c.tau, 3);
    long double Bp = bj.d(1), Bpp = bj.d(2), Bppp = bj.d(3);
    c.rho = c.tau * expl(-Bp);
    c.C_exponent = Rational(3, 2);
    c.C0 = c.tau * (1.0L + logl(c.rho) - logl(c.tau)) + bj.value();
    c.C2 = -c.tau;
    c.C3 = (2.0L / 3.0L) *
           sqrtl(2.0L * c.rho * expl(Bp) / (c.tau * Bppp - c.tau * Bpp * Bpp + 2.0L * Bpp));
    c.G0 = expl(c.C0);
    c.G2 = c.C2 * c.G0;
    c.G3 = c.C3 * c.G0;
    return c;
}

// ---- assembled report --------------------------------------------------------

struct SingularReport {
    long double y;
    RLoc loc;
    BLevel b;
    CLevel c;
    std::string case_label;
};

inline std::string classify_label(const BLevel& b, const CLevel& c) {
    if (b.source == Source::CRITICAL) return "3.1";
    if (b.source == Source::BRANCH) return "1";
    if (c.C_exponent == Rational(5, 3)) return "3.2";
    return c.tau_mode ? "2.2" : "2.1";
}

inline SingularReport analyze(const ClassSpec& spec, long double y) {
    SingularReport rep;
    rep.y = y;
    rep.loc = find_R(spec, y);
    rep.b = expand_B(spec, y, rep.loc);
    rep.c = connected_level(spec, y, rep.loc, rep.b);
    rep.case_label = classify_label(rep.b, rep.c);
    return rep;
}

// rho(y) only (fast path for y-differentiation)
inline long double rho_of_y(const ClassSpec& spec, long double y) {
    RLoc loc = find_R(spec, y);
    BLevel b = expand_B(spec, y, loc);
    CLevel c = connected_level(spec, y, loc, b);
    return c.rho;
}

inline long double R_of_y(const ClassSpec& spec, long double y) { return find_R(spec, y).R; }

}  // namespace gclass
