#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "gclass/airy.hpp"
#include "gclass/laws.hpp"
#include "gclass/singular.hpp"

// Extremal-component laws: discrete 2-connected-core law for tau-mode
// ("series-parallel-like") classes, Airy largest-block law for rho=psi(R)
// ("planar-like") classes, 3-connected-component chains, and the critical
// edge-weight scan.

namespace gclass {

// ---- discrete core law (tau-mode classes) ------------------------------------

struct DiscreteCoreLaw {
    long double tau, R;
    std::vector<long double> q;    // q_k = P(core size = k), from exact coefficients
    std::string tail_kind;         // "k^-1/2" (B-exponent 3/2) or "k^-3/2" (5/2)
    long double tail_const;        // q_k ~ tail_const * k^exp * (tau/R)^k
    long double coreless;          // probability of a coreless rooted graph
};

inline long double core_pgf(const SingularReport& rep, const PointEngine& eng, long double u) {
    return rep.c.tau * u * eng.Bpp(u * rep.c.tau);  // q(u) = tau u B''(u tau)
}

inline DiscreteCoreLaw subcritical_core(const ClassSpec& spec, const SingularReport& rep,
                                        int k_max = 80) {
    if (!rep.c.tau_mode)
        throw std::domain_error("discrete core law requires the tau-mode connected level");
    DiscreteCoreLaw law;
    law.tau = rep.c.tau;
    law.R = rep.loc.R;
    Rational y(1);
    Series<Rational> D = solve_D_series(spec, y, k_max + 2);
    Series<Rational> B = build_B_series(spec, y, D);
    law.q.assign(k_max + 1, 0.0L);
    long double tp = 1.0L;  // tau^k
    for (int k = 1; k <= k_max; ++k) {
        tp *= law.tau;
        // q(u) = sum_m b_m/(m-2)! tau^{m-1} u^{m-1}; with k = m-1:
        Rational bc = B.c[k + 1];  // b_{k+1}/(k+1)!
        law.q[k] = (long double)bc.get_d() * (long double)k * (long double)(k + 1) * tp;
    }
    if (rep.b.B_exponent == Rational(3, 2)) {
        law.tail_kind = "k^-1/2";
        law.tail_const = 3.0L * rep.b.B3 / (4.0L * law.R * sqrtl((long double)M_PIl));
    } else {
        law.tail_kind = "k^-3/2";
        law.tail_const = -5.0L * rep.b.B5 / (2.0L * law.R * sqrtl((long double)M_PIl));
    }
    law.coreless = 1.0L - rep.c.rho / law.tau;
    return law;
}

// ---- Airy largest-block law (rho = psi(R) classes) ----------------------------

struct CriticalCoreLaw {
    long double alpha, c;                // largest block ~ alpha n, scale c
    long double alpha0, M3, p_s;         // two-mode core partition
    long double H0, H2, H3, Q0, Q2, Q3;  // singular frames of H = xC' and Q = B'
    std::vector<long double> small_core; // P(core = k) in the O(1) mode
    bool second_block_sublinear = true;  // second largest block is o(n) (qualitative)
};

inline CriticalCoreLaw critical_core(const ClassSpec& spec, const SingularReport& rep,
                                     int k_max = 40) {
    if (rep.c.tau_mode || rep.c.C_exponent != Rational(5, 2))
        throw std::domain_error("Airy largest-block law requires the rho = psi(R) connected level");
    CriticalCoreLaw law;
    long double R = rep.loc.R;
    law.alpha = (R - 2.0L * rep.b.B4) / R;
    law.c = powl(-2.0L * R / (15.0L * rep.b.B5), 2.0L / 3.0L);
    law.H0 = R;
    law.H2 = -R - 2.0L * rep.c.C4;
    law.H3 = -2.5L * rep.c.C5;
    law.Q0 = -rep.b.B2 / R;
    law.Q2 = -2.0L * rep.b.B4 / R;
    law.Q3 = -2.5L * rep.b.B5 / R;
    law.alpha0 = -law.H0 / law.H2;
    law.M3 = -law.Q2 * law.H3 / R + law.Q3 * powl(law.alpha0, -1.5L);
    law.p_s = -law.Q2 * law.H3 / (R * law.M3);
    if (k_max > 0 && spec.kind != ClassSpec::TABULATED) {
        Rational y(1);
        Series<Rational> D = solve_D_series(spec, y, k_max + 2);
        Series<Rational> B = build_B_series(spec, y, D);
        law.small_core.assign(k_max + 1, 0.0L);
        long double Rp = 1.0L / R;  // R^{k-1}
        for (int k = 1; k <= k_max; ++k) {
            Rp *= R;
            // [z^k] B'(z) = (k+1) b_{k+1}/(k+1)!
            long double qk = (long double)B.c[k + 1].get_d() * (long double)(k + 1);
            law.small_core[k] = (law.H3 / law.M3) * k * Rp * qk;
        }
    }
    return law;
}

// ---- edges in the 3-connected core of edge-weighted 2-connected graphs --------

struct ThreeCoreLaw {
    long double Dt0, Dt2, Dt3;  // expansion of D(R, y) in Y = sqrt(1-y)
    long double beta, c2;       // edges law: ~ beta m, scale c2
};

inline ThreeCoreLaw edges_in_3core(const ClassSpec& spec, const SingularReport& rep) {
    if (!spec.sing)
        throw std::domain_error("3-core law requires singular-frame data on the manifold");
    if (rep.loc.source != Source::TSING)
        throw std::domain_error("3-core law requires a manifold-sourced singularity");
    ThreeCoreLaw law;
    long double R = rep.loc.R, D0 = rep.loc.D0;
    long double T4R = eval(spec.sing->T4, R, R);
    long double T5R = eval(spec.sing->T5, R, R);
    long double RD = 1.0L + R * D0;
    // y-direction frame at frozen x = R: the log(1+y) term contributes
    // exactly -1/2 at Y^2, and the z-direction frame has no r' terms
    long double P02 = -0.5L;
    long double P20 = -4.0L * T4R / (R * R * D0) + D0 / (1.0L + D0) - 2.0L * R * D0 * D0 / RD +
                      R * R * D0 * D0 * D0 / (RD * RD);
    law.Dt0 = D0;
    law.Dt2 = D0 * P02 / P20;
    law.Dt3 = -5.0L * T5R * powl(-P02, 1.5L) / (R * R * powl(P20, 2.5L));
    law.beta = -law.Dt0 / law.Dt2;
    law.c2 = (-law.Dt2 / law.Dt0) * powl(-law.Dt2 / (3.0L * law.Dt3), 2.0L / 3.0L);
    return law;
}

// ---- largest 3-connected component chain ---------------------------------------

struct ThreeConnLaw {
    AiryParams block_vertices;  // (alpha, c)
    AiryParams block_edges;     // (kappa2 alpha, c / kappa2)
    AiryParams core3_edges;     // (beta, c2)
    AiryParams comp3_edges;     // composed law for edges of the largest 3-component
    AiryParams comp3_vertices;  // rescaled by mu = -R r'(R)/r(R)
    long double mu;
};

inline ThreeConnLaw largest_3conn(const ClassSpec& spec, const SingularReport& rep,
                                  long double kappa2) {
    ThreeConnLaw law;
    CriticalCoreLaw block = critical_core(spec, rep, 0);
    ThreeCoreLaw core3 = edges_in_3core(spec, rep);
    law.block_vertices = {block.alpha, block.c};
    law.block_edges = airy_scale(law.block_vertices, kappa2);
    law.core3_edges = {core3.beta, core3.c2};
    law.comp3_edges = airy_compose(law.block_edges, law.core3_edges);
    long double R = rep.loc.R;
    long double rp = eval(spec.sing->r1, R, R);
    long double rv = eval(spec.sing->r, R, R);
    law.mu = -R * rp / rv;
    if (!(law.mu > 0)) throw std::domain_error("vertex/edge ratio mu must be positive");
    law.comp3_vertices = {law.mu * law.comp3_edges.a, law.comp3_edges.c / law.mu};
    return law;
}

// ---- largest block at prescribed edge density ----------------------------------

struct DensityBlockLaw {
    long double y0;
    bool airy_mode;  // true: CriticalCoreLaw applies; false: DiscreteCoreLaw
    long double alpha = 0, c = 0;            // airy mode
    long double coreless = 0, tau = 0;       // discrete mode
};

inline DensityBlockLaw block_law_at_density(const ClassSpec& spec, long double mu) {
    DensityBlockLaw out;
    out.y0 = density_map(spec, mu);
    SingularReport rep = analyze(spec, out.y0);
    if (rep.c.tau_mode) {
        out.airy_mode = false;
        out.coreless = 1.0L - rep.c.rho / rep.c.tau;
        out.tau = rep.c.tau;
    } else {
        out.airy_mode = true;
        CriticalCoreLaw law = critical_core(spec, rep, 0);
        out.alpha = law.alpha;
        out.c = law.c;
    }
    return out;
}

// ---- scan for critical edge weights --------------------------------------------

// signed distance between the two singularity sources: positive when the
// branch point lies strictly inside the manifold, negative when the
// manifold singularity dominates, ~0 at coalescence
inline long double critical_gap(const ClassSpec& spec, long double y) {
    RLoc loc = find_R(spec, y);
    if (loc.source == Source::BRANCH) {
        if (!spec.sing) return 1.0L;  // no manifold: never critical
        long double r = eval(spec.sing->r, loc.R, loc.R);
        return r - loc.D0;
    }
    return phi_z(spec, loc.R, loc.D0, y);  // < 0 on the manifold side
}

struct ScanPoint {
    long double y;
    std::string label;
    long double gap;
    long double psi1;  // 1 - S: sign of psi'(R); NaN when the B-exponent is 3/2
};

struct ScanResult {
    std::vector<ScanPoint> points;
    std::vector<std::pair<long double, long double>> critical;  // (y0, mu0 or NaN)
};

inline ScanResult scan_critical(const ClassSpec& spec, long double y_lo, long double y_hi,
                                int steps) {
    if (!(y_lo > 0) || !(y_hi > y_lo) || steps < 2) throw std::domain_error("bad scan range");
    ScanResult res;
    // B-level only: avoids the connected level, which is allowed to fail in
    // the immediate vicinity of the crossing being localized
    auto psi1_at = [&](long double y) {
        try {
            RLoc loc = find_R(spec, y);
            if (loc.source == Source::BRANCH) return (long double)NAN;
            BLevel b = expand_B(spec, y, loc);
            return 1.0L - 2.0L * b.B4 / loc.R;
        } catch (const std::exception&) {
            return (long double)NAN;
        }
    };
    for (int i = 0; i < steps; ++i) {
        long double y = y_lo * powl(y_hi / y_lo, (long double)i / (steps - 1));
        ScanPoint p;
        p.y = y;
        try {
            SingularReport rep = analyze(spec, y);
            p.label = rep.case_label;
            p.gap = spec.sing ? critical_gap(spec, y) : 1.0L;
        } catch (const std::exception&) {
            p.label = "error";
            p.gap = NAN;
        }
        p.psi1 = spec.sing ? psi1_at(y) : NAN;
        res.points.push_back(p);
    }
    if (!spec.sing) return res;  // branch-only classes are case (1) throughout
    auto refine = [&](size_t i, long double ga, long double gb,
                      const std::function<long double(long double)>& g) {
        if (std::isnan((double)ga) || std::isnan((double)gb)) return;
        if (fabsl(ga) < 1e-9L) {  // grid point lands on the critical y
            res.critical.emplace_back(res.points[i].y, NAN);
            return;
        }
        if (ga * gb >= 0) return;
        long double a = res.points[i].y, b = res.points[i + 1].y;
        for (int it = 0; it < 60 && b - a > 1e-9L * b; ++it) {
            long double m = (a + b) / 2;
            long double gm = g(m);
            if (gm * ga <= 0) b = m; else { a = m; ga = gm; }
        }
        long double y0 = (a + b) / 2;
        long double mu0 = NAN;
        try { mu0 = kappa_at(spec, y0); } catch (const std::exception&) {}
        res.critical.emplace_back(y0, mu0);
    };
    for (size_t i = 0; i + 1 < res.points.size(); ++i) {
        // coalescence of the two sources: sign change of the gap
        refine(i, res.points[i].gap, res.points[i + 1].gap,
               [&](long double y) { return critical_gap(spec, y); });
        // connected-level criticality: sign change of psi'(R), i.e. of 1 - S
        refine(i, res.points[i].psi1, res.points[i + 1].psi1, psi1_at);
    }
    // both detectors can fire on the same crossing; merge near-duplicates
    std::sort(res.critical.begin(), res.critical.end());
    std::vector<std::pair<long double, long double>> merged;
    for (auto& c : res.critical) {
        if (!merged.empty() && fabsl(c.first - merged.back().first) < 1e-7L * c.first) {
            if (std::isnan((double)merged.back().second)) merged.back().second = c.second;
        } else {
            merged.push_back(c);
        }
    }
    res.critical = std::move(merged);
    return res;
}

}  // namespace gclass
