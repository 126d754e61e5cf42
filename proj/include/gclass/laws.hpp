#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gclass/singular.hpp"

// Limit-law constants: edges, blocks, cut vertices, appearances, connected
// components, largest component, and the density <-> edge-weight map.

namespace gclass {

namespace detail {

// first and second derivatives of f at y0 by 5-point central stencils at
// three step sizes with two Richardson levels (stencil error h^4, then h^6)
struct Derivs { long double d1, d2; };

inline Derivs stencil_derivs(const std::function<long double(long double)>& f, long double y0,
                             long double h0) {
    std::map<int, long double> fv;  // offset in units of h0
    auto at = [&](int k) {
        auto it = fv.find(k);
        if (it != fv.end()) return it->second;
        long double v = f(y0 + k * h0);
        fv[k] = v;
        return v;
    };
    auto A1 = [&](int s) {  // f' with step s*h0
        return (-at(2 * s) + 8.0L * at(s) - 8.0L * at(-s) + at(-2 * s)) / (12.0L * s * h0);
    };
    auto A2 = [&](int s) {  // f'' with step s*h0
        long double h = s * h0;
        return (-at(2 * s) + 16.0L * at(s) - 30.0L * at(0) + 16.0L * at(-s) - at(-2 * s)) /
               (12.0L * h * h);
    };
    auto rich = [&](long double a_h, long double a_2h, long double a_4h) {
        long double r1 = (16.0L * a_h - a_2h) / 15.0L;
        long double r2 = (16.0L * a_2h - a_4h) / 15.0L;
        return (64.0L * r1 - r2) / 63.0L;
    };
    Derivs d;
    d.d1 = rich(A1(1), A1(2), A1(4));
    d.d2 = rich(A2(1), A2(2), A2(4));
    return d;
}

}  // namespace detail

// ---- edges (theorem: kappa/lambda pairs for all graphs and 2-connected) ----

struct EdgeLaw {
    long double kappa, lambda;    // edges in connected / arbitrary graphs
    long double kappa2, lambda2;  // edges in 2-connected graphs
};

inline EdgeLaw edge_law(const ClassSpec& spec, long double h0 = 2.5e-3L) {
    // shared evaluation of (log rho, log R) with case-stability check
    std::map<long long, std::pair<long double, long double>> cache;
    std::string label0;
    auto eval = [&](long double y) {
        long long key = (long long)llroundl(y * 1e12L);
        auto it = cache.find(key);
        if (it == cache.end()) {
            SingularReport rep = analyze(spec, y);
            if (label0.empty()) label0 = rep.case_label;
            else if (rep.case_label != label0)
                throw std::domain_error("differentiation stencil crosses a critical y (case changes from " +
                                        label0 + " to " + rep.case_label + ")");
            it = cache.emplace(key, std::make_pair(logl(rep.c.rho), logl(rep.loc.R))).first;
        }
        return it->second;
    };
    auto d_rho = detail::stencil_derivs([&](long double y) { return eval(y).first; }, 1.0L, h0);
    auto d_R = detail::stencil_derivs([&](long double y) { return eval(y).second; }, 1.0L, h0);
    EdgeLaw law;
    // with l = log rho:  kappa = -l'(1),  lambda = -l''(1) - l'(1)
    law.kappa = -d_rho.d1;
    law.lambda = -d_rho.d2 - d_rho.d1;
    law.kappa2 = -d_R.d1;
    law.lambda2 = -d_R.d2 - d_R.d1;
    return law;
}

// ---- blocks and cut vertices ------------------------------------------------

struct BlockCutLaw {
    long double block_mean, block_var;  // per-n coefficients
    long double cut_mean, cut_var;
};

inline BlockCutLaw block_cut_law(const ClassSpec& spec, const SingularReport& rep) {
    BlockCutLaw law;
    long double rho = rep.c.rho;
    if (rep.c.tau_mode) {
        long double tau = rep.c.tau;
        PointEngine eng(spec, rep.y);
        long double B3 = eng.Bppp(tau);
        long double denom = 1.0L + tau * tau * B3;
        law.block_mean = logl(tau / rho);
        law.block_var = law.block_mean - 1.0L / denom;
        law.cut_mean = 1.0L - rho / tau;
        // from the quasi-powers singularity sigma(u) = psi_u(tau(u)) of the
        // cut-vertex-marked composition: sigma'' = psi_uu - psi_ut^2/psi_tt
        law.cut_var = (rho / tau) * (1.0L - rho / tau) - (rho / tau) * (rho / tau) / denom;
    } else if (rep.c.C_exponent == Rational(5, 2)) {
        long double R = rep.loc.R;
        law.block_mean = logl(R / rho);
        law.block_var = law.block_mean;
        law.cut_mean = 1.0L - rho / R;
        law.cut_var = (rho / R) * (1.0L - rho / R);
    } else {
        throw std::domain_error("block/cut-vertex constants unavailable at a critical connected level");
    }
    return law;
}

// ---- appearances of a fixed subgraph ----------------------------------------

enum class AppearanceKind { ROOTED_SUBGRAPH, BLOCK };

// mean/variance per-n coefficients for the number of appearances
inline std::pair<long double, long double> appearance_law(const SingularReport& rep, int size,
                                                          AppearanceKind kind) {
    if (size < 1) throw std::domain_error("appearance size must be >= 1");
    long double fct = 1.0L;
    for (int i = 2; i <= size; ++i) fct *= i;
    if (kind == AppearanceKind::ROOTED_SUBGRAPH) {
        long double m = powl(rep.c.rho, size) / fct;
        return {m, rep.c.rho};
    }
    long double m = powl(rep.loc.R, size) / fct;
    return {m, m};
}

// ---- connected components ----------------------------------------------------

struct ComponentLaw {
    long double nu;  // Poisson parameter = C(rho)
    long double p;   // probability of connectedness = e^{-nu}
};

inline ComponentLaw component_law(const SingularReport& rep) {
    ComponentLaw law;
    law.nu = rep.c.C0;  // C(x) -> C0 as x -> rho (singular terms vanish)
    law.p = expl(-law.nu);
    return law;
}

// ---- largest component (vertices missed by it) -------------------------------

struct MissedMassLaw {
    std::vector<long double> p_k;  // P(n - L_n = k), k = 0..k_max
    long double expectation;       // tau in the tau-mode case, R otherwise
    bool variance_defined;
    long double variance;          // R + 2 C4 when defined
};

// log of a positive rational, exact up to double rounding
inline long double log_rational(const Rational& q) {
    signed long ne, de;
    double nm = mpz_get_d_2exp(&ne, q.get_num().get_mpz_t());
    double dm = mpz_get_d_2exp(&de, q.get_den().get_mpz_t());
    return logl((long double)nm) - logl((long double)dm) + (ne - de) * logl(2.0L);
}

inline MissedMassLaw missed_mass_law(const ClassSpec& spec, const SingularReport& rep, int k_max) {
    MissedMassLaw law;
    Rational y(1);
    auto sys = build_series_system(spec, y, k_max + 1);
    ComponentLaw comp = component_law(rep);
    long double log_p = -comp.nu;
    long double log_rho = logl(rep.c.rho);
    law.p_k.resize(k_max + 1, 0.0L);
    law.p_k[0] = comp.p;  // g_0 = 1 (empty graph)
    long double lfct = 0.0L;
    for (int k = 1; k <= k_max; ++k) {
        lfct += logl((long double)k);
        Rational gk_egf = sys.G.c[k];  // g_k / k!
        if (gk_egf == 0) continue;
        // p_k = p * g_k rho^k / k! = p * (g_k/k!) * rho^k
        law.p_k[k] = expl(log_p + log_rational(gk_egf) + k * log_rho);
    }
    law.expectation = rep.c.tau_mode ? rep.c.tau : rep.loc.R;
    if (rep.c.tau_mode || rep.c.C_exponent != Rational(5, 2)) {
        law.variance_defined = false;
        law.variance = 0.0L;
    } else {
        law.variance_defined = true;
        law.variance = rep.loc.R + 2.0L * rep.c.C4;
    }
    return law;
}

// ---- edge-density map: solve -y rho'(y)/rho(y) = mu ---------------------------

inline long double kappa_at(const ClassSpec& spec, long double y) {
    long double h0 = 2.5e-3L * y;
    auto d = detail::stencil_derivs(
        [&](long double u) { return logl(rho_of_y(spec, u)); }, y, h0);
    return -y * d.d1;
}

inline long double density_map(const ClassSpec& spec, long double mu) {
    long double lo = 1.0L, hi = 1.0L;
    long double k1 = kappa_at(spec, 1.0L);
    auto ok = [&](long double y) {
        try { return kappa_at(spec, y); }
        catch (const std::exception&) { return (long double)NAN; }
    };
    if (mu == k1) return 1.0L;
    if (mu > k1) {
        long double k = k1;
        while (k < mu) {
            lo = hi; hi *= 2.0L;
            if (hi > 1e8L) throw std::domain_error("density out of range for this class (too high)");
            k = ok(hi);
            if (std::isnan((double)k)) throw std::domain_error("density out of range for this class (too high)");
        }
    } else {
        long double k = k1;
        while (k > mu) {
            hi = lo; lo /= 2.0L;
            if (lo < 1e-8L) throw std::domain_error("density out of range for this class (too low)");
            k = ok(lo);
            if (std::isnan((double)k)) throw std::domain_error("density out of range for this class (too low)");
        }
    }
    for (int it = 0; it < 60; ++it) {
        long double m = sqrtl(lo * hi);
        if (kappa_at(spec, m) > mu) hi = m; else lo = m;
        if (hi - lo < 1e-10L * hi) break;
    }
    return sqrtl(lo * hi);
}

}  // namespace gclass
