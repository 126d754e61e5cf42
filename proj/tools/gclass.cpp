// gclass: command-line surface for the graph-class asymptotics pipeline.
//
// Subcommands: constants, counts, classify, scan, block-law, airy, oracle,
// density-map.  Exit codes: 0 ok, 2 usage, 3 conditional data missing,
// 4 numeric failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "gclass/airy.hpp"
#include "gclass/extremal.hpp"
#include "gclass/laws.hpp"
#include "gclass/oracle.hpp"

using json = nlohmann::ordered_json;
using namespace gclass;

namespace {

int g_precision = 10;

double rounded(long double v) {
    // json has no long double; round through a string at the chosen precision
    char buf[64];
    snprintf(buf, sizeof buf, "%.*Lg", g_precision, v);
    return strtod(buf, nullptr);
}

struct Options {
    std::string cls;
    std::string spec_file;
    std::string format;  // json, tsv or table
    long double y = 1.0L;
    double mu = NAN;
    int n = 6;
    int order = 30;
};

ClassSpec resolve_class(const Options& opt) {
    if (!opt.spec_file.empty()) {
        std::ifstream in(opt.spec_file);
        if (!in) throw std::runtime_error("cannot open spec file: " + opt.spec_file);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_class(ss.str());
    }
    return make_builtin(opt.cls);
}

struct ConditionalMissing : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require_data(const ClassSpec& spec) {
    if (spec.conditional && !spec.T && spec.kind == ClassSpec::CLOSED_FORM)
        throw ConditionalMissing("class '" + spec.name + "' " + spec.conditional_reason);
}

void emit(const json& j, const Options& opt, const std::string& dflt) {
    std::string fmt = opt.format.empty() ? dflt : opt.format;
    if (fmt == "json") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    // tsv/table: flatten one level; arrays-of-rows get one line per row
    if (j.contains("rows")) {
        for (const auto& row : j["rows"]) {
            bool first = true;
            for (const auto& [k, v] : row.items()) {
                (void)k;
                std::cout << (first ? "" : "\t") << (v.is_string() ? v.get<std::string>() : v.dump());
                first = false;
            }
            std::cout << "\n";
        }
        for (const auto& [k, v] : j.items())
            if (k != "rows") std::cout << "# " << k << " = " << v.dump() << "\n";
        return;
    }
    for (const auto& [k, v] : j.items()) {
        if (fmt == "table")
            std::cout << k << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        else
            std::cout << k << "\t" << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
}

// ---- subcommand bodies -------------------------------------------------------

void cmd_constants(const Options& opt) {
    ClassSpec spec = resolve_class(opt);
    require_data(spec);
    SingularReport rep = analyze(spec, opt.y);
    EdgeLaw e = edge_law(spec);
    BlockCutLaw bc = block_cut_law(spec, rep);
    ComponentLaw cl = component_law(rep);
    json j;
    j["class"] = spec.name;
    j["y"] = rounded(opt.y);
    j["case"] = rep.case_label;
    j["rho_inv"] = rounded(1.0L / rep.c.rho);
    j["R_inv"] = rounded(1.0L / rep.loc.R);
    j["kappa"] = rounded(e.kappa);
    j["kappa2"] = rounded(e.kappa2);
    j["lambda"] = rounded(e.lambda);
    j["lambda2"] = rounded(e.lambda2);
    j["block_mean"] = rounded(bc.block_mean);
    j["block_var"] = rounded(bc.block_var);
    j["cut_mean"] = rounded(bc.cut_mean);
    j["cut_var"] = rounded(bc.cut_var);
    j["component_poisson_nu"] = rounded(cl.nu);
    j["connected_probability"] = rounded(cl.p);
    j["source"] = {
        {"rho_inv", "connected-level singularity of C(x) at the given y"},
        {"R_inv", "2-connected-level singularity of B(x) at the given y"},
        {"kappa", "log-derivative of rho(y), Richardson-extrapolated stencil"},
        {"kappa2", "log-derivative of R(y), Richardson-extrapolated stencil"},
        {"block_mean", "quasi-powers shift of the block-marked composition"},
        {"cut_mean", "quasi-powers shift of the cut-vertex-marked composition"},
        {"connected_probability", "exp(-C(rho)) Poisson component law"},
    };
    emit(j, opt, "table");
}

void cmd_counts(const Options& opt, bool with_edges) {
    ClassSpec spec = resolve_class(opt);
    require_data(spec);
    if (opt.n > opt.order) throw std::runtime_error("--n exceeds --order");
    Rational y(1);
    auto sys = build_series_system(spec, y, opt.n + 1);
    json j;
    j["class"] = spec.name;
    json rows = json::array();
    Rational fct(1);
    for (int n = 0; n <= opt.n; ++n) {
        if (n > 0) fct *= n;
        json row;
        row["n"] = n;
        Rational g = sys.G.c[n] * fct, c = sys.C.c[n] * fct, b = sys.B.c[n] * fct;
        row["graphs"] = g.get_str();
        row["connected"] = c.get_str();
        row["two_connected"] = b.get_str();
        rows.push_back(row);
    }
    j["rows"] = rows;
    if (with_edges) {
        // g_n(y) is a polynomial in y of degree <= n(n-1)/2; recover its
        // coefficients exactly by evaluation at integer y and interpolation
        int nn = opt.n;
        if (nn > 8) throw std::runtime_error("--edges supported for n <= 8");
        int M = nn * (nn - 1) / 2;
        std::vector<std::vector<Rational>> vals(M + 1);
        for (int t = 0; t <= M; ++t) {
            Rational yt(t + 1);
            auto s = build_series_system(spec, yt, nn + 1);
            vals[t].resize(nn + 1);
            Rational f(1);
            for (int n = 0; n <= nn; ++n) {
                if (n > 0) f *= n;
                vals[t][n] = s.G.c[n] * f;
            }
        }
        json by_edges = json::array();
        for (int n = 0; n <= nn; ++n) {
            int deg = n * (n - 1) / 2;
            // Newton forward differences on the integer nodes y = 1..deg+1
            std::vector<Rational> nd(deg + 1);
            for (int t = 0; t <= deg; ++t) nd[t] = vals[t][n];
            for (int lvl = 1; lvl <= deg; ++lvl)
                for (int t = deg; t >= lvl; --t) nd[t] = nd[t] - nd[t - 1];
            // expand Newton form sum_k nd[k] * C(y-1, k) into y-powers
            std::vector<Rational> poly(deg + 1, Rational(0)), basis{Rational(1)};
            for (int k = 0; k <= deg; ++k) {
                Rational coef = nd[k];
                for (int i = 2; i <= k; ++i) coef /= i;
                for (size_t i = 0; i < basis.size(); ++i) poly[i] += coef * basis[i];
                // basis *= (y - 1 - k)
                basis.push_back(Rational(0));
                for (size_t i = basis.size() - 1; i > 0; --i)
                    basis[i] = basis[i - 1] - Rational(k + 1) * basis[i];
                basis[0] = Rational(-(k + 1)) * basis[0];
            }
            json row;
            row["n"] = n;
            json gm = json::array();
            for (int m = 0; m <= deg; ++m) gm.push_back(poly[m].get_str());
            row["graphs_by_edges"] = gm;
            by_edges.push_back(row);
        }
        j["by_edges"] = by_edges;
    }
    emit(j, opt, "tsv");
}

void cmd_classify(const Options& opt) {
    ClassSpec spec = resolve_class(opt);
    require_data(spec);
    SingularReport rep = analyze(spec, opt.y);
    json j;
    j["class"] = spec.name;
    j["y"] = rounded(opt.y);
    j["case"] = rep.case_label;
    j["source"] = source_name(rep.loc.source);
    j["R"] = rounded(rep.loc.R);
    j["D0"] = rounded(rep.loc.D0);
    j["B_exponent"] = rep.b.B_exponent.get_str();
    j["C_exponent"] = rep.c.C_exponent.get_str();
    j["S"] = rounded(rep.c.S);
    j["tau_mode"] = rep.c.tau_mode;
    if (rep.c.tau_mode) j["tau"] = rounded(rep.c.tau);
    j["rho"] = rounded(rep.c.rho);
    j["near_critical"] = rep.c.near_critical;
    json b;
    b["B0"] = rounded(rep.b.B0); b["B1"] = rounded(rep.b.B1); b["B2"] = rounded(rep.b.B2);
    b["B3"] = rounded(rep.b.B3); b["B4"] = rounded(rep.b.B4); b["B5"] = rounded(rep.b.B5);
    j["B_coefficients"] = b;
    json c;
    c["C0"] = rounded(rep.c.C0); c["C2"] = rounded(rep.c.C2); c["C3"] = rounded(rep.c.C3);
    c["C4"] = rounded(rep.c.C4); c["C5"] = rounded(rep.c.C5);
    j["C_coefficients"] = c;
    emit(j, opt, "table");
}

void cmd_scan(const Options& opt, const std::string& range) {
    ClassSpec spec = resolve_class(opt);
    require_data(spec);
    long double lo = 0.1L, hi = 10.0L;
    int steps = 50;
    if (!range.empty()) {
        if (sscanf(range.c_str(), "%Lf:%Lf:%d", &lo, &hi, &steps) != 3)
            throw CLI::ValidationError("--y", "expected lo:hi:steps");
    }
    ScanResult sr = scan_critical(spec, lo, hi, steps);
    json j;
    j["class"] = spec.name;
    json rows = json::array();
    for (const auto& p : sr.points) {
        json row;
        row["y"] = rounded(p.y);
        row["case"] = p.label;
        rows.push_back(row);
    }
    j["rows"] = rows;
    json crit = json::array();
    for (const auto& c : sr.critical) {
        json k;
        k["y0"] = rounded(c.first);
        if (std::isfinite((double)c.second)) k["mu0"] = rounded(c.second);
        crit.push_back(k);
    }
    j["critical"] = crit;
    emit(j, opt, "tsv");
}

void cmd_block_law(const Options& opt) {
    ClassSpec spec = resolve_class(opt);
    require_data(spec);
    json j;
    j["class"] = spec.name;
    long double y = opt.y;
    if (std::isfinite(opt.mu)) {
        y = density_map(spec, (long double)opt.mu);
        j["mu"] = rounded((long double)opt.mu);
        j["y0"] = rounded(y);
    } else {
        j["y"] = rounded(y);
    }
    SingularReport rep = analyze(spec, y);
    j["case"] = rep.case_label;
    if (rep.c.tau_mode) {
        DiscreteCoreLaw law = subcritical_core(spec, rep,
                                               spec.kind == ClassSpec::TABULATED ? 0 : 40);
        j["mode"] = "discrete";
        j["tau"] = rounded(law.tau);
        j["coreless_probability"] = rounded(law.coreless);
        j["tail"] = law.tail_kind;
        j["tail_constant"] = rounded(law.tail_const);
        j["tail_ratio"] = rounded(law.tau / law.R);
        json q = json::array();
        for (size_t k = 0; k < law.q.size(); ++k) q.push_back(rounded(law.q[k]));
        j["core_size_probabilities"] = q;
    } else {
        CriticalCoreLaw law = critical_core(spec, rep, 0);
        j["mode"] = "airy";
        j["alpha"] = rounded(law.alpha);
        j["c"] = rounded(law.c);
        j["p_small"] = rounded(law.p_s);
        j["M3"] = rounded(law.M3);
        if (spec.sing && rep.loc.source == Source::TSING) {
            EdgeLaw e = edge_law(spec);
            ThreeConnLaw tc = largest_3conn(spec, rep, e.kappa2);
            j["block_edges"] = {{"a", rounded(tc.block_edges.a)}, {"c", rounded(tc.block_edges.c)}};
            j["core3_edges"] = {{"a", rounded(tc.core3_edges.a)}, {"c", rounded(tc.core3_edges.c)}};
            j["comp3_edges"] = {{"a", rounded(tc.comp3_edges.a)}, {"c", rounded(tc.comp3_edges.c)}};
            j["comp3_vertices"] = {{"a", rounded(tc.comp3_vertices.a)},
                                   {"c", rounded(tc.comp3_vertices.c)}};
        }
    }
    emit(j, opt, "table");
}

void cmd_airy(const Options& opt, bool density, double from, double to, double step, int moment,
              const std::vector<double>& compose) {
    json j;
    if (density) {
        json rows = json::array();
        for (double x = from; x <= to + 1e-12; x += step) {
            json row;
            row["x"] = rounded((long double)x);
            row["g"] = rounded(airy_density((long double)x));
            rows.push_back(row);
        }
        j["rows"] = rows;
        emit(j, opt, "tsv");
        return;
    }
    if (!compose.empty()) {
        if (compose.size() != 4) throw CLI::ValidationError("--compose", "expected a1,c1,a2,c2");
        AiryParams p = airy_compose({(long double)compose[0], (long double)compose[1]},
                                    {(long double)compose[2], (long double)compose[3]});
        j["a"] = rounded(p.a);
        j["c"] = rounded(p.c);
        emit(j, opt, "table");
        return;
    }
    j["moment"] = moment;
    j["value"] = rounded(airy_moment(moment));
    emit(j, opt, "table");
}

void cmd_oracle(const Options& opt, const std::string& connectivity) {
    auto pred = class_predicate(opt.cls);
    Connectivity c;
    if (connectivity == "any") c = Connectivity::ANY;
    else if (connectivity == "connected") c = Connectivity::CONNECTED;
    else if (connectivity == "2-connected") c = Connectivity::TWO_CONNECTED;
    else throw CLI::ValidationError("--connectivity", "any | connected | 2-connected");
    json j;
    j["class"] = opt.cls;
    j["connectivity"] = connectivity;
    json rows = json::array();
    for (int n = 0; n <= opt.n; ++n) {
        json row;
        row["n"] = n;
        row["count"] = enumerate(pred, n, c);
        rows.push_back(row);
    }
    j["rows"] = rows;
    emit(j, opt, "json");
}

void cmd_density_map(const Options& opt) {
    ClassSpec spec = resolve_class(opt);
    require_data(spec);
    if (!std::isfinite(opt.mu)) throw CLI::ValidationError("--mu", "required for density-map");
    long double y0 = density_map(spec, (long double)opt.mu);
    json j;
    j["class"] = spec.name;
    j["mu"] = rounded((long double)opt.mu);
    j["y0"] = rounded(y0);
    j["kappa_at_y0"] = rounded(kappa_at(spec, y0));
    emit(j, opt, "table");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"asymptotic constants and limit laws for closed labelled graph classes"};
    app.require_subcommand(1);

    Options opt;
    double yd = 1.0;
    std::string scan_range, connectivity = "any";
    bool with_edges = false, airy_density_flag = false;
    double airy_from = -4.0, airy_to = 4.0, airy_step = 0.01;
    int airy_moment_k = 0;
    std::vector<double> airy_compose_v;

    auto add_common = [&](CLI::App* sub, bool needs_class) {
        if (needs_class) sub->add_option("class", opt.cls, "builtin class name");
        sub->add_option("--spec", opt.spec_file, "path to a class spec file");
        sub->add_option("--format", opt.format, "json | tsv | table");
        sub->add_option("--precision", g_precision, "printed significant digits");
        return sub;
    };

    auto* c_const = add_common(app.add_subcommand("constants", "asymptotic constants at a given y"), true);
    c_const->add_option("--y", yd, "edge weight");
    auto* c_counts = add_common(app.add_subcommand("counts", "exact labelled counts"), true);
    c_counts->add_option("--n", opt.n, "maximum number of vertices");
    c_counts->add_option("--order", opt.order, "series truncation order");
    c_counts->add_flag("--edges", with_edges, "also split counts by number of edges");
    auto* c_classify = add_common(app.add_subcommand("classify", "singularity location and case"), true);
    c_classify->add_option("--y", yd, "edge weight");
    auto* c_scan = add_common(app.add_subcommand("scan", "scan y for critical edge weights"), true);
    c_scan->add_option("--y", scan_range, "range lo:hi:steps (default 0.1:10:50)");
    auto* c_block = add_common(app.add_subcommand("block-law", "largest-block limit law"), true);
    c_block->add_option("--y", yd, "edge weight");
    c_block->add_option("--mu", opt.mu, "edge density (overrides --y via the density map)");
    auto* c_airy = add_common(app.add_subcommand("airy", "map-Airy density utilities"), false);
    c_airy->add_flag("--density", airy_density_flag, "emit the density on a grid");
    c_airy->add_option("--from", airy_from, "grid start");
    c_airy->add_option("--to", airy_to, "grid end");
    c_airy->add_option("--step", airy_step, "grid step");
    c_airy->add_option("--moment", airy_moment_k, "integer moment to integrate");
    c_airy->add_option("--compose", airy_compose_v, "a1 c1 a2 c2 composition")->expected(4);
    auto* c_oracle = add_common(app.add_subcommand("oracle", "exhaustive enumeration counts"), true);
    c_oracle->add_option("--n", opt.n, "maximum number of vertices (<= 9)");
    c_oracle->add_option("--connectivity", connectivity, "any | connected | 2-connected");
    auto* c_dmap = add_common(app.add_subcommand("density-map", "edge weight for a target density"), true);
    c_dmap->add_option("--mu", opt.mu, "target edge density")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    opt.y = (long double)yd;

    try {
        if (c_const->parsed()) cmd_constants(opt);
        else if (c_counts->parsed()) cmd_counts(opt, with_edges);
        else if (c_classify->parsed()) cmd_classify(opt);
        else if (c_scan->parsed()) cmd_scan(opt, scan_range);
        else if (c_block->parsed()) cmd_block_law(opt);
        else if (c_airy->parsed())
            cmd_airy(opt, airy_density_flag, airy_from, airy_to, airy_step, airy_moment_k,
                     airy_compose_v);
        else if (c_oracle->parsed()) cmd_oracle(opt, connectivity);
        else if (c_dmap->parsed()) cmd_density_map(opt);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConditionalMissing& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::string msg = e.what();
        std::cerr << "error: " << msg << "\n";
        if (msg.find("needs external data") != std::string::npos) return 3;
        return 4;
    }
    return 0;
}
