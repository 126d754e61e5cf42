#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

// Ground-truth oracle: exhaustive enumeration of small labelled graphs with
// exact minor testing, independent of the generating-function pipeline.

namespace gclass {

struct SmallGraph {
    int n = 0;
    uint64_t edges = 0;  // bit eidx(i,j) set iff {i,j} is an edge, i < j

    static int eidx(int i, int j) {
        if (i > j) std::swap(i, j);
        return j * (j - 1) / 2 + i;
    }
    bool has_edge(int i, int j) const { return i != j && (edges >> eidx(i, j)) & 1; }
    void add_edge(int i, int j) { edges |= uint64_t(1) << eidx(i, j); }
    int edge_count() const { return __builtin_popcountll(edges); }
    int max_edges() const { return n * (n - 1) / 2; }

    SmallGraph without_edge(int i, int j) const {
        SmallGraph g = *this;
        g.edges &= ~(uint64_t(1) << eidx(i, j));
        return g;
    }
    // contract {i,j} into min(i,j); the last vertex takes the freed label
    SmallGraph contract_edge(int i, int j) const {
        if (i > j) std::swap(i, j);
        SmallGraph g;
        g.n = n - 1;
        auto remap = [&](int v) {
            if (v == j) return i;
            if (v == n - 1) return j;
            return v;
        };
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (has_edge(a, b) && remap(a) != remap(b)) g.add_edge(remap(a), remap(b));
        return g;
    }
};

// named test graphs
inline SmallGraph minor_pattern(const std::string& name) {
    SmallGraph g;
    auto complete = [&](int n) {
        g.n = n;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    };
    if (name == "K4") complete(4);
    else if (name == "K5") complete(5);
    else if (name == "K5e") { complete(5); g = g.without_edge(3, 4); }
    else if (name == "W4") {
        g.n = 5;  // hub 0, rim cycle 1-2-3-4-1
        for (int i = 1; i <= 4; ++i) g.add_edge(0, i);
        g.add_edge(1, 2); g.add_edge(2, 3); g.add_edge(3, 4); g.add_edge(4, 1);
    } else if (name == "K33") {
        g.n = 6;
        for (int i = 0; i < 3; ++i)
            for (int j = 3; j < 6; ++j) g.add_edge(i, j);
    } else {
        throw std::domain_error("unknown minor pattern: " + name);
    }
    return g;
}

namespace oracle_detail {

inline bool subset_connected(const SmallGraph& g, unsigned mask) {
    if (mask == 0) return false;
    unsigned seen = mask & (unsigned)(-(int)mask);  // lowest vertex
    for (;;) {
        unsigned grow = seen;
        for (int v = 0; v < g.n; ++v) {
            if (!((seen >> v) & 1)) continue;
            for (int u = 0; u < g.n; ++u)
                if (((mask >> u) & 1) && g.has_edge(u, v)) grow |= 1u << u;
        }
        if (grow == seen) break;
        seen = grow;
    }
    return seen == mask;
}

inline bool any_edge_between(const SmallGraph& g, unsigned a, unsigned b) {
    for (int u = 0; u < g.n; ++u) {
        if (!((a >> u) & 1)) continue;
        for (int v = 0; v < g.n; ++v)
            if (((b >> v) & 1) && g.has_edge(u, v)) return true;
    }
    return false;
}

// backtracking over branch-set assignments: place[v] in {-1 unused, 0..k-1}
inline bool branch_sets_exist(const SmallGraph& g, const SmallGraph& h, int v,
                              std::vector<unsigned>& sets) {
    int k = h.n;
    if (v == g.n) {
        for (int i = 0; i < k; ++i)
            if (!subset_connected(g, sets[i])) return false;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (h.has_edge(i, j) && !any_edge_between(g, sets[i], sets[j])) return false;
        return true;
    }
    int remaining = g.n - v;
    int empty = 0;
    for (int i = 0; i < k; ++i) empty += sets[i] == 0;
    if (empty > remaining) return false;  // cannot fill all branch sets
    for (int i = -1; i < k; ++i) {
        if (i >= 0) sets[i] |= 1u << v;
        if (branch_sets_exist(g, h, v + 1, sets)) {
            if (i >= 0) sets[i] &= ~(1u << v);
            return true;
        }
        if (i >= 0) sets[i] &= ~(1u << v);
    }
    return false;
}

// canonical labelled form: lexicographically minimal edge mask over all
// vertex permutations (memoization key for enumeration)
inline uint64_t canonical_mask(const SmallGraph& g) {
    std::vector<int> p(g.n);
    std::iota(p.begin(), p.end(), 0);
    uint64_t best = ~uint64_t(0);
    do {
        uint64_t m = 0;
        for (int i = 0; i < g.n; ++i)
            for (int j = i + 1; j < g.n; ++j)
                if (g.has_edge(i, j)) m |= uint64_t(1) << SmallGraph::eidx(p[i], p[j]);
        best = std::min(best, m);
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

}  // namespace oracle_detail

// exact minor test by branch-set partition enumeration
inline bool has_minor(const SmallGraph& g, const SmallGraph& h) {
    if (g.n > 9) throw std::domain_error("has_minor: graphs capped at 9 vertices");
    if (g.n < h.n || g.edge_count() < h.edge_count()) return false;
    std::vector<unsigned> sets(h.n, 0);
    return oracle_detail::branch_sets_exist(g, h, 0, sets);
}

inline bool has_minor(const SmallGraph& g, const std::string& pattern) {
    return has_minor(g, minor_pattern(pattern));
}

// independent cross-oracle: a minor model either is a subgraph embedding or
// keeps an edge inside a branch set that can be contracted first
inline bool has_minor_by_contraction(const SmallGraph& g, const SmallGraph& h) {
    if (g.n < h.n || g.edge_count() < h.edge_count()) return false;
    // subgraph containment over all injections h -> g
    std::vector<int> img(h.n, -1);
    std::vector<bool> used(g.n, false);
    std::function<bool(int)> embed = [&](int v) -> bool {
        if (v == h.n) return true;
        for (int u = 0; u < g.n; ++u) {
            if (used[u]) continue;
            bool ok = true;
            for (int w = 0; w < v && ok; ++w)
                if (h.has_edge(w, v) && !g.has_edge(img[w], u)) ok = false;
            if (!ok) continue;
            img[v] = u; used[u] = true;
            if (embed(v + 1)) return true;
            used[u] = false;
        }
        return false;
    };
    if (embed(0)) return true;
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (g.has_edge(i, j) && has_minor_by_contraction(g.contract_edge(i, j), h))
                return true;
    return false;
}

enum class Connectivity { ANY, CONNECTED, TWO_CONNECTED };

inline bool is_connected(const SmallGraph& g) {
    if (g.n == 0) return true;
    return oracle_detail::subset_connected(g, (1u << g.n) - 1);
}

inline bool is_two_connected(const SmallGraph& g) {
    if (g.n < 2 || !is_connected(g)) return false;
    if (g.n == 2) return g.edges != 0;
    for (int v = 0; v < g.n; ++v) {  // no cut vertex
        unsigned rest = ((1u << g.n) - 1) & ~(1u << v);
        if (!oracle_detail::subset_connected(g, rest)) return false;
    }
    return true;
}

// exact count of labelled n-vertex graphs passing pred and the connectivity
// filter; pred is memoized on isomorphism classes (it must be label-invariant)
inline long long enumerate(const std::function<bool(const SmallGraph&)>& pred, int n,
                           Connectivity conn) {
    if (n > 9) throw std::domain_error("enumerate: cap is 9 vertices");
    if (n == 0) return conn == Connectivity::TWO_CONNECTED ? 0 : 1;
    std::unordered_map<uint64_t, bool> memo;
    long long count = 0;
    uint64_t total = uint64_t(1) << (n * (n - 1) / 2);
    for (uint64_t mask = 0; mask < total; ++mask) {
        SmallGraph g;
        g.n = n;
        g.edges = mask;
        if (conn == Connectivity::CONNECTED && !is_connected(g)) continue;
        if (conn == Connectivity::TWO_CONNECTED && !is_two_connected(g)) continue;
        uint64_t key = oracle_detail::canonical_mask(g);
        auto it = memo.find(key);
        if (it == memo.end()) it = memo.emplace(key, pred(g)).first;
        if (it->second) ++count;
    }
    return count;
}

// minor-exclusion predicates of the built-in classes
inline std::function<bool(const SmallGraph&)> class_predicate(const std::string& name) {
    std::vector<SmallGraph> excluded;
    if (name == "ex-k4") excluded = {minor_pattern("K4")};
    else if (name == "ex-w4") excluded = {minor_pattern("W4")};
    else if (name == "ex-k5e") excluded = {minor_pattern("K5e")};
    else throw std::domain_error("no enumeration predicate for class: " + name);
    return [excluded](const SmallGraph& g) {
        for (const auto& h : excluded)
            if (has_minor(g, h)) return false;
        return true;
    };
}

}  // namespace gclass
