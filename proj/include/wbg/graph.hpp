#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "wbg/rng.hpp"

namespace wbg {

struct Edge {
    int u, v;  // canonical: u < v
    bool operator==(const Edge& o) const { return u == o.u && v == o.v; }
};

// Immutable undirected simple graph. Vertices are 0-based contiguous ints,
// edges are canonicalized as (min, max) pairs and addressed by index.
class Graph {
public:
    explicit Graph(int n, std::vector<std::pair<int, int>> edge_list = {})
        : n_(n), adj_(static_cast<size_t>(n)) {
        if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
        for (auto [u, v] : edge_list) add_edge_internal(u, v);
        finalize();
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int e) const { return edges_[static_cast<size_t>(e)]; }
    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<size_t>(v)]; }
    int degree(int v) const { return static_cast<int>(adj_[static_cast<size_t>(v)].size()); }

    bool adjacent(int u, int v) const { return edge_index(u, v) >= 0; }

    // Index of edge {u,v}, or -1.
    int edge_index(int u, int v) const {
        if (u == v) return -1;
        auto it = index_.find(key(std::min(u, v), std::max(u, v)));
        return it == index_.end() ? -1 : it->second;
    }

    // Endpoint of edge e other than w.
    int other_end(int e, int w) const {
        const Edge& ed = edges_[static_cast<size_t>(e)];
        return ed.u == w ? ed.v : ed.u;
    }

private:
    void add_edge_internal(int u, int v) {
        if (u == v) throw std::invalid_argument("Graph: self-loop rejected");
        if (u < 0 || v < 0 || u >= n_ || v >= n_)
            throw std::invalid_argument("Graph: vertex out of range");
        if (u > v) std::swap(u, v);
        auto [it, fresh] = index_.emplace(key(u, v), static_cast<int>(edges_.size()));
        if (!fresh) throw std::invalid_argument("Graph: parallel edge rejected");
        edges_.push_back({u, v});
        adj_[static_cast<size_t>(u)].push_back(v);
        adj_[static_cast<size_t>(v)].push_back(u);
    }

    void finalize() {
        for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
    }

    static uint64_t key(int u, int v) {
        return (static_cast<uint64_t>(u) << 32) | static_cast<uint32_t>(v);
    }

    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
    std::unordered_map<uint64_t, int> index_;
};

// G(n,p): each of the n(n-1)/2 possible edges included independently with
// probability p, deterministically per seed (geometric edge skipping).
inline Graph sample_gnp(int n, double p, uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_gnp: n must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample_gnp: p outside [0,1]");
    std::vector<std::pair<int, int>> es;
    Rng rng(seed);
    const long long total = static_cast<long long>(n) * (n - 1) / 2;
    if (p >= 1.0) {
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) es.emplace_back(u, v);
    } else if (p > 0.0) {
        const double logq = std::log1p(-p);
        long long pos = -1;
        while (true) {
            double r = rng.uniform();
            long long skip = static_cast<long long>(std::floor(std::log1p(-r) / logq));
            pos += 1 + skip;
            if (pos >= total) break;
            // pos -> (u, v) in row-major upper-triangle order
            long long rem = pos;
            int u = 0;
            while (rem >= n - 1 - u) {
                rem -= n - 1 - u;
                ++u;
            }
            es.emplace_back(u, u + 1 + static_cast<int>(rem));
        }
    }
    return Graph(n, std::move(es));
}

// K_{n-2,2} plus one edge inside the two-element class. Vertices 0 and 1
// form the small class.
inline Graph build_hn(int n) {
    if (n < 4) throw std::invalid_argument("build_hn: n must be >= 4");
    std::vector<std::pair<int, int>> es;
    es.emplace_back(0, 1);
    for (int v = 2; v < n; ++v) {
        es.emplace_back(0, v);
        es.emplace_back(1, v);
    }
    return Graph(n, std::move(es));
}

inline Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) es.emplace_back(u, v);
    return Graph(n, std::move(es));
}

inline Graph cycle_graph(int n) {
    std::vector<std::pair<int, int>> es;
    for (int v = 0; v < n; ++v) es.emplace_back(v, (v + 1) % n);
    return Graph(n, std::move(es));
}

inline Graph path_graph(int n) {
    std::vector<std::pair<int, int>> es;
    for (int v = 0; v + 1 < n; ++v) es.emplace_back(v, v + 1);
    return Graph(n, std::move(es));
}

// Connectivity by traversal; with a restriction, connectivity of the
// induced subgraph. Empty restriction set counts as connected.
inline bool is_connected(const Graph& g,
                         const std::optional<std::vector<int>>& restricted_to = std::nullopt) {
    std::vector<char> in(static_cast<size_t>(g.vertex_count()), 1);
    int want = g.vertex_count();
    if (restricted_to) {
        std::fill(in.begin(), in.end(), 0);
        for (int v : *restricted_to) in[static_cast<size_t>(v)] = 1;
        want = static_cast<int>(restricted_to->size());
    }
    if (want == 0) return true;
    int start = 0;
    while (!in[static_cast<size_t>(start)]) ++start;
    std::vector<int> stack{start};
    std::vector<char> seen(static_cast<size_t>(g.vertex_count()), 0);
    seen[static_cast<size_t>(start)] = 1;
    int found = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.neighbors(v)) {
            if (in[static_cast<size_t>(w)] && !seen[static_cast<size_t>(w)]) {
                seen[static_cast<size_t>(w)] = 1;
                ++found;
                stack.push_back(w);
            }
        }
    }
    return found == want;
}

// Exact Hamiltonicity via bitmask DP over vertex subsets, O(2^n n^2).
inline bool has_hamilton_cycle(const Graph& g, int exact_limit = 22) {
    const int n = g.vertex_count();
    if (n > exact_limit)
        throw std::invalid_argument("has_hamilton_cycle: graph exceeds exact-check limit");
    if (n < 3) return false;
    for (int v = 0; v < n; ++v)
        if (g.degree(v) < 2) return false;
    std::vector<uint32_t> nb(static_cast<size_t>(n), 0);
    for (const Edge& e : g.edges()) {
        nb[static_cast<size_t>(e.u)] |= 1u << e.v;
        nb[static_cast<size_t>(e.v)] |= 1u << e.u;
    }
    // dp[mask][v]: path from vertex 0 visiting exactly mask, ending at v.
    const uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    std::vector<uint32_t> dp(static_cast<size_t>(1u << n), 0);
    dp[1] = 1;  // at vertex 0
    for (uint32_t mask = 1; mask <= full; ++mask) {
        uint32_t ends = dp[mask];
        if (!ends || !(mask & 1)) continue;
        for (int v = 0; v < n; ++v) {
            if (!(ends & (1u << v))) continue;
            uint32_t nxt = nb[static_cast<size_t>(v)] & ~mask;
            while (nxt) {
                int w = std::countr_zero(nxt);
                nxt &= nxt - 1;
                dp[mask | (1u << w)] |= 1u << w;
            }
        }
    }
    uint32_t closing = dp[full] & nb[0];
    return closing != 0;
}

// Backtracking subgraph (not necessarily induced) containment; exponential,
// guarded to small patterns.
inline bool contains_subgraph(const Graph& host, const Graph& pattern, int pattern_limit = 8) {
    const int np = pattern.vertex_count();
    if (np > pattern_limit)
        throw std::invalid_argument("contains_subgraph: pattern exceeds size limit");
    if (np > host.vertex_count()) return false;
    if (pattern.edge_count() > host.edge_count()) return false;

    // Map pattern vertices in degree-descending order.
    std::vector<int> order(static_cast<size_t>(np));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return pattern.degree(a) > pattern.degree(b); });

    std::vector<int> map(static_cast<size_t>(np), -1);
    std::vector<char> used(static_cast<size_t>(host.vertex_count()), 0);

    auto rec = [&](auto&& self, size_t pos) -> bool {
        if (pos == order.size()) return true;
        int pv = order[pos];
        for (int hv = 0; hv < host.vertex_count(); ++hv) {
            if (used[static_cast<size_t>(hv)]) continue;
            if (host.degree(hv) < pattern.degree(pv)) continue;
            bool ok = true;
            for (int pw : pattern.neighbors(pv)) {
                int hw = map[static_cast<size_t>(pw)];
                if (hw >= 0 && !host.adjacent(hv, hw)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            map[static_cast<size_t>(pv)] = hv;
            used[static_cast<size_t>(hv)] = 1;
            if (self(self, pos + 1)) return true;
            map[static_cast<size_t>(pv)] = -1;
            used[static_cast<size_t>(hv)] = 0;
        }
        return false;
    };
    return rec(rec, 0);
}

// True iff every vertex degree lies in [(1-eps)pn, (1+eps)pn].
inline bool degree_concentration_check(const Graph& g, double p, double eps) {
    const double pn = p * g.vertex_count();
    const double lo = (1.0 - eps) * pn, hi = (1.0 + eps) * pn;
    for (int v = 0; v < g.vertex_count(); ++v) {
        double d = g.degree(v);
        if (d < lo || d > hi) return false;
    }
    return true;
}

// Edge-list text format: first line "n m", then m lines "u v" (0-based).
inline void write_edge_list(std::ostream& os, const Graph& g) {
    os << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << '\n';
}

inline Graph read_edge_list(std::istream& is) {
    int n = 0, m = 0;
    if (!(is >> n >> m)) throw std::invalid_argument("read_edge_list: bad header");
    std::vector<std::pair<int, int>> es;
    es.reserve(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        int u = 0, v = 0;
        if (!(is >> u >> v)) throw std::invalid_argument("read_edge_list: truncated edge list");
        es.emplace_back(u, v);
    }
    return Graph(n, std::move(es));
}

}  // namespace wbg
