#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "wbg/graph.hpp"
#include "wbg/rng.hpp"

using namespace wbg;

namespace {

// Union-find oracle for connectivity.
struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(static_cast<size_t>(n)) {
        std::iota(p.begin(), p.end(), 0);
    }
    int find(int v) { return p[static_cast<size_t>(v)] == v ? v : p[static_cast<size_t>(v)] = find(p[static_cast<size_t>(v)]); }
    void unite(int a, int b) { p[static_cast<size_t>(find(a))] = find(b); }
};

bool connected_oracle(const Graph& g) {
    Dsu d(g.vertex_count());
    for (const Edge& e : g.edges()) d.unite(e.u, e.v);
    for (int v = 1; v < g.vertex_count(); ++v)
        if (d.find(v) != d.find(0)) return false;
    return true;
}

// Permutation-enumeration Hamiltonicity oracle for <= 7 vertices.
bool hamilton_oracle(const Graph& g) {
    const int n = g.vertex_count();
    if (n < 3) return false;
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            ok = g.adjacent(perm[static_cast<size_t>(i)],
                            perm[static_cast<size_t>((i + 1) % n)]);
        if (ok) return true;
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    return false;
}

Graph graph_from_mask(int n, uint64_t mask) {
    std::vector<std::pair<int, int>> es;
    int bit = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++bit)
            if (mask >> bit & 1) es.emplace_back(u, v);
    return Graph(n, std::move(es));
}

}  // namespace

TEST_CASE("gnp edge cases and determinism") {
    CHECK(sample_gnp(5, 0.0, 1).edge_count() == 0);
    CHECK(sample_gnp(5, 1.0, 1).edge_count() == 10);
    CHECK_THROWS(sample_gnp(5, 1.5, 1));
    CHECK_THROWS(sample_gnp(0, 0.5, 1));

    Graph a = sample_gnp(40, 0.3, 12345);
    Graph b = sample_gnp(40, 0.3, 12345);
    REQUIRE(a.edge_count() == b.edge_count());
    for (int e = 0; e < a.edge_count(); ++e) CHECK(a.edge(e) == b.edge(e));
    Graph c = sample_gnp(40, 0.3, 54321);
    bool differ = c.edge_count() != a.edge_count();
    if (!differ)
        for (int e = 0; e < a.edge_count() && !differ; ++e)
            differ = !(a.edge(e) == c.edge(e));
    CHECK(differ);
}

TEST_CASE("gnp mean edge count near expectation") {
    // n=100, p=0.5: expectation 2475; Monte Carlo mean within 1%.
    double total = 0;
    const int seeds = 1000;
    for (int s = 0; s < seeds; ++s) total += sample_gnp(100, 0.5, split_seed(77, s)).edge_count();
    double mean = total / seeds;
    CHECK(mean > 2475 * 0.99);
    CHECK(mean < 2475 * 1.01);
}

TEST_CASE("graph construction invariants") {
    Graph g(4, {{0, 1}, {2, 3}, {1, 2}});
    CHECK(g.edge_count() == 3);
    CHECK(g.adjacent(1, 0));
    CHECK(g.adjacent(0, 1));
    CHECK(!g.adjacent(0, 3));
    CHECK(g.edge_index(3, 2) == g.edge_index(2, 3));
    CHECK(g.other_end(g.edge_index(1, 2), 1) == 2);
    CHECK_THROWS(Graph(3, {{0, 0}}));
    CHECK_THROWS(Graph(3, {{0, 1}, {1, 0}}));
    CHECK_THROWS(Graph(3, {{0, 5}}));

    // adjacency consistent with edge set on a random sample
    Graph r = sample_gnp(30, 0.4, 9);
    for (const Edge& e : r.edges()) {
        CHECK(e.u < e.v);
        CHECK(r.adjacent(e.u, e.v));
        CHECK(r.adjacent(e.v, e.u));
    }
    int deg_sum = 0;
    for (int v = 0; v < r.vertex_count(); ++v) deg_sum += r.degree(v);
    CHECK(deg_sum == 2 * r.edge_count());
}

TEST_CASE("build_hn sizes and degrees") {
    CHECK(build_hn(4).edge_count() == 5);
    CHECK(build_hn(5).edge_count() == 7);
    CHECK_THROWS(build_hn(3));
    for (int n = 4; n <= 9; ++n) {
        Graph h = build_hn(n);
        CHECK(h.edge_count() == 2 * (n - 2) + 1);
        // exactly two vertices of degree n-1 (the 2-class), rest degree 2
        int high = 0;
        for (int v = 0; v < n; ++v)
            if (h.degree(v) == n - 1) ++high;
        CHECK(high == 2);
    }
}

TEST_CASE("contains_subgraph basics") {
    Graph k5 = complete_graph(5);
    Graph h5 = build_hn(5);
    CHECK(contains_subgraph(k5, h5));
    Graph c5 = cycle_graph(5);
    Graph tri = complete_graph(3);
    CHECK(!contains_subgraph(c5, tri));
    Graph h4 = build_hn(4);
    Graph k22(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
    CHECK(contains_subgraph(h4, k22));
    CHECK_THROWS(contains_subgraph(complete_graph(10), complete_graph(9)));
}

TEST_CASE("is_connected basics and restriction") {
    CHECK(is_connected(path_graph(5)));
    CHECK(!is_connected(Graph(4, {{0, 1}, {2, 3}})));
    CHECK(is_connected(Graph(1)));
    Graph g(6, {{0, 1}, {1, 2}, {3, 4}});
    CHECK(is_connected(g, std::vector<int>{0, 1, 2}));
    CHECK(!is_connected(g, std::vector<int>{0, 1, 3}));
    CHECK(is_connected(g, std::vector<int>{}));
}

TEST_CASE("is_connected agrees with union-find oracle") {
    Rng rng(2024);
    for (int t = 0; t < 10000; ++t) {
        int n = 1 + static_cast<int>(rng.below(8));
        double p = rng.uniform();
        Graph g = sample_gnp(n, p, rng.next());
        CHECK(is_connected(g) == connected_oracle(g));
    }
}

TEST_CASE("hamilton cycle basics") {
    CHECK(has_hamilton_cycle(cycle_graph(6)));
    Graph star(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    CHECK(!has_hamilton_cycle(star));
    Graph k4m(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}});
    CHECK(has_hamilton_cycle(k4m));
    CHECK_THROWS(has_hamilton_cycle(Graph(30), 22));
}

TEST_CASE("hamilton cycle agrees with permutation oracle up to 7 vertices") {
    for (int n = 1; n <= 5; ++n) {
        int bits = n * (n - 1) / 2;
        for (uint64_t mask = 0; mask < (1ull << bits); ++mask) {
            Graph g = graph_from_mask(n, mask);
            CHECK(has_hamilton_cycle(g) == hamilton_oracle(g));
        }
    }
    Rng rng(5);
    for (int t = 0; t < 400; ++t) {
        int n = 6 + static_cast<int>(rng.below(2));
        Graph g = sample_gnp(n, rng.uniform(), rng.next());
        CHECK(has_hamilton_cycle(g) == hamilton_oracle(g));
    }
}

TEST_CASE("degree concentration check") {
    CHECK(degree_concentration_check(complete_graph(5), 1.0, 0.3));
    CHECK(!degree_concentration_check(Graph(5), 0.5, 0.1));
    int pass = 0;
    for (int s = 0; s < 100; ++s)
        if (degree_concentration_check(sample_gnp(1000, 0.1, split_seed(3, s)), 0.1, 0.5))
            ++pass;
    CHECK(pass >= 99);
}

TEST_CASE("edge list round trip") {
    Graph g = sample_gnp(25, 0.3, 42);
    std::stringstream ss;
    write_edge_list(ss, g);
    Graph h = read_edge_list(ss);
    REQUIRE(h.vertex_count() == g.vertex_count());
    REQUIRE(h.edge_count() == g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) CHECK(g.edge(e) == h.edge(e));
    std::stringstream bad("3");
    CHECK_THROWS(read_edge_list(bad));
}
