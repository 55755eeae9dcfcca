#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wbg/graph.hpp"
#include "wbg/rng.hpp"
#include "wbg/structure.hpp"

namespace wbg {

// eps is admissible when log_3(2/eps + 12) - 2 is a positive integer.
inline int eps_to_k(double eps) {
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("eps_to_k: eps outside (0,1)");
    double v = std::log(2.0 / eps + 12.0) / std::log(3.0) - 2.0;
    double r = std::round(v);
    if (std::abs(v - r) > 1e-9 || r < 1)
        throw std::invalid_argument("eps_to_k: eps not admissible");
    return static_cast<int>(r);
}

struct EpsilonK {
    double eps;
    int k;
    explicit EpsilonK(double e) : eps(e), k(eps_to_k(e)) {}
};

// Vertex a, equipartition V \ {a} = V_1 u V_2, disjoint blocks B_t(s) of
// equal size for every pattern vertex s of S_k - s_0 and both sides, and a
// residual set R.
struct BlockFamily {
    int n = 0;
    int k = 0;
    int a = 0;
    int block_size = 0;
    int block_divisor = 0;
    SkStructure pattern;
    std::vector<int> v_side;                  // 1 or 2; 0 for a
    std::vector<std::array<int, 2>> node_of;  // per vertex, per side: pattern node or -1
    std::vector<std::vector<std::vector<int>>> blocks;  // [side-1][pattern node]
    std::vector<int> R;
    std::vector<char> in_R;

    int pattern_nodes() const { return pattern.graph.vertex_count(); }

    const std::vector<int>& block(int t, int node) const {
        return blocks[static_cast<size_t>(t - 1)][static_cast<size_t>(node)];
    }
    int node_of_vertex(int t, int v) const {
        return node_of[static_cast<size_t>(v)][static_cast<size_t>(t - 1)];
    }
};

// Deterministic per seed. Vertex 0 plays the role of a; the rest is
// shuffled, halved into V_1/V_2, block prefixes carved off per side, and the
// leftovers pooled into R.
inline BlockFamily partition_blocks(int n, int k, int block_divisor, uint64_t seed) {
    if (k < 1) throw std::invalid_argument("partition_blocks: k must be >= 1");
    if (block_divisor < 1) throw std::invalid_argument("partition_blocks: bad divisor");
    BlockFamily bf;
    bf.n = n;
    bf.k = k;
    bf.a = 0;
    bf.block_divisor = block_divisor;
    bf.pattern = build_structure(k);
    const int m = bf.pattern.graph.vertex_count() - 1;  // pattern nodes minus sink
    bf.block_size = n / block_divisor;

    auto feasible = [&](int nn) {
        int bs = nn / block_divisor;
        return bs >= 1 && static_cast<long long>(m) * bs <= (nn - 1) / 2;
    };
    if (!feasible(n)) {
        int minimal = -1;
        for (int nn = n + 1; nn <= 100000000; nn = nn < 1000 ? nn + 1 : nn * 2)
            if (feasible(nn)) {
                minimal = nn;
                break;
            }
        std::ostringstream os;
        os << "partition_blocks: n=" << n << " too small for k=" << k
           << ", divisor=" << block_divisor << "; minimal feasible n is ";
        if (minimal > 0)
            os << minimal;
        else
            os << "unbounded (divisor too small for this k)";
        throw std::invalid_argument(os.str());
    }

    std::vector<int> rest;
    for (int v = 1; v < n; ++v) rest.push_back(v);
    Rng rng(seed);
    rng.shuffle(rest);
    const int half = static_cast<int>(rest.size()) / 2;

    bf.v_side.assign(static_cast<size_t>(n), 0);
    bf.node_of.assign(static_cast<size_t>(n), {-1, -1});
    bf.blocks.assign(2, std::vector<std::vector<int>>(
                            static_cast<size_t>(bf.pattern_nodes())));
    bf.in_R.assign(static_cast<size_t>(n), 0);

    for (int t = 1; t <= 2; ++t) {
        int lo = t == 1 ? 0 : half;
        int hi = t == 1 ? half : static_cast<int>(rest.size());
        for (int i = lo; i < hi; ++i) bf.v_side[static_cast<size_t>(rest[static_cast<size_t>(i)])] = t;
        int cursor = lo;
        for (int node = 0; node < bf.pattern_nodes(); ++node) {
            if (node == bf.pattern.sink) continue;
            auto& blk = bf.blocks[static_cast<size_t>(t - 1)][static_cast<size_t>(node)];
            for (int c = 0; c < bf.block_size; ++c) {
                int v = rest[static_cast<size_t>(cursor++)];
                blk.push_back(v);
                bf.node_of[static_cast<size_t>(v)][static_cast<size_t>(t - 1)] = node;
            }
        }
        for (; cursor < hi; ++cursor) {
            bf.R.push_back(rest[static_cast<size_t>(cursor)]);
            bf.in_R[static_cast<size_t>(rest[static_cast<size_t>(cursor)])] = 1;
        }
    }
    return bf;
}

// Candidate sets per pattern node; the sink holds {x}.
struct CandidateFamily {
    int x = -1;
    int t = 1;
    std::vector<std::vector<int>> cand;  // indexed by pattern node
};

// Optional per-pattern-node pin used by the witness searches: node -> forced
// vertex (-1 = unconstrained).
using NodePins = std::vector<int>;

inline NodePins no_pins(const BlockFamily& bf) {
    return NodePins(static_cast<size_t>(bf.pattern_nodes()), -1);
}

// Level-by-level candidate recursion. At each main node v qualifies when all
// three descending branches offer a path (v, y_j, z_j) with y_j in the
// secondary block and z_j already a candidate below; each secondary set is
// the union of the y_j realized by qualifying v.
inline CandidateFamily compute_candidates(const Graph& g, const BlockFamily& bf, int x,
                                          int t, const NodePins* pins = nullptr) {
    if (x < 0 || x >= bf.n || bf.v_side[static_cast<size_t>(x)] == t)
        throw std::invalid_argument("compute_candidates: x must lie on the opposite side");
    CandidateFamily cf;
    cf.x = x;
    cf.t = t;
    cf.cand.assign(static_cast<size_t>(bf.pattern_nodes()), {});
    cf.cand[static_cast<size_t>(bf.pattern.sink)] = {x};

    auto allowed = [&](int node, int v) {
        return pins == nullptr || (*pins)[static_cast<size_t>(node)] < 0 ||
               (*pins)[static_cast<size_t>(node)] == v;
    };

    const SkStructure& s = bf.pattern;
    for (int l = 1; l <= bf.k; ++l) {
        int width = pow3(bf.k - l);
        for (int i = 1; i <= width; ++i) {
            const int main_node = s.main_id(l, i);
            std::array<int, 3> secs{}, childs{};
            std::array<std::vector<int>, 3> ys;  // secondary vertices with a lower neighbour
            for (int jj = 0; jj < 3; ++jj) {
                int j = 3 * i - 2 + jj;
                secs[static_cast<size_t>(jj)] = s.sec_id(l - 1, j);
                childs[static_cast<size_t>(jj)] = l - 1 >= 1 ? s.main_id(l - 1, j) : s.sink;
            }
            for (int jj = 0; jj < 3; ++jj) {
                const auto& child_cand = cf.cand[static_cast<size_t>(childs[static_cast<size_t>(jj)])];
                for (int y : bf.block(t, secs[static_cast<size_t>(jj)])) {
                    if (!allowed(secs[static_cast<size_t>(jj)], y)) continue;
                    for (int z : child_cand)
                        if (g.adjacent(y, z)) {
                            ys[static_cast<size_t>(jj)].push_back(y);
                            break;
                        }
                }
            }
            std::array<std::vector<char>, 3> used;
            for (int jj = 0; jj < 3; ++jj)
                used[static_cast<size_t>(jj)].assign(ys[static_cast<size_t>(jj)].size(), 0);
            auto& main_cand = cf.cand[static_cast<size_t>(main_node)];
            for (int v : bf.block(t, main_node)) {
                if (!allowed(main_node, v)) continue;
                std::array<std::vector<size_t>, 3> hits;
                bool ok = true;
                for (int jj = 0; jj < 3 && ok; ++jj) {
                    for (size_t yi = 0; yi < ys[static_cast<size_t>(jj)].size(); ++yi)
                        if (g.adjacent(v, ys[static_cast<size_t>(jj)][yi]))
                            hits[static_cast<size_t>(jj)].push_back(yi);
                    ok = !hits[static_cast<size_t>(jj)].empty();
                }
                if (!ok) continue;
                main_cand.push_back(v);
                for (int jj = 0; jj < 3; ++jj)
                    for (size_t yi : hits[static_cast<size_t>(jj)])
                        used[static_cast<size_t>(jj)][yi] = 1;
            }
            for (int jj = 0; jj < 3; ++jj) {
                auto& out = cf.cand[static_cast<size_t>(secs[static_cast<size_t>(jj)])];
                for (size_t yi = 0; yi < ys[static_cast<size_t>(jj)].size(); ++yi)
                    if (used[static_cast<size_t>(jj)][yi])
                        out.push_back(ys[static_cast<size_t>(jj)][yi]);
            }
        }
    }
    return cf;
}

// True iff some block-respecting structure with sink x realizes all pins.
inline bool structure_exists(const Graph& g, const BlockFamily& bf, int x, int t,
                             const NodePins& pins) {
    CandidateFamily cf = compute_candidates(g, bf, x, t, &pins);
    return !cf.cand[static_cast<size_t>(bf.pattern.root())].empty();
}

// An edge sees x when some block-respecting structure with sink x contains
// it. Both endpoints must occupy pattern-adjacent blocks of side t, or one
// endpoint is x itself and the other sits in a lowest-secondary block.
inline bool edge_sees(const Graph& g, const BlockFamily& bf, int t, int e, int x) {
    if (x < 0 || bf.v_side[static_cast<size_t>(x)] == t) return false;
    const Edge& ed = g.edge(e);
    auto placed = [&](int u, int v) -> bool {
        // u plays a block role; v is either x or plays a block role
        int pu = bf.node_of_vertex(t, u);
        if (pu < 0) return false;
        NodePins pins = no_pins(bf);
        if (v == x) {
            if (!bf.pattern.graph.adjacent(pu, bf.pattern.sink)) return false;
            pins[static_cast<size_t>(pu)] = u;
            return structure_exists(g, bf, x, t, pins);
        }
        int pv = bf.node_of_vertex(t, v);
        if (pv < 0 || !bf.pattern.graph.adjacent(pu, pv)) return false;
        pins[static_cast<size_t>(pu)] = u;
        pins[static_cast<size_t>(pv)] = v;
        return structure_exists(g, bf, x, t, pins);
    };
    if (ed.u == x) return placed(ed.v, x);
    if (ed.v == x) return placed(ed.u, x);
    return placed(ed.u, ed.v);
}

// As edge_sees, additionally requiring the witness structure to contain v.
inline bool edge_relevant(const Graph& g, const BlockFamily& bf, int t, int e, int v,
                          int x) {
    if (x < 0 || bf.v_side[static_cast<size_t>(x)] == t) return false;
    if (v == x) return edge_sees(g, bf, t, e, x);
    int pv = bf.node_of_vertex(t, v);
    if (pv < 0) return false;
    const Edge& ed = g.edge(e);
    auto with_pin = [&](int a_vtx, int b_vtx) -> bool {
        NodePins pins = no_pins(bf);
        int pa = bf.node_of_vertex(t, a_vtx);
        if (pa < 0) return false;
        pins[static_cast<size_t>(pa)] = a_vtx;
        if (b_vtx != x) {
            int pb = bf.node_of_vertex(t, b_vtx);
            if (pb < 0 || !bf.pattern.graph.adjacent(pa, pb)) return false;
            pins[static_cast<size_t>(pb)] = b_vtx;
        } else if (!bf.pattern.graph.adjacent(pa, bf.pattern.sink)) {
            return false;
        }
        // merge v's pin
        int& slot = pins[static_cast<size_t>(pv)];
        if (slot >= 0 && slot != v) return false;
        slot = v;
        return structure_exists(g, bf, x, t, pins);
    };
    if (ed.u == x) return with_pin(ed.v, x);
    if (ed.v == x) return with_pin(ed.u, x);
    return with_pin(ed.u, ed.v);
}

// Smallest l such that e touches a block of a secondary-level-(l-1) pattern
// node; none when neither endpoint sits in a secondary block.
inline std::optional<int> appears_between_levels(const BlockFamily& bf, int t,
                                                 const Edge& ed) {
    std::optional<int> best;
    for (int w : {ed.u, ed.v}) {
        int node = bf.node_of_vertex(t, w);
        if (node < 0) continue;
        const SkStructure::Label& lab = bf.pattern.labels[static_cast<size_t>(node)];
        if (lab.kind != SkStructure::Kind::Secondary) continue;
        int level = lab.level + 1;
        if (!best || level < *best) best = level;
    }
    return best;
}

// C^x[Z_1, Z_2]: candidates at the root for which no listed edge is
// relevant. Z_1 must appear below level k-1, Z_2 between levels k-1 and k.
inline std::vector<int> candidates_excluding(const Graph& g, const BlockFamily& bf,
                                             const CandidateFamily& cf,
                                             const std::vector<int>& z1,
                                             const std::vector<int>& z2) {
    for (int e : z1) {
        auto l = appears_between_levels(bf, cf.t, g.edge(e));
        if (!l || *l > bf.k - 1)
            throw std::invalid_argument("candidates_excluding: Z1 edge not below level k-1");
    }
    for (int e : z2) {
        auto l = appears_between_levels(bf, cf.t, g.edge(e));
        if (!l || *l != bf.k)
            throw std::invalid_argument(
                "candidates_excluding: Z2 edge not between levels k-1 and k");
    }
    std::vector<int> out;
    for (int v : cf.cand[static_cast<size_t>(bf.pattern.root())]) {
        bool hit = false;
        for (int e : z1)
            if (edge_relevant(g, bf, cf.t, e, v, cf.x)) {
                hit = true;
                break;
            }
        if (!hit)
            for (int e : z2)
                if (edge_relevant(g, bf, cf.t, e, v, cf.x)) {
                    hit = true;
                    break;
                }
        if (!hit) out.push_back(v);
    }
    return out;
}

// Greedy descent realizing one structure through root candidate v: at every
// step the lowest-index qualifying neighbour is taken. Returns the pattern
// vertex -> graph vertex map (sink -> x).
inline std::vector<int> extract_structure(const Graph& g, const BlockFamily& bf,
                                          const CandidateFamily& cf, int v) {
    const SkStructure& s = bf.pattern;
    std::vector<int> map(static_cast<size_t>(bf.pattern_nodes()), -1);
    map[static_cast<size_t>(s.sink)] = cf.x;

    std::function<void(int, int, int)> descend = [&](int level, int index, int at) {
        map[static_cast<size_t>(s.main_id(level, index))] = at;
        for (int j = 3 * index - 2; j <= 3 * index; ++j) {
            int sec = s.sec_id(level - 1, j);
            int child = level - 1 >= 1 ? s.main_id(level - 1, j) : s.sink;
            int chosen_y = -1, chosen_z = -1;
            for (int y : cf.cand[static_cast<size_t>(sec)]) {
                if (!g.adjacent(at, y)) continue;
                for (int z : cf.cand[static_cast<size_t>(child)]) {
                    if (map[static_cast<size_t>(child)] >= 0 &&
                        z != map[static_cast<size_t>(child)])
                        continue;
                    if (g.adjacent(y, z)) {
                        chosen_y = y;
                        chosen_z = z;
                        break;
                    }
                }
                if (chosen_y >= 0) break;
            }
            if (chosen_y < 0)
                throw std::logic_error(
                    "extract_structure: descent failed; candidate family inconsistent");
            map[static_cast<size_t>(sec)] = chosen_y;
            if (level - 1 >= 1) descend(level - 1, j, chosen_z);
        }
    };

    bool found = false;
    for (int c : cf.cand[static_cast<size_t>(s.root())])
        if (c == v) found = true;
    if (!found) throw std::invalid_argument("extract_structure: v not a root candidate");
    descend(bf.k, 1, v);
    return map;
}

// Exhaustive block-respecting embedding enumeration; the oracle for tiny
// instances. Calls cb with each full pattern->vertex map; cb returning true
// stops the search.
inline void enumerate_structures(const Graph& g, const BlockFamily& bf, int x, int t,
                                 const std::function<bool(const std::vector<int>&)>& cb,
                                 long long combo_limit = 2000000) {
    const SkStructure& s = bf.pattern;
    long long combos = 1;
    for (int node = 0; node < bf.pattern_nodes(); ++node) {
        if (node == s.sink) continue;
        combos *= std::max<size_t>(1, bf.block(t, node).size());
        if (combos > combo_limit)
            throw std::invalid_argument("enumerate_structures: blocks too large for oracle");
    }
    std::vector<int> map(static_cast<size_t>(bf.pattern_nodes()), -1);
    map[static_cast<size_t>(s.sink)] = x;
    // fill in vertex-id order of pattern nodes, checking edges to already
    // assigned pattern neighbours
    std::function<bool(int)> rec = [&](int node) -> bool {
        while (node < bf.pattern_nodes() && node == s.sink) ++node;
        if (node >= bf.pattern_nodes()) return cb(map);
        for (int v : bf.block(t, node)) {
            bool ok = true;
            for (int pn : s.graph.neighbors(node)) {
                int w = map[static_cast<size_t>(pn)];
                if (w >= 0 && !g.adjacent(v, w)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            map[static_cast<size_t>(node)] = v;
            if (rec(node + 1)) return true;
            map[static_cast<size_t>(node)] = -1;
        }
        return false;
    };
    rec(0);
}

// |N_G(A) n B| within the multiplicative ln^{+-2}(n) band around p|A||B|.
inline bool check_neighbourhood_concentration(const Graph& g, const std::vector<int>& A,
                                              const std::vector<int>& B, double p) {
    std::vector<char> in_a(static_cast<size_t>(g.vertex_count()), 0);
    for (int v : A) in_a[static_cast<size_t>(v)] = 1;
    int measured = 0;
    for (int b : B) {
        if (in_a[static_cast<size_t>(b)]) continue;
        for (int w : g.neighbors(b))
            if (in_a[static_cast<size_t>(w)]) {
                ++measured;
                break;
            }
    }
    double n = g.vertex_count();
    double center = p * static_cast<double>(A.size()) * static_cast<double>(B.size());
    double band = std::pow(std::log(n), 2.0);
    return measured >= center / band && measured <= center * band;
}

struct PropertyCheck {
    std::string property;
    std::string bound_formula;
    double bound_value = 0;
    double measured = 0;
    bool pass = false;
};

struct PropertyReport {
    std::vector<PropertyCheck> checks;
    bool structural_pass = true;  // (S) block arithmetic, (C2), (C3)
};

inline nlohmann::json to_json(const PropertyReport& r) {
    nlohmann::json out = nlohmann::json::array();
    for (const PropertyCheck& c : r.checks)
        out.push_back({{"property", c.property},
                       {"bound_formula", c.bound_formula},
                       {"bound_value", c.bound_value},
                       {"measured", c.measured},
                       {"pass", c.pass}});
    return {{"checks", out}, {"structural_pass", r.structural_pass}};
}

// Literal evaluation of (S), (C1), (C2), (C3), (E1), (E2) and a sampled (R)
// on a concrete instance. Asymptotic bounds may fail at desk scale; failures
// are report entries, never errors.
inline PropertyReport check_properties(const Graph& g, const BlockFamily& bf, double eps,
                                       uint64_t seed = 1, int x_samples = 3,
                                       int edge_samples = 60, int r_draws = 100) {
    PropertyReport rep;
    Rng rng(seed);
    const double n = bf.n;
    const double ln_n = std::log(n);
    const SkStructure& s = bf.pattern;

    auto add = [&](const std::string& prop, const std::string& formula, double bound,
                   double measured, bool pass) {
        rep.checks.push_back({prop, formula, bound, measured, pass});
    };

    // (S)
    add("S.residual", "|R| >= n/2", n / 2, static_cast<double>(bf.R.size()),
        static_cast<double>(bf.R.size()) >= n / 2);
    bool sizes_ok = true;
    for (int t = 1; t <= 2; ++t)
        for (int node = 0; node < bf.pattern_nodes(); ++node)
            if (node != s.sink &&
                static_cast<int>(bf.block(t, node).size()) != bf.block_size)
                sizes_ok = false;
    add("S.blocks", "|B_t(s)| = n/divisor", bf.block_size, bf.block_size, sizes_ok);
    int deg_a_r = 0;
    for (int w : g.neighbors(bf.a))
        if (bf.in_R[static_cast<size_t>(w)]) ++deg_a_r;
    double nar_bound = std::pow(n, 1.0 / 3 + eps / 2);
    add("S.star", "|N(a,R)| >= n^{1/3+eps/2}", nar_bound, deg_a_r, deg_a_r >= nar_bound);
    if (!sizes_ok) rep.structural_pass = false;

    // sample x per side for (C*) checks
    bool c1_pass = true, c2_pass = true, c3_pass = true;
    double c1_worst_ratio = 1.0;
    for (int t = 1; t <= 2; ++t) {
        std::vector<int> others;
        for (int v = 0; v < bf.n; ++v)
            if (v != bf.a && bf.v_side[static_cast<size_t>(v)] != t) others.push_back(v);
        for (int si = 0; si < x_samples && !others.empty(); ++si) {
            int x = others[rng.below(others.size())];
            CandidateFamily cf = compute_candidates(g, bf, x, t);
            for (int l = 1; l <= bf.k; ++l) {
                double target = std::pow(n, (pow3(l + 1) - 3) * eps);
                double band = std::pow(ln_n, static_cast<double>(pow3(3 * l)));
                for (int i = 1; i <= pow3(bf.k - l); ++i) {
                    double sz = static_cast<double>(
                        cf.cand[static_cast<size_t>(s.main_id(l, i))].size());
                    bool ok = sz >= target / band && sz <= target * band;
                    if (!ok) c1_pass = false;
                    if (sz > 0) {
                        double ratio = sz / target;
                        if (ratio < 1) ratio = 1 / ratio;
                        if (ratio > c1_worst_ratio) c1_worst_ratio = ratio;
                    }
                }
            }
            // (C2)/(C3) structural verification
            for (int l = 1; l <= bf.k; ++l)
                for (int i = 1; i <= pow3(bf.k - l); ++i)
                    for (int v : cf.cand[static_cast<size_t>(s.main_id(l, i))])
                        for (int j = 3 * i - 2; j <= 3 * i; ++j) {
                            bool has = false;
                            for (int y : cf.cand[static_cast<size_t>(s.sec_id(l - 1, j))])
                                if (g.adjacent(v, y)) has = true;
                            if (!has) c2_pass = false;
                        }
            for (int l = 0; l <= bf.k - 1; ++l)
                for (int i = 1; i <= pow3(bf.k - l); ++i) {
                    int child = l >= 1 ? s.main_id(l, i) : s.sink;
                    for (int y : cf.cand[static_cast<size_t>(s.sec_id(l, i))]) {
                        bool has = false;
                        for (int z : cf.cand[static_cast<size_t>(child)])
                            if (g.adjacent(y, z)) has = true;
                        if (!has) c3_pass = false;
                    }
                }
        }
    }
    add("C1", "|C^x(s)| = n^{(3^{l+1}-3)eps} ln^{+-3^{3l}}(n)", 0, c1_worst_ratio, c1_pass);
    add("C2", "main candidates reach all three secondary sets", 0, 0, c2_pass);
    add("C3", "secondary candidates reach the level below", 0, 0, c3_pass);
    if (!c2_pass || !c3_pass) rep.structural_pass = false;

    // (E1)/(E2): sampled edges, exact seen-vertex counts
    double e1_bound = ln_n * ln_n;
    double e2_bound = std::pow(n, 1.0 / 3 + 0.1 * eps);
    double e1_worst = 0, e2_worst = 0;
    bool e1_pass = true, e2_pass = true;
    for (int t = 1; t <= 2; ++t) {
        std::vector<int> low_edges, mid_edges;
        for (int e = 0; e < g.edge_count(); ++e) {
            auto l = appears_between_levels(bf, t, g.edge(e));
            if (!l) continue;
            if (*l <= bf.k - 1) low_edges.push_back(e);
            else if (*l == bf.k) mid_edges.push_back(e);
        }
        rng.shuffle(low_edges);
        rng.shuffle(mid_edges);
        auto count_seen = [&](int e) {
            int cnt = 0;
            for (int x = 0; x < bf.n; ++x)
                if (x != bf.a && bf.v_side[static_cast<size_t>(x)] != t &&
                    edge_sees(g, bf, t, e, x))
                    ++cnt;
            return cnt;
        };
        for (size_t i = 0; i < low_edges.size() && i < static_cast<size_t>(edge_samples); ++i) {
            int c = count_seen(low_edges[i]);
            if (c > e1_worst) e1_worst = c;
            if (c > e1_bound) e1_pass = false;
        }
        for (size_t i = 0; i < mid_edges.size() && i < static_cast<size_t>(edge_samples); ++i) {
            int c = count_seen(mid_edges[i]);
            if (c > e2_worst) e2_worst = c;
            if (c > e2_bound) e2_pass = false;
        }
    }
    add("E1", "low edges see at most ln^2(n) vertices", e1_bound, e1_worst, e1_pass);
    add("E2", "mid edges see at most n^{1/3+0.1eps} vertices", e2_bound, e2_worst, e2_pass);

    // (R): sampled draws of (x, A, Z1, Z2)
    double r_bound = std::pow(n, 1.0 / 3 + 1.5 * eps);
    bool r_pass = true;
    double r_worst = -1;
    {
        std::vector<int> nar;
        for (int w : g.neighbors(bf.a))
            if (bf.in_R[static_cast<size_t>(w)]) nar.push_back(w);
        int a_size = std::max(1, static_cast<int>(std::llround(std::pow(n, 1.0 / 3))));
        int z1_size = std::max(1, static_cast<int>(std::llround(std::pow(ln_n, 4.0))));
        int z2_size =
            std::max(1, static_cast<int>(std::llround(std::pow(n, 1.0 / 3 + eps / 2))));
        for (int d = 0; d < r_draws; ++d) {
            int t = 1 + static_cast<int>(rng.below(2));
            std::vector<int> others;
            for (int v = 0; v < bf.n; ++v)
                if (v != bf.a && bf.v_side[static_cast<size_t>(v)] != t) others.push_back(v);
            if (others.empty() || nar.empty()) break;
            int x = others[rng.below(others.size())];
            std::vector<int> low_edges, mid_edges;
            for (int e = 0; e < g.edge_count(); ++e) {
                auto l = appears_between_levels(bf, t, g.edge(e));
                if (!l) continue;
                if (*l <= bf.k - 1) low_edges.push_back(e);
                else if (*l == bf.k) mid_edges.push_back(e);
            }
            rng.shuffle(low_edges);
            rng.shuffle(mid_edges);
            if (static_cast<int>(low_edges.size()) > z1_size) low_edges.resize(static_cast<size_t>(z1_size));
            if (static_cast<int>(mid_edges.size()) > z2_size) mid_edges.resize(static_cast<size_t>(z2_size));
            std::vector<int> A = nar;
            rng.shuffle(A);
            if (static_cast<int>(A.size()) > a_size) A.resize(static_cast<size_t>(a_size));
            CandidateFamily cf = compute_candidates(g, bf, x, t);
            std::vector<int> cx = candidates_excluding(g, bf, cf, low_edges, mid_edges);
            std::vector<char> in_cx(static_cast<size_t>(bf.n), 0);
            for (int v : cx) in_cx[static_cast<size_t>(v)] = 1;
            int crossing = 0;
            for (int av : A)
                for (int w : g.neighbors(av))
                    if (in_cx[static_cast<size_t>(w)]) ++crossing;
            if (r_worst < 0 || crossing < r_worst) r_worst = crossing;
            if (crossing < r_bound) r_pass = false;
        }
    }
    add("R", "e_G(A, C^x[Z1,Z2]) >= n^{1/3+1.5eps}", r_bound, r_worst, r_pass);
    return rep;
}

}  // namespace wbg
