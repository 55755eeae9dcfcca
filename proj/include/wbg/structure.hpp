#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wbg/engine.hpp"
#include "wbg/graph.hpp"

namespace wbg {

// Subdivided perfect 3-ary tree of depth k with all leaves identified into a
// single sink. Main level L_l holds the original tree vertices s_{l,i}
// (root s_{k,1}), secondary level L*_l holds the subdivision vertices
// s*_{l,i}; each s*_{0,i} attaches to the sink s_0.
struct SkStructure {
    int k = 0;
    Graph graph{0};
    int sink = -1;

    enum class Kind { Main, Secondary, Sink };
    struct Label {
        Kind kind;
        int level;
        int index;  // 1-based within the level
    };
    std::vector<Label> labels;  // per graph vertex

    // main_ids[l][i-1] = vertex of s_{l,i}, l in [1,k]
    std::vector<std::vector<int>> main_ids;
    // sec_ids[l][i-1] = vertex of s*_{l,i}, l in [0,k-1]
    std::vector<std::vector<int>> sec_ids;

    int main_id(int level, int index) const {
        return main_ids[static_cast<size_t>(level)][static_cast<size_t>(index - 1)];
    }
    int sec_id(int level, int index) const {
        return sec_ids[static_cast<size_t>(level)][static_cast<size_t>(index - 1)];
    }
    int root() const { return main_id(k, 1); }
};

inline int pow3(int e) {
    int r = 1;
    while (e-- > 0) r *= 3;
    return r;
}

inline SkStructure build_structure(int k) {
    if (k < 1) throw std::invalid_argument("build_structure: k must be >= 1");
    SkStructure s;
    s.k = k;
    s.main_ids.assign(static_cast<size_t>(k + 1), {});
    s.sec_ids.assign(static_cast<size_t>(k), {});

    int next = 0;
    auto new_vertex = [&](SkStructure::Kind kind, int level, int index) {
        s.labels.push_back({kind, level, index});
        return next++;
    };

    for (int l = k; l >= 1; --l) {
        int width = pow3(k - l);
        for (int i = 1; i <= width; ++i)
            s.main_ids[static_cast<size_t>(l)].push_back(
                new_vertex(SkStructure::Kind::Main, l, i));
    }
    for (int l = k - 1; l >= 0; --l) {
        int width = pow3(k - l);
        for (int i = 1; i <= width; ++i)
            s.sec_ids[static_cast<size_t>(l)].push_back(
                new_vertex(SkStructure::Kind::Secondary, l, i));
    }
    s.sink = new_vertex(SkStructure::Kind::Sink, 0, 0);

    std::vector<std::pair<int, int>> es;
    for (int l = k; l >= 1; --l) {
        int width = pow3(k - l);
        for (int i = 1; i <= width; ++i) {
            for (int j = 3 * i - 2; j <= 3 * i; ++j) {
                es.emplace_back(s.main_id(l, i), s.sec_id(l - 1, j));
                es.emplace_back(s.sec_id(l - 1, j),
                                l - 1 >= 1 ? s.main_id(l - 1, j) : s.sink);
            }
        }
    }
    s.graph = Graph(next, std::move(es));
    return s;
}

// All pattern edges of the sub-copy rooted at main vertex s_{l,i}: its three
// descending length-2 paths and, recursively, the copies below them.
inline void subtree_edges(const SkStructure& s, int level, int index,
                          std::vector<std::pair<int, int>>& out) {
    for (int j = 3 * index - 2; j <= 3 * index; ++j) {
        int sec = s.sec_id(level - 1, j);
        int child = level - 1 >= 1 ? s.main_id(level - 1, j) : s.sink;
        out.emplace_back(s.main_id(level, index), sec);
        out.emplace_back(sec, child);
        if (level - 1 >= 1) subtree_edges(s, level - 1, j, out);
    }
}

// Identity embedding helper.
inline std::vector<int> identity_embedding(const SkStructure& s) {
    std::vector<int> m(static_cast<size_t>(s.graph.vertex_count()));
    for (size_t i = 0; i < m.size(); ++i) m[i] = static_cast<int>(i);
    return m;
}

namespace detail {
inline bool edge_available(const BoardState& b, int u, int v) {
    int e = b.g->edge_index(u, v);
    return e >= 0 && b.own[static_cast<size_t>(e)] != Owner::Breaker;
}
inline bool edge_breaker_free(const BoardState& b, int u, int v) {
    return edge_available(b, u, v);
}
inline Move step_move(const BoardState& b, int from, int to) {
    int e = b.g->edge_index(from, to);
    if (e < 0) throw std::logic_error("structure_walk: embedding edge missing");
    Owner o = b.own[static_cast<size_t>(e)];
    if (o == Owner::Breaker) throw std::logic_error("structure_walk: edge lost");
    return {o == Owner::Free ? MoveKind::Claim : MoveKind::Traverse, e, to};
}
}  // namespace detail

// Walker's round at a main-level vertex: pick the lowest branch j whose
// descending length-2 path is Breaker-free and whose sub-copy (for levels
// >= 2) is entirely Breaker-free, and emit the two unit moves of the round.
// `embed` maps structure vertices to board vertices.
inline std::array<Move, 2> structure_walk(const BoardState& board, const SkStructure& s,
                                          const std::vector<int>& embed) {
    // locate Walker on the pattern
    int cur = -1;
    for (int v = 0; v < s.graph.vertex_count(); ++v)
        if (embed[static_cast<size_t>(v)] == board.walker_pos) {
            cur = v;
            break;
        }
    if (cur < 0) throw std::invalid_argument("structure_walk: walker not on the structure");
    const SkStructure::Label& lab = s.labels[static_cast<size_t>(cur)];
    if (lab.kind != SkStructure::Kind::Main)
        throw std::invalid_argument("structure_walk: walker not at a main-level vertex");

    const int level = lab.level, index = lab.index;
    std::ostringstream diag;
    for (int j = 3 * index - 2; j <= 3 * index; ++j) {
        int sec = s.sec_id(level - 1, j);
        int child = level - 1 >= 1 ? s.main_id(level - 1, j) : s.sink;
        int bu = embed[static_cast<size_t>(cur)];
        int bsec = embed[static_cast<size_t>(sec)];
        int bchild = embed[static_cast<size_t>(child)];
        bool path_ok = detail::edge_available(board, bu, bsec) &&
                       detail::edge_available(board, bsec, bchild);
        bool sub_ok = true;
        if (path_ok && level >= 2) {
            std::vector<std::pair<int, int>> sub;
            subtree_edges(s, level - 1, j, sub);
            for (auto [a, b] : sub)
                if (!detail::edge_breaker_free(board, embed[static_cast<size_t>(a)],
                                               embed[static_cast<size_t>(b)])) {
                    sub_ok = false;
                    break;
                }
        }
        if (path_ok && sub_ok)
            return {detail::step_move(board, bu, bsec),
                    detail::step_move(board, bsec, bchild)};
        diag << " branch " << j << ": " << (path_ok ? "sub-copy blocked" : "path blocked")
             << ';';
    }
    throw std::runtime_error("structure_walk: no qualifying branch --" + diag.str());
}

// One unit move of the traversal, derivable from the board alone: at a main
// vertex this is the first move of the round structure_walk picks; at a
// secondary vertex it is the forced descent along the unique lower edge
// (chosen Breaker-free when the round began).
inline Move structure_walk_unit_move(const BoardState& board, const SkStructure& s,
                                     const std::vector<int>& embed) {
    int cur = -1;
    for (int v = 0; v < s.graph.vertex_count(); ++v)
        if (embed[static_cast<size_t>(v)] == board.walker_pos) {
            cur = v;
            break;
        }
    if (cur < 0) throw std::invalid_argument("structure_walk_unit_move: walker off structure");
    const SkStructure::Label& lab = s.labels[static_cast<size_t>(cur)];
    if (lab.kind == SkStructure::Kind::Secondary) {
        int child = lab.level >= 1 ? s.main_id(lab.level, lab.index) : s.sink;
        return detail::step_move(board, embed[static_cast<size_t>(cur)],
                                 embed[static_cast<size_t>(child)]);
    }
    return structure_walk(board, s, embed)[0];
}

// Label dump: "level index kind vertex" per line.
inline void write_label_dump(std::ostream& os, const SkStructure& s) {
    for (int v = 0; v < s.graph.vertex_count(); ++v) {
        const SkStructure::Label& lab = s.labels[static_cast<size_t>(v)];
        const char* kind = lab.kind == SkStructure::Kind::Main        ? "main"
                           : lab.kind == SkStructure::Kind::Secondary ? "secondary"
                                                                      : "sink";
        os << lab.level << ' ' << lab.index << ' ' << kind << ' ' << v << '\n';
    }
}

// Number of leaves of S_k minus the sink (degree-1 vertices after removing
// the sink's edges).
inline int leaves_without_sink(const SkStructure& s) {
    int leaves = 0;
    for (int v = 0; v < s.graph.vertex_count(); ++v) {
        if (v == s.sink) continue;
        int deg = 0;
        for (int w : s.graph.neighbors(v))
            if (w != s.sink) ++deg;
        if (deg == 1) ++leaves;
    }
    return leaves;
}

}  // namespace wbg
