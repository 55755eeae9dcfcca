#pragma once

#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wbg/graph.hpp"
#include "wbg/rng.hpp"

namespace wbg {

enum class Owner : uint8_t { Free = 0, Walker = 1, Breaker = 2 };
enum class PlayerSide : uint8_t { Maker = 0, Breaker = 1 };
enum class Variant : uint8_t { MakerBreaker, ConnectorBreaker, WalkerBreaker };
enum class MoveKind : uint8_t { Claim = 0, Traverse = 1, Pass = 2 };

inline PlayerSide opponent(PlayerSide p) {
    return p == PlayerSide::Maker ? PlayerSide::Breaker : PlayerSide::Maker;
}

struct Move {
    MoveKind kind = MoveKind::Pass;
    int edge = -1;
    // For Walker claims: the endpoint she ends at (relevant only for her
    // first claim, when no position exists yet). -1 means "far endpoint".
    int dest = -1;

    bool operator==(const Move& o) const {
        return kind == o.kind && edge == o.edge && dest == o.dest;
    }
};

struct WinCondition {
    enum class Kind { Connectivity, Hamiltonicity, ReachVertex, SpanningW, ClaimEdgeSets };
    Kind kind = Kind::Connectivity;
    int target = -1;                          // ReachVertex
    std::vector<std::vector<int>> edge_sets;  // ClaimEdgeSets (edge indices)
    int ham_limit = 22;

    static WinCondition connectivity() { return {Kind::Connectivity, -1, {}, 22}; }
    static WinCondition spanning() { return {Kind::SpanningW, -1, {}, 22}; }
    static WinCondition hamiltonicity(int limit = 22) {
        return {Kind::Hamiltonicity, -1, {}, limit};
    }
    static WinCondition reach(int target) { return {Kind::ReachVertex, target, {}, 22}; }
    static WinCondition claim_sets(std::vector<std::vector<int>> sets) {
        return {Kind::ClaimEdgeSets, -1, std::move(sets), 22};
    }
};

struct GameDef {
    Variant variant = Variant::MakerBreaker;
    int maker_bias = 1;   // m >= 1
    int breaker_bias = 1; // b >= 1
    PlayerSide first_player = PlayerSide::Maker;
    WinCondition win;
    int round_cap_multiplier = 10;  // cap = multiplier * e(G)

    void validate() const {
        if (maker_bias < 1 || breaker_bias < 1)
            throw std::invalid_argument("GameDef: biases must be >= 1");
    }
};

// Per-edge ownership plus Walker's position and turn bookkeeping.
// |W| + |B| + |F| = e(G) at all times.
struct BoardState {
    const Graph* g = nullptr;
    std::vector<Owner> own;
    int walker_pos = -1;
    int rounds_played = 0;  // completed (maker turn, breaker turn) pairs
    PlayerSide whose_turn = PlayerSide::Maker;
    int moves_left_in_turn = 1;
    int turns_completed = 0;

    int free_count = 0, walker_count = 0, breaker_count = 0;
    std::vector<int> walker_deg;
    int walker_vertex_count = 0;

    bool edge_free(int e) const { return own[static_cast<size_t>(e)] == Owner::Free; }
    bool in_walker_graph(int v) const { return walker_deg[static_cast<size_t>(v)] > 0; }
};

inline BoardState initial_state(const Graph& g, const GameDef& def) {
    def.validate();
    BoardState s;
    s.g = &g;
    s.own.assign(static_cast<size_t>(g.edge_count()), Owner::Free);
    s.free_count = g.edge_count();
    s.walker_deg.assign(static_cast<size_t>(g.vertex_count()), 0);
    s.whose_turn = def.first_player;
    s.moves_left_in_turn =
        def.first_player == PlayerSide::Maker ? def.maker_bias : def.breaker_bias;
    return s;
}

inline void append_legal_moves(const BoardState& s, const GameDef& def,
                               std::vector<Move>& out) {
    const Graph& g = *s.g;
    if (s.whose_turn == PlayerSide::Breaker ||
        def.variant == Variant::MakerBreaker) {
        for (int e = 0; e < g.edge_count(); ++e)
            if (s.edge_free(e)) out.push_back({MoveKind::Claim, e, -1});
        return;
    }
    if (def.variant == Variant::ConnectorBreaker) {
        if (s.walker_count == 0) {
            for (int e = 0; e < g.edge_count(); ++e)
                if (s.edge_free(e)) out.push_back({MoveKind::Claim, e, -1});
        } else {
            for (int e = 0; e < g.edge_count(); ++e) {
                if (!s.edge_free(e)) continue;
                const Edge& ed = g.edge(e);
                if (s.in_walker_graph(ed.u) || s.in_walker_graph(ed.v))
                    out.push_back({MoveKind::Claim, e, -1});
            }
        }
        return;
    }
    // WalkerBreaker
    if (s.walker_pos < 0) {
        for (int e = 0; e < g.edge_count(); ++e) {
            if (!s.edge_free(e)) continue;
            const Edge& ed = g.edge(e);
            out.push_back({MoveKind::Claim, e, ed.v});
            out.push_back({MoveKind::Claim, e, ed.u});
        }
        return;
    }
    for (int w : g.neighbors(s.walker_pos)) {
        int e = g.edge_index(s.walker_pos, w);
        if (s.own[static_cast<size_t>(e)] == Owner::Free)
            out.push_back({MoveKind::Claim, e, w});
        else if (s.own[static_cast<size_t>(e)] == Owner::Walker)
            out.push_back({MoveKind::Traverse, e, w});
    }
}

inline std::vector<Move> legal_moves(const BoardState& s, const GameDef& def) {
    std::vector<Move> out;
    append_legal_moves(s, def, out);
    return out;
}

namespace detail {
inline void end_turn(BoardState& s, const GameDef& def) {
    s.turns_completed += 1;
    s.rounds_played = s.turns_completed / 2;
    s.whose_turn = opponent(s.whose_turn);
    s.moves_left_in_turn =
        s.whose_turn == PlayerSide::Maker ? def.maker_bias : def.breaker_bias;
}

[[noreturn]] inline void illegal(const std::string& rule, const Move& m, const Graph& g) {
    std::ostringstream os;
    os << "illegal move (" << rule << "): kind="
       << (m.kind == MoveKind::Claim ? "claim" : m.kind == MoveKind::Traverse ? "traverse" : "pass");
    if (m.edge >= 0 && m.edge < g.edge_count())
        os << " edge=(" << g.edge(m.edge).u << "," << g.edge(m.edge).v << ")";
    else
        os << " edge#" << m.edge;
    throw std::invalid_argument(os.str());
}
}  // namespace detail

// Applies one unit move (one bias unit). A Pass forfeits the remainder of
// the current turn. Throws with the violated rule on illegal input.
inline void apply_move(BoardState& s, const GameDef& def, const Move& m) {
    const Graph& g = *s.g;
    if (m.kind == MoveKind::Pass) {
        s.turns_completed += 0;
        detail::end_turn(s, def);
        return;
    }
    if (m.edge < 0 || m.edge >= g.edge_count()) detail::illegal("no such edge", m, g);
    const Edge& ed = g.edge(m.edge);

    if (s.whose_turn == PlayerSide::Breaker) {
        if (m.kind != MoveKind::Claim) detail::illegal("Breaker may only claim", m, g);
        if (!s.edge_free(m.edge)) detail::illegal("edge not free", m, g);
        s.own[static_cast<size_t>(m.edge)] = Owner::Breaker;
        --s.free_count;
        ++s.breaker_count;
    } else {
        switch (def.variant) {
            case Variant::MakerBreaker:
                if (m.kind != MoveKind::Claim) detail::illegal("Maker may only claim", m, g);
                if (!s.edge_free(m.edge)) detail::illegal("edge not free", m, g);
                break;
            case Variant::ConnectorBreaker:
                if (m.kind != MoveKind::Claim) detail::illegal("Connector may only claim", m, g);
                if (!s.edge_free(m.edge)) detail::illegal("edge not free", m, g);
                if (s.walker_count > 0 && !s.in_walker_graph(ed.u) && !s.in_walker_graph(ed.v))
                    detail::illegal("Connector claim must keep her graph connected", m, g);
                break;
            case Variant::WalkerBreaker: {
                if (m.kind == MoveKind::Claim) {
                    if (!s.edge_free(m.edge)) detail::illegal("edge not free", m, g);
                    if (s.walker_pos >= 0 && ed.u != s.walker_pos && ed.v != s.walker_pos)
                        detail::illegal("Walker claim must be incident to her position", m, g);
                } else {
                    if (s.own[static_cast<size_t>(m.edge)] != Owner::Walker)
                        detail::illegal("Walker may traverse her own edges only", m, g);
                    if (s.walker_pos < 0 || (ed.u != s.walker_pos && ed.v != s.walker_pos))
                        detail::illegal("traversal must start at Walker's position", m, g);
                }
                break;
            }
        }
        if (m.kind == MoveKind::Claim) {
            s.own[static_cast<size_t>(m.edge)] = Owner::Walker;
            --s.free_count;
            ++s.walker_count;
            if (s.walker_deg[static_cast<size_t>(ed.u)]++ == 0) ++s.walker_vertex_count;
            if (s.walker_deg[static_cast<size_t>(ed.v)]++ == 0) ++s.walker_vertex_count;
        }
        if (def.variant == Variant::WalkerBreaker) {
            int from = s.walker_pos;
            int to;
            if (from < 0) {
                to = (m.dest == ed.u || m.dest == ed.v) ? m.dest : ed.v;
            } else {
                to = g.other_end(m.edge, from);
                if (m.dest >= 0 && m.dest != to)
                    detail::illegal("dest inconsistent with position", m, g);
            }
            s.walker_pos = to;
        }
    }
    if (--s.moves_left_in_turn == 0) detail::end_turn(s, def);
}

inline bool maker_has_won(const BoardState& s, const GameDef& def) {
    const Graph& g = *s.g;
    const int n = g.vertex_count();
    switch (def.win.kind) {
        case WinCondition::Kind::SpanningW:
            return s.walker_vertex_count == n;
        case WinCondition::Kind::ReachVertex:
            return s.walker_pos == def.win.target;
        case WinCondition::Kind::Connectivity: {
            if (s.walker_vertex_count != n) return false;
            std::vector<std::pair<int, int>> es;
            for (int e = 0; e < g.edge_count(); ++e)
                if (s.own[static_cast<size_t>(e)] == Owner::Walker)
                    es.emplace_back(g.edge(e).u, g.edge(e).v);
            return is_connected(Graph(n, std::move(es)));
        }
        case WinCondition::Kind::Hamiltonicity: {
            if (s.walker_vertex_count != n || s.walker_count < n) return false;
            std::vector<std::pair<int, int>> es;
            for (int e = 0; e < g.edge_count(); ++e)
                if (s.own[static_cast<size_t>(e)] == Owner::Walker)
                    es.emplace_back(g.edge(e).u, g.edge(e).v);
            return has_hamilton_cycle(Graph(n, std::move(es)), def.win.ham_limit);
        }
        case WinCondition::Kind::ClaimEdgeSets: {
            for (const auto& set : def.win.edge_sets) {
                bool all = true;
                for (int e : set)
                    if (s.own[static_cast<size_t>(e)] != Owner::Walker) {
                        all = false;
                        break;
                    }
                if (all) return true;
            }
            return false;
        }
    }
    return false;
}

// Checks the structural invariants of the Walker/Connector variants:
// Walker's edges form a connected subgraph containing her position.
inline bool walker_graph_consistent(const BoardState& s, const GameDef& def) {
    if (def.variant == Variant::MakerBreaker) return true;
    const Graph& g = *s.g;
    std::vector<int> verts;
    std::vector<std::pair<int, int>> es;
    for (int e = 0; e < g.edge_count(); ++e)
        if (s.own[static_cast<size_t>(e)] == Owner::Walker)
            es.emplace_back(g.edge(e).u, g.edge(e).v);
    if (es.empty()) return true;
    Graph w(g.vertex_count(), es);
    for (int v = 0; v < g.vertex_count(); ++v)
        if (w.degree(v) > 0) verts.push_back(v);
    if (!is_connected(w, verts)) return false;
    if (def.variant == Variant::WalkerBreaker && s.walker_pos >= 0 &&
        !s.in_walker_graph(s.walker_pos))
        return false;
    return true;
}

struct TranscriptRecord {
    int round;  // 1-based round index at the time of the move
    PlayerSide player;
    Move move;
};

struct Transcript {
    GameDef def;
    std::vector<TranscriptRecord> records;
    PlayerSide winner = PlayerSide::Breaker;
    BoardState final_state;
    std::vector<std::string> monitor_log;
};

inline bool boards_equal(const BoardState& a, const BoardState& b) {
    return a.own == b.own && a.walker_pos == b.walker_pos &&
           a.turns_completed == b.turns_completed &&
           a.whose_turn == b.whose_turn;
}

// A strategy produces one unit move given the current state, or nullopt to
// forfeit the rest of its turn.
using Strategy = std::function<std::optional<Move>(const BoardState&, Rng&)>;

// Alternates turns honoring both biases until the win condition is met,
// the round cap trips, or both players pass back to back.
inline Transcript play_game(const GameDef& def, const Graph& g, Strategy maker,
                            Strategy breaker, uint64_t seed) {
    def.validate();
    Transcript t;
    t.def = def;
    BoardState s = initial_state(g, def);
    Rng rng(seed);
    const long long cap =
        static_cast<long long>(def.round_cap_multiplier) * std::max(1, g.edge_count());
    bool maker_won = maker_has_won(s, def);
    int consecutive_passes = 0;
    while (!maker_won && s.rounds_played < cap) {
        PlayerSide side = s.whose_turn;
        Strategy& strat = side == PlayerSide::Maker ? maker : breaker;
        std::optional<Move> mv = strat(s, rng);
        Move m = mv.value_or(Move{MoveKind::Pass, -1, -1});
        int round = s.turns_completed / 2 + 1;
        apply_move(s, def, m);  // throws on an illegal strategy move
        t.records.push_back({round, side, m});
        consecutive_passes = (m.kind == MoveKind::Pass) ? consecutive_passes + 1 : 0;
        if (side == PlayerSide::Maker && maker_has_won(s, def)) maker_won = true;
        if (consecutive_passes >= 2) break;
    }
    t.winner = maker_won ? PlayerSide::Maker : PlayerSide::Breaker;
    t.final_state = std::move(s);
    return t;
}

// Line-oriented transcript format: "round player move_kind u v".
inline void write_transcript(std::ostream& os, const Graph& g, const Transcript& t) {
    for (const auto& r : t.records) {
        const char* player = r.player == PlayerSide::Maker ? "M" : "B";
        const char* kind = r.move.kind == MoveKind::Claim      ? "claim"
                           : r.move.kind == MoveKind::Traverse ? "traverse"
                                                               : "pass";
        int u = -1, v = -1;
        if (r.move.edge >= 0) {
            u = g.edge(r.move.edge).u;
            v = g.edge(r.move.edge).v;
            if (r.move.dest == u) std::swap(u, v);  // list dest second
        }
        os << r.round << ' ' << player << ' ' << kind << ' ' << u << ' ' << v << '\n';
    }
}

inline std::vector<TranscriptRecord> read_transcript(std::istream& is, const Graph& g) {
    std::vector<TranscriptRecord> out;
    int round;
    std::string player, kind;
    int u, v;
    while (is >> round >> player >> kind >> u >> v) {
        TranscriptRecord r;
        r.round = round;
        r.player = player == "M" ? PlayerSide::Maker : PlayerSide::Breaker;
        if (kind == "pass") {
            r.move = {MoveKind::Pass, -1, -1};
        } else {
            int e = g.edge_index(u, v);
            if (e < 0) throw std::invalid_argument("read_transcript: unknown edge");
            r.move = {kind == "claim" ? MoveKind::Claim : MoveKind::Traverse, e, v};
        }
        out.push_back(r);
    }
    return out;
}

// Replays recorded moves from the initial state; the result must reproduce
// the original final state exactly.
inline BoardState replay(const GameDef& def, const Graph& g,
                         const std::vector<TranscriptRecord>& records) {
    BoardState s = initial_state(g, def);
    for (const auto& r : records) apply_move(s, def, r.move);
    return s;
}

}  // namespace wbg
