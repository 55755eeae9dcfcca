#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "wbg/engine.hpp"
#include "wbg/graph.hpp"

namespace wbg {

struct SolveResult {
    PlayerSide winner = PlayerSide::Breaker;
    std::optional<Move> optimal_move;
    uint64_t nodes_expanded = 0;
    std::optional<int> rounds_to_win;  // ReachVertex only: minimal Maker rounds
};

namespace detail {

struct SolverKey {
    uint64_t own;   // 2 bits per edge
    uint64_t rest;  // position, turn, bias units left, horizon
    bool operator==(const SolverKey& o) const { return own == o.own && rest == o.rest; }
};

struct SolverKeyHash {
    size_t operator()(const SolverKey& k) const {
        uint64_t h = k.own * 0x9E3779B97F4A7C15ULL;
        h ^= k.rest + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        return static_cast<size_t>(h * 0xBF58476D1CE4E5B9ULL);
    }
};

inline SolverKey make_key(const BoardState& s, int horizon) {
    SolverKey k{0, 0};
    for (size_t e = 0; e < s.own.size(); ++e)
        k.own |= static_cast<uint64_t>(s.own[e]) << (2 * e);
    k.rest = static_cast<uint64_t>(s.walker_pos + 1);
    k.rest |= static_cast<uint64_t>(s.whose_turn == PlayerSide::Maker) << 20;
    k.rest |= static_cast<uint64_t>(s.moves_left_in_turn) << 21;
    k.rest |= static_cast<uint64_t>(horizon + 1) << 32;
    return k;
}

// Minimax with a transposition table. A revisit of a state already on the
// DFS stack is scored as a Maker loss (a winning strategy never needs to
// repeat a position); values depending on such cuts are cached only when
// they are Maker wins, which stay correct under the pessimistic cut.
class MinimaxSolver {
public:
    MinimaxSolver(const GameDef& def, const Graph& g, bool use_memo)
        : def_(def), g_(g), use_memo_(use_memo) {}

    uint64_t nodes() const { return nodes_; }

    struct Value {
        bool maker_win;
        bool tainted;
    };

    // horizon: Maker turns still allowed to start (< 0 means unlimited);
    // used for ReachVertex round counting.
    Value eval(BoardState& s, int horizon) {
        ++nodes_;
        if (maker_has_won(s, def_)) return {true, false};
        const bool fresh_maker_turn = s.whose_turn == PlayerSide::Maker &&
                                      s.moves_left_in_turn == def_.maker_bias;
        if (horizon == 0 && fresh_maker_turn) return {false, false};
        if (s.free_count == 0 && def_.win.kind != WinCondition::Kind::ReachVertex)
            return {false, false};  // ownership frozen, condition already false

        // The repetition cut stays active even with the memo disabled, so
        // traversal cycles terminate either way.
        SolverKey key = make_key(s, horizon);
        if (use_memo_) {
            auto it = memo_.find(key);
            if (it != memo_.end()) return {it->second != 0, false};
        }
        if (!on_stack_.insert(key).second) return {false, true};

        int next_horizon = horizon;
        if (horizon > 0 && fresh_maker_turn) next_horizon = horizon - 1;

        std::vector<Move> moves = legal_moves(s, def_);
        if (moves.empty()) moves.push_back({MoveKind::Pass, -1, -1});

        const bool maker_to_move = s.whose_turn == PlayerSide::Maker;
        Value result{!maker_to_move, false};
        for (const Move& m : moves) {
            BoardState child = s;
            apply_move(child, def_, m);
            Value v = eval(child, next_horizon);
            result.tainted |= v.tainted;
            if (v.maker_win == maker_to_move) {
                result = {maker_to_move, v.tainted};
                break;
            }
        }
        on_stack_.erase(key);
        if (use_memo_ && (result.maker_win || !result.tainted))
            memo_[key] = result.maker_win ? 1 : 0;
        return result;
    }

private:
    const GameDef& def_;
    const Graph& g_;
    bool use_memo_;
    uint64_t nodes_ = 0;
    std::unordered_map<SolverKey, int8_t, SolverKeyHash> memo_;
    std::unordered_set<SolverKey, SolverKeyHash> on_stack_;
};

}  // namespace detail

// Exact game value under optimal play. The Walker variant admits traversal
// cycles, so it is solved by iterative deepening on Maker rounds up to the
// round cap (horizon is part of the memo key, making every search acyclic);
// the claim-only variants progress monotonically and run unbounded.
inline SolveResult solve(const GameDef& def, const Graph& g, const BoardState& initial,
                         int edge_limit = 26, bool use_memo = true,
                         int max_horizon = -1) {
    def.validate();
    if (g.edge_count() > edge_limit)
        throw std::invalid_argument("solve: board exceeds edge limit");

    SolveResult res;
    uint64_t nodes = 0;
    int solved_horizon = -1;
    bool maker_wins = false;

    auto run = [&](int horizon) {
        detail::MinimaxSolver ms(def, g, use_memo);
        BoardState root = initial;
        bool w = ms.eval(root, horizon).maker_win;
        nodes += ms.nodes();
        return w;
    };

    const bool bounded = def.win.kind == WinCondition::Kind::ReachVertex ||
                         def.variant == Variant::WalkerBreaker;
    if (bounded) {
        int cap = max_horizon >= 0
                      ? max_horizon
                      : def.round_cap_multiplier * std::max(1, g.edge_count());
        for (int h = 0; h <= cap; ++h) {
            if (run(h)) {
                maker_wins = true;
                solved_horizon = h;
                break;
            }
        }
    } else {
        maker_wins = run(-1);
    }

    res.winner = maker_wins ? PlayerSide::Maker : PlayerSide::Breaker;
    res.nodes_expanded = nodes;
    if (maker_wins && def.win.kind == WinCondition::Kind::ReachVertex)
        res.rounds_to_win = solved_horizon;

    // Best move at the root for the side to move: first move (in canonical
    // order) achieving that side's established game value.
    const int root_horizon = bounded ? solved_horizon : -1;
    if (!bounded || maker_wins) {
        BoardState root = initial;
        if (!maker_has_won(root, def)) {
            std::vector<Move> moves = legal_moves(root, def);
            if (moves.empty()) moves.push_back({MoveKind::Pass, -1, -1});
            const bool maker_to_move = root.whose_turn == PlayerSide::Maker;
            int next_h = root_horizon;
            if (next_h > 0 && maker_to_move &&
                root.moves_left_in_turn == def.maker_bias)
                next_h = root_horizon - 1;
            (void)maker_to_move;
            // Under optimal play the root value is res.winner no matter who
            // moves; the optimal move is the first one preserving it.
            detail::MinimaxSolver ms(def, g, use_memo);
            for (const Move& m : moves) {
                BoardState child = initial;
                apply_move(child, def, m);
                if (ms.eval(child, next_h).maker_win ==
                    (res.winner == PlayerSide::Maker)) {
                    res.optimal_move = m;
                    break;
                }
            }
            if (!res.optimal_move) res.optimal_move = moves.front();
            nodes += ms.nodes();
            res.nodes_expanded = nodes;
        }
    }
    return res;
}

struct VerifyResult {
    bool ok = false;
    // On failure: the Breaker edge claims (by edge index, -1 = pass) of one
    // losing line, in order.
    std::vector<int> witness;
};

// Deterministic-Maker adversarial check: every unordered set of Breaker
// claims of every size up to her bias is branched over; Maker's moves come
// from the supplied strategy. True iff the goal is met on every line within
// `horizon` Maker rounds.
inline VerifyResult verify_strategy_against_all_breakers(
    const GameDef& def, const Graph& g, const BoardState& initial,
    const std::function<std::optional<Move>(const BoardState&)>& maker_strategy,
    int horizon) {
    def.validate();
    VerifyResult out;
    std::vector<int> line;

    // Returns true iff Maker reaches the goal on all continuations.
    std::function<bool(BoardState&, int)> rec = [&](BoardState& s, int h) -> bool {
        if (maker_has_won(s, def)) return true;
        if (s.whose_turn == PlayerSide::Maker) {
            if (h == 0 && s.moves_left_in_turn == def.maker_bias) {
                out.witness = line;
                return false;
            }
            int nh = (s.moves_left_in_turn == def.maker_bias) ? h - 1 : h;
            BoardState child = s;
            while (child.whose_turn == PlayerSide::Maker) {
                std::optional<Move> m = maker_strategy(child);
                apply_move(child, def, m.value_or(Move{MoveKind::Pass, -1, -1}));
                if (maker_has_won(child, def)) return true;
            }
            return rec(child, nh);
        }
        // Breaker turn: branch over nondecreasing free-edge index sequences,
        // allowing an early stop (pass) at any point.
        std::function<bool(BoardState&, int)> bturn = [&](BoardState& bs, int min_e) -> bool {
            {
                BoardState child = bs;
                while (child.whose_turn == PlayerSide::Breaker)
                    apply_move(child, def, Move{MoveKind::Pass, -1, -1});
                line.push_back(-1);
                bool ok = rec(child, h);
                line.pop_back();
                if (!ok) return false;
            }
            for (int e = min_e; e < g.edge_count(); ++e) {
                if (!bs.edge_free(e)) continue;
                BoardState child = bs;
                apply_move(child, def, Move{MoveKind::Claim, e, -1});
                line.push_back(e);
                bool ok = child.whose_turn == PlayerSide::Breaker ? bturn(child, e + 1)
                                                                  : rec(child, h);
                line.pop_back();
                if (!ok) return false;
            }
            return true;
        };
        return bturn(s, 0);
    };

    BoardState root = initial;
    out.ok = rec(root, horizon);
    if (out.ok) out.witness.clear();
    return out;
}

}  // namespace wbg
