#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wbg/rng.hpp"

namespace wbg {

// ---------------------------------------------------------------------------
// Continuous box game CBox(b,1; a_1..a_n): CMaker spreads up to b weight per
// round over surviving boxes, CBreaker destroys one box per round. Under the
// destroy-the-heaviest strategy no surviving box ever holds more than
// b(ln n + 1) claimed weight.
// ---------------------------------------------------------------------------

struct CBoxBox {
    double weight = 0;
    double claimed = 0;
    bool destroyed = false;
    bool won = false;  // CMaker claimed the full weight
};

struct CBoxState {
    std::vector<CBoxBox> boxes;
    double bias = 1;
    int rounds = 0;
};

inline CBoxState make_cbox(const std::vector<double>& weights, double b) {
    if (b <= 0) throw std::invalid_argument("make_cbox: bias must be positive");
    CBoxState s;
    s.bias = b;
    for (double w : weights) {
        if (w <= 0) throw std::invalid_argument("make_cbox: weights must be positive");
        s.boxes.push_back({w, 0.0, false, false});
    }
    return s;
}

// Destroy a surviving box holding the largest claimed weight (lowest index
// on ties).
inline int cbreaker_strategy_S(const CBoxState& s) {
    int best = -1;
    for (size_t i = 0; i < s.boxes.size(); ++i) {
        if (s.boxes[i].destroyed) continue;
        if (best < 0 || s.boxes[i].claimed > s.boxes[static_cast<size_t>(best)].claimed)
            best = static_cast<int>(i);
    }
    if (best < 0) throw std::logic_error("cbreaker_strategy_S: no surviving box");
    return best;
}

// CMaker allocation for one round: (box index, claimed weight) pairs.
using CMakerStrategy = std::function<std::vector<std::pair<int, double>>(const CBoxState&, Rng&)>;

struct CBoxTraceRow {
    int round;
    double max_surviving_claimed;
    int destroyed_box;
};

struct CBoxResult {
    std::vector<CBoxTraceRow> trace;
    bool cmaker_won = false;
    bool bound_violated = false;
    double worst_surviving = 0;
    double bound = 0;
};

inline constexpr double kBoxBudgetTol = 1e-9;

// Runs CMaker against strategy S until every box is destroyed or won. The
// b(ln n + 1) bound is checked on every surviving box after every round.
inline CBoxResult simulate_cbox(const std::vector<double>& weights, double b,
                                const CMakerStrategy& cmaker, uint64_t seed = 0,
                                int max_rounds = -1) {
    CBoxState s = make_cbox(weights, b);
    Rng rng(seed);
    CBoxResult res;
    res.bound = b * (std::log(static_cast<double>(weights.size())) + 1.0);
    if (max_rounds < 0) max_rounds = static_cast<int>(weights.size()) + 1;

    auto all_settled = [&] {
        for (const CBoxBox& box : s.boxes)
            if (!box.destroyed && !box.won) return false;
        return true;
    };

    while (!all_settled() && s.rounds < max_rounds) {
        ++s.rounds;
        double spent = 0;
        for (auto [idx, amount] : cmaker(s, rng)) {
            if (idx < 0 || idx >= static_cast<int>(s.boxes.size()))
                throw std::invalid_argument("simulate_cbox: bad box index");
            CBoxBox& box = s.boxes[static_cast<size_t>(idx)];
            if (box.destroyed || amount < 0)
                throw std::invalid_argument("simulate_cbox: illegal claim");
            spent += amount;
            box.claimed += amount;
            if (box.claimed >= box.weight - kBoxBudgetTol) {
                box.claimed = box.weight;
                box.won = true;
                res.cmaker_won = true;
            }
        }
        if (spent > b + kBoxBudgetTol)
            throw std::invalid_argument("simulate_cbox: round budget exceeded");

        bool any_surviving = false;
        for (const CBoxBox& box : s.boxes)
            if (!box.destroyed && !box.won) any_surviving = true;
        int destroyed = -1;
        if (any_surviving && !res.cmaker_won) {
            destroyed = cbreaker_strategy_S(s);
            s.boxes[static_cast<size_t>(destroyed)].destroyed = true;
        }

        double worst = 0;
        for (const CBoxBox& box : s.boxes)
            if (!box.destroyed && box.claimed > worst) worst = box.claimed;
        if (worst > res.worst_surviving) res.worst_surviving = worst;
        if (worst > res.bound + kBoxBudgetTol) res.bound_violated = true;
        res.trace.push_back({s.rounds, worst, destroyed});
        if (res.cmaker_won) break;
    }
    return res;
}

// ---------------------------------------------------------------------------
// MinBox(n, D, alpha, b): (1:b) game on n disjoint boxes of size >= D. Maker
// serves the most dangerous box still offering a free element; this rule
// keeps dang(F) = w_B(F) - b*w_M(F) at most b(ln n + 1) on active boxes.
// A box is "free" while it still has an unclaimed element and "active" while
// w_M(F) < alpha*|F|.
// ---------------------------------------------------------------------------

struct MinBoxBox {
    int size = 0;
    int w_M = 0;
    int w_B = 0;
};

struct MinBoxState {
    std::vector<MinBoxBox> boxes;
    int D = 1;
    double alpha = 0.5;
    int b = 1;
    int rounds = 0;

    double dang(size_t i) const {
        return static_cast<double>(boxes[i].w_B) - static_cast<double>(b) * boxes[i].w_M;
    }
    bool active(size_t i) const { return boxes[i].w_M < alpha * boxes[i].size; }
    bool free_box(size_t i) const { return boxes[i].w_M + boxes[i].w_B < boxes[i].size; }
};

inline MinBoxState make_minbox(int n, int D, double alpha, int b,
                               const std::vector<int>& sizes = {}) {
    if (n < 1 || D < 1 || b < 1 || !(alpha > 0 && alpha < 1))
        throw std::invalid_argument("make_minbox: bad parameters");
    MinBoxState s;
    s.D = D;
    s.alpha = alpha;
    s.b = b;
    for (int i = 0; i < n; ++i) {
        int sz = sizes.empty() ? D : sizes[static_cast<size_t>(i)];
        if (sz < D) throw std::invalid_argument("make_minbox: box below minimum size");
        s.boxes.push_back({sz, 0, 0});
    }
    return s;
}

// Index of the most dangerous free active box (lowest on ties), or -1 when
// no box is both free and active -- the caller branches on that signal.
inline int minbox_maker_move(const MinBoxState& s) {
    int best = -1;
    for (size_t i = 0; i < s.boxes.size(); ++i) {
        if (!s.free_box(i) || !s.active(i)) continue;
        if (best < 0 || s.dang(i) > s.dang(static_cast<size_t>(best)))
            best = static_cast<int>(i);
    }
    return best;
}

// Breaker turn: box indices to claim one element each in (at most b entries).
using MinBoxBreaker = std::function<std::vector<int>(const MinBoxState&, Rng&)>;

struct MinBoxTraceRow {
    int round;
    int box;
    int w_M;
    int w_B;
    double dang;
    bool active;
    bool free_box;
};

struct MinBoxResult {
    std::vector<MinBoxTraceRow> trace;
    bool bound_violated = false;
    double worst_active_dang = 0;
    double bound = 0;
    int rounds = 0;
    MinBoxState final_state;
};

// Maker (max-danger rule) vs the supplied Breaker until the board is
// exhausted; the danger bound is checked on every active box after every
// completed round.
inline MinBoxResult simulate_minbox(int n, int D, double alpha, int b,
                                    const MinBoxBreaker& breaker, uint64_t seed,
                                    bool keep_trace = false, int max_rounds = -1) {
    MinBoxState s = make_minbox(n, D, alpha, b);
    Rng rng(seed);
    MinBoxResult res;
    res.bound = b * (std::log(static_cast<double>(n)) + 1.0);
    if (max_rounds < 0) max_rounds = n * D;  // every element claimed at most once

    auto elements_left = [&] {
        for (size_t i = 0; i < s.boxes.size(); ++i)
            if (s.free_box(i)) return true;
        return false;
    };

    while (elements_left() && s.rounds < max_rounds) {
        ++s.rounds;
        int pick = minbox_maker_move(s);
        if (pick >= 0) s.boxes[static_cast<size_t>(pick)].w_M += 1;

        int claims = 0;
        for (int idx : breaker(s, rng)) {
            if (claims >= b) throw std::invalid_argument("simulate_minbox: breaker over bias");
            if (idx < 0 || idx >= n) throw std::invalid_argument("simulate_minbox: bad box");
            if (!s.free_box(static_cast<size_t>(idx))) continue;
            s.boxes[static_cast<size_t>(idx)].w_B += 1;
            ++claims;
        }

        for (size_t i = 0; i < s.boxes.size(); ++i) {
            if (s.active(i)) {
                double d = s.dang(i);
                if (d > res.worst_active_dang) res.worst_active_dang = d;
                if (d > res.bound + kBoxBudgetTol) res.bound_violated = true;
            }
            if (keep_trace)
                res.trace.push_back({s.rounds, static_cast<int>(i), s.boxes[i].w_M,
                                     s.boxes[i].w_B, s.dang(i), s.active(i), s.free_box(i)});
        }
    }
    res.rounds = s.rounds;
    res.final_state = std::move(s);
    return res;
}

// Baseline Breaker heuristics for the MinBox simulations.
inline MinBoxBreaker minbox_breaker_random() {
    return [](const MinBoxState& s, Rng& rng) {
        std::vector<int> out;
        std::vector<int> open;
        for (size_t i = 0; i < s.boxes.size(); ++i)
            if (s.free_box(i)) open.push_back(static_cast<int>(i));
        for (int c = 0; c < s.b && !open.empty(); ++c)
            out.push_back(open[rng.below(open.size())]);
        return out;
    };
}

// Hammers the box Maker served most recently (max w_M as a proxy).
inline MinBoxBreaker minbox_breaker_follow_maker() {
    return [](const MinBoxState& s, Rng&) {
        int target = -1;
        double best = -1;
        for (size_t i = 0; i < s.boxes.size(); ++i) {
            if (!s.free_box(i)) continue;
            double score = static_cast<double>(s.boxes[i].w_M);
            if (score > best) {
                best = score;
                target = static_cast<int>(i);
            }
        }
        std::vector<int> out;
        if (target >= 0) out.assign(static_cast<size_t>(s.b), target);
        return out;
    };
}

// Spreads claims round-robin across boxes that still have elements.
inline MinBoxBreaker minbox_breaker_round_robin() {
    auto next = std::make_shared<int>(0);
    return [next](const MinBoxState& s, Rng&) {
        std::vector<int> out;
        const int n = static_cast<int>(s.boxes.size());
        for (int c = 0; c < s.b; ++c) {
            for (int step = 0; step < n; ++step) {
                int i = (*next + step) % n;
                if (s.free_box(static_cast<size_t>(i))) {
                    out.push_back(i);
                    *next = (i + 1) % n;
                    break;
                }
            }
        }
        return out;
    };
}

// Pushes the currently most dangerous active box even further.
inline MinBoxBreaker minbox_breaker_max_danger() {
    return [](const MinBoxState& s, Rng&) {
        std::vector<int> out;
        for (int c = 0; c < s.b; ++c) {
            int target = -1;
            for (size_t i = 0; i < s.boxes.size(); ++i) {
                if (!s.free_box(i) || !s.active(i)) continue;
                if (target < 0 || s.dang(i) > s.dang(static_cast<size_t>(target)))
                    target = static_cast<int>(i);
            }
            if (target < 0)
                for (size_t i = 0; i < s.boxes.size(); ++i)
                    if (s.free_box(i)) {
                        target = static_cast<int>(i);
                        break;
                    }
            if (target < 0) break;
            out.push_back(target);
        }
        return out;
    };
}

inline void write_minbox_trace_csv(std::ostream& os, const MinBoxResult& r) {
    os << "round,box,w_M,w_B,dang,active,free,destroyed\n";
    for (const MinBoxTraceRow& row : r.trace)
        os << row.round << ',' << row.box << ',' << row.w_M << ',' << row.w_B << ','
           << row.dang << ',' << (row.active ? 1 : 0) << ',' << (row.free_box ? 1 : 0)
           << ",0\n";
}

inline void write_cbox_trace_csv(std::ostream& os, const CBoxResult& r) {
    os << "round,box,w_M,w_B,dang,active,free,destroyed\n";
    for (const CBoxTraceRow& row : r.trace)
        os << row.round << ",-1," << row.max_surviving_claimed << ",0,0,1,1,"
           << row.destroyed_box << '\n';
}

}  // namespace wbg
