#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wbg/boxgames.hpp"
#include "wbg/engine.hpp"
#include "wbg/graph.hpp"
#include "wbg/rng.hpp"
#include "wbg/structure.hpp"
#include "wbg/techlemma.hpp"

namespace wbg {

// Sum of (1+b)^{-|F|/a} over the winning sets; the criterion holds (Breaker
// wins the (a:b) game) when the sum is below 1/(b+1).
inline std::pair<double, bool> beck_sum(const std::vector<std::vector<int>>& sets, int a,
                                        int b) {
    double sum = 0;
    for (const auto& f : sets)
        sum += std::pow(1.0 + b, -static_cast<double>(f.size()) / a);
    return {sum, sum < 1.0 / (b + 1)};
}

enum class AuxOwner : uint8_t { Free = 0, Mine = 1, Theirs = 2 };

// Move selection for the hitting player of an (a:b) game: the potential is
// the sum over live sets (sets we have not hit yet) of (1+b)^{-r/a}, where r
// counts the set's elements the opponent does not own. We claim the free
// element whose removal of newly-hit sets decreases the potential the most;
// lowest element index breaks ties. Returns -1 when no free element exists.
inline int potential_breaker_move(const std::vector<AuxOwner>& state,
                                  const std::vector<std::vector<int>>& sets, int a,
                                  int b) {
    std::vector<double> gain(state.size(), 0);
    for (const auto& f : sets) {
        bool hit = false;
        int remaining = 0;
        for (int el : f) {
            if (state[static_cast<size_t>(el)] == AuxOwner::Mine) hit = true;
            if (state[static_cast<size_t>(el)] != AuxOwner::Theirs) ++remaining;
        }
        if (hit) continue;
        double term = std::pow(1.0 + b, -static_cast<double>(remaining) / a);
        for (int el : f)
            if (state[static_cast<size_t>(el)] == AuxOwner::Free)
                gain[static_cast<size_t>(el)] += term;
    }
    int best = -1;
    for (size_t el = 0; el < state.size(); ++el) {
        if (state[el] != AuxOwner::Free) continue;
        if (best < 0 || gain[el] > gain[static_cast<size_t>(best)]) best = static_cast<int>(el);
    }
    return best;
}

// weight_t(e): ln^{-2}(n) for edges below level k-1, n^{-1/3-0.1 eps} for
// edges between levels k-1 and k, 0 otherwise.
inline double edge_weight(const BlockFamily& bf, int t, const Edge& e, double eps) {
    std::optional<int> level = appears_between_levels(bf, t, e);
    if (!level) return 0;
    double n = bf.n;
    if (*level <= bf.k - 1) return std::pow(std::log(n), -2.0);
    if (*level == bf.k) return std::pow(n, -1.0 / 3 - 0.1 * eps);
    return 0;
}

struct MonitorEntry {
    std::string claim_id;
    double bound = 0;
    double worst_observed = 0;
    bool violated = false;
    long round_of_violation = -1;
};

struct MonitorReport {
    std::vector<MonitorEntry> entries;

    MonitorEntry& get(const std::string& id, double bound) {
        for (MonitorEntry& e : entries)
            if (e.claim_id == id) return e;
        entries.push_back({id, bound, 0, false, -1});
        return entries.back();
    }
    const MonitorEntry* find(const std::string& id) const {
        for (const MonitorEntry& e : entries)
            if (e.claim_id == id) return &e;
        return nullptr;
    }
    bool any_violated() const {
        for (const MonitorEntry& e : entries)
            if (e.violated) return true;
        return false;
    }
};

inline nlohmann::json to_json(const MonitorReport& r) {
    nlohmann::json out = nlohmann::json::array();
    for (const MonitorEntry& e : r.entries)
        out.push_back({{"claim_id", e.claim_id},
                       {"bound", e.bound},
                       {"worst_observed", e.worst_observed},
                       {"violated", e.violated},
                       {"round_of_violation", e.round_of_violation}});
    return out;
}

enum class StrategyPolicy { Fallback, Strict };

// Walker's full strategy: a cycle of three sequences, all starting and
// ending at the fixed vertex a.
//   Sequence one grows a star a-w over N(a,R) until it has n^{1/3} leaves,
//   then claims edges from the star leaves into current candidate sets via
//   the potential-based auxiliary game.
//   Sequence two targets the unreached vertex x of largest weight and walks
//   to it through a freshly extracted block structure.
//   Sequence three picks an exposure vertex by largest danger in the
//   simulated box game, walks to it the same way, and runs the random coin
//   process on its unexposed neighbours.
// The class is driven one unit move at a time through next_move().
class WalkerFullStrategy {
public:
    WalkerFullStrategy(const Graph& g, const BlockFamily& bf, double eps, double p,
                       uint64_t seed, StrategyPolicy policy = StrategyPolicy::Fallback)
        : g_(&g),
          bf_(&bf),
          eps_(eps),
          p_(p),
          policy_(policy),
          rng_(split_seed(seed, 7)),
          mon_rng_(split_seed(seed, 8)) {
        n_ = g.vertex_count();
        k_ = bf.k;
        b_ = 8 * k_ + 14;
        ln_n_ = std::log(static_cast<double>(n_));
        q_ = 1.0 / ln_n_;
        n13_ = std::max(1, static_cast<int>(std::llround(std::pow(n_, 1.0 / 3))));
        double pn = p_ * n_;
        int box_size = std::max(1, static_cast<int>(std::llround(4 * pn)));
        minbox_ = make_minbox(n_, box_size, 0.5 * q_, 2 * b_);
        type1_credit_ = std::max(1, static_cast<int>(std::llround(2 * pn * q_)));

        for (int t = 0; t < 2; ++t) {
            wt_[t].assign(static_cast<size_t>(g.edge_count()), 0);
            for (int e = 0; e < g.edge_count(); ++e)
                wt_[t][static_cast<size_t>(e)] = edge_weight(bf, t + 1, g.edge(e), eps);
        }
        weight_.assign(static_cast<size_t>(n_), 0);
        d_B_.assign(static_cast<size_t>(n_), 0);
        wb_buffer_.assign(static_cast<size_t>(n_), 0);
        f1_.assign(static_cast<size_t>(n_), 0);
        f2_.assign(static_cast<size_t>(n_), 0);
        exposed_.assign(static_cast<size_t>(g.edge_count()), 0);
        breaker_known_.assign(static_cast<size_t>(g.edge_count()), 0);
        in_Na_.assign(static_cast<size_t>(n_), 0);
        U_.assign(static_cast<size_t>(n_), {});
        for (int v = 0; v < n_; ++v) {
            U_[static_cast<size_t>(v)] = g.neighbors(v);
            std::sort(U_[static_cast<size_t>(v)].begin(), U_[static_cast<size_t>(v)].end());
        }
        xinfo_.resize(static_cast<size_t>(n_));
        for (int x = 0; x < n_; ++x) {
            if (x == bf.a) continue;
            int t = 3 - bf.v_side[static_cast<size_t>(x)];
            XInfo& xi = xinfo_[static_cast<size_t>(x)];
            xi.t = t;
            xi.cf = compute_candidates(g, bf, x, t);
            xi.survivors = xi.cf.cand[static_cast<size_t>(bf.pattern.root())];
        }
        path_stack_ = {bf.a};
        monitors_.get("inter_sequence_bound", b_);
        monitors_.get("weight_below_ln2", ln_n_ * ln_n_);
        monitors_.get("cbox_mirror", (16 * k_ + 28) * (ln_n_ + 1));
        monitors_.get("minbox_wB", 2 * pn);
        monitors_.get("minbox_wM", 2 * pn * (1 + q_));
        monitors_.get("inactive_before_dB", eps_ * pn / 5);
        monitors_.get("f2_max", 0.5 * eps_ * pn * q_);
        monitors_.get("weight_consistency", 1e-9);
        monitors_.get("reach_availability", 0);
        monitors_.get("fallback_count", 0);
        deg_concentrated_ = degree_concentration_check(g, p_, eps_);
    }

    std::optional<Move> next_move(const BoardState& bd) {
        sync_breaker(bd);
        cur_round_ = bd.rounds_played + 1;
        if (stopped_ && !exhaust_) return std::nullopt;
        for (int guard = 0; guard < 32; ++guard) {
            if (!plan_.empty()) {
                Move m = plan_.front();
                if (m.kind == MoveKind::Claim && !bd.edge_free(m.edge)) {
                    handle_interference(bd);
                    continue;
                }
                plan_.pop_front();
                track_position(m);
                return m;
            }
            if (stopped_) {
                if (!plan_exhaust_round(bd)) return std::nullopt;
                continue;
            }
            if (!advance(bd)) {
                if (!exhaust_ || !plan_exhaust_round(bd)) return std::nullopt;
            }
        }
        return std::nullopt;
    }

    // Keep moving after the scripted sequences end (used when the goal is
    // Hamiltonicity rather than a spanning walker graph).
    void set_exhaust(bool v) { exhaust_ = v; }

    // Folds in Breaker moves made after Walker's last turn and finalizes the
    // aggregate monitor entries.
    void finalize(const BoardState& final_board) {
        sync_breaker(final_board);
        int max_f2 = 0, max_f1 = 0;
        for (int v = 0; v < n_; ++v) {
            max_f2 = std::max(max_f2, f2_[static_cast<size_t>(v)]);
            max_f1 = std::max(max_f1, f1_[static_cast<size_t>(v)]);
        }
        MonitorEntry& f2m = monitors_.get("f2_max", 0);
        f2m.worst_observed = max_f2;
        MonitorEntry& fb = monitors_.get("fallback_count", 0);
        fb.worst_observed = fallback_count_;
    }

    const MonitorReport& monitors() const { return monitors_; }
    MonitorReport& monitors() { return monitors_; }
    int fallback_count() const { return fallback_count_; }
    const std::vector<int>& h_edges() const { return h_edges_; }
    const std::vector<std::pair<int, double>>& coin_log() const { return coin_log_; }
    const std::vector<int>& star_leaves() const { return N_a_; }
    const MinBoxState& minbox() const { return minbox_; }
    int failures_type1(int v) const { return f1_[static_cast<size_t>(v)]; }
    int failures_type2(int v) const { return f2_[static_cast<size_t>(v)]; }
    double vertex_weight(int x) const { return weight_[static_cast<size_t>(x)]; }
    bool stopped() const { return stopped_; }

private:
    enum class Phase { Idle, Traverse, Return };
    enum class SeqKind { One, Two, Three };

    struct XInfo {
        int t = 1;
        CandidateFamily cf;
        std::vector<int> survivors;
        std::vector<int> seeing_breaker_edges;
    };

    // ---- Breaker bookkeeping -------------------------------------------

    void sync_breaker(const BoardState& bd) {
        if (bd.breaker_count == known_breaker_count_) return;
        for (int e = 0; e < g_->edge_count(); ++e) {
            if (breaker_known_[static_cast<size_t>(e)]) continue;
            if (bd.own[static_cast<size_t>(e)] != Owner::Breaker) continue;
            breaker_known_[static_cast<size_t>(e)] = 1;
            ++known_breaker_count_;
            ++breaker_claims_total_;
            process_breaker_edge(bd, e);
        }
    }

    void process_breaker_edge(const BoardState& bd, int e) {
        const Edge& ed = g_->edge(e);
        for (int w : {ed.u, ed.v}) {
            ++d_B_[static_cast<size_t>(w)];
            ++wb_buffer_[static_cast<size_t>(w)];
            // box activity versus Breaker degree: the box should go
            // inactive before the Breaker degree grows large
            if (minbox_.active(static_cast<size_t>(w))) {
                MonitorEntry& m = monitors_.get("inactive_before_dB", 0);
                m.worst_observed =
                    std::max(m.worst_observed, static_cast<double>(d_B_[static_cast<size_t>(w)]));
                if (d_B_[static_cast<size_t>(w)] >= m.bound && !m.violated) {
                    m.violated = true;
                    m.round_of_violation = cur_round_;
                }
            }
        }
        for (int t = 1; t <= 2; ++t) {
            double w = wt_[t - 1][static_cast<size_t>(e)];
            if (w <= 0) continue;
            breaker_weighted_[t - 1].push_back(e);
            // only vertices on the opposite side can be seen under t
            for (int x = 0; x < n_; ++x) {
                if (x == bf_->a || bf_->v_side[static_cast<size_t>(x)] != 3 - t) continue;
                if (!edge_sees(*g_, *bf_, t, e, x)) continue;
                weight_[static_cast<size_t>(x)] += w;
                XInfo& xi = xinfo_[static_cast<size_t>(x)];
                xi.seeing_breaker_edges.push_back(e);
                auto& surv = xi.survivors;
                surv.erase(std::remove_if(surv.begin(), surv.end(),
                                          [&](int v) {
                                              return edge_relevant(*g_, *bf_, t, e, v, x);
                                          }),
                           surv.end());
            }
        }
        (void)bd;
        if (breaker_claims_total_ % 64 == 0) check_weight_consistency();
    }

    void check_weight_consistency() {
        MonitorEntry& m = monitors_.get("weight_consistency", 1e-9);
        for (int rep = 0; rep < 2; ++rep) {
            int x = static_cast<int>(mon_rng_.below(static_cast<uint64_t>(n_)));
            if (x == bf_->a) continue;
            int t = xinfo_[static_cast<size_t>(x)].t;
            double recomputed = 0;
            for (int e : breaker_weighted_[t - 1])
                if (edge_sees(*g_, *bf_, t, e, x)) recomputed += wt_[t - 1][static_cast<size_t>(e)];
            double diff = std::abs(recomputed - weight_[static_cast<size_t>(x)]);
            m.worst_observed = std::max(m.worst_observed, diff);
            if (diff > m.bound && !m.violated) {
                m.violated = true;
                m.round_of_violation = cur_round_;
            }
        }
    }

    // ---- movement helpers ----------------------------------------------

    void track_position(const Move& m) {
        if (m.kind == MoveKind::Pass) return;
        pos_ = m.dest;
        if (path_stack_.size() >= 2 && path_stack_[path_stack_.size() - 2] == m.dest)
            path_stack_.pop_back();
        else
            path_stack_.push_back(m.dest);
    }

    Move step(const BoardState& bd, int from, int to) const {
        int e = g_->edge_index(from, to);
        if (e < 0) throw std::logic_error("walker strategy: missing edge on planned path");
        Owner o = bd.own[static_cast<size_t>(e)];
        if (o == Owner::Breaker)
            throw std::logic_error("walker strategy: planned edge already lost");
        return {o == Owner::Free ? MoveKind::Claim : MoveKind::Traverse, e, to};
    }

    bool available(const BoardState& bd, int u, int v) const {
        int e = g_->edge_index(u, v);
        return e >= 0 && bd.own[static_cast<size_t>(e)] != Owner::Breaker;
    }

    // Post-script play: claim a free edge at the current position, or walk
    // Walker's own edges toward the nearest vertex that still has one.
    bool plan_exhaust_round(const BoardState& bd) {
        int start = pos_ < 0 ? bf_->a : pos_;
        auto free_at = [&](int v) {
            for (int w : g_->neighbors(v))
                if (bd.edge_free(g_->edge_index(v, w))) return w;
            return -1;
        };
        if (int w = free_at(start); w >= 0) {
            plan_.push_back({MoveKind::Claim, g_->edge_index(start, w), w});
            return true;
        }
        if (pos_ < 0) return false;
        // breadth-first through Walker's own edges
        std::vector<int> prev(static_cast<size_t>(n_), -2);
        std::deque<int> q{start};
        prev[static_cast<size_t>(start)] = -1;
        int goal = -1;
        while (!q.empty() && goal < 0) {
            int v = q.front();
            q.pop_front();
            for (int w : g_->neighbors(v)) {
                int e = g_->edge_index(v, w);
                if (bd.own[static_cast<size_t>(e)] != Owner::Walker) continue;
                if (prev[static_cast<size_t>(w)] != -2) continue;
                prev[static_cast<size_t>(w)] = v;
                if (free_at(w) >= 0) {
                    goal = w;
                    break;
                }
                q.push_back(w);
            }
        }
        if (goal < 0) return false;
        std::vector<int> path;
        for (int v = goal; v != start; v = prev[static_cast<size_t>(v)]) path.push_back(v);
        for (size_t i = path.size(); i >= 1; --i) {
            int to = path[i - 1];
            int from = i == path.size() ? start : path[i];
            plan_.push_back({MoveKind::Traverse, g_->edge_index(from, to), to});
        }
        return true;
    }

    void plan_retrace() {
        // walk back along the recorded stack; all edges are Walker's own
        for (size_t i = path_stack_.size(); i >= 2; --i) {
            int from = path_stack_[i - 1];
            int to = path_stack_[i - 2];
            int e = g_->edge_index(from, to);
            plan_.push_back({MoveKind::Traverse, e, to});
        }
    }

    std::vector<int> walker_path(const BoardState& bd, int from, int to) const {
        // BFS over Walker-owned edges
        std::vector<int> prev(static_cast<size_t>(n_), -2);
        std::queue<int> bfs;
        bfs.push(from);
        prev[static_cast<size_t>(from)] = -1;
        while (!bfs.empty()) {
            int u = bfs.front();
            bfs.pop();
            if (u == to) break;
            for (int w : g_->neighbors(u)) {
                int e = g_->edge_index(u, w);
                if (bd.own[static_cast<size_t>(e)] != Owner::Walker) continue;
                if (prev[static_cast<size_t>(w)] != -2) continue;
                prev[static_cast<size_t>(w)] = u;
                bfs.push(w);
            }
        }
        std::vector<int> path;
        if (prev[static_cast<size_t>(to)] == -2) return path;
        for (int v = to; v != -1; v = prev[static_cast<size_t>(v)]) path.push_back(v);
        std::reverse(path.begin(), path.end());
        return path;
    }

    void fallback_event(const std::string& reason) {
        ++fallback_count_;
        window_dirty_ = true;
        if (policy_ == StrategyPolicy::Strict)
            throw std::runtime_error("walker strategy fallback under strict policy: " + reason);
    }

    void handle_interference(const BoardState& bd) {
        (void)bd;
        plan_.clear();
        fallback_event("planned claim intercepted");
        phase_ = Phase::Return;
    }

    // ---- sequence scheduling -------------------------------------------

    void record_sequence_event(int type) {
        // "claims between two consecutive sequences of the same type"; a
        // window containing a fallback leaves the strategy's guarantees, so
        // the claim is evaluated on clean windows only
        if (last_event_claims_[static_cast<size_t>(type)] >= 0 &&
            last_event_fallbacks_[static_cast<size_t>(type)] == fallback_count_ &&
            !window_dirty_) {
            long gap = breaker_claims_total_ - last_event_claims_[static_cast<size_t>(type)];
            MonitorEntry& m = monitors_.get("inter_sequence_bound", b_);
            m.worst_observed = std::max(m.worst_observed, static_cast<double>(gap));
            if (gap > b_ && !m.violated) {
                m.violated = true;
                m.round_of_violation = cur_round_;
            }
        }
        last_event_claims_[static_cast<size_t>(type)] = breaker_claims_total_;
        last_event_fallbacks_[static_cast<size_t>(type)] = fallback_count_;
        if (type == 0) window_dirty_ = false;
    }

    bool advance(const BoardState& bd) {
        switch (phase_) {
            case Phase::Idle:
                return plan_from_idle(bd);
            case Phase::Traverse: {
                if (pos_ == reach_target_) {
                    on_reached(bd);
                    return true;
                }
                try {
                    auto round = structure_walk(bd, bf_->pattern, embed_);
                    plan_.push_back(round[0]);
                    plan_.push_back(round[1]);
                    return true;
                } catch (const std::exception&) {
                    fallback_event("structure traversal blocked");
                    phase_ = Phase::Return;
                    return true;
                }
            }
            case Phase::Return:
                plan_retrace();
                phase_ = Phase::Idle;
                return true;
        }
        return false;
    }

    bool plan_from_idle(const BoardState& bd) {
        for (int tries = 0; tries < 6; ++tries) {
            int s = seq_ptr_;
            seq_ptr_ = (seq_ptr_ + 1) % 3;
            bool planned = s == 0   ? sequence_one(bd)
                           : s == 1 ? sequence_two(bd)
                                    : sequence_three(bd);
            if (stopped_) return false;
            if (planned) return true;
        }
        if (++idle_cycles_ > 200) stopped_ = true;
        return false;
    }

    // ---- Sequence one: the star and the auxiliary claiming game ---------

    bool sequence_one(const BoardState& bd) {
        record_sequence_event(0);
        if (static_cast<int>(N_a_.size()) >= n13_) {
            if (has_star_edge_into_candidates(bd)) return false;  // skip
            return s_paths_round(bd);
        }
        // grow the star: lowest unclaimed residual neighbour with a free edge
        int a = bf_->a;
        int pick = -1;
        for (int w : g_->neighbors(a)) {
            if (!bf_->in_R[static_cast<size_t>(w)] || in_Na_[static_cast<size_t>(w)]) continue;
            int e = g_->edge_index(a, w);
            if (!bd.edge_free(e)) continue;
            if (pick < 0 || w < pick) pick = w;
        }
        if (pick < 0) {
            fallback_event("no free star edge available");
            return false;
        }
        int e = g_->edge_index(a, pick);
        plan_.push_back({MoveKind::Claim, e, pick});
        plan_.push_back({MoveKind::Traverse, e, a});
        N_a_.push_back(pick);
        in_Na_[static_cast<size_t>(pick)] = 1;
        return true;
    }

    bool has_star_edge_into_candidates(const BoardState& bd) const {
        for (int x = 0; x < n_; ++x) {
            if (x == bf_->a || bd.in_walker_graph(x)) continue;
            for (int v : xinfo_[static_cast<size_t>(x)].survivors)
                for (int u : N_a_) {
                    int e = g_->edge_index(u, v);
                    if (e >= 0 && bd.own[static_cast<size_t>(e)] == Owner::Walker) return true;
                }
        }
        return false;
    }

    bool s_paths_round(const BoardState& bd) {
        // auxiliary game board: edges between the star leaves and the union
        // of current candidate survivor sets, one winning set per target
        std::map<int, int> local;  // edge -> aux element id
        std::vector<int> element_edge;
        std::vector<std::vector<int>> sets;
        for (int x = 0; x < n_; ++x) {
            if (x == bf_->a || bd.in_walker_graph(x)) continue;
            const auto& surv = xinfo_[static_cast<size_t>(x)].survivors;
            if (surv.empty()) continue;
            std::vector<int> set;
            for (int u : N_a_)
                for (int v : surv) {
                    int e = g_->edge_index(u, v);
                    if (e < 0) continue;
                    auto it = local.find(e);
                    int id;
                    if (it == local.end()) {
                        id = static_cast<int>(element_edge.size());
                        local[e] = id;
                        element_edge.push_back(e);
                    } else {
                        id = it->second;
                    }
                    set.push_back(id);
                }
            if (!set.empty()) sets.push_back(std::move(set));
        }
        if (sets.empty()) return false;
        std::vector<AuxOwner> state(element_edge.size(), AuxOwner::Free);
        for (size_t i = 0; i < element_edge.size(); ++i) {
            Owner o = bd.own[static_cast<size_t>(element_edge[i])];
            state[i] = o == Owner::Walker ? AuxOwner::Mine
                       : o == Owner::Breaker ? AuxOwner::Theirs
                                             : AuxOwner::Free;
        }
        int el = potential_breaker_move(state, sets, 2 * b_, 1);
        if (el < 0) {
            // a live set with no free element left breaks the substrategy's
            // guarantee; log it unless every set is already hit
            for (const auto& f : sets) {
                bool hit = false;
                for (int id : f)
                    if (state[static_cast<size_t>(id)] == AuxOwner::Mine) hit = true;
                if (!hit) {
                    fallback_event("auxiliary claiming game exhausted");
                    break;
                }
            }
            return false;
        }
        const Edge& ed = g_->edge(element_edge[static_cast<size_t>(el)]);
        int u = in_Na_[static_cast<size_t>(ed.u)] ? ed.u : ed.v;
        int y = ed.u == u ? ed.v : ed.u;
        int a = bf_->a;
        int e_au = g_->edge_index(a, u);
        int e_uy = g_->edge_index(u, y);
        plan_.push_back({MoveKind::Traverse, e_au, u});
        plan_.push_back({MoveKind::Claim, e_uy, y});
        plan_.push_back({MoveKind::Traverse, e_uy, u});
        plan_.push_back({MoveKind::Traverse, e_au, a});
        return true;
    }

    // ---- reach machinery shared by sequences two and three --------------

    bool try_structure_reach(const BoardState& bd, int x) {
        const XInfo& xi = xinfo_[static_cast<size_t>(x)];
        int a = bf_->a;
        for (int v : xi.survivors) {
            // a length-2 connection a-u-v over available edges
            int u_pick = -1;
            for (int u : g_->neighbors(a)) {
                if (u == v || u == x) continue;
                if (!available(bd, a, u)) continue;
                if (!available(bd, u, v)) continue;
                if (u_pick < 0 || u < u_pick) u_pick = u;
            }
            if (u_pick < 0) continue;
            std::vector<int> map;
            try {
                map = extract_structure(*g_, *bf_, xi.cf, v);
            } catch (const std::exception&) {
                continue;
            }
            bool all_avail = true;
            for (int e = 0; e < bf_->pattern.graph.edge_count() && all_avail; ++e) {
                const Edge& pe = bf_->pattern.graph.edge(e);
                if (!available(bd, map[static_cast<size_t>(pe.u)], map[static_cast<size_t>(pe.v)]))
                    all_avail = false;
            }
            if (!all_avail) continue;
            plan_.push_back(step(bd, a, u_pick));
            plan_.push_back(step(bd, u_pick, v));
            embed_ = std::move(map);
            reach_target_ = x;
            phase_ = Phase::Traverse;
            reach_start_own_ = bd.own;
            reach_structural_ = true;
            return true;
        }
        return false;
    }

    bool try_direct_reach(const BoardState& bd, int x) {
        // follow own edges to x, or to a vertex with a free edge into x
        if (bd.in_walker_graph(x)) {
            std::vector<int> path = walker_path(bd, pos_, x);
            if (path.empty()) return false;
            for (size_t i = 1; i < path.size(); ++i)
                plan_.push_back(step(bd, path[i - 1], path[i]));
            reach_target_ = x;
            phase_ = Phase::Traverse;
            reach_structural_ = false;
            return true;
        }
        int u_pick = -1;
        for (int u : g_->neighbors(x)) {
            if (!bd.in_walker_graph(u)) continue;
            if (!bd.edge_free(g_->edge_index(u, x))) continue;
            if (u_pick < 0 || u < u_pick) u_pick = u;
        }
        if (u_pick < 0) return false;
        std::vector<int> path = walker_path(bd, pos_, u_pick);
        if (path.empty() && pos_ != u_pick) return false;
        for (size_t i = 1; i < path.size(); ++i)
            plan_.push_back(step(bd, path[i - 1], path[i]));
        plan_.push_back({MoveKind::Claim, g_->edge_index(u_pick, x), x});
        reach_target_ = x;
        phase_ = Phase::Traverse;
        reach_structural_ = false;
        return true;
    }

    void on_reached(const BoardState& bd) {
        if (reach_structural_) {
            // every edge of the walk must have been available when the
            // sequence began
            MonitorEntry& m = monitors_.get("reach_availability", 0);
            for (size_t i = 1; i < path_stack_.size(); ++i) {
                int e = g_->edge_index(path_stack_[i - 1], path_stack_[i]);
                if (reach_start_own_[static_cast<size_t>(e)] == Owner::Breaker) {
                    m.violated = true;
                    m.round_of_violation = cur_round_;
                    m.worst_observed += 1;
                }
            }
        }
        if (seq_kind_ == SeqKind::Three) run_exposure(bd);
        phase_ = Phase::Return;
    }

    // ---- Sequence two: include the heaviest unreached vertex ------------

    bool sequence_two(const BoardState& bd) {
        record_sequence_event(1);
        seq_kind_ = SeqKind::Two;
        if (bd.walker_vertex_count >= n_) return false;  // spanning already
        if (pos_ < 0) return bootstrap_first_move(bd);
        int x = -1;
        double best = -1;
        for (int v = 0; v < n_; ++v) {
            if (v == bf_->a || bd.in_walker_graph(v)) continue;
            if (weight_[static_cast<size_t>(v)] > best) {
                best = weight_[static_cast<size_t>(v)];
                x = v;
            }
        }
        if (x < 0) return false;
        // the internal continuous-box mirror destroys the chosen box now;
        // surviving boxes are the still-unreached vertices
        MonitorEntry& cb = monitors_.get("cbox_mirror", 0);
        for (int v = 0; v < n_; ++v) {
            if (v == bf_->a || bd.in_walker_graph(v) || v == x) continue;
            cb.worst_observed = std::max(cb.worst_observed, weight_[static_cast<size_t>(v)]);
            if (weight_[static_cast<size_t>(v)] > cb.bound && !cb.violated) {
                cb.violated = true;
                cb.round_of_violation = cur_round_;
            }
        }
        MonitorEntry& wm = monitors_.get("weight_below_ln2", ln_n_ * ln_n_);
        if (best > wm.worst_observed) wm.worst_observed = best;
        if (best >= wm.bound && !wm.violated) {
            wm.violated = true;
            wm.round_of_violation = cur_round_;
        }
        if (try_structure_reach(bd, x)) return true;
        fallback_event("no available structure for the selected target");
        // greedy fallback: claim into any unreached vertex adjacent to the
        // walker graph, preferring the selected target
        if (try_direct_reach(bd, x)) return true;
        for (int w = 0; w < n_; ++w) {
            if (w == bf_->a || bd.in_walker_graph(w)) continue;
            if (try_direct_reach(bd, w)) return true;
        }
        if (++stall_count_ > 50) stopped_ = true;
        return false;
    }

    bool bootstrap_first_move(const BoardState& bd) {
        // walker not placed yet and the star could not start: claim any
        // free edge at a
        int a = bf_->a;
        for (int w : g_->neighbors(a)) {
            int e = g_->edge_index(a, w);
            if (!bd.edge_free(e)) continue;
            plan_.push_back({MoveKind::Claim, e, w});
            plan_.push_back({MoveKind::Traverse, e, a});
            return true;
        }
        stopped_ = true;
        return false;
    }

    // ---- Sequence three: the exposure process ----------------------------

    bool sequence_three(const BoardState& bd) {
        record_sequence_event(2);
        seq_kind_ = SeqKind::Three;
        if (exposed_count_ >= g_->edge_count()) {
            stopped_ = true;
            return false;
        }
        // apply the buffered Breaker claims to the simulated box game
        for (int v = 0; v < n_; ++v) {
            if (wb_buffer_[static_cast<size_t>(v)] == 0) continue;
            add_wB(v, wb_buffer_[static_cast<size_t>(v)]);
            wb_buffer_[static_cast<size_t>(v)] = 0;
        }
        int x = minbox_maker_move(minbox_);
        if (x < 0) {
            // no free active box: toss the coin on everything left and stop
            for (int e = 0; e < g_->edge_count(); ++e) {
                if (exposed_[static_cast<size_t>(e)]) continue;
                mark_exposed(e);
                double draw = rng_.uniform();
                coin_log_.push_back({e, draw});
                if (draw < q_) {
                    h_edges_.push_back(e);
                    ++f2_[static_cast<size_t>(g_->edge(e).u)];
                    ++f2_[static_cast<size_t>(g_->edge(e).v)];
                }
            }
            stopped_ = true;
            return false;
        }
        add_wM(x, 1);
        note_minbox_monitors(x);
        if (x == pos_) {
            run_exposure(bd);
            phase_ = Phase::Return;
            return true;
        }
        if (x != bf_->a && try_structure_reach(bd, x)) return true;
        fallback_event("no available structure for the exposure vertex");
        if (try_direct_reach(bd, x)) return true;
        // unreachable this round; the box bookkeeping stays as charged
        return false;
    }

    void note_minbox_monitors(int x) {
        if (!deg_concentrated_) return;
        MonitorEntry& mb = monitors_.get("minbox_wB", 0);
        MonitorEntry& mm = monitors_.get("minbox_wM", 0);
        for (int v = 0; v < n_; ++v) {
            double wB = minbox_.boxes[static_cast<size_t>(v)].w_B;
            double wM = minbox_.boxes[static_cast<size_t>(v)].w_M;
            if (wB > mb.worst_observed) mb.worst_observed = wB;
            if (wM > mm.worst_observed) mm.worst_observed = wM;
            if (wB >= mb.bound && !mb.violated) {
                mb.violated = true;
                mb.round_of_violation = cur_round_;
            }
            if (wM >= mm.bound && !mm.violated) {
                mm.violated = true;
                mm.round_of_violation = cur_round_;
            }
        }
        (void)x;
    }

    void add_wB(int v, int amount) {
        MinBoxBox& box = minbox_.boxes[static_cast<size_t>(v)];
        int room = box.size - box.w_M - box.w_B;
        box.w_B += std::max(0, std::min(amount, room));
    }
    void add_wM(int v, int amount) {
        MinBoxBox& box = minbox_.boxes[static_cast<size_t>(v)];
        int room = box.size - box.w_M - box.w_B;
        box.w_M += std::max(0, std::min(amount, room));
    }

    void mark_exposed(int e) {
        if (exposed_[static_cast<size_t>(e)]) return;
        exposed_[static_cast<size_t>(e)] = 1;
        ++exposed_count_;
        const Edge& ed = g_->edge(e);
        remove_from_U(ed.u, ed.v);
        remove_from_U(ed.v, ed.u);
    }

    void remove_from_U(int v, int w) {
        auto& u = U_[static_cast<size_t>(v)];
        auto it = std::find(u.begin(), u.end(), w);
        if (it != u.end()) u.erase(it);
    }

    void plan_filler_round(const BoardState& bd, int x) {
        // an arbitrary move ending at x: traverse an own edge and back
        for (int w : g_->neighbors(x)) {
            int e = g_->edge_index(x, w);
            if (bd.own[static_cast<size_t>(e)] != Owner::Walker) continue;
            plan_.push_back({MoveKind::Traverse, e, w});
            plan_.push_back({MoveKind::Traverse, e, x});
            return;
        }
    }

    void run_exposure(const BoardState& bd) {
        int x = pos_;
        std::vector<int> pi = U_[static_cast<size_t>(x)];
        rng_.shuffle(pi);
        int success_at = -1;
        for (size_t i = 0; i < pi.size(); ++i) {
            int e = g_->edge_index(x, pi[i]);
            double draw = rng_.uniform();
            coin_log_.push_back({e, draw});
            mark_exposed(e);
            if (draw < q_) {
                success_at = static_cast<int>(i);
                break;
            }
        }
        if (success_at < 0) {
            // failure of the first kind: every toss missed (or nothing was
            // left to toss); the box gets a bulk credit and goes inactive
            ++f1_[static_cast<size_t>(x)];
            add_wM(x, type1_credit_);
            for (int w : std::vector<int>(U_[static_cast<size_t>(x)]))
                mark_exposed(g_->edge_index(x, w));
            plan_filler_round(bd, x);
            return;
        }
        int mate = pi[static_cast<size_t>(success_at)];
        int e = g_->edge_index(x, mate);
        h_edges_.push_back(e);
        add_wM(mate, 1);
        Owner o = bd.own[static_cast<size_t>(e)];
        if (o == Owner::Breaker) {
            // failure of the second kind: the revealed edge is already lost
            ++f2_[static_cast<size_t>(x)];
            ++f2_[static_cast<size_t>(mate)];
            plan_filler_round(bd, x);
            return;
        }
        plan_.push_back({o == Owner::Free ? MoveKind::Claim : MoveKind::Traverse, e, mate});
        plan_.push_back({MoveKind::Traverse, e, x});
    }

    // ---- members ---------------------------------------------------------

    const Graph* g_;
    const BlockFamily* bf_;
    double eps_, p_;
    StrategyPolicy policy_;
    Rng rng_, mon_rng_;

    int n_ = 0, k_ = 0, b_ = 0, n13_ = 0;
    double ln_n_ = 0, q_ = 0;
    int type1_credit_ = 1;
    bool deg_concentrated_ = false;

    std::array<std::vector<double>, 2> wt_;
    std::array<std::vector<int>, 2> breaker_weighted_;
    std::vector<double> weight_;
    std::vector<int> d_B_, wb_buffer_, f1_, f2_;
    std::vector<char> exposed_, breaker_known_, in_Na_;
    std::vector<std::vector<int>> U_;
    std::vector<XInfo> xinfo_;
    std::vector<int> N_a_;
    MinBoxState minbox_;

    std::deque<Move> plan_;
    std::vector<int> path_stack_;
    std::vector<int> embed_;
    std::vector<Owner> reach_start_own_;
    Phase phase_ = Phase::Idle;
    SeqKind seq_kind_ = SeqKind::One;
    int seq_ptr_ = 0;
    int pos_ = -1;
    int reach_target_ = -1;
    bool reach_structural_ = false;
    bool stopped_ = false;
    bool exhaust_ = false;
    int stall_count_ = 0;
    int idle_cycles_ = 0;

    int known_breaker_count_ = 0;
    long breaker_claims_total_ = 0;
    long cur_round_ = 0;
    int exposed_count_ = 0;
    int fallback_count_ = 0;
    bool window_dirty_ = false;
    std::array<long, 3> last_event_claims_{-1, -1, -1};
    std::array<int, 3> last_event_fallbacks_{0, 0, 0};

    std::vector<int> h_edges_;
    std::vector<std::pair<int, double>> coin_log_;

    MonitorReport monitors_;
};

// ---- baseline Breaker heuristics ----------------------------------------

inline Strategy breaker_random() {
    return [](const BoardState& bd, Rng& rng) -> std::optional<Move> {
        std::vector<int> free;
        for (int e = 0; e < bd.g->edge_count(); ++e)
            if (bd.edge_free(e)) free.push_back(e);
        if (free.empty()) return std::nullopt;
        return Move{MoveKind::Claim, free[rng.below(free.size())], -1};
    };
}

inline Strategy breaker_passing() {
    return [](const BoardState&, Rng&) -> std::optional<Move> { return std::nullopt; };
}

// Claims the free edge whose endpoints carry the largest Walker degrees.
inline Strategy breaker_walker_frontier() {
    return [](const BoardState& bd, Rng& rng) -> std::optional<Move> {
        int best = -1, best_score = -1;
        for (int e = 0; e < bd.g->edge_count(); ++e) {
            if (!bd.edge_free(e)) continue;
            const Edge& ed = bd.g->edge(e);
            int score = bd.walker_deg[static_cast<size_t>(ed.u)] +
                        bd.walker_deg[static_cast<size_t>(ed.v)];
            if (score > best_score) {
                best_score = score;
                best = e;
            }
        }
        if (best < 0) return std::nullopt;
        if (best_score == 0) {
            std::vector<int> free;
            for (int e = 0; e < bd.g->edge_count(); ++e)
                if (bd.edge_free(e)) free.push_back(e);
            return Move{MoveKind::Claim, free[rng.below(free.size())], -1};
        }
        return Move{MoveKind::Claim, best, -1};
    };
}

// Attacks the star: free edges at the given center first.
inline Strategy breaker_star_cutter(int center) {
    return [center](const BoardState& bd, Rng& rng) -> std::optional<Move> {
        for (int w : bd.g->neighbors(center)) {
            int e = bd.g->edge_index(center, w);
            if (bd.edge_free(e)) return Move{MoveKind::Claim, e, -1};
        }
        std::vector<int> free;
        for (int e = 0; e < bd.g->edge_count(); ++e)
            if (bd.edge_free(e)) free.push_back(e);
        if (free.empty()) return std::nullopt;
        return Move{MoveKind::Claim, free[rng.below(free.size())], -1};
    };
}

// Attacks the structures: claims free edges in descending static weight.
inline Strategy breaker_structure_hunter(const Graph& g, const BlockFamily& bf,
                                         double eps) {
    auto order = std::make_shared<std::vector<int>>();
    std::vector<double> w(static_cast<size_t>(g.edge_count()), 0);
    for (int e = 0; e < g.edge_count(); ++e)
        w[static_cast<size_t>(e)] =
            edge_weight(bf, 1, g.edge(e), eps) + edge_weight(bf, 2, g.edge(e), eps);
    for (int e = 0; e < g.edge_count(); ++e) order->push_back(e);
    std::stable_sort(order->begin(), order->end(),
                     [&w](int a, int b) { return w[static_cast<size_t>(a)] > w[static_cast<size_t>(b)]; });
    return [order](const BoardState& bd, Rng&) -> std::optional<Move> {
        for (int e : *order)
            if (bd.edge_free(e)) return Move{MoveKind::Claim, e, -1};
        return std::nullopt;
    };
}

inline std::vector<std::pair<std::string, Strategy>> baseline_breakers(
    const Graph& g, const BlockFamily& bf, double eps) {
    return {{"random", breaker_random()},
            {"frontier", breaker_walker_frontier()},
            {"starcut", breaker_star_cutter(bf.a)},
            {"hunter", breaker_structure_hunter(g, bf, eps)}};
}

// ---- full-run driver -------------------------------------------------------

struct FullRunResult {
    Transcript transcript;
    MonitorReport monitors;
    bool spanned = false;
    int fallbacks = 0;
    std::vector<int> h_edges;
    std::vector<std::pair<int, double>> coin_log;
    int max_f2 = 0;
};

inline FullRunResult run_full_strategy(const Graph& g, const BlockFamily& bf, double eps,
                                       double p, uint64_t seed, Strategy breaker,
                                       StrategyPolicy policy = StrategyPolicy::Fallback,
                                       WinCondition win = WinCondition::spanning()) {
    GameDef def;
    def.variant = Variant::WalkerBreaker;
    def.maker_bias = 2;
    def.breaker_bias = 2;
    def.first_player = PlayerSide::Breaker;
    def.win = std::move(win);
    auto st = std::make_shared<WalkerFullStrategy>(g, bf, eps, p, seed, policy);
    if (def.win.kind == WinCondition::Kind::Hamiltonicity) st->set_exhaust(true);
    Strategy maker = [st](const BoardState& bd, Rng&) { return st->next_move(bd); };
    FullRunResult out;
    out.transcript = play_game(def, g, maker, breaker, split_seed(seed, 1));
    st->finalize(out.transcript.final_state);
    out.monitors = st->monitors();
    out.spanned = out.transcript.winner == PlayerSide::Maker;
    out.fallbacks = st->fallback_count();
    out.h_edges = st->h_edges();
    out.coin_log = st->coin_log();
    for (int v = 0; v < g.vertex_count(); ++v)
        out.max_f2 = std::max(out.max_f2, st->failures_type2(v));
    return out;
}

}  // namespace wbg
