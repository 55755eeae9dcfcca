#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wbg/engine.hpp"
#include "wbg/graph.hpp"
#include "wbg/solver.hpp"

using namespace wbg;

namespace {

GameDef def_of(Variant v, int m, int b, WinCondition win, PlayerSide first) {
    GameDef d;
    d.variant = v;
    d.maker_bias = m;
    d.breaker_bias = b;
    d.first_player = first;
    d.win = win;
    return d;
}

Graph graph_from_mask(int n, uint64_t mask) {
    std::vector<std::pair<int, int>> es;
    int bit = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++bit)
            if (mask >> bit & 1) es.emplace_back(u, v);
    return Graph(n, std::move(es));
}

// Star board standing in for a hypergraph: element i = edge (0, i+1).
Graph star_board(int elements) {
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < elements; ++i) es.emplace_back(0, i + 1);
    return Graph(elements + 1, std::move(es));
}

}  // namespace

TEST_CASE("single winning set of three disjoint elements is a breaker win") {
    Graph g = star_board(3);
    GameDef def = def_of(Variant::MakerBreaker, 1, 1,
                         WinCondition::claim_sets({{0, 1, 2}}), PlayerSide::Breaker);
    SolveResult r = solve(def, g, initial_state(g, def));
    CHECK(r.winner == PlayerSide::Breaker);
    CHECK(r.optimal_move.has_value());
}

TEST_CASE("overlapping pairs: first player decides the shared element") {
    // winning sets {0,1} and {0,2}: Maker first takes 0, Breaker blocks only
    // one of 1/2; Breaker first takes 0 and both sets die.
    Graph g = star_board(3);
    GameDef mk = def_of(Variant::MakerBreaker, 1, 1,
                        WinCondition::claim_sets({{0, 1}, {0, 2}}), PlayerSide::Maker);
    SolveResult r = solve(mk, g, initial_state(g, mk));
    CHECK(r.winner == PlayerSide::Maker);
    REQUIRE(r.optimal_move.has_value());
    CHECK(r.optimal_move->edge == 0);
    GameDef bk = def_of(Variant::MakerBreaker, 1, 1,
                        WinCondition::claim_sets({{0, 1}, {0, 2}}), PlayerSide::Breaker);
    SolveResult r2 = solve(bk, g, initial_state(g, bk));
    CHECK(r2.winner == PlayerSide::Breaker);
    REQUIRE(r2.optimal_move.has_value());
    CHECK(r2.optimal_move->edge == 0);
    // two disjoint pairs fall to Breaker's pairing even if Maker starts
    Graph g4 = star_board(4);
    GameDef dj = def_of(Variant::MakerBreaker, 1, 1,
                        WinCondition::claim_sets({{0, 1}, {2, 3}}), PlayerSide::Maker);
    CHECK(solve(dj, g4, initial_state(g4, dj)).winner == PlayerSide::Breaker);
}

TEST_CASE("connector wins connectivity on H_4 but breaker wins on C_4") {
    GameDef def = def_of(Variant::ConnectorBreaker, 1, 1, WinCondition::connectivity(),
                         PlayerSide::Maker);
    Graph h4 = build_hn(4);
    CHECK(solve(def, h4, initial_state(h4, def)).winner == PlayerSide::Maker);
    Graph c4 = cycle_graph(4);
    CHECK(solve(def, c4, initial_state(c4, def)).winner == PlayerSide::Breaker);
}

TEST_CASE("1:2 connector-breaker on K4 is a breaker win") {
    GameDef def = def_of(Variant::ConnectorBreaker, 1, 2, WinCondition::connectivity(),
                         PlayerSide::Maker);
    Graph k4 = complete_graph(4);
    CHECK(solve(def, k4, initial_state(k4, def)).winner == PlayerSide::Breaker);
}

TEST_CASE("reach vertex across a path with rounds_to_win") {
    Graph g = path_graph(4);
    // Unplaced Walker enters anywhere: she claims (2,3) at once, 1 round.
    GameDef def = def_of(Variant::WalkerBreaker, 2, 1, WinCondition::reach(3),
                         PlayerSide::Maker);
    SolveResult r = solve(def, g, initial_state(g, def));
    CHECK(r.winner == PlayerSide::Maker);
    REQUIRE(r.rounds_to_win.has_value());
    CHECK(*r.rounds_to_win == 1);
    // Pinned to vertex 0 she claims 2 edges per round but Breaker blocks the
    // unique last edge before she gets there.
    BoardState pinned = initial_state(g, def);
    pinned.walker_pos = 0;
    CHECK(solve(def, g, pinned).winner == PlayerSide::Breaker);
    // Three disjoint length-2 paths from 0 to 4: Breaker first at bias 2 can
    // ruin at most two of them, Walker crosses the third in one round.
    Graph tri(5, {{0, 1}, {1, 4}, {0, 2}, {2, 4}, {0, 3}, {3, 4}});
    GameDef d22 = def_of(Variant::WalkerBreaker, 2, 2, WinCondition::reach(4),
                         PlayerSide::Breaker);
    BoardState at0 = initial_state(tri, d22);
    at0.walker_pos = 0;
    SolveResult r3 = solve(d22, tri, at0);
    CHECK(r3.winner == PlayerSide::Maker);
    REQUIRE(r3.rounds_to_win.has_value());
    CHECK(*r3.rounds_to_win == 1);
}

TEST_CASE("memoization soundness on random small boards") {
    Rng rng(909);
    for (int t = 0; t < 200; ++t) {
        int n = 4 + static_cast<int>(rng.below(3));
        Graph g = sample_gnp(n, 0.55, rng.next());
        if (g.edge_count() > 12 || g.edge_count() == 0) continue;
        // random claim-sets win condition
        std::vector<std::vector<int>> sets;
        int nsets = 1 + static_cast<int>(rng.below(3));
        for (int i = 0; i < nsets; ++i) {
            std::vector<int> set;
            for (int e = 0; e < g.edge_count(); ++e)
                if (rng.bernoulli(0.4)) set.push_back(e);
            if (!set.empty()) sets.push_back(set);
        }
        if (sets.empty()) sets.push_back({0});
        PlayerSide first = rng.bernoulli(0.5) ? PlayerSide::Maker : PlayerSide::Breaker;
        GameDef def = def_of(Variant::MakerBreaker, 1, 1,
                             WinCondition::claim_sets(sets), first);
        BoardState init = initial_state(g, def);
        SolveResult with = solve(def, g, init, 26, true);
        SolveResult without = solve(def, g, init, 26, false);
        CHECK(with.winner == without.winner);
    }
}

TEST_CASE("an extra pre-claimed maker edge never flips a maker win to a loss") {
    Rng rng(311);
    int tried = 0;
    for (int t = 0; tried < 50 && t < 400; ++t) {
        int n = 4 + static_cast<int>(rng.below(2));
        Graph g = sample_gnp(n, 0.5, rng.next());
        if (g.edge_count() > 10 || g.edge_count() < 3) continue;
        std::vector<std::vector<int>> sets;
        for (int i = 0; i < 2; ++i) {
            std::vector<int> set;
            for (int e = 0; e < g.edge_count(); ++e)
                if (rng.bernoulli(0.5)) set.push_back(e);
            if (!set.empty()) sets.push_back(set);
        }
        if (sets.empty()) continue;
        ++tried;
        GameDef def = def_of(Variant::MakerBreaker, 1, 1,
                             WinCondition::claim_sets(sets), PlayerSide::Maker);
        BoardState init = initial_state(g, def);
        if (solve(def, g, init).winner != PlayerSide::Maker) continue;
        int extra = static_cast<int>(rng.below(g.edge_count()));
        BoardState boosted = init;
        boosted.own[static_cast<size_t>(extra)] = Owner::Walker;
        --boosted.free_count;
        ++boosted.walker_count;
        CHECK(solve(def, g, boosted).winner == PlayerSide::Maker);
    }
    CHECK(tried >= 40);
}

TEST_CASE("verify_strategy_against_all_breakers flags a broken strategy") {
    // Maker needs both edges of the pair {0,1} on a 3-edge star, moving first
    // with bias 2; always-claim-lowest works, always-claim-highest fails.
    Graph g = star_board(3);
    GameDef def = def_of(Variant::MakerBreaker, 2, 1,
                         WinCondition::claim_sets({{0, 1}}), PlayerSide::Maker);
    auto lowest = [](const BoardState& s) -> std::optional<Move> {
        for (size_t e = 0; e < s.own.size(); ++e)
            if (s.own[e] == Owner::Free) return Move{MoveKind::Claim, static_cast<int>(e), -1};
        return std::nullopt;
    };
    auto highest = [](const BoardState& s) -> std::optional<Move> {
        for (int e = static_cast<int>(s.own.size()) - 1; e >= 0; --e)
            if (s.own[static_cast<size_t>(e)] == Owner::Free)
                return Move{MoveKind::Claim, e, -1};
        return std::nullopt;
    };
    VerifyResult ok = verify_strategy_against_all_breakers(def, g, initial_state(g, def),
                                                           lowest, 1);
    CHECK(ok.ok);
    VerifyResult bad = verify_strategy_against_all_breakers(def, g, initial_state(g, def),
                                                            highest, 2);
    CHECK(!bad.ok);
    CHECK(!bad.witness.empty());
}

TEST_CASE("every 4-vertex graph: connector wins iff H_4 subgraph") {
    GameDef def = def_of(Variant::ConnectorBreaker, 1, 1, WinCondition::connectivity(),
                         PlayerSide::Maker);
    Graph h4 = build_hn(4);
    for (uint64_t mask = 0; mask < 64; ++mask) {
        Graph g = graph_from_mask(4, mask);
        bool has = contains_subgraph(g, h4);
        bool wins = solve(def, g, initial_state(g, def)).winner == PlayerSide::Maker;
        CHECK(wins == has);
    }
}

TEST_CASE("edge limit guard") {
    Graph g = complete_graph(8);  // 28 edges
    GameDef def = def_of(Variant::MakerBreaker, 1, 1, WinCondition::claim_sets({{0}}),
                         PlayerSide::Maker);
    CHECK_THROWS(solve(def, g, initial_state(g, def)));
}
