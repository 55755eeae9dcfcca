#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "wbg/solver.hpp"
#include "wbg/structure.hpp"

using namespace wbg;

namespace {

GameDef walk_def(int k_unused, int sink_vertex) {
    (void)k_unused;
    GameDef d;
    d.variant = Variant::WalkerBreaker;
    d.maker_bias = 2;
    d.breaker_bias = 2;
    d.first_player = PlayerSide::Breaker;
    d.win = WinCondition::reach(sink_vertex);
    return d;
}

}  // namespace

TEST_CASE("size formulas for k = 1..6") {
    for (int k = 1; k <= 6; ++k) {
        SkStructure s = build_structure(k);
        CHECK(s.graph.vertex_count() == 2 * pow3(k) - 1);
        CHECK(s.graph.edge_count() == pow3(k + 1) - 3);
        CHECK(leaves_without_sink(s) == pow3(k));
    }
    CHECK_THROWS(build_structure(0));
}

TEST_CASE("degree audit per level") {
    for (int k = 1; k <= 4; ++k) {
        SkStructure s = build_structure(k);
        // every main vertex: 3 lower neighbours, plus 1 upper unless root
        for (int l = 1; l <= k; ++l) {
            int width = pow3(k - l);
            for (int i = 1; i <= width; ++i) {
                int v = s.main_id(l, i);
                CHECK(s.graph.degree(v) == (l == k ? 3 : 4));
                int lower = 0;
                for (int j = 3 * i - 2; j <= 3 * i; ++j)
                    if (s.graph.adjacent(v, s.sec_id(l - 1, j))) ++lower;
                CHECK(lower == 3);
            }
        }
        // every secondary vertex: exactly degree 2 (one up, one down)
        for (int l = 0; l <= k - 1; ++l) {
            int width = pow3(k - l);
            for (int i = 1; i <= width; ++i) {
                int v = s.sec_id(l, i);
                CHECK(s.graph.degree(v) == 2);
                int down = l >= 1 ? s.main_id(l, i) : s.sink;
                CHECK(s.graph.adjacent(v, down));
            }
        }
        CHECK(s.graph.degree(s.sink) == pow3(k));
    }
}

TEST_CASE("walk takes the third path when two are blocked (k=1)") {
    SkStructure s = build_structure(1);
    GameDef def = walk_def(1, s.sink);
    BoardState b = initial_state(s.graph, def);
    b.walker_pos = s.root();
    // Breaker blocks the paths via s*_{0,1} and s*_{0,2}
    apply_move(b, def, {MoveKind::Claim, s.graph.edge_index(s.root(), s.sec_id(0, 1)), -1});
    apply_move(b, def, {MoveKind::Claim, s.graph.edge_index(s.sec_id(0, 2), s.sink), -1});
    auto embed = identity_embedding(s);
    auto round = structure_walk(b, s, embed);
    CHECK(round[0].edge == s.graph.edge_index(s.root(), s.sec_id(0, 3)));
    CHECK(round[1].edge == s.graph.edge_index(s.sec_id(0, 3), s.sink));
    apply_move(b, def, round[0]);
    apply_move(b, def, round[1]);
    CHECK(b.walker_pos == s.sink);
}

TEST_CASE("walk avoids a branch whose sub-copy is hit (k=2)") {
    SkStructure s = build_structure(2);
    GameDef def = walk_def(2, s.sink);
    BoardState b = initial_state(s.graph, def);
    b.walker_pos = s.root();
    // Breaker's two claims inside the sub-structure under s_{1,1}
    apply_move(b, def, {MoveKind::Claim, s.graph.edge_index(s.main_id(1, 1), s.sec_id(0, 1)), -1});
    apply_move(b, def, {MoveKind::Claim, s.graph.edge_index(s.main_id(1, 1), s.sec_id(0, 2)), -1});
    auto embed = identity_embedding(s);
    auto round = structure_walk(b, s, embed);
    // branch 1's sub-copy is blocked, branch 2 is clean
    CHECK(round[0].edge == s.graph.edge_index(s.root(), s.sec_id(1, 2)));
}

TEST_CASE("no qualifying branch reports all three diagnoses") {
    SkStructure s = build_structure(1);
    GameDef def = walk_def(1, s.sink);
    def.breaker_bias = 3;
    BoardState b = initial_state(s.graph, def);
    b.walker_pos = s.root();
    for (int j = 1; j <= 3; ++j)
        apply_move(b, def,
                   {MoveKind::Claim, s.graph.edge_index(s.root(), s.sec_id(0, j)), -1});
    auto embed = identity_embedding(s);
    CHECK_THROWS_WITH_AS(structure_walk(b, s, embed),
                         doctest::Contains("branch 3"), std::runtime_error);
}

TEST_CASE("traversal beats every breaker line for k = 1") {
    SkStructure s = build_structure(1);
    GameDef def = walk_def(1, s.sink);
    BoardState init = initial_state(s.graph, def);
    init.walker_pos = s.root();
    auto embed = identity_embedding(s);
    auto maker = [&](const BoardState& b) -> std::optional<Move> {
        return structure_walk_unit_move(b, s, embed);
    };
    VerifyResult r = verify_strategy_against_all_breakers(def, s.graph, init, maker, 1);
    CHECK(r.ok);
}

TEST_CASE("solver confirms the k=1 reach game and 1-round horizon") {
    SkStructure s = build_structure(1);
    GameDef def = walk_def(1, s.sink);
    BoardState init = initial_state(s.graph, def);
    init.walker_pos = s.root();
    SolveResult r = solve(def, s.graph, init);
    CHECK(r.winner == PlayerSide::Maker);
    REQUIRE(r.rounds_to_win.has_value());
    CHECK(*r.rounds_to_win == 1);
}

TEST_CASE("a deliberately broken strategy fails verification with a witness") {
    SkStructure s = build_structure(1);
    GameDef def = walk_def(1, s.sink);
    BoardState init = initial_state(s.graph, def);
    init.walker_pos = s.root();
    // always walk the first branch regardless of Breaker
    auto stubborn = [&](const BoardState& b) -> std::optional<Move> {
        int pos = b.walker_pos;
        for (int w : b.g->neighbors(pos)) {
            int e = b.g->edge_index(pos, w);
            if (b.own[static_cast<size_t>(e)] != Owner::Breaker)
                return Move{b.own[static_cast<size_t>(e)] == Owner::Free
                                ? MoveKind::Claim
                                : MoveKind::Traverse,
                            e, w};
        }
        return std::nullopt;
    };
    VerifyResult r = verify_strategy_against_all_breakers(def, s.graph, init, stubborn, 1);
    CHECK(!r.ok);
    CHECK(!r.witness.empty());
}

TEST_CASE("label dump format") {
    SkStructure s = build_structure(1);
    std::ostringstream os;
    write_label_dump(os, s);
    std::istringstream is(os.str());
    int lines = 0, level, index, vertex;
    std::string kind;
    bool saw_sink = false;
    while (is >> level >> index >> kind >> vertex) {
        ++lines;
        if (kind == "sink") {
            saw_sink = true;
            CHECK(vertex == s.sink);
        }
    }
    CHECK(lines == s.graph.vertex_count());
    CHECK(saw_sink);
}
