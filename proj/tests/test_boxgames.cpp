#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "wbg/boxgames.hpp"

using namespace wbg;

TEST_CASE("cbreaker strategy picks the heaviest surviving box") {
    CBoxState s = make_cbox({1, 1, 1}, 1);
    s.boxes[0].claimed = 0.5;
    s.boxes[1].claimed = 0.2;
    s.boxes[2].claimed = 0.9;
    CHECK(cbreaker_strategy_S(s) == 2);
    s.boxes[2].destroyed = true;
    CHECK(cbreaker_strategy_S(s) == 0);
    CBoxState tie = make_cbox({1, 1}, 1);
    tie.boxes[0].claimed = tie.boxes[1].claimed = 0.7;
    CHECK(cbreaker_strategy_S(tie) == 0);
    CBoxState zero = make_cbox({1, 1, 1}, 1);
    CHECK(cbreaker_strategy_S(zero) == 0);
}

TEST_CASE("single box: greedy cmaker never exceeds the bound") {
    CMakerStrategy greedy = [](const CBoxState& s, Rng&) {
        std::vector<std::pair<int, double>> out;
        for (size_t i = 0; i < s.boxes.size(); ++i)
            if (!s.boxes[i].destroyed && !s.boxes[i].won) {
                out.emplace_back(static_cast<int>(i), s.bias);
                break;
            }
        return out;
    };
    CBoxResult r = simulate_cbox({5.0}, 1.0, greedy);
    CHECK(!r.bound_violated);
    CHECK(r.worst_surviving <= 1.0 + kBoxBudgetTol);  // b(ln 1 + 1) = 1
}

TEST_CASE("two boxes, bias 2, cmaker dumps into box 0") {
    CMakerStrategy dump = [](const CBoxState& s, Rng&) {
        std::vector<std::pair<int, double>> out;
        if (!s.boxes[0].destroyed && !s.boxes[0].won) out.emplace_back(0, s.bias);
        return out;
    };
    CBoxResult r = simulate_cbox({10.0, 10.0}, 2.0, dump);
    CHECK(!r.bound_violated);
    REQUIRE(!r.trace.empty());
    CHECK(r.trace[0].destroyed_box == 0);
    CHECK(r.worst_surviving <= 2 * (std::log(2.0) + 1) + kBoxBudgetTol);
}

TEST_CASE("budget violations abort") {
    CMakerStrategy cheat = [](const CBoxState& s, Rng&) {
        std::vector<std::pair<int, double>> out{{0, s.bias + 1.0}};
        return out;
    };
    CHECK_THROWS(simulate_cbox({10.0, 10.0}, 1.0, cheat));
}

TEST_CASE("exhaustive grid cmaker on up to three boxes never beats the bound") {
    // all splits of the budget in steps of 0.25 across surviving boxes,
    // explored exhaustively via a recursive driver per round
    for (int n = 1; n <= 3; ++n) {
        const double b = 1.0;
        const double bound = b * (std::log(static_cast<double>(n)) + 1.0);
        const int units = 4;  // b / 0.25
        std::vector<double> weights(static_cast<size_t>(n), 100.0);

        // enumerate per-round allocations recursively over rounds
        std::function<void(CBoxState&)> run = [&](CBoxState& s) {
            bool done = true;
            for (const CBoxBox& box : s.boxes)
                if (!box.destroyed && !box.won) done = false;
            if (done) return;
            // enumerate all ways to distribute 'units' quarters over boxes
            std::vector<int> alloc(static_cast<size_t>(n), 0);
            std::function<void(int, int)> spread = [&](int idx, int left) {
                if (idx == n) {
                    CBoxState next = s;
                    for (int i = 0; i < n; ++i) {
                        if (alloc[static_cast<size_t>(i)] == 0) continue;
                        CBoxBox& box = next.boxes[static_cast<size_t>(i)];
                        if (box.destroyed) return;  // illegal split, skip
                        box.claimed += 0.25 * alloc[static_cast<size_t>(i)];
                    }
                    int destroyed = cbreaker_strategy_S(next);
                    next.boxes[static_cast<size_t>(destroyed)].destroyed = true;
                    for (const CBoxBox& box : next.boxes)
                        if (!box.destroyed) CHECK(box.claimed <= bound + kBoxBudgetTol);
                    ++next.rounds;
                    if (next.rounds < n) run(next);
                    return;
                }
                for (int take = 0; take <= left; ++take) {
                    alloc[static_cast<size_t>(idx)] = take;
                    spread(idx + 1, left - take);
                }
                alloc[static_cast<size_t>(idx)] = 0;
            };
            spread(0, units);
        };
        CBoxState s = make_cbox(weights, b);
        run(s);
    }
}

TEST_CASE("minbox maker move picks most dangerous free active box") {
    MinBoxState s = make_minbox(3, 10, 0.9, 1);
    s.boxes[0].w_B = 3;
    s.boxes[1].w_B = 5;
    s.boxes[2].w_B = 5;
    CHECK(minbox_maker_move(s) == 1);  // argmax with lowest-index tie
    // make boxes 1 and 2 non-free
    s.boxes[1].w_B = 10;
    s.boxes[2].w_M = 10;  // also inactive
    CHECK(minbox_maker_move(s) == 0);
    s.boxes[0].w_B = 10;
    CHECK(minbox_maker_move(s) == -1);  // distinct no-free-active signal
}

TEST_CASE("single box minbox keeps danger at most one") {
    MinBoxBreaker hammer = [](const MinBoxState& s, Rng&) {
        return std::vector<int>(static_cast<size_t>(s.b), 0);
    };
    MinBoxResult r = simulate_minbox(1, 30, 0.5, 1, hammer, 1);
    CHECK(!r.bound_violated);
    CHECK(r.worst_active_dang <= 1.0 + kBoxBudgetTol);  // b(ln 1 + 1)
}

TEST_CASE("minbox monte carlo against heuristics stays within the bound") {
    struct Named {
        const char* name;
        MinBoxBreaker strat;
    };
    Named breakers[] = {{"random", minbox_breaker_random()},
                        {"follow", minbox_breaker_follow_maker()},
                        {"rr", minbox_breaker_round_robin()},
                        {"maxdang", minbox_breaker_max_danger()}};
    for (auto& nb : breakers) {
        for (int run = 0; run < 50; ++run) {
            MinBoxResult r = simulate_minbox(10, 20, 0.3, 2, nb.strat, split_seed(11, run));
            INFO(nb.name << " run " << run);
            CHECK(!r.bound_violated);
        }
    }
    // adversarial follow-the-maker at n=50, b=3
    for (int run = 0; run < 100; ++run) {
        MinBoxResult r = simulate_minbox(50, 10, 0.4, 3, minbox_breaker_follow_maker(),
                                         split_seed(13, run));
        CHECK(!r.bound_violated);
    }
}

TEST_CASE("breaker claim accounting and trace emission") {
    int claims_total = 0;
    MinBoxBreaker counting = [&claims_total](const MinBoxState& s, Rng&) {
        std::vector<int> out;
        for (size_t i = 0; i < s.boxes.size() && out.size() < static_cast<size_t>(s.b); ++i)
            if (s.free_box(i)) out.push_back(static_cast<int>(i));
        claims_total += static_cast<int>(out.size());
        return out;
    };
    MinBoxResult r = simulate_minbox(4, 5, 0.5, 2, counting, 3, true);
    int sum_wb = 0;
    for (const MinBoxBox& box : r.final_state.boxes) sum_wb += box.w_B;
    CHECK(sum_wb == claims_total);
    std::ostringstream os;
    write_minbox_trace_csv(os, r);
    CHECK(os.str().rfind("round,box,w_M,w_B,dang,active,free,destroyed\n", 0) == 0);
}
