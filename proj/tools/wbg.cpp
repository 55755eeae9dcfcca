// Command-line front door: verification suites, exact solving, Monte Carlo
// experiments, box-game simulations, and reproducible artifact emission.
//
// Exit codes: 0 success, 1 suite or run failure, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "wbg/boxgames.hpp"
#include "wbg/solver.hpp"
#include "wbg/strategy.hpp"
#include "wbg/structure.hpp"
#include "wbg/techlemma.hpp"

using nlohmann::json;
using namespace wbg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct ExperimentConfig {
    int n = 300;
    double p = -1;  // < 0: derive from eps as n^(-2/3+eps)
    double eps = 2.0 / 15.0;
    int k = -1;  // -1: derive from eps
    int block_divisor = 27;
    int runs = 20;
    uint64_t seed = 1;
    std::string breaker = "random";
    std::string policy = "fallback";
    std::string out = ".";
    std::string format = "json";
    int workers = 1;

    void resolve() {
        if (k > 0)
            eps = 2.0 / (std::pow(3.0, k + 2) - 12.0);
        else
            k = eps_to_k(eps);
        if (p < 0) p = std::pow(static_cast<double>(n), -2.0 / 3 + eps);
        if (n < 2 || p <= 0 || p > 1 || block_divisor < 1 || runs < 1 || workers < 1)
            throw CLI::ValidationError("config", "numeric fields out of range");
        if (policy != "fallback" && policy != "strict")
            throw CLI::ValidationError("policy", "must be fallback or strict");
        if (format != "json" && format != "csv")
            throw CLI::ValidationError("format", "must be json or csv");
    }

    StrategyPolicy policy_enum() const {
        return policy == "strict" ? StrategyPolicy::Strict : StrategyPolicy::Fallback;
    }
};

void add_experiment_flags(CLI::App* cmd, ExperimentConfig& cfg) {
    cmd->add_option("--n", cfg.n, "board vertex count");
    cmd->add_option("--p", cfg.p, "edge probability (default n^(-2/3+eps))");
    cmd->add_option("--eps", cfg.eps, "density exponent offset");
    cmd->add_option("--k", cfg.k, "structure depth (overrides --eps)");
    cmd->add_option("--block-divisor", cfg.block_divisor, "vertices per block = n / divisor");
    cmd->add_option("--runs", cfg.runs, "number of seeded games");
    cmd->add_option("--seed", cfg.seed, "master seed");
    cmd->add_option("--breaker", cfg.breaker,
                    "random | frontier | starcut | hunter | passing | all");
    cmd->add_option("--policy", cfg.policy, "fallback | strict");
    cmd->add_option("--out", cfg.out, "output directory or file");
    cmd->add_option("--format", cfg.format, "json | csv (per-run reports)");
    cmd->add_option("--workers", cfg.workers, "worker thread count");
}

std::ostream& open_sink(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw CLI::ValidationError("--out", "cannot open " + path);
    return file;
}

// ---- verify suites ---------------------------------------------------------

bool suite_structure_sizes() {
    bool ok = true;
    for (int k = 1; k <= 6; ++k) {
        SkStructure s = build_structure(k);
        bool good = s.graph.vertex_count() == 2 * pow3(k) - 1 &&
                    s.graph.edge_count() == pow3(k + 1) - 3 &&
                    leaves_without_sink(s) == pow3(k);
        std::cout << "  depth " << k << ": v=" << s.graph.vertex_count()
                  << " e=" << s.graph.edge_count() << " leaves=" << leaves_without_sink(s)
                  << (good ? " ok" : " MISMATCH") << "\n";
        ok = ok && good;
    }
    return ok;
}

bool suite_sk_traversal(int k) {
    if (k < 1) k = 1;
    SkStructure s = build_structure(k);
    GameDef def;
    def.variant = Variant::WalkerBreaker;
    def.maker_bias = def.breaker_bias = 2;
    def.first_player = PlayerSide::Breaker;
    def.win = WinCondition::reach(s.sink);
    BoardState init = initial_state(s.graph, def);
    init.walker_pos = s.root();
    auto embed = identity_embedding(s);
    auto maker = [&](const BoardState& b) -> std::optional<Move> {
        return structure_walk_unit_move(b, s, embed);
    };
    VerifyResult r = verify_strategy_against_all_breakers(def, s.graph, init, maker, k);
    std::cout << "  depth " << k << " traversal vs all breaker lines: "
              << (r.ok ? "ok" : "FAILED") << "\n";
    return r.ok;
}

bool suite_hn_characterization() {
    Graph pattern = build_hn(4);
    std::vector<std::pair<int, int>> all_edges;
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) all_edges.emplace_back(u, v);
    int mismatches = 0;
    for (int mask = 0; mask < 64; ++mask) {
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < 6; ++i)
            if (mask & (1 << i)) edges.push_back(all_edges[static_cast<size_t>(i)]);
        Graph g(4, edges);
        GameDef def;
        def.variant = Variant::ConnectorBreaker;
        def.maker_bias = def.breaker_bias = 1;
        def.first_player = PlayerSide::Maker;
        def.win = WinCondition::connectivity();
        bool connector_wins =
            solve(def, g, initial_state(g, def)).winner == PlayerSide::Maker;
        bool has_pattern = contains_subgraph(g, pattern);
        if (connector_wins != has_pattern) ++mismatches;
    }
    std::cout << "  64 labeled graphs on 4 vertices, mismatches: " << mismatches << "\n";
    return mismatches == 0;
}

bool suite_boxgame_bounds(uint64_t seed) {
    int violations = 0;
    std::vector<MinBoxBreaker> heuristics = {
        minbox_breaker_random(), minbox_breaker_follow_maker(),
        minbox_breaker_round_robin(), minbox_breaker_max_danger()};
    int sims = 0;
    for (int b = 1; b <= 3; ++b)
        for (size_t h = 0; h < heuristics.size(); ++h)
            for (int rep = 0; rep < 10; ++rep) {
                MinBoxResult r = simulate_minbox(50, 200, 0.3, b, heuristics[h],
                                                 split_seed(seed, static_cast<uint64_t>(sims)));
                if (r.bound_violated) ++violations;
                ++sims;
            }
    std::cout << "  " << sims << " minbox simulations, bound violations: " << violations
              << "\n";

    // exhaustive grid claimer on one and two boxes, quarter-unit steps
    int grid_violations = 0;
    for (int n = 1; n <= 2; ++n) {
        const double b = 1.0;
        const int units = 4;
        std::vector<double> weights(static_cast<size_t>(n), 100.0);
        std::function<void(CBoxState&)> run = [&](CBoxState& s) {
            bool done = true;
            for (const CBoxBox& box : s.boxes)
                if (!box.destroyed && !box.won) done = false;
            if (done) return;
            std::vector<int> alloc(static_cast<size_t>(n), 0);
            std::function<void(int, int)> spread = [&](int idx, int left) {
                if (idx == n) {
                    if (left != 0) return;
                    CBoxState next = s;
                    for (int i = 0; i < n; ++i) {
                        CBoxBox& box = next.boxes[static_cast<size_t>(i)];
                        if (box.destroyed) {
                            if (alloc[static_cast<size_t>(i)] != 0) return;
                            continue;
                        }
                        box.claimed += 0.25 * alloc[static_cast<size_t>(i)];
                        if (box.claimed >= box.weight - kBoxBudgetTol) box.won = true;
                    }
                    int hit = cbreaker_strategy_S(next);
                    if (hit >= 0) next.boxes[static_cast<size_t>(hit)].destroyed = true;
                    double bound = b * (std::log(static_cast<double>(n)) + 1.0);
                    for (const CBoxBox& box : next.boxes)
                        if (!box.destroyed && box.claimed > bound + kBoxBudgetTol)
                            ++grid_violations;
                    run(next);
                    return;
                }
                for (int take = 0; take <= left; ++take) {
                    alloc[static_cast<size_t>(idx)] = take;
                    spread(idx + 1, left - take);
                }
            };
            spread(0, units);
        };
        CBoxState s = make_cbox(weights, b);
        run(s);
    }
    std::cout << "  exhaustive claimer grid, surviving-box violations: " << grid_violations
              << "\n";
    return violations == 0 && grid_violations == 0;
}

bool suite_techlemma_oracles(uint64_t seed) {
    const int n = 25;
    int instances = 0, candidate_mismatch = 0, sees_mismatch = 0, monotonicity = 0;
    for (int rep = 0; rep < 10; ++rep) {
        Graph g = sample_gnp(n, 0.6, split_seed(seed, 100 + static_cast<uint64_t>(rep)));
        BlockFamily bf = partition_blocks(n, 1, 9, split_seed(seed, 200 + static_cast<uint64_t>(rep)));
        for (int t : {1, 2}) {
            int x = -1;
            for (int v = 1; v < n; ++v)
                if (bf.v_side[static_cast<size_t>(v)] == 3 - t) {
                    x = v;
                    break;
                }
            if (x < 0) continue;
            ++instances;
            CandidateFamily cf = compute_candidates(g, bf, x, t);
            // the root candidate set must equal the set of roots over all
            // full embeddings (sets below the root are downward closures)
            std::set<int> used_roots;
            enumerate_structures(g, bf, x, t, [&](const std::vector<int>& emb) {
                used_roots.insert(emb[static_cast<size_t>(bf.pattern.root())]);
                return false;
            });
            const std::vector<int>& rc = cf.cand[static_cast<size_t>(bf.pattern.root())];
            std::set<int> got(rc.begin(), rc.end());
            if (got != used_roots) ++candidate_mismatch;
            for (int e = 0; e < g.edge_count() && e < 40; ++e) {
                bool oracle = false;
                enumerate_structures(g, bf, x, t, [&](const std::vector<int>& emb) {
                    const SkStructure& s = bf.pattern;
                    for (int pe = 0; pe < s.graph.edge_count(); ++pe) {
                        int a = emb[static_cast<size_t>(s.graph.edge(pe).u)];
                        int b = emb[static_cast<size_t>(s.graph.edge(pe).v)];
                        if (g.edge_index(a, b) == e) oracle = true;
                    }
                    return oracle;
                });
                if (edge_sees(g, bf, t, e, x) != oracle) ++sees_mismatch;
            }
            // excluding nothing must reproduce the root candidate set exactly
            std::vector<int> excl = candidates_excluding(g, bf, cf, {}, {});
            const std::vector<int>& root = cf.cand[static_cast<size_t>(bf.pattern.root())];
            std::set<int> base(root.begin(), root.end());
            if (excl.size() != base.size()) ++monotonicity;
            for (int v : excl)
                if (!base.count(v)) ++monotonicity;
        }
    }
    std::cout << "  " << instances << " instances: candidate mismatches "
              << candidate_mismatch << ", seen-edge mismatches " << sees_mismatch
              << ", monotonicity breaks " << monotonicity << "\n";
    return candidate_mismatch == 0 && sees_mismatch == 0 && monotonicity == 0;
}

bool suite_strategy_monitors(ExperimentConfig cfg) {
    if (cfg.p < 0) cfg.p = 0.35;  // dense enough for a desk-scale board
    cfg.resolve();
    Graph g = sample_gnp(cfg.n, cfg.p, split_seed(cfg.seed, 9001));
    BlockFamily bf = partition_blocks(cfg.n, cfg.k, cfg.block_divisor,
                                      split_seed(cfg.seed, 9002));
    bool ok = true;
    for (auto& [name, breaker] : baseline_breakers(g, bf, cfg.eps)) {
        FullRunResult r =
            run_full_strategy(g, bf, cfg.eps, cfg.p, split_seed(cfg.seed, 1), breaker);
        bool clean = !r.monitors.find("inter_sequence_bound")->violated &&
                     !r.monitors.find("weight_consistency")->violated &&
                     !r.monitors.find("reach_availability")->violated;
        // bit-exact replay of the recorded game
        std::ostringstream os;
        write_transcript(os, g, r.transcript);
        std::istringstream is(os.str());
        BoardState replayed = replay(r.transcript.def, g, read_transcript(is, g));
        bool replay_ok = boards_equal(replayed, r.transcript.final_state);
        std::cout << "  breaker " << name << ": spanned=" << (r.spanned ? "yes" : "no")
                  << " monitors=" << (clean ? "clean" : "VIOLATED")
                  << " replay=" << (replay_ok ? "exact" : "DRIFTED") << "\n";
        ok = ok && clean && replay_ok;
    }
    return ok;
}

int cmd_verify(const std::string& suite, const ExperimentConfig& cfg) {
    bool ok;
    std::cout << "suite " << suite << "\n";
    if (suite == "structure-sizes")
        ok = suite_structure_sizes();
    else if (suite == "sk-traversal")
        ok = suite_sk_traversal(cfg.k > 0 ? cfg.k : 1);
    else if (suite == "hn-characterization")
        ok = suite_hn_characterization();
    else if (suite == "boxgame-bounds")
        ok = suite_boxgame_bounds(cfg.seed);
    else if (suite == "techlemma-oracles")
        ok = suite_techlemma_oracles(cfg.seed);
    else if (suite == "strategy-monitors")
        ok = suite_strategy_monitors(cfg);
    else {
        std::cerr << "unknown suite: " << suite << "\n";
        return kExitUsage;
    }
    std::cout << (ok ? "PASS" : "FAIL") << " " << suite << "\n";
    return ok ? kExitOk : kExitFailure;
}

// ---- simulate --------------------------------------------------------------

Strategy named_breaker(const std::string& name, const Graph& g, const BlockFamily& bf,
                       double eps) {
    if (name == "random") return breaker_random();
    if (name == "passing") return breaker_passing();
    if (name == "frontier") return breaker_walker_frontier();
    if (name == "starcut") return breaker_star_cutter(bf.a);
    if (name == "hunter") return breaker_structure_hunter(g, bf, eps);
    throw CLI::ValidationError("--breaker", "unknown breaker " + name);
}

json run_report(int run, uint64_t run_seed, const std::string& breaker,
                const FullRunResult& r) {
    json j;
    j["run"] = run;
    j["seed"] = run_seed;
    j["breaker"] = breaker;
    j["spanned"] = r.spanned;
    j["fallbacks"] = r.fallbacks;
    j["max_f2"] = r.max_f2;
    j["monitors"] = to_json(r.monitors);
    return j;
}

int cmd_simulate(ExperimentConfig cfg, const std::string& manifest_path) {
    if (!manifest_path.empty()) {
        std::ifstream in(manifest_path);
        if (!in) throw CLI::ValidationError("--from-manifest", "cannot open " + manifest_path);
        json m = json::parse(in);
        cfg.n = m.at("n");
        cfg.p = m.at("p");
        cfg.eps = m.at("eps");
        cfg.k = m.at("k");
        cfg.block_divisor = m.at("block_divisor");
        cfg.runs = m.at("runs");
        cfg.seed = m.at("seed");
        cfg.breaker = m.at("breaker");
        cfg.policy = m.at("policy");
        cfg.format = m.at("format");
    }
    cfg.resolve();
    std::filesystem::create_directories(cfg.out);

    uint64_t graph_seed = split_seed(cfg.seed, 9001);
    uint64_t partition_seed = split_seed(cfg.seed, 9002);
    Graph g = sample_gnp(cfg.n, cfg.p, graph_seed);
    BlockFamily bf = partition_blocks(cfg.n, cfg.k, cfg.block_divisor, partition_seed);

    auto baselines = baseline_breakers(g, bf, cfg.eps);
    auto breaker_for = [&](int run) -> std::pair<std::string, Strategy> {
        if (cfg.breaker == "all") {
            auto& [name, strat] = baselines[static_cast<size_t>(run) % baselines.size()];
            return {name, strat};
        }
        return {cfg.breaker, named_breaker(cfg.breaker, g, bf, cfg.eps)};
    };
    breaker_for(0);  // validate the name before spawning workers

    std::vector<FullRunResult> results(static_cast<size_t>(cfg.runs));
    std::vector<std::string> breaker_names(static_cast<size_t>(cfg.runs));
    auto work = [&](int w) {
        for (int i = w; i < cfg.runs; i += cfg.workers) {
            auto [name, strat] = breaker_for(i);
            breaker_names[static_cast<size_t>(i)] = name;
            // at exactly checkable sizes the goal is a Hamiltonian walker graph
            WinCondition win = cfg.n <= 22 ? WinCondition::hamiltonicity()
                                           : WinCondition::spanning();
            results[static_cast<size_t>(i)] =
                run_full_strategy(g, bf, cfg.eps, cfg.p, split_seed(cfg.seed, static_cast<uint64_t>(i)),
                                  strat, cfg.policy_enum(), win);
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < cfg.workers; ++w) pool.emplace_back(work, w);
    work(0);
    for (auto& t : pool) t.join();

    // per-run monitor reports
    std::filesystem::path dir(cfg.out);
    if (cfg.format == "json") {
        for (int i = 0; i < cfg.runs; ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "run_%04d.json", i);
            std::ofstream f(dir / name);
            f << run_report(i, split_seed(cfg.seed, static_cast<uint64_t>(i)),
                            breaker_names[static_cast<size_t>(i)],
                            results[static_cast<size_t>(i)])
                     .dump(2)
              << "\n";
        }
    } else {
        std::ofstream f(dir / "monitors.csv");
        f << "run,breaker,claim_id,bound,worst_observed,violated,round_of_violation\n";
        for (int i = 0; i < cfg.runs; ++i)
            for (const MonitorEntry& m : results[static_cast<size_t>(i)].monitors.entries)
                f << i << ',' << breaker_names[static_cast<size_t>(i)] << ','
                  << m.claim_id << ',' << m.bound << ',' << m.worst_observed << ','
                  << (m.violated ? 1 : 0) << ',' << m.round_of_violation << "\n";
    }

    // aggregate
    int spanned = 0, ham = 0, max_fallbacks = 0, max_f2 = 0, violated = 0;
    bool ham_checked = cfg.n <= 22;
    for (int i = 0; i < cfg.runs; ++i) {
        const FullRunResult& r = results[static_cast<size_t>(i)];
        if (r.spanned) ++spanned;
        max_fallbacks = std::max(max_fallbacks, r.fallbacks);
        max_f2 = std::max(max_f2, r.max_f2);
        if (r.monitors.any_violated()) ++violated;
        if (ham_checked) {
            std::vector<std::pair<int, int>> we;
            for (int e = 0; e < g.edge_count(); ++e)
                if (r.transcript.final_state.own[static_cast<size_t>(e)] == Owner::Walker)
                    we.emplace_back(g.edge(e).u, g.edge(e).v);
            Graph w(cfg.n, we);
            if (has_hamilton_cycle(w)) ++ham;
        }
    }
    {
        std::ofstream f(dir / "aggregate.csv");
        f << "runs,spanning_rate,hamiltonicity_rate,max_fallbacks,max_f2,runs_with_violations\n";
        f << cfg.runs << ',' << static_cast<double>(spanned) / cfg.runs << ',';
        if (ham_checked)
            f << static_cast<double>(ham) / cfg.runs;
        else
            f << "na";
        f << ',' << max_fallbacks << ',' << max_f2 << ',' << violated << "\n";
    }

    // manifest: every constant the runs used, sufficient for bit-exact replay
    json manifest;
    manifest["command"] = "simulate";
    manifest["n"] = cfg.n;
    manifest["p"] = cfg.p;
    manifest["eps"] = cfg.eps;
    manifest["k"] = cfg.k;
    manifest["b"] = 8 * cfg.k + 14;
    manifest["block_divisor"] = cfg.block_divisor;
    manifest["block_size"] = bf.block_size;
    manifest["runs"] = cfg.runs;
    manifest["seed"] = cfg.seed;
    manifest["breaker"] = cfg.breaker;
    manifest["policy"] = cfg.policy;
    manifest["format"] = cfg.format;
    manifest["graph_seed"] = graph_seed;
    manifest["partition_seed"] = partition_seed;
    manifest["run_seed_rule"] = "split(seed, run_index)";
    double ln_n = std::log(static_cast<double>(cfg.n));
    json consts;
    consts["star_size"] = std::llround(std::pow(static_cast<double>(cfg.n), 1.0 / 3));
    consts["coin_prob"] = 1.0 / ln_n;
    consts["minbox_boxes"] = cfg.n;
    consts["minbox_min_size"] = std::llround(4 * cfg.p * cfg.n);
    consts["minbox_alpha"] = 0.5 / ln_n;
    consts["minbox_bias"] = 16 * cfg.k + 28;
    consts["type1_credit"] =
        std::max<long long>(1, std::llround(2 * cfg.p * cfg.n / ln_n));
    consts["weight_low"] = std::pow(ln_n, -2.0);
    consts["weight_mid"] =
        std::pow(static_cast<double>(cfg.n), -1.0 / 3 - 0.1 * cfg.eps);
    consts["hamiltonicity_limit"] = 22;
    manifest["constants"] = consts;
    json bounds;
    for (const MonitorEntry& m : results[0].monitors.entries) bounds[m.claim_id] = m.bound;
    manifest["monitor_bounds"] = bounds;
    {
        std::ofstream f(dir / "manifest.json");
        f << manifest.dump(2) << "\n";
    }
    std::cout << "wrote " << cfg.runs << " run reports, aggregate.csv and manifest.json to "
              << dir.string() << "\n";
    return kExitOk;
}

// ---- solve -----------------------------------------------------------------

int cmd_solve(const std::string& graph_path, const std::string& variant,
              int m, int b, const std::string& first, const std::string& win,
              int target, const std::string& out) {
    Graph g = [&] {
        if (graph_path == "-") return read_edge_list(std::cin);
        std::ifstream f(graph_path);
        if (!f) throw CLI::ValidationError("--graph", "cannot open " + graph_path);
        return read_edge_list(f);
    }();
    GameDef def;
    if (variant == "maker")
        def.variant = Variant::MakerBreaker;
    else if (variant == "connector")
        def.variant = Variant::ConnectorBreaker;
    else if (variant == "walker")
        def.variant = Variant::WalkerBreaker;
    else
        throw CLI::ValidationError("--variant", "must be maker, connector or walker");
    def.maker_bias = m;
    def.breaker_bias = b;
    def.first_player = first == "breaker" ? PlayerSide::Breaker : PlayerSide::Maker;
    if (win == "connectivity")
        def.win = WinCondition::connectivity();
    else if (win == "hamiltonicity")
        def.win = WinCondition::hamiltonicity();
    else if (win == "spanning")
        def.win = WinCondition::spanning();
    else if (win == "reach") {
        if (target < 0 || target >= g.vertex_count())
            throw CLI::ValidationError("--target", "reach needs a valid --target vertex");
        def.win = WinCondition::reach(target);
    } else
        throw CLI::ValidationError("--win", "unknown win condition " + win);

    SolveResult r = solve(def, g, initial_state(g, def));
    json j;
    j["winner"] = r.winner == PlayerSide::Maker ? "maker" : "breaker";
    if (r.optimal_move) {
        json mv;
        mv["kind"] = r.optimal_move->kind == MoveKind::Claim      ? "claim"
                     : r.optimal_move->kind == MoveKind::Traverse ? "traverse"
                                                                  : "pass";
        if (r.optimal_move->edge >= 0) {
            mv["u"] = g.edge(r.optimal_move->edge).u;
            mv["v"] = g.edge(r.optimal_move->edge).v;
        }
        j["optimal_move"] = mv;
    } else {
        j["optimal_move"] = nullptr;
    }
    j["nodes_expanded"] = r.nodes_expanded;
    if (r.rounds_to_win)
        j["rounds_to_win"] = *r.rounds_to_win;
    else
        j["rounds_to_win"] = nullptr;
    std::ofstream file;
    open_sink(out, file) << j.dump(2) << "\n";
    return kExitOk;
}

// ---- boxgame ---------------------------------------------------------------

int cmd_boxgame(const std::string& kind, int boxes, int min_size, double alpha,
                int bias, const std::string& opponent, const std::string& weights_csv,
                uint64_t seed, const std::string& out) {
    std::ofstream file;
    std::ostream& os = open_sink(out, file);
    if (kind == "minbox") {
        MinBoxBreaker breaker;
        if (opponent == "random")
            breaker = minbox_breaker_random();
        else if (opponent == "follow")
            breaker = minbox_breaker_follow_maker();
        else if (opponent == "roundrobin")
            breaker = minbox_breaker_round_robin();
        else if (opponent == "maxdanger")
            breaker = minbox_breaker_max_danger();
        else
            throw CLI::ValidationError("--opponent",
                                       "must be random, follow, roundrobin or maxdanger");
        MinBoxResult r = simulate_minbox(boxes, min_size, alpha, bias, breaker, seed, true);
        write_minbox_trace_csv(os, r);
        return r.bound_violated ? kExitFailure : kExitOk;
    }
    if (kind == "cbox") {
        std::vector<double> weights;
        std::stringstream ss(weights_csv);
        for (std::string tok; std::getline(ss, tok, ',');)
            weights.push_back(std::stod(tok));
        if (weights.empty())
            throw CLI::ValidationError("--weights", "need a comma-separated weight list");
        // greedy claimer: full budget into the first live box
        CMakerStrategy greedy = [](const CBoxState& s, Rng&) {
            std::vector<std::pair<int, double>> out2;
            for (size_t i = 0; i < s.boxes.size(); ++i)
                if (!s.boxes[i].destroyed && !s.boxes[i].won) {
                    out2.emplace_back(static_cast<int>(i), s.bias);
                    break;
                }
            return out2;
        };
        CBoxResult r = simulate_cbox(weights, static_cast<double>(bias), greedy, seed);
        write_cbox_trace_csv(os, r);
        return r.bound_violated ? kExitFailure : kExitOk;
    }
    throw CLI::ValidationError("--kind", "must be minbox or cbox");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Walker-Breaker games on random boards: verification suites, exact "
                 "solving and Monte Carlo experiments"};
    app.require_subcommand(1);

    ExperimentConfig cfg;

    std::string suite;
    CLI::App* verify = app.add_subcommand("verify", "run a named verification suite");
    verify->add_option("suite", suite,
                       "structure-sizes | sk-traversal | hn-characterization | "
                       "boxgame-bounds | techlemma-oracles | strategy-monitors")
        ->required();
    add_experiment_flags(verify, cfg);

    std::string manifest_path;
    CLI::App* simulate = app.add_subcommand("simulate", "seeded full-strategy experiment");
    add_experiment_flags(simulate, cfg);
    simulate->add_option("--from-manifest", manifest_path,
                         "reproduce a previous experiment from its manifest");

    std::string graph_path = "-", variant = "maker", first = "maker", win = "connectivity";
    int m = 1, b = 1, target = -1;
    std::string solve_out;
    CLI::App* solve_cmd = app.add_subcommand("solve", "exact game value of a small board");
    solve_cmd->add_option("--graph", graph_path, "edge-list file, - for stdin");
    solve_cmd->add_option("--variant", variant, "maker | connector | walker");
    solve_cmd->add_option("--m", m, "maker bias");
    solve_cmd->add_option("--b", b, "breaker bias");
    solve_cmd->add_option("--first", first, "maker | breaker");
    solve_cmd->add_option("--win", win, "connectivity | hamiltonicity | spanning | reach");
    solve_cmd->add_option("--target", target, "target vertex for reach");
    solve_cmd->add_option("--out", solve_out, "output file, - for stdout");

    std::string kind = "minbox", opponent = "random", weights_csv = "1,1,1", box_out;
    int boxes = 50, min_size = 200, bias = 1;
    double alpha = 0.3;
    uint64_t box_seed = 1;
    CLI::App* boxgame = app.add_subcommand("boxgame", "box-game simulation trace");
    boxgame->add_option("--kind", kind, "minbox | cbox");
    boxgame->add_option("--boxes", boxes, "number of boxes");
    boxgame->add_option("--min-size", min_size, "minimum box size");
    boxgame->add_option("--alpha", alpha, "activity threshold fraction");
    boxgame->add_option("--bias", bias, "per-round bias");
    boxgame->add_option("--opponent", opponent, "minbox breaker heuristic");
    boxgame->add_option("--weights", weights_csv, "cbox weights, comma separated");
    boxgame->add_option("--seed", box_seed, "simulation seed");
    boxgame->add_option("--out", box_out, "output file, - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (verify->parsed()) return cmd_verify(suite, cfg);
        if (simulate->parsed()) return cmd_simulate(cfg, manifest_path);
        if (solve_cmd->parsed())
            return cmd_solve(graph_path, variant, m, b, first, win, target, solve_out);
        if (boxgame->parsed())
            return cmd_boxgame(kind, boxes, min_size, alpha, bias, opponent, weights_csv,
                               box_seed, box_out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
