// citedtcr command line: dataset ingestion, score solves, engine runs, the
// two experiments, and the staking calculator. Every run writes a manifest
// with its fully resolved configuration next to its outputs; re-running from
// that manifest reproduces the outputs byte for byte.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "citedtcr/dataset.hpp"
#include "citedtcr/errors.hpp"
#include "citedtcr/experiments.hpp"
#include "citedtcr/protocol.hpp"
#include "citedtcr/staking.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct Options {
    std::string config_path;
    std::string plan_path;
    std::string input_path;
    std::string out_path;

    std::uint32_t n = 10;
    std::uint32_t m = 0;
    double alpha = 0.15;
    double tol = 1e-10;
    std::uint32_t max_iter = 10000;
    std::uint64_t seed = 0;
    bool offset = false;
    bool strict = false;
    std::size_t ref_cap = 50;

    double epsilon = 0.0;
    double q_zero = 0.5;
    std::string signal_mode = "task";  // task | iid

    std::uint32_t reps = 10;
    std::uint32_t n_min = 1;
    std::uint32_t n_max = 20;
    std::uint32_t grid_steps = 11;
    std::size_t jobs = 1;

    // ingest
    std::optional<std::uint64_t> seed_node;
    std::size_t initial_count = 421;
    std::string order = "id";  // id | file

    // pagerank / ppr
    std::string state = "final";  // final | initial
    std::string base_list;

    // staking
    double stk_p = 0.5;
    double stk_stake = 1.0;
    std::uint32_t stk_n = 2;
    std::uint32_t stk_nstar = 1;
    double stk_cost = 0.0;
};

// registers the shared engine/experiment flags on a subcommand
void add_common_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--config", opt.config_path, "flat JSON config; flags override its values");
    cmd->add_option("--plan", opt.plan_path, "replay plan JSON");
    cmd->add_option("--out", opt.out_path, "output file or directory");
    cmd->add_option("--n", opt.n, "curators per period");
    cmd->add_option("--m", opt.m, "acceptance threshold");
    cmd->add_option("--alpha", opt.alpha, "damping factor");
    cmd->add_option("--tol", opt.tol, "solver l1 tolerance");
    cmd->add_option("--max-iter", opt.max_iter, "solver iteration budget");
    cmd->add_option("--seed", opt.seed, "master seed");
    cmd->add_flag("--offset", opt.offset, "report theta + 1 instead of net theta");
    cmd->add_flag("--strict", opt.strict, "accept only when accepts exceed m");
    cmd->add_option("--ref-cap", opt.ref_cap, "reference cap per proposal");
    cmd->add_option("--epsilon", opt.epsilon, "share of uninformative strategies");
    cmd->add_option("--q-zero", opt.q_zero, "P(signal = 0)");
    cmd->add_option("--signal-mode", opt.signal_mode, "task | iid")
        ->check(CLI::IsMember({"task", "iid"}));
    cmd->add_option("--reps", opt.reps, "repetitions per curator count");
    cmd->add_option("--n-min", opt.n_min, "smallest curator count");
    cmd->add_option("--n-max", opt.n_max, "largest curator count");
    cmd->add_option("--grid-steps", opt.grid_steps, "grid resolution per axis");
    cmd->add_option("--jobs", opt.jobs, "worker threads");
}

// flag > config file > CITEDTCR_SEED > default
void resolve(CLI::App* cmd, Options& opt) {
    if (!cmd->count("--seed")) {
        if (const char* env = std::getenv("CITEDTCR_SEED")) opt.seed = std::strtoull(env, nullptr, 10);
    }
    if (opt.config_path.empty()) return;
    std::ifstream in(opt.config_path);
    if (!in) throw citedtcr::Error("cannot read config " + opt.config_path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw citedtcr::Error("invalid config JSON " + opt.config_path + ": " + e.what());
    }

    const auto load = [&](const char* flag, const char* key, auto& slot) {
        if (!cmd->count(flag) && doc.contains(key))
            slot = doc.at(key).get<std::decay_t<decltype(slot)>>();
    };
    load("--plan", "plan", opt.plan_path);
    load("--out", "out", opt.out_path);
    load("--n", "n", opt.n);
    load("--m", "m", opt.m);
    load("--alpha", "alpha", opt.alpha);
    load("--tol", "tol", opt.tol);
    load("--max-iter", "max_iter", opt.max_iter);
    load("--seed", "seed", opt.seed);
    load("--offset", "offset", opt.offset);
    load("--strict", "strict", opt.strict);
    load("--ref-cap", "ref_cap", opt.ref_cap);
    load("--epsilon", "epsilon", opt.epsilon);
    load("--q-zero", "q_zero", opt.q_zero);
    load("--signal-mode", "signal_mode", opt.signal_mode);
    load("--reps", "reps", opt.reps);
    load("--n-min", "n_min", opt.n_min);
    load("--n-max", "n_max", opt.n_max);
    load("--grid-steps", "grid_steps", opt.grid_steps);
    load("--jobs", "jobs", opt.jobs);
}

ordered_json manifest_of(const std::string& command, const Options& opt) {
    ordered_json doc;
    doc["command"] = command;
    doc["plan"] = opt.plan_path;
    doc["out"] = opt.out_path;
    doc["n"] = opt.n;
    doc["m"] = opt.m;
    doc["alpha"] = opt.alpha;
    doc["tol"] = opt.tol;
    doc["max_iter"] = opt.max_iter;
    doc["seed"] = opt.seed;
    doc["offset"] = opt.offset;
    doc["strict"] = opt.strict;
    doc["ref_cap"] = opt.ref_cap;
    doc["epsilon"] = opt.epsilon;
    doc["q_zero"] = opt.q_zero;
    doc["signal_mode"] = opt.signal_mode;
    doc["reps"] = opt.reps;
    doc["n_min"] = opt.n_min;
    doc["n_max"] = opt.n_max;
    doc["grid_steps"] = opt.grid_steps;
    doc["jobs"] = opt.jobs;
    return doc;
}

citedtcr::ReplayPlan load_plan(const Options& opt) {
    if (opt.plan_path.empty()) throw citedtcr::Error("missing --plan");
    std::ifstream in(opt.plan_path);
    if (!in) throw citedtcr::Error("cannot read plan " + opt.plan_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return citedtcr::ReplayPlan::from_json(buffer.str());
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw citedtcr::Error("cannot write " + path.string());
    out << content;
}

fs::path out_dir(const Options& opt) {
    if (opt.out_path.empty()) throw citedtcr::Error("missing --out directory");
    fs::create_directories(opt.out_path);
    return opt.out_path;
}

citedtcr::SimConfig sim_config(const Options& opt) {
    citedtcr::SimConfig cfg;
    cfg.n = opt.n;
    cfg.m = opt.m;
    cfg.alpha = opt.alpha;
    cfg.tol = opt.tol;
    cfg.max_iter = opt.max_iter;
    cfg.seed = opt.seed;
    cfg.offset = opt.offset;
    cfg.strict_acceptance = opt.strict;
    cfg.reference_cap = opt.ref_cap;
    return cfg;
}

std::vector<citedtcr::NodeId> parse_base(const std::string& list) {
    std::vector<citedtcr::NodeId> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(static_cast<citedtcr::NodeId>(std::stoull(item)));
    }
    if (out.empty()) throw citedtcr::Error("empty --base list");
    return out;
}

int cmd_ingest(const Options& opt) {
    std::ifstream in(opt.input_path);
    if (!in) throw citedtcr::Error("cannot read input " + opt.input_path);
    auto edges = citedtcr::parse_snap_edge_list(in);
    std::cerr << "parsed " << edges.edges.size() << " edges (dropped "
              << edges.dropped_self_loops << " self-loops, " << edges.dropped_duplicates
              << " duplicates)\n";
    if (opt.seed_node) {
        edges = citedtcr::extract_component(edges,
                                            static_cast<citedtcr::NodeId>(*opt.seed_node));
        std::cerr << "component of " << *opt.seed_node << ": " << edges.edges.size()
                  << " edges\n";
    }
    const auto order = opt.order == "file" ? citedtcr::NodeOrder::FileOrder
                                           : citedtcr::NodeOrder::AscendingId;
    const auto plan = citedtcr::build_replay(edges, order, opt.initial_count);
    std::cerr << "plan: " << plan.initial_graph.node_count() << " initial nodes, "
              << plan.proposals.size() << " proposals, " << plan.dropped_forward_edges
              << " forward edges dropped, " << plan.skipped_empty_proposals
              << " nodes skipped\n";
    if (opt.out_path.empty()) throw citedtcr::Error("missing --out plan path");
    write_file(opt.out_path, plan.to_json());
    return 0;
}

int cmd_validate(const Options& opt) {
    const auto plan = load_plan(opt);
    citedtcr::CitationGraph g = plan.initial_graph;
    auto report = citedtcr::validate_dag(g);
    std::size_t period = 0;
    if (report.ok) {
        for (const auto& p : plan.proposals) {
            g.apply(p, SIZE_MAX);
            report = citedtcr::validate_dag(g);
            if (!report.ok) break;
            ++period;
        }
    }
    if (!report.ok) {
        std::cout << "invalid at step " << period << ": " << report.violation << "\n";
        return 2;
    }
    std::cout << "ok: " << g.node_count() << " nodes, " << g.edge_count()
              << " edges, DAG at every step\n";
    return 0;
}

int cmd_scores(const Options& opt, bool personalized) {
    const auto plan = load_plan(opt);
    const auto graph = opt.state == "initial" ? plan.initial_graph : plan.replay();
    const citedtcr::SolverOptions solver{opt.alpha, opt.tol, opt.max_iter};
    const auto scores = personalized
                            ? citedtcr::ppr(graph, parse_base(opt.base_list), solver)
                            : citedtcr::pagerank(graph, solver);
    std::ostringstream csv;
    citedtcr::write_scores_csv(scores, csv);
    if (opt.out_path.empty())
        std::cout << csv.str();
    else
        write_file(opt.out_path, csv.str());
    return 0;
}

int cmd_run(const Options& opt) {
    const auto plan = load_plan(opt);
    const auto cfg = sim_config(opt);
    const auto everyone = plan.all_nodes();

    citedtcr::Rng alloc_rng(citedtcr::derive_seed(cfg.seed, 0x5e7));
    const auto strategies = citedtcr::allocate_strategies(everyone, opt.epsilon, alloc_rng);
    auto signals = citedtcr::allocate_signals(everyone, opt.q_zero, alloc_rng);
    signals.mode = opt.signal_mode == "iid" ? citedtcr::SignalModel::Mode::PerCuratorIid
                                            : citedtcr::SignalModel::Mode::TaskSignal;
    citedtcr::AgentTable agents;
    for (citedtcr::NodeId id : everyone) agents.set({id, strategies.at(id), 1.0});

    const auto result = citedtcr::run(cfg, plan, agents, signals);

    const fs::path dir = out_dir(opt);
    std::ostringstream trace;
    citedtcr::write_trace_jsonl(result.trace, trace);
    write_file(dir / "trace.jsonl", trace.str());
    std::ostringstream rewards;
    citedtcr::write_ledger_csv(result.ledger, rewards);
    write_file(dir / "rewards.csv", rewards.str());
    write_file(dir / "manifest.json", manifest_of("run", opt).dump(2) + "\n");

    std::size_t accepted = 0;
    for (const auto& p : result.trace.periods) accepted += p.accepted ? 1 : 0;
    double mean = 0.0;
    for (const auto& e : result.ledger.entries()) mean += e.theta;
    if (!result.ledger.entries().empty()) mean /= static_cast<double>(result.ledger.entries().size());
    std::cout << "periods=" << result.trace.periods.size() << " accepted=" << accepted
              << " skipped=" << result.trace.skipped
              << " settled=" << result.ledger.entries().size()
              << " pending=" << result.pending_unsettled << " mean_theta=" << mean << "\n";
    return 0;
}

int cmd_exp1(const Options& opt) {
    const auto plan = load_plan(opt);
    citedtcr::Exp1Config cfg;
    cfg.n_min = opt.n_min;
    cfg.n_max = opt.n_max;
    cfg.reps = opt.reps;
    cfg.master_seed = opt.seed;
    cfg.solver = {opt.alpha, opt.tol, opt.max_iter};
    cfg.jobs = opt.jobs;
    const auto result = citedtcr::experiment1(plan, cfg);

    const fs::path dir = out_dir(opt);
    std::ostringstream rows, summary;
    citedtcr::write_exp1_rows_csv(result, rows);
    citedtcr::write_exp1_summary_csv(result, summary);
    write_file(dir / "exp1_coefficients.csv", rows.str());
    write_file(dir / "exp1_summary.csv", summary.str());
    write_file(dir / "manifest.json", manifest_of("exp1", opt).dump(2) + "\n");
    std::cout << "wrote " << result.rows.size() << " coefficients to " << dir.string() << "\n";
    return 0;
}

int cmd_exp2(const Options& opt) {
    const auto plan = load_plan(opt);
    citedtcr::Exp2Config cfg;
    cfg.n = opt.n;
    cfg.grid_steps = opt.grid_steps;
    cfg.master_seed = opt.seed;
    cfg.solver = {opt.alpha, opt.tol, opt.max_iter};
    cfg.jobs = opt.jobs;
    cfg.signal_mode = opt.signal_mode == "iid" ? citedtcr::SignalModel::Mode::PerCuratorIid
                                               : citedtcr::SignalModel::Mode::TaskSignal;
    const auto result = citedtcr::experiment2(plan, cfg);

    const fs::path dir = out_dir(opt);
    std::ostringstream csv;
    citedtcr::write_exp2_csv(result, csv);
    write_file(dir / "exp2_grid.csv", csv.str());
    write_file(dir / "manifest.json", manifest_of("exp2", opt).dump(2) + "\n");
    std::cout << "wrote " << result.cells.size() << " cells to " << dir.string() << "\n";
    return 0;
}

int cmd_staking(const Options& opt) {
    const citedtcr::StakingScenario scenario{opt.stk_p, opt.stk_stake, opt.stk_n, opt.stk_nstar,
                                             opt.stk_cost};
    const double expected = citedtcr::staking_expected_reward(scenario);
    std::cout << "E(k) = " << expected << "\n";
    if (scenario.p > 0.0 && scenario.p < 1.0 && scenario.n_star < scenario.n) {
        const auto sign = citedtcr::odds_ratio_sign(scenario);
        const char* label = sign == citedtcr::RewardSign::Positive   ? "positive"
                            : sign == citedtcr::RewardSign::Negative ? "negative"
                                                                     : "zero";
        std::cout << "sign at zero cost: " << label << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CitedTCR protocol simulator"};
    app.require_subcommand(1);
    Options opt;

    auto* ingest = app.add_subcommand("ingest", "SNAP edge list -> replay plan JSON");
    ingest->add_option("--input", opt.input_path, "SNAP edge list")->required();
    ingest->add_option("--seed-node", opt.seed_node, "restrict to this node's component");
    ingest->add_option("--initial-count", opt.initial_count, "nodes forming the initial graph");
    ingest->add_option("--order", opt.order, "node time order: id | file")
        ->check(CLI::IsMember({"id", "file"}));
    ingest->add_option("--out", opt.out_path, "plan output path")->required();

    auto* validate = app.add_subcommand("validate", "check the DAG invariant over a replay");
    validate->add_option("--plan", opt.plan_path)->required();

    auto* pr = app.add_subcommand("pagerank", "node_id,score CSV of the full PageRank");
    auto* pprc = app.add_subcommand("ppr", "node_id,score CSV of the personalized PageRank");
    for (CLI::App* cmd : {pr, pprc}) {
        cmd->add_option("--plan", opt.plan_path)->required();
        cmd->add_option("--state", opt.state, "initial | final")
            ->check(CLI::IsMember({"initial", "final"}));
        cmd->add_option("--alpha", opt.alpha);
        cmd->add_option("--tol", opt.tol);
        cmd->add_option("--max-iter", opt.max_iter);
        cmd->add_option("--out", opt.out_path, "CSV path (stdout when omitted)");
    }
    pprc->add_option("--base", opt.base_list, "comma-separated base node ids")->required();

    auto* runc = app.add_subcommand("run", "full engine run over a replay plan");
    add_common_flags(runc, opt);
    auto* exp1c = app.add_subcommand("exp1", "assignment-frequency vs PageRank correlations");
    add_common_flags(exp1c, opt);
    auto* exp2c = app.add_subcommand("exp2", "mean DG13 reward over the strategy/signal grid");
    add_common_flags(exp2c, opt);

    auto* staking = app.add_subcommand("staking", "token-staking expected reward");
    staking->add_option("--p", opt.stk_p, "subjective consensus probability")->required();
    staking->add_option("--n", opt.stk_n, "total curators")->required();
    staking->add_option("--nstar", opt.stk_nstar, "curators on the consensus side")->required();
    staking->add_option("--stake", opt.stk_stake, "tokens staked per curator")->required();
    staking->add_option("--cost", opt.stk_cost, "per-curation cost");

    CLI11_PARSE(app, argc, argv);

    try {
        if (ingest->parsed()) return cmd_ingest(opt);
        if (validate->parsed()) return cmd_validate(opt);
        if (pr->parsed()) return cmd_scores(opt, false);
        if (pprc->parsed()) return cmd_scores(opt, true);
        if (runc->parsed()) {
            resolve(runc, opt);
            return cmd_run(opt);
        }
        if (exp1c->parsed()) {
            resolve(exp1c, opt);
            return cmd_exp1(opt);
        }
        if (exp2c->parsed()) {
            resolve(exp2c, opt);
            return cmd_exp2(opt);
        }
        if (staking->parsed()) return cmd_staking(opt);
    } catch (const citedtcr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
