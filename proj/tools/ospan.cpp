// Command-line front end: instance generation, online runs with JSONL round
// logs, run audits, the standalone covering/packing engines and the
// multi-seed Monte Carlo driver.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ospan/covering.hpp"
#include "ospan/exact.hpp"
#include "ospan/harness.hpp"
#include "ospan/packing.hpp"
#include "ospan/spanner.hpp"

namespace {

using ospan::DirectedGraph;

constexpr int kExitInfeasible = 2;
constexpr int kExitError = 1;

DirectedGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open graph file: " + path);
    return DirectedGraph::parse(in);
}

std::vector<ospan::Demand> load_demands(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open demand file: " + path);
    return ospan::harness::read_demands(in);
}

// stdout when path is "-", otherwise the file.
class OutStream {
public:
    explicit OutStream(const std::string& path) {
        if (path != "-") {
            file_.open(path);
            if (!file_) throw std::invalid_argument("cannot open output file: " + path);
        }
    }
    std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

ospan::SpannerMode mode_from_flag(const std::string& name) {
    auto mode = ospan::parse_mode(name);
    if (!mode) throw std::invalid_argument("unknown mode: " + name);
    return *mode;
}

int cmd_gen(const ospan::harness::GenOptions& opts, const std::string& graph_out,
            const std::string& demands_out) {
    ospan::harness::Instance inst = ospan::harness::generate(opts);
    {
        std::ofstream out(graph_out);
        if (!out) throw std::invalid_argument("cannot open output file: " + graph_out);
        inst.graph.write(out);
    }
    {
        std::ofstream out(demands_out);
        if (!out) throw std::invalid_argument("cannot open output file: " + demands_out);
        ospan::harness::write_demands(out, inst.demands);
    }
    std::cerr << "wrote " << inst.graph.vertex_count() << " vertices, " << inst.graph.edge_count()
              << " edges, " << inst.demands.size() << " demands\n";
    return 0;
}

int cmd_run(const std::string& graph_path, const std::string& demands_path,
            const ospan::harness::RunOptions& opts, const std::string& out_path) {
    DirectedGraph g = load_graph(graph_path);
    std::vector<ospan::Demand> demands = load_demands(demands_path);
    OutStream out(out_path);
    ospan::harness::RunSummary summary = ospan::harness::run_stream(g, demands, opts, out.get());
    ospan::harness::print_summary(std::cerr, summary);
    return 0;
}

int cmd_eval(const std::string& run_path, const std::string& graph_path,
             const std::string& demands_path, bool exact) {
    DirectedGraph g = load_graph(graph_path);
    std::vector<ospan::Demand> demands = load_demands(demands_path);
    std::ifstream run_in(run_path);
    if (!run_in) throw std::invalid_argument("cannot open run log: " + run_path);
    ospan::harness::EvalReport report = ospan::harness::evaluate(run_in, g, demands, exact);
    std::cerr << "rounds: " << report.rounds << "\nedges selected: " << report.edges_selected
              << "\nratio: " << report.ratio << "\n";
    if (report.exact_opt) std::cerr << "exact optimum: " << *report.exact_opt << "\n";
    for (const std::string& p : report.problems) std::cerr << "audit: " << p << "\n";
    std::cerr << (report.passed ? "audit passed\n" : "audit FAILED\n");
    return report.passed ? 0 : kExitError;
}

int cmd_covering(const std::string& instance_path) {
    std::ifstream in(instance_path);
    if (!in) throw std::invalid_argument("cannot open instance file: " + instance_path);
    ospan::harness::SparseInstance inst = ospan::harness::read_sparse_instance(in);
    ospan::CoveringState state(ospan::CoveringCost{inst.costs});
    int violated = 0;
    for (const auto& row : inst.vectors)
        if (state.process(row).violated) ++violated;
    nlohmann::json out{{"objective", state.objective()},
                       {"solution", state.solution()},
                       {"rows", inst.vectors.size()},
                       {"violated_fixes", state.total_fixes()},
                       {"phases", state.phase_count()}};
    std::cout << out.dump() << '\n';
    std::cerr << "processed " << inst.vectors.size() << " rows, " << violated << " violated\n";
    return 0;
}

int cmd_packing(const std::string& instance_path, double B, bool scale_feasible) {
    std::ifstream in(instance_path);
    if (!in) throw std::invalid_argument("cannot open instance file: " + instance_path);
    ospan::harness::SparseInstance inst = ospan::harness::read_sparse_instance(in);
    ospan::PackingState state(inst.costs, B);
    for (const auto& col : inst.vectors) state.process_column(col);
    ospan::PackingReport report = state.report();
    nlohmann::json out{{"packing_objective", report.packing_objective},
                       {"covering_objective", report.covering_objective},
                       {"load_over_capacity", report.load_over_capacity},
                       {"b_prime", report.b_prime},
                       {"alpha_ratio", report.alpha_ratio},
                       {"y", scale_feasible ? state.scaled_feasible_y() : state.column_values()}};
    std::cout << out.dump() << '\n';
    return 0;
}

int cmd_montecarlo(const std::string& graph_path, const std::string& demands_path,
                   const std::string& mode_name, std::optional<long long> d,
                   std::optional<double> epsilon, int seeds, std::uint64_t seed0, int workers,
                   const std::string& out_path) {
    DirectedGraph g = load_graph(graph_path);
    std::vector<ospan::Demand> demands = load_demands(demands_path);
    ospan::SpannerParams params =
        ospan::params_for(mode_from_flag(mode_name), std::max(2, g.vertex_count()), seed0, d, epsilon);
    ospan::harness::MarginalStats stats =
        ospan::harness::montecarlo_marginals(g, demands, params, seeds, seed0, workers);

    // Worst deviation between empirical inclusion frequency and the marginal
    // schedule, per round, over fully eligible edges.
    nlohmann::json rounds = nlohmann::json::array();
    for (int i = 0; i < stats.rounds; ++i) {
        double worst = 0.0;
        for (int e = 0; e < g.edge_count(); ++e) {
            if (stats.eligible[static_cast<size_t>(e)] != stats.seeds) continue;
            double freq = static_cast<double>(stats.included[static_cast<size_t>(i)][static_cast<size_t>(e)]) /
                          static_cast<double>(stats.seeds);
            worst = std::max(worst,
                             std::abs(freq - stats.marginals_per_round[static_cast<size_t>(i)]
                                                                      [static_cast<size_t>(e)]));
        }
        rounds.push_back({{"round", i + 1},
                          {"worst_marginal_deviation", worst},
                          {"thick_hit_frequency",
                           static_cast<double>(stats.thick_hits[static_cast<size_t>(i)]) /
                               static_cast<double>(stats.seeds)}});
    }
    nlohmann::json out{{"seeds", stats.seeds}, {"rounds", rounds}};
    OutStream sink(out_path);
    sink.get() << out.dump() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"online pairwise spanners, Steiner forests and primal-dual LP engines"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a graph + demand instance");
    ospan::harness::GenOptions gen_opts;
    std::string gen_graph = "graph.txt", gen_demands = "demands.txt";
    gen->add_option("--kind", gen_opts.kind, "random|layered|allserver|quasimetric");
    gen->add_option("--n", gen_opts.n, "vertex count")->required();
    gen->add_option("--density", gen_opts.density, "edge probability");
    gen->add_option("--seed", gen_opts.seed, "generator seed");
    gen->add_option("--demands", gen_opts.demand_count, "number of demands");
    gen->add_option("--graph-out", gen_graph, "graph output path");
    gen->add_option("--demands-out", gen_demands, "demand output path");

    // run
    auto* run = app.add_subcommand("run", "run the online pipeline over a demand stream");
    std::string run_graph, run_demands, run_mode = "general", run_out = "-";
    ospan::harness::RunOptions run_opts;
    long long run_d = -1;
    double run_eps = -1.0;
    run->add_option("--graph", run_graph, "graph file")->required();
    run->add_option("--demands", run_demands, "demand file")->required();
    run->add_option("--mode", run_mode, "general|bounded-d|quasimetric|all-server|steiner-forest");
    run->add_option("--d", run_d, "maximum allowed distance (bounded-d mode)");
    run->add_option("--epsilon", run_eps, "epsilon (steiner-forest mode)");
    run->add_option("--seed", run_opts.seed, "run seed");
    run->add_flag("--exact", run_opts.exact, "also compute exact desk-scale references");
    run->add_option("--out", run_out, "JSONL output path ('-' for stdout)");

    // eval
    auto* eval = app.add_subcommand("eval", "audit a JSONL run log");
    std::string eval_run, eval_graph, eval_demands;
    bool eval_exact = false;
    eval->add_option("--run", eval_run, "run log path")->required();
    eval->add_option("--graph", eval_graph, "graph file")->required();
    eval->add_option("--demands", eval_demands, "demand file")->required();
    eval->add_flag("--exact", eval_exact, "compare against the exact optimum");

    // covering
    auto* covering = app.add_subcommand("covering", "stream a covering instance online");
    std::string covering_instance;
    covering->add_option("--instance", covering_instance, "instance file")->required();

    // packing
    auto* packing = app.add_subcommand("packing", "stream a packing instance online");
    std::string packing_instance;
    double packing_B = 1.0;
    bool packing_scale = false;
    packing->add_option("--instance", packing_instance, "instance file")->required();
    packing->add_option("--B", packing_B, "positivity parameter")->required();
    packing->add_flag("--scale-feasible", packing_scale, "emit y scaled by B/B'");

    // montecarlo
    auto* mc = app.add_subcommand("montecarlo", "fan out seeded runs and aggregate marginals");
    std::string mc_graph, mc_demands, mc_mode = "general", mc_out = "-";
    int mc_seeds = 1000, mc_workers = 0;
    std::uint64_t mc_seed0 = 0;
    long long mc_d = -1;
    double mc_eps = -1.0;
    mc->add_option("--graph", mc_graph, "graph file")->required();
    mc->add_option("--demands", mc_demands, "demand file")->required();
    mc->add_option("--mode", mc_mode, "parameter profile mode");
    mc->add_option("--d", mc_d, "maximum allowed distance (bounded-d mode)");
    mc->add_option("--epsilon", mc_eps, "epsilon (steiner-forest mode)");
    mc->add_option("--seeds", mc_seeds, "number of seeds");
    mc->add_option("--seed0", mc_seed0, "first seed");
    mc->add_option("--workers", mc_workers, "worker threads (0 = hardware)");
    mc->add_option("--out", mc_out, "aggregate output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(gen_opts, gen_graph, gen_demands);
        if (run->parsed()) {
            run_opts.mode = mode_from_flag(run_mode);
            if (run_d >= 0) run_opts.d = run_d;
            if (run_eps >= 0) run_opts.epsilon = run_eps;
            return cmd_run(run_graph, run_demands, run_opts, run_out);
        }
        if (eval->parsed()) return cmd_eval(eval_run, eval_graph, eval_demands, eval_exact);
        if (covering->parsed()) return cmd_covering(covering_instance);
        if (packing->parsed()) return cmd_packing(packing_instance, packing_B, packing_scale);
        if (mc->parsed())
            return cmd_montecarlo(mc_graph, mc_demands, mc_mode,
                                  mc_d >= 0 ? std::optional<long long>(mc_d) : std::nullopt,
                                  mc_eps >= 0 ? std::optional<double>(mc_eps) : std::nullopt,
                                  mc_seeds, mc_seed0, mc_workers, mc_out);
    } catch (const ospan::InfeasibleDemand& err) {
        std::cerr << "infeasible instance: " << err.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitError;
    }
    return 0;
}
