#include "ospan/harness.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "ospan/exact.hpp"
#include "ospan/rng.hpp"

namespace ospan::harness {

using nlohmann::json;

std::vector<Demand> read_demands(std::istream& in) {
    std::vector<Demand> demands;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        long long s, t;
        std::string d_tok;
        if (!(ls >> s >> t >> d_tok)) {
            if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
            throw std::invalid_argument("demand line must be 's t d': " + line);
        }
        Demand dem;
        dem.s = static_cast<Vertex>(s);
        dem.t = static_cast<Vertex>(t);
        if (d_tok == "inf") {
            dem.d = kInfLen;
        } else {
            size_t pos = 0;
            dem.d = std::stoll(d_tok, &pos);
            if (pos != d_tok.size()) throw std::invalid_argument("bad target distance: " + d_tok);
            if (dem.d < 0) throw std::invalid_argument("target distance must be non-negative");
        }
        if (dem.s == dem.t) throw std::invalid_argument("demand endpoints must differ");
        demands.push_back(dem);
    }
    return demands;
}

void write_demands(std::ostream& out, const std::vector<Demand>& demands) {
    for (const Demand& dem : demands) {
        out << dem.s << ' ' << dem.t << ' ';
        if (dem.unbounded())
            out << "inf";
        else
            out << dem.d;
        out << '\n';
    }
}

SparseInstance read_sparse_instance(std::istream& in) {
    SparseInstance inst;
    int n_vars = 0;
    if (!(in >> n_vars) || n_vars < 1)
        throw std::invalid_argument("instance header must be a positive variable count");
    inst.costs.resize(static_cast<size_t>(n_vars));
    for (double& c : inst.costs)
        if (!(in >> c)) throw std::invalid_argument("expected " + std::to_string(n_vars) + " costs");
    std::string line;
    std::getline(in, line);  // finish the cost line
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        ConstraintRow row;
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            size_t colon = tok.find(':');
            if (colon == std::string::npos)
                throw std::invalid_argument("expected idx:coef entry, got: " + tok);
            RowEntry entry;
            entry.index = std::stoi(tok.substr(0, colon));
            entry.coef = std::stod(tok.substr(colon + 1));
            row.push_back(entry);
        }
        inst.vectors.push_back(std::move(row));
    }
    return inst;
}

namespace {

std::vector<Edge> random_edges(CounterRng& rng, int n, double density, std::int64_t max_len) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v) {
            if (u == v) continue;
            if (!rng.bernoulli(density)) continue;
            std::int64_t len = max_len <= 1 ? 1 : 1 + rng.next_below(static_cast<int>(max_len));
            edges.push_back({u, v, len});
        }
    return edges;
}

std::vector<Demand> sample_feasible_demands(const DirectedGraph& g, CounterRng& rng, int count) {
    std::vector<Demand> demands;
    const int n = g.vertex_count();
    for (int attempt = 0; attempt < 400 * count && static_cast<int>(demands.size()) < count;
         ++attempt) {
        Vertex s = rng.next_below(n);
        Vertex t = rng.next_below(n);
        if (s == t) continue;
        auto dist = shortest_distances(g, s, Direction::Forward);
        std::int64_t base = dist[static_cast<size_t>(t)];
        if (base == kInfLen) continue;
        Demand dem{s, t, base + rng.next_below(static_cast<int>(std::min<std::int64_t>(base, 20)) + 2)};
        demands.push_back(dem);
    }
    if (static_cast<int>(demands.size()) < count)
        throw std::invalid_argument("graph too sparse to sample feasible demands");
    return demands;
}

}  // namespace

Instance generate(const GenOptions& opts) {
    if (opts.n < 2) throw std::invalid_argument("generator requires n >= 2");
    if (!(opts.density >= 0.0 && opts.density <= 1.0))
        throw std::invalid_argument("density must lie in [0, 1]");
    if (opts.demand_count < 0) throw std::invalid_argument("demand count must be non-negative");
    CounterRng rng(opts.seed);

    if (opts.kind == "random") {
        DirectedGraph g(opts.n, random_edges(rng, opts.n, opts.density, 10));
        auto demands = sample_feasible_demands(g, rng, opts.demand_count);
        return {std::move(g), std::move(demands)};
    }
    if (opts.kind == "layered") {
        // Three layers, edges only between consecutive layers.
        const int per = std::max(1, opts.n / 3);
        std::vector<Edge> edges;
        auto layer_of = [&](Vertex v) { return std::min(2, v / per); };
        for (Vertex u = 0; u < opts.n; ++u)
            for (Vertex v = 0; v < opts.n; ++v) {
                if (layer_of(v) != layer_of(u) + 1) continue;
                if (!rng.bernoulli(std::max(opts.density, 0.25))) continue;
                edges.push_back({u, v, 1 + rng.next_below(3)});
            }
        DirectedGraph g(opts.n, std::move(edges));
        auto demands = sample_feasible_demands(g, rng, opts.demand_count);
        return {std::move(g), std::move(demands)};
    }
    if (opts.kind == "allserver") {
        // Uniform lengths, and every demanded pair keeps its direct edge.
        std::vector<Edge> edges = random_edges(rng, opts.n, opts.density, 1);
        std::vector<Demand> demands;
        std::vector<std::pair<Vertex, Vertex>> pairs;
        for (int i = 0; i < opts.demand_count; ++i) {
            Vertex s = rng.next_below(opts.n);
            Vertex t = rng.next_below(opts.n);
            while (t == s) t = rng.next_below(opts.n);
            pairs.emplace_back(s, t);
            demands.push_back({s, t, 1 + rng.next_below(3)});
        }
        for (auto [s, t] : pairs) {
            bool present = std::any_of(edges.begin(), edges.end(),
                                       [&](const Edge& e) { return e.from == s && e.to == t; });
            if (!present) edges.push_back({s, t, 1});
        }
        return {DirectedGraph(opts.n, std::move(edges)), std::move(demands)};
    }
    if (opts.kind == "quasimetric") {
        // Transitive closure of a uniform-length graph, with shortest-path
        // lengths; closed under composition by construction.
        DirectedGraph base(opts.n, random_edges(rng, opts.n, opts.density, 1));
        std::vector<Edge> edges;
        for (Vertex u = 0; u < opts.n; ++u) {
            auto dist = shortest_distances(base, u, Direction::Forward);
            for (Vertex v = 0; v < opts.n; ++v) {
                if (u == v || dist[static_cast<size_t>(v)] == kInfLen) continue;
                edges.push_back({u, v, dist[static_cast<size_t>(v)]});
            }
        }
        DirectedGraph g(opts.n, std::move(edges));
        auto demands = sample_feasible_demands(g, rng, opts.demand_count);
        return {std::move(g), std::move(demands)};
    }
    throw std::invalid_argument("unknown generator kind: " + opts.kind);
}

RunSummary run_stream(const DirectedGraph& g, const std::vector<Demand>& demands,
                      const RunOptions& opts, std::ostream& jsonl) {
    SpannerParams params = params_for(opts.mode, std::max(2, g.vertex_count()), opts.seed, opts.d,
                                      opts.epsilon);
    SpannerRun run(g, params);
    RunSummary summary;
    for (const Demand& dem : demands) {
        RoundOutcome outcome = run.process_demand(dem);
        json record{{"round", outcome.round},
                    {"branch", to_string(outcome.branch)},
                    {"edges", outcome.edges_added},
                    {"edges_added", outcome.edges_added.size()},
                    {"edges_total", run.selected_edges().size()},
                    {"lp_objective", outcome.lp_objective},
                    {"settled", outcome.settled},
                    {"repaired", outcome.repaired}};
        jsonl << record.dump() << '\n';
        if (outcome.repaired) ++summary.repairs;
    }
    summary.rounds = run.round();
    summary.edges_selected = run.selected_edges().size();
    summary.lp_objective = run.lp_objective();
    summary.rng_draws = run.rng_draws();

    const double k = static_cast<double>(demands.size());
    const double m = static_cast<double>(std::max(1, g.edge_count()));
    double lp_lower = summary.lp_objective / (16.0 * std::log(2.0 * m));
    summary.lower_bound = std::max(std::sqrt(k), lp_lower);
    if (opts.exact) {
        summary.exact_opt = brute_force_opt(g, demands);
        summary.exact_lp = exact_lp_opt(g, demands);
        summary.ratio = *summary.exact_opt > 0
                            ? static_cast<double>(summary.edges_selected) / *summary.exact_opt
                            : (summary.edges_selected > 0 ? std::numeric_limits<double>::infinity() : 0.0);
    } else {
        summary.ratio = summary.lower_bound > 0
                            ? static_cast<double>(summary.edges_selected) / summary.lower_bound
                            : (summary.edges_selected > 0 ? std::numeric_limits<double>::infinity() : 0.0);
    }
    return summary;
}

void print_summary(std::ostream& out, const RunSummary& summary) {
    out << "rounds: " << summary.rounds << "\n"
        << "edges selected: " << summary.edges_selected << "\n"
        << "online lp objective: " << summary.lp_objective << "\n"
        << "repairs fired: " << summary.repairs << "\n"
        << "rng draws: " << summary.rng_draws << "\n"
        << "lower bound: " << summary.lower_bound << "\n";
    if (summary.exact_opt) out << "exact optimum: " << *summary.exact_opt << "\n";
    if (summary.exact_lp) out << "exact lp optimum: " << *summary.exact_lp << "\n";
    out << "ratio: " << summary.ratio << "\n";
}

EvalReport evaluate(std::istream& jsonl, const DirectedGraph& g, const std::vector<Demand>& demands,
                    bool exact) {
    EvalReport report;
    EdgeSet selected(g.edge_count());
    auto fail = [&](const std::string& msg) {
        report.passed = false;
        report.problems.push_back(msg);
    };

    std::string line;
    int expected_round = 0;
    double last_objective = 0.0;
    while (std::getline(jsonl, line)) {
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        json record = json::parse(line);
        ++expected_round;
        if (record.at("round").get<int>() != expected_round)
            fail("round numbering broken at record " + std::to_string(expected_round));
        if (expected_round > static_cast<int>(demands.size())) {
            fail("more records than demands");
            break;
        }
        for (EdgeId e : record.at("edges").get<std::vector<EdgeId>>()) {
            if (e < 0 || e >= g.edge_count()) {
                fail("record " + std::to_string(expected_round) + ": edge id out of range");
                continue;
            }
            if (!selected.insert(e))
                fail("record " + std::to_string(expected_round) + ": edge added twice");
        }
        if (record.at("edges_added").get<size_t>() != record.at("edges").size())
            fail("record " + std::to_string(expected_round) + ": edges_added mismatch");
        if (record.at("edges_total").get<int>() != selected.size())
            fail("record " + std::to_string(expected_round) + ": cumulative edge count mismatch");
        double obj = record.at("lp_objective").get<double>();
        if (obj + 1e-9 < last_objective)
            fail("record " + std::to_string(expected_round) + ": lp objective decreased");
        last_objective = obj;

        const Demand& dem = demands[static_cast<size_t>(expected_round - 1)];
        std::int64_t dist = distance_in_subgraph(g, selected, dem.s, dem.t);
        bool settled = dist != kInfLen && (dem.unbounded() || dist <= dem.d);
        if (!settled) fail("record " + std::to_string(expected_round) + ": demand not settled");
        if (!record.at("settled").get<bool>())
            fail("record " + std::to_string(expected_round) + ": settled flag is false");
    }
    if (expected_round != static_cast<int>(demands.size())) fail("fewer records than demands");

    report.rounds = expected_round;
    report.edges_selected = selected.size();
    if (exact) {
        report.exact_opt = brute_force_opt(g, demands);
        report.ratio = *report.exact_opt > 0
                           ? static_cast<double>(report.edges_selected) / *report.exact_opt
                           : 1.0;
    } else {
        double k = static_cast<double>(demands.size());
        double lower = std::max(1.0, std::sqrt(k));
        report.ratio = static_cast<double>(report.edges_selected) / lower;
    }
    return report;
}

MarginalStats montecarlo_marginals(const DirectedGraph& g, const std::vector<Demand>& demands,
                                   const SpannerParams& base_params, int seeds, std::uint64_t seed0,
                                   int workers) {
    if (seeds <= 0) throw std::invalid_argument("seed count must be positive");
    MarginalStats stats;
    stats.seeds = seeds;
    stats.rounds = static_cast<int>(demands.size());
    stats.schedule = capture_lp_schedule(g, demands);
    const double ln_n = std::log(static_cast<double>(g.vertex_count()));
    for (const auto& x : stats.schedule.x_per_round) {
        std::vector<double> p(x.size());
        for (size_t e = 0; e < x.size(); ++e)
            p[e] = std::min(1.0, x[e] * base_params.thickness * ln_n);
        stats.marginals_per_round.push_back(std::move(p));
    }

    const int m = g.edge_count();
    stats.eligible.assign(static_cast<size_t>(m), 0);
    stats.included.assign(demands.size(), std::vector<long>(static_cast<size_t>(m), 0));
    stats.thick_hits.assign(demands.size(), 0);

    std::vector<std::vector<Vertex>> local_vertices;
    for (const Demand& dem : demands) local_vertices.push_back(local_graph(g, dem));

    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, 64);

    std::mutex merge_mutex;
    auto worker = [&](int begin, int end) {
        MarginalStats local;
        local.eligible.assign(static_cast<size_t>(m), 0);
        local.included.assign(demands.size(), std::vector<long>(static_cast<size_t>(m), 0));
        local.thick_hits.assign(demands.size(), 0);
        for (int si = begin; si < end; ++si) {
            SpannerParams params = base_params;
            params.seed = seed0 + static_cast<std::uint64_t>(si);
            SpannerRun run(g, params, stats.schedule);
            std::vector<char> roots_hit(demands.size(), 0);
            for (size_t i = 0; i < demands.size(); ++i) {
                run.process_demand(demands[i]);
                const auto& roots = run.arborescence_roots();
                for (Vertex w : roots)
                    if (std::binary_search(local_vertices[i].begin(), local_vertices[i].end(), w)) {
                        roots_hit[i] = 1;
                        break;
                    }
            }
            for (size_t i = 0; i < demands.size(); ++i) local.thick_hits[i] += roots_hit[i];
            for (EdgeId e = 0; e < m; ++e) {
                EdgeOrigin origin = run.edge_origin(e);
                if (origin != '\0' && origin != 's') continue;  // touched by a deterministic branch
                ++local.eligible[static_cast<size_t>(e)];
                if (origin == 's') {
                    int added = run.edge_added_round(e);
                    for (size_t i = static_cast<size_t>(added - 1); i < demands.size(); ++i)
                        ++local.included[i][static_cast<size_t>(e)];
                }
            }
        }
        std::scoped_lock lock(merge_mutex);
        for (size_t e = 0; e < local.eligible.size(); ++e) stats.eligible[e] += local.eligible[e];
        for (size_t i = 0; i < local.included.size(); ++i)
            for (size_t e = 0; e < local.included[i].size(); ++e)
                stats.included[i][e] += local.included[i][e];
        for (size_t i = 0; i < local.thick_hits.size(); ++i)
            stats.thick_hits[i] += local.thick_hits[i];
    };

    std::vector<std::thread> pool;
    int chunk = (seeds + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        int begin = w * chunk;
        int end = std::min(seeds, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
    return stats;
}

}  // namespace ospan::harness
