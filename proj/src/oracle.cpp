#include "ospan/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>

#include "ospan/simplex.hpp"

namespace ospan {

namespace {

constexpr double kGoodTol = 1e-7;
constexpr int kMaxWorkingPaths = 10000;
constexpr double kInfWeight = std::numeric_limits<double>::infinity();

// Plain min-z-weight path, for unbounded target distances.
std::optional<WeightedPath> min_weight_path(const DirectedGraph& g, const std::vector<double>& z,
                                            Vertex s, Vertex t) {
    const int n = g.vertex_count();
    std::vector<double> dist(static_cast<size_t>(n), kInfWeight);
    std::vector<EdgeId> parent(static_cast<size_t>(n), -1);
    dist[static_cast<size_t>(s)] = 0.0;
    using Item = std::pair<double, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.push({0.0, s});
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d != dist[static_cast<size_t>(v)]) continue;
        for (EdgeId eid : g.out_edges(v)) {
            const Edge& e = g.edge(eid);
            double cand = d + z[static_cast<size_t>(eid)];
            if (cand < dist[static_cast<size_t>(e.to)]) {
                dist[static_cast<size_t>(e.to)] = cand;
                parent[static_cast<size_t>(e.to)] = eid;
                heap.push({cand, e.to});
            }
        }
    }
    if (dist[static_cast<size_t>(t)] == kInfWeight) return std::nullopt;
    WeightedPath out;
    out.weight = dist[static_cast<size_t>(t)];
    for (Vertex v = t; v != s;) {
        EdgeId eid = parent[static_cast<size_t>(v)];
        out.edges.push_back(eid);
        v = g.edge(eid).from;
    }
    std::reverse(out.edges.begin(), out.edges.end());
    return out;
}

}  // namespace

std::optional<WeightedPath> restricted_min_weight_path(const DirectedGraph& g,
                                                       const std::vector<double>& z,
                                                       const Demand& dem) {
    if (static_cast<int>(z.size()) != g.edge_count())
        throw std::invalid_argument("weight vector size does not match edge count");
    for (double w : z)
        if (w < 0) throw std::invalid_argument("edge weights must be non-negative");
    g.check_vertex(dem.s);
    g.check_vertex(dem.t);
    if (dem.s == dem.t) return WeightedPath{};

    const int n = g.vertex_count();
    // A budget at least (n-1) * max length never binds for simple paths.
    const std::int64_t slack_budget =
        static_cast<std::int64_t>(n - 1) * std::max<std::int64_t>(g.max_len(), 1);
    if (dem.unbounded() || dem.d >= slack_budget) return min_weight_path(g, z, dem.s, dem.t);
    if (dem.d < 0) return std::nullopt;

    const std::int64_t budget = dem.d;
    if ((budget + 1) * static_cast<std::int64_t>(n) > 200'000'000)
        throw SizeLimit("restricted path table too large");

    // cost[l][v]: min weight of an s~>v walk of total length exactly l.
    // Within each length layer, zero-length edges are settled by Dijkstra;
    // positive-length edges then propagate into later layers.
    const size_t layers = static_cast<size_t>(budget) + 1;
    std::vector<std::vector<double>> cost(layers, std::vector<double>(static_cast<size_t>(n), kInfWeight));
    std::vector<std::vector<EdgeId>> parent(layers, std::vector<EdgeId>(static_cast<size_t>(n), -1));
    cost[0][static_cast<size_t>(dem.s)] = 0.0;

    for (std::int64_t l = 0; l <= budget; ++l) {
        auto& layer = cost[static_cast<size_t>(l)];
        using Item = std::pair<double, Vertex>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        for (int v = 0; v < n; ++v)
            if (layer[static_cast<size_t>(v)] < kInfWeight) heap.push({layer[static_cast<size_t>(v)], v});
        while (!heap.empty()) {
            auto [d, v] = heap.top();
            heap.pop();
            if (d != layer[static_cast<size_t>(v)]) continue;
            for (EdgeId eid : g.out_edges(v)) {
                const Edge& e = g.edge(eid);
                if (e.len != 0) continue;
                double cand = d + z[static_cast<size_t>(eid)];
                if (cand < layer[static_cast<size_t>(e.to)]) {
                    layer[static_cast<size_t>(e.to)] = cand;
                    parent[static_cast<size_t>(l)][static_cast<size_t>(e.to)] = eid;
                    heap.push({cand, e.to});
                }
            }
        }
        for (int v = 0; v < n; ++v) {
            double d = layer[static_cast<size_t>(v)];
            if (d == kInfWeight) continue;
            for (EdgeId eid : g.out_edges(v)) {
                const Edge& e = g.edge(eid);
                if (e.len == 0 || l + e.len > budget) continue;
                auto& cell = cost[static_cast<size_t>(l + e.len)][static_cast<size_t>(e.to)];
                if (d + z[static_cast<size_t>(eid)] < cell) {
                    cell = d + z[static_cast<size_t>(eid)];
                    parent[static_cast<size_t>(l + e.len)][static_cast<size_t>(e.to)] = eid;
                }
            }
        }
    }

    std::int64_t best_layer = -1;
    double best = kInfWeight;
    for (std::int64_t l = 0; l <= budget; ++l) {
        double d = cost[static_cast<size_t>(l)][static_cast<size_t>(dem.t)];
        if (d < best) {
            best = d;
            best_layer = l;
        }
    }
    if (best_layer < 0) return std::nullopt;

    WeightedPath out;
    out.weight = best;
    Vertex v = dem.t;
    std::int64_t l = best_layer;
    while (v != dem.s || l != 0) {
        EdgeId eid = parent[static_cast<size_t>(l)][static_cast<size_t>(v)];
        if (eid < 0) throw std::logic_error("restricted_min_weight_path: broken parent chain");
        out.edges.push_back(eid);
        const Edge& e = g.edge(eid);
        v = e.from;
        l -= e.len;
    }
    std::reverse(out.edges.begin(), out.edges.end());
    return out;
}

SeparationResult separate(const DirectedGraph& g, const std::vector<double>& x, const Demand& dem,
                          int round) {
    if (static_cast<int>(x.size()) != g.edge_count())
        throw std::invalid_argument("edge vector size does not match edge count");
    for (double v : x)
        if (v < 0) throw std::invalid_argument("edge values must be non-negative");
    if (dem.s == dem.t) throw std::invalid_argument("demand endpoints must differ");

    SeparationResult result;
    result.constraint.round = round;
    result.constraint.z.assign(x.size(), 0.0);

    // Cutting planes: keep a working set of feasible paths, each demanding
    // z-weight >= 1, and let the exact restricted path solver hunt for a
    // cheaper feasible path under the current z.
    std::vector<std::vector<EdgeId>> working;
    std::vector<EdgeId> vars;           // edges appearing in the working set
    std::vector<int> var_of_edge(x.size(), -1);

    while (true) {
        std::optional<WeightedPath> cheapest = restricted_min_weight_path(g, result.constraint.z, dem);
        if (!cheapest) throw InfeasibleDemand("no feasible path for demand");
        if (cheapest->weight >= 1.0 - kGoodTol) break;
        if (static_cast<int>(working.size()) >= kMaxWorkingPaths)
            throw SizeLimit("separation working set exceeded 10000 paths");
        working.push_back(cheapest->edges);
        for (EdgeId e : cheapest->edges) {
            if (var_of_edge[static_cast<size_t>(e)] < 0) {
                var_of_edge[static_cast<size_t>(e)] = static_cast<int>(vars.size());
                vars.push_back(e);
            }
        }

        DenseLP lp;
        lp.sense = DenseLP::Sense::Min;
        lp.objective.resize(vars.size());
        for (size_t k = 0; k < vars.size(); ++k)
            lp.objective[k] = x[static_cast<size_t>(vars[k])];
        for (const auto& path : working) {
            DenseLP::Row row;
            row.coeffs.assign(vars.size(), 0.0);
            row.rel = '>';
            row.rhs = 1.0;
            for (EdgeId e : path) row.coeffs[static_cast<size_t>(var_of_edge[static_cast<size_t>(e)])] = 1.0;
            lp.rows.push_back(std::move(row));
        }
        LPResult lp_result = solve_dense_lp(lp);
        if (lp_result.status != LPStatus::Optimal)
            throw std::logic_error("separation LP must have an optimum");
        std::fill(result.constraint.z.begin(), result.constraint.z.end(), 0.0);
        for (size_t k = 0; k < vars.size(); ++k)
            result.constraint.z[static_cast<size_t>(vars[k])] = std::max(0.0, lp_result.x[k]);
    }

    double obj = 0.0;
    for (size_t e = 0; e < x.size(); ++e) obj += x[e] * result.constraint.z[e];
    result.objective = obj;
    result.good = obj >= 1.0 - kGoodTol;
    return result;
}

std::vector<double> solve_round(CoveringState& cov, const DirectedGraph& g, const Demand& dem,
                                int round) {
    if (cov.n_vars() != g.edge_count())
        throw std::invalid_argument("covering state must have one variable per edge");
    for (double c : cov.costs())
        if (c != 1.0) throw std::invalid_argument("covering state must carry unit edge costs");

    cov.process_with_oracle([&](const std::vector<double>& x) -> std::optional<ConstraintRow> {
        SeparationResult res = separate(g, x, dem, round);
        if (res.good) return std::nullopt;
        ConstraintRow row;
        for (size_t e = 0; e < res.constraint.z.size(); ++e)
            if (res.constraint.z[e] > 0)
                row.push_back({static_cast<int>(e), res.constraint.z[e]});
        return row;
    });
    return cov.solution();
}

}  // namespace ospan
