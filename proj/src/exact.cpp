#include "ospan/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>

namespace ospan {

namespace {

// Shortest s~>t length over the edges enabled in `mask` (bit per edge id).
// Bellman-Ford; the brute-force search only runs on graphs with <= 20 edges.
std::int64_t masked_distance(const DirectedGraph& g, std::uint32_t mask, Vertex s, Vertex t) {
    const int n = g.vertex_count();
    std::vector<std::int64_t> dist(static_cast<size_t>(n), kInfLen);
    dist[static_cast<size_t>(s)] = 0;
    for (int round = 0; round < n; ++round) {
        bool changed = false;
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            if (!(mask >> e & 1u)) continue;
            const Edge& edge = g.edge(e);
            std::int64_t base = dist[static_cast<size_t>(edge.from)];
            if (base == kInfLen) continue;
            if (base + edge.len < dist[static_cast<size_t>(edge.to)]) {
                dist[static_cast<size_t>(edge.to)] = base + edge.len;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return dist[static_cast<size_t>(t)];
}

bool settles_all(const DirectedGraph& g, std::uint32_t mask, const std::vector<Demand>& demands) {
    for (const Demand& dem : demands) {
        std::int64_t d = masked_distance(g, mask, dem.s, dem.t);
        if (d == kInfLen) return false;
        if (!dem.unbounded() && d > dem.d) return false;
    }
    return true;
}

}  // namespace

std::vector<std::vector<EdgeId>> enumerate_feasible_paths(const DirectedGraph& g, const Demand& dem,
                                                          int cap) {
    g.check_vertex(dem.s);
    g.check_vertex(dem.t);
    std::vector<std::vector<EdgeId>> paths;
    if (dem.s == dem.t) return paths;
    const auto to_t = shortest_distances(g, dem.t, Direction::Reverse);

    std::vector<char> visited(static_cast<size_t>(g.vertex_count()), 0);
    std::vector<EdgeId> stack;
    auto dfs = [&](auto&& self, Vertex v, std::int64_t used) -> void {
        if (v == dem.t) {
            if (static_cast<int>(paths.size()) >= cap)
                throw SizeLimit("feasible path enumeration exceeded cap");
            paths.push_back(stack);
            return;
        }
        visited[static_cast<size_t>(v)] = 1;
        for (EdgeId eid : g.out_edges(v)) {
            const Edge& e = g.edge(eid);
            if (visited[static_cast<size_t>(e.to)]) continue;
            std::int64_t tail = to_t[static_cast<size_t>(e.to)];
            if (tail == kInfLen) continue;
            if (!dem.unbounded() && used + e.len + tail > dem.d) continue;
            stack.push_back(eid);
            self(self, e.to, used + e.len);
            stack.pop_back();
        }
        visited[static_cast<size_t>(v)] = 0;
    };
    dfs(dfs, dem.s, 0);
    return paths;
}

int brute_force_opt(const DirectedGraph& g, const std::vector<Demand>& demands) {
    const int m = g.edge_count();
    if (m > 20) throw SizeLimit("brute-force optimum requires at most 20 edges");
    const std::uint32_t full = m == 32 ? 0xFFFFFFFFu : (1u << m) - 1u;
    if (!settles_all(g, full, demands))
        throw InfeasibleDemand("some demand cannot be settled in the full graph");
    if (demands.empty()) return 0;

    // Per-demand prefilter: the edges lying on any feasible path, and the
    // minimum number of edges a settling subset must take from them.
    std::vector<std::uint32_t> local_mask(demands.size(), 0);
    std::vector<int> min_hops(demands.size(), 0);
    int lower = 0;
    for (size_t i = 0; i < demands.size(); ++i) {
        const Demand& dem = demands[i];
        auto from_s = shortest_distances(g, dem.s, Direction::Forward);
        auto to_t = shortest_distances(g, dem.t, Direction::Reverse);
        for (EdgeId e = 0; e < m; ++e) {
            const Edge& edge = g.edge(e);
            std::int64_t a = from_s[static_cast<size_t>(edge.from)];
            std::int64_t b = to_t[static_cast<size_t>(edge.to)];
            if (a == kInfLen || b == kInfLen) continue;
            if (dem.unbounded() || a + edge.len + b <= dem.d) local_mask[i] |= 1u << e;
        }
        auto path = cheapest_feasible_path(g, dem.s, dem.t, dem.d);
        min_hops[i] = static_cast<int>(path->size());
        lower = std::max(lower, min_hops[i]);
    }

    for (int size = lower; size <= m; ++size) {
        if (size == 0) {
            if (settles_all(g, 0, demands)) return 0;
            continue;
        }
        // Gosper's hack: all masks with `size` bits set, ascending.
        std::uint32_t mask = (1u << size) - 1u;
        while (mask <= full) {
            bool plausible = true;
            for (size_t i = 0; i < demands.size(); ++i) {
                if (std::popcount(mask & local_mask[i]) < min_hops[i]) {
                    plausible = false;
                    break;
                }
            }
            if (plausible && settles_all(g, mask, demands)) return size;
            std::uint32_t c = mask & -mask;
            std::uint32_t r = mask + c;
            if (r == 0) break;
            mask = ((r ^ mask) >> 2) / c | r;
        }
    }
    throw std::logic_error("brute_force_opt: full edge set should have settled all demands");
}

double exact_lp_opt(const DirectedGraph& g, const std::vector<Demand>& demands, int max_paths) {
    const int m = g.edge_count();
    std::vector<std::vector<std::vector<EdgeId>>> all_paths;
    int total = 0;
    for (const Demand& dem : demands) {
        auto paths = enumerate_feasible_paths(g, dem, max_paths - total);
        if (paths.empty()) throw InfeasibleDemand("demand has no feasible path");
        total += static_cast<int>(paths.size());
        all_paths.push_back(std::move(paths));
    }

    // Variables: x_e for each edge, then y_P per demand path.
    DenseLP lp;
    lp.sense = DenseLP::Sense::Min;
    lp.objective.assign(static_cast<size_t>(m) + static_cast<size_t>(total), 0.0);
    for (int e = 0; e < m; ++e) lp.objective[static_cast<size_t>(e)] = 1.0;

    size_t y_base = static_cast<size_t>(m);
    for (const auto& paths : all_paths) {
        // sum_P y_P >= 1
        DenseLP::Row cover;
        cover.coeffs.assign(lp.objective.size(), 0.0);
        cover.rel = '>';
        cover.rhs = 1.0;
        for (size_t p = 0; p < paths.size(); ++p) cover.coeffs[y_base + p] = 1.0;
        lp.rows.push_back(std::move(cover));

        // x_e - sum_{P : e in P} y_P >= 0 for every edge touched by P_i.
        std::map<EdgeId, std::vector<size_t>> by_edge;
        for (size_t p = 0; p < paths.size(); ++p)
            for (EdgeId e : paths[p]) by_edge[e].push_back(y_base + p);
        for (const auto& [e, ys] : by_edge) {
            DenseLP::Row cap;
            cap.coeffs.assign(lp.objective.size(), 0.0);
            cap.rel = '>';
            cap.rhs = 0.0;
            cap.coeffs[static_cast<size_t>(e)] = 1.0;
            for (size_t yv : ys) cap.coeffs[yv] -= 1.0;
            lp.rows.push_back(std::move(cap));
        }
        y_base += paths.size();
    }

    LPResult res = solve_dense_lp(lp);
    if (res.status != LPStatus::Optimal)
        throw std::logic_error("exact_lp_opt: relaxation must be solvable");
    return res.objective;
}

double exact_flow_value(const DirectedGraph& g, const std::vector<double>& x, const Demand& dem,
                        int max_paths) {
    if (static_cast<int>(x.size()) != g.edge_count())
        throw std::invalid_argument("capacity vector size does not match edge count");
    auto paths = enumerate_feasible_paths(g, dem, max_paths);
    if (paths.empty()) return 0.0;

    DenseLP lp;
    lp.sense = DenseLP::Sense::Max;
    lp.objective.assign(paths.size(), 1.0);
    std::map<EdgeId, std::vector<size_t>> by_edge;
    for (size_t p = 0; p < paths.size(); ++p)
        for (EdgeId e : paths[p]) by_edge[e].push_back(p);
    for (const auto& [e, ys] : by_edge) {
        DenseLP::Row cap;
        cap.coeffs.assign(paths.size(), 0.0);
        cap.rel = '<';
        cap.rhs = x[static_cast<size_t>(e)];
        for (size_t p : ys) cap.coeffs[p] = 1.0;
        lp.rows.push_back(std::move(cap));
    }

    LPResult res = solve_dense_lp(lp);
    if (res.status != LPStatus::Optimal) throw std::logic_error("exact_flow_value: LP must be bounded");
    return res.objective;
}

CoveringLPResult exact_covering_lp(const std::vector<double>& c,
                                   const std::vector<ConstraintRow>& rows) {
    for (double cj : c)
        if (!(cj > 0)) throw std::invalid_argument("covering costs must be strictly positive");
    DenseLP lp;
    lp.sense = DenseLP::Sense::Min;
    lp.objective = c;
    for (const ConstraintRow& row : rows) {
        DenseLP::Row r;
        r.coeffs.assign(c.size(), 0.0);
        r.rel = '>';
        r.rhs = 1.0;
        for (const RowEntry& e : row) {
            if (e.index < 0 || e.index >= static_cast<int>(c.size()))
                throw std::invalid_argument("row index out of range");
            r.coeffs[static_cast<size_t>(e.index)] += e.coef;
        }
        lp.rows.push_back(std::move(r));
    }
    LPResult res = solve_dense_lp(lp);
    return {res.status, res.objective, res.x};
}

}  // namespace ospan
