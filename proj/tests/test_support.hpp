#pragma once

// Shared helpers for the test suites: deterministic instance generators and
// independent brute-force reference implementations. The reference code here
// is deliberately naive (exhaustive recursion) and does not reuse the
// library's algorithm paths.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "ospan/graph.hpp"
#include "ospan/rng.hpp"

namespace test_support {

using ospan::CounterRng;
using ospan::Demand;
using ospan::DirectedGraph;
using ospan::Edge;
using ospan::EdgeId;
using ospan::kInfLen;
using ospan::Vertex;

inline DirectedGraph random_graph(CounterRng& rng, int n, double density, int max_len) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v) {
            if (u == v || !rng.bernoulli(density)) continue;
            edges.push_back({u, v, 1 + rng.next_below(max_len)});
        }
    return DirectedGraph(n, std::move(edges));
}

// All simple s~>t paths with total length <= d, by plain recursion.
inline void simple_paths_rec(const DirectedGraph& g, Vertex v, Vertex t, std::int64_t budget,
                             std::vector<char>& used, std::vector<EdgeId>& stack,
                             std::vector<std::vector<EdgeId>>& out) {
    if (v == t) {
        out.push_back(stack);
        return;
    }
    used[static_cast<size_t>(v)] = 1;
    for (EdgeId eid : g.out_edges(v)) {
        const Edge& e = g.edge(eid);
        if (used[static_cast<size_t>(e.to)]) continue;
        if (budget != kInfLen && e.len > budget) continue;
        stack.push_back(eid);
        simple_paths_rec(g, e.to, t, budget == kInfLen ? kInfLen : budget - e.len, used, stack, out);
        stack.pop_back();
    }
    used[static_cast<size_t>(v)] = 0;
}

inline std::vector<std::vector<EdgeId>> all_simple_paths(const DirectedGraph& g, Vertex s, Vertex t,
                                                         std::int64_t d) {
    std::vector<std::vector<EdgeId>> out;
    if (s == t) return out;
    std::vector<char> used(static_cast<size_t>(g.vertex_count()), 0);
    std::vector<EdgeId> stack;
    simple_paths_rec(g, s, t, d, used, stack, out);
    return out;
}

// Vertices lying on any s~>t walk of length <= d with at most `max_hops`
// edges (walks, not just simple paths).
inline std::set<Vertex> walk_vertices(const DirectedGraph& g, Vertex s, Vertex t, std::int64_t d,
                                      int max_hops) {
    std::set<Vertex> out;
    std::vector<Vertex> vstack{s};
    auto rec = [&](auto&& self, Vertex v, std::int64_t used, int hops) -> void {
        if (v == t) {
            for (Vertex w : vstack) out.insert(w);
        }
        if (hops == max_hops) return;
        for (EdgeId eid : g.out_edges(v)) {
            const Edge& e = g.edge(eid);
            if (d != kInfLen && used + e.len > d) continue;
            vstack.push_back(e.to);
            self(self, e.to, used + e.len, hops + 1);
            vstack.pop_back();
        }
    };
    rec(rec, s, 0, 0);
    return out;
}

inline std::int64_t path_length(const DirectedGraph& g, const std::vector<EdgeId>& path) {
    std::int64_t len = 0;
    for (EdgeId e : path) len += g.edge(e).len;
    return len;
}

inline double path_weight(const std::vector<EdgeId>& path, const std::vector<double>& z) {
    double w = 0.0;
    for (EdgeId e : path) w += z[static_cast<size_t>(e)];
    return w;
}

// Independent exact optimum: depth-first include/exclude over edge ids with
// a running upper bound. Cross-checks the popcount-ordered enumerator.
inline bool bnb_settles(const DirectedGraph& g, const std::set<EdgeId>& chosen,
                        const std::vector<Demand>& demands) {
    for (const Demand& dem : demands) {
        // Bellman-Ford over chosen edges only.
        std::vector<std::int64_t> dist(static_cast<size_t>(g.vertex_count()), kInfLen);
        dist[static_cast<size_t>(dem.s)] = 0;
        for (int it = 0; it < g.vertex_count(); ++it)
            for (EdgeId eid : chosen) {
                const Edge& e = g.edge(eid);
                if (dist[static_cast<size_t>(e.from)] == kInfLen) continue;
                dist[static_cast<size_t>(e.to)] =
                    std::min(dist[static_cast<size_t>(e.to)], dist[static_cast<size_t>(e.from)] + e.len);
            }
        std::int64_t got = dist[static_cast<size_t>(dem.t)];
        if (got == kInfLen || (!dem.unbounded() && got > dem.d)) return false;
    }
    return true;
}

inline void bnb_rec(const DirectedGraph& g, const std::vector<Demand>& demands, EdgeId next,
                    std::set<EdgeId>& chosen, int& best) {
    if (static_cast<int>(chosen.size()) >= best) return;
    if (bnb_settles(g, chosen, demands)) {
        best = static_cast<int>(chosen.size());
        return;
    }
    if (next >= g.edge_count()) return;
    chosen.insert(next);
    bnb_rec(g, demands, next + 1, chosen, best);
    chosen.erase(next);
    bnb_rec(g, demands, next + 1, chosen, best);
}

inline int bnb_opt(const DirectedGraph& g, const std::vector<Demand>& demands) {
    std::set<EdgeId> chosen;
    int best = g.edge_count() + 1;
    bnb_rec(g, demands, 0, chosen, best);
    return best;
}

}  // namespace test_support
