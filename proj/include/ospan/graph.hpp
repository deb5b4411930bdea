#pragma once

// Directed-graph representation and the exact path primitives used by the
// rest of the library: hop-bounded length profiles, cheapest feasible paths,
// local graphs, shortest-path arborescences and subgraph distances.

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ospan {

using Vertex = int;
using EdgeId = int;

// Length sentinel for "unreachable" / "unbounded". Never add to it.
inline constexpr std::int64_t kInfLen = std::numeric_limits<std::int64_t>::max();

struct InfeasibleDemand : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SizeLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Edge {
    Vertex from = -1;
    Vertex to = -1;
    std::int64_t len = 0;
};

// Simple digraph: no self-loops, at most one edge per ordered pair,
// non-negative integral lengths. Edge ids are positions in input order.
class DirectedGraph {
public:
    DirectedGraph(int vertex_count, std::vector<Edge> edges);

    static DirectedGraph parse(std::istream& in);
    void write(std::ostream& out) const;

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(EdgeId e) const { return edges_.at(static_cast<size_t>(e)); }
    const std::vector<Edge>& edges() const { return edges_; }

    // Adjacency lists hold edge ids in ascending order.
    const std::vector<EdgeId>& out_edges(Vertex v) const { return out_.at(static_cast<size_t>(v)); }
    const std::vector<EdgeId>& in_edges(Vertex v) const { return in_.at(static_cast<size_t>(v)); }

    std::optional<EdgeId> find_edge(Vertex from, Vertex to) const;
    std::int64_t max_len() const { return max_len_; }

    void check_vertex(Vertex v) const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> out_;
    std::vector<std::vector<EdgeId>> in_;
    std::int64_t max_len_ = 0;
};

// Terminal pair with target distance; d == kInfLen means "just connect".
struct Demand {
    Vertex s = -1;
    Vertex t = -1;
    std::int64_t d = kInfLen;

    bool unbounded() const { return d == kInfLen; }
};

// Grow-only set of edge ids, bitset-backed.
class EdgeSet {
public:
    EdgeSet() = default;
    explicit EdgeSet(int edge_count) : bits_(static_cast<size_t>(edge_count), false) {}

    bool contains(EdgeId e) const { return bits_.at(static_cast<size_t>(e)); }
    // Returns true if the edge was newly inserted.
    bool insert(EdgeId e);
    int size() const { return count_; }
    int capacity() const { return static_cast<int>(bits_.size()); }
    std::vector<EdgeId> to_vector() const;

private:
    std::vector<bool> bits_;
    int count_ = 0;
};

enum class Direction { Forward, Reverse };

// minlen[v][h] = minimum total length of a source~>v (Forward) or v~>source
// (Reverse) walk using at most h edges, h = 0..n-1. kInfLen if none.
std::vector<std::vector<std::int64_t>> hop_length_profile(const DirectedGraph& g, Vertex source,
                                                          Direction dir);

// Minimum-hop s~>t path of total length <= d; ties broken by
// lexicographically smallest edge-id sequence. nullopt if no such path.
std::optional<std::vector<EdgeId>> cheapest_feasible_path(const DirectedGraph& g, Vertex s,
                                                          Vertex t, std::int64_t d);

// Plain single-source shortest distances (Dijkstra); kInfLen if unreachable.
std::vector<std::int64_t> shortest_distances(const DirectedGraph& g, Vertex source, Direction dir);

// V^i = { v : dist(s,v) + dist(v,t) <= d }, ascending vertex ids.
std::vector<Vertex> local_graph(const DirectedGraph& g, const Demand& dem);

enum class Thickness { Thin, Thick };

// Thick iff |local_graph| >= t_param. Requires t_param > 0.
Thickness classify_thickness(const DirectedGraph& g, const Demand& dem, double t_param);

enum class Arborescence { In, Out };

// Shortest-path arborescence rooted at root: for every vertex reachable in
// the given direction it contains a root~>v (Out) or v~>root (In) path of
// exact shortest length; at most n-1 edges.
EdgeSet shortest_path_arborescence(const DirectedGraph& g, Vertex root, Arborescence kind);

// Exact shortest s~>t length restricted to the given edge subset.
std::int64_t distance_in_subgraph(const DirectedGraph& g, const EdgeSet& edges, Vertex s, Vertex t);

}  // namespace ospan
