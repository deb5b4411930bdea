#include "ospan/graph.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <sstream>

namespace ospan {

DirectedGraph::DirectedGraph(int vertex_count, std::vector<Edge> edges)
    : n_(vertex_count), edges_(std::move(edges)) {
    if (n_ < 0) throw std::invalid_argument("vertex count must be non-negative");
    out_.assign(static_cast<size_t>(n_), {});
    in_.assign(static_cast<size_t>(n_), {});
    std::map<std::pair<Vertex, Vertex>, EdgeId> seen;
    for (EdgeId id = 0; id < static_cast<EdgeId>(edges_.size()); ++id) {
        const Edge& e = edges_[static_cast<size_t>(id)];
        check_vertex(e.from);
        check_vertex(e.to);
        if (e.from == e.to) throw std::invalid_argument("self-loop rejected");
        if (e.len < 0) throw std::invalid_argument("negative edge length rejected");
        if (!seen.emplace(std::make_pair(e.from, e.to), id).second)
            throw std::invalid_argument("duplicate edge rejected");
        out_[static_cast<size_t>(e.from)].push_back(id);
        in_[static_cast<size_t>(e.to)].push_back(id);
        max_len_ = std::max(max_len_, e.len);
    }
}

void DirectedGraph::check_vertex(Vertex v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("vertex id out of range: " + std::to_string(v));
}

std::optional<EdgeId> DirectedGraph::find_edge(Vertex from, Vertex to) const {
    check_vertex(from);
    check_vertex(to);
    for (EdgeId e : out_[static_cast<size_t>(from)])
        if (edges_[static_cast<size_t>(e)].to == to) return e;
    return std::nullopt;
}

DirectedGraph DirectedGraph::parse(std::istream& in) {
    long long n = 0, m = 0;
    if (!(in >> n >> m)) throw std::invalid_argument("graph header: expected 'n m'");
    if (n < 0 || m < 0) throw std::invalid_argument("graph header: negative counts");
    std::vector<Edge> edges;
    edges.reserve(static_cast<size_t>(m));
    for (long long i = 0; i < m; ++i) {
        long long u = 0, v = 0;
        std::string len_tok;
        if (!(in >> u >> v >> len_tok))
            throw std::invalid_argument("graph edge line " + std::to_string(i) + ": expected 'u v len'");
        // Lengths must be integral; reject anything else at parse time.
        std::int64_t len = 0;
        size_t pos = 0;
        try {
            len = std::stoll(len_tok, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("non-integer edge length: " + len_tok);
        }
        if (pos != len_tok.size()) throw std::invalid_argument("non-integer edge length: " + len_tok);
        edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), len});
    }
    return DirectedGraph(static_cast<int>(n), std::move(edges));
}

void DirectedGraph::write(std::ostream& out) const {
    out << n_ << ' ' << edges_.size() << '\n';
    for (const Edge& e : edges_) out << e.from << ' ' << e.to << ' ' << e.len << '\n';
}

bool EdgeSet::insert(EdgeId e) {
    if (bits_.at(static_cast<size_t>(e))) return false;
    bits_[static_cast<size_t>(e)] = true;
    ++count_;
    return true;
}

std::vector<EdgeId> EdgeSet::to_vector() const {
    std::vector<EdgeId> out;
    out.reserve(static_cast<size_t>(count_));
    for (size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) out.push_back(static_cast<EdgeId>(i));
    return out;
}

std::vector<std::vector<std::int64_t>> hop_length_profile(const DirectedGraph& g, Vertex source,
                                                          Direction dir) {
    g.check_vertex(source);
    const int n = g.vertex_count();
    std::vector<std::vector<std::int64_t>> minlen(static_cast<size_t>(n),
                                                  std::vector<std::int64_t>(static_cast<size_t>(n), kInfLen));
    minlen[static_cast<size_t>(source)][0] = 0;
    for (int h = 1; h < n; ++h) {
        for (int v = 0; v < n; ++v)
            minlen[static_cast<size_t>(v)][static_cast<size_t>(h)] =
                minlen[static_cast<size_t>(v)][static_cast<size_t>(h - 1)];
        for (const Edge& e : g.edges()) {
            // Forward relaxes u->v away from source; Reverse walks v~>source.
            Vertex tail = dir == Direction::Forward ? e.from : e.to;
            Vertex head = dir == Direction::Forward ? e.to : e.from;
            std::int64_t base = minlen[static_cast<size_t>(tail)][static_cast<size_t>(h - 1)];
            if (base == kInfLen) continue;
            std::int64_t cand = base + e.len;
            auto& cell = minlen[static_cast<size_t>(head)][static_cast<size_t>(h)];
            cell = std::min(cell, cand);
        }
    }
    return minlen;
}

namespace {

// Dijkstra over a filtered edge set; returns distance array.
template <typename Pred>
std::vector<std::int64_t> dijkstra(const DirectedGraph& g, Vertex source, Direction dir, Pred use_edge) {
    const int n = g.vertex_count();
    std::vector<std::int64_t> dist(static_cast<size_t>(n), kInfLen);
    dist[static_cast<size_t>(source)] = 0;
    using Item = std::pair<std::int64_t, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.push({0, source});
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d != dist[static_cast<size_t>(v)]) continue;
        const auto& adj = dir == Direction::Forward ? g.out_edges(v) : g.in_edges(v);
        for (EdgeId eid : adj) {
            if (!use_edge(eid)) continue;
            const Edge& e = g.edge(eid);
            Vertex u = dir == Direction::Forward ? e.to : e.from;
            std::int64_t cand = d + e.len;
            if (cand < dist[static_cast<size_t>(u)]) {
                dist[static_cast<size_t>(u)] = cand;
                heap.push({cand, u});
            }
        }
    }
    return dist;
}

}  // namespace

std::vector<std::int64_t> shortest_distances(const DirectedGraph& g, Vertex source, Direction dir) {
    g.check_vertex(source);
    return dijkstra(g, source, dir, [](EdgeId) { return true; });
}

std::optional<std::vector<EdgeId>> cheapest_feasible_path(const DirectedGraph& g, Vertex s, Vertex t,
                                                          std::int64_t d) {
    g.check_vertex(s);
    g.check_vertex(t);
    if (s == t) return std::vector<EdgeId>{};
    const int n = g.vertex_count();
    auto rev = hop_length_profile(g, t, Direction::Reverse);  // rev[v][h]: v ~> t
    int hops = -1;
    for (int h = 0; h < n; ++h) {
        std::int64_t best = rev[static_cast<size_t>(s)][static_cast<size_t>(h)];
        if (best != kInfLen && (d == kInfLen || best <= d)) {
            hops = h;
            break;
        }
    }
    if (hops < 0) return std::nullopt;

    // Greedy lexicographic reconstruction: at each step take the smallest
    // edge id that still admits a completion within the remaining hops and
    // length budget.
    std::vector<EdgeId> path;
    Vertex v = s;
    std::int64_t budget = d;
    for (int left = hops; left > 0; --left) {
        bool advanced = false;
        for (EdgeId eid : g.out_edges(v)) {
            const Edge& e = g.edge(eid);
            std::int64_t tail = rev[static_cast<size_t>(e.to)][static_cast<size_t>(left - 1)];
            if (tail == kInfLen) continue;
            if (budget != kInfLen && e.len + tail > budget) continue;
            path.push_back(eid);
            if (budget != kInfLen) budget -= e.len;
            v = e.to;
            advanced = true;
            break;
        }
        if (!advanced) throw std::logic_error("cheapest_feasible_path: reconstruction failed");
    }
    return path;
}

std::vector<Vertex> local_graph(const DirectedGraph& g, const Demand& dem) {
    g.check_vertex(dem.s);
    g.check_vertex(dem.t);
    auto from_s = shortest_distances(g, dem.s, Direction::Forward);
    auto to_t = shortest_distances(g, dem.t, Direction::Reverse);
    std::vector<Vertex> verts;
    for (int v = 0; v < g.vertex_count(); ++v) {
        std::int64_t a = from_s[static_cast<size_t>(v)];
        std::int64_t b = to_t[static_cast<size_t>(v)];
        if (a == kInfLen || b == kInfLen) continue;
        if (dem.unbounded() || a + b <= dem.d) verts.push_back(v);
    }
    return verts;
}

Thickness classify_thickness(const DirectedGraph& g, const Demand& dem, double t_param) {
    if (!(t_param > 0)) throw std::invalid_argument("thickness parameter must be positive");
    return static_cast<double>(local_graph(g, dem).size()) >= t_param ? Thickness::Thick
                                                                      : Thickness::Thin;
}

EdgeSet shortest_path_arborescence(const DirectedGraph& g, Vertex root, Arborescence kind) {
    g.check_vertex(root);
    Direction dir = kind == Arborescence::Out ? Direction::Forward : Direction::Reverse;
    const int n = g.vertex_count();
    std::vector<std::int64_t> dist(static_cast<size_t>(n), kInfLen);
    std::vector<EdgeId> parent(static_cast<size_t>(n), -1);
    dist[static_cast<size_t>(root)] = 0;
    using Item = std::pair<std::int64_t, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.push({0, root});
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d != dist[static_cast<size_t>(v)]) continue;
        const auto& adj = dir == Direction::Forward ? g.out_edges(v) : g.in_edges(v);
        for (EdgeId eid : adj) {
            const Edge& e = g.edge(eid);
            Vertex u = dir == Direction::Forward ? e.to : e.from;
            std::int64_t cand = d + e.len;
            if (cand < dist[static_cast<size_t>(u)]) {
                dist[static_cast<size_t>(u)] = cand;
                parent[static_cast<size_t>(u)] = eid;
                heap.push({cand, u});
            }
        }
    }
    EdgeSet tree(g.edge_count());
    for (int v = 0; v < n; ++v)
        if (parent[static_cast<size_t>(v)] >= 0) tree.insert(parent[static_cast<size_t>(v)]);
    return tree;
}

std::int64_t distance_in_subgraph(const DirectedGraph& g, const EdgeSet& edges, Vertex s, Vertex t) {
    g.check_vertex(s);
    g.check_vertex(t);
    if (edges.capacity() != g.edge_count())
        throw std::invalid_argument("edge set does not match graph");
    auto dist = dijkstra(g, s, Direction::Forward, [&](EdgeId e) { return edges.contains(e); });
    return dist[static_cast<size_t>(t)];
}

}  // namespace ospan
