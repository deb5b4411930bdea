#pragma once

// The full online pairwise-spanner / Steiner-forest pipeline: per-round LP
// updates through the separation oracle, the greedy / arborescence /
// conditional-rounding branches, and a deterministic repair step that keeps
// every processed demand settled.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ospan/covering.hpp"
#include "ospan/graph.hpp"
#include "ospan/rng.hpp"

namespace ospan {

enum class SpannerMode { General, BoundedD, Quasimetric, AllServer, SteinerForest };

std::string to_string(SpannerMode mode);
std::optional<SpannerMode> parse_mode(const std::string& name);

struct SpannerParams {
    SpannerMode mode = SpannerMode::General;
    long long round_threshold = 1;  // T
    double thickness = 1.0;         // t
    std::uint64_t seed = 0;
    long long max_distance = -1;    // d, BoundedD only
    double epsilon = 0.0;           // SteinerForest only
};

// Evaluates the per-mode threshold formulas:
//   General:       T = t = floor(n^(4/5))
//   BoundedD:      T = floor(d^(-4/3) n^(4/3)),  t = d^(1/3) n^(2/3)
//   Quasimetric /
//   AllServer:     T = floor(n^(4/3)),           t = n^(2/3)
//   SteinerForest: T = floor(n^(4/3 - 4eps)),    t = n^(2/3 + eps)
// T is clamped to >= 1. Powers with rational exponents are evaluated in
// integer arithmetic so boundary cases land exactly.
SpannerParams params_for(SpannerMode mode, int n, std::uint64_t seed = 0,
                         std::optional<long long> d = std::nullopt,
                         std::optional<double> epsilon = std::nullopt);

// floor(base^(num/den)) by exact integer search. Exposed for tests.
long long floor_pow_rational(long long base, int num, int den);

enum class Branch { Greedy, ArborescenceAndRound, ConditionalRound };

std::string to_string(Branch branch);

struct RoundOutcome {
    int round = 0;
    Branch branch = Branch::Greedy;
    std::vector<EdgeId> edges_added;
    bool settled = false;
    bool repaired = false;
    double lp_objective = 0.0;
};

// How an edge first entered the selection; '\0' while absent.
//   'g' greedy path, 'd' direct all-server edge, 'a' arborescence,
//   's' random sampling, 'r' repair.
using EdgeOrigin = char;

// Deterministic LP trajectory of a demand stream, reusable across seeds by
// Monte Carlo harnesses (the LP updates do not depend on the randomness).
struct LpSchedule {
    std::vector<std::vector<double>> x_per_round;
    std::vector<double> objective_per_round;
};

LpSchedule capture_lp_schedule(const DirectedGraph& g, const std::vector<Demand>& demands);

class SpannerRun {
public:
    SpannerRun(const DirectedGraph& g, SpannerParams params);
    // Replays a precomputed LP trajectory instead of solving per round.
    SpannerRun(const DirectedGraph& g, SpannerParams params, const LpSchedule& schedule);

    RoundOutcome process_demand(const Demand& dem);
    bool settle_check(const Demand& dem) const;

    const EdgeSet& selected_edges() const { return selected_; }
    int round() const { return round_; }
    double lp_objective() const;
    std::vector<double> lp_solution() const;
    const std::vector<double>& marginals() const { return prev_marginals_; }
    EdgeOrigin edge_origin(EdgeId e) const { return origin_.at(static_cast<size_t>(e)); }
    int edge_added_round(EdgeId e) const { return added_round_.at(static_cast<size_t>(e)); }
    std::uint64_t rng_draws() const { return rng_.draws(); }
    const std::vector<Demand>& processed_demands() const { return seen_; }
    // Roots sampled at the arborescence round (empty before round T).
    const std::vector<Vertex>& arborescence_roots() const { return roots_; }

private:
    const std::vector<double>& lp_step(const Demand& dem);
    void add_edge(EdgeId e, EdgeOrigin origin, std::vector<EdgeId>& added);

    const DirectedGraph& g_;
    SpannerParams params_;
    CoveringState cov_;
    const LpSchedule* schedule_ = nullptr;
    std::vector<double> schedule_x_;  // current round's x when replaying
    EdgeSet selected_;
    std::vector<double> prev_marginals_;  // p^{i-1}
    int round_ = 0;
    CounterRng rng_;
    std::vector<Demand> seen_;
    std::vector<EdgeOrigin> origin_;
    std::vector<int> added_round_;
    std::vector<Vertex> roots_;
};

}  // namespace ospan
