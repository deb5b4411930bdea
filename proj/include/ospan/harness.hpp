#pragma once

// Experiment plumbing: instance generation, demand streaming with JSONL
// round records, run audits, and the multi-seed Monte Carlo driver.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ospan/graph.hpp"
#include "ospan/spanner.hpp"

namespace ospan::harness {

std::vector<Demand> read_demands(std::istream& in);
void write_demands(std::ostream& out, const std::vector<Demand>& demands);

// Shared streaming format for covering rows / packing columns:
// line 1 `n_vars`, line 2 the costs (capacities), then one sparse vector per
// line as `idx:coef` pairs.
struct SparseInstance {
    std::vector<double> costs;
    std::vector<ConstraintRow> vectors;
};

SparseInstance read_sparse_instance(std::istream& in);

struct GenOptions {
    std::string kind = "random";  // random | layered | allserver | quasimetric
    int n = 8;
    double density = 0.3;
    std::uint64_t seed = 0;
    int demand_count = 4;
};

struct Instance {
    DirectedGraph graph;
    std::vector<Demand> demands;
};

Instance generate(const GenOptions& opts);

struct RunOptions {
    SpannerMode mode = SpannerMode::General;
    std::optional<long long> d;
    std::optional<double> epsilon;
    std::uint64_t seed = 0;
    bool exact = false;  // also compute desk-scale exact references
};

struct RunSummary {
    int rounds = 0;
    int edges_selected = 0;
    double lp_objective = 0.0;
    int repairs = 0;
    std::uint64_t rng_draws = 0;
    double lower_bound = 0.0;  // max(sqrt(k), online LP / competitiveness factor)
    double ratio = 0.0;        // edges_selected / lower_bound (or / exact_opt)
    std::optional<int> exact_opt;
    std::optional<double> exact_lp;
};

// Runs the online pipeline over the demand stream, emitting one JSON record
// per round to `jsonl`. Records carry the edge ids added, so runs can be
// audited and replayed.
RunSummary run_stream(const DirectedGraph& g, const std::vector<Demand>& demands,
                      const RunOptions& opts, std::ostream& jsonl);

void print_summary(std::ostream& out, const RunSummary& summary);

struct EvalReport {
    bool passed = true;
    int rounds = 0;
    int edges_selected = 0;
    double ratio = 0.0;
    std::optional<int> exact_opt;
    std::vector<std::string> problems;
};

// Replays a JSONL run log against the instance and audits it: every round's
// demand must be settled by the cumulative edge set, counters must be
// consistent and the LP objective monotone.
EvalReport evaluate(std::istream& jsonl, const DirectedGraph& g, const std::vector<Demand>& demands,
                    bool exact);

struct MarginalStats {
    int seeds = 0;
    int rounds = 0;
    // eligible[e]: seeds in which edge e was never taken by a greedy /
    // direct / arborescence / repair step (so sampling is its only way in).
    std::vector<long> eligible;
    // included[i][e]: eligible seeds in which e was sampled by round i+1.
    std::vector<std::vector<long>> included;
    LpSchedule schedule;
    std::vector<std::vector<double>> marginals_per_round;  // p^i_e
    // thick_hits[i]: seeds whose arborescence roots intersect demand i's
    // local graph (only meaningful for rounds at/after the threshold).
    std::vector<long> thick_hits;
};

// Shares one deterministic LP trajectory across `seeds` independent runs
// (seed0, seed0+1, ...) fanned out over `workers` threads.
MarginalStats montecarlo_marginals(const DirectedGraph& g, const std::vector<Demand>& demands,
                                   const SpannerParams& base_params, int seeds, std::uint64_t seed0,
                                   int workers);

}  // namespace ospan::harness
