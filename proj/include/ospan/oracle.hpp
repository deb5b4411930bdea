#pragma once

// Separation machinery for the per-round spanner constraints: an exact
// length-restricted min-weight path solver, a cutting-plane separation
// routine over the per-round constraint polyhedron, and the bridge that
// feeds violated constraints into the online covering engine.

#include <optional>
#include <vector>

#include "ospan/covering.hpp"
#include "ospan/graph.hpp"

namespace ospan {

struct WeightedPath {
    double weight = 0.0;
    std::vector<EdgeId> edges;
};

// Exact minimum of sum z_e over s~>t paths of total length <= d (plain
// min-weight path when d is unbounded). nullopt iff no feasible path.
std::optional<WeightedPath> restricted_min_weight_path(const DirectedGraph& g,
                                                       const std::vector<double>& z,
                                                       const Demand& dem);

// A non-negative edge-weight vector under which every feasible path for the
// round's demand carries weight >= 1 (up to the oracle tolerance).
struct SeparatingConstraint {
    std::vector<double> z;
    int round = -1;
};

struct SeparationResult {
    bool good = false;
    double objective = 0.0;  // <x, z> at the returned certificate
    SeparatingConstraint constraint;
};

// Decides whether the fractional edge vector x supports a unit of feasible
// s~>t path flow; if not, returns a separating constraint with <x, z> < 1.
// Throws InfeasibleDemand when the full graph has no feasible path.
SeparationResult separate(const DirectedGraph& g, const std::vector<double>& x, const Demand& dem,
                          int round = -1);

// Runs the covering engine against separate() until the round's demand is
// good; returns the updated solution. The state must have one variable per
// edge with unit costs.
std::vector<double> solve_round(CoveringState& cov, const DirectedGraph& g, const Demand& dem,
                                int round = -1);

}  // namespace ospan
