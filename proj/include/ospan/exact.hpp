#pragma once

// Desk-scale ground truth: exact optimum by subset enumeration, exact LP
// values by explicit path enumeration, and the offline covering LP. These
// back the test suites and the --exact reporting mode.

#include <vector>

#include "ospan/covering.hpp"
#include "ospan/graph.hpp"
#include "ospan/simplex.hpp"

namespace ospan {

// All simple s~>t paths of total length <= d, as edge-id sequences in
// ascending DFS order. Throws SizeLimit past `cap` paths.
std::vector<std::vector<EdgeId>> enumerate_feasible_paths(const DirectedGraph& g, const Demand& dem,
                                                          int cap = 10000);

// Minimum number of edges settling every demand, by popcount-ordered subset
// enumeration with early exit. Requires |E| <= 20.
int brute_force_opt(const DirectedGraph& g, const std::vector<Demand>& demands);

// Exact optimum of the path-based spanner relaxation (fractional edges and
// per-demand unit path flow).
double exact_lp_opt(const DirectedGraph& g, const std::vector<Demand>& demands,
                    int max_paths = 10000);

// Maximum feasible-path flow through edge capacities x for one demand.
double exact_flow_value(const DirectedGraph& g, const std::vector<double>& x, const Demand& dem,
                        int max_paths = 10000);

struct CoveringLPResult {
    LPStatus status = LPStatus::Optimal;
    double value = 0.0;
    std::vector<double> x;
};

// Offline optimum of min <c, x> s.t. every row >= 1, x >= 0.
CoveringLPResult exact_covering_lp(const std::vector<double>& c,
                                   const std::vector<ConstraintRow>& rows);

}  // namespace ospan
