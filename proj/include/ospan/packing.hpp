#pragma once

// Online packing LP engine: columns arrive one at a time and each packing
// variable is assigned irrevocably. Internally tracks the dual covering
// vector whose exponential growth bounds both the objective gap (factor B)
// and the per-row constraint violation.

#include <vector>

#include "ospan/covering.hpp"  // RowEntry / ConstraintRow

namespace ospan {

struct PackingReport {
    double packing_objective = 0.0;   // Y = sum of assigned y_i
    double covering_objective = 0.0;  // X = <c, x>
    std::vector<double> load_over_capacity;  // L_j / c_j per row
    double b_prime = 0.0;   // 3 * max_j ln(2n * amax_j / amin_j + 1) over touched rows
    double alpha_ratio = 0.0;  // max_j amax_j / c_j
};

class PackingState {
public:
    PackingState(std::vector<double> c, double B);

    // Processes one arriving column; returns the value assigned to y_i.
    double process_column(const ConstraintRow& col);

    PackingReport report() const;

    const std::vector<double>& covering_vector() const { return x_; }
    const std::vector<double>& column_values() const { return ys_; }
    const std::vector<double>& row_loads() const { return load_; }
    double row_amax(int j) const { return amax_.at(static_cast<size_t>(j)); }
    double row_amin(int j) const { return amin_.at(static_cast<size_t>(j)); }
    double b_value() const { return B_; }
    int positive_update_count() const { return updates_; }

    // y scaled by B / B', which satisfies every packing constraint exactly.
    // Opt-in; callers wanting the raw online solution use column_values().
    std::vector<double> scaled_feasible_y() const;

private:
    std::vector<double> c_;
    double B_ = 0.0;
    std::vector<double> x_;
    std::vector<double> ys_;
    std::vector<double> load_;  // L_j = sum_k a_kj y_k
    std::vector<double> amax_;
    std::vector<double> amin_;  // over positive entries seen; 0 if untouched
    int updates_ = 0;
};

}  // namespace ospan
