#pragma once

// Online covering LP engine: guess-and-double phases with exponential
// variable increments driven by dual variables. Constraints may arrive
// explicitly or through a separation oracle; each violated constraint is
// fixed until it is satisfied by a factor of 2, which keeps the number of
// oracle fixes polynomial.

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ospan {

struct RowEntry {
    int index = -1;
    double coef = 0.0;
};

// Sparse covering row <a, x> >= 1; needs at least one strictly positive
// coefficient, none negative.
using ConstraintRow = std::vector<RowEntry>;

struct CoveringCost {
    std::vector<double> c;  // strictly positive entries
};

// The separation oracle breached its contract (returned a row that the
// current solution already satisfies).
struct OracleContractError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FixReport {
    bool violated = false;
    int phases_started = 0;          // phases opened while fixing this row
    double y_assigned = 0.0;         // total dual mass assigned across segments
    std::vector<int> variables_doubled;  // variables that at least doubled during the fix
};

// One dual assignment: the row as processed in some phase and the y value it
// received there. Rows revisited after a phase restart appear once per phase.
struct DualEvent {
    ConstraintRow row;
    double y = 0.0;
};

class CoveringState {
public:
    explicit CoveringState(CoveringCost cost);

    // Processes one covering constraint; grows the current phase vector until
    // the row is satisfied by a factor of 2 (or a later phase satisfies it).
    FixReport process(const ConstraintRow& row);

    // Called with the current solution; returns a violated row or nullopt.
    using Oracle = std::function<std::optional<ConstraintRow>(const std::vector<double>&)>;

    // Loops process() until the oracle has nothing left to report.
    // Returns the number of violated fixes performed.
    int process_with_oracle(const Oracle& oracle);

    // Coordinate-wise maximum over all phase vectors (zero before round 1).
    std::vector<double> solution() const;
    double objective() const;

    int n_vars() const { return static_cast<int>(cost_.size()); }
    const std::vector<double>& costs() const { return cost_; }

    // Bookkeeping, read-only (used by tests and reports).
    int phase_count() const { return phase_; }
    double alpha_current() const { return alpha_; }
    double alpha_initial() const { return alpha1_; }
    double alpha_of_phase(int r) const;                      // alpha(1) * 2^(r-1)
    const std::vector<DualEvent>& phase_events(int r) const;  // duals assigned during phase r
    double phase_dual_total(int r) const;                     // Y(r)
    const std::vector<double>& phase_vector() const { return xr_; }
    int total_fixes() const { return fixes_; }

private:
    void begin_phase();
    double row_value(const ConstraintRow& row) const;
    // Smallest y >= 0 at which `value(y)` reaches `target`; value must be
    // non-decreasing. Returns the upper end of a 1e-9-relative bracket.
    template <typename F>
    static double solve_crossing(F value, double target);

    std::vector<double> cost_;
    int phase_ = 0;        // 0 until the first constraint arrives
    double alpha_ = 0.0;   // alpha(r) for the current phase
    double alpha1_ = 0.0;  // alpha(1)
    std::vector<double> xr_;       // current phase vector x^r
    std::vector<double> best_;     // coordinate max over finished phases
    std::vector<std::vector<DualEvent>> phase_events_;
    std::vector<double> phase_y_totals_;
    int fixes_ = 0;
};

}  // namespace ospan
