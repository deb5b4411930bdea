#pragma once

// Small dense LP solver: two-phase primal simplex with Bland's rule.
// Shared by the cutting-plane separation loop and the exact desk-scale
// oracles. A rational-arithmetic mode backs cross-checks in tests.

#include <vector>

namespace ospan {

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct DenseLP {
    enum class Sense { Min, Max };

    struct Row {
        std::vector<double> coeffs;
        char rel = '>';  // '<', '>' or '='
        double rhs = 0.0;
    };

    Sense sense = Sense::Min;
    std::vector<double> objective;  // one entry per variable; all variables are >= 0
    std::vector<Row> rows;
};

struct LPResult {
    LPStatus status = LPStatus::Optimal;
    double objective = 0.0;
    std::vector<double> x;
};

// Floating-point solve; 1e-9 pivot/feasibility tolerance.
LPResult solve_dense_lp(const DenseLP& lp);

// Exact rational solve (GMP); the result is converted to double at the end.
// Intended for small dimensions, used by tests to certify the float path.
LPResult solve_dense_lp_rational(const DenseLP& lp);

}  // namespace ospan
