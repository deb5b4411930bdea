#include "ospan/simplex.hpp"

#include <gmpxx.h>

#include <stdexcept>
#include <utility>

namespace ospan {
namespace {

template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static double tol() { return 1e-9; }
    static double from_double(double v) { return v; }
    static double to_double(double v) { return v; }
};

template <>
struct ScalarTraits<mpq_class> {
    static mpq_class tol() { return 0; }
    static mpq_class from_double(double v) { return mpq_class(v); }
    static double to_double(const mpq_class& v) { return v.get_d(); }
};

template <typename T>
T abs_val(const T& v) {
    return v < 0 ? T(-v) : v;
}

// Two-phase tableau simplex over scalar T. Variables are x >= 0; rows are
// converted to equalities with slack/surplus columns plus artificials.
template <typename T>
class Tableau {
public:
    explicit Tableau(const DenseLP& lp) {
        const size_t nvars = lp.objective.size();
        for (const auto& row : lp.rows)
            if (row.coeffs.size() != nvars)
                throw std::invalid_argument("LP row width does not match objective");

        minimize_ = lp.sense == DenseLP::Sense::Min;
        cost_.resize(nvars);
        for (size_t j = 0; j < nvars; ++j) {
            cost_[j] = ScalarTraits<T>::from_double(lp.objective[j]);
            if (!minimize_) cost_[j] = -cost_[j];
        }

        // Count slack/surplus columns, then lay out the tableau.
        size_t slack_count = 0;
        for (const auto& row : lp.rows)
            if (row.rel != '=') ++slack_count;
        structural_ = nvars;
        nonartificial_ = nvars + slack_count;
        const size_t m = lp.rows.size();
        cols_ = nonartificial_ + m + 1;  // worst case: one artificial per row; last col = rhs
        rows_.assign(m, std::vector<T>(cols_, T(0)));
        basis_.assign(m, 0);
        artificials_ = 0;

        size_t slack_at = nvars;
        for (size_t i = 0; i < m; ++i) {
            const auto& row = lp.rows[i];
            if (row.rel != '<' && row.rel != '>' && row.rel != '=')
                throw std::invalid_argument("LP row relation must be '<', '>' or '='");
            T rhs = ScalarTraits<T>::from_double(row.rhs);
            T sign = T(1);
            if (rhs < 0) {
                sign = T(-1);
                rhs = -rhs;
            }
            for (size_t j = 0; j < nvars; ++j)
                rows_[i][j] = sign * ScalarTraits<T>::from_double(row.coeffs[j]);
            rows_[i][cols_ - 1] = rhs;
            char rel = row.rel;
            if (sign < 0) rel = rel == '<' ? '>' : (rel == '>' ? '<' : '=');
            if (rel == '<') {
                rows_[i][slack_at] = T(1);
                basis_[i] = slack_at++;
            } else if (rel == '>') {
                rows_[i][slack_at] = T(-1);
                ++slack_at;
                size_t art = nonartificial_ + artificials_++;
                rows_[i][art] = T(1);
                basis_[i] = art;
            } else {
                size_t art = nonartificial_ + artificials_++;
                rows_[i][art] = T(1);
                basis_[i] = art;
            }
        }
    }

    LPResult solve() {
        LPResult out;
        if (artificials_ > 0) {
            std::vector<T> phase1(nonartificial_ + artificials_, T(0));
            for (size_t j = nonartificial_; j < nonartificial_ + artificials_; ++j) phase1[j] = T(1);
            if (!run(phase1)) throw std::logic_error("phase-1 LP cannot be unbounded");
            if (objective_value(phase1) > ScalarTraits<T>::tol()) {
                out.status = LPStatus::Infeasible;
                return out;
            }
            evict_artificials();
        }
        std::vector<T> phase2(cost_);
        phase2.resize(active_cols() - 1, T(0));
        if (!run(phase2)) {
            out.status = LPStatus::Unbounded;
            return out;
        }
        out.status = LPStatus::Optimal;
        out.x.assign(structural_, 0.0);
        std::vector<T> xq(structural_, T(0));
        for (size_t i = 0; i < rows_.size(); ++i)
            if (basis_[i] < structural_) xq[basis_[i]] = rows_[i][cols_ - 1];
        T obj(0);
        for (size_t j = 0; j < structural_; ++j) {
            obj += cost_[j] * xq[j];
            out.x[j] = ScalarTraits<T>::to_double(xq[j]);
        }
        if (!minimize_) obj = -obj;
        out.objective = ScalarTraits<T>::to_double(obj);
        return out;
    }

private:
    size_t active_cols() const { return cols_; }

    T objective_value(const std::vector<T>& c) const {
        T z(0);
        for (size_t i = 0; i < rows_.size(); ++i) {
            if (basis_[i] < c.size()) z += c[basis_[i]] * rows_[i][cols_ - 1];
        }
        return z;
    }

    void pivot(size_t pr, size_t pc) {
        const T piv = rows_[pr][pc];
        for (size_t j = 0; j < cols_; ++j) rows_[pr][j] /= piv;
        for (size_t i = 0; i < rows_.size(); ++i) {
            if (i == pr) continue;
            T factor = rows_[i][pc];
            if (factor == 0) continue;
            for (size_t j = 0; j < cols_; ++j) rows_[i][j] -= factor * rows_[pr][j];
        }
        basis_[pr] = pc;
    }

    // Bland's rule; artificial columns never re-enter. Returns false on
    // unbounded.
    bool run(const std::vector<T>& c) {
        const T tol = ScalarTraits<T>::tol();
        const size_t limit = nonartificial_;
        // Reduced-cost row, maintained across pivots.
        std::vector<T> red(cols_, T(0));
        for (size_t j = 0; j + 1 < cols_; ++j) red[j] = j < c.size() ? c[j] : T(0);
        for (size_t i = 0; i < rows_.size(); ++i) {
            if (basis_[i] >= c.size()) continue;
            const T cb = c[basis_[i]];
            if (cb == 0) continue;
            for (size_t j = 0; j < cols_; ++j) red[j] -= cb * rows_[i][j];
        }
        const size_t max_iter = 2000 * (rows_.size() + cols_ + 1);
        for (size_t iter = 0; iter < max_iter; ++iter) {
            size_t enter = cols_;
            for (size_t j = 0; j < limit; ++j) {
                if (red[j] < -tol) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols_) return true;  // optimal
            size_t leave = rows_.size();
            T best_ratio(0);
            for (size_t i = 0; i < rows_.size(); ++i) {
                if (rows_[i][enter] <= tol) continue;
                T ratio = rows_[i][cols_ - 1] / rows_[i][enter];
                if (leave == rows_.size() || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leave]))
                {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == rows_.size()) return false;  // unbounded
            const T factor = red[enter];
            pivot(leave, enter);
            if (factor != 0)
                for (size_t j = 0; j < cols_; ++j) red[j] -= factor * rows_[leave][j];
        }
        throw std::runtime_error("simplex iteration limit exceeded");
    }

    // After phase 1: pivot basic artificials onto structural/slack columns
    // where possible; dependent rows are dropped.
    void evict_artificials() {
        const T tol = ScalarTraits<T>::tol();
        for (size_t i = 0; i < rows_.size();) {
            if (basis_[i] < nonartificial_) {
                ++i;
                continue;
            }
            size_t pc = cols_;
            for (size_t j = 0; j < nonartificial_; ++j) {
                if (abs_val(rows_[i][j]) > tol) {
                    pc = j;
                    break;
                }
            }
            if (pc != cols_) {
                pivot(i, pc);
                ++i;
            } else {
                rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
    }

    bool minimize_ = true;
    size_t structural_ = 0;
    size_t nonartificial_ = 0;
    size_t artificials_ = 0;
    size_t cols_ = 0;
    std::vector<std::vector<T>> rows_;
    std::vector<size_t> basis_;
    std::vector<T> cost_;
};

}  // namespace

LPResult solve_dense_lp(const DenseLP& lp) { return Tableau<double>(lp).solve(); }

LPResult solve_dense_lp_rational(const DenseLP& lp) { return Tableau<mpq_class>(lp).solve(); }

}  // namespace ospan
