#include "ospan/covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ospan {

namespace {

constexpr double kRelTol = 1e-9;

void validate_row(const ConstraintRow& row, int n_vars) {
    bool has_positive = false;
    for (const RowEntry& e : row) {
        if (e.index < 0 || e.index >= n_vars)
            throw std::invalid_argument("constraint index out of range");
        if (e.coef < 0) throw std::invalid_argument("negative constraint coefficient");
        if (e.coef > 0) has_positive = true;
    }
    if (!has_positive) throw std::invalid_argument("constraint row has no positive coefficient");
}

// exp with its argument clamped so intermediate bracketing cannot overflow.
double safe_exp(double v) { return std::exp(std::min(v, 700.0)); }

}  // namespace

CoveringState::CoveringState(CoveringCost cost) : cost_(std::move(cost.c)) {
    if (cost_.empty()) throw std::invalid_argument("covering cost vector is empty");
    for (double c : cost_)
        if (!(c > 0)) throw std::invalid_argument("covering costs must be strictly positive");
    xr_.assign(cost_.size(), 0.0);
    best_.assign(cost_.size(), 0.0);
}

void CoveringState::begin_phase() {
    ++phase_;
    alpha_ = alpha1_ * std::ldexp(1.0, phase_ - 1);
    const double base = alpha_ / (2.0 * static_cast<double>(cost_.size()));
    for (size_t j = 0; j < cost_.size(); ++j) xr_[j] = base / cost_[j];
    phase_events_.emplace_back();
    phase_y_totals_.push_back(0.0);
}

double CoveringState::row_value(const ConstraintRow& row) const {
    double v = 0.0;
    for (const RowEntry& e : row) v += e.coef * xr_[static_cast<size_t>(e.index)];
    return v;
}

template <typename F>
double CoveringState::solve_crossing(F value, double target) {
    if (value(0.0) >= target) return 0.0;
    double hi = 1.0;
    while (value(hi) < target) {
        hi *= 2.0;
        if (hi > 1e300) throw std::runtime_error("covering increment bracket diverged");
    }
    double lo = hi > 1.0 ? hi / 2.0 : 0.0;
    for (int it = 0; it < 200 && hi - lo > kRelTol * std::max(1.0, hi); ++it) {
        double mid = 0.5 * (lo + hi);
        (value(mid) < target ? lo : hi) = mid;
    }
    return hi;
}

FixReport CoveringState::process(const ConstraintRow& row) {
    validate_row(row, n_vars());

    if (phase_ == 0) {
        // alpha(1) = min over positive entries of c_j / a_{1j}.
        alpha1_ = std::numeric_limits<double>::infinity();
        for (const RowEntry& e : row)
            if (e.coef > 0)
                alpha1_ = std::min(alpha1_, cost_[static_cast<size_t>(e.index)] / e.coef);
        begin_phase();
    }

    FixReport report;
    if (row_value(row) >= 1.0) {
        phase_events_.back().push_back({row, 0.0});
        return report;
    }

    report.violated = true;
    ++fixes_;

    // Support of the row; only these coordinates move during the fix.
    std::vector<std::pair<int, double>> support;
    for (const RowEntry& e : row)
        if (e.coef > 0) support.emplace_back(e.index, e.coef);

    // Largest observed growth ratio per support variable, measured within
    // phase segments and across phase restarts.
    std::vector<double> ratio(support.size(), 1.0);

    const double ln2n = std::log(2.0 * static_cast<double>(cost_.size()));

    while (true) {
        // Segment start: x^r_j and the exponential rate per support var.
        std::vector<double> seg_start(support.size());
        std::vector<double> rate(support.size());
        for (size_t k = 0; k < support.size(); ++k) {
            seg_start[k] = xr_[static_cast<size_t>(support[k].first)];
            rate[k] = ln2n / cost_[static_cast<size_t>(support[k].first)] * support[k].second;
        }
        double objective_rest = 0.0;  // objective mass off the support
        {
            double obj_support = 0.0;
            for (size_t k = 0; k < support.size(); ++k)
                obj_support += cost_[static_cast<size_t>(support[k].first)] * seg_start[k];
            for (size_t j = 0; j < cost_.size(); ++j) objective_rest += cost_[j] * xr_[j];
            objective_rest -= obj_support;
        }
        auto row_at = [&](double y) {
            double v = 0.0;
            for (size_t k = 0; k < support.size(); ++k)
                v += support[k].second * seg_start[k] * safe_exp(rate[k] * y);
            return v;
        };
        auto objective_at = [&](double y) {
            double v = objective_rest;
            for (size_t k = 0; k < support.size(); ++k)
                v += cost_[static_cast<size_t>(support[k].first)] * seg_start[k] *
                     safe_exp(rate[k] * y);
            return v;
        };

        const double y_sat = solve_crossing(row_at, 2.0);
        const double y_obj = solve_crossing(objective_at, alpha_);
        const double y = std::min(y_sat, y_obj);

        for (size_t k = 0; k < support.size(); ++k) {
            double grown = seg_start[k] * safe_exp(rate[k] * y);
            xr_[static_cast<size_t>(support[k].first)] = grown;
            ratio[k] = std::max(ratio[k], grown / seg_start[k]);
        }
        phase_events_.back().push_back({row, y});
        phase_y_totals_.back() += y;
        report.y_assigned += y;

        if (y_sat <= y_obj) break;  // row satisfied by a factor of 2

        // Objective hit alpha(r): archive the phase, double alpha and retry
        // the same row from the new base.
        for (size_t j = 0; j < cost_.size(); ++j) best_[j] = std::max(best_[j], xr_[j]);
        begin_phase();
        ++report.phases_started;
        for (size_t k = 0; k < support.size(); ++k) {
            double fresh = xr_[static_cast<size_t>(support[k].first)];
            ratio[k] = std::max(ratio[k], fresh / seg_start[k]);
        }
        if (row_value(row) >= 1.0) {
            phase_events_.back().push_back({row, 0.0});
            break;  // satisfied at the new base
        }
    }

    for (size_t k = 0; k < support.size(); ++k)
        if (ratio[k] >= 2.0 * (1.0 - 1e-12)) report.variables_doubled.push_back(support[k].first);
    return report;
}

int CoveringState::process_with_oracle(const Oracle& oracle) {
    int fixed = 0;
    while (true) {
        const std::vector<double> x = solution();
        std::optional<ConstraintRow> row = oracle(x);
        if (!row) return fixed;
        validate_row(*row, n_vars());
        double v = 0.0;
        for (const RowEntry& e : *row) v += e.coef * x[static_cast<size_t>(e.index)];
        if (v >= 1.0)
            throw OracleContractError("separation oracle returned a satisfied row (value " +
                                      std::to_string(v) + ")");
        process(*row);
        ++fixed;
    }
}

std::vector<double> CoveringState::solution() const {
    std::vector<double> x(best_);
    if (phase_ > 0)
        for (size_t j = 0; j < x.size(); ++j) x[j] = std::max(x[j], xr_[j]);
    return x;
}

double CoveringState::objective() const {
    const std::vector<double> x = solution();
    double v = 0.0;
    for (size_t j = 0; j < x.size(); ++j) v += cost_[j] * x[j];
    return v;
}

double CoveringState::alpha_of_phase(int r) const {
    if (r < 1 || r > phase_) throw std::out_of_range("phase index");
    return alpha1_ * std::ldexp(1.0, r - 1);
}

const std::vector<DualEvent>& CoveringState::phase_events(int r) const {
    if (r < 1 || r > phase_) throw std::out_of_range("phase index");
    return phase_events_[static_cast<size_t>(r - 1)];
}

double CoveringState::phase_dual_total(int r) const {
    if (r < 1 || r > phase_) throw std::out_of_range("phase index");
    return phase_y_totals_[static_cast<size_t>(r - 1)];
}

}  // namespace ospan
