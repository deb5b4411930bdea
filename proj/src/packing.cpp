#include "ospan/packing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ospan {

namespace {

constexpr double kRelTol = 1e-9;

double safe_exp(double v) { return std::exp(std::min(v, 700.0)); }

}  // namespace

PackingState::PackingState(std::vector<double> c, double B) : c_(std::move(c)), B_(B) {
    if (c_.empty()) throw std::invalid_argument("packing capacity vector is empty");
    for (double cj : c_)
        if (!(cj > 0)) throw std::invalid_argument("packing capacities must be strictly positive");
    if (!(B_ > 0)) throw std::invalid_argument("packing parameter B must be positive");
    x_.assign(c_.size(), 0.0);
    load_.assign(c_.size(), 0.0);
    amax_.assign(c_.size(), 0.0);
    amin_.assign(c_.size(), 0.0);
}

double PackingState::process_column(const ConstraintRow& col) {
    bool has_positive = false;
    for (const RowEntry& e : col) {
        if (e.index < 0 || e.index >= static_cast<int>(c_.size()))
            throw std::invalid_argument("column index out of range");
        if (e.coef < 0) throw std::invalid_argument("negative column coefficient");
        if (e.coef > 0) has_positive = true;
    }
    if (!has_positive) throw std::invalid_argument("column has no positive coefficient");

    // a^max / a^min are updated before any increase happens; x keeps its
    // value when a^max grows (the increment function is a running max).
    for (const RowEntry& e : col) {
        if (e.coef <= 0) continue;
        size_t j = static_cast<size_t>(e.index);
        amax_[j] = std::max(amax_[j], e.coef);
        amin_[j] = amin_[j] == 0.0 ? e.coef : std::min(amin_[j], e.coef);
    }

    auto value_at = [&](double y) {
        double v = 0.0;
        for (const RowEntry& e : col) {
            if (e.coef <= 0) continue;
            size_t j = static_cast<size_t>(e.index);
            double grown = (safe_exp(B_ / (3.0 * c_[j]) * (load_[j] + e.coef * y)) - 1.0) /
                           (static_cast<double>(c_.size()) * amax_[j]);
            v += e.coef * std::max(x_[j], grown);
        }
        return v;
    };

    if (value_at(0.0) >= 1.0) {
        ys_.push_back(0.0);
        return 0.0;
    }

    // Grow y_i until the arriving covering constraint is satisfied by a
    // factor of 2.
    double hi = 1.0;
    while (value_at(hi) < 2.0) {
        hi *= 2.0;
        if (hi > 1e300) throw std::runtime_error("packing increment bracket diverged");
    }
    double lo = hi > 1.0 ? hi / 2.0 : 0.0;
    for (int it = 0; it < 200 && hi - lo > kRelTol * std::max(1.0, hi); ++it) {
        double mid = 0.5 * (lo + hi);
        (value_at(mid) < 2.0 ? lo : hi) = mid;
    }
    const double y = hi;

    for (const RowEntry& e : col) {
        if (e.coef <= 0) continue;
        size_t j = static_cast<size_t>(e.index);
        load_[j] += e.coef * y;
        double grown =
            (safe_exp(B_ / (3.0 * c_[j]) * load_[j]) - 1.0) / (static_cast<double>(c_.size()) * amax_[j]);
        x_[j] = std::max(x_[j], grown);
    }
    ys_.push_back(y);
    ++updates_;
    return y;
}

PackingReport PackingState::report() const {
    PackingReport rep;
    for (double y : ys_) rep.packing_objective += y;
    for (size_t j = 0; j < c_.size(); ++j) rep.covering_objective += c_[j] * x_[j];
    rep.load_over_capacity.resize(c_.size());
    for (size_t j = 0; j < c_.size(); ++j) rep.load_over_capacity[j] = load_[j] / c_[j];
    for (size_t j = 0; j < c_.size(); ++j) {
        if (amax_[j] <= 0) continue;
        double term = 3.0 * std::log(2.0 * static_cast<double>(c_.size()) * amax_[j] / amin_[j] + 1.0);
        rep.b_prime = std::max(rep.b_prime, term);
        rep.alpha_ratio = std::max(rep.alpha_ratio, amax_[j] / c_[j]);
    }
    return rep;
}

std::vector<double> PackingState::scaled_feasible_y() const {
    const double b_prime = report().b_prime;
    std::vector<double> scaled(ys_);
    if (b_prime == 0.0) return scaled;  // nothing was ever assigned
    for (double& y : scaled) y *= B_ / b_prime;
    return scaled;
}

}  // namespace ospan
