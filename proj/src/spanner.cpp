#include "ospan/spanner.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ospan/oracle.hpp"

namespace ospan {

std::string to_string(SpannerMode mode) {
    switch (mode) {
        case SpannerMode::General: return "general";
        case SpannerMode::BoundedD: return "bounded-d";
        case SpannerMode::Quasimetric: return "quasimetric";
        case SpannerMode::AllServer: return "all-server";
        case SpannerMode::SteinerForest: return "steiner-forest";
    }
    return "general";
}

std::optional<SpannerMode> parse_mode(const std::string& name) {
    if (name == "general") return SpannerMode::General;
    if (name == "bounded-d") return SpannerMode::BoundedD;
    if (name == "quasimetric") return SpannerMode::Quasimetric;
    if (name == "all-server") return SpannerMode::AllServer;
    if (name == "steiner-forest") return SpannerMode::SteinerForest;
    return std::nullopt;
}

std::string to_string(Branch branch) {
    switch (branch) {
        case Branch::Greedy: return "greedy";
        case Branch::ArborescenceAndRound: return "arborescence+round";
        case Branch::ConditionalRound: return "conditional-round";
    }
    return "greedy";
}

namespace {

using Wide = unsigned __int128;

// v^exp with saturation at `cap`.
Wide pow_saturating(Wide v, int exp, Wide cap) {
    Wide out = 1;
    for (int i = 0; i < exp; ++i) {
        if (v != 0 && out > cap / v) return cap;
        out *= v;
    }
    return out;
}

// Snap nearly-integral doubles produced by pow() back onto the integer.
double snap_integral(double v) {
    double r = std::round(v);
    if (r > 0 && std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(v))) return r;
    return v;
}

}  // namespace

long long floor_pow_rational(long long base, int num, int den) {
    if (base < 0 || num < 0 || den <= 0) throw std::invalid_argument("floor_pow_rational arguments");
    // Largest k with k^den <= base^num.
    const Wide cap = ~Wide(0);
    Wide target = pow_saturating(static_cast<Wide>(base), num, cap);
    if (target == cap) throw std::overflow_error("floor_pow_rational overflow");
    unsigned long long lo = 0;
    unsigned long long hi = 2;
    while (pow_saturating(hi, den, cap) <= target) hi *= 2;
    while (lo + 1 < hi) {
        unsigned long long mid = lo + (hi - lo) / 2;
        if (pow_saturating(mid, den, cap) <= target)
            lo = mid;
        else
            hi = mid;
    }
    return static_cast<long long>(lo);
}

SpannerParams params_for(SpannerMode mode, int n, std::uint64_t seed, std::optional<long long> d,
                         std::optional<double> epsilon) {
    if (n < 2) throw std::invalid_argument("params_for requires n >= 2");
    SpannerParams p;
    p.mode = mode;
    p.seed = seed;
    const double dn = static_cast<double>(n);
    switch (mode) {
        case SpannerMode::General: {
            long long v = floor_pow_rational(n, 4, 5);
            p.round_threshold = v;
            p.thickness = static_cast<double>(v);
            break;
        }
        case SpannerMode::BoundedD: {
            if (!d || *d < 1) throw std::invalid_argument("bounded-d mode requires d >= 1");
            p.max_distance = *d;
            // T = floor((n^4 / d^4)^(1/3)): largest k with k^3 d^4 <= n^4.
            const Wide cap = ~Wide(0);
            Wide n4 = pow_saturating(static_cast<Wide>(n), 4, cap);
            Wide d4 = pow_saturating(static_cast<Wide>(*d), 4, cap);
            if (n4 == cap || d4 == cap) throw std::overflow_error("bounded-d parameters overflow");
            unsigned long long lo = 0, hi = 2;
            auto fits = [&](unsigned long long k) {
                Wide k3 = pow_saturating(static_cast<Wide>(k), 3, cap);
                if (k3 == cap || (d4 != 0 && k3 > (cap / d4))) return false;
                return k3 * d4 <= n4;
            };
            while (fits(hi)) hi *= 2;
            while (lo + 1 < hi) {
                unsigned long long mid = lo + (hi - lo) / 2;
                if (fits(mid)) lo = mid; else hi = mid;
            }
            p.round_threshold = static_cast<long long>(lo);
            // t = (d n^2)^(1/3), kept exact when the cube root is integral.
            double t = std::cbrt(static_cast<double>(*d) * dn * dn);
            p.thickness = snap_integral(t);
            break;
        }
        case SpannerMode::Quasimetric:
        case SpannerMode::AllServer: {
            p.round_threshold = floor_pow_rational(n, 4, 3);
            p.thickness = snap_integral(std::cbrt(dn * dn));
            break;
        }
        case SpannerMode::SteinerForest: {
            if (!epsilon || !(*epsilon > 0.0) || !(*epsilon < 1.0 / 3.0))
                throw std::invalid_argument("steiner-forest mode requires epsilon in (0, 1/3)");
            p.epsilon = *epsilon;
            double texp = std::exp((4.0 / 3.0 - 4.0 * *epsilon) * std::log(dn));
            p.round_threshold = static_cast<long long>(std::floor(snap_integral(texp)));
            p.thickness = snap_integral(std::exp((2.0 / 3.0 + *epsilon) * std::log(dn)));
            break;
        }
    }
    p.round_threshold = std::max<long long>(p.round_threshold, 1);
    if (!(p.thickness > 0)) throw std::logic_error("thickness must be positive");
    return p;
}

LpSchedule capture_lp_schedule(const DirectedGraph& g, const std::vector<Demand>& demands) {
    LpSchedule schedule;
    CoveringState cov(CoveringCost{std::vector<double>(static_cast<size_t>(g.edge_count()), 1.0)});
    int round = 0;
    for (const Demand& dem : demands) {
        ++round;
        schedule.x_per_round.push_back(solve_round(cov, g, dem, round));
        schedule.objective_per_round.push_back(cov.objective());
    }
    return schedule;
}

SpannerRun::SpannerRun(const DirectedGraph& g, SpannerParams params)
    : g_(g),
      params_(params),
      cov_(CoveringCost{std::vector<double>(static_cast<size_t>(g.edge_count()), 1.0)}),
      selected_(g.edge_count()),
      prev_marginals_(static_cast<size_t>(g.edge_count()), 0.0),
      rng_(params.seed),
      origin_(static_cast<size_t>(g.edge_count()), '\0'),
      added_round_(static_cast<size_t>(g.edge_count()), -1) {
    if (params_.round_threshold < 1) throw std::invalid_argument("round threshold must be >= 1");
    if (!(params_.thickness > 0)) throw std::invalid_argument("thickness must be positive");
}

SpannerRun::SpannerRun(const DirectedGraph& g, SpannerParams params, const LpSchedule& schedule)
    : SpannerRun(g, params) {
    schedule_ = &schedule;
}

const std::vector<double>& SpannerRun::lp_step(const Demand& dem) {
    if (schedule_) {
        schedule_x_ = schedule_->x_per_round.at(static_cast<size_t>(round_ - 1));
        return schedule_x_;
    }
    schedule_x_ = solve_round(cov_, g_, dem, round_);
    return schedule_x_;
}

void SpannerRun::add_edge(EdgeId e, EdgeOrigin origin, std::vector<EdgeId>& added) {
    if (!selected_.insert(e)) return;
    origin_[static_cast<size_t>(e)] = origin;
    added_round_[static_cast<size_t>(e)] = round_;
    added.push_back(e);
}

RoundOutcome SpannerRun::process_demand(const Demand& dem) {
    g_.check_vertex(dem.s);
    g_.check_vertex(dem.t);
    if (dem.s == dem.t) throw std::invalid_argument("demand endpoints must differ");

    // Feasibility gate before any state changes.
    auto greedy_path = cheapest_feasible_path(g_, dem.s, dem.t, dem.d);
    if (!greedy_path) throw InfeasibleDemand("demand has no feasible path in the graph");

    ++round_;
    RoundOutcome outcome;
    outcome.round = round_;

    const std::vector<double>& x = lp_step(dem);
    const double ln_n = std::log(static_cast<double>(g_.vertex_count()));
    std::vector<double> p(x.size());
    for (size_t e = 0; e < x.size(); ++e)
        p[e] = std::min(1.0, x[e] * params_.thickness * ln_n);

    const long long T = params_.round_threshold;
    if (round_ < T) {
        outcome.branch = Branch::Greedy;
        if (params_.mode == SpannerMode::AllServer) {
            // All-server instances carry the direct edge; fall back to the
            // cheapest feasible path when the input breaks that promise.
            auto direct = g_.find_edge(dem.s, dem.t);
            if (direct && (dem.unbounded() || g_.edge(*direct).len <= dem.d)) {
                add_edge(*direct, 'd', outcome.edges_added);
            } else {
                for (EdgeId e : *greedy_path) add_edge(e, 'g', outcome.edges_added);
            }
        } else {
            for (EdgeId e : *greedy_path) add_edge(e, 'g', outcome.edges_added);
        }
    } else if (round_ == T) {
        outcome.branch = Branch::ArborescenceAndRound;
        const int n = g_.vertex_count();
        double raw = std::ceil(3.0 * static_cast<double>(n) * ln_n / params_.thickness);
        long long samples = static_cast<long long>(std::max(1.0, raw));
        std::set<Vertex> roots;
        if (samples > 64LL * n) {
            // Far beyond coupon collection; every vertex is a root.
            for (Vertex v = 0; v < n; ++v) roots.insert(v);
        } else {
            for (long long i = 0; i < samples; ++i) roots.insert(rng_.next_below(n));
        }
        roots_.assign(roots.begin(), roots.end());
        for (Vertex w : roots_) {
            for (EdgeId e : shortest_path_arborescence(g_, w, Arborescence::In).to_vector())
                add_edge(e, 'a', outcome.edges_added);
            for (EdgeId e : shortest_path_arborescence(g_, w, Arborescence::Out).to_vector())
                add_edge(e, 'a', outcome.edges_added);
        }
        for (EdgeId e = 0; e < g_.edge_count(); ++e) {
            if (selected_.contains(e)) continue;
            if (rng_.bernoulli(p[static_cast<size_t>(e)])) add_edge(e, 's', outcome.edges_added);
        }
    } else {
        outcome.branch = Branch::ConditionalRound;
        for (EdgeId e = 0; e < g_.edge_count(); ++e) {
            if (selected_.contains(e)) continue;
            double prev = prev_marginals_[static_cast<size_t>(e)];
            double cur = p[static_cast<size_t>(e)];
            double q = prev >= 1.0 ? 0.0 : (cur - prev) / (1.0 - prev);
            q = std::clamp(q, 0.0, 1.0);
            if (rng_.bernoulli(q)) add_edge(e, 's', outcome.edges_added);
        }
    }

    if (!settle_check(dem)) {
        outcome.repaired = true;
        for (EdgeId e : *greedy_path) add_edge(e, 'r', outcome.edges_added);
    }

    prev_marginals_ = p;
    seen_.push_back(dem);
    outcome.settled = settle_check(dem);
    outcome.lp_objective = lp_objective();
    return outcome;
}

bool SpannerRun::settle_check(const Demand& dem) const {
    std::int64_t dist = distance_in_subgraph(g_, selected_, dem.s, dem.t);
    if (dist == kInfLen) return false;
    return dem.unbounded() || dist <= dem.d;
}

double SpannerRun::lp_objective() const {
    if (schedule_) {
        if (round_ == 0) return 0.0;
        return schedule_->objective_per_round.at(static_cast<size_t>(round_ - 1));
    }
    return cov_.objective();
}

std::vector<double> SpannerRun::lp_solution() const {
    if (schedule_) {
        if (round_ == 0) return std::vector<double>(static_cast<size_t>(g_.edge_count()), 0.0);
        return schedule_->x_per_round.at(static_cast<size_t>(round_ - 1));
    }
    return cov_.solution();
}

}  // namespace ospan
