#include "pascalnc/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace pascalnc::optimize {

RateGrid RateGrid::of(int n) {
    if (n < 2) throw std::invalid_argument("grid: block length must be >= 2");
    return {n, 1.0 / n, n - 1};
}

RateGrid RateGrid::custom(int n, double rho0, int size) {
    if (n < 2) throw std::invalid_argument("grid: block length must be >= 2");
    if (rho0 <= 0.0 || size < 1 || size * rho0 >= 1.0)
        throw std::invalid_argument("grid: rates must be strictly increasing within (0, 1)");
    return {n, rho0, size};
}

int RateGrid::k_at(int i) const {
    const int k = static_cast<int>(std::lround(rho(i) * n));
    return std::clamp(k, 1, n - 1);
}

int iteration_budget(int grid_size) {
    if (grid_size < 1) throw std::invalid_argument("grid: empty rate set");
    if (grid_size <= 2) return grid_size;
    int bits = 0;
    const int span = grid_size - 1;
    while ((1 << bits) < span) ++bits;
    return bits + 1;
}

OptimizerOutcome optimize_rate(const RateGrid& grid, double pe_target, const Evaluator& evaluator,
                               double noise_tolerance) {
    if (!(pe_target > 0.0 && pe_target < 1.0))
        throw std::invalid_argument("optimize: loss target must lie in (0, 1)");
    if (grid.size < 1) throw std::invalid_argument("optimize: empty rate grid");

    OptimizerOutcome out;
    if (std::abs(grid.rho0 * grid.n - std::lround(grid.rho0 * grid.n)) > 1e-9)
        out.warnings.push_back("grid rates rounded to the nearest integer generation size");

    std::map<int, double> memo;
    auto eval = [&](int i) {
        auto it = memo.find(i);
        if (it != memo.end()) return it->second;
        const double pe = evaluator(grid.rho(i));
        memo.emplace(i, pe);
        ++out.iterations;
        return pe;
    };

    // Bisection with an exclusive upper sentinel: rho[size] stays reachable
    // and the final mid == first probe re-uses the memoized value, keeping
    // unique evaluations within iteration_budget(size).
    int first = 1;
    int last = grid.size + 1;
    int best = -1;
    while (first < last) {
        const int mid = (first + last) / 2;
        const double pe = eval(mid);
        if (pe <= pe_target) {
            best = mid;
            if (mid == first) break;
            first = mid;
        } else {
            if (mid == first) break;
            last = mid;
        }
    }

    // Flag loss estimates that decrease at a strictly higher rate.
    double prev = -1.0;
    int prev_i = 0;
    for (const auto& [i, pe] : memo) {
        if (prev >= 0.0 && pe + noise_tolerance < prev) {
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "loss rate not monotone: pe(rho[%d])=%.3g > pe(rho[%d])=%.3g", prev_i,
                          prev, i, pe);
            out.warnings.emplace_back(buf);
        }
        prev = pe;
        prev_i = i;
    }

    if (best < 0) return out;  // empty: even rho[1] violates the target
    out.empty = false;
    out.rho_star = grid.rho(best);
    out.k_star = grid.k_at(best);
    out.plr_at_rho_star = memo.at(best);
    out.r_star = theory::achievable_rate(out.rho_star, out.plr_at_rho_star);
    return out;
}

std::vector<SweepRow> optimize_sweep(const std::vector<int>& n_list, double pe_target,
                                     const EvaluatorFactory& factory,
                                     const std::string& evaluator_kind) {
    std::vector<SweepRow> rows;
    rows.reserve(n_list.size());
    for (int n : n_list) {
        SweepRow row;
        row.n = n;
        try {
            const auto evaluator = factory(n);
            row.outcome = optimize_rate(RateGrid::of(n), pe_target, evaluator);
            row.outcome.evaluator_kind = evaluator_kind;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Evaluator make_theory_evaluator(codes::Scheme scheme, int n, const theory::ChannelSpec& channel,
                                const theory::RankModel& rm, codes::RelayMode relay) {
    channel.validate();
    if (relay == codes::RelayMode::Recode)
        throw std::invalid_argument(
            "optimize: recoding relays have no closed form; use a simulation evaluator");
    return [=](double rho) {
        const int k = std::clamp(static_cast<int>(std::lround(rho * n)), 1, n - 1);
        return theory::scheme_plr(scheme, k, n, channel, rm, relay).end_to_end;
    };
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

void write_sweep_csv(std::ostream& os, codes::Scheme scheme, const std::vector<SweepRow>& rows) {
    os << "scheme,N,K_star,rho_star,plr,R_star,iterations,evaluator\n";
    for (const auto& row : rows) {
        os << codes::to_string(scheme) << ',' << row.n << ',';
        if (!row.error.empty() || row.outcome.empty) {
            os << "NA,NA,NA,NA," << row.outcome.iterations << ','
               << (row.error.empty() ? row.outcome.evaluator_kind : "error:" + row.error) << '\n';
            continue;
        }
        const auto& o = row.outcome;
        os << o.k_star << ',' << format_double(o.rho_star) << ',' << format_double(o.plr_at_rho_star)
           << ',' << format_double(o.r_star) << ',' << o.iterations << ',' << o.evaluator_kind
           << '\n';
    }
}

}  // namespace pascalnc::optimize
