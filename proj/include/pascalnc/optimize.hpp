#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "pascalnc/theory.hpp"

// Finite-length coding-rate search over the grid rho[i] = i * rho0 via
// bisection, with pluggable closed-form or Monte Carlo loss evaluators.

namespace pascalnc::optimize {

/// Search grid. The default rho0 = 1/N makes the grid exactly K = 1..N-1.
struct RateGrid {
    int n = 0;
    double rho0 = 0.0;
    int size = 0;  // |Psi|

    static RateGrid of(int n);
    static RateGrid custom(int n, double rho0, int size);

    double rho(int i) const { return i * rho0; }  // i = 1..size
    /// Grid rates map to integer generation sizes; non-default rho0 values
    /// round to the nearest feasible K.
    int k_at(int i) const;
};

struct OptimizerOutcome {
    bool empty = true;
    double rho_star = 0.0;
    int k_star = 0;
    double plr_at_rho_star = 1.0;
    double r_star = 0.0;
    int iterations = 0;  // unique evaluator invocations
    std::string evaluator_kind;
    std::vector<std::string> warnings;
};

using Evaluator = std::function<double(double rho)>;

/// Evaluation budget: ceil(log2(|Psi|-1)) + 1 for |Psi| >= 3 (the +1 covers
/// the final mid == first probe); degenerate grids take |Psi| evaluations.
int iteration_budget(int grid_size);

/// Largest grid rate whose loss rate meets pe_target; `empty` when even the
/// smallest rate violates it. The evaluator is memoized, so noisy Monte Carlo
/// evaluators cannot flip a verdict between probes of the same rate. A
/// monotonicity violation among evaluated points beyond noise_tolerance is
/// attached as a warning, not an error.
OptimizerOutcome optimize_rate(const RateGrid& grid, double pe_target, const Evaluator& evaluator,
                               double noise_tolerance = 0.0);

struct SweepRow {
    int n = 0;
    OptimizerOutcome outcome;
    std::string error;  // nonempty when this point failed
};

using EvaluatorFactory = std::function<Evaluator(int n)>;

/// One optimize_rate per block length; per-point failures are recorded and
/// the sweep continues.
std::vector<SweepRow> optimize_sweep(const std::vector<int>& n_list, double pe_target,
                                     const EvaluatorFactory& factory,
                                     const std::string& evaluator_kind);

/// Closed-form loss evaluator for a scheme over a line network. Scheduled
/// schemes degenerate to the block distribution at K = 1.
Evaluator make_theory_evaluator(codes::Scheme scheme, int n, const theory::ChannelSpec& channel,
                                const theory::RankModel& rm, codes::RelayMode relay);

/// CSV: scheme,N,K_star,rho_star,plr,R_star,iterations,evaluator
void write_sweep_csv(std::ostream& os, codes::Scheme scheme, const std::vector<SweepRow>& rows);

}  // namespace pascalnc::optimize
