#pragma once
#include <cstdint>
#include <vector>

#include "srbw/action.hpp"
#include "srbw/int128.hpp"
#include "srbw/params.hpp"

namespace srbw {

/// Exact and leading-order collision totals of the staircase trajectory
/// with end ramp width r = 2^K. The exact value is the closed sum over
/// the staircase generations and must equal the per-generation
/// occupation sums integer-for-integer; the asymptotic form is
/// (4/3) 2^N r - 2^(N+1) - (8/21) r^3.
struct InteractionCost {
    int128 exact = 0;
    double asymptotic = 0.0;
};

InteractionCost analytic_interaction_cost(std::int64_t r, int n_gen);

/// Collision total of the frozen evolution (particles reproduce in
/// place after generation M = N - log2 r). Upper-bounds the transport
/// spreading excess of the staircase phase: every smoothing move pays
/// less in displacement than it removes in collisions.
struct FrozenPhaseBound {
    int128 frozen_interaction = 0;  // direct sum, authoritative
    double closed_form = 0.0;       // (1/3) 2^(N+2) r - 2^(N+1) + (2/3) 2^M
};

FrozenPhaseBound staircase_spreading_bound(std::int64_t r, int n_gen);

/// Closed-form total cost as a function of the (real) end ramp width:
///   beta ((4/3) 2^N r - 2^(N+1)) + eps^2 2^(2N-3) r^-2.
double total_cost_model(double r, const ModelParams& params);

/// Real-valued minimiser of total_cost_model: (3 eps^2/beta)^(1/3) 2^((N-4)/3).
double ramp_width_optimum(const ModelParams& params);

/// Freeze-after-2N/3 benchmark configuration: harmonic spreading to
/// M = 2N/3, then reproduction in place. Requires N divisible by 3.
struct FreezeBenchmark {
    int split_gen = 0;             // M = 2N/3
    CostBreakdown costs;           // measured
    int128 frozen_interaction = 0; // measured collision total of generations M+1..N
};

FreezeBenchmark freeze_benchmark_cost(const ModelParams& params);

/// Exact integer value (2^(4N/3+2) + 2^(2N/3+1))/3 - 2^(N+1) of the
/// frozen-phase collision total at M = 2N/3.
int128 freeze_benchmark_interaction_formula(int n_gen);

/// Radius plan of the two-term rate heuristic: family
/// r(n) = 2 r1 (1 - 2^-n) with the free scale r1; the stationary scale
/// solves r1^3 = beta eps 2^(2N-2).
struct HeuristicPlan {
    int n_gen = 0;
    std::vector<double> r_seq;   // r(0)..r(N) at the closed-form scale
    double r1_closed = 0.0;      // (beta eps 2^(2N-2))^(1/3)
    double r1_numeric = 0.0;     // argmin of the finite-N functional
    double s_at_closed = 0.0;
    double s_at_numeric = 0.0;
};

/// Value of the heuristic functional
///   sum_n [ beta eps 2^(2n)/r(n) + 2^n (1/3)(r(n)-r(n-1))^2 ]
/// on the closed-form family with scale r1.
double heuristic_action(double r1, int n_gen, double beta, double eps);

HeuristicPlan heuristic_optimum(int n_gen, double beta, double eps);

} // namespace srbw
