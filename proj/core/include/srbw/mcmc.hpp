#pragma once
#include <cstdint>
#include <map>
#include <vector>

#include "srbw/action.hpp"
#include "srbw/params.hpp"
#include "srbw/rng.hpp"
#include "srbw/tree.hpp"

namespace srbw::mcmc {

/// Metropolis chain over the tree increments, targeting the density
/// proportional to exp(-S). A proposal perturbs one non-root increment,
/// which shifts that node's whole subtree rigidly: only one spreading
/// term and the collision counts of the shifted generations change.
struct ChainState {
    ModelParams params{1, 1.0, 1.0};
    std::vector<std::vector<double>> increments;  // generations 1..N; [0] unused
    TreeProfile positions;                        // cached prefix sums
    CostBreakdown action;                         // cached, kept in sync
    Rng rng{0};
    std::uint64_t seed = 0;
    std::int64_t proposed = 0;
    std::int64_t accepted = 0;
};

/// Fresh chain with all increments zero (every particle at the origin).
ChainState make_chain(const ModelParams& params, std::uint64_t seed);

/// One Metropolis update; returns whether the proposal was accepted.
bool metropolis_step(ChainState& state, double proposal_sigma);

/// Recompute the action from scratch (test hook for the cache).
CostBreakdown recompute_action(const ChainState& state);

struct ChainEstimate {
    double z_hat = 0.0;
    double std_err = 0.0;
    std::int64_t n_samples = 0;
};

/// Plain Monte Carlo estimate of Z = E[exp(-beta J)] over the
/// unconditioned branching walk; deterministic for a given seed.
ChainEstimate estimate_partition(const ModelParams& params, std::int64_t n_samples,
                                 std::uint64_t seed);

/// Closed-form Z for N = 1: the sibling difference is centered normal
/// with variance 2, so Z = 1 - (1 - e^(-2 beta)) P(|G| < eps).
double partition_closed_form_n1(const ModelParams& params);

struct ProfileSummary {
    std::int64_t n_samples = 0;
    double mean_range = 0.0;              // final-generation max - min, averaged
    double smooth_fraction = 0.0;         // fraction of samples with smooth binned occupation
    std::map<std::int64_t, double> mean_site_occupancy;  // soft-binned, by grid site
};

/// Run burn-in, then collect thinned samples and summarise the
/// final-generation shape. Binning is soft: positions round to the
/// nearest grid site with no off-grid error.
ProfileSummary empirical_profile(ChainState& state, std::int64_t n_samples, std::int64_t burn_in,
                                 std::int64_t thin, double proposal_sigma);

} // namespace srbw::mcmc
