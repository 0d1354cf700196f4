#pragma once
#include <cstdint>
#include <vector>

#include "srbw/params.hpp"
#include "srbw/tree.hpp"

namespace srbw::oracle {

/// Desk-scale exhaustive search configuration. Positions live on the
/// lattice eps/q Z + eps/2 inside a window of +-(window + 1/2) eps; the
/// root stays pinned at 0.
struct Config {
    int n_gen = 1;       // N <= 4
    int window = 4;      // half-width in eps-sites
    int refine = 1;      // q: lattice eps/q
    ModelParams params{1, 1.0, 1.0};
    std::uint64_t state_budget = 1'000'000'000;
    double initial_bound = 0.0;  // <= 0 means unseeded
};

/// Positions are carried as integer codes c with x = eps c / (2q);
/// lattice sites have c = q (mod 2). Spread and collision terms are then
/// exact integer counts.
struct Result {
    double min_action = 0.0;
    std::uint64_t nominal_states = 0;   // reflection-halved per-generation state count
    std::uint64_t visited = 0;          // generation assignments actually expanded
    // every optimal generation-code sequence, closed under reflection
    std::vector<std::vector<std::vector<int>>> argmin_codes;
    std::vector<TreeProfile> argmin;    // realisations of the above
};

Result brute_force_min_action(const Config& cfg);

/// Minimum action over configurations whose final generation is exactly
/// the given eps-grid occupation vector, placed anywhere in the window.
/// Used to score constructed end-shape candidates on the oracle lattice.
double constrained_min_action(const Config& cfg, const std::vector<std::int64_t>& end_counts);

/// Action of the profile with every non-root position rounded to the
/// nearest lattice point (an upper bound used to seed the search).
double snapped_action(const TreeProfile& profile, const Config& cfg);

struct StructuralReport {
    bool grid_supported = false;  // final generation sits on the eps-grid
    bool smooth = false;          // final occupation steps are at most 1
    bool range_monotone = false;  // per-generation range never shrinks forward in time
};

StructuralReport verify_structural_claims(const TreeProfile& argmin, const ModelParams& params);

} // namespace srbw::oracle
