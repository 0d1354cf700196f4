#pragma once
#include <vector>

#include "srbw/int128.hpp"
#include "srbw/occupation.hpp"
#include "srbw/params.hpp"
#include "srbw/tree.hpp"

namespace srbw {

/// Full decomposition of the action of a configuration: Gaussian
/// spreading cost per generation plus beta times the exact ordered-pair
/// collision count per generation.
struct CostBreakdown {
    std::vector<double> spr_per_gen;     // W_n, n = 0..N-1
    std::vector<int128> interaction_per_gen; // I_n, n = 1..N (index 0 -> n=1)
    double s_spr = 0.0;                  // sum of spr_per_gen, fixed order
    int128 collisions = 0;               // J, total ordered-pair count
    double s_total = 0.0;                // s_spr + beta * J

    [[nodiscard]] int128 interaction_at(int n) const {
        return interaction_per_gen.at(static_cast<std::size_t>(n) - 1);
    }
};

/// W_n(h): half the summed squared parent-to-child increments from
/// generation n to n+1.
double spreading_increment_cost(const TreeProfile& profile, int n);

/// Ordered pairs (i, j), i != j, with |x_i - x_j| < eps, strictly.
/// Particles at distance exactly eps do not interact, so an eps-spaced
/// grid is penalty-free. Sort-then-window, O(m log m).
int128 interaction_count(std::vector<double> positions, double eps);

/// Same count for an on-grid generation: sum of a_l (a_l - 1) over
/// sites, since only same-site pairs are strictly within eps.
int128 interaction_from_occupation(const OccupationProfile& occ);

/// Evaluate every cost term of a full profile of depth N = params.n_gen.
CostBreakdown total_action(const TreeProfile& profile, const ModelParams& params);

} // namespace srbw
