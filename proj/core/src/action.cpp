#include "srbw/action.hpp"

#include <algorithm>
#include <stdexcept>

namespace srbw {

double spreading_increment_cost(const TreeProfile& profile, int n) {
    if (n < 0 || n >= profile.depth())
        throw std::invalid_argument("spreading_increment_cost: generation out of range");
    const auto& parents = profile.generation(n);
    const auto& children = profile.generation(n + 1);
    double w = 0.0;
    for (std::size_t i = 0; i < parents.size(); ++i) {
        const double d0 = children[2 * i] - parents[i];
        const double d1 = children[2 * i + 1] - parents[i];
        w += 0.5 * (d0 * d0 + d1 * d1);
    }
    return w;
}

int128 interaction_count(std::vector<double> positions, double eps) {
    std::sort(positions.begin(), positions.end());
    const std::size_t m = positions.size();
    int128 pairs = 0; // unordered
    std::size_t lo = 0;
    for (std::size_t i = 0; i < m; ++i) {
        while (positions[i] - positions[lo] >= eps) ++lo;
        pairs += static_cast<int128>(i - lo);
    }
    return 2 * pairs;
}

int128 interaction_from_occupation(const OccupationProfile& occ) {
    int128 total = 0;
    for (std::int64_t a : occ.counts)
        total += static_cast<int128>(a) * (a - 1);
    return total;
}

CostBreakdown total_action(const TreeProfile& profile, const ModelParams& params) {
    if (profile.depth() != params.n_gen)
        throw std::invalid_argument("total_action: profile depth != params.N");
    CostBreakdown cb;
    cb.spr_per_gen.reserve(static_cast<std::size_t>(params.n_gen));
    for (int n = 0; n < params.n_gen; ++n) {
        cb.spr_per_gen.push_back(spreading_increment_cost(profile, n));
        cb.s_spr += cb.spr_per_gen.back();
    }
    cb.interaction_per_gen.reserve(static_cast<std::size_t>(params.n_gen));
    for (int n = 1; n <= params.n_gen; ++n) {
        cb.interaction_per_gen.push_back(interaction_count(profile.generation(n), params.eps));
        cb.collisions += cb.interaction_per_gen.back();
    }
    cb.s_total = cb.s_spr + params.beta * to_double(cb.collisions);
    return cb;
}

} // namespace srbw
