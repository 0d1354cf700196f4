#pragma once
#include <cstdint>
#include <vector>

#include "srbw/params.hpp"
#include "srbw/tree.hpp"

namespace srbw {

/// Grid convention, fixed once for the whole library: site k sits at
/// position eps*(k + 1/2), k integer. Neighbouring sites are exactly
/// eps apart, which the strict |dx| < eps collision rule leaves
/// penalty-free.
inline double site_position(std::int64_t site, double eps) {
    return eps * (static_cast<double>(site) + 0.5);
}

/// Integer occupation counts of one generation on the eps-grid.
/// counts[i] is the number of particles at site offset+i; the first and
/// last entries are nonzero (no zero padding) and the counts sum to 2^n.
struct OccupationProfile {
    std::int64_t offset = 0;            // grid index of the leftmost occupied site
    std::vector<std::int64_t> counts;   // per-site occupation numbers
    int generation = 0;                 // n, so the counts sum to 2^n

    OccupationProfile() = default;
    OccupationProfile(int generation_, std::int64_t offset_, std::vector<std::int64_t> counts_);

    [[nodiscard]] std::int64_t range_sites() const {
        return static_cast<std::int64_t>(counts.size());
    }

    /// Largest |a_{l+1} - a_l| including the implicit zeros outside the range.
    [[nodiscard]] std::int64_t max_step() const;

    /// Occupation steps of size >= 2 are never optimal in the
    /// beta > eps^2/2 regime.
    [[nodiscard]] bool is_smooth() const { return max_step() <= 1; }

    /// Positions of all particles, sorted ascending.
    [[nodiscard]] std::vector<double> positions(double eps) const;
};

/// Bin the positions of generation n to the eps-grid. Exact when the
/// positions lie on the grid; throws OffGridError if any position is
/// farther than eps/4 from every site.
OccupationProfile occupation_of_generation(const TreeProfile& profile, int n, const ModelParams& params);

/// Same binning for a raw position list (used for final-generation
/// summaries where no tree is at hand).
OccupationProfile bin_positions(const std::vector<double>& xs, int generation, double eps);

} // namespace srbw
