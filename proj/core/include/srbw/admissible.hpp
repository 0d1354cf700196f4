#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "srbw/action.hpp"
#include "srbw/dirichlet.hpp"
#include "srbw/occupation.hpp"
#include "srbw/params.hpp"

namespace srbw {

/// Staircase occupation shape: counts ramp 1..r, hold a plateau of
/// height r over d sites, and ramp back down. Total particles
/// r(r+1) + d r, which ties (r, d) to the generation by
/// d = 2^n / r - (r + 1).
struct AdmissibleShape {
    std::int64_t r = 1;        // ramp width / plateau height
    std::int64_t d = 0;        // plateau width in sites
    int generation = 0;        // n with r(r+1) + d r = 2^n
    std::int64_t range_sites() const { return 2 * r + d; }

    /// The occupation vector [1..r, r x d, r..1] placed at a given offset.
    [[nodiscard]] OccupationProfile occupation(std::int64_t offset) const;
    [[nodiscard]] std::vector<std::int64_t> counts() const;
};

/// Plateau width forced by particle conservation; throws
/// NotRepresentableError when 2^n/r is fractional or the width would be
/// negative.
std::int64_t admissible_plateau_width(std::int64_t r, int n);

AdmissibleShape build_admissible(std::int64_t r, int n);

/// Uniform minimiser of the collision count on 2^K sites: 2^(n-K)
/// particles per site, centered on the grid.
OccupationProfile grid_minimiser(int n, int K, double eps);

/// Minimiser of sum a(a-1) over smooth occupation vectors on a window
/// of L sites holding 2^n particles. lambda_star solves the relaxed
/// stationarity condition; occupation is the exact integer optimum
/// (water-filling under the ramp envelope min(l, L+1-l)). When the
/// relaxed solution is integral the optimum is the staircase shape
/// with r = (lambda_star + 1)/2.
struct RestrictedMinimum {
    double lambda_star = 0.0;
    OccupationProfile occupation;
    std::optional<AdmissibleShape> shape;  // set when the optimum is an exact staircase
    [[nodiscard]] int128 interaction() const { return interaction_from_occupation(occupation); }
};

RestrictedMinimum restricted_minimiser(std::int64_t window_sites, int n);

/// One particle block moved during a smoothing step.
struct TransportStep {
    std::int64_t from_site = 0;
    std::int64_t displacement = 0;  // in sites
    std::int64_t count = 0;
};

/// Minimal monotone transport between two occupation vectors with equal
/// totals: i-th particle to i-th particle in sorted order, which is
/// optimal for convex movement costs on the line.
struct TransportPlan {
    std::vector<TransportStep> moves;
    int128 sq_site_displacement = 0;  // sum of count * displacement^2

    [[nodiscard]] double cost(double eps) const {
        return 0.5 * eps * eps * to_double(sq_site_displacement);
    }
};

TransportPlan monotone_transport(const OccupationProfile& from, const OccupationProfile& to);

/// One branching step of the staircase: double every count in place,
/// then smooth to the next staircase by minimal monotone transport.
/// The target range grows by r_n/2 sites; the placement is the
/// cheapest-transport offset (ties resolved toward the smaller left
/// growth).
struct EvolveResult {
    AdmissibleShape shape;      // staircase at generation n
    OccupationProfile occupation;
    TransportPlan transport;
};

EvolveResult evolve_forward(const OccupationProfile& prev, double eps);

/// Staircase phase only: occupations and transport plans for
/// generations M..N where M = N - K. Generation M is one particle per
/// site on 2^M sites, centered.
struct StaircaseEvolution {
    int n_gen = 0;  // N
    int k_dyadic = 0;  // K
    std::vector<OccupationProfile> occupations;  // n = M..N
    std::vector<TransportPlan> transports;       // transitions M->M+1 .. N-1->N
};

StaircaseEvolution staircase_evolution(int n_gen, int k_dyadic, double eps);

/// Full optimal-candidate trajectory: harmonic spreading up to
/// generation M = N - K ending on the one-particle-per-site grid, then
/// the staircase phase up to N.
struct TrajectoryReport {
    ModelParams params{1, 1.0, 1.0};
    int k_dyadic = 0;           // K; r_N = 2^K
    int split_gen = 0;          // M = N - K
    DirichletSolution dirichlet;
    StaircaseEvolution staircase;
    CostBreakdown costs;

    [[nodiscard]] std::vector<std::int64_t> range_sites() const;
};

TrajectoryReport build_trajectory(const ModelParams& params, int k_dyadic);

/// Realise the trajectory as a full tree profile (staircase children
/// assigned block-wise in sorted order, which attains the recorded
/// transport cost).
TreeProfile trajectory_profile(const TrajectoryReport& report);

/// Dyadic ramp-width choice: minimises the closed-form total cost over
/// r = 2^K, with the real-valued optimum r* reported alongside. Throws
/// DegenerateRegimeError when r* < 1.
struct OptimalK {
    int k_dyadic = 0;
    double r_star = 0.0;
};

OptimalK optimal_K(const ModelParams& params);

/// Largest K with a representable end staircase (plateau width >= 0).
int max_feasible_K(int n_gen);

} // namespace srbw
