#include "srbw/admissible.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "srbw/asymptotics.hpp"
#include "srbw/errors.hpp"

namespace srbw {

std::vector<std::int64_t> AdmissibleShape::counts() const {
    std::vector<std::int64_t> c;
    c.reserve(static_cast<std::size_t>(range_sites()));
    for (std::int64_t j = 1; j <= r; ++j) c.push_back(j);
    for (std::int64_t j = 0; j < d; ++j) c.push_back(r);
    for (std::int64_t j = r; j >= 1; --j) c.push_back(j);
    return c;
}

OccupationProfile AdmissibleShape::occupation(std::int64_t offset) const {
    return OccupationProfile{generation, offset, counts()};
}

std::int64_t admissible_plateau_width(std::int64_t r, int n) {
    if (r < 1) throw NotRepresentableError("staircase ramp width must be >= 1");
    const std::int64_t total = std::int64_t{1} << n;
    if (total % r != 0)
        throw NotRepresentableError("ramp width " + std::to_string(r) +
                                    " does not divide 2^" + std::to_string(n));
    const std::int64_t d = total / r - (r + 1);
    if (d < 0)
        throw NotRepresentableError("negative plateau width for r=" + std::to_string(r) +
                                    ", n=" + std::to_string(n));
    return d;
}

AdmissibleShape build_admissible(std::int64_t r, int n) {
    return AdmissibleShape{r, admissible_plateau_width(r, n), n};
}

OccupationProfile grid_minimiser(int n, int K, double /*eps*/) {
    if (n < K) throw std::invalid_argument("grid_minimiser: needs n >= K");
    const std::int64_t sites = std::int64_t{1} << K;
    const std::int64_t per_site = std::int64_t{1} << (n - K);
    return OccupationProfile{n, -(sites / 2), std::vector<std::int64_t>(
                                                  static_cast<std::size_t>(sites), per_site)};
}

RestrictedMinimum restricted_minimiser(std::int64_t window_sites, int n) {
    const std::int64_t L = window_sites;
    if (L < 1) throw std::invalid_argument("restricted_minimiser: window must be >= 1");
    const std::int64_t total = std::int64_t{1} << n;
    const std::int64_t disc = (L + 1) * (L + 1) - 4 * total;
    if (disc < 0)
        throw InfeasibleError("window of " + std::to_string(L) + " sites cannot hold 2^" +
                              std::to_string(n) + " particles smoothly");

    RestrictedMinimum out;
    out.lambda_star = static_cast<double>(L) - std::sqrt(static_cast<double>(disc));

    // Integer water-filling under the ramp envelope e_l = min(l, L+1-l):
    // base height t, then the remainder raised one unit on interior
    // plateau sites (never the plateau ends, which sit next to height
    // t-1 ramp sites).
    const double x = 0.5 * (out.lambda_star + 1.0);
    std::int64_t t = static_cast<std::int64_t>(std::floor(x + 1e-12));
    auto filled = [&](std::int64_t h) { return h * (L + 1) - h * h; };
    while (t > 0 && filled(t) > total) --t;  // guard against roundoff in x
    const std::int64_t rem = total - filled(t);

    std::vector<std::int64_t> a(static_cast<std::size_t>(L));
    for (std::int64_t l = 1; l <= L; ++l)
        a[static_cast<std::size_t>(l - 1)] = std::min(t, std::min(l, L + 1 - l));
    for (std::int64_t i = 0; i < rem; ++i)
        a[static_cast<std::size_t>(t + i)] += 1;  // sites t+1 .. t+rem, 1-based

    // trim unused window (t = 0 leaves zero-height sites)
    std::size_t lo = 0, hi = a.size();
    while (lo < hi && a[lo] == 0) ++lo;
    while (hi > lo && a[hi - 1] == 0) --hi;
    std::vector<std::int64_t> trimmed(a.begin() + static_cast<std::ptrdiff_t>(lo),
                                      a.begin() + static_cast<std::ptrdiff_t>(hi));
    const auto span = static_cast<std::int64_t>(trimmed.size());
    out.occupation = OccupationProfile{n, -(span / 2), std::move(trimmed)};

    if (rem == 0 && t >= 1) {
        // exact staircase: ramps 1..t around a plateau of width L-2t... only
        // when the window is fully used
        if (filled(t) == total && 2 * t <= L + 1) {
            const std::int64_t d = L - 2 * t;
            if (d >= 0 && t * (t + 1) + d * t == total)
                out.shape = AdmissibleShape{t, d, n};
        }
    }
    return out;
}

TransportPlan monotone_transport(const OccupationProfile& from, const OccupationProfile& to) {
    TransportPlan plan;
    std::size_t i = 0, j = 0;
    std::int64_t a = from.counts.empty() ? 0 : from.counts[0];
    std::int64_t b = to.counts.empty() ? 0 : to.counts[0];
    while (i < from.counts.size() && j < to.counts.size()) {
        if (a == 0) {
            if (++i < from.counts.size()) a = from.counts[i];
            continue;
        }
        if (b == 0) {
            if (++j < to.counts.size()) b = to.counts[j];
            continue;
        }
        const std::int64_t m = std::min(a, b);
        const std::int64_t disp =
            (to.offset + static_cast<std::int64_t>(j)) - (from.offset + static_cast<std::int64_t>(i));
        if (disp != 0) {
            plan.moves.push_back({from.offset + static_cast<std::int64_t>(i), disp, m});
            plan.sq_site_displacement += static_cast<int128>(m) * disp * disp;
        }
        a -= m;
        b -= m;
    }
    if (a != 0 || b != 0 || i + 1 < from.counts.size() || j + 1 < to.counts.size()) {
        // only reachable on unequal totals
        throw std::invalid_argument("monotone_transport: particle totals differ");
    }
    return plan;
}

namespace {

// Parse a staircase occupation vector; returns (r, d) or throws.
std::pair<std::int64_t, std::int64_t> parse_staircase(const OccupationProfile& occ) {
    const auto& c = occ.counts;
    const std::int64_t r = *std::max_element(c.begin(), c.end());
    const std::int64_t L = static_cast<std::int64_t>(c.size());
    const std::int64_t d = L - 2 * r;
    if (d < 0) throw ShapeMismatchError("occupation is not a staircase (range too short)");
    AdmissibleShape probe{r, d, occ.generation};
    if (probe.counts() != c) throw ShapeMismatchError("occupation is not a staircase");
    return {r, d};
}

} // namespace

EvolveResult evolve_forward(const OccupationProfile& prev, double /*eps*/) {
    const auto [r_prev, d_prev] = parse_staircase(prev);
    const int n = prev.generation + 1;
    const std::int64_t r = 2 * r_prev;
    const std::int64_t d = d_prev - r_prev;
    if (d < 0)
        throw ShapeMismatchError("staircase at generation " + std::to_string(prev.generation) +
                                 " has no representable successor");

    OccupationProfile doubled = prev;
    doubled.generation = n;
    for (auto& cnt : doubled.counts) cnt *= 2;

    const AdmissibleShape target{r, d, n};
    const std::vector<std::int64_t> target_counts = target.counts();
    const std::int64_t growth = r / 2;  // total range growth in sites

    // Scan left-growth splits; the cost is convex in the offset. Ties go
    // to the most balanced split, then to the smaller left growth.
    EvolveResult best;
    int128 best_sq = std::numeric_limits<std::int64_t>::max();
    bool have = false;
    std::vector<std::int64_t> order(static_cast<std::size_t>(growth) + 1);
    std::iota(order.begin(), order.end(), std::int64_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::int64_t p, std::int64_t q) {
        return std::llabs(2 * p - growth) < std::llabs(2 * q - growth);
    });
    for (std::int64_t gl : order) {
        OccupationProfile candidate{n, prev.offset - gl, target_counts};
        TransportPlan plan = monotone_transport(doubled, candidate);
        if (!have || plan.sq_site_displacement < best_sq) {
            have = true;
            best_sq = plan.sq_site_displacement;
            best = EvolveResult{target, std::move(candidate), std::move(plan)};
        }
    }
    return best;
}

StaircaseEvolution staircase_evolution(int n_gen, int k_dyadic, double eps) {
    if (k_dyadic < 0 || k_dyadic >= n_gen)
        throw std::invalid_argument("staircase_evolution: need 0 <= K < N");
    admissible_plateau_width(std::int64_t{1} << k_dyadic, n_gen);  // throws if not representable

    StaircaseEvolution evo;
    evo.n_gen = n_gen;
    evo.k_dyadic = k_dyadic;
    const int M = n_gen - k_dyadic;
    const std::int64_t sites = std::int64_t{1} << M;
    evo.occupations.push_back(OccupationProfile{
        M, -(sites / 2), std::vector<std::int64_t>(static_cast<std::size_t>(sites), 1)});
    for (int n = M + 1; n <= n_gen; ++n) {
        EvolveResult step = evolve_forward(evo.occupations.back(), eps);
        evo.occupations.push_back(std::move(step.occupation));
        evo.transports.push_back(std::move(step.transport));
    }
    return evo;
}

TrajectoryReport build_trajectory(const ModelParams& params, int k_dyadic) {
    const int N = params.n_gen;
    if (k_dyadic < 0 || k_dyadic >= N)
        throw std::invalid_argument("build_trajectory: need 0 <= K < N");
    const int M = N - k_dyadic;

    TrajectoryReport rep;
    rep.params = params;
    rep.k_dyadic = k_dyadic;
    rep.split_gen = M;
    rep.dirichlet = solve_recursive(standard_boundary(M, params.eps));
    rep.staircase = staircase_evolution(N, k_dyadic, params.eps);

    CostBreakdown& cb = rep.costs;
    for (int n = 0; n < M; ++n) {
        double w = 0.0;
        for (double a : rep.dirichlet.increments[static_cast<std::size_t>(n) + 1]) w += 0.5 * a * a;
        cb.spr_per_gen.push_back(w);
    }
    for (const auto& plan : rep.staircase.transports)
        cb.spr_per_gen.push_back(plan.cost(params.eps));
    for (double w : cb.spr_per_gen) cb.s_spr += w;

    for (int n = 1; n <= M; ++n)
        cb.interaction_per_gen.push_back(
            interaction_count(rep.dirichlet.profile.generation(n), params.eps));
    for (std::size_t i = 1; i < rep.staircase.occupations.size(); ++i)
        cb.interaction_per_gen.push_back(interaction_from_occupation(rep.staircase.occupations[i]));
    for (const auto& c : cb.interaction_per_gen) cb.collisions += c;
    cb.s_total = cb.s_spr + params.beta * to_double(cb.collisions);
    return rep;
}

std::vector<std::int64_t> TrajectoryReport::range_sites() const {
    std::vector<std::int64_t> L;
    L.reserve(staircase.occupations.size());
    for (const auto& occ : staircase.occupations) L.push_back(occ.range_sites());
    return L;
}

TreeProfile trajectory_profile(const TrajectoryReport& report) {
    const int N = report.params.n_gen;
    const int M = report.split_gen;
    TreeProfile profile(N);
    for (int n = 0; n <= M; ++n) profile.generation(n) = report.dirichlet.profile.generation(n);

    for (int n = M + 1; n <= N; ++n) {
        const auto& parents = profile.generation(n - 1);
        // rank of each parent node in position order
        std::vector<std::uint32_t> order(parents.size());
        std::iota(order.begin(), order.end(), 0u);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::uint32_t p, std::uint32_t q) { return parents[p] < parents[q]; });
        const std::vector<double> target =
            report.staircase.occupations[static_cast<std::size_t>(n - M)].positions(
                report.params.eps);
        auto& children = profile.generation(n);
        for (std::size_t rank = 0; rank < order.size(); ++rank) {
            const std::uint64_t parent_idx = order[rank];
            children[2 * parent_idx] = target[2 * rank];
            children[2 * parent_idx + 1] = target[2 * rank + 1];
        }
    }
    return profile;
}

int max_feasible_K(int n_gen) {
    int best = 0;
    for (int k = 0; k < n_gen; ++k) {
        const std::int64_t r = std::int64_t{1} << k;
        if ((std::int64_t{1} << n_gen) % r == 0 &&
            (std::int64_t{1} << n_gen) / r - (r + 1) >= 0)
            best = k;
        else
            break;
    }
    return best;
}

OptimalK optimal_K(const ModelParams& params) {
    OptimalK out;
    out.r_star = ramp_width_optimum(params);
    if (out.r_star < 1.0)
        throw DegenerateRegimeError("ramp-width optimum below one site (r*=" +
                                    std::to_string(out.r_star) + ")");
    const int k_hi = max_feasible_K(params.n_gen);
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= k_hi; ++k) {
        const double c = total_cost_model(std::ldexp(1.0, k), params);
        if (c < best) {
            best = c;
            out.k_dyadic = k;
        }
    }
    return out;
}

} // namespace srbw
