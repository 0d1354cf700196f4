#include "srbw/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace srbw::mcmc {

ChainState make_chain(const ModelParams& params, std::uint64_t seed) {
    if (params.n_gen > 16) throw std::invalid_argument("mcmc: chain capped at N <= 16");
    ChainState s;
    s.params = params;
    s.seed = seed;
    s.rng = Rng(seed);
    s.increments.resize(static_cast<std::size_t>(params.n_gen) + 1);
    for (int n = 1; n <= params.n_gen; ++n)
        s.increments[static_cast<std::size_t>(n)].assign(std::size_t{1} << n, 0.0);
    s.positions = TreeProfile(params.n_gen);
    s.action = total_action(s.positions, params);
    return s;
}

CostBreakdown recompute_action(const ChainState& state) {
    return total_action(state.positions, state.params);
}

bool metropolis_step(ChainState& s, double proposal_sigma) {
    if (!(proposal_sigma > 0.0)) throw std::invalid_argument("metropolis_step: sigma must be > 0");
    const int N = s.params.n_gen;
    const std::uint64_t n_nodes = (std::uint64_t{2} << N) - 2;  // non-root nodes
    std::uint64_t pick = s.rng.below(n_nodes);
    int depth = 1;
    while (pick >= (std::uint64_t{1} << depth)) {
        pick -= std::uint64_t{1} << depth;
        ++depth;
    }
    const std::uint64_t idx = pick;
    const double delta = proposal_sigma * s.rng.gauss();
    ++s.proposed;

    const double a_old = s.increments[static_cast<std::size_t>(depth)][idx];
    const double d_spread = 0.5 * ((a_old + delta) * (a_old + delta) - a_old * a_old);

    // collision change: generations depth..N with the subtree below
    // (depth, idx) rigidly shifted by delta
    std::vector<int128> new_counts(static_cast<std::size_t>(N - depth) + 1);
    int128 d_collisions = 0;
    for (int n = depth; n <= N; ++n) {
        std::vector<double> xs = s.positions.generation(n);
        const int shift_bits = n - depth;
        const std::uint64_t lo = idx << shift_bits;
        const std::uint64_t hi = (idx + 1) << shift_bits;
        for (std::uint64_t i = lo; i < hi; ++i) xs[i] += delta;
        const int128 i_new = interaction_count(std::move(xs), s.params.eps);
        new_counts[static_cast<std::size_t>(n - depth)] = i_new;
        d_collisions += i_new - s.action.interaction_at(n);
    }

    const double d_action = d_spread + s.params.beta * to_double(d_collisions);
    bool accept = d_action <= 0.0;
    if (!accept) accept = s.rng.uniform() < std::exp(-d_action);
    if (!accept) return false;

    ++s.accepted;
    s.increments[static_cast<std::size_t>(depth)][idx] = a_old + delta;
    for (int n = depth; n <= N; ++n) {
        auto& h = s.positions.generation(n);
        const int shift_bits = n - depth;
        const std::uint64_t lo = idx << shift_bits;
        const std::uint64_t hi = (idx + 1) << shift_bits;
        for (std::uint64_t i = lo; i < hi; ++i) h[i] += delta;
        s.action.interaction_per_gen[static_cast<std::size_t>(n) - 1] =
            new_counts[static_cast<std::size_t>(n - depth)];
    }
    s.action.spr_per_gen[static_cast<std::size_t>(depth) - 1] += d_spread;
    s.action.s_spr += d_spread;
    s.action.collisions += d_collisions;
    s.action.s_total = s.action.s_spr + s.params.beta * to_double(s.action.collisions);
    return true;
}

ChainEstimate estimate_partition(const ModelParams& params, std::int64_t n_samples,
                                 std::uint64_t seed) {
    if (n_samples < 1000) throw std::invalid_argument("estimate_partition: need >= 1000 samples");
    Rng rng(seed);
    const int N = params.n_gen;
    std::vector<std::vector<double>> gen(static_cast<std::size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) gen[static_cast<std::size_t>(n)].assign(std::size_t{1} << n, 0.0);

    double mean = 0.0, m2 = 0.0;
    for (std::int64_t s = 0; s < n_samples; ++s) {
        int128 collisions = 0;
        for (int n = 1; n <= N; ++n) {
            const auto& parent = gen[static_cast<std::size_t>(n) - 1];
            auto& cur = gen[static_cast<std::size_t>(n)];
            for (std::size_t i = 0; i < cur.size(); ++i)
                cur[i] = parent[i >> 1] + rng.gauss();
            collisions += interaction_count(cur, params.eps);
        }
        const double w = std::exp(-params.beta * to_double(collisions));
        const double d = w - mean;
        mean += d / static_cast<double>(s + 1);
        m2 += d * (w - mean);
    }
    ChainEstimate est;
    est.n_samples = n_samples;
    est.z_hat = mean;
    est.std_err = std::sqrt(m2 / static_cast<double>(n_samples - 1) /
                            static_cast<double>(n_samples));
    return est;
}

double partition_closed_form_n1(const ModelParams& params) {
    // |X1 - X2| with X1, X2 iid standard normal: P(|G| < eps), Var G = 2
    const double p_close = std::erf(params.eps / 2.0);
    return 1.0 - (1.0 - std::exp(-2.0 * params.beta)) * p_close;
}

ProfileSummary empirical_profile(ChainState& s, std::int64_t n_samples, std::int64_t burn_in,
                                 std::int64_t thin, double proposal_sigma) {
    if (n_samples < 1 || thin < 1 || burn_in < 0)
        throw std::invalid_argument("empirical_profile: bad sampling parameters");
    for (std::int64_t i = 0; i < burn_in; ++i) metropolis_step(s, proposal_sigma);

    ProfileSummary sum;
    sum.n_samples = n_samples;
    const int N = s.params.n_gen;
    std::int64_t smooth = 0;
    std::map<std::int64_t, double> occupancy;
    for (std::int64_t k = 0; k < n_samples; ++k) {
        for (std::int64_t i = 0; i < thin; ++i) metropolis_step(s, proposal_sigma);
        const auto& xs = s.positions.generation(N);
        const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
        sum.mean_range += *hi - *lo;

        std::map<std::int64_t, std::int64_t> bins;
        for (double x : xs)
            ++bins[static_cast<std::int64_t>(std::llround(x / s.params.eps - 0.5))];
        bool ok = true;
        std::int64_t prev_site = bins.begin()->first - 1, prev_count = 0;
        for (auto [site, count] : bins) {
            if (site != prev_site + 1 && prev_count > 1) ok = false;  // drop to zero
            if (site == prev_site + 1 && std::llabs(count - prev_count) > 1) ok = false;
            if (site != prev_site + 1 && count > 1) ok = false;  // rise from zero
            prev_site = site;
            prev_count = count;
            occupancy[site] += static_cast<double>(count);
        }
        if (prev_count > 1) ok = false;
        if (ok) ++smooth;
    }
    sum.mean_range /= static_cast<double>(n_samples);
    sum.smooth_fraction = static_cast<double>(smooth) / static_cast<double>(n_samples);
    for (auto& [site, c] : occupancy) c /= static_cast<double>(n_samples);
    sum.mean_site_occupancy = std::move(occupancy);
    return sum;
}

} // namespace srbw::mcmc
