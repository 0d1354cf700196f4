#include "srbw/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "srbw/errors.hpp"
#include "srbw/occupation.hpp"

namespace srbw::oracle {

namespace {

struct Lattice {
    std::vector<int> codes;  // ascending, step 2, parity q mod 2
    int q = 1;
    double eps = 1.0;
    double unit = 0.0;  // eps^2 / (8 q^2): spread cost per squared code step

    double position(int code) const { return eps * static_cast<double>(code) / (2.0 * q); }
};

Lattice make_lattice(const Config& cfg) {
    Lattice lat;
    lat.q = cfg.refine;
    lat.eps = cfg.params.eps;
    lat.unit = lat.eps * lat.eps / (8.0 * lat.q * lat.q);
    const int span = cfg.refine * (2 * cfg.window + 1);
    for (int c = -span; c <= span; ++c)
        if (((c % 2) + 2) % 2 == ((cfg.refine % 2) + 2) % 2) lat.codes.push_back(c);
    return lat;
}

double binom(double n, int k) {
    double v = 1.0;
    for (int i = 0; i < k; ++i) v *= (n - i) / (i + 1);
    return v;
}

// Shared DFS over per-generation sorted code multisets. The transition
// spread uses the monotone matching against the doubled parent codes,
// which is optimal for the quadratic move cost; partial sums prune.
struct Search {
    const Config& cfg;
    const Lattice lat;
    double beta;
    double tie_tol;
    double best = std::numeric_limits<double>::infinity();
    std::uint64_t visited = 0;
    std::vector<std::vector<int>> stack;               // generations 1..g built so far
    std::vector<std::vector<std::vector<int>>> argmin; // completed optimal stacks
    // constrained mode: fixed final-generation multiset (empty = free)
    std::vector<int> forced_final;
    bool keep_argmin = true;

    explicit Search(const Config& c)
        : cfg(c), lat(make_lattice(c)), beta(c.params.beta) {
        tie_tol = 1e-9;
        if (c.initial_bound > 0.0) best = c.initial_bound + tie_tol;
    }

    // count of existing entries (sorted) strictly within eps of code c
    static int close_pairs(const std::vector<int>& gen, int upto, int c, int q) {
        int cnt = 0;
        for (int k = upto - 1; k >= 0 && c - gen[static_cast<std::size_t>(k)] < 2 * q; --k) ++cnt;
        return cnt;
    }

    void run() {
        std::vector<int> root{0};
        descend(0, root, 0.0);
    }

    void descend(int gen_done, const std::vector<int>& parents, double cost) {
        if (gen_done == cfg.n_gen) {
            finish(cost);
            return;
        }
        const int m = static_cast<int>(parents.size()) * 2;
        std::vector<int> doubled(static_cast<std::size_t>(m));
        for (std::size_t i = 0; i < parents.size(); ++i) {
            doubled[2 * i] = parents[i];
            doubled[2 * i + 1] = parents[i];
        }
        if (!forced_final.empty() && gen_done + 1 == cfg.n_gen) {
            // final generation fixed: just add its transition + interaction
            double inter = 0.0;
            long long su = 0;
            for (int t = 0; t < m; ++t) {
                const long long d = forced_final[static_cast<std::size_t>(t)] -
                                    doubled[static_cast<std::size_t>(t)];
                su += d * d;
                inter += 2.0 * close_pairs(forced_final, t, forced_final[static_cast<std::size_t>(t)],
                                           lat.q);
            }
            ++visited;
            const double total = cost + lat.unit * static_cast<double>(su) + beta * inter;
            std::vector<int> saved = forced_final;
            stack.push_back(std::move(saved));
            finish(total);
            stack.pop_back();
            return;
        }

        std::vector<int> gen(static_cast<std::size_t>(m));
        build(gen_done, doubled, gen, 0, 0, 0, 0.0, cost);
    }

    void build(int gen_done, const std::vector<int>& doubled, std::vector<int>& gen, int t,
               std::size_t site_min, long long su, double inter, double base) {
        const int m = static_cast<int>(gen.size());
        if (t == m) {
            ++visited;
            const double cost = base + lat.unit * static_cast<double>(su) + beta * inter;
            // reflection reduction at the first free generation
            if (gen_done == 0) {
                long long s = 0;
                for (int c : gen) s += c;
                if (s < 0) return;
            }
            stack.push_back(gen);
            descend(gen_done + 1, gen, cost);
            stack.pop_back();
            return;
        }
        for (std::size_t si = site_min; si < lat.codes.size(); ++si) {
            const int c = lat.codes[si];
            const long long d = c - doubled[static_cast<std::size_t>(t)];
            const long long su2 = su + d * d;
            const double inter2 = inter + 2.0 * close_pairs(gen, t, c, lat.q);
            const double partial = base + lat.unit * static_cast<double>(su2) + beta * inter2;
            if (partial > best + tie_tol) {
                // spread grows monotonically in c past the parent; interaction
                // never decreases, so once even su alone kills the branch for
                // all larger c we can stop scanning sites
                if (d > 0 && base + lat.unit * static_cast<double>(su + d * d) > best + tie_tol)
                    break;
                continue;
            }
            gen[static_cast<std::size_t>(t)] = c;
            build(gen_done, doubled, gen, t + 1, si, su2, inter2, base);
        }
    }

    void finish(double total) {
        if (total < best - tie_tol) {
            best = total;
            argmin.clear();
            if (keep_argmin) argmin.push_back(stack);
            return;
        }
        if (total <= best + tie_tol) {
            best = std::min(best, total);  // a seeded bound may sit tie_tol above
            if (keep_argmin &&
                std::find(argmin.begin(), argmin.end(), stack) == argmin.end())
                argmin.push_back(stack);
        }
    }
};

TreeProfile realise(const std::vector<std::vector<int>>& gens, const Lattice& lat, int n_gen) {
    TreeProfile profile(n_gen);
    std::vector<double> parents{0.0};
    for (int n = 1; n <= n_gen; ++n) {
        const auto& codes = gens[static_cast<std::size_t>(n) - 1];
        auto& level = profile.generation(n);
        const auto& prev = profile.generation(n - 1);
        std::vector<std::uint32_t> order(prev.size());
        for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::uint32_t a, std::uint32_t b) { return prev[a] < prev[b]; });
        for (std::size_t rank = 0; rank < order.size(); ++rank) {
            level[2 * order[rank]] = lat.position(codes[2 * rank]);
            level[2 * order[rank] + 1] = lat.position(codes[2 * rank + 1]);
        }
    }
    return profile;
}

std::uint64_t nominal_state_count(const Config& cfg) {
    const Lattice lat = make_lattice(cfg);
    const double sites = static_cast<double>(lat.codes.size());
    double total = 0.0;
    for (int g = 1; g <= cfg.n_gen; ++g)
        total += binom(sites + static_cast<double>(std::uint64_t{1} << g) - 1.0,
                       static_cast<int>(std::uint64_t{1} << g));
    total /= 2.0;  // reflection symmetry
    if (total > 1.8e19) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(total);
}

} // namespace

double snapped_action(const TreeProfile& profile, const Config& cfg) {
    const Lattice lat = make_lattice(cfg);
    const int N = profile.depth();
    double cost = 0.0;
    std::vector<int> prev{0};
    for (int n = 1; n <= N; ++n) {
        std::vector<double> xs = profile.generation(n);
        std::sort(xs.begin(), xs.end());
        std::vector<int> codes;
        codes.reserve(xs.size());
        for (double x : xs) {
            // nearest lattice code: round (2q x / eps - q)/2 to int, restore parity
            const double raw = 2.0 * lat.q * x / lat.eps;
            auto c = static_cast<int>(std::llround((raw - lat.q) / 2.0)) * 2 + lat.q;
            c = std::clamp(c, lat.codes.front(), lat.codes.back());
            codes.push_back(c);
        }
        std::sort(codes.begin(), codes.end());
        long long su = 0;
        double inter = 0.0;
        for (std::size_t t = 0; t < codes.size(); ++t) {
            const long long d = codes[t] - prev[t / 2];
            su += d * d;
            inter += 2.0 * Search::close_pairs(codes, static_cast<int>(t), codes[t], lat.q);
        }
        cost += lat.unit * static_cast<double>(su) + cfg.params.beta * inter;
        prev = std::move(codes);
    }
    return cost;
}

Result brute_force_min_action(const Config& cfg) {
    if (cfg.n_gen < 1 || cfg.n_gen > 4)
        throw std::invalid_argument("oracle: N must be in [1, 4]");
    if (cfg.refine < 1) throw std::invalid_argument("oracle: refine must be >= 1");
    Result res;
    res.nominal_states = nominal_state_count(cfg);
    if (res.nominal_states > cfg.state_budget)
        throw BudgetExceededError("oracle state space " + std::to_string(res.nominal_states) +
                                  " exceeds budget " + std::to_string(cfg.state_budget));

    Search search(cfg);
    search.run();
    res.min_action = search.best;
    res.visited = search.visited;

    // close the argmin set under reflection
    const Lattice lat = make_lattice(cfg);
    std::vector<std::vector<std::vector<int>>> all = search.argmin;
    for (const auto& seq : search.argmin) {
        std::vector<std::vector<int>> mirrored;
        mirrored.reserve(seq.size());
        for (const auto& gen : seq) {
            std::vector<int> neg(gen.rbegin(), gen.rend());
            for (int& c : neg) c = -c;
            mirrored.push_back(std::move(neg));
        }
        if (std::find(all.begin(), all.end(), mirrored) == all.end())
            all.push_back(std::move(mirrored));
    }
    res.argmin_codes = std::move(all);
    for (const auto& seq : res.argmin_codes)
        res.argmin.push_back(realise(seq, lat, cfg.n_gen));
    return res;
}

double constrained_min_action(const Config& cfg, const std::vector<std::int64_t>& end_counts) {
    if (end_counts.empty() || end_counts.front() < 1 || end_counts.back() < 1)
        throw std::invalid_argument("constrained_min_action: bad end occupation");
    const Lattice lat = make_lattice(cfg);
    std::int64_t total = 0;
    for (std::int64_t c : end_counts) total += c;
    if (total != std::int64_t{1} << cfg.n_gen)
        throw std::invalid_argument("constrained_min_action: end occupation holds wrong total");

    // eps-grid site k has code q(2k+1)
    const int span_sites = cfg.window;
    double best = std::numeric_limits<double>::infinity();
    const auto width = static_cast<std::int64_t>(end_counts.size());
    for (std::int64_t k0 = -span_sites; k0 + width - 1 <= span_sites - 1; ++k0) {
        std::vector<int> fixed;
        fixed.reserve(static_cast<std::size_t>(total));
        for (std::int64_t i = 0; i < width; ++i) {
            const int code = cfg.refine * static_cast<int>(2 * (k0 + i) + 1);
            for (std::int64_t c = 0; c < end_counts[static_cast<std::size_t>(i)]; ++c)
                fixed.push_back(code);
        }
        Search search(cfg);
        if (best < std::numeric_limits<double>::infinity())
            search.best = best + search.tie_tol;
        search.keep_argmin = false;
        search.forced_final = std::move(fixed);
        search.run();
        best = std::min(best, search.best);
    }
    return best;
}

StructuralReport verify_structural_claims(const TreeProfile& argmin, const ModelParams& params) {
    StructuralReport rep;
    const int N = argmin.depth();
    const double eps = params.eps;

    rep.grid_supported = true;
    for (double x : argmin.generation(N)) {
        const double k = x / eps - 0.5;
        if (std::fabs(k - std::llround(k)) > 1e-9) rep.grid_supported = false;
    }

    rep.smooth = false;
    if (rep.grid_supported)
        rep.smooth = bin_positions(argmin.generation(N), N, eps).is_smooth();

    rep.range_monotone = true;
    double prev_range = 0.0;
    for (int n = 1; n <= N; ++n) {
        const auto& xs = argmin.generation(n);
        const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
        const double range = *hi - *lo;
        if (range < prev_range - 1e-12) rep.range_monotone = false;
        prev_range = range;
    }
    return rep;
}

} // namespace srbw::oracle
