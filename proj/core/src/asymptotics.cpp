#include "srbw/asymptotics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "srbw/admissible.hpp"
#include "srbw/dirichlet.hpp"
#include "srbw/errors.hpp"

namespace srbw {

namespace {

bool is_power_of_two(std::int64_t v) { return v > 0 && (v & (v - 1)) == 0; }

int log2_exact(std::int64_t v) {
    int k = 0;
    while ((std::int64_t{1} << k) < v) ++k;
    return k;
}

// 2 sum_{j<=m} (j^2 - j) = (2/3)(m-1)m(m+1), exact in integers.
int128 ramp_pair_count(std::int64_t m) {
    return static_cast<int128>(m - 1) * m * (m + 1) * 2 / 3;
}

} // namespace

InteractionCost analytic_interaction_cost(std::int64_t r, int n_gen) {
    if (!is_power_of_two(r))
        throw NotRepresentableError("end ramp width must be a power of two, got " +
                                    std::to_string(r));
    const int K = log2_exact(r);
    const std::int64_t d = admissible_plateau_width(r, n_gen);

    InteractionCost out;
    for (int k = 0; k <= K; ++k) {
        const std::int64_t rk = r >> k;
        const std::int64_t dk = d + r - rk;
        out.exact += ramp_pair_count(rk) + static_cast<int128>(dk) * rk * (rk - 1);
    }
    const double p2n = std::ldexp(1.0, n_gen);
    out.asymptotic = (4.0 / 3.0) * p2n * static_cast<double>(r) - 2.0 * p2n -
                     (8.0 / 21.0) * std::pow(static_cast<double>(r), 3);
    return out;
}

FrozenPhaseBound staircase_spreading_bound(std::int64_t r, int n_gen) {
    if (!is_power_of_two(r))
        throw NotRepresentableError("end ramp width must be a power of two");
    const int K = log2_exact(r);
    const int M = n_gen - K;
    if (M < 0) throw NotRepresentableError("ramp width exceeds the particle count");

    FrozenPhaseBound out;
    for (int k = 1; k <= K; ++k) {
        const int128 per_site = (int128{1} << k) * ((int128{1} << k) - 1);
        out.frozen_interaction += (int128{1} << M) * per_site;
    }
    out.closed_form = (1.0 / 3.0) * std::ldexp(1.0, n_gen + 2) * static_cast<double>(r) -
                      std::ldexp(1.0, n_gen + 1) + (2.0 / 3.0) * std::ldexp(1.0, M);
    return out;
}

double total_cost_model(double r, const ModelParams& params) {
    if (!(r > 0.0)) throw std::invalid_argument("total_cost_model: r must be positive");
    const int N = params.n_gen;
    const double interaction =
        params.beta * ((4.0 / 3.0) * std::ldexp(1.0, N) * r - std::ldexp(1.0, N + 1));
    const double spreading = params.eps * params.eps * std::ldexp(1.0, 2 * N - 3) / (r * r);
    return interaction + spreading;
}

double ramp_width_optimum(const ModelParams& params) {
    return std::cbrt(3.0 * params.eps * params.eps / params.beta) *
           std::exp2((params.n_gen - 4) / 3.0);
}

int128 freeze_benchmark_interaction_formula(int n_gen) {
    if (n_gen % 3 != 0) throw std::invalid_argument("freeze benchmark needs N divisible by 3");
    const int N = n_gen;
    const int128 numerator = (int128{1} << (4 * N / 3 + 2)) + (int128{1} << (2 * N / 3 + 1));
    return numerator / 3 - (int128{1} << (N + 1));
}

FreezeBenchmark freeze_benchmark_cost(const ModelParams& params) {
    const int N = params.n_gen;
    if (N % 3 != 0) throw std::invalid_argument("freeze benchmark needs N divisible by 3");
    const int M = 2 * N / 3;

    FreezeBenchmark out;
    out.split_gen = M;
    const DirichletSolution dir = solve_recursive(standard_boundary(M, params.eps));

    CostBreakdown& cb = out.costs;
    for (int n = 0; n < M; ++n) {
        double w = 0.0;
        for (double a : dir.increments[static_cast<std::size_t>(n) + 1]) w += 0.5 * a * a;
        cb.spr_per_gen.push_back(w);
    }
    for (int n = M; n < N; ++n) cb.spr_per_gen.push_back(0.0);  // frozen phase: no moves
    for (double w : cb.spr_per_gen) cb.s_spr += w;

    for (int n = 1; n <= M; ++n)
        cb.interaction_per_gen.push_back(interaction_count(dir.profile.generation(n), params.eps));
    const std::int64_t sites = std::int64_t{1} << M;
    for (int n = M + 1; n <= N; ++n) {
        const std::int64_t q = std::int64_t{1} << (n - M);
        const int128 i_n = static_cast<int128>(sites) * q * (q - 1);
        cb.interaction_per_gen.push_back(i_n);
        out.frozen_interaction += i_n;
    }
    for (const auto& c : cb.interaction_per_gen) cb.collisions += c;
    cb.s_total = cb.s_spr + params.beta * to_double(cb.collisions);
    return out;
}

double heuristic_action(double r1, int n_gen, double beta, double eps) {
    if (!(r1 > 0.0)) throw std::invalid_argument("heuristic_action: r1 must be positive");
    double s = 0.0;
    for (int n = 1; n <= n_gen; ++n) {
        const double rn = 2.0 * r1 * (1.0 - std::ldexp(1.0, -n));
        const double step = 2.0 * r1 * std::ldexp(1.0, -n);  // r(n) - r(n-1) on this family
        s += beta * eps * std::ldexp(1.0, 2 * n) / rn + std::ldexp(1.0, n) * step * step / 3.0;
    }
    return s;
}

HeuristicPlan heuristic_optimum(int n_gen, double beta, double eps) {
    if (n_gen < 2) throw std::invalid_argument("heuristic_optimum: needs N >= 2");
    HeuristicPlan plan;
    plan.n_gen = n_gen;
    plan.r1_closed = std::cbrt(beta * eps * std::ldexp(1.0, 2 * n_gen - 2));
    plan.s_at_closed = heuristic_action(plan.r1_closed, n_gen, beta, eps);

    // golden-section search; the functional is strictly convex in r1
    double lo = plan.r1_closed / 8.0, hi = plan.r1_closed * 8.0;
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = heuristic_action(x1, n_gen, beta, eps);
    double f2 = heuristic_action(x2, n_gen, beta, eps);
    for (int it = 0; it < 200 && (hi - lo) > 1e-12 * plan.r1_closed; ++it) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = heuristic_action(x1, n_gen, beta, eps);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = heuristic_action(x2, n_gen, beta, eps);
        }
    }
    plan.r1_numeric = 0.5 * (lo + hi);
    plan.s_at_numeric = heuristic_action(plan.r1_numeric, n_gen, beta, eps);

    plan.r_seq.resize(static_cast<std::size_t>(n_gen) + 1);
    for (int n = 0; n <= n_gen; ++n)
        plan.r_seq[static_cast<std::size_t>(n)] =
            2.0 * plan.r1_closed * (1.0 - std::ldexp(1.0, -n));
    return plan;
}

} // namespace srbw
