#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "srbw/admissible.hpp"
#include "srbw/asymptotics.hpp"
#include "srbw/errors.hpp"

using namespace srbw;

TEST_CASE("exact collision sum on small staircases") {
    const auto c = analytic_interaction_cost(2, 3);
    CHECK(c.exact == 6);

    CHECK(analytic_interaction_cost(1, 3).exact == 0);  // all-ones end shape
    CHECK_THROWS_AS(analytic_interaction_cost(3, 4), NotRepresentableError);
    CHECK_THROWS_AS(analytic_interaction_cost(256, 8), NotRepresentableError);  // d < 0
}

TEST_CASE("exact collision sum equals the occupation sums across (N, K)") {
    for (int N = 2; N <= 14; ++N) {
        for (int K = 0; K <= std::min(6, max_feasible_K(N)); ++K) {
            const auto evo = staircase_evolution(N, K, 1.0);
            int128 measured = 0;
            for (const auto& occ : evo.occupations) measured += interaction_from_occupation(occ);
            CHECK(analytic_interaction_cost(std::int64_t{1} << K, N).exact == measured);
        }
    }
}

TEST_CASE("collision asymptotic form differs from the exact sum by the known remainder") {
    // exact - asymptotic = (2/3)(r + 2^N/r) - 2/7 for this family
    for (const auto& [N, K] : std::vector<std::pair<int, int>>{{12, 3}, {18, 5}, {24, 7}}) {
        const std::int64_t r = std::int64_t{1} << K;
        const auto c = analytic_interaction_cost(r, N);
        const double remainder = (2.0 / 3.0) * (static_cast<double>(r) +
                                                std::ldexp(1.0, N) / static_cast<double>(r)) -
                                 2.0 / 7.0;
        CHECK(to_double(c.exact) - c.asymptotic == doctest::Approx(remainder).epsilon(1e-9));
    }
}

TEST_CASE("frozen-phase collision bound") {
    const auto b = staircase_spreading_bound(2, 3);
    CHECK(b.frozen_interaction == 8);  // 4 sites, 2 per site at the last generation
    CHECK(b.closed_form == doctest::Approx(8.0).epsilon(1e-12));

    // measured staircase transport stays below the frozen-phase collision bound
    const ModelParams params{3, 1.0, 1.0};
    const auto rep = build_trajectory(params, 1);
    double transport = 0.0;
    for (const auto& plan : rep.staircase.transports) transport += plan.cost(params.eps);
    CHECK(transport <= params.beta * to_double(b.frozen_interaction));

    // widest staircase: direct sum with M = 1
    const auto b2 = staircase_spreading_bound(std::int64_t{1} << 5, 6);
    int128 direct = 0;
    for (int k = 1; k <= 5; ++k)
        direct += (int128{1} << 1) * ((int128{1} << k) * ((int128{1} << k) - 1));
    CHECK(b2.frozen_interaction == direct);
}

TEST_CASE("transport cost stays below the frozen-phase bound along real trajectories") {
    for (int N : {8, 10, 12}) {
        for (int K = 1; K <= std::min(4, max_feasible_K(N)); ++K) {
            const ModelParams params{N, 1.0, 1.0};
            const auto rep = build_trajectory(params, K);
            double transport = 0.0;
            for (const auto& plan : rep.staircase.transports) transport += plan.cost(params.eps);
            const auto bound = staircase_spreading_bound(std::int64_t{1} << K, N);
            CHECK(transport <= params.beta * to_double(bound.frozen_interaction));
        }
    }
}

TEST_CASE("cost model minimiser is the closed-form ramp width") {
    for (double beta : {0.6, 1.0, 3.0, 10.0}) {
        const ModelParams params{24, beta, 1.0};
        const double r = ramp_width_optimum(params);
        const double f0 = total_cost_model(r, params);
        CHECK(f0 < total_cost_model(r * 1.01, params));
        CHECK(f0 < total_cost_model(r * 0.99, params));
        // first-order condition: marginal collision cost = marginal spreading gain
        const double a = params.beta * (4.0 / 3.0) * std::ldexp(1.0, params.n_gen);
        const double b = std::ldexp(1.0, 2 * params.n_gen - 3);
        CHECK(a == doctest::Approx(2.0 * b / (r * r * r)).epsilon(1e-12));
    }
}

TEST_CASE("cost model optimum value: direct constant") {
    // at the optimum the collision term is exactly twice the spreading
    // term, so the minimum is (3/2)^(1/3) (beta eps)^(2/3) 2^(4N/3) to
    // leading order
    const int N = 30;
    const ModelParams params{N, 1.0, 1.0};
    const double r = ramp_width_optimum(params);
    const double inter = params.beta * (4.0 / 3.0) * std::ldexp(1.0, N) * r;
    const double spread = std::ldexp(1.0, 2 * N - 3) / (r * r);
    CHECK(inter == doctest::Approx(2.0 * spread).epsilon(1e-12));
    const double value = total_cost_model(r, params);
    CHECK(value / (std::cbrt(1.5) * std::ldexp(1.0, 4 * N / 3)) ==
          doctest::Approx(1.0).epsilon(2e-3));
}

TEST_CASE("freeze benchmark at the smallest sizes") {
    const auto b3 = freeze_benchmark_cost(ModelParams{3, 1.0, 1.0});
    CHECK(b3.split_gen == 2);
    CHECK(b3.frozen_interaction == 8);
    CHECK(freeze_benchmark_interaction_formula(3) == 8);

    const auto b6 = freeze_benchmark_cost(ModelParams{6, 1.0, 1.0});
    CHECK(b6.frozen_interaction == 224);
    CHECK(freeze_benchmark_interaction_formula(6) == 224);
    CHECK(b6.costs.collisions == b6.frozen_interaction);  // harmonic phase collision-free

    CHECK_THROWS_AS(freeze_benchmark_cost(ModelParams{4, 1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("heuristic closed form") {
    const auto plan = heuristic_optimum(4, 1.0, 1.0);
    CHECK(plan.r1_closed == doctest::Approx(4.0).epsilon(1e-12));  // (2^6)^(1/3)

    // family recursion: increments halve each generation
    for (int n = 1; n + 1 <= plan.n_gen; ++n) {
        const double d1 = plan.r_seq[static_cast<std::size_t>(n)] -
                          plan.r_seq[static_cast<std::size_t>(n - 1)];
        const double d2 = plan.r_seq[static_cast<std::size_t>(n + 1)] -
                          plan.r_seq[static_cast<std::size_t>(n)];
        CHECK(d2 == doctest::Approx(0.5 * d1).epsilon(1e-12));
    }
    CHECK(plan.r_seq[0] == 0.0);
}

TEST_CASE("heuristic numeric optimum approaches the closed form") {
    const auto plan = heuristic_optimum(20, 1.0, 1.0);
    CHECK(std::pow(plan.r1_numeric, 3) / std::ldexp(1.0, 2 * 20 - 2) ==
          doctest::Approx(1.0).epsilon(0.01));
    CHECK(plan.s_at_numeric <= plan.s_at_closed);

    // at small N the finite-size optimum sits visibly away from the
    // asymptotic scale
    const auto small = heuristic_optimum(4, 1.0, 1.0);
    CHECK(std::fabs(small.r1_numeric / small.r1_closed - 1.0) > 0.01);
    CHECK(std::fabs(small.r1_numeric / small.r1_closed - 1.0) < 0.25);
}

TEST_CASE("heuristic optimum value: direct constant") {
    const auto plan = heuristic_optimum(30, 1.0, 1.0);
    const double scaled = plan.s_at_numeric / std::ldexp(1.0, 40);
    CHECK(scaled == doctest::Approx(std::pow(2.0, 2.0 / 3.0)).epsilon(2e-3));
}

TEST_CASE("scaling-constant algebra") {
    // 2 (x/3)^(2/3) 2^(2/3) = 2^(5/3) 3^(-2/3) x^(2/3)
    for (double x : {0.5, 1.0, 3.0, 10.0}) {
        const double lhs = 2.0 * std::pow(x / 3.0, 2.0 / 3.0) * std::pow(2.0, 2.0 / 3.0);
        const double rhs =
            std::pow(2.0, 5.0 / 3.0) * std::pow(3.0, -2.0 / 3.0) * std::pow(x, 2.0 / 3.0);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
    }
}

TEST_CASE("freeze benchmark is not optimal at large N") {
    const int N = 30;
    const ModelParams params{N, 1.0, 1.0};
    const double freeze = to_double(freeze_benchmark_interaction_formula(N)) +
                          std::ldexp(1.0, 4 * N / 3 - 3);
    CHECK(freeze > total_cost_model(ramp_width_optimum(params), params));
}
