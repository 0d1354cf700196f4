#include "srbw/validate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "srbw/action.hpp"
#include "srbw/admissible.hpp"
#include "srbw/asymptotics.hpp"
#include "srbw/dirichlet.hpp"
#include "srbw/errors.hpp"
#include "srbw/mcmc.hpp"
#include "srbw/oracle.hpp"
#include "srbw/params.hpp"

namespace srbw::validate {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

CheckResult check(std::string id, std::string name, bool pass, std::string detail) {
    return CheckResult{std::move(id), std::move(name), pass, std::move(detail)};
}

// ---------------------------------------------------------------- C1
std::vector<CheckResult> c01(const Options&) {
    const auto t0 = Clock::now();
    double worst_residual_rel = 0.0;  // residual / (eps 2^M)
    double worst_solver_rel = 0.0;
    for (int M = 2; M <= 16; ++M) {
        const auto boundary = standard_boundary(M, 1.0);
        const auto rec = solve_recursive(boundary);
        const auto cf = solve_closed_form(boundary);
        const double scale = std::ldexp(1.0, M);
        worst_residual_rel = std::max(worst_residual_rel, harmonicity_residual(rec) / scale);
        worst_residual_rel = std::max(worst_residual_rel, harmonicity_residual(cf) / scale);
        double diff = 0.0, amp = 0.0;
        for (int n = 0; n <= M; ++n) {
            const auto& a = rec.profile.generation(n);
            const auto& b = cf.profile.generation(n);
            for (std::size_t i = 0; i < a.size(); ++i) {
                diff = std::max(diff, std::fabs(a[i] - b[i]));
                amp = std::max(amp, std::fabs(a[i]));
            }
        }
        worst_solver_rel = std::max(worst_solver_rel, diff / amp);
    }
    const double elapsed = seconds_since(t0);
    const bool pass = worst_residual_rel <= 1e-9 && worst_solver_rel <= 1e-10 && elapsed < 5.0;
    return {check("C01", "harmonicity residual and solver agreement, M=2..16", pass,
                  "max residual/(eps 2^M)=" + fmt(worst_residual_rel) +
                      " (tol 1e-9), solver diff rel=" + fmt(worst_solver_rel) +
                      " (tol 1e-10), elapsed=" + fmt(elapsed) + "s (limit 5)")};
}

// ---------------------------------------------------------------- C2
std::vector<CheckResult> c02(const Options&) {
    double worst = 0.0;
    for (int M = 1; M <= 16; ++M) {
        const auto sol = solve_recursive(standard_boundary(M, 1.0));
        const double sigma_right = sol.subtree_sums[1][1];
        const double expected = std::ldexp(1.0, 2 * M - 3);
        worst = std::max(worst, std::fabs(sigma_right / expected - 1.0));
    }
    return {check("C02", "right-half subtree sum equals eps 2^(2M-3), M<=16", worst <= 1e-12,
                  "max rel err=" + fmt(worst) + " (tol 1e-12)")};
}

// ---------------------------------------------------------------- C3
std::vector<CheckResult> c03(const Options&) {
    double min_gap = std::numeric_limits<double>::infinity();
    double min_interior = std::numeric_limits<double>::infinity();
    for (int M = 2; M <= 14; ++M) {
        const auto rep = spacing_check(solve_recursive(standard_boundary(M, 1.0)));
        min_gap = std::min(min_gap, rep.min_gap);
        min_interior = std::min(min_interior, rep.min_interior_gap);
    }
    const bool pass = min_gap >= 1.0 - 1e-12 && min_interior >= 4.0 / 3.0 - 1e-9;
    return {check("C03", "inter-particle spacing >= eps (interior >= 4eps/3), M=2..14", pass,
                  "min gap=" + fmt(min_gap) + " (>= 1), min interior gap=" + fmt(min_interior) +
                      " (>= 4/3 - 1e-9)")};
}

// ---------------------------------------------------------------- C4
std::vector<CheckResult> c04a(const Options&) {
    bool in_bounds = true;
    std::string bound_detail;
    for (int M = 2; M <= 16; ++M) {
        const double s = dirichlet_spreading_cost(solve_recursive(standard_boundary(M, 1.0)));
        const auto b = standard_spreading_bounds(M, 1.0);
        if (!(s >= b.lower * (1 - 1e-12) && s <= b.upper * (1 + 1e-12))) {
            in_bounds = false;
            bound_detail = " violated at M=" + std::to_string(M);
        }
    }
    const double s1 = dirichlet_spreading_cost(solve_recursive(standard_boundary(1, 1.0)));
    const double s2 = dirichlet_spreading_cost(solve_recursive(standard_boundary(2, 1.0)));
    const bool pass =
        in_bounds && std::fabs(s1 - 0.25) <= 1e-12 && std::fabs(s2 - 7.0 / 6.0) <= 1e-12;
    return {check("C04a", "spreading cost bounds (M<=16) and exact small-M values", pass,
                  "bounds ok=" + std::string(in_bounds ? "yes" : "no") + bound_detail +
                      ", S(M=1)=" + fmt(s1) + " (want 0.25), S(M=2)=" + fmt(s2) +
                      " (want 7/6)")};
}

std::vector<CheckResult> c04b(const Options&) {
    const double s20 = dirichlet_spreading_cost(solve_recursive(standard_boundary(20, 1.0)));
    const double ratio20 = s20 / std::ldexp(1.0, 2 * 20 - 3);
    const bool pass = std::fabs(ratio20 - 1.0) <= 0.01;
    return {check("C04b", "spreading cost vs eps^2 2^(2M-3) at M=20", pass,
                  "S(M=20)/(eps^2 2^37)=" + fmt(ratio20) +
                      " (tol 1%); two independent solvers and a conjugate-gradient oracle all "
                      "measure eps^2 2^(2M-4): the squared leading increments average n per node "
                      "(binomial second moment), not (3/2)n-1; see E5")};
}

// ---------------------------------------------------------------- C5
// Exhaustive minimum of sum a(a-1) over smooth non-negative integer
// vectors on a window of L sites (zero outside) holding S particles.
std::int64_t exhaustive_smooth_minimum(std::int64_t window, std::int64_t total) {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    // heights[i] for window sites; DFS with sum pruning
    std::function<void(std::int64_t, std::int64_t, std::int64_t, std::int64_t)> rec =
        [&](std::int64_t pos, std::int64_t prev, std::int64_t sum, std::int64_t cost) {
            if (cost >= best) return;
            if (pos == window) {
                if (sum == total && prev <= 1) best = std::min(best, cost);
                return;
            }
            const std::int64_t remaining_sites = window - pos;
            for (std::int64_t a = std::max<std::int64_t>(0, prev - 1); a <= prev + 1; ++a) {
                // reachable totals from height a over the remaining sites,
                // ending at height <= 1
                std::int64_t max_extra = 0, min_extra = 0;
                for (std::int64_t i = 0; i < remaining_sites; ++i) {
                    const std::int64_t up = a + i;
                    const std::int64_t down = remaining_sites - i;  // must return to <=1
                    max_extra += std::min(up, down);
                    min_extra += std::max<std::int64_t>(a - i, 0);
                }
                if (sum + max_extra < total) continue;
                if (sum + min_extra > total) continue;
                rec(pos + 1, a, sum + a, cost + a * (a - 1));
            }
        };
    rec(0, 0, 0, 0);
    return best;
}

std::vector<CheckResult> c05(const Options&) {
    const auto t0 = Clock::now();
    bool all_equal = true;
    std::string detail;
    int cases = 0;
    for (std::int64_t L = 1; L <= 12; ++L) {
        for (int n = 0; (std::int64_t{1} << (n + 2)) <= (L + 1) * (L + 1); ++n) {
            const auto rm = restricted_minimiser(L, n);
            const auto formula_value = rm.interaction();
            const auto brute = exhaustive_smooth_minimum(L, std::int64_t{1} << n);
            ++cases;
            if (formula_value != static_cast<int128>(brute) || !rm.occupation.is_smooth()) {
                all_equal = false;
                detail += " mismatch at L=" + std::to_string(L) + ",n=" + std::to_string(n) +
                          " (formula=" + srbw::to_string(formula_value) +
                          ", brute=" + std::to_string(brute) + ")";
            }
        }
    }
    const double elapsed = seconds_since(t0);
    const bool pass = all_equal && elapsed < 30.0;
    return {check("C05", "stationary-multiplier minimiser equals exhaustive optimum, L<=12", pass,
                  std::to_string(cases) + " (L,n) cases, all equal=" +
                      (all_equal ? "yes" : "no") + detail + ", elapsed=" + fmt(elapsed) +
                      "s (limit 30)")};
}

// ---------------------------------------------------------------- C6
std::vector<CheckResult> c06(const Options&) {
    bool ok = true;
    std::string detail;
    int cases = 0;
    for (int N : {9, 12, 15}) {
        for (int K = 1; K <= max_feasible_K(N); ++K) {
            const int M = N - K;
            const auto evo = staircase_evolution(N, K, 1.0);
            const std::int64_t r_end = std::int64_t{1} << K;
            const std::int64_t L_end = evo.occupations.back().range_sites();
            ++cases;
            for (int n = M; n <= N; ++n) {
                const auto& occ = evo.occupations[static_cast<std::size_t>(n - M)];
                const std::int64_t r_n = std::int64_t{1} << (n - M);
                const auto shape = build_admissible(r_n, n);
                if (occ.counts != shape.counts() || !occ.is_smooth()) {
                    ok = false;
                    detail += " shape mismatch at N=" + std::to_string(N) +
                              ",K=" + std::to_string(K) + ",n=" + std::to_string(n);
                }
                // range recursion and its closed form
                if (n > M) {
                    const auto& prev = evo.occupations[static_cast<std::size_t>(n - M) - 1];
                    if (prev.range_sites() != occ.range_sites() - r_n / 2) {
                        ok = false;
                        detail += " range step broken at N=" + std::to_string(N) +
                                  ",K=" + std::to_string(K) + ",n=" + std::to_string(n);
                    }
                }
                const std::int64_t closed = L_end - r_end + (r_end >> (N - n));
                if (occ.range_sites() != closed) {
                    ok = false;
                    detail += " range closed form broken at n=" + std::to_string(n);
                }
            }
        }
    }
    return {check("C06", "staircase trajectory is the exact shape family, N in {9,12,15}", ok,
                  std::to_string(cases) + " (N,K) trajectories" +
                      (detail.empty() ? "" : detail))};
}

// ---------------------------------------------------------------- C7
std::vector<CheckResult> c07(const Options&) {
    const auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    int cases = 0;
    for (int N = 2; N <= 24; ++N) {
        for (int K = 0; K <= std::min(8, max_feasible_K(N)); ++K) {
            const auto evo = staircase_evolution(N, K, 1.0);
            int128 measured = 0;
            for (const auto& occ : evo.occupations) measured += interaction_from_occupation(occ);
            const auto analytic = analytic_interaction_cost(std::int64_t{1} << K, N);
            ++cases;
            if (measured != analytic.exact) {
                ok = false;
                detail += " mismatch N=" + std::to_string(N) + ",K=" + std::to_string(K) +
                          " measured=" + srbw::to_string(measured) +
                          " analytic=" + srbw::to_string(analytic.exact);
            }
        }
    }
    return {check("C07", "collision closed sum equals occupation sums, N<=24, K<=8", ok,
                  std::to_string(cases) + " (N,K) cases, integer equality" + detail +
                      ", elapsed=" + fmt(seconds_since(t0)) + "s")};
}

// ---------------------------------------------------------------- C8
std::vector<CheckResult> c08(const Options&) {
    bool ok = true;
    std::string detail;
    for (int N : {3, 6, 9}) {
        const ModelParams params{N, 1.0, 1.0};
        const auto bench = freeze_benchmark_cost(params);
        const auto formula = freeze_benchmark_interaction_formula(N);
        if (bench.frozen_interaction != formula) ok = false;
        detail += " N=" + std::to_string(N) + ": measured=" +
                  srbw::to_string(bench.frozen_interaction) +
                  ", formula=" + srbw::to_string(formula) + ";";
    }
    return {check("C08", "freeze-benchmark collisions match the exact formula, N in {3,6,9}", ok,
                  detail)};
}

// ---------------------------------------------------------------- C9
std::vector<CheckResult> c09(const Options&) {
    bool ok = true;
    std::string detail;
    int cases = 0;
    const std::vector<std::pair<double, double>> grid = {
        {1.0, 0.5}, {1.0, 1.0}, {3.0, 1.0}, {10.0, 1.0}};  // (beta, eps); beta*eps in {0.5,1,3,10}
    for (int N = 12; N <= 30; ++N) {
        for (auto [beta, eps] : grid) {
            const ModelParams params{N, beta, eps};
            const auto opt = optimal_K(params);
            const double predicted =
                (N - 4) / 3.0 + std::log2(3.0 * eps * eps / beta) / 3.0;
            const auto rounded = static_cast<int>(std::llround(predicted));
            ++cases;
            if (std::abs(opt.k_dyadic - rounded) > 1) {
                ok = false;
                detail += " N=" + std::to_string(N) + ",beta=" + fmt(beta) + ",eps=" + fmt(eps) +
                          ": argmin K=" + std::to_string(opt.k_dyadic) + " vs rounded " +
                          std::to_string(rounded);
            }
        }
    }
    return {check("C09", "dyadic ramp argmin within +-1 of the closed-form K, N=12..30", ok,
                  std::to_string(cases) + " grid points" + detail)};
}

// --------------------------------------------------------------- C10
std::vector<CheckResult> c10a(const Options&) {
    const int N = 30;
    const ModelParams params{N, 1.0, 1.0};
    const double r = ramp_width_optimum(params);
    const double measured = total_cost_model(r, params);
    const double reference = std::pow(2.0, 5.0 / 3.0) * std::pow(3.0, -2.0 / 3.0) *
                             std::ldexp(1.0, 4 * N / 3);  // (beta eps)^{2/3} = 1
    const double ratio = measured / reference;
    const bool pass = std::fabs(ratio - 1.0) <= 0.02;
    return {check("C10a", "optimal-cost scaling vs 2^(5/3) 3^(-2/3) (beta eps)^(2/3) 2^(4N/3)",
                  pass,
                  "measured/reference=" + fmt(ratio) + " (tol 2%); direct evaluation of the cost "
                  "model at its optimum gives the constant (3/2)^(1/3) ~= " +
                      fmt(std::cbrt(1.5)) + ", i.e. 3/4 of the reference constant " +
                      fmt(std::pow(2.0, 5.0 / 3.0) * std::pow(3.0, -2.0 / 3.0)) +
                      "; see E1 for the directly-derived constant check")};
}

std::vector<CheckResult> c10b(const Options&) {
    const int N = 18;
    const ModelParams params{N, 1.0, 1.0};
    const auto opt = optimal_K(params);
    const auto report = build_trajectory(params, opt.k_dyadic);
    const double reference = std::pow(2.0, 5.0 / 3.0) * std::pow(3.0, -2.0 / 3.0) *
                             std::ldexp(1.0, 4 * N / 3);
    const double ratio = report.costs.s_total / reference;
    const bool pass = std::fabs(ratio - 1.0) <= 0.02;
    return {check("C10b",
                  "direct trajectory summation vs 2^(5/3) 3^(-2/3) (beta eps)^(2/3) 2^(4N/3), "
                  "N=18",
                  pass,
                  "K=" + std::to_string(opt.k_dyadic) + ", measured=" + fmt(report.costs.s_total) +
                      ", reference=" + fmt(reference) + ", ratio=" + fmt(ratio) +
                      " (tol 2%); the direct sum matches the corrected closed-form decomposition "
                      "instead, see E6")};
}

std::vector<CheckResult> c10c(const Options&) {
    const int N = 30;
    const ModelParams params{N, 1.0, 1.0};
    const double r = ramp_width_optimum(params);
    // marginal interaction cost A balances marginal spreading gain 2B/r^3
    const double a = params.beta * (4.0 / 3.0) * std::ldexp(1.0, N);
    const double b = params.eps * params.eps * std::ldexp(1.0, 2 * N - 3);
    const double rel = std::fabs(a - 2.0 * b / (r * r * r)) / a;
    return {check("C10c", "first-order condition at the ramp-width optimum", rel <= 1e-9,
                  "|A - 2B/r*^3|/A=" + fmt(rel) + " (tol 1e-9)")};
}

// --------------------------------------------------------------- C11
std::vector<CheckResult> c11a(const Options&) {
    const int N = 20;
    const auto plan = heuristic_optimum(N, 1.0, 1.0);
    const double cube = std::pow(plan.r1_numeric, 3) / std::ldexp(1.0, 2 * N - 2);
    const bool pass = std::fabs(cube - 1.0) <= 0.01;
    return {check("C11a", "heuristic scale optimum solves r1^3 = beta eps 2^(2N-2), N=20", pass,
                  "r1_numeric^3/(beta eps 2^(2N-2))=" + fmt(cube) + " (tol 1%)")};
}

std::vector<CheckResult> c11b(const Options&) {
    const int N = 30;
    const auto plan = heuristic_optimum(N, 1.0, 1.0);
    const double scaled = plan.s_at_numeric / std::ldexp(1.0, 4 * N / 3);
    const double reference = (2.0 / 3.0) * std::pow(2.0, 2.0 / 3.0);
    const double ratio = scaled / reference;
    const bool pass = std::fabs(ratio - 1.0) <= 0.02;
    return {check("C11b", "heuristic optimum value vs (2/3) 2^(2/3) (beta eps)^(2/3) 2^(4N/3)",
                  pass,
                  "measured/reference=" + fmt(ratio) +
                      " (tol 2%); direct evaluation of the heuristic functional at its optimum "
                      "gives the constant 2^(2/3) ~= " +
                      fmt(std::pow(2.0, 2.0 / 3.0)) + ", i.e. 3/2 of the reference constant " +
                      fmt(reference) + "; see E2 for the directly-derived constant check")};
}

// --------------------------------------------------------------- C12
std::vector<CheckResult> c12(const Options&) {
    std::vector<CheckResult> out;
    const ModelParams params{3, 1.0, 1.0};

    // end-shape candidates: staircase trajectories for every feasible K,
    // plus the freeze benchmark end shape
    std::vector<std::pair<std::string, std::vector<std::int64_t>>> candidates;
    for (int K = 0; K <= max_feasible_K(3); ++K) {
        const auto evo = staircase_evolution(3, K, params.eps);
        candidates.emplace_back("trajectory K=" + std::to_string(K),
                                evo.occupations.back().counts);
    }
    candidates.emplace_back("freeze benchmark", std::vector<std::int64_t>{2, 2, 2, 2});

    for (int q : {1, 2}) {
        const auto t0 = Clock::now();
        oracle::Config cfg;
        cfg.n_gen = 3;
        cfg.window = 4;
        cfg.refine = q;
        cfg.params = params;

        double best_candidate = std::numeric_limits<double>::infinity();
        std::string best_name;
        for (const auto& [name, counts] : candidates) {
            const double v = oracle::constrained_min_action(cfg, counts);
            if (v < best_candidate) {
                best_candidate = v;
                best_name = name;
            }
        }
        cfg.initial_bound = best_candidate;
        const auto res = oracle::brute_force_min_action(cfg);
        const double elapsed = seconds_since(t0);

        bool structure_ok = !res.argmin.empty();
        for (const auto& profile : res.argmin) {
            const auto rep = oracle::verify_structural_claims(profile, params);
            if (!rep.grid_supported || !rep.smooth) structure_ok = false;
        }
        const double gap = best_candidate / res.min_action - 1.0;
        const bool pass = elapsed < 60.0 && structure_ok && gap <= 0.05 &&
                          res.min_action <= best_candidate + 1e-9;
        out.push_back(check(
            "C12", "exhaustive minimum vs constructed candidates, N=3, q=" + std::to_string(q),
            pass,
            "min=" + fmt(res.min_action) + ", best candidate (" + best_name + ")=" +
                fmt(best_candidate) + ", gap=" + fmt(100.0 * gap) + "% (tol 5%), argmin count=" +
                std::to_string(res.argmin.size()) + ", grid+smooth=" +
                (structure_ok ? "yes" : "no") + ", states visited=" + std::to_string(res.visited) +
                ", elapsed=" + fmt(elapsed) + "s (limit 60)"));
    }
    return out;
}

// --------------------------------------------------------------- C13
std::vector<CheckResult> c13(const Options& opt) {
    const auto t0 = Clock::now();
    const ModelParams params{1, 1.0, 1.0};
    const auto est = mcmc::estimate_partition(params, 1'000'000, opt.seed);
    const double truth = mcmc::partition_closed_form_n1(params);
    const double sigmas = std::fabs(est.z_hat - truth) / est.std_err;

    // Discrete 5-point chain kernel: stationarity of exp(-S) checked by
    // direct matrix multiplication.
    const double spacing = 0.8;  // eps units, so neighbours collide
    std::vector<double> site(5);
    for (int i = 0; i < 5; ++i) site[static_cast<std::size_t>(i)] = spacing * (i - 2);
    const auto action = [&](int i, int j) {
        const double x = site[static_cast<std::size_t>(i)], y = site[static_cast<std::size_t>(j)];
        const double collide = std::fabs(x - y) < params.eps ? 2.0 : 0.0;
        return 0.5 * (x * x + y * y) + params.beta * collide;
    };
    std::vector<double> pi(25);
    double z = 0.0;
    for (int s = 0; s < 25; ++s) {
        pi[static_cast<std::size_t>(s)] = std::exp(-action(s / 5, s % 5));
        z += pi[static_cast<std::size_t>(s)];
    }
    for (auto& p : pi) p /= z;
    std::vector<double> kernel(25 * 25, 0.0);
    for (int s = 0; s < 25; ++s) {
        const int i = s / 5, j = s % 5;
        double stay = 1.0;
        for (int child = 0; child < 2; ++child) {
            for (int v = 0; v < 5; ++v) {
                const int ti = child == 0 ? v : i;
                const int tj = child == 0 ? j : v;
                const int t = ti * 5 + tj;
                if (t == s) continue;
                const double acc =
                    std::min(1.0, std::exp(-(action(ti, tj) - action(i, j))));
                const double p = 0.5 * (1.0 / 5.0) * acc;
                kernel[static_cast<std::size_t>(s * 25 + t)] = p;
                stay -= p;
            }
        }
        kernel[static_cast<std::size_t>(s * 25 + s)] = stay;
    }
    double residual = 0.0;
    for (int t = 0; t < 25; ++t) {
        double acc = 0.0;
        for (int s = 0; s < 25; ++s)
            acc += pi[static_cast<std::size_t>(s)] * kernel[static_cast<std::size_t>(s * 25 + t)];
        residual = std::max(residual, std::fabs(acc - pi[static_cast<std::size_t>(t)]));
    }
    const double elapsed = seconds_since(t0);
    const bool pass = sigmas <= 3.0 && residual <= 1e-12 && elapsed < 30.0;
    return {check("C13", "sampler: partition estimate and kernel stationarity, N=1", pass,
                  "Z_hat=" + fmt(est.z_hat) + " +- " + fmt(est.std_err) + ", closed form=" +
                      fmt(truth) + " (" + fmt(sigmas) + " sigma, tol 3), stationarity residual=" +
                      fmt(residual) + " (tol 1e-12), elapsed=" + fmt(elapsed) + "s (limit 30)")};
}

// --------------------------------------------------------------- C14
std::vector<CheckResult> c14a(const Options&) {
    double worst_corrected = 0.0;        // relative to the coefficient size
    double best_uncorrected = std::numeric_limits<double>::infinity();
    for (int M = 2; M <= 12; ++M) {
        const auto b = [&](int m) { return 1.0 / (std::ldexp(1.0, M - m + 1) - 1.0); };
        for (int n = 2; n < M; ++n) {
            for (int l = 1; l <= n - 1; ++l) {
                const double lhs = b(n - l + 1) / b(n + 1) - b(n - l + 1) / b(n);
                const double magnitude = std::ldexp(1.0, -l) / (1.0 - std::ldexp(1.0, -M + n - l));
                worst_corrected =
                    std::max(worst_corrected, std::fabs(lhs + magnitude) / magnitude);
                best_uncorrected =
                    std::min(best_uncorrected, std::fabs(lhs - magnitude) / magnitude);
            }
        }
    }
    const bool pass = worst_corrected <= 1e-12 && best_uncorrected >= 1.9;
    return {check("C14a", "telescoped solver coefficient carries a negative sign", pass,
                  "max relative |lhs + 2^-l/(1-2^(n-M-l))|=" + fmt(worst_corrected) +
                      " (tol 1e-12); the unsigned variant misses by " + fmt(best_uncorrected) +
                      "x the coefficient size")};
}

std::vector<CheckResult> c14b(const Options&) {
    bool ok = true;
    std::string detail;
    for (int n : {4, 6, 9, 12}) {
        for (int K = 1; K <= std::min(4, max_feasible_K(n)); ++K) {
            const std::int64_t r = std::int64_t{1} << K;
            const std::int64_t d = admissible_plateau_width(r, n);
            const std::int64_t conserved = (r / 2) * (r / 2 + 1) + (d + r / 2) * (r / 2);
            const std::int64_t wrong_width = (r / 2) * (r / 2 + 1) + (d + r) * (r / 2);
            if (conserved != (std::int64_t{1} << (n - 1)) ||
                wrong_width == (std::int64_t{1} << (n - 1))) {
                ok = false;
                detail += " failed at n=" + std::to_string(n) + ",K=" + std::to_string(K);
            }
        }
    }
    // and the constructive check: doubling the conserving predecessor
    // smooths into the target staircase (one spot instance)
    const auto evo = staircase_evolution(9, 3, 1.0);
    const auto end = build_admissible(8, 9);
    if (evo.occupations.back().counts != end.counts()) {
        ok = false;
        detail += " evolution does not reach the target staircase";
    }
    return {check("C14b", "staircase predecessor plateau width d + r/2 conserves particles", ok,
                  detail.empty() ? "conservation holds; d + r variant never conserves" : detail)};
}

std::vector<CheckResult> c14c(const Options&) {
    const int N = 24;
    const std::int64_t r = 128;
    const auto analytic = analytic_interaction_cost(r, N);
    const auto evo = staircase_evolution(N, 7, 1.0);
    int128 measured = 0;
    for (const auto& occ : evo.occupations) measured += interaction_from_occupation(occ);

    const double band = 5.5 * static_cast<double>(r) * static_cast<double>(r);
    const double err_kept = std::fabs(to_double(analytic.exact) - analytic.asymptotic);
    // variant without the factor r on the leading term
    const double variant = (1.0 / 3.0) * std::ldexp(1.0, N + 2) + 2.0 * static_cast<double>(r) -
                           std::ldexp(1.0, N + 1);
    const double err_variant = std::fabs(to_double(analytic.exact) - variant);
    const bool pass = measured == analytic.exact && err_kept <= band && err_variant > band;
    return {check("C14c", "collision cost keeps the r-weighted leading term", pass,
                  "exact=" + srbw::to_string(analytic.exact) + " equals occupation sum=" +
                      (measured == analytic.exact ? std::string("yes") : std::string("no")) +
                      "; |exact - kept form|=" + fmt(err_kept) + " <= " + fmt(band) +
                      "; unweighted variant misses by " + fmt(err_variant))};
}

// ------------------------------------------------------------ extras
std::vector<CheckResult> e1(const Options&) {
    const int N = 30;
    const ModelParams params{N, 1.0, 1.0};
    const double measured = total_cost_model(ramp_width_optimum(params), params);
    const double reference = std::cbrt(1.5) * std::ldexp(1.0, 4 * N / 3);
    const double ratio = measured / reference;
    return {check("E1", "optimal-cost scaling vs direct constant (3/2)^(1/3)",
                  std::fabs(ratio - 1.0) <= 0.02,
                  "measured/reference=" + fmt(ratio) + " (tol 2%)")};
}

std::vector<CheckResult> e2(const Options&) {
    const int N = 30;
    const auto plan = heuristic_optimum(N, 1.0, 1.0);
    const double ratio =
        plan.s_at_numeric / (std::pow(2.0, 2.0 / 3.0) * std::ldexp(1.0, 4 * N / 3));
    return {check("E2", "heuristic optimum vs direct constant 2^(2/3)",
                  std::fabs(ratio - 1.0) <= 0.02,
                  "measured/reference=" + fmt(ratio) + " (tol 2%)")};
}

std::vector<CheckResult> e3(const Options&) {
    const double heuristic_const = (2.0 / 3.0) * std::pow(2.0, 2.0 / 3.0);
    const double optimum_const = std::pow(2.0, 5.0 / 3.0) * std::pow(3.0, -2.0 / 3.0);
    return {check("E3", "published scaling constants compared", true,
                  "heuristic constant " + fmt(heuristic_const) + " < optimal-cost constant " +
                      fmt(optimum_const) + " (the smaller is the heuristic one)")};
}

std::vector<CheckResult> e4(const Options&) {
    const int N = 30;
    const ModelParams params{N, 1.0, 1.0};
    const double freeze = to_double(freeze_benchmark_interaction_formula(N)) * params.beta +
                          params.eps * params.eps * std::ldexp(1.0, 4 * N / 3 - 4);
    const double best = total_cost_model(ramp_width_optimum(params), params);
    return {check("E4", "freeze benchmark costs more than the staircase optimum, N=30",
                  freeze > best,
                  "freeze=" + fmt(freeze) + " vs staircase optimum=" + fmt(best))};
}

std::vector<CheckResult> e5(const Options&) {
    const double s20 = dirichlet_spreading_cost(solve_recursive(standard_boundary(20, 1.0)));
    const double ratio = s20 / std::ldexp(1.0, 2 * 20 - 4);
    return {check("E5", "spreading cost vs the directly-derived eps^2 2^(2M-4), M=20",
                  std::fabs(ratio - 1.0) <= 0.01,
                  "S(M=20)/(eps^2 2^36)=" + fmt(ratio) + " (tol 1%)")};
}

std::vector<CheckResult> e6(const Options&) {
    // direct trajectory sum against its closed-form decomposition:
    // exact collision sum, harmonic spreading eps^2 2^(2M-4), transport
    // bounded by the frozen-phase collisions
    const int N = 18;
    const ModelParams params{N, 1.0, 1.0};
    const auto opt = optimal_K(params);
    const std::int64_t r = std::int64_t{1} << opt.k_dyadic;
    const auto report = build_trajectory(params, opt.k_dyadic);
    const double analytic = params.beta * to_double(analytic_interaction_cost(r, N).exact) +
                            params.eps * params.eps *
                                std::ldexp(1.0, 2 * (N - opt.k_dyadic) - 4);
    const double ratio = report.costs.s_total / analytic;
    return {check("E6", "direct trajectory summation vs corrected decomposition, N=18",
                  std::fabs(ratio - 1.0) <= 0.02,
                  "K=" + std::to_string(opt.k_dyadic) + ", measured=" +
                      fmt(report.costs.s_total) + ", decomposition=" + fmt(analytic) +
                      ", ratio=" + fmt(ratio) + " (tol 2%)")};
}

using Runner = std::vector<CheckResult> (*)(const Options&);

const std::vector<std::pair<std::string, Runner>>& registry() {
    static const std::vector<std::pair<std::string, Runner>> reg = {
        {"C01", &c01},   {"C02", &c02},   {"C03", &c03},   {"C04a", &c04a}, {"C04b", &c04b},
        {"C05", &c05},   {"C06", &c06},   {"C07", &c07},   {"C08", &c08},   {"C09", &c09},
        {"C10a", &c10a}, {"C10b", &c10b}, {"C10c", &c10c}, {"C11a", &c11a}, {"C11b", &c11b},
        {"C12", &c12},   {"C13", &c13},   {"C14a", &c14a}, {"C14b", &c14b}, {"C14c", &c14c},
        {"E1", &e1},     {"E2", &e2},     {"E3", &e3},     {"E4", &e4},     {"E5", &e5},
        {"E6", &e6},
    };
    return reg;
}

const std::map<std::string, std::vector<std::string>>& suite_map() {
    static const std::map<std::string, std::vector<std::string>> suites = {
        {"dirichlet", {"C01", "C02", "C03", "C04a", "C04b", "C14a", "E5"}},
        {"admissible", {"C05", "C06", "C14b"}},
        {"asymptotics",
         {"C07", "C08", "C09", "C10a", "C10b", "C10c", "C11a", "C11b", "C14c", "E1", "E2", "E3",
          "E4", "E6"}},
        {"oracle", {"C12"}},
        {"mcmc", {"C13"}},
    };
    return suites;
}

} // namespace

std::vector<std::string> all_criteria() {
    std::vector<std::string> ids;
    ids.reserve(registry().size());
    for (const auto& [id, fn] : registry()) ids.push_back(id);
    return ids;
}

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& [name, ids] : suite_map()) names.push_back(name);
    names.push_back("all");
    return names;
}

std::vector<CheckResult> run_criterion(const std::string& id, const Options& opt) {
    for (const auto& [cid, fn] : registry())
        if (cid == id) return fn(opt);
    throw std::invalid_argument("unknown criterion id: " + id);
}

std::vector<CheckResult> run_suite(const std::string& suite, const Options& opt) {
    std::vector<CheckResult> out;
    if (suite == "all") {
        for (const auto& [id, fn] : registry()) {
            auto r = fn(opt);
            out.insert(out.end(), r.begin(), r.end());
        }
        return out;
    }
    const auto it = suite_map().find(suite);
    if (it == suite_map().end()) throw std::invalid_argument("unknown suite: " + suite);
    for (const auto& id : it->second) {
        auto r = run_criterion(id, opt);
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

bool all_pass(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.pass; });
}

std::string format_line(const CheckResult& r) {
    return r.id + " " + r.name + ": " + (r.pass ? "PASS" : "FAIL") + " [" + r.detail + "]";
}

} // namespace srbw::validate
