#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "srbw/dirichlet.hpp"

using namespace srbw;

namespace {

// Independent oracle: minimise the quadratic spreading cost with pinned
// root and leaves by conjugate gradient on the interior unknowns. The
// stationarity equations are exactly the harmonicity conditions.
TreeProfile cg_minimise(const DirichletBoundary& boundary, int iters) {
    const int M = boundary.depth;
    TreeProfile h(M);
    h.generation(M) = boundary.u;

    // flatten interior generations 1..M-1
    auto apply_laplacian = [&](const std::vector<std::vector<double>>& x,
                               std::vector<std::vector<double>>& out, bool with_boundary) {
        // gradient of sum (h(z)-h(parent))^2 / 2 wrt interior values:
        // 3 h(z) - h(z0) - h(z1) - h(parent)
        for (int n = 1; n < M; ++n) {
            const auto& cur = x[static_cast<std::size_t>(n)];
            auto& g = out[static_cast<std::size_t>(n)];
            for (std::size_t i = 0; i < cur.size(); ++i) {
                double v = 3.0 * cur[i];
                if (n > 1) v -= x[static_cast<std::size_t>(n - 1)][i >> 1];
                if (n + 1 < M) {
                    v -= x[static_cast<std::size_t>(n + 1)][2 * i];
                    v -= x[static_cast<std::size_t>(n + 1)][2 * i + 1];
                }
                if (with_boundary && n + 1 == M)
                    v -= boundary.u[2 * i] + boundary.u[2 * i + 1];
                g[i] = v;
            }
        }
    };

    std::vector<std::vector<double>> x(static_cast<std::size_t>(M)), r(x), p(x), ap(x);
    for (int n = 1; n < M; ++n) {
        x[static_cast<std::size_t>(n)].assign(std::size_t{1} << n, 0.0);
        r[static_cast<std::size_t>(n)].assign(std::size_t{1} << n, 0.0);
        p[static_cast<std::size_t>(n)].assign(std::size_t{1} << n, 0.0);
        ap[static_cast<std::size_t>(n)].assign(std::size_t{1} << n, 0.0);
    }
    auto dot = [&](const auto& a, const auto& b) {
        double s = 0.0;
        for (int n = 1; n < M; ++n) {
            const auto& av = a[static_cast<std::size_t>(n)];
            const auto& bv = b[static_cast<std::size_t>(n)];
            for (std::size_t i = 0; i < av.size(); ++i) s += av[i] * bv[i];
        }
        return s;
    };

    apply_laplacian(x, r, true);           // r = A x - b with x = 0 gives -b
    for (int n = 1; n < M; ++n)
        for (auto& v : r[static_cast<std::size_t>(n)]) v = -v;
    p = r;
    double rr = dot(r, r);
    for (int it = 0; it < iters && rr > 1e-26; ++it) {
        apply_laplacian(p, ap, false);
        const double alpha = rr / dot(p, ap);
        for (int n = 1; n < M; ++n)
            for (std::size_t i = 0; i < p[static_cast<std::size_t>(n)].size(); ++i) {
                x[static_cast<std::size_t>(n)][i] += alpha * p[static_cast<std::size_t>(n)][i];
                r[static_cast<std::size_t>(n)][i] -= alpha * ap[static_cast<std::size_t>(n)][i];
            }
        const double rr_new = dot(r, r);
        const double beta = rr_new / rr;
        rr = rr_new;
        for (int n = 1; n < M; ++n)
            for (std::size_t i = 0; i < p[static_cast<std::size_t>(n)].size(); ++i)
                p[static_cast<std::size_t>(n)][i] =
                    r[static_cast<std::size_t>(n)][i] + beta * p[static_cast<std::size_t>(n)][i];
    }
    for (int n = 1; n < M; ++n) h.generation(n) = x[static_cast<std::size_t>(n)];
    return h;
}

DirichletBoundary random_boundary(int M, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 3.0);
    std::vector<double> u(std::size_t{1} << M);
    for (auto& v : u) v = g(rng);
    return DirichletBoundary{M, std::move(u)};
}

} // namespace

TEST_CASE("standard boundary values") {
    const auto b1 = standard_boundary(1, 1.0);
    CHECK(b1.u == std::vector<double>{-0.5, 0.5});

    const auto b2 = standard_boundary(2, 1.0);
    CHECK(b2.u[0] == -0.5);   // 00
    CHECK(b2.u[1] == -1.5);   // 01
    CHECK(b2.u[2] == 0.5);    // 10
    CHECK(b2.u[3] == 1.5);    // 11

    // sorted values form an eps-grid symmetric about zero
    for (int M = 1; M <= 8; ++M) {
        auto u = standard_boundary(M, 0.5).u;
        std::sort(u.begin(), u.end());
        for (std::size_t i = 0; i + 1 < u.size(); ++i)
            CHECK(u[i + 1] - u[i] == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(u.front() == doctest::Approx(-u.back()).epsilon(1e-14));
    }
}

TEST_CASE("recursive solve matches hand-solved M=2") {
    const auto sol = solve_recursive(standard_boundary(2, 1.0));
    CHECK(sol.profile.value({1, 1}) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(sol.profile.value({1, 0}) == doctest::Approx(-2.0 / 3.0).epsilon(1e-14));
    CHECK(sol.increments[2][3] == doctest::Approx(5.0 / 6.0).epsilon(1e-13));   // node 11
    CHECK(sol.increments[2][2] == doctest::Approx(-1.0 / 6.0).epsilon(1e-13));  // node 10
    CHECK(dirichlet_spreading_cost(sol) == doctest::Approx(7.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("leaves pinned at depth one") {
    const auto sol = solve_recursive(standard_boundary(1, 1.0));
    CHECK(sol.profile.value({1, 1}) == 0.5);
    CHECK(sol.profile.value({1, 0}) == -0.5);
    CHECK(dirichlet_spreading_cost(sol) == doctest::Approx(0.25));
}

TEST_CASE("right-half subtree sum identity") {
    for (int M = 1; M <= 14; ++M) {
        const auto sol = solve_recursive(standard_boundary(M, 1.0));
        CHECK(sol.subtree_sums[1][1] ==
              doctest::Approx(std::ldexp(1.0, 2 * M - 3)).epsilon(1e-13));
        CHECK(sol.subtree_sums[1][0] ==
              doctest::Approx(-std::ldexp(1.0, 2 * M - 3)).epsilon(1e-13));
    }
}

TEST_CASE("harmonicity residual stays at rounding level") {
    for (int M = 2; M <= 12; ++M) {
        const auto boundary = standard_boundary(M, 1.0);
        const double tol = 1e-9 * std::ldexp(1.0, M);
        CHECK(harmonicity_residual(solve_recursive(boundary)) <= tol);
        CHECK(harmonicity_residual(solve_closed_form(boundary)) <= tol);
    }
}

TEST_CASE("the two solvers agree on random boundaries") {
    std::mt19937_64 rng(101);
    for (int M : {1, 2, 3, 5, 8, 12}) {
        const auto boundary = random_boundary(M, rng);
        const auto rec = solve_recursive(boundary);
        const auto cf = solve_closed_form(boundary);
        double amp = 1e-300;
        for (int n = 0; n <= M; ++n)
            for (double v : rec.profile.generation(n)) amp = std::max(amp, std::fabs(v));
        for (int n = 0; n <= M; ++n) {
            const auto& a = rec.profile.generation(n);
            const auto& b = cf.profile.generation(n);
            const auto& ia = rec.increments[static_cast<std::size_t>(n)];
            const auto& ib = cf.increments[static_cast<std::size_t>(n)];
            for (std::size_t i = 0; i < a.size(); ++i) {
                CHECK(std::fabs(a[i] - b[i]) <= 1e-10 * amp);
                if (n >= 1) CHECK(std::fabs(ia[i] - ib[i]) <= 1e-10 * amp);
            }
        }
    }
}

TEST_CASE("leaf values equal the boundary exactly") {
    std::mt19937_64 rng(202);
    for (int M : {1, 3, 6}) {
        const auto boundary = random_boundary(M, rng);
        const auto rec = solve_recursive(boundary);
        CHECK(rec.profile.generation(M) == boundary.u);
    }
}

TEST_CASE("conjugate-gradient quadratic minimiser agrees with both solvers") {
    std::mt19937_64 rng(303);
    for (int M : {2, 4, 7, 10}) {
        const auto boundary = random_boundary(M, rng);
        const auto rec = solve_recursive(boundary);
        const auto cg = cg_minimise(boundary, 4000);
        double amp = 1e-300;
        for (double v : boundary.u) amp = std::max(amp, std::fabs(v));
        for (int n = 1; n < M; ++n) {
            const auto& a = rec.profile.generation(n);
            const auto& b = cg.generation(n);
            for (std::size_t i = 0; i < a.size(); ++i)
                CHECK(std::fabs(a[i] - b[i]) <= 1e-8 * amp);
        }
    }
}

TEST_CASE("antisymmetry under flipping the leading address bit") {
    // The standard boundary negates when z_1 flips with the remaining
    // bits kept, and so does the whole solution, exactly in floating
    // point. (Flipping every bit does not preserve it.)
    for (int M : {2, 4, 9}) {
        const auto sol = solve_recursive(standard_boundary(M, 1.0));
        for (int n = 1; n <= M; ++n) {
            const auto& h = sol.profile.generation(n);
            const std::uint64_t flip = std::uint64_t{1} << (n - 1);
            for (std::uint64_t i = 0; i < h.size(); ++i)
                CHECK(h[i] == -h[i ^ flip]);
        }
    }
}

TEST_CASE("subtree sums recompute from the boundary exactly") {
    std::mt19937_64 rng(404);
    const auto boundary = random_boundary(6, rng);
    const auto sol = solve_recursive(boundary);
    for (int n = 0; n <= 6; ++n) {
        const auto& sums = sol.subtree_sums[static_cast<std::size_t>(n)];
        for (std::size_t i = 0; i < sums.size(); ++i) {
            double acc_check = 0.0;
            // pairwise, same association as the solver
            std::vector<double> level(boundary.u.begin() +
                                          static_cast<std::ptrdiff_t>(i << (6 - n)),
                                      boundary.u.begin() +
                                          static_cast<std::ptrdiff_t>((i + 1) << (6 - n)));
            while (level.size() > 1) {
                std::vector<double> next(level.size() / 2);
                for (std::size_t k = 0; k < next.size(); ++k)
                    next[k] = level[2 * k] + level[2 * k + 1];
                level = std::move(next);
            }
            acc_check = level[0];
            CHECK(sums[i] == acc_check);
        }
    }
}

TEST_CASE("explicit standard profile matches the solved tree") {
    for (int M : {1, 2, 3, 6, 10}) {
        const auto sol = solve_recursive(standard_boundary(M, 1.0));
        double amp = std::ldexp(1.0, M - 1);
        for (int n = 0; n <= M; ++n) {
            const auto& h = sol.profile.generation(n);
            for (std::uint64_t i = 0; i < h.size(); ++i) {
                const double v = explicit_standard_profile(M, NodeId{n, i}, 1.0);
                CHECK(std::fabs(v - h[i]) <= 1e-11 * amp);
            }
        }
    }
}

TEST_CASE("rightmost-particle asymptotics") {
    // h at the all-ones node approaches eps 2^(M-1) (1 - (n+2) 2^(-n-1)):
    // the node collects n 2^(-n-1) from the centering term plus
    // 1 - (n+1) 2^(-n) from the address bits
    const int M = 20;
    for (int n = 2; n <= 6; ++n) {
        const double v =
            explicit_standard_profile(M, NodeId{n, (std::uint64_t{1} << n) - 1}, 1.0);
        const double leading =
            std::ldexp(1.0, M - 1) * (1.0 - (n + 2) * std::ldexp(1.0, -n - 1));
        CHECK(std::fabs(v / leading - 1.0) <= 8.0 * std::ldexp(1.0, -M + n));
    }
    // depth-one value: exact 2 eps/3 at M=2, asymptotically eps 2^(M-3)
    CHECK(explicit_standard_profile(2, NodeId{1, 1}, 1.0) == doctest::Approx(2.0 / 3.0));
    const double v1 = explicit_standard_profile(24, NodeId{1, 1}, 1.0);
    CHECK(std::fabs(v1 / std::ldexp(1.0, 24 - 3) - 1.0) <= 1e-5);
}

TEST_CASE("leading-order increments stay within an additive band") {
    double worst = 0.0;
    for (int M = 2; M <= 14; ++M) {
        const auto sol = solve_recursive(standard_boundary(M, 1.0));
        for (int n = 1; n <= M; ++n) {
            const auto& a = sol.increments[static_cast<std::size_t>(n)];
            for (std::uint64_t i = 0; i < a.size(); ++i)
                worst = std::max(worst, std::fabs(a[i] - approx_standard_increment(
                                                             M, NodeId{n, i}, 1.0)));
        }
    }
    CHECK(worst <= 1.0);  // measured 0.75 at M<=14; frozen with headroom
}

TEST_CASE("coefficient-sum identity behind the explicit solution") {
    // 1/(1-2^(n-M-1)) - sum_{l=1}^{n-k} 2^-l c_l = 2^(k-n)/(1-2^(k-M-1))
    // with c_l = 1/((1-2^(n-M-l))(1-2^(n-M-l-1)))
    for (int M : {4, 7, 11}) {
        for (int n = 2; n <= M; ++n) {
            for (int k = 2; k <= n; ++k) {
                double acc = 1.0 / (1.0 - std::ldexp(1.0, n - M - 1));
                for (int l = 1; l <= n - k; ++l)
                    acc -= std::ldexp(1.0, -l) / ((1.0 - std::ldexp(1.0, n - M - l)) *
                                                  (1.0 - std::ldexp(1.0, n - M - l - 1)));
                const double rhs =
                    std::ldexp(1.0, k - n) / (1.0 - std::ldexp(1.0, k - M - 1));
                CHECK(acc == doctest::Approx(rhs).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("spacing: grid at the boundary, wider inside") {
    for (int M = 2; M <= 12; ++M) {
        const auto rep = spacing_check(solve_recursive(standard_boundary(M, 1.0)));
        CHECK(rep.min_gap >= 1.0 - 1e-12);
        CHECK(rep.min_interior_gap >= 4.0 / 3.0 - 1e-9);
    }
    // generation M alone sits exactly on the grid
    const auto sol = solve_recursive(standard_boundary(3, 1.0));
    auto u = sol.profile.generation(3);
    std::sort(u.begin(), u.end());
    CHECK(u[1] - u[0] == doctest::Approx(1.0));
}

TEST_CASE("spreading cost bounds and asymptotics") {
    for (int M = 1; M <= 14; ++M) {
        const double s = dirichlet_spreading_cost(solve_recursive(standard_boundary(M, 1.0)));
        const auto b = standard_spreading_bounds(M, 1.0);
        CHECK(s >= b.lower * (1 - 1e-12));
        CHECK(s <= b.upper * (1 + 1e-12));
    }
    // equality case at M=1
    const double s1 = dirichlet_spreading_cost(solve_recursive(standard_boundary(1, 1.0)));
    CHECK(s1 == doctest::Approx(standard_spreading_bounds(1, 1.0).lower).epsilon(1e-13));
    // approach to eps^2 2^(2M-4): the squared leading increments average
    // to n per node at generation n (binomial second moment), so the
    // total is eps^2 2^(2M-5) sum n 2^-n -> eps^2 2^(2M-4)
    const double s16 = dirichlet_spreading_cost(solve_recursive(standard_boundary(16, 1.0)));
    CHECK(std::fabs(s16 / std::ldexp(1.0, 2 * 16 - 4) - 1.0) < 0.01);
    const double s12 = dirichlet_spreading_cost(solve_recursive(standard_boundary(12, 1.0)));
    CHECK(std::fabs(s12 / std::ldexp(1.0, 2 * 12 - 4) - 1.0) < 0.01);
}

TEST_CASE("leading-increment sum reproduces the measured spreading cost") {
    // independent route: sum the squared leading-order increments
    // exactly, eps^2 2^(2M-5) sum_{n<=M} n 2^-n, and compare; the
    // neglected O(1) per-increment corrections fade like M^(3/2) 2^-M
    for (int M : {12, 16}) {
        const double s = dirichlet_spreading_cost(solve_recursive(standard_boundary(M, 1.0)));
        double series = 0.0;
        for (int n = 1; n <= M; ++n) series += n * std::ldexp(1.0, -n);
        const double predicted = std::ldexp(1.0, 2 * M - 5) * series;
        CHECK(std::fabs(s / predicted - 1.0) < 0.01);
    }
}

TEST_CASE("eps scaling is quadratic in the spreading cost") {
    const double s1 = dirichlet_spreading_cost(solve_recursive(standard_boundary(6, 1.0)));
    const double s2 = dirichlet_spreading_cost(solve_recursive(standard_boundary(6, 0.25)));
    CHECK(s2 == doctest::Approx(s1 / 16.0).epsilon(1e-12));
}
