#include "srbw/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace srbw {

namespace {

// 1/b_n = 2^(M-n+1) - 1 as an exact integer.
std::int64_t inv_b(int depth, int n) {
    return (std::int64_t{1} << (depth - n + 1)) - 1;
}

std::vector<std::vector<double>> subtree_sums_of(const DirichletBoundary& boundary) {
    const int M = boundary.depth;
    std::vector<std::vector<double>> sums(static_cast<std::size_t>(M) + 1);
    sums[static_cast<std::size_t>(M)] = boundary.u;
    // Bottom-up pairwise summation; also keeps roundoff at O(log) ulps.
    for (int n = M - 1; n >= 0; --n) {
        const auto& below = sums[static_cast<std::size_t>(n) + 1];
        auto& here = sums[static_cast<std::size_t>(n)];
        here.resize(std::size_t{1} << n);
        for (std::size_t i = 0; i < here.size(); ++i)
            here[i] = below[2 * i] + below[2 * i + 1];
    }
    return sums;
}

std::vector<double> b_values(int M) {
    std::vector<double> b(static_cast<std::size_t>(M) + 1);
    for (int n = 0; n <= M; ++n)
        b[static_cast<std::size_t>(n)] = 1.0 / static_cast<double>(inv_b(M, n));
    return b;
}

} // namespace

DirichletBoundary::DirichletBoundary(int depth_, std::vector<double> u_)
    : depth(depth_), u(std::move(u_)) {
    if (depth < 1 || depth > 26)
        throw std::invalid_argument("DirichletBoundary: depth must be in [1, 26]");
    if (u.size() != (std::size_t{1} << depth))
        throw std::invalid_argument("DirichletBoundary: need exactly 2^M leaf values");
}

DirichletBoundary standard_boundary(int depth, double eps) {
    std::vector<double> u(std::size_t{1} << depth);
    for (std::uint64_t i = 0; i < u.size(); ++i) {
        // Bits z_2..z_M of the address read as a binary integer.
        const std::uint64_t tail = i & ((std::uint64_t{1} << (depth - 1)) - 1);
        const double magnitude = eps * (static_cast<double>(tail) + 0.5);
        const bool right = (i >> (depth - 1)) & 1u;
        u[i] = right ? magnitude : -magnitude;
    }
    return DirichletBoundary{depth, std::move(u)};
}

DirichletSolution solve_recursive(const DirichletBoundary& boundary) {
    const int M = boundary.depth;
    DirichletSolution sol;
    sol.subtree_sums = subtree_sums_of(boundary);
    sol.b = b_values(M);
    sol.profile = TreeProfile(M);
    sol.increments.resize(static_cast<std::size_t>(M) + 1);

    for (int n = 1; n <= M; ++n) {
        const auto& sums = sol.subtree_sums[static_cast<std::size_t>(n)];
        const auto& hp = sol.profile.generation(n - 1);
        auto& h = sol.profile.generation(n);
        auto& a = sol.increments[static_cast<std::size_t>(n)];
        a.resize(std::size_t{1} << n);
        if (n == M) {
            // pin leaves bit-exactly to the boundary data
            for (std::size_t i = 0; i < a.size(); ++i) {
                h[i] = boundary.u[i];
                a[i] = boundary.u[i] - hp[i >> 1];
            }
        } else {
            const double bn = sol.b[static_cast<std::size_t>(n)];
            const double pow_mn = static_cast<double>(std::int64_t{1} << (M - n));
            for (std::size_t i = 0; i < a.size(); ++i) {
                a[i] = bn * (sums[i] - pow_mn * hp[i >> 1]);
                h[i] = hp[i >> 1] + a[i];
            }
        }
    }
    return sol;
}

DirichletSolution solve_closed_form(const DirichletBoundary& boundary) {
    const int M = boundary.depth;
    DirichletSolution sol;
    sol.subtree_sums = subtree_sums_of(boundary);
    sol.b = b_values(M);
    sol.profile = TreeProfile(M);
    sol.increments.resize(static_cast<std::size_t>(M) + 1);

    for (int n = 1; n <= M; ++n) {
        auto& h = sol.profile.generation(n);
        auto& a = sol.increments[static_cast<std::size_t>(n)];
        a.resize(std::size_t{1} << n);

        const double bn = sol.b[static_cast<std::size_t>(n)];
        // h history weights: b_{n-l+1} b_{n-l} / b_{n+1};
        // a history weights: -2^(M-n) b_{n-l+1} b_{n-l}  (telescoped difference).
        std::vector<double> wh(static_cast<std::size_t>(n));
        std::vector<double> wa(static_cast<std::size_t>(n));
        const auto inv_b_np1 = static_cast<double>(inv_b(M, n + 1)); // zero at n = M
        const double pow_mn = static_cast<double>(std::int64_t{1} << (M - n));
        for (int l = 1; l <= n - 1; ++l) {
            const double prod =
                sol.b[static_cast<std::size_t>(n - l + 1)] * sol.b[static_cast<std::size_t>(n - l)];
            wh[static_cast<std::size_t>(l)] = prod * inv_b_np1;
            wa[static_cast<std::size_t>(l)] = -pow_mn * prod;
        }

        for (std::uint64_t i = 0; i < a.size(); ++i) {
            const double own = sol.subtree_sums[static_cast<std::size_t>(n)][i];
            double hv = bn * own;
            double av = bn * own;
            for (int l = 1; l <= n - 1; ++l) {
                const double anc = sol.subtree_sums[static_cast<std::size_t>(n - l)][i >> l];
                hv += wh[static_cast<std::size_t>(l)] * anc;
                av += wa[static_cast<std::size_t>(l)] * anc;
            }
            h[i] = hv;
            a[i] = av;
        }
    }
    return sol;
}

double explicit_standard_profile(int depth, NodeId z, double eps) {
    const int M = depth;
    const int n = z.depth;
    if (n == 0) return 0.0;
    if (n > M) throw std::invalid_argument("explicit_standard_profile: node below the boundary");
    if (z.bit(1) == 0) {
        // negated twin with the leading address bit flipped
        NodeId twin{n, z.index ^ (std::uint64_t{1} << (n - 1))};
        return -explicit_standard_profile(depth, twin, eps);
    }

    const auto pow2 = [](int e) { return std::ldexp(1.0, e); };
    const double denom_n = 1.0 - pow2(-M + n - 1);
    const double one_minus = 1.0 - pow2(-M + n);

    double c_sum = 0.0;
    for (int l = 1; l <= n - 1; ++l)
        c_sum += 1.0 / ((1.0 - pow2(n - M - l)) * (1.0 - pow2(n - M - l - 1)));
    const double term1 = 0.5 * eps * pow2(M - n - 1) * (1.0 / denom_n + one_minus * c_sum);

    double s_n = 0.0, s_nm1 = 0.0, tail = 0.0;
    for (int k = 2; k <= n; ++k) {
        if (z.bit(k) == 0) continue;
        const double w = pow2(-k);
        s_n += w;
        if (k <= n - 1) {
            s_nm1 += w;
            tail += 1.0 / (1.0 - pow2(-M + k - 1));
        }
    }
    const double term2 = 0.5 * eps * pow2(M) *
                         (s_n / denom_n + one_minus / denom_n * s_nm1 -
                          pow2(-n) * one_minus * tail);
    return term1 + term2;
}

double approx_standard_increment(int depth, NodeId z, double eps) {
    const int n = z.depth;
    if (n == 0) return 0.0;
    if (z.bit(1) == 0) {
        NodeId twin{n, z.index ^ (std::uint64_t{1} << (n - 1))};
        return -approx_standard_increment(depth, twin, eps);
    }
    int ones = 0;
    for (int k = 2; k <= n; ++k) ones += z.bit(k);
    return eps * std::ldexp(1.0, depth - n - 2) * (2.0 - n + 2.0 * ones);
}

SpacingReport spacing_check(const DirichletSolution& sol) {
    const int M = sol.depth();
    SpacingReport rep;
    rep.min_gap = std::numeric_limits<double>::infinity();
    rep.min_interior_gap = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= M; ++n) {
        std::vector<double> v = sol.profile.generation(n);
        std::sort(v.begin(), v.end());
        double g = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < v.size(); ++i) g = std::min(g, v[i + 1] - v[i]);
        rep.min_gap = std::min(rep.min_gap, g);
        if (n < M) rep.min_interior_gap = std::min(rep.min_interior_gap, g);
    }
    return rep;
}

double dirichlet_spreading_cost(const DirichletSolution& sol) {
    double s = 0.0;
    for (int n = 1; n <= sol.depth(); ++n)
        for (double a : sol.increments[static_cast<std::size_t>(n)]) s += 0.5 * a * a;
    return s;
}

double harmonicity_residual(const DirichletSolution& sol) {
    const int M = sol.depth();
    double worst = 0.0;
    for (int n = 1; n < M; ++n) {
        const auto& h = sol.profile.generation(n);
        const auto& hp = sol.profile.generation(n - 1);
        const auto& hc = sol.profile.generation(n + 1);
        for (std::size_t i = 0; i < h.size(); ++i) {
            const double r = hc[2 * i] + hc[2 * i + 1] + hp[i >> 1] - 3.0 * h[i];
            worst = std::max(worst, std::fabs(r));
        }
    }
    return worst;
}

SpreadingBounds standard_spreading_bounds(int depth, double eps) {
    const double e2 = eps * eps;
    const double dm = 1.0 - std::ldexp(1.0, -depth);
    SpreadingBounds b;
    b.lower = e2 * std::ldexp(1.0, 2 * depth - 6) / (dm * dm);
    const double half_span = std::ldexp(1.0, depth - 1) + 0.5;
    b.upper = e2 * half_span * half_span / dm;
    return b;
}

} // namespace srbw
