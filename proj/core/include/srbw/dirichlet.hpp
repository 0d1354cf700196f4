#pragma once
#include <cstdint>
#include <vector>

#include "srbw/tree.hpp"

namespace srbw {

/// Leaf data pinning generation M of the tree; the root is pinned at 0.
struct DirichletBoundary {
    int depth = 1;          // M
    std::vector<double> u;  // 2^M leaf values, indexed like generation M

    DirichletBoundary(int depth_, std::vector<double> u_);
};

/// Boundary placing the 2^M leaves on the eps-grid, one particle per
/// site: leaf (z_1..z_M) sits at +/- eps*(sum_{l>=2} 2^{M-l} z_l + 1/2),
/// the sign given by z_1. The value multiset is {+-eps(k+1/2)}.
DirichletBoundary standard_boundary(int depth, double eps);

/// Harmonic interpolation between root and leaves: interior nodes
/// satisfy h(z0) + h(z1) + h(parent) = 3 h(z). Also the unique minimiser
/// of the quadratic spreading cost with those pins.
struct DirichletSolution {
    TreeProfile profile;                            // h
    std::vector<std::vector<double>> increments;    // a(z) = h(z)-h(parent); [0] unused
    std::vector<std::vector<double>> subtree_sums;  // sum of u over the leaves below z
    std::vector<double> b;                          // b_n = 1/(2^{M-n+1}-1), n = 0..M

    [[nodiscard]] int depth() const { return profile.depth(); }
};

/// Solve by the subtree-sum recursion: sums bottom-up, increments
/// top-down, positions by prefix sums. Leaf values are pinned exactly.
DirichletSolution solve_recursive(const DirichletBoundary& boundary);

/// Solve by the explicit series in the subtree sums,
///   h(z^(n)) = b_n S(z^(n)) + sum_l b_{n-l+1} b_{n-l} (1/b_{n+1}) S(z^(n-l)),
/// with the increments from the telescoped form of the same series.
/// Must agree with solve_recursive to ~1e-10 of the profile scale.
DirichletSolution solve_closed_form(const DirichletBoundary& boundary);

/// Exact closed-form value of the standard-boundary solution at one
/// node, evaluated without solving the whole tree. Nodes with z_1 = 0
/// are the negated z_1 = 1 twins.
double explicit_standard_profile(int depth, NodeId z, double eps);

/// Leading-order increment eps 2^{M-n-2} (2 - n + 2 sum_{k>=2} z_k);
/// differs from the exact increment by an O(1) additive band.
double approx_standard_increment(int depth, NodeId z, double eps);

struct SpacingReport {
    double min_gap = 0.0;           // over generations 1..M
    double min_interior_gap = 0.0;  // over generations 1..M-1
};

/// Minimum distance between distinct same-generation particles. For the
/// standard boundary this is >= eps everywhere and >= 4 eps/3 strictly
/// inside.
SpacingReport spacing_check(const DirichletSolution& sol);

/// Total spreading cost sum_n W_n, summed in fixed generation/node order.
double dirichlet_spreading_cost(const DirichletSolution& sol);

/// max |3h(z) - h(z0) - h(z1) - h(parent)| over interior nodes.
double harmonicity_residual(const DirichletSolution& sol);

/// Lower/upper bounds on the standard-boundary spreading cost:
///   eps^2 2^(2M-6)/(1-2^-M)^2 <= S_spr <= eps^2 (2^(M-1)+1/2)^2/(1-2^-M).
struct SpreadingBounds {
    double lower = 0.0;
    double upper = 0.0;
};
SpreadingBounds standard_spreading_bounds(int depth, double eps);

} // namespace srbw
