#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>

namespace srbw {

/// Model parameters of the penalised branching walk: N generations,
/// collision penalty beta per ordered pair per generation, repulsion
/// range eps. The regime beta > eps^2/2 is required: below it a move of
/// one grid step can cost more in displacement than it gains in removed
/// collisions, and occupation steps larger than one become admissible.
struct ModelParams {
    int n_gen = 1;      // N, tree depth in generations
    double beta = 1.0;  // inverse temperature
    double eps = 1.0;   // repulsion range

    ModelParams(int n_gen_, double beta_, double eps_)
        : n_gen(n_gen_), beta(beta_), eps(eps_) {
        if (n_gen < 1) throw std::invalid_argument("ModelParams: N must be >= 1");
        if (!(beta > 0.0)) throw std::invalid_argument("ModelParams: beta must be > 0");
        if (!(eps > 0.0)) throw std::invalid_argument("ModelParams: eps must be > 0");
        if (!(beta > eps * eps / 2.0))
            throw std::invalid_argument("ModelParams: requires beta > eps^2/2, got beta=" +
                                        std::to_string(beta) + " eps=" + std::to_string(eps));
    }
};

/// Number of particles alive at generation n (deterministic binary branching).
inline std::uint64_t particles_at(int n) { return std::uint64_t{1} << n; }

} // namespace srbw
