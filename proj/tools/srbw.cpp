// srbw: build, solve, sample, and validate optimal particle profiles of
// the penalised branching walk. Subcommands: dirichlet, trajectory,
// validate, sample.
//
// Exit codes: 0 success, 1 validation failure, 2 usage error,
// 3 model-assumption violation.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "srbw/action.hpp"
#include "srbw/admissible.hpp"
#include "srbw/asymptotics.hpp"
#include "srbw/dirichlet.hpp"
#include "srbw/errors.hpp"
#include "srbw/mcmc.hpp"
#include "srbw/validate.hpp"

namespace {

constexpr const char* kToolVersion = "1.0.0";
constexpr int kDirichletCap = 24;   // dense tree storage cap for the CLI
constexpr int kTrajectoryProfileCap = 22;  // cap on M = N - K for full profiles
constexpr int kSamplerCap = 8;

std::string out_prefix(const std::string& user_out, const std::string& command) {
    if (!user_out.empty()) return user_out;
    const char* dir = std::getenv("SRBW_OUT_DIR");
    const std::string base = dir != nullptr ? std::string(dir) : std::string(".");
    return base + "/" + command;
}

std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// temp file + rename, so readers never observe partial output
void write_atomic(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp + " for writing");
        os << contents;
    }
    std::filesystem::rename(tmp, path);
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

nlohmann::json manifest_skeleton(const std::string& command) {
    nlohmann::json m;
    m["schema_version"] = 1;
    m["tool"] = "srbw";
    m["version"] = kToolVersion;
    m["command"] = command;
    m["timestamp"] = timestamp_utc();
    m["outputs"] = nlohmann::json::array();
    return m;
}

void finish_manifest(nlohmann::json& m, const std::string& prefix) {
    const std::string path = prefix + ".manifest.json";
    m["outputs"].push_back(path);
    write_atomic(path, m.dump(2) + "\n");
    std::cout << "wrote " << path << "\n";
}

int cmd_dirichlet(int depth, double eps, const std::string& user_out) {
    if (depth < 1 || depth > kDirichletCap) {
        std::cerr << "error: M exceeds cap (1 <= M <= " << kDirichletCap << ")\n";
        return 2;
    }
    if (!(eps > 0.0)) {
        std::cerr << "error: eps must be positive\n";
        return 2;
    }
    const std::string prefix = out_prefix(user_out, "dirichlet");
    const auto sol = srbw::solve_recursive(srbw::standard_boundary(depth, eps));

    std::string csv = "generation,node_index,position,increment\n";
    for (int n = 0; n <= depth; ++n) {
        const auto& h = sol.profile.generation(n);
        for (std::size_t i = 0; i < h.size(); ++i) {
            const double a = n == 0 ? 0.0 : sol.increments[static_cast<std::size_t>(n)][i];
            csv += std::to_string(n) + "," + std::to_string(i) + "," + g17(h[i]) + "," + g17(a) +
                   "\n";
        }
    }
    const std::string csv_path = prefix + ".csv";
    write_atomic(csv_path, csv);
    std::cout << "wrote " << csv_path << "\n";

    const double s_spr = srbw::dirichlet_spreading_cost(sol);
    const auto bounds = srbw::standard_spreading_bounds(depth, eps);
    const auto spacing = srbw::spacing_check(sol);

    auto m = manifest_skeleton("dirichlet");
    m["params"] = {{"M", depth}, {"eps", eps}};
    m["outputs"].push_back(csv_path);
    m["headline"] = {
        {"S_spr", s_spr},
        {"spreading_lower_bound", bounds.lower},
        {"spreading_upper_bound", bounds.upper},
        {"within_bounds", s_spr >= bounds.lower && s_spr <= bounds.upper},
        {"min_gap", spacing.min_gap},
        {"harmonicity_residual", srbw::harmonicity_residual(sol)},
    };
    finish_manifest(m, prefix);
    return 0;
}

int cmd_trajectory(int n_gen, double beta, double eps, int k_dyadic, bool k_given,
                   const std::string& user_out) {
    if (n_gen < 2 || !(eps > 0.0) || !(beta > 0.0)) {
        std::cerr << "error: need N >= 2, beta > 0, eps > 0\n";
        return 2;
    }
    if (!(beta > eps * eps / 2.0)) {
        std::cerr << "error: requires beta > eps^2/2\n";
        return 3;
    }
    const srbw::ModelParams params{n_gen, beta, eps};

    int K = k_dyadic;
    double r_star = 0.0;
    if (!k_given) {
        try {
            const auto opt = srbw::optimal_K(params);
            K = opt.k_dyadic;
            r_star = opt.r_star;
        } catch (const srbw::DegenerateRegimeError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 3;
        }
    } else {
        r_star = srbw::ramp_width_optimum(params);
        if (K < 0 || K > srbw::max_feasible_K(n_gen)) {
            std::cerr << "error: K must be in [0, " << srbw::max_feasible_K(n_gen) << "]\n";
            return 2;
        }
    }
    if (n_gen - K > kTrajectoryProfileCap) {
        std::cerr << "error: N-K exceeds profile cap (" << kTrajectoryProfileCap << ")\n";
        return 2;
    }

    const std::string prefix = out_prefix(user_out, "trajectory");
    const auto report = srbw::build_trajectory(params, K);

    std::string occ_csv = "generation,site_index,position,occupation\n";
    for (const auto& occ : report.staircase.occupations) {
        for (std::size_t i = 0; i < occ.counts.size(); ++i) {
            const std::int64_t site = occ.offset + static_cast<std::int64_t>(i);
            occ_csv += std::to_string(occ.generation) + "," + std::to_string(site) + "," +
                       g17(srbw::site_position(site, eps)) + "," +
                       std::to_string(occ.counts[i]) + "\n";
        }
    }
    const std::string occ_path = prefix + ".occupations.csv";
    write_atomic(occ_path, occ_csv);

    std::string profile_csv = "generation,node_index,position,increment\n";
    for (int n = 0; n <= report.split_gen; ++n) {
        const auto& h = report.dirichlet.profile.generation(n);
        for (std::size_t i = 0; i < h.size(); ++i) {
            const double a =
                n == 0 ? 0.0 : report.dirichlet.increments[static_cast<std::size_t>(n)][i];
            profile_csv += std::to_string(n) + "," + std::to_string(i) + "," + g17(h[i]) + "," +
                           g17(a) + "\n";
        }
    }
    const std::string profile_path = prefix + ".profile.csv";
    write_atomic(profile_path, profile_csv);

    std::string cost_csv = "generation,spreading_to_next,interactions\n";
    for (int n = 0; n <= n_gen; ++n) {
        const std::string spr =
            n < n_gen ? g17(report.costs.spr_per_gen[static_cast<std::size_t>(n)]) : "";
        const std::string inter =
            n >= 1 ? srbw::to_string(report.costs.interaction_at(n)) : "";
        cost_csv += std::to_string(n) + "," + spr + "," + inter + "\n";
    }
    const std::string cost_path = prefix + ".costs.csv";
    write_atomic(cost_path, cost_csv);
    std::cout << "wrote " << occ_path << ", " << profile_path << ", " << cost_path << "\n";

    const auto& end = report.staircase.occupations.back();
    const std::int64_t r_end = std::int64_t{1} << K;
    auto m = manifest_skeleton("trajectory");
    m["params"] = {{"N", n_gen}, {"beta", beta}, {"eps", eps},
                   {"K", K},     {"K_given", k_given}};
    m["outputs"] = {occ_path, profile_path, cost_path};
    m["headline"] = {
        {"K", K},
        {"r", r_end},
        {"d", srbw::admissible_plateau_width(r_end, n_gen)},
        {"r_star", r_star},
        {"S_total", report.costs.s_total},
        {"S_spr", report.costs.s_spr},
        {"collisions", srbw::to_string(report.costs.collisions)},
        {"end_range_sites", end.range_sites()},
    };
    finish_manifest(m, prefix);
    return 0;
}

int cmd_validate(const std::string& suite, std::uint64_t seed) {
    const auto names = srbw::validate::suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) {
        std::cerr << "error: unknown suite '" << suite << "'; expected one of";
        for (const auto& n : names) std::cerr << " " << n;
        std::cerr << "\n";
        return 2;
    }
    srbw::validate::Options opt;
    opt.seed = seed;
    const auto results = srbw::validate::run_suite(suite, opt);
    for (const auto& r : results) std::cout << srbw::validate::format_line(r) << "\n";
    const bool ok = srbw::validate::all_pass(results);
    std::cout << (ok ? "ALL PASS" : "FAILURES PRESENT") << " (" << results.size() << " checks)\n";
    return ok ? 0 : 1;
}

int cmd_sample(int n_gen, double beta, double eps, std::int64_t steps, std::uint64_t seed,
               const std::string& user_out, std::int64_t burn_in, std::int64_t thin,
               double sigma) {
    if (n_gen < 1 || n_gen > kSamplerCap) {
        std::cerr << "error: sampler capped at N=" << kSamplerCap << "\n";
        return 2;
    }
    if (steps < 1000) {
        std::cerr << "error: need at least 1000 steps\n";
        return 2;
    }
    if (!(beta > eps * eps / 2.0)) {
        std::cerr << "error: requires beta > eps^2/2\n";
        return 3;
    }
    const srbw::ModelParams params{n_gen, beta, eps};
    const std::string prefix = out_prefix(user_out, "sample");

    const auto est = srbw::mcmc::estimate_partition(params, steps, seed);

    auto chain = srbw::mcmc::make_chain(params, seed);
    const std::int64_t n_nodes = (std::int64_t{2} << n_gen) - 2;
    const std::int64_t burn = burn_in >= 0 ? burn_in : 10'000 * n_nodes;
    const std::int64_t thinning = thin >= 1 ? thin : n_nodes;
    const std::int64_t n_keep = std::max<std::int64_t>(1, steps / (10 * thinning));
    for (std::int64_t i = 0; i < burn; ++i) srbw::mcmc::metropolis_step(chain, sigma);

    std::string csv = "sample,leaf_index,position\n";
    for (std::int64_t k = 0; k < n_keep; ++k) {
        for (std::int64_t i = 0; i < thinning; ++i) srbw::mcmc::metropolis_step(chain, sigma);
        const auto& xs = chain.positions.generation(n_gen);
        for (std::size_t i = 0; i < xs.size(); ++i)
            csv += std::to_string(k) + "," + std::to_string(i) + "," + g17(xs[i]) + "\n";
    }
    const std::string csv_path = prefix + ".samples.csv";
    write_atomic(csv_path, csv);
    std::cout << "wrote " << csv_path << "\n";

    auto m = manifest_skeleton("sample");
    m["params"] = {{"N", n_gen},   {"beta", beta},       {"eps", eps},
                   {"steps", steps}, {"seed", seed},     {"burn_in", burn},
                   {"thin", thinning}, {"proposal_sigma", sigma}};
    m["outputs"].push_back(csv_path);
    m["headline"] = {
        {"Z_hat", est.z_hat},
        {"Z_std_err", est.std_err},
        {"n_estimate_samples", est.n_samples},
        {"chain_samples", n_keep},
        {"acceptance_rate",
         chain.proposed > 0
             ? static_cast<double>(chain.accepted) / static_cast<double>(chain.proposed)
             : 0.0},
    };
    finish_manifest(m, prefix);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"optimal profiles of the self-repellent branching walk"};
    app.require_subcommand(1);

    // dirichlet
    auto* dir = app.add_subcommand("dirichlet", "solve the harmonic spreading profile");
    int dir_m = 0;
    double dir_eps = 1.0;
    std::string dir_out;
    dir->add_option("--M", dir_m, "tree depth")->required();
    dir->add_option("--eps", dir_eps, "grid spacing");
    dir->add_option("--out", dir_out, "output path prefix");

    // trajectory
    auto* traj = app.add_subcommand("trajectory", "build the optimal-candidate trajectory");
    int traj_n = 0, traj_k = -1;
    double traj_beta = 1.0, traj_eps = 1.0;
    std::string traj_out;
    traj->add_option("--N", traj_n, "generations")->required();
    traj->add_option("--beta", traj_beta, "collision penalty")->required();
    traj->add_option("--eps", traj_eps, "repulsion range")->required();
    auto* kopt = traj->add_option("--K", traj_k, "dyadic ramp exponent (default: optimal)");
    traj->add_option("--out", traj_out, "output path prefix");

    // validate
    auto* val = app.add_subcommand("validate", "run the numeric validation suite");
    std::string suite = "all";
    std::uint64_t seed = 20250810;
    val->add_option("--suite", suite, "dirichlet|admissible|asymptotics|oracle|mcmc|all");
    val->add_option("--seed", seed, "sampler seed");

    // sample
    auto* smp = app.add_subcommand("sample", "Metropolis sampling of the tilted walk");
    int smp_n = 1;
    double smp_beta = 1.0, smp_eps = 1.0, smp_sigma = 1.0;
    std::int64_t smp_steps = 100000, smp_burn = -1, smp_thin = -1;
    std::uint64_t smp_seed = 1;
    std::string smp_out;
    smp->add_option("--N", smp_n, "generations (<= 8)")->required();
    smp->add_option("--beta", smp_beta, "collision penalty")->required();
    smp->add_option("--eps", smp_eps, "repulsion range")->required();
    smp->add_option("--steps", smp_steps, "Monte Carlo samples / chain budget")->required();
    smp->add_option("--seed", smp_seed, "RNG seed")->required();
    smp->add_option("--burn-in", smp_burn, "chain burn-in steps (default 1e4 per node)");
    smp->add_option("--thin", smp_thin, "chain thinning (default: node count)");
    smp->add_option("--sigma", smp_sigma, "proposal standard deviation");
    smp->add_option("--out", smp_out, "output path prefix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (dir->parsed()) return cmd_dirichlet(dir_m, dir_eps, dir_out);
        if (traj->parsed())
            return cmd_trajectory(traj_n, traj_beta, traj_eps, traj_k, kopt->count() > 0,
                                  traj_out);
        if (val->parsed()) return cmd_validate(suite, seed);
        if (smp->parsed())
            return cmd_sample(smp_n, smp_beta, smp_eps, smp_steps, smp_seed, smp_out, smp_burn,
                              smp_thin, smp_sigma);
    } catch (const srbw::DegenerateRegimeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
