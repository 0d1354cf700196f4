#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace srbw::validate {

struct CheckResult {
    std::string id;      // e.g. "C07", "C10a", "E1"
    std::string name;
    bool pass = false;
    std::string detail;  // measured vs expected, tolerances, timings
};

struct Options {
    std::uint64_t seed = 20250810;
};

/// Ids in canonical run order. C1..C14 are the acceptance criteria
/// (some split into lettered sub-checks); E* are companion checks that
/// pin the directly-evaluated scaling constants.
std::vector<std::string> all_criteria();

/// Suite names accepted by run_suite.
std::vector<std::string> suite_names();

std::vector<CheckResult> run_criterion(const std::string& id, const Options& opt = {});

/// dirichlet | admissible | asymptotics | oracle | mcmc | all
std::vector<CheckResult> run_suite(const std::string& suite, const Options& opt = {});

bool all_pass(const std::vector<CheckResult>& results);

std::string format_line(const CheckResult& r);

} // namespace srbw::validate
