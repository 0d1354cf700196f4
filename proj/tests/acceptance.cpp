// Acceptance suite runner: one pass/fail line per criterion.
//
//   acceptance                 run everything
//   acceptance --criterion ID  run one criterion (e.g. C07, C10a)
//   acceptance --list          print the known ids

#include <cstring>
#include <iostream>
#include <string>

#include "srbw/validate.hpp"

int main(int argc, char** argv) {
    std::string only;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--list") == 0) {
            for (const auto& id : srbw::validate::all_criteria()) std::cout << id << "\n";
            return 0;
        }
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = argv[++i];
        } else if (std::strncmp(argv[i], "--criterion=", 12) == 0) {
            only = argv[i] + 12;
        } else {
            std::cerr << "usage: acceptance [--criterion ID | --list]\n";
            return 2;
        }
    }

    srbw::validate::Options opt;
    int failures = 0;
    try {
        const auto run_one = [&](const std::string& id) {
            for (const auto& r : srbw::validate::run_criterion(id, opt)) {
                std::cout << srbw::validate::format_line(r) << "\n";
                if (!r.pass) ++failures;
            }
        };
        if (!only.empty()) {
            run_one(only);
        } else {
            for (const auto& id : srbw::validate::all_criteria()) run_one(id);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (failures > 0) std::cout << failures << " criterion check(s) failed\n";
    return failures == 0 ? 0 : 1;
}
