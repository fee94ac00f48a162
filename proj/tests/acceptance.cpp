// Acceptance suite: one pass/fail line per criterion. With --criterion N it
// runs a single criterion and exits accordingly; with no arguments it runs
// all of them and summarizes.

#include <cstdlib>
#include <cstring>
#include <iostream>

#include "exc/verify.hpp"

int main(int argc, char** argv) {
    using namespace exc;
    if (argc == 3 && std::strcmp(argv[1], "--criterion") == 0) {
        CriterionResult r = run_criterion(std::atoi(argv[2]));
        std::cout << format_result_line(r) << "\n";
        return r.pass ? 0 : 1;
    }
    if (argc != 1) {
        std::cerr << "usage: " << argv[0] << " [--criterion N]\n";
        return 2;
    }
    auto results = run_acceptance(VerifyLevel::Full);
    int failed = 0;
    for (const auto& r : results) {
        std::cout << format_result_line(r) << "\n";
        if (!r.pass) ++failed;
    }
    std::cout << (failed == 0 ? "all criteria passed"
                              : std::to_string(failed) + " criterion(s) failed")
              << "\n";
    return failed == 0 ? 0 : 1;
}
