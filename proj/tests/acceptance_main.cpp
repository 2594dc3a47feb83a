// Runs every acceptance criterion and prints one pass/fail line per suite.
// Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>

#include "picard/acceptance.hpp"

int main() {
    bool all = true;
    for (const auto& name : picard::acceptance_suite_names()) {
        auto t0 = std::chrono::steady_clock::now();
        picard::SuiteReport rep;
        try {
            rep = picard::run_acceptance_suite(name);
        } catch (const std::exception& e) {
            rep.name = name;
            rep.pass = false;
            rep.details = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%-4s %-24s %7.1fs  %s\n", rep.pass ? "PASS" : "FAIL", rep.name.c_str(), secs,
                    rep.details.c_str());
        std::fflush(stdout);
        all = all && rep.pass;
    }
    return all ? 0 : 1;
}
