// Acceptance gate: runs every criterion at full scale with pinned seeds and
// prints one verdict line per criterion. Exit status is nonzero if any
// criterion fails.

#include <chrono>
#include <cstdio>

#include "tempex/verify.hpp"

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::string(argv[1]) == "--quick";
    int failures = 0;
    for (const auto& criterion : tempex::acceptance_criteria()) {
        const auto start = std::chrono::steady_clock::now();
        tempex::CriterionResult result;
        try {
            result = criterion.run(quick);
        } catch (const std::exception& e) {
            result.id = criterion.id;
            result.name = criterion.name;
            result.pass = false;
            result.detail = std::string("exception: ") + e.what();
        }
        const auto elapsed =
            std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
        std::printf("%s  [%6.1fs]\n", tempex::format_verify_line(result).c_str(),
                    static_cast<double>(elapsed) / 1000.0);
        std::fflush(stdout);
        if (!result.pass) ++failures;
    }
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all %zu criteria passed\n", tempex::acceptance_criteria().size());
    return 0;
}
