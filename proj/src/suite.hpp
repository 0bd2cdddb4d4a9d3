#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace gentle {

struct SuiteOptions {
    bool small_corpus = false; // reduced bounds for quick runs
    uint64_t seed = 20240101;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

// Runs every acceptance criterion, printing one pass/fail line per criterion
// to `log`.  Returns the per-criterion results.
std::vector<CriterionResult> run_acceptance(const SuiteOptions& opt, std::ostream& log);

} // namespace gentle
