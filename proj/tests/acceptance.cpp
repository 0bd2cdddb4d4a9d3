#include "suite.hpp"
#include <cstring>
#include <iostream>

int main(int argc, char** argv) {
    gentle::SuiteOptions opt;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--small") == 0) opt.small_corpus = true;
    auto results = gentle::run_acceptance(opt, std::cout);
    int failures = 0;
    for (const auto& r : results)
        if (!r.pass) ++failures;
    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(failures))
              << std::endl;
    return failures == 0 ? 0 : 1;
}
