// Runs every acceptance criterion at full size and prints one line each.
#include <cstdio>

#include "validation.hpp"

int main()
{
    using namespace vortexscat;
    int failed = 0;
    run_suite(SuiteScale::full, [&](CheckResult const& r) {
        failed += r.passed ? 0 : 1;
        std::printf("%s criterion %d: %s | %s (%.2f s)\n", r.passed ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.detail.c_str(), r.seconds);
        std::fflush(stdout);
    });
    std::printf("%d of 10 criteria failed\n", failed);
    return failed ? 1 : 0;
}
