// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Usage: acceptance [seed]

#include <cstdlib>
#include <iostream>

#include "majorant/kernels.hpp"
#include "majorant/suites.hpp"

int main(int argc, char** argv) {
    majorant::configure_threads();
    const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1;
    int failed = 0;
    for (const auto& r : majorant::run_acceptance(seed, {})) {
        std::cout << majorant::format_line(r) << std::endl;
        failed += !r.pass;
    }
    return failed ? 1 : 0;
}
