#ifndef ROWPADE_VERIFY_HPP
#define ROWPADE_VERIFY_HPP

#include <string>
#include <vector>

namespace rowpade {

struct CheckResult {
    std::string suite;
    std::string name;
    bool passed = false;
    std::string measured;
    std::string expected;
    std::string error;
    double seconds = 0;
};

/// exact-denominators, radius, indicators, rates, properties, all
const std::vector<std::string>& verify_suites();

/// Runs the named suite at 256 bits. Throws std::invalid_argument for an
/// unknown suite; failures inside a check are reported, not thrown.
std::vector<CheckResult> run_verify(const std::string& suite, unsigned jobs = 0);

}  // namespace rowpade

#endif
