#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fracdiff {

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::vector<std::string> messages;                  ///< first failures
    std::vector<std::pair<std::string, double>> metrics;  ///< named worst-case figures
};

struct VerifyOptions {
    std::optional<std::string> suite;  ///< run only this suite
    std::size_t quad_nodes = 64;
    unsigned workers = 1;
    std::uint64_t seed = 20240611;
    /// Debug: scale the lag-0 kernel weights used by the lemma2 and residual suites by 1/4.
    bool inject_kernel_fault = false;
};

std::vector<std::string> suite_names();

/// Runs the property suites at desk scale. Throws std::invalid_argument for an unknown suite.
std::vector<SuiteResult> run_verification(const VerifyOptions& options = {});

}  // namespace fracdiff
