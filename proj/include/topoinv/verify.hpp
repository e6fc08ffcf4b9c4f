#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace topoinv {

struct SuiteResult {
    std::string name;
    std::size_t checks = 0;
    std::size_t skipped = 0;
    std::vector<std::string> failures;
    std::vector<std::string> expected_warnings;  // documented discrepancies
};

struct VerifyOptions {
    int max_n = 8;
    unsigned jobs = 1;
    std::uint64_t work_cap = 0;  // 0 = library defaults
};

// Suite names: parity, palindrome, spectral, steenrod, cup, ranks, equivariant.
const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, const VerifyOptions& options);

// Runs fn(i) for i in [0, count) on up to `jobs` threads.
template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn);

} // namespace topoinv

#include "topoinv/detail/parallel.hpp"
