#pragma once

#include <cstdint>

#include "electctl/control.hpp"

namespace electctl {

struct OracleOptions {
    // Hard cap on the number of subsets visited; exceeding it is an error,
    // never silent sampling.
    std::uint64_t max_subsets = std::uint64_t(1) << 24;
};

// Ground truth by exhaustive subset enumeration (sizes 0..min(budget, pool),
// lexicographic within a size).
Count count_by_enumeration(const ControlInstance& inst, const OracleOptions& opts = {});

// Count restricted to subsets of size exactly `size`.
Count count_exact_size(const ControlInstance& inst, long long size, const OracleOptions& opts = {});

}  // namespace electctl
