#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "mcsp/instance.hpp"
#include "mcsp/partition.hpp"

namespace mcsp {

class OracleLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  std::optional<int> min_size;
  std::optional<CommonStringPartition> witness;
  std::uint64_t explored = 0;
};

constexpr int kOracleDefaultLimit = 16;

// Smallest partition of size at most k_max, by iterative deepening over the
// breakpoints of x. Throws OracleLimitExceeded when there are more candidate
// x-partitions than a length n_limit string has in total.
OracleResult brute_force_min_csp(const Instance& inst, int k_max, int n_limit = kOracleDefaultLimit);

// Repeatedly matches a longest common substring of the unmatched regions,
// leftmost in x, then leftmost in y. Throws std::domain_error unless x and y
// are anagrams.
std::optional<CommonStringPartition> greedy_csp(const Instance& inst);

}  // namespace mcsp
