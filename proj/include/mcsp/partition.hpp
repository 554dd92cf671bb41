#pragma once

#include <string_view>
#include <vector>

#include "json.hpp"

#include "mcsp/instance.hpp"

namespace mcsp {

struct Block {
  int first = 1;
  int last = 1;
  int length() const { return last - first + 1; }
  bool contains(int pos) const { return first <= pos && pos <= last; }
  auto operator<=>(const Block&) const = default;
};

struct CommonStringPartition {
  std::vector<Block> x_blocks;
  std::vector<Block> y_blocks;
  std::vector<int> matching;  // 0-based y index per x block

  int size() const { return static_cast<int>(x_blocks.size()); }
  const std::vector<Block>& blocks(Side s) const { return s == Side::X ? x_blocks : y_blocks; }
};

enum class CspDefect {
  None,
  Empty,
  SizeMismatch,
  NotCovering,
  BadMatching,
  ContentMismatch,
  TooLarge,
};

std::string_view defect_name(CspDefect d);

CspDefect diagnose_csp(const Instance& inst, const CommonStringPartition& csp, int k);
bool verify_csp(const Instance& inst, const CommonStringPartition& csp, int k);

// An adjacency (left, left + 1) between two blocks.
struct Breakpoint {
  Side side = Side::X;
  int left = 1;
  int right() const { return left + 1; }
  auto operator<=>(const Breakpoint&) const = default;
};

std::vector<Breakpoint> breakpoints(const CommonStringPartition& csp);
std::vector<Breakpoint> breakpoints(const CommonStringPartition& csp, Side s);

// Index of the block holding pos.
int block_of(const CommonStringPartition& csp, Side s, int pos);

Marker matched_marker(const CommonStringPartition& csp, Marker a);

// Throws std::domain_error when the piece holds no breakpoint.
Interval window(const CommonStringPartition& csp, const Interval& fragile);

// Builds a partition from block boundaries given as lists of block lengths.
CommonStringPartition csp_from_lengths(const std::vector<int>& x_lengths,
                                       const std::vector<int>& y_lengths,
                                       const std::vector<int>& matching);

nlohmann::json to_json(const CommonStringPartition& csp);
// Throws std::invalid_argument on a malformed document.
CommonStringPartition csp_from_json(const nlohmann::json& doc);

}  // namespace mcsp
