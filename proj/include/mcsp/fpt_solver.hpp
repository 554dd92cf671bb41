#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "json.hpp"

#include "mcsp/constraint.hpp"
#include "mcsp/frames.hpp"
#include "mcsp/instance.hpp"
#include "mcsp/partition.hpp"

namespace mcsp {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct SolverConfig {
  int k = 1;
  std::uint64_t branch_budget = 10'000'000;
};

// Reads MCSP_BRANCH_BUDGET, falling back to the default.
std::uint64_t default_branch_budget();

struct BranchStats {
  std::uint64_t states = 0;
  std::uint64_t pi_subsets = 0;

  std::uint64_t split_calls = 0;
  std::uint64_t split_branches = 0;
  std::uint64_t split_abort_count_mismatch = 0;
  std::uint64_t split_abort_fragile = 0;
  std::uint64_t split_abort_no_alignment = 0;
  std::uint64_t alignment_exhaustive = 0;
  std::uint64_t alignment_three_way = 0;
  std::uint64_t short_period_checks = 0;
  std::uint64_t short_period_violations = 0;
  std::uint64_t fragile_count_checks = 0;
  std::uint64_t fragile_count_violations = 0;

  std::uint64_t frames_calls = 0;
  std::uint64_t frames_branches = 0;
  std::uint64_t frames_abort_extension = 0;
  std::uint64_t frames_abort_short_frame = 0;
  std::uint64_t frames_abort_fitting = 0;
  std::uint64_t rule_applications[6] = {0, 0, 0, 0, 0, 0};
  std::uint64_t degree_bound_violations = 0;
  std::uint64_t fixing_rounds = 0;
  std::uint64_t fixed_in_frames = 0;
  std::uint64_t feasible_checks = 0;
  std::uint64_t feasible_max = 0;
  std::uint64_t feasible_bound_violations = 0;
  std::uint64_t frame_size_checks = 0;
  std::uint64_t frame_size_violations = 0;
  std::uint64_t max_fragile_at_exit = 0;

  std::uint64_t bruteforce_calls = 0;
  std::uint64_t bruteforce_placements = 0;

  double wall_ms = 0.0;

  void merge(const BranchStats& o);
  nlohmann::json to_json() const;
};

struct SolverState {
  Constraint cons;
  FrameSet frames;
  int beta = 0;
  std::vector<int> pi_remaining;  // descending, ends with 0
  int k = 1;

  int w() const { return 2 * beta * k + 1; }
};

struct PiSubset {
  int beta = 0;
  std::vector<int> remaining;
};

std::vector<PiSubset> enumerate_pi_subsets(int n, int k);

int count_small_shift_alignments(const Instance& inst, const Interval& s, const Interval& t, int beta);

// True iff both pieces share a shortest period word of length at most ceil(beta/3)/2.
bool shares_short_period(const Instance& inst, const Interval& s, const Interval& t, int beta);

class FptSolver {
 public:
  // Returning true stops the search.
  using Sink = std::function<bool(SolverState&&)>;

  FptSolver(const Instance& inst, SolverConfig config);

  // Throws BudgetExceeded when the branch budget runs out.
  std::optional<CommonStringPartition> solve();

  const BranchStats& stats() const { return stats_; }

  SolverState initial_state(const PiSubset& pi) const;

  bool split(const SolverState& state, const Sink& sink);
  bool frames(const SolverState& state, const Sink& sink);
  std::optional<CommonStringPartition> final_bruteforce(const SolverState& state);

 private:
  bool run_phase(SolverState&& state);
  bool frames_round(SolverState&& state, const Sink& sink);
  bool place_frames(SolverState&& state, const Extensions& ext, const Sink& sink);
  bool after_framing(SolverState&& state, const Sink& sink);
  bool fix_pairs(SolverState&& state, const std::vector<int>& pairs, std::size_t at, const Sink& sink);
  void charge();

  const Instance& inst_;
  SolverConfig config_;
  BranchStats stats_;
  std::optional<CommonStringPartition> found_;
};

}  // namespace mcsp
