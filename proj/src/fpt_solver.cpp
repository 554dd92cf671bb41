#include "mcsp/fpt_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <string>
#include <unordered_map>

#include "mcsp/periodicity.hpp"

namespace mcsp {

std::uint64_t default_branch_budget() {
  if (const char* env = std::getenv("MCSP_BRANCH_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
    }
  }
  return 10'000'000;
}

void BranchStats::merge(const BranchStats& o) {
  states += o.states;
  pi_subsets += o.pi_subsets;
  split_calls += o.split_calls;
  split_branches += o.split_branches;
  split_abort_count_mismatch += o.split_abort_count_mismatch;
  split_abort_fragile += o.split_abort_fragile;
  split_abort_no_alignment += o.split_abort_no_alignment;
  alignment_exhaustive += o.alignment_exhaustive;
  alignment_three_way += o.alignment_three_way;
  short_period_checks += o.short_period_checks;
  short_period_violations += o.short_period_violations;
  fragile_count_checks += o.fragile_count_checks;
  fragile_count_violations += o.fragile_count_violations;
  frames_calls += o.frames_calls;
  frames_branches += o.frames_branches;
  frames_abort_extension += o.frames_abort_extension;
  frames_abort_short_frame += o.frames_abort_short_frame;
  frames_abort_fitting += o.frames_abort_fitting;
  for (int i = 0; i < 6; ++i) rule_applications[i] += o.rule_applications[i];
  degree_bound_violations += o.degree_bound_violations;
  fixing_rounds += o.fixing_rounds;
  fixed_in_frames += o.fixed_in_frames;
  feasible_checks += o.feasible_checks;
  feasible_max = std::max(feasible_max, o.feasible_max);
  feasible_bound_violations += o.feasible_bound_violations;
  frame_size_checks += o.frame_size_checks;
  frame_size_violations += o.frame_size_violations;
  max_fragile_at_exit = std::max(max_fragile_at_exit, o.max_fragile_at_exit);
  bruteforce_calls += o.bruteforce_calls;
  bruteforce_placements += o.bruteforce_placements;
  wall_ms += o.wall_ms;
}

nlohmann::json BranchStats::to_json() const {
  nlohmann::json j;
  j["states"] = states;
  j["pi_subsets"] = pi_subsets;
  j["split"] = {{"calls", split_calls},
                {"branches", split_branches},
                {"abort_count_mismatch", split_abort_count_mismatch},
                {"alignment_exhaustive", alignment_exhaustive},
                {"alignment_three_way", alignment_three_way},
                {"short_period_checks", short_period_checks},
                {"short_period_violations", short_period_violations},
                {"fragile_count_checks", fragile_count_checks},
                {"fragile_count_violations", fragile_count_violations}};
  j["frames"] = {{"calls", frames_calls},
                 {"branches", frames_branches},
                 {"abort_extension", frames_abort_extension},
                 {"abort_short_frame", frames_abort_short_frame},
                 {"abort_fitting", frames_abort_fitting},
                 {"rule_applications", std::vector<std::uint64_t>(rule_applications, rule_applications + 6)},
                 {"degree_bound_violations", degree_bound_violations},
                 {"fixing_rounds", fixing_rounds},
                 {"fixed_in_frames", fixed_in_frames},
                 {"feasible_checks", feasible_checks},
                 {"feasible_max", feasible_max},
                 {"feasible_bound_violations", feasible_bound_violations},
                 {"frame_size_checks", frame_size_checks},
                 {"frame_size_violations", frame_size_violations},
                 {"max_fragile_at_exit", max_fragile_at_exit}};
  j["bruteforce"] = {{"calls", bruteforce_calls}, {"placements", bruteforce_placements}};
  j["wall_ms"] = wall_ms;
  return j;
}

std::vector<PiSubset> enumerate_pi_subsets(int n, int k) {
  if (n < 2) throw std::invalid_argument("need n >= 2");
  std::vector<int> powers;
  for (int p = 1; p < n; p *= 2) powers.push_back(p);
  const int threshold = (n + 2 * k - 1) / (2 * k);
  std::vector<std::vector<int>> subsets;
  const int m = static_cast<int>(powers.size());
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<int> s;
    for (int i = m - 1; i >= 0; --i)
      if (mask >> i & 1) s.push_back(powers[static_cast<std::size_t>(i)]);
    if (static_cast<int>(s.size()) > k || s.front() < threshold) continue;
    subsets.push_back(std::move(s));
  }
  std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
    if (a.front() != b.front()) return a.front() > b.front();
    return a < b;
  });
  std::vector<PiSubset> out;
  for (auto& s : subsets) {
    PiSubset ps{s.front(), std::vector<int>(s.begin() + 1, s.end())};
    ps.remaining.push_back(0);
    out.push_back(std::move(ps));
  }
  return out;
}

FptSolver::FptSolver(const Instance& inst, SolverConfig config) : inst_(inst), config_(config) {
  if (config_.k < 1) throw std::invalid_argument("k must be positive");
}

void FptSolver::charge() {
  if (++stats_.states > config_.branch_budget) throw BudgetExceeded("branch budget exhausted");
}

SolverState FptSolver::initial_state(const PiSubset& pi) const {
  return SolverState{initial_constraint(inst_), FrameSet{}, pi.beta, pi.remaining, config_.k};
}

std::optional<CommonStringPartition> FptSolver::solve() {
  auto t0 = std::chrono::steady_clock::now();
  auto finish = [&] {
    stats_.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  };
  found_.reset();
  if (!inst_.is_anagram()) {
    finish();
    return std::nullopt;
  }
  if (inst_.identical()) {
    finish();
    return csp_from_lengths({inst_.n()}, {inst_.n()}, {0});
  }
  try {
    for (const PiSubset& pi : enumerate_pi_subsets(inst_.n(), config_.k)) {
      ++stats_.pi_subsets;
      if (run_phase(initial_state(pi))) break;
    }
  } catch (...) {
    finish();
    throw;
  }
  finish();
  if (found_ && !verify_csp(inst_, *found_, config_.k))
    throw InvariantViolation("solver produced an invalid partition");
  return found_;
}

bool FptSolver::run_phase(SolverState&& state) {
  if (state.beta < 4) {
    found_ = final_bruteforce(state);
    return found_.has_value();
  }
  return split(state, [this](SolverState&& child) {
    child.beta = child.pi_remaining.front();
    child.pi_remaining.erase(child.pi_remaining.begin());
    if (child.beta == 0) return run_phase(std::move(child));
    return frames(child, [this](SolverState&& framed) { return run_phase(std::move(framed)); });
  });
}

bool FptSolver::frames(const SolverState& state, const Sink& sink) {
  ++stats_.frames_calls;
  return frames_round(SolverState(state), sink);
}

bool FptSolver::frames_round(SolverState&& state, const Sink& sink) {
  charge();
  state.frames.clear();
  auto ext = compute_extensions(inst_, state.cons);
  if (!ext) {
    ++stats_.frames_abort_extension;
    return false;
  }
  return place_frames(std::move(state), *ext, sink);
}

bool FptSolver::place_frames(SolverState&& state, const Extensions& ext, const Sink& sink) {
  charge();
  PieceGraph graph = build_piece_graph(state.cons, state.frames);
  if (!degree_bounds_hold(graph)) ++stats_.degree_bound_violations;
  if (graph.fragile_count() == 0) return after_framing(std::move(state), sink);

  const int w = state.w();
  RuleContext ctx{inst_, state.cons, state.frames, ext, graph, w};
  std::optional<RuleBranches> branches;
  int rule = 0;
  using RuleFn = std::optional<RuleBranches> (*)(const RuleContext&);
  const RuleFn rules[] = {frame_rule_fragile_end,       frame_rule_propagation,
                          frame_rule_fixed_cycle,       frame_rule_small_strip,
                          frame_rule_repetitive_cycle,  frame_rule_repetitive_degree_one};
  for (; rule < 6 && !branches; ++rule) branches = rules[rule](ctx);
  if (!branches) throw InvariantViolation("frameless fragile piece but no frame rule applies");
  ++stats_.rule_applications[rule - 1];
  if (branches->size() > 1) stats_.frames_branches += branches->size();

  const int n = inst_.n();
  for (const auto& branch : *branches) {
    SolverState child = state;
    bool ok = true;
    for (const FramePlacement& fp : branch) {
      const Piece& f = child.cons.piece(fp.side, fp.piece_id);
      int lo = std::max(fp.first, f.first);
      int hi = std::min(fp.last, f.last);
      if (f.first == 1) hi = std::min(hi, 1 + w);
      if (f.last == n) lo = std::max(lo, n - w);
      if (hi - lo + 1 < 2) {
        ok = false;
        break;
      }
      child.frames.set(fp.side, fp.piece_id, lo, hi);
    }
    if (!ok) {
      ++stats_.frames_abort_short_frame;
      continue;
    }
    if (place_frames(std::move(child), ext, sink)) return true;
  }
  return false;
}

namespace {

std::vector<const Piece*> adjacent_fragile(const Constraint& cons, Side s, int solid_id) {
  std::vector<const Piece*> out;
  int i = cons.find(s, solid_id);
  const auto& ps = cons.pieces(s);
  if (i > 0) out.push_back(&ps[static_cast<std::size_t>(i - 1)]);
  if (i + 1 < static_cast<int>(ps.size())) out.push_back(&ps[static_cast<std::size_t>(i + 1)]);
  return out;
}

}  // namespace

bool FptSolver::after_framing(SolverState&& state, const Sink& sink) {
  state.cons = fitting_rule(inst_, state.cons, state.frames);
  if (!validate_constraint(inst_, state.cons)) {
    ++stats_.frames_abort_fitting;
    return false;
  }
  const long long k = state.k;
  std::vector<int> qualifying;
  for (std::size_t i = 0; i < state.cons.pairs.size(); ++i) {
    const SolidPair& pair = state.cons.pairs[i];
    if (pair.fixed()) continue;
    const long long period = shortest_period(inst_, state.cons.interval(Side::X, pair.x_id)).length;
    const long long cap = (12 * k * k + 9 * k) * period;
    bool short_enough = true;
    for (Side s : {Side::X, Side::Y})
      for (const Piece* f : adjacent_fragile(state.cons, s, pair.id(s)))
        if (f->length() > cap) short_enough = false;
    if (short_enough) qualifying.push_back(static_cast<int>(i));
  }
  if (qualifying.empty()) {
    ++stats_.frame_size_checks;
    long long longest = 0;
    for (Side s : {Side::X, Side::Y})
      for (const Piece& p : state.cons.pieces(s))
        if (!p.solid()) longest = std::max<long long>(longest, p.length());
    stats_.max_fragile_at_exit = std::max<std::uint64_t>(stats_.max_fragile_at_exit, static_cast<std::uint64_t>(longest));
    if (longest > 12 * (k * k + k) * k * state.beta) ++stats_.frame_size_violations;
    return sink(std::move(state));
  }
  ++stats_.fixing_rounds;
  return fix_pairs(std::move(state), qualifying, 0, sink);
}

bool FptSolver::fix_pairs(SolverState&& state, const std::vector<int>& pairs, std::size_t at, const Sink& sink) {
  if (at == pairs.size()) return frames_round(std::move(state), sink);
  const std::size_t idx = static_cast<std::size_t>(pairs[at]);
  std::vector<int> options = feasible_alignments(inst_, state.cons, state.cons.pairs[idx]);
  const std::uint64_t k = static_cast<std::uint64_t>(state.k);
  ++stats_.feasible_checks;
  stats_.feasible_max = std::max<std::uint64_t>(stats_.feasible_max, options.size());
  if (options.size() > 24 * k * k + 18 * k) ++stats_.feasible_bound_violations;
  for (int d : options) {
    SolverState child = state;
    child.cons.pairs[idx].offset = d;
    ++stats_.fixed_in_frames;
    if (fix_pairs(std::move(child), pairs, at + 1, sink)) return true;
  }
  return false;
}

namespace {

using Placement = std::vector<int>;  // left markers of breakpoints, ascending

// All placements with at least one breakpoint per fragile piece and `limit` in total.
void enumerate_placements(const Constraint& cons, Side s, int limit,
                          const std::function<void(const Placement&)>& emit) {
  std::vector<const Piece*> fragile;
  for (const Piece& p : cons.pieces(s))
    if (!p.solid()) fragile.push_back(&p);
  if (static_cast<int>(fragile.size()) > limit) return;
  Placement cur;
  std::function<void(std::size_t, int)> piece = [&](std::size_t at, int left) {
    if (at == fragile.size()) {
      emit(cur);
      return;
    }
    const Piece& f = *fragile[at];
    const int reserve = static_cast<int>(fragile.size() - at - 1);
    // Nonempty subsets of the adjacencies of f, in increasing order.
    std::function<void(int, int)> pick = [&](int from, int used) {
      if (used > 0) piece(at + 1, left - used);
      if (left - used - reserve <= 0) return;
      for (int l = from; l < f.last; ++l) {
        cur.push_back(l);
        pick(l + 1, used + 1);
        cur.pop_back();
      }
    };
    pick(f.first, 0);
  };
  piece(0, limit);
}

std::vector<Block> blocks_of(const Placement& bps, int n) {
  std::vector<Block> out;
  int start = 1;
  for (int l : bps) {
    out.push_back(Block{start, l});
    start = l + 1;
  }
  out.push_back(Block{start, n});
  return out;
}

std::string content_key(const Instance& inst, Side s, const Block& b) {
  std::string key;
  for (int i = b.first; i <= b.last; ++i) {
    Symbol c = inst.at(s, i);
    key.append(reinterpret_cast<const char*>(&c), sizeof(c));
  }
  return key;
}

std::string multiset_key(const Instance& inst, Side s, const std::vector<Block>& blocks) {
  std::vector<std::string> parts;
  for (const Block& b : blocks) parts.push_back(content_key(inst, s, b));
  std::sort(parts.begin(), parts.end());
  std::string key;
  for (const auto& p : parts) {
    std::uint32_t len = static_cast<std::uint32_t>(p.size());
    key.append(reinterpret_cast<const char*>(&len), sizeof(len));
    key += p;
  }
  return key;
}

}  // namespace

std::optional<CommonStringPartition> FptSolver::final_bruteforce(const SolverState& state) {
  charge();
  ++stats_.bruteforce_calls;
  const int n = inst_.n();
  const int limit = state.k - 1;
  std::unordered_map<std::string, Placement> x_side;
  enumerate_placements(state.cons, Side::X, limit, [&](const Placement& p) {
    charge();
    ++stats_.bruteforce_placements;
    x_side.emplace(multiset_key(inst_, Side::X, blocks_of(p, n)), p);
  });
  if (x_side.empty()) return std::nullopt;
  std::optional<CommonStringPartition> result;
  enumerate_placements(state.cons, Side::Y, limit, [&](const Placement& p) {
    if (result) return;
    charge();
    ++stats_.bruteforce_placements;
    std::vector<Block> yb = blocks_of(p, n);
    auto it = x_side.find(multiset_key(inst_, Side::Y, yb));
    if (it == x_side.end()) return;
    CommonStringPartition csp;
    csp.x_blocks = blocks_of(it->second, n);
    csp.y_blocks = yb;
    std::vector<bool> used(yb.size(), false);
    for (const Block& b : csp.x_blocks) {
      std::string key = content_key(inst_, Side::X, b);
      for (std::size_t j = 0; j < yb.size(); ++j) {
        if (!used[j] && content_key(inst_, Side::Y, yb[j]) == key) {
          used[j] = true;
          csp.matching.push_back(static_cast<int>(j));
          break;
        }
      }
    }
    if (verify_csp(inst_, csp, state.k)) result = csp;
  });
  return result;
}

}  // namespace mcsp
