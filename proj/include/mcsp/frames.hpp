#pragma once

#include <map>
#include <optional>
#include <vector>

#include "mcsp/constraint.hpp"
#include "mcsp/instance.hpp"

namespace mcsp {

struct MaxExtension {
  Side side = Side::X;
  int piece_id = 0;
  int lext = 1;
  int rext = 1;
};

// Owner of each position: id of the solid piece holding it, or -1.
class Occupancy {
 public:
  Occupancy(const Instance& inst, const Constraint& cons);
  int owner(Side s, int pos) const { return owner_[static_cast<std::size_t>(index(s))][static_cast<std::size_t>(pos)]; }
  // True iff pos is in range and not inside a solid piece other than `allowed`.
  bool free_for(Side s, int pos, int allowed) const;

 private:
  int n_;
  std::vector<int> owner_[2];
};

class Extensions {
 public:
  const MaxExtension& of(Side s, int piece_id) const { return map_.at({index(s), piece_id}); }
  void put(const MaxExtension& e) { map_[{index(e.side), e.piece_id}] = e; }

 private:
  std::map<std::pair<int, int>, MaxExtension> map_;
};

// Maximum extensions of both pieces of a pair. nullopt when a fixed pair
// cannot be extended over its own pieces, i.e. no satisfying partition exists.
std::optional<std::pair<MaxExtension, MaxExtension>> max_extension(const Instance& inst,
                                                                    const Constraint& cons,
                                                                    const Occupancy& occ,
                                                                    const SolidPair& pair);
std::optional<Extensions> compute_extensions(const Instance& inst, const Constraint& cons);

enum class VertexKind : std::uint8_t { Fragile, FixedLeft, FixedRight, Repetitive };

struct Vertex {
  VertexKind kind = VertexKind::Fragile;
  Side side = Side::X;  // fragile vertices only
  int ref = 0;          // fragile: piece id; solid: pair index
};

struct PieceGraph {
  std::vector<Vertex> vertices;
  std::vector<std::vector<int>> adj;

  int degree(int v) const { return static_cast<int>(adj[static_cast<std::size_t>(v)].size()); }
  bool fragile(int v) const { return vertices[static_cast<std::size_t>(v)].kind == VertexKind::Fragile; }
  bool repetitive(int v) const { return vertices[static_cast<std::size_t>(v)].kind == VertexKind::Repetitive; }
  int fragile_count() const;
};

PieceGraph build_piece_graph(const Constraint& cons, const FrameSet& frames);

// Degree bounds: fixed and fragile vertices at most 2, repetitive at most 4.
bool degree_bounds_hold(const PieceGraph& g);

// Vertex sequence of a simple cycle, first found in index order.
std::optional<std::vector<int>> find_cycle(const PieceGraph& g, bool allow_repetitive);

// Alternating vertex sequence v_s, f_1, u_1, ..., f_l, v_t.
using RepRepPath = std::vector<int>;
std::vector<RepRepPath> rep_rep_paths(const PieceGraph& g);

struct StripPiece {
  Side side = Side::X;
  int piece_id = 0;
  int shift = 0;        // position in this piece = position in the first piece + shift
  int lo = 0, hi = 0;   // allowed range from the adjacent extensions
  int first = 0, last = -1;
};

struct Strip {
  std::vector<StripPiece> pieces;
  int length() const { return pieces.empty() ? 0 : std::max(0, pieces.front().last - pieces.front().first + 1); }
  bool empty() const { return length() == 0; }
};

Strip compute_strip(const Constraint& cons, const Extensions& ext, const PieceGraph& g,
                    const RepRepPath& path);

// A proposed frame before intersection with its fragile piece.
struct FramePlacement {
  Side side = Side::X;
  int piece_id = 0;
  int first = 0;
  int last = 0;
};

struct RuleContext {
  const Instance& inst;
  const Constraint& cons;
  const FrameSet& frames;
  const Extensions& ext;
  const PieceGraph& graph;
  int w;
};

// Each result lists the branches; a branch may place several frames.
using RuleBranches = std::vector<std::vector<FramePlacement>>;

std::optional<RuleBranches> frame_rule_fragile_end(const RuleContext& ctx);
std::optional<RuleBranches> frame_rule_propagation(const RuleContext& ctx);
std::optional<RuleBranches> frame_rule_fixed_cycle(const RuleContext& ctx);
std::optional<RuleBranches> frame_rule_small_strip(const RuleContext& ctx);
std::optional<RuleBranches> frame_rule_repetitive_cycle(const RuleContext& ctx);
std::optional<RuleBranches> frame_rule_repetitive_degree_one(const RuleContext& ctx);

// Frame and its neighbours; phantom frames at string ends.
std::optional<Interval> frame_left_of(const Instance& inst, const Constraint& cons,
                                      const FrameSet& frames, Side s, int solid_id);
std::optional<Interval> frame_right_of(const Instance& inst, const Constraint& cons,
                                       const FrameSet& frames, Side s, int solid_id);

// Shrinks framed fragile pieces to their frames, growing the neighbouring
// solid pieces. The outer end of a piece at a string end is left in place.
Constraint fitting_rule(const Instance& inst, const Constraint& cons, const FrameSet& frames);

// Offsets d (x[i] matched to y[i + d]) consistent with both pieces of a
// repetitive pair whose images avoid every other solid piece.
std::vector<int> feasible_alignments(const Instance& inst, const Constraint& cons, const SolidPair& pair);

}  // namespace mcsp
