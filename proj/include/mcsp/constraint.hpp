#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mcsp/instance.hpp"
#include "mcsp/partition.hpp"

namespace mcsp {

enum class PieceKind : std::uint8_t { Solid, Fragile };

struct Piece {
  int id = 0;
  PieceKind kind = PieceKind::Fragile;
  int first = 1;
  int last = 2;

  int length() const { return last - first + 1; }
  bool solid() const { return kind == PieceKind::Solid; }
  Interval on(Side s) const { return Interval{s, first, last}; }
};

// A matched pair of solid pieces. A fixed pair stores the offset d between the
// reference markers: x[s.first] is matched to y[s.first + d].
struct SolidPair {
  int x_id = 0;
  int y_id = 0;
  std::optional<int> offset;

  bool fixed() const { return offset.has_value(); }
  int id(Side s) const { return s == Side::X ? x_id : y_id; }
};

class Constraint {
 public:
  std::vector<Piece>& pieces(Side s) { return pieces_[static_cast<std::size_t>(index(s))]; }
  const std::vector<Piece>& pieces(Side s) const { return pieces_[static_cast<std::size_t>(index(s))]; }

  std::vector<SolidPair> pairs;

  int new_id() { return next_id_++; }
  int next_id() const { return next_id_; }

  // Position of the piece with this id in its splitting, or -1.
  int find(Side s, int id) const;
  const Piece& piece(Side s, int id) const;
  Piece& piece(Side s, int id);
  Interval interval(Side s, int id) const { return piece(s, id).on(s); }

  // Index into `pairs` of the pair holding this solid piece, or -1.
  int pair_of(Side s, int id) const;
  int count(Side s, PieceKind kind) const;

  // Piece covering the adjacency (pos, pos + 1).
  int piece_at_adjacency(Side s, int pos) const;
  // Solid piece holding pos, or -1.
  int solid_at(Side s, int pos) const;

 private:
  std::array<std::vector<Piece>, 2> pieces_;
  int next_id_ = 0;
};

// Reference marker of a fixed pair in string s.
int reference_pos(const Constraint& cons, const SolidPair& pair, Side s);

// Shift of the alignment stored on a fixed pair.
int alignment_shift(const Constraint& cons, const SolidPair& pair);

Constraint initial_constraint(const Instance& inst);

// Throws std::domain_error when f is shorter than two markers or piece_len < 2.
std::vector<Interval> make_splitting(const Interval& f, int piece_len);

bool is_alignment(const Instance& inst, const Interval& s, const Interval& t, int shift);

// Content conditions alone, for an offset d mapping s[i] to t's string at i + d.
bool offset_consistent(const Instance& inst, const Interval& s, const Interval& t, int offset);

// Ascending by shift.
std::vector<int> enumerate_alignments(const Instance& inst, const Interval& s, const Interval& t,
                                      int max_abs_shift);
int count_alignments(const Instance& inst, const Interval& s, const Interval& t, int max_abs_shift,
                     int stop_after);

// Merges runs of consecutive pieces of the same kind in both strings. Solid runs
// may hold at most one paired piece, whose id the merged piece keeps.
Constraint merge_consecutive(Constraint cons);

// |s* a| = |s~* b| for a fixed pair; throws std::domain_error for repetitive pairs.
bool equidistant(const Constraint& cons, const SolidPair& pair, Marker a, Marker b);

// Empty string when valid, otherwise the first violated invariant.
std::string constraint_defect(const Instance& inst, const Constraint& cons);
bool validate_constraint(const Instance& inst, const Constraint& cons);

bool satisfies_constraint(const Instance& inst, const CommonStringPartition& csp,
                          const Constraint& cons);

// At most one frame per fragile piece, keyed by piece id.
class FrameSet {
 public:
  void clear(Side s) { frames_[static_cast<std::size_t>(index(s))].clear(); }
  void clear() { clear(Side::X); clear(Side::Y); }
  void set(Side s, int id, int first, int last) { frames_[static_cast<std::size_t>(index(s))][id] = {first, last}; }
  std::optional<Interval> get(Side s, int id) const;
  bool has(Side s, int id) const { return frames_[static_cast<std::size_t>(index(s))].count(id) != 0; }
  std::size_t size() const { return frames_[0].size() + frames_[1].size(); }

 private:
  std::array<std::map<int, std::pair<int, int>>, 2> frames_;
};

std::string dump(const Instance& inst, const Constraint& cons, const FrameSet& frames);

}  // namespace mcsp
