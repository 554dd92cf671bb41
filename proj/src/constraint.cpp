#include "mcsp/constraint.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "mcsp/periodicity.hpp"

namespace mcsp {

int Constraint::find(Side s, int id) const {
  const auto& ps = pieces(s);
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (ps[i].id == id) return static_cast<int>(i);
  return -1;
}

const Piece& Constraint::piece(Side s, int id) const {
  int i = find(s, id);
  if (i < 0) throw std::out_of_range("unknown piece id");
  return pieces(s)[static_cast<std::size_t>(i)];
}

Piece& Constraint::piece(Side s, int id) {
  int i = find(s, id);
  if (i < 0) throw std::out_of_range("unknown piece id");
  return pieces(s)[static_cast<std::size_t>(i)];
}

int Constraint::pair_of(Side s, int id) const {
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (pairs[i].id(s) == id) return static_cast<int>(i);
  return -1;
}

int Constraint::count(Side s, PieceKind kind) const {
  const auto& ps = pieces(s);
  return static_cast<int>(std::count_if(ps.begin(), ps.end(), [&](const Piece& p) { return p.kind == kind; }));
}

int Constraint::piece_at_adjacency(Side s, int pos) const {
  const auto& ps = pieces(s);
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (ps[i].first <= pos && pos + 1 <= ps[i].last) return static_cast<int>(i);
  return -1;
}

int Constraint::solid_at(Side s, int pos) const {
  for (const Piece& p : pieces(s))
    if (p.solid() && p.first <= pos && pos <= p.last) return p.id;
  return -1;
}

int reference_pos(const Constraint& cons, const SolidPair& pair, Side s) {
  if (!pair.fixed()) throw std::domain_error("pair has no alignment");
  int ref = cons.piece(Side::X, pair.x_id).first;
  return s == Side::X ? ref : ref + *pair.offset;
}

int alignment_shift(const Constraint& cons, const SolidPair& pair) {
  return reference_pos(cons, pair, Side::Y) - cons.piece(Side::Y, pair.y_id).first;
}

Constraint initial_constraint(const Instance& inst) {
  Constraint cons;
  cons.pieces(Side::X).push_back(Piece{cons.new_id(), PieceKind::Fragile, 1, inst.n()});
  cons.pieces(Side::Y).push_back(Piece{cons.new_id(), PieceKind::Fragile, 1, inst.n()});
  return cons;
}

std::vector<Interval> make_splitting(const Interval& f, int piece_len) {
  if (f.length() < 2) throw std::domain_error("piece shorter than two markers");
  if (piece_len < 2) throw std::domain_error("splitting pieces need two markers");
  std::vector<Interval> out;
  int a = f.first;
  while (a < f.last) {
    int b = std::min(a + piece_len - 1, f.last);
    out.push_back(Interval{f.side, a, b});
    a = b;
  }
  return out;
}

bool is_alignment(const Instance& inst, const Interval& s, const Interval& t, int shift) {
  const int ls = s.last - s.first;
  const int lt = t.last - t.first;
  if (shift < -ls || shift > lt) return false;
  Interval image_s{t.side, t.first + shift, t.first + shift + ls};
  Interval image_t{s.side, s.first - shift, s.first - shift + lt};
  return interval_equiv(inst, s, image_s) && interval_equiv(inst, t, image_t);
}

bool offset_consistent(const Instance& inst, const Interval& s, const Interval& t, int offset) {
  Interval image_s{t.side, s.first + offset, s.last + offset};
  Interval image_t{s.side, t.first - offset, t.last - offset};
  return interval_equiv(inst, s, image_s) && interval_equiv(inst, t, image_t);
}

std::vector<int> enumerate_alignments(const Instance& inst, const Interval& s, const Interval& t,
                                      int max_abs_shift) {
  std::vector<int> out;
  const int lo = std::max(-max_abs_shift, -(s.last - s.first));
  const int hi = std::min(max_abs_shift, t.last - t.first);
  for (int d = lo; d <= hi; ++d)
    if (is_alignment(inst, s, t, d)) out.push_back(d);
  return out;
}

int count_alignments(const Instance& inst, const Interval& s, const Interval& t, int max_abs_shift,
                     int stop_after) {
  int count = 0;
  const int lo = std::max(-max_abs_shift, -(s.last - s.first));
  const int hi = std::min(max_abs_shift, t.last - t.first);
  for (int d = lo; d <= hi && count < stop_after; ++d)
    if (is_alignment(inst, s, t, d)) ++count;
  return count;
}

Constraint merge_consecutive(Constraint cons) {
  for (Side s : {Side::X, Side::Y}) {
    std::vector<Piece> merged;
    for (const Piece& p : cons.pieces(s)) {
      if (merged.empty() || merged.back().kind != p.kind) {
        merged.push_back(p);
        continue;
      }
      Piece& run = merged.back();
      run.last = p.last;
      if (p.solid() && cons.pair_of(s, p.id) >= 0) {
        if (cons.pair_of(s, run.id) >= 0) throw std::logic_error("merging two paired solid pieces");
        run.id = p.id;
      }
    }
    cons.pieces(s) = std::move(merged);
  }
  return cons;
}

bool equidistant(const Constraint& cons, const SolidPair& pair, Marker a, Marker b) {
  if (!pair.fixed()) throw std::domain_error("equidistance needs a fixed pair");
  if (a.side == b.side) throw std::domain_error("markers lie in the same string");
  if (a.side == Side::Y) std::swap(a, b);
  return a.pos - reference_pos(cons, pair, Side::X) == b.pos - reference_pos(cons, pair, Side::Y);
}

std::string constraint_defect(const Instance& inst, const Constraint& cons) {
  std::set<int> ids;
  for (Side s : {Side::X, Side::Y}) {
    const auto& ps = cons.pieces(s);
    if (ps.empty()) return "empty splitting";
    if (ps.front().first != 1) return "splitting does not start at the first marker";
    if (ps.back().last != inst.n()) return "splitting does not end at the last marker";
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (ps[i].length() < 2) return "piece shorter than two markers";
      if (i > 0 && ps[i].first != ps[i - 1].last) return "consecutive pieces do not share a marker";
      if (i > 0 && ps[i].kind == ps[i - 1].kind) return "solid and fragile pieces do not alternate";
      if (!ids.insert(ps[i].id).second) return "duplicate piece id";
    }
  }
  std::set<int> paired;
  for (const SolidPair& pair : cons.pairs) {
    for (Side s : {Side::X, Side::Y}) {
      int i = cons.find(s, pair.id(s));
      if (i < 0) return "pair refers to a missing piece";
      if (!cons.pieces(s)[static_cast<std::size_t>(i)].solid()) return "pair refers to a fragile piece";
      if (!paired.insert(pair.id(s)).second) return "piece in two pairs";
    }
    if (pair.fixed() && !offset_consistent(inst, cons.interval(Side::X, pair.x_id),
                                           cons.interval(Side::Y, pair.y_id), *pair.offset))
      return "stored alignment fails the content conditions";
  }
  for (Side s : {Side::X, Side::Y})
    for (const Piece& p : cons.pieces(s))
      if (p.solid() && !paired.count(p.id)) return "unmatched solid piece";
  return {};
}

bool validate_constraint(const Instance& inst, const Constraint& cons) {
  return constraint_defect(inst, cons).empty();
}

bool satisfies_constraint(const Instance& inst, const CommonStringPartition& csp,
                          const Constraint& cons) {
  for (const Breakpoint& bp : breakpoints(csp)) {
    int i = cons.piece_at_adjacency(bp.side, bp.left);
    if (i < 0 || cons.pieces(bp.side)[static_cast<std::size_t>(i)].solid()) return false;
  }
  for (Side s : {Side::X, Side::Y}) {
    for (const Piece& p : cons.pieces(s)) {
      if (p.solid()) continue;
      auto bps = breakpoints(csp, s);
      bool hit = std::any_of(bps.begin(), bps.end(),
                             [&](const Breakpoint& bp) { return p.first <= bp.left && bp.right() <= p.last; });
      if (!hit) return false;
    }
  }
  for (const SolidPair& pair : cons.pairs) {
    Interval s = cons.interval(Side::X, pair.x_id);
    Interval t = cons.interval(Side::Y, pair.y_id);
    int bx = block_of(csp, Side::X, s.first);
    int by = block_of(csp, Side::Y, t.first);
    if (block_of(csp, Side::X, s.last) != bx || block_of(csp, Side::Y, t.last) != by) return false;
    if (csp.matching[static_cast<std::size_t>(bx)] != by) return false;
    if (pair.fixed()) {
      Marker m = matched_marker(csp, Marker{Side::X, s.first});
      if (m.pos != reference_pos(cons, pair, Side::Y)) return false;
    } else {
      const Block& xb = csp.x_blocks[static_cast<std::size_t>(bx)];
      const Block& yb = csp.y_blocks[static_cast<std::size_t>(by)];
      int p = shortest_period(inst, s).length;
      if (shortest_period(inst, t).length != p) return false;
      if (shortest_period(inst, Interval{Side::X, xb.first, xb.last}).length != p) return false;
      if (shortest_period(inst, Interval{Side::Y, yb.first, yb.last}).length != p) return false;
    }
  }
  return true;
}

std::optional<Interval> FrameSet::get(Side s, int id) const {
  const auto& m = frames_[static_cast<std::size_t>(index(s))];
  auto it = m.find(id);
  if (it == m.end()) return std::nullopt;
  return Interval{s, it->second.first, it->second.second};
}

std::string dump(const Instance& inst, const Constraint& cons, const FrameSet& frames) {
  std::ostringstream out;
  for (Side s : {Side::X, Side::Y}) {
    for (const Piece& p : cons.pieces(s)) {
      out << (s == Side::X ? 'X' : 'Y') << " [" << p.first << ',' << p.last << "] ";
      if (p.solid()) {
        out << "solid";
        int pi = cons.pair_of(s, p.id);
        if (pi >= 0) {
          const SolidPair& pair = cons.pairs[static_cast<std::size_t>(pi)];
          if (pair.fixed())
            out << " fixed δ=" << alignment_shift(cons, pair);
          else
            out << " rep π=" << shortest_period(inst, p.on(s)).length;
        }
      } else {
        out << "fragile";
        if (auto f = frames.get(s, p.id)) out << " frame [" << f->first << ',' << f->last << ']';
      }
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace mcsp
