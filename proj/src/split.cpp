#include <algorithm>
#include <cstdlib>
#include <map>

#include "mcsp/fpt_solver.hpp"
#include "mcsp/periodicity.hpp"

namespace mcsp {

namespace {

// A candidate new solid piece: pieces j0..j1 of the splitting of one old fragile piece.
struct Run {
  int old_index;  // position of the old fragile piece in its splitting
  int j0, j1;
  int first, last;
  int length() const { return last - first + 1; }
};

struct LocalPattern {
  std::vector<int> runs;  // indices into the candidate list of the piece
  int fragile = 0;
};

// A choice of new solid runs for one string.
struct SidePattern {
  std::vector<Run> runs;
  int fragile = 0;
};

struct SideEnumeration {
  std::vector<int> fragile_index;                  // old fragile pieces, left to right
  std::vector<std::vector<Run>> candidates;        // per old fragile piece
  std::vector<std::vector<LocalPattern>> local;    // per old fragile piece
};

SideEnumeration enumerate_side(const Instance& inst, const Constraint& cons, Side side, int beta, int k) {
  const int p = (beta + 2) / 3;
  const int n = inst.n();
  const int min_len = beta - 2 * p + 4;
  const int max_len = 2 * beta - 1;
  SideEnumeration out;
  const auto& ps = cons.pieces(side);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps[i].solid()) continue;
    const Piece& f = ps[i];
    auto pieces = make_splitting(f.on(side), p);
    const int m = static_cast<int>(pieces.size());
    std::vector<Run> cands;
    const int lo = f.first == 1 ? 0 : 1;
    const int hi = f.last == n ? m - 1 : m - 2;
    for (int j0 = lo; j0 <= hi; ++j0) {
      for (int j1 = j0; j1 <= hi; ++j1) {
        int len = pieces[static_cast<std::size_t>(j1)].last - pieces[static_cast<std::size_t>(j0)].first + 1;
        if (len > max_len) break;
        if (len < min_len) continue;
        cands.push_back(Run{static_cast<int>(i), j0, j1, pieces[static_cast<std::size_t>(j0)].first,
                            pieces[static_cast<std::size_t>(j1)].last});
      }
    }
    // Local patterns: runs separated by at least one fragile piece.
    std::vector<LocalPattern> local;
    std::vector<int> chosen;
    auto fragile_of = [&](const std::vector<int>& rs) {
      if (rs.empty()) return 1;
      int count = static_cast<int>(rs.size()) - 1;
      if (cands[static_cast<std::size_t>(rs.front())].j0 > 0) ++count;
      if (cands[static_cast<std::size_t>(rs.back())].j1 < m - 1) ++count;
      return count;
    };
    std::function<void(int)> rec = [&](int from_piece) {
      local.push_back(LocalPattern{chosen, fragile_of(chosen)});
      if (static_cast<int>(chosen.size()) >= k) return;
      for (std::size_t c = 0; c < cands.size(); ++c) {
        if (cands[c].j0 < from_piece) continue;
        chosen.push_back(static_cast<int>(c));
        rec(cands[c].j1 + 2);
        chosen.pop_back();
      }
    };
    rec(0);
    out.fragile_index.push_back(static_cast<int>(i));
    out.candidates.push_back(std::move(cands));
    out.local.push_back(std::move(local));
  }
  return out;
}

std::vector<SidePattern> side_patterns(const SideEnumeration& e, int k) {
  std::vector<SidePattern> out;
  SidePattern cur;
  std::function<void(std::size_t)> rec = [&](std::size_t at) {
    if (cur.fragile >= k) return;
    if (at == e.local.size()) {
      if (!cur.runs.empty()) out.push_back(cur);
      return;
    }
    for (const LocalPattern& lp : e.local[at]) {
      if (cur.fragile + lp.fragile >= k) continue;
      std::size_t mark = cur.runs.size();
      for (int c : lp.runs) cur.runs.push_back(e.candidates[at][static_cast<std::size_t>(c)]);
      cur.fragile += lp.fragile;
      rec(at + 1);
      cur.fragile -= lp.fragile;
      cur.runs.resize(mark);
    }
  };
  rec(0);
  return out;
}

// Replaces each old fragile piece by its new fragile and solid pieces. Returns the
// ids of the new solid pieces in left-to-right order.
std::vector<int> rebuild_side(Constraint& cons, const Constraint& old, Side side, const std::vector<Run>& runs) {
  std::vector<Piece> next;
  std::vector<int> ids;
  const auto& ps = old.pieces(side);
  std::size_t r = 0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const Piece& f = ps[i];
    std::vector<const Run*> mine;
    while (r < runs.size() && runs[r].old_index == static_cast<int>(i)) mine.push_back(&runs[r++]);
    if (f.solid() || mine.empty()) {
      next.push_back(f);
      continue;
    }
    int pos = f.first;
    for (const Run* run : mine) {
      if (run->first > pos) next.push_back(Piece{cons.new_id(), PieceKind::Fragile, pos, run->first});
      int id = cons.new_id();
      next.push_back(Piece{id, PieceKind::Solid, run->first, run->last});
      ids.push_back(id);
      pos = run->last;
    }
    if (pos < f.last) next.push_back(Piece{cons.new_id(), PieceKind::Fragile, pos, f.last});
  }
  cons.pieces(side) = std::move(next);
  return ids;
}

struct PairOptions {
  std::vector<std::optional<int>> offsets;  // nullopt: leave the pair repetitive
};

}  // namespace

int count_small_shift_alignments(const Instance& inst, const Interval& s, const Interval& t, int beta) {
  return static_cast<int>(enumerate_alignments(inst, s, t, (beta + 2) / 3).size());
}

bool shares_short_period(const Instance& inst, const Interval& s, const Interval& t, int beta) {
  const int p = (beta + 2) / 3;
  const int ps = shortest_period(inst, s).length;
  const int pt = shortest_period(inst, t).length;
  if (ps != pt || 2 * ps > p) return false;
  auto a = inst.slice(s).subspan(0, static_cast<std::size_t>(ps));
  return has_word_period(inst.slice(t), a);
}

bool FptSolver::split(const SolverState& state, const Sink& sink) {
  charge();
  ++stats_.split_calls;
  const int beta = state.beta;
  const int k = state.k;
  const int p = (beta + 2) / 3;
  const Constraint& cons = state.cons;

  SideEnumeration ex = enumerate_side(inst_, cons, Side::X, beta, k);
  SideEnumeration ey = enumerate_side(inst_, cons, Side::Y, beta, k);
  std::vector<SidePattern> px = side_patterns(ex, k);
  std::vector<SidePattern> py = side_patterns(ey, k);

  // Candidate runs by identity (first, last) so pair options are computed once.
  std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, std::optional<PairOptions>> cache;
  auto options = [&](const Run& s, const Run& t) -> const std::optional<PairOptions>& {
    auto key = std::make_pair(std::make_pair(s.first, s.last), std::make_pair(t.first, t.last));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::optional<PairOptions> opt;
    if (std::abs(s.length() - t.length()) <= 2 * p - 4) {
      Interval si{Side::X, s.first, s.last}, ti{Side::Y, t.first, t.last};
      int count = count_alignments(inst_, si, ti, p, 7);
      if (count > 0 && count <= 6) {
        PairOptions po;
        for (int shift : enumerate_alignments(inst_, si, ti, p)) po.offsets.emplace_back(t.first + shift - s.first);
        opt = po;
      } else if (count > 6) {
        PairOptions po;
        auto add = [&](std::optional<Marker> a, std::optional<Marker> b) {
          if (!a || !b) return;
          int d = b->pos - a->pos;
          if (!is_alignment(inst_, si, ti, s.first + d - t.first)) return;
          for (const auto& o : po.offsets)
            if (o && *o == d) return;
          po.offsets.emplace_back(d);
        };
        add(left_break(inst_, si), left_break(inst_, ti));
        add(right_break(inst_, si), right_break(inst_, ti));
        po.offsets.emplace_back(std::nullopt);
        opt = po;
      }
    }
    return cache.emplace(key, std::move(opt)).first->second;
  };

  for (const SidePattern& xp : px) {
    const int r = static_cast<int>(xp.runs.size());
    bool any_y = false;
    for (const SidePattern& yp : py) {
      if (static_cast<int>(yp.runs.size()) != r) continue;
      any_y = true;
      // Bijections from new x runs to new y runs with at least one option each.
      std::vector<int> match(static_cast<std::size_t>(r), -1);
      std::vector<bool> used(static_cast<std::size_t>(r), false);
      std::function<bool(int)> assign = [&](int i) -> bool {
        if (i == r) {
          charge();
          Constraint base = cons;
          std::vector<int> xs = rebuild_side(base, cons, Side::X, xp.runs);
          std::vector<int> ys = rebuild_side(base, cons, Side::Y, yp.runs);
          std::vector<const PairOptions*> opts;
          for (int a = 0; a < r; ++a)
            opts.push_back(&*options(xp.runs[static_cast<std::size_t>(a)],
                                     yp.runs[static_cast<std::size_t>(match[static_cast<std::size_t>(a)])]));
          for (int a = 0; a < r; ++a)
            base.pairs.push_back(SolidPair{xs[static_cast<std::size_t>(a)],
                                           ys[static_cast<std::size_t>(match[static_cast<std::size_t>(a)])], std::nullopt});
          const std::size_t first_new = cons.pairs.size();
          std::function<bool(int, Constraint&)> align = [&](int a, Constraint& c) -> bool {
            if (a == r) {
              ++stats_.split_branches;
              ++stats_.fragile_count_checks;
              if (c.count(Side::X, PieceKind::Fragile) > 2 * k - 2 || c.count(Side::Y, PieceKind::Fragile) > 2 * k - 2)
                ++stats_.fragile_count_violations;
              SolverState child{c, FrameSet{}, state.beta, state.pi_remaining, state.k};
              return sink(std::move(child));
            }
            const PairOptions& po = *opts[static_cast<std::size_t>(a)];
            const bool three_way = po.offsets.back() == std::nullopt;
            if (three_way) {
              ++stats_.alignment_three_way;
              ++stats_.short_period_checks;
              const Run& s = xp.runs[static_cast<std::size_t>(a)];
              const Run& t = yp.runs[static_cast<std::size_t>(match[static_cast<std::size_t>(a)])];
              if (!shares_short_period(inst_, Interval{Side::X, s.first, s.last}, Interval{Side::Y, t.first, t.last}, beta))
                ++stats_.short_period_violations;
            } else {
              ++stats_.alignment_exhaustive;
            }
            for (const auto& off : po.offsets) {
              c.pairs[first_new + static_cast<std::size_t>(a)].offset = off;
              if (align(a + 1, c)) return true;
            }
            c.pairs[first_new + static_cast<std::size_t>(a)].offset = std::nullopt;
            return false;
          };
          return align(0, base);
        }
        const Run& s = xp.runs[static_cast<std::size_t>(i)];
        for (int j = 0; j < r; ++j) {
          if (used[static_cast<std::size_t>(j)]) continue;
          if (!options(s, yp.runs[static_cast<std::size_t>(j)])) continue;
          used[static_cast<std::size_t>(j)] = true;
          match[static_cast<std::size_t>(i)] = j;
          bool done = assign(i + 1);
          used[static_cast<std::size_t>(j)] = false;
          if (done) return true;
        }
        return false;
      };
      if (assign(0)) return true;
    }
    if (!any_y) ++stats_.split_abort_count_mismatch;
  }
  return false;
}

}  // namespace mcsp
