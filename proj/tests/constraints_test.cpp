#include <gtest/gtest.h>

#include <random>

#include "mcsp/constraint.hpp"
#include "mcsp/io.hpp"
#include "support.hpp"

using namespace mcsp;

namespace {

// Content conditions spelled out symbol by symbol.
bool naive_alignment(const Instance& inst, const Interval& s, const Interval& t, int d) {
  auto sym = [&](Side side, int pos) -> std::optional<Symbol> {
    if (pos < 1 || pos > inst.n()) return std::nullopt;
    return inst.at(side, pos);
  };
  for (int i = s.first; i <= s.last; ++i)
    if (sym(t.side, t.first + d + (i - s.first)) != sym(s.side, i)) return false;
  for (int j = t.first; j <= t.last; ++j)
    if (sym(s.side, s.first - d + (j - t.first)) != sym(t.side, j)) return false;
  return true;
}

struct PairedCase {
  Instance inst;
  Constraint cons;
};

// One fixed pair inside a matched block pair of a planted partition, fragile elsewhere.
std::optional<PairedCase> paired_case(std::mt19937_64& rng) {
  int n = 8 + static_cast<int>(rng() % 12);
  GeneratedInstance g = generate_instance(n, 2 + static_cast<int>(rng() % 2), 2, rng());
  const auto& csp = g.planted;
  std::size_t bi = rng() % csp.x_blocks.size();
  const Block& xb = csp.x_blocks[bi];
  const Block& yb = csp.y_blocks[static_cast<std::size_t>(csp.matching[bi])];
  if (xb.length() < 2) return std::nullopt;
  int a = xb.first, b = xb.last;
  if (a == 1 && b == n) return std::nullopt;
  int d = yb.first - xb.first;
  Constraint c;
  auto build = [&](Side s, int lo, int hi) {
    auto& ps = c.pieces(s);
    if (lo > 1) ps.push_back(Piece{c.new_id(), PieceKind::Fragile, 1, lo});
    int id = c.new_id();
    ps.push_back(Piece{id, PieceKind::Solid, lo, hi});
    if (hi < n) ps.push_back(Piece{c.new_id(), PieceKind::Fragile, hi, n});
    return id;
  };
  int sx = build(Side::X, a, b);
  int sy = build(Side::Y, a + d, b + d);
  c.pairs.push_back(SolidPair{sx, sy, d});
  return PairedCase{g.inst, c};
}

}  // namespace

TEST(InitialConstraint, TwoFullFragilePieces) {
  Instance inst = Instance::from_strings("abc", "cab");
  Constraint c = initial_constraint(inst);
  ASSERT_EQ(c.pieces(Side::X).size(), 1u);
  ASSERT_EQ(c.pieces(Side::Y).size(), 1u);
  EXPECT_FALSE(c.pieces(Side::X)[0].solid());
  EXPECT_EQ(c.pieces(Side::Y)[0].last, 3);
  EXPECT_TRUE(c.pairs.empty());
  EXPECT_TRUE(validate_constraint(inst, c));
  EXPECT_TRUE(satisfies_constraint(inst, csp_from_lengths({2, 1}, {1, 2}, {1, 0}), c));
}

TEST(MakeSplitting, Examples) {
  auto p = make_splitting(Interval{Side::X, 1, 10}, 4);
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(p[0], (Interval{Side::X, 1, 4}));
  EXPECT_EQ(p[1], (Interval{Side::X, 4, 7}));
  EXPECT_EQ(p[2], (Interval{Side::X, 7, 10}));
  EXPECT_EQ(make_splitting(Interval{Side::Y, 3, 6}, 4).size(), 1u);
  EXPECT_THROW(make_splitting(Interval{Side::X, 2, 2}, 4), std::domain_error);
}

TEST(MakeSplitting, PartitionsAdjacencies) {
  for (int len = 2; len <= 40; ++len)
    for (int pl = 2; pl <= 10; ++pl) {
      Interval f{Side::X, 5, 5 + len - 1};
      auto pieces = make_splitting(f, pl);
      std::vector<int> hits(static_cast<std::size_t>(len), 0);
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        const Interval& q = pieces[i];
        EXPECT_GE(q.length(), 2);
        if (i + 1 < pieces.size()) EXPECT_EQ(q.length(), pl);
        for (int a = q.first; a < q.last; ++a) ++hits[static_cast<std::size_t>(a - f.first)];
      }
      EXPECT_EQ(pieces.front().first, f.first);
      EXPECT_EQ(pieces.back().last, f.last);
      for (int a = 0; a < len - 1; ++a) EXPECT_EQ(hits[static_cast<std::size_t>(a)], 1);
    }
}

TEST(EnumerateAlignments, Examples) {
  Instance inst = Instance::from_strings("abcdxx", "xxabcd");
  EXPECT_EQ(enumerate_alignments(inst, Interval{Side::X, 1, 4}, Interval{Side::Y, 3, 6}, 6),
            (std::vector<int>{0}));
  Instance ab = Instance::from_strings("abxx", "xxcd");
  EXPECT_TRUE(enumerate_alignments(ab, Interval{Side::X, 1, 2}, Interval{Side::Y, 3, 4}, 4).empty());
}

TEST(EnumerateAlignments, PeriodicAgainstNaive) {
  const std::string ctx = "abababababababababab";
  Instance inst = Instance::from_strings("cc" + ctx + "dd", "dd" + ctx + "cc");
  Interval s{Side::X, 9, 14};
  Interval t{Side::Y, 9, 14};
  std::vector<int> want;
  for (int d = -5; d <= 5; ++d)
    if (std::abs(d) <= 6 && naive_alignment(inst, s, t, d)) want.push_back(d);
  EXPECT_EQ(enumerate_alignments(inst, s, t, 6), want);
  EXPECT_EQ(want, (std::vector<int>{-4, -2, 0, 2, 4}));
}

TEST(EnumerateAlignments, RandomAgainstNaive) {
  std::mt19937_64 rng(31);
  for (int iter = 0; iter < 400; ++iter) {
    int n = 6 + static_cast<int>(rng() % 14);
    GeneratedInstance g = generate_instance(n, 1 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 2), rng());
    auto pick = [&](Side side) {
      int len = 2 + static_cast<int>(rng() % 4);
      int a = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - len + 1));
      return Interval{side, a, a + len - 1};
    };
    Interval s = pick(Side::X), t = pick(Side::Y);
    int m = static_cast<int>(rng() % 8);
    std::vector<int> want;
    for (int d = -(s.last - s.first); d <= t.last - t.first; ++d)
      if (std::abs(d) <= m && naive_alignment(g.inst, s, t, d)) want.push_back(d);
    EXPECT_EQ(enumerate_alignments(g.inst, s, t, m), want);
    EXPECT_EQ(count_alignments(g.inst, s, t, m, 1000), static_cast<int>(want.size()));
    for (int d : want) {
      int off = t.first + d - s.first;
      EXPECT_TRUE(offset_consistent(g.inst, s, t, off));
    }
  }
}

TEST(MergeConsecutive, Examples) {
  Instance inst = Instance::from_strings("abcdefghij", "abcdefghij");
  Constraint c;
  int s1 = c.new_id(), s2 = c.new_id(), f1 = c.new_id(), f2 = c.new_id(), t = c.new_id();
  c.pieces(Side::X) = {Piece{s1, PieceKind::Solid, 1, 4}, Piece{s2, PieceKind::Solid, 4, 7},
                       Piece{f1, PieceKind::Fragile, 7, 9}, Piece{f2, PieceKind::Fragile, 9, 10}};
  c.pieces(Side::Y) = {Piece{t, PieceKind::Solid, 1, 7}, Piece{c.new_id(), PieceKind::Fragile, 7, 10}};
  c.pairs.push_back(SolidPair{s2, t, 0});
  Constraint m = merge_consecutive(c);
  ASSERT_EQ(m.pieces(Side::X).size(), 2u);
  EXPECT_EQ(m.pieces(Side::X)[0].id, s2);
  EXPECT_EQ(m.pieces(Side::X)[0].last, 7);
  EXPECT_EQ(m.pieces(Side::X)[1].first, 7);
  EXPECT_EQ(m.pieces(Side::X)[1].last, 10);
  EXPECT_TRUE(validate_constraint(inst, m));
}

TEST(MergeConsecutive, RandomKindsReachAlternation) {
  std::mt19937_64 rng(37);
  for (int iter = 0; iter < 300; ++iter) {
    int n = 4 + static_cast<int>(rng() % 30);
    Constraint c;
    for (Side s : {Side::X, Side::Y})
      for (const Interval& q : make_splitting(Interval{s, 1, n}, 2 + static_cast<int>(rng() % 3)))
        c.pieces(s).push_back(Piece{c.new_id(), rng() % 2 ? PieceKind::Solid : PieceKind::Fragile, q.first, q.last});
    std::size_t before = c.pieces(Side::X).size() + c.pieces(Side::Y).size();
    Constraint m = merge_consecutive(c);
    std::size_t after = m.pieces(Side::X).size() + m.pieces(Side::Y).size();
    EXPECT_LE(after, before);
    for (Side s : {Side::X, Side::Y}) {
      const auto& ps = m.pieces(s);
      EXPECT_EQ(ps.front().first, 1);
      EXPECT_EQ(ps.back().last, n);
      for (std::size_t i = 1; i < ps.size(); ++i) {
        EXPECT_NE(ps[i].kind, ps[i - 1].kind);
        EXPECT_EQ(ps[i].first, ps[i - 1].last);
      }
    }
  }
}

TEST(Equidistant, KeepAligned) {
  Instance inst = Instance::from_strings("abcdefghijkl", "ghijklabcdef");
  Constraint c;
  int sx = c.new_id(), sy = c.new_id();
  c.pieces(Side::X) = {Piece{sx, PieceKind::Solid, 1, 6}, Piece{c.new_id(), PieceKind::Fragile, 6, 12}};
  c.pieces(Side::Y) = {Piece{c.new_id(), PieceKind::Fragile, 1, 7}, Piece{sy, PieceKind::Solid, 7, 12}};
  SolidPair pr{sx, sy, 6};
  c.pairs.push_back(pr);
  EXPECT_TRUE(validate_constraint(inst, c));
  Marker a{Side::X, reference_pos(c, pr, Side::X)};
  Marker b{Side::Y, reference_pos(c, pr, Side::Y)};
  EXPECT_TRUE(equidistant(c, pr, a, b));
  EXPECT_TRUE(equidistant(c, pr, offset(inst, a, 5), offset(inst, b, 5)));
  EXPECT_FALSE(equidistant(c, pr, offset(inst, a, 5), offset(inst, b, 4)));
  for (int d = -6; d <= 0; ++d)
    for (int i = 0; i <= 5; ++i) {
      Marker ai = offset(inst, b, d);
      Marker bi{Side::X, 1 + i};
      EXPECT_EQ(equidistant(c, pr, offset(inst, bi, i), offset(inst, ai, i)), equidistant(c, pr, bi, ai));
    }
  EXPECT_THROW(equidistant(c, SolidPair{sx, sy, std::nullopt}, a, b), std::domain_error);
}

TEST(ValidateConstraint, Examples) {
  Instance inst = Instance::from_strings("abab", "baba");
  EXPECT_TRUE(validate_constraint(inst, initial_constraint(inst)));
  Constraint c;
  int a = c.new_id(), b = c.new_id(), y = c.new_id(), z = c.new_id();
  c.pieces(Side::X) = {Piece{a, PieceKind::Solid, 1, 2}, Piece{b, PieceKind::Solid, 2, 4}};
  c.pieces(Side::Y) = {Piece{y, PieceKind::Solid, 1, 3}, Piece{z, PieceKind::Fragile, 3, 4}};
  EXPECT_FALSE(validate_constraint(inst, c));
}

// Each injected violation of a valid constraint is reported.
TEST(ValidateConstraint, MutationsAreCaught) {
  std::mt19937_64 rng(41);
  int built = 0;
  for (int iter = 0; iter < 500; ++iter) {
    auto pc = paired_case(rng);
    if (!pc) continue;
    ++built;
    const Instance& inst = pc->inst;
    ASSERT_EQ(constraint_defect(inst, pc->cons), "");
    std::vector<Constraint> bad;
    {
      Constraint m = pc->cons;
      m.pairs.clear();
      bad.push_back(m);
    }
    {
      Constraint m = pc->cons;
      auto& ps = m.pieces(Side::X);
      for (Piece& p : ps) p.kind = PieceKind::Solid;
      bad.push_back(m);
    }
    {
      Constraint m = pc->cons;
      m.pieces(Side::Y).back().last -= 1;
      bad.push_back(m);
    }
    {
      Constraint m = pc->cons;
      auto& ps = m.pieces(Side::X);
      if (ps.size() > 1) {
        ps[1].first += 1;
        bad.push_back(m);
      }
    }
    {
      Constraint m = pc->cons;
      m.pieces(Side::Y).front().id = m.pieces(Side::X).front().id;
      bad.push_back(m);
    }
    {
      Constraint m = pc->cons;
      int d = *m.pairs[0].offset + (rng() % 2 ? 1 : -1);
      Interval s = m.interval(Side::X, m.pairs[0].x_id);
      Interval t = m.interval(Side::Y, m.pairs[0].y_id);
      if (!naive_alignment(inst, s, t, s.first + d - t.first)) {
        m.pairs[0].offset = d;
        bad.push_back(m);
      }
    }
    for (const Constraint& m : bad) EXPECT_FALSE(validate_constraint(inst, m)) << dump(inst, m, FrameSet{});
  }
  EXPECT_GT(built, 100);
}

TEST(Dump, GoldenFormat) {
  Instance inst = Instance::from_strings("abcdefghijkl", "ghijklabcdef");
  Constraint c;
  int sx = c.new_id(), sy = c.new_id(), fx = c.new_id(), fy = c.new_id();
  c.pieces(Side::X) = {Piece{sx, PieceKind::Solid, 1, 6}, Piece{fx, PieceKind::Fragile, 6, 12}};
  c.pieces(Side::Y) = {Piece{fy, PieceKind::Fragile, 1, 7}, Piece{sy, PieceKind::Solid, 7, 12}};
  c.pairs.push_back(SolidPair{sx, sy, 6});
  FrameSet frames;
  frames.set(Side::X, fx, 6, 8);
  EXPECT_EQ(dump(inst, c, frames),
            "X [1,6] solid fixed δ=0\n"
            "X [6,12] fragile frame [6,8]\n"
            "Y [1,7] fragile\n"
            "Y [7,12] solid fixed δ=0\n");
}
