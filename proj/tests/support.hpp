#pragma once

// Independent reference implementations used by the tests. Nothing here calls
// into the library beyond plain data types.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mcsp/constraint.hpp"
#include "mcsp/frames.hpp"
#include "mcsp/instance.hpp"
#include "mcsp/io.hpp"

namespace mcsp::testing {

inline bool naive_has_period(const std::vector<Symbol>& s, int p) {
  for (std::size_t i = 0; i + static_cast<std::size_t>(p) < s.size(); ++i)
    if (s[i] != s[i + static_cast<std::size_t>(p)]) return false;
  return true;
}

inline int naive_period(const std::vector<Symbol>& s) {
  for (int p = 1; p < static_cast<int>(s.size()); ++p)
    if (naive_has_period(s, p)) return p;
  return static_cast<int>(s.size());
}

inline std::vector<Symbol> text_of(const Instance& inst, Side s, int first, int last) {
  std::vector<Symbol> out;
  for (int i = first; i <= last; ++i) out.push_back(inst.at(s, i));
  return out;
}

// Minimum partition size by enumerating both sides' cuts and comparing block
// multisets; cuts in y are chosen first. nullopt when above k_max.
inline std::optional<int> naive_min_csp(const std::string& x, const std::string& y, int k_max) {
  const int n = static_cast<int>(x.size());
  if (std::string(x).size() != y.size()) return std::nullopt;
  auto sorted = [](std::string s) {
    std::sort(s.begin(), s.end());
    return s;
  };
  if (sorted(x) != sorted(y)) return std::nullopt;
  auto blocks = [&](const std::string& s, unsigned mask) {
    std::vector<std::string> out;
    int start = 0;
    for (int i = 0; i + 1 < n; ++i)
      if (mask >> i & 1u) {
        out.push_back(s.substr(static_cast<std::size_t>(start), static_cast<std::size_t>(i + 1 - start)));
        start = i + 1;
      }
    out.push_back(s.substr(static_cast<std::size_t>(start)));
    std::sort(out.begin(), out.end());
    return out;
  };
  std::optional<int> best;
  const unsigned full = n > 1 ? (1u << (n - 1)) : 1u;
  std::map<int, std::vector<std::vector<std::string>>> by_size;
  for (unsigned my = 0; my < full; ++my) {
    int m = __builtin_popcount(my) + 1;
    if (m > k_max) continue;
    by_size[m].push_back(blocks(y, my));
  }
  for (unsigned mx = 0; mx < full; ++mx) {
    int m = __builtin_popcount(mx) + 1;
    if (m > k_max || (best && m >= *best)) continue;
    auto bx = blocks(x, mx);
    for (const auto& by : by_size[m])
      if (by == bx) {
        best = m;
        break;
      }
  }
  return best;
}

struct CorpusEntry {
  std::string x, y;
  std::string origin;
};

// 200 planted instances (n <= 12, sigma <= 3, k <= 4) and every binary pair with n <= 7.
inline std::vector<CorpusEntry> acceptance_corpus() {
  std::vector<CorpusEntry> out;
  std::mt19937_64 rng(20240521);
  for (int i = 0; i < 200; ++i) {
    int n = 2 + static_cast<int>(bounded_draw(rng, 11));
    int sigma = 1 + static_cast<int>(bounded_draw(rng, 3));
    int k = 1 + static_cast<int>(bounded_draw(rng, static_cast<std::uint64_t>(std::min(4, n))));
    std::uint64_t seed = rng();
    GeneratedInstance g = generate_instance(n, k, sigma, seed);
    out.push_back({g.inst.render(Side::X), g.inst.render(Side::Y), "gen seed " + std::to_string(seed)});
  }
  for (int n = 1; n <= 7; ++n)
    for (unsigned a = 0; a < (1u << n); ++a)
      for (unsigned b = 0; b < (1u << n); ++b) {
        std::string x, y;
        for (int i = 0; i < n; ++i) {
          x += (a >> i & 1u) ? 'b' : 'a';
          y += (b >> i & 1u) ? 'b' : 'a';
        }
        out.push_back({x, y, "binary"});
      }
  return out;
}

// Maximum extension by a marker-by-marker scan.
inline Interval naive_extension(const Instance& inst, const Constraint& cons, const SolidPair& pair, Side side) {
  const int n = inst.n();
  auto foreign = [&](Side s, int pos, int own) {
    for (const Piece& p : cons.pieces(s))
      if (p.solid() && p.id != own && p.first <= pos && pos <= p.last) return true;
    return false;
  };
  const Piece& s = cons.piece(side, pair.id(side));
  if (pair.fixed()) {
    const int d = *pair.offset;
    const Piece& px = cons.piece(Side::X, pair.x_id);
    const Piece& py = cons.piece(Side::Y, pair.y_id);
    auto ok = [&](int i) {
      if (i < 1 || i > n || i + d < 1 || i + d > n) return false;
      if (foreign(Side::X, i, px.id) || foreign(Side::Y, i + d, py.id)) return false;
      return inst.at(Side::X, i) == inst.at(Side::Y, i + d);
    };
    int l = px.first, r = px.first;
    while (ok(r + 1)) ++r;
    while (ok(l - 1)) --l;
    return side == Side::X ? Interval{Side::X, l, r} : Interval{Side::Y, l + d, r + d};
  }
  const int p = naive_period(text_of(inst, side, s.first, s.last));
  int l = s.first, r = s.last;
  while (r + 1 <= n && !foreign(side, r + 1, s.id) && inst.at(side, r + 1) == inst.at(side, r + 1 - p)) ++r;
  while (l - 1 >= 1 && !foreign(side, l - 1, s.id) && inst.at(side, l - 1) == inst.at(side, l - 1 + p)) --l;
  return Interval{side, l, r};
}

struct NaiveStrip {
  int length = 0;
  int first = 0;  // in the first fragile piece of the path
};

// Longest interval of the first fragile piece whose equidistant images along the
// path stay in their pieces and adjacent extensions and carry equal content.
inline NaiveStrip naive_strip(const Instance& inst, const Constraint& cons, const PieceGraph& g,
                              const std::vector<int>& path) {
  struct Hop {
    Side side;
    const Piece* f;
    int shift;
    std::vector<Interval> ext;
  };
  std::vector<Hop> hops;
  int shift = 0;
  for (std::size_t i = 1; i + 1 < path.size(); i += 2) {
    const Vertex& fv = g.vertices[static_cast<std::size_t>(path[i])];
    if (i > 1) {
      const SolidPair& u = cons.pairs[static_cast<std::size_t>(g.vertices[static_cast<std::size_t>(path[i - 1])].ref)];
      shift += hops.back().side == Side::X ? *u.offset : -*u.offset;
    }
    Hop h{fv.side, &cons.piece(fv.side, fv.ref), shift, {}};
    int at = cons.find(fv.side, fv.ref);
    const auto& ps = cons.pieces(fv.side);
    for (int nb : {at - 1, at + 1}) {
      if (nb < 0 || nb >= static_cast<int>(ps.size())) continue;
      const Piece& sp = ps[static_cast<std::size_t>(nb)];
      h.ext.push_back(naive_extension(inst, cons, cons.pairs[static_cast<std::size_t>(cons.pair_of(fv.side, sp.id))], fv.side));
    }
    hops.push_back(h);
  }
  NaiveStrip best;
  const Piece& f0 = *hops.front().f;
  for (int a = f0.first; a <= f0.last; ++a) {
    for (int b = a; b <= f0.last; ++b) {
      bool ok = true;
      for (const Hop& h : hops) {
        int lo = a + h.shift, hi = b + h.shift;
        if (lo < h.f->first || hi > h.f->last) ok = false;
        for (const Interval& e : h.ext)
          if (lo < e.first || hi > e.last) ok = false;
        if (!ok) break;
        for (int i = 0; i <= b - a; ++i)
          if (inst.at(h.side, lo + i) != inst.at(hops.front().side, a + i)) ok = false;
        if (!ok) break;
      }
      if (ok && b - a + 1 > best.length) best = NaiveStrip{b - a + 1, a};
    }
  }
  return best;
}

// Constraints with rep-rep paths: either A f B in x alone, or the four-piece
// cycle A f1 U f3 B | B f2 U f4 A through one fixed pair U.
struct StripCase {
  Instance inst;
  Constraint cons;
};

inline std::vector<int> random_cuts(std::mt19937_64& rng, int n, int pieces) {
  // Strictly increasing 1 = c0 < c1 < ... < c_pieces = n with every gap >= 1.
  std::vector<int> inner;
  std::vector<int> pool;
  for (int i = 2; i < n; ++i) pool.push_back(i);
  for (int i = 0; i < pieces - 1; ++i) {
    auto j = static_cast<std::size_t>(i) + bounded_draw(rng, pool.size() - static_cast<std::size_t>(i));
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
  }
  inner.assign(pool.begin(), pool.begin() + (pieces - 1));
  std::sort(inner.begin(), inner.end());
  std::vector<int> out{1};
  out.insert(out.end(), inner.begin(), inner.end());
  out.push_back(n);
  return out;
}

inline std::optional<StripCase> make_strip_case(std::mt19937_64& rng) {
  const int n = 16 + static_cast<int>(bounded_draw(rng, 25));
  const bool cycle = bounded_draw(rng, 3) != 0;
  const int sigma = 2 + static_cast<int>(bounded_draw(rng, 2));
  auto letter = [&] { return static_cast<Symbol>(bounded_draw(rng, static_cast<std::uint64_t>(sigma))); };
  std::vector<Symbol> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
  if (bounded_draw(rng, 2)) {
    // Shared periodic background with a few point mutations.
    const int p = 1 + static_cast<int>(bounded_draw(rng, 3));
    std::vector<Symbol> word(static_cast<std::size_t>(p));
    for (auto& c : word) c = letter();
    const int px = static_cast<int>(bounded_draw(rng, static_cast<std::uint64_t>(p)));
    const int py = static_cast<int>(bounded_draw(rng, static_cast<std::uint64_t>(p)));
    for (int i = 0; i < n; ++i) {
      x[static_cast<std::size_t>(i)] = word[static_cast<std::size_t>((i + px) % p)];
      y[static_cast<std::size_t>(i)] = word[static_cast<std::size_t>((i + py) % p)];
    }
    for (int m = static_cast<int>(bounded_draw(rng, 4)); m > 0; --m) {
      x[bounded_draw(rng, static_cast<std::uint64_t>(n))] = letter();
      y[bounded_draw(rng, static_cast<std::uint64_t>(n))] = letter();
    }
  } else {
    for (auto& c : x) c = letter();
    for (auto& c : y) c = letter();
  }
  const bool paint = bounded_draw(rng, 2) != 0;
  auto paint_periodic = [&](std::vector<Symbol>& s, int first, int last) {
    if (!paint) return;
    int p = 1 + static_cast<int>(bounded_draw(rng, 3));
    std::vector<Symbol> word(static_cast<std::size_t>(p));
    for (auto& c : word) c = letter();
    for (int i = std::max(1, first); i <= std::min(n, last); ++i)
      s[static_cast<std::size_t>(i - 1)] = word[static_cast<std::size_t>((i - first) % p)];
  };
  Constraint cons;
  auto add = [&](Side s, PieceKind kind, int a, int b) {
    int id = cons.new_id();
    cons.pieces(s).push_back(Piece{id, kind, a, b});
    return id;
  };
  if (!cycle) {
    auto c = random_cuts(rng, n, 3);
    paint_periodic(x, 1, c[1] + static_cast<int>(bounded_draw(rng, 6)));
    paint_periodic(x, c[2] - static_cast<int>(bounded_draw(rng, 6)), n);
    y = x;
    std::reverse(y.begin(), y.end());
    int ax = add(Side::X, PieceKind::Solid, c[0], c[1]);
    add(Side::X, PieceKind::Fragile, c[1], c[2]);
    int bx = add(Side::X, PieceKind::Solid, c[2], c[3]);
    int m = n / 2;
    int ay = add(Side::Y, PieceKind::Solid, 1, m);
    add(Side::Y, PieceKind::Fragile, m, m + 1);
    int by = add(Side::Y, PieceKind::Solid, m + 1, n);
    cons.pairs.push_back(SolidPair{ax, ay, std::nullopt});
    cons.pairs.push_back(SolidPair{bx, by, std::nullopt});
    return StripCase{Instance(x, y), cons};
  }
  auto cx = random_cuts(rng, n, 5);
  const int ulen = cx[3] - cx[2];
  // Y cuts with a U piece of the same length.
  if (n - ulen - 1 < 4) return std::nullopt;
  auto cy = random_cuts(rng, n - ulen, 4);
  std::vector<int> by{cy[0], cy[1], cy[2], cy[2] + ulen, cy[3] + ulen, cy[4] + ulen};
  const int d = by[2] - cx[2];
  paint_periodic(x, 1, cx[1] + static_cast<int>(bounded_draw(rng, 6)));
  paint_periodic(x, cx[4] - static_cast<int>(bounded_draw(rng, 6)), n);
  paint_periodic(y, 1, by[1] + static_cast<int>(bounded_draw(rng, 6)));
  paint_periodic(y, by[4] - static_cast<int>(bounded_draw(rng, 6)), n);
  const int c1 = static_cast<int>(bounded_draw(rng, 16)), c2 = static_cast<int>(bounded_draw(rng, 16));
  for (int i = cx[2] - c1; i <= cx[3] + c2; ++i)
    if (i >= 1 && i <= n && i + d >= 1 && i + d <= n) y[static_cast<std::size_t>(i + d - 1)] = x[static_cast<std::size_t>(i - 1)];
  int ax = add(Side::X, PieceKind::Solid, cx[0], cx[1]);
  add(Side::X, PieceKind::Fragile, cx[1], cx[2]);
  int ux = add(Side::X, PieceKind::Solid, cx[2], cx[3]);
  add(Side::X, PieceKind::Fragile, cx[3], cx[4]);
  int bx = add(Side::X, PieceKind::Solid, cx[4], cx[5]);
  int byid = add(Side::Y, PieceKind::Solid, by[0], by[1]);
  add(Side::Y, PieceKind::Fragile, by[1], by[2]);
  int uy = add(Side::Y, PieceKind::Solid, by[2], by[3]);
  add(Side::Y, PieceKind::Fragile, by[3], by[4]);
  int ay = add(Side::Y, PieceKind::Solid, by[4], by[5]);
  cons.pairs.push_back(SolidPair{ax, ay, std::nullopt});
  cons.pairs.push_back(SolidPair{ux, uy, d});
  cons.pairs.push_back(SolidPair{bx, byid, std::nullopt});
  return StripCase{Instance(x, y), cons};
}

// Long periodic runs joined by distinct separators, then cut into k blocks and shuffled.
inline CorpusEntry periodic_instance(std::mt19937_64& rng, int k) {
  const int runs = 2 + static_cast<int>(bounded_draw(rng, 3));
  std::string x;
  for (int r = 0; r < runs; ++r) {
    if (r > 0) x += static_cast<char>('c' + r - 1);
    const int p = 1 + static_cast<int>(bounded_draw(rng, 3));
    std::string word;
    for (int i = 0; i < p; ++i) word += bounded_draw(rng, 2) ? 'a' : 'b';
    if (p > 1 && word.find('a') == std::string::npos) word[0] = 'a';
    const int len = 10 + static_cast<int>(bounded_draw(rng, 14));
    for (int i = 0; i < len; ++i) x += word[static_cast<std::size_t>(i % p)];
  }
  const int n = static_cast<int>(x.size());
  std::vector<int> pool;
  for (int i = 1; i < n; ++i) pool.push_back(i);
  for (int i = 0; i < k - 1; ++i)
    std::swap(pool[static_cast<std::size_t>(i)],
              pool[static_cast<std::size_t>(i) + bounded_draw(rng, pool.size() - static_cast<std::size_t>(i))]);
  std::vector<int> cuts(pool.begin(), pool.begin() + (k - 1));
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(n);
  std::vector<std::string> blocks;
  int start = 0;
  for (int c : cuts) {
    blocks.push_back(x.substr(static_cast<std::size_t>(start), static_cast<std::size_t>(c - start)));
    start = c;
  }
  for (int i = k - 1; i > 0; --i)
    std::swap(blocks[static_cast<std::size_t>(i)], blocks[bounded_draw(rng, static_cast<std::uint64_t>(i + 1))]);
  std::string y;
  for (const auto& b : blocks) y += b;
  return {x, y, "periodic"};
}

}  // namespace mcsp::testing
