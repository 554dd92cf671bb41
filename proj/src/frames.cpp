#include "mcsp/frames.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "mcsp/periodicity.hpp"

namespace mcsp {

Occupancy::Occupancy(const Instance& inst, const Constraint& cons) : n_(inst.n()) {
  for (Side s : {Side::X, Side::Y}) {
    auto& own = owner_[index(s)];
    own.assign(static_cast<std::size_t>(n_ + 2), -1);
    for (const Piece& p : cons.pieces(s))
      if (p.solid())
        for (int i = p.first; i <= p.last; ++i) own[static_cast<std::size_t>(i)] = p.id;
  }
}

bool Occupancy::free_for(Side s, int pos, int allowed) const {
  if (pos < 1 || pos > n_) return false;
  int o = owner(s, pos);
  return o < 0 || o == allowed;
}

namespace {

MaxExtension periodic_extension(const Instance& inst, const Occupancy& occ, Side side, const Piece& p) {
  const int period = shortest_period(inst, p.on(side)).length;
  int r = p.last;
  while (occ.free_for(side, r + 1, p.id) && inst.at(side, r + 1) == inst.at(side, r + 1 - period)) ++r;
  int l = p.first;
  while (occ.free_for(side, l - 1, p.id) && inst.at(side, l - 1) == inst.at(side, l - 1 + period)) --l;
  return MaxExtension{side, p.id, l, r};
}

}  // namespace

std::optional<std::pair<MaxExtension, MaxExtension>> max_extension(const Instance& inst,
                                                                    const Constraint& cons,
                                                                    const Occupancy& occ,
                                                                    const SolidPair& pair) {
  const Piece& s = cons.piece(Side::X, pair.x_id);
  const Piece& t = cons.piece(Side::Y, pair.y_id);
  if (!pair.fixed())
    return std::make_pair(periodic_extension(inst, occ, Side::X, s), periodic_extension(inst, occ, Side::Y, t));
  const int d = *pair.offset;
  auto ok = [&](int i) {
    return occ.free_for(Side::X, i, s.id) && occ.free_for(Side::Y, i + d, t.id) &&
           inst.at(Side::X, i) == inst.at(Side::Y, i + d);
  };
  const int ref = s.first;
  if (!ok(ref)) return std::nullopt;
  int r = ref, l = ref;
  while (ok(r + 1)) ++r;
  while (ok(l - 1)) --l;
  if (l > s.first || r < s.last || l + d > t.first || r + d < t.last) return std::nullopt;
  return std::make_pair(MaxExtension{Side::X, s.id, l, r}, MaxExtension{Side::Y, t.id, l + d, r + d});
}

std::optional<Extensions> compute_extensions(const Instance& inst, const Constraint& cons) {
  Occupancy occ(inst, cons);
  Extensions ext;
  for (const SolidPair& pair : cons.pairs) {
    auto e = max_extension(inst, cons, occ, pair);
    if (!e) return std::nullopt;
    ext.put(e->first);
    ext.put(e->second);
  }
  return ext;
}

int PieceGraph::fragile_count() const {
  return static_cast<int>(std::count_if(vertices.begin(), vertices.end(),
                                        [](const Vertex& v) { return v.kind == VertexKind::Fragile; }));
}

PieceGraph build_piece_graph(const Constraint& cons, const FrameSet& frames) {
  PieceGraph g;
  std::vector<std::pair<int, const Piece*>> fragile;  // vertex, piece
  for (Side s : {Side::X, Side::Y}) {
    for (const Piece& p : cons.pieces(s)) {
      if (p.solid() || frames.has(s, p.id)) continue;
      fragile.emplace_back(static_cast<int>(g.vertices.size()), &p);
      g.vertices.push_back(Vertex{VertexKind::Fragile, s, p.id});
    }
  }
  std::vector<int> left_vertex(cons.pairs.size()), right_vertex(cons.pairs.size());
  for (std::size_t i = 0; i < cons.pairs.size(); ++i) {
    if (cons.pairs[i].fixed()) {
      left_vertex[i] = static_cast<int>(g.vertices.size());
      g.vertices.push_back(Vertex{VertexKind::FixedLeft, Side::X, static_cast<int>(i)});
      right_vertex[i] = static_cast<int>(g.vertices.size());
      g.vertices.push_back(Vertex{VertexKind::FixedRight, Side::X, static_cast<int>(i)});
    } else {
      left_vertex[i] = right_vertex[i] = static_cast<int>(g.vertices.size());
      g.vertices.push_back(Vertex{VertexKind::Repetitive, Side::X, static_cast<int>(i)});
    }
  }
  g.adj.assign(g.vertices.size(), {});
  auto link = [&](int a, int b) {
    auto& l = g.adj[static_cast<std::size_t>(a)];
    if (std::find(l.begin(), l.end(), b) != l.end()) return;
    l.push_back(b);
    g.adj[static_cast<std::size_t>(b)].push_back(a);
  };
  for (auto [v, f] : fragile) {
    Side side = g.vertices[static_cast<std::size_t>(v)].side;
    for (std::size_t i = 0; i < cons.pairs.size(); ++i) {
      const Piece& s = cons.piece(side, cons.pairs[i].id(side));
      if (f->last == s.first) link(v, left_vertex[i]);
      if (f->first == s.last) link(v, right_vertex[i]);
    }
  }
  return g;
}

bool degree_bounds_hold(const PieceGraph& g) {
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    int cap = g.vertices[v].kind == VertexKind::Repetitive ? 4 : 2;
    if (g.degree(static_cast<int>(v)) > cap) return false;
  }
  return true;
}

std::optional<std::vector<int>> find_cycle(const PieceGraph& g, bool allow_repetitive) {
  const int nv = static_cast<int>(g.vertices.size());
  std::vector<int> state(static_cast<std::size_t>(nv), 0), parent(static_cast<std::size_t>(nv), -1);
  std::vector<int> found;
  auto usable = [&](int v) { return allow_repetitive || !g.repetitive(v); };
  std::function<bool(int)> dfs = [&](int v) {
    state[static_cast<std::size_t>(v)] = 1;
    for (int u : g.adj[static_cast<std::size_t>(v)]) {
      if (!usable(u) || u == parent[static_cast<std::size_t>(v)]) continue;
      if (state[static_cast<std::size_t>(u)] == 1) {
        for (int c = v; c != u; c = parent[static_cast<std::size_t>(c)]) found.push_back(c);
        found.push_back(u);
        std::reverse(found.begin(), found.end());
        return true;
      }
      if (state[static_cast<std::size_t>(u)] == 0) {
        parent[static_cast<std::size_t>(u)] = v;
        if (dfs(u)) return true;
      }
    }
    state[static_cast<std::size_t>(v)] = 2;
    return false;
  };
  for (int v = 0; v < nv; ++v)
    if (usable(v) && state[static_cast<std::size_t>(v)] == 0 && dfs(v)) return found;
  return std::nullopt;
}

std::vector<RepRepPath> rep_rep_paths(const PieceGraph& g) {
  std::vector<RepRepPath> out;
  auto other_neighbor = [&](int v, int from) -> int {
    const auto& l = g.adj[static_cast<std::size_t>(v)];
    if (l.size() != 2) return -1;
    return l[0] == from ? l[1] : l[0];
  };
  for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
    if (!g.repetitive(v)) continue;
    for (int f : g.adj[static_cast<std::size_t>(v)]) {
      RepRepPath path{v, f};
      int prev = v, cur = f;
      while (true) {
        int nxt = other_neighbor(cur, prev);
        if (nxt < 0 || std::find(path.begin(), path.end(), nxt) != path.end()) break;
        path.push_back(nxt);
        if (g.repetitive(nxt)) {
          if (v < nxt) out.push_back(path);
          break;
        }
        int fr = other_neighbor(nxt, cur);
        if (fr < 0 || std::find(path.begin(), path.end(), fr) != path.end()) break;
        path.push_back(fr);
        prev = nxt;
        cur = fr;
      }
    }
  }
  return out;
}

namespace {

// Solid pieces left and right of a fragile piece; -1 at string ends.
std::pair<int, int> solid_neighbors(const Constraint& cons, Side s, int fragile_id) {
  int i = cons.find(s, fragile_id);
  const auto& ps = cons.pieces(s);
  int l = i > 0 ? ps[static_cast<std::size_t>(i - 1)].id : -1;
  int r = i + 1 < static_cast<int>(ps.size()) ? ps[static_cast<std::size_t>(i + 1)].id : -1;
  return {l, r};
}

}  // namespace

Strip compute_strip(const Constraint& cons, const Extensions& ext, const PieceGraph& g,
                    const RepRepPath& path) {
  Strip strip;
  int shift = 0;
  for (std::size_t i = 1; i + 1 < path.size(); i += 2) {
    const Vertex& fv = g.vertices[static_cast<std::size_t>(path[i])];
    if (i > 1) {
      const Vertex& u = g.vertices[static_cast<std::size_t>(path[i - 1])];
      const SolidPair& pair = cons.pairs[static_cast<std::size_t>(u.ref)];
      const Vertex& prev = g.vertices[static_cast<std::size_t>(path[i - 2])];
      shift += prev.side == Side::X ? *pair.offset : -*pair.offset;
    }
    const Piece& f = cons.piece(fv.side, fv.ref);
    auto [l, r] = solid_neighbors(cons, fv.side, fv.ref);
    StripPiece sp{fv.side, fv.ref, shift, f.first, f.last};
    if (l >= 0) {
      sp.lo = std::max(sp.lo, ext.of(fv.side, l).lext);
      sp.hi = std::min(sp.hi, ext.of(fv.side, l).rext);
    }
    if (r >= 0) {
      sp.lo = std::max(sp.lo, ext.of(fv.side, r).lext);
      sp.hi = std::min(sp.hi, ext.of(fv.side, r).rext);
    }
    strip.pieces.push_back(sp);
  }
  if (strip.pieces.empty()) return strip;
  int lo = std::numeric_limits<int>::min(), hi = std::numeric_limits<int>::max();
  for (const StripPiece& sp : strip.pieces) {
    lo = std::max(lo, sp.lo - sp.shift);
    hi = std::min(hi, sp.hi - sp.shift);
  }
  if (hi < lo) hi = lo - 1;
  for (StripPiece& sp : strip.pieces) {
    sp.first = lo + sp.shift;
    sp.last = hi + sp.shift;
  }
  return strip;
}

std::optional<Interval> frame_left_of(const Instance&, const Constraint& cons, const FrameSet& frames,
                                      Side s, int solid_id) {
  int i = cons.find(s, solid_id);
  if (i == 0) return Interval{s, 0, 1};
  return frames.get(s, cons.pieces(s)[static_cast<std::size_t>(i - 1)].id);
}

std::optional<Interval> frame_right_of(const Instance& inst, const Constraint& cons,
                                       const FrameSet& frames, Side s, int solid_id) {
  int i = cons.find(s, solid_id);
  if (i + 1 == static_cast<int>(cons.pieces(s).size())) return Interval{s, inst.n(), inst.n() + 1};
  return frames.get(s, cons.pieces(s)[static_cast<std::size_t>(i + 1)].id);
}

namespace {

struct EdgeView {
  const Piece* f;
  Side side;
  const SolidPair* pair;
  const Piece* s;  // piece of the pair in f's string
  bool f_right_of_s;
};

EdgeView view(const RuleContext& ctx, int fv, int sv) {
  const Vertex& a = ctx.graph.vertices[static_cast<std::size_t>(fv)];
  const Vertex& b = ctx.graph.vertices[static_cast<std::size_t>(sv)];
  const SolidPair& pair = ctx.cons.pairs[static_cast<std::size_t>(b.ref)];
  const Piece& f = ctx.cons.piece(a.side, a.ref);
  const Piece& s = ctx.cons.piece(a.side, pair.id(a.side));
  return EdgeView{&f, a.side, &pair, &s, f.first == s.last};
}

std::vector<std::pair<int, int>> cycle_edges(const PieceGraph& g, const std::vector<int>& cyc) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
    if (g.fragile(a))
      out.emplace_back(a, b);
    else
      out.emplace_back(b, a);
  }
  return out;
}

int pair_period(const RuleContext& ctx, const SolidPair& pair) {
  return std::max(shortest_period(ctx.inst, ctx.cons.interval(Side::X, pair.x_id)).length,
                  shortest_period(ctx.inst, ctx.cons.interval(Side::Y, pair.y_id)).length);
}

}  // namespace

std::optional<RuleBranches> frame_rule_fragile_end(const RuleContext& ctx) {
  const PieceGraph& g = ctx.graph;
  for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
    if (!g.fragile(v) || g.degree(v) != 1) continue;
    const Vertex& fv = g.vertices[static_cast<std::size_t>(v)];
    const Piece& f = ctx.cons.piece(fv.side, fv.ref);
    const int n = ctx.inst.n();
    if (f.first == 1) return RuleBranches{{FramePlacement{fv.side, f.id, 1, 1 + ctx.w}}};
    if (f.last == n) return RuleBranches{{FramePlacement{fv.side, f.id, n - ctx.w, n}}};
  }
  return std::nullopt;
}

std::optional<RuleBranches> frame_rule_propagation(const RuleContext& ctx) {
  const PieceGraph& g = ctx.graph;
  for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
    const Vertex& u = g.vertices[static_cast<std::size_t>(v)];
    if ((u.kind != VertexKind::FixedLeft && u.kind != VertexKind::FixedRight) || g.degree(v) != 1) continue;
    EdgeView e = view(ctx, g.adj[static_cast<std::size_t>(v)][0], v);
    const Side os = other(e.side);
    const int ref = reference_pos(ctx.cons, *e.pair, e.side);
    const int oref = reference_pos(ctx.cons, *e.pair, os);
    if (u.kind == VertexKind::FixedLeft) {
      auto fr = frame_left_of(ctx.inst, ctx.cons, ctx.frames, os, e.pair->id(os));
      if (!fr) continue;
      int uu = oref - fr->first, vv = oref - fr->last;
      return RuleBranches{{FramePlacement{e.side, e.f->id, ref - (uu + ctx.w - 1), ref - vv}}};
    }
    auto fr = frame_right_of(ctx.inst, ctx.cons, ctx.frames, os, e.pair->id(os));
    if (!fr) continue;
    return RuleBranches{{FramePlacement{e.side, e.f->id, ref + (fr->first - oref),
                                        ref + (fr->last - oref) + ctx.w - 1}}};
  }
  return std::nullopt;
}

std::optional<RuleBranches> frame_rule_fixed_cycle(const RuleContext& ctx) {
  auto cyc = find_cycle(ctx.graph, false);
  if (!cyc) return std::nullopt;
  RuleBranches out;
  const int w = ctx.w;
  for (auto [fv, sv] : cycle_edges(ctx.graph, *cyc)) {
    EdgeView e = view(ctx, fv, sv);
    const MaxExtension& x = ctx.ext.of(e.side, e.s->id);
    if (ctx.graph.vertices[static_cast<std::size_t>(sv)].kind == VertexKind::FixedLeft)
      out.push_back({FramePlacement{e.side, e.f->id, x.lext - w, x.lext + 2 * w}});
    else
      out.push_back({FramePlacement{e.side, e.f->id, x.rext - 2 * w, x.rext + w}});
  }
  return out;
}

std::optional<RuleBranches> frame_rule_small_strip(const RuleContext& ctx) {
  const int w = ctx.w;
  for (const RepRepPath& path : rep_rep_paths(ctx.graph)) {
    Strip strip = compute_strip(ctx.cons, ctx.ext, ctx.graph, path);
    const auto& ps = ctx.cons.pairs[static_cast<std::size_t>(ctx.graph.vertices[static_cast<std::size_t>(path.front())].ref)];
    const auto& pt = ctx.cons.pairs[static_cast<std::size_t>(ctx.graph.vertices[static_cast<std::size_t>(path.back())].ref)];
    int bound = shortest_period(ctx.inst, ctx.cons.interval(Side::X, ps.x_id)).length +
                shortest_period(ctx.inst, ctx.cons.interval(Side::X, pt.x_id)).length;
    if (strip.length() >= bound) continue;
    std::vector<FramePlacement> branch;
    for (const StripPiece& sp : strip.pieces) {
      if (strip.empty())
        branch.push_back(FramePlacement{sp.side, sp.piece_id, sp.lo - w, sp.hi + w});
      else
        branch.push_back(FramePlacement{sp.side, sp.piece_id, sp.first - w, sp.last + w});
    }
    return RuleBranches{branch};
  }
  return std::nullopt;
}

std::optional<RuleBranches> frame_rule_repetitive_cycle(const RuleContext& ctx) {
  auto cyc = find_cycle(ctx.graph, true);
  if (!cyc) return std::nullopt;
  int period = 0;
  for (int v : *cyc)
    if (ctx.graph.repetitive(v))
      period = std::max(period, pair_period(ctx, ctx.cons.pairs[static_cast<std::size_t>(ctx.graph.vertices[static_cast<std::size_t>(v)].ref)]));
  RuleBranches out;
  const int w = ctx.w;
  for (auto [fv, sv] : cycle_edges(ctx.graph, *cyc)) {
    EdgeView e = view(ctx, fv, sv);
    const MaxExtension& x = ctx.ext.of(e.side, e.s->id);
    if (e.f_right_of_s)
      out.push_back({FramePlacement{e.side, e.f->id, x.rext - (period + w), x.rext + w}});
    else
      out.push_back({FramePlacement{e.side, e.f->id, x.lext - w, x.lext + period + w}});
  }
  return out;
}

std::optional<RuleBranches> frame_rule_repetitive_degree_one(const RuleContext& ctx) {
  const PieceGraph& g = ctx.graph;
  const int w = ctx.w;
  for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
    if (!g.repetitive(v) || g.degree(v) != 1) continue;
    EdgeView e = view(ctx, g.adj[static_cast<std::size_t>(v)][0], v);
    const Side os = other(e.side);
    auto a = frame_left_of(ctx.inst, ctx.cons, ctx.frames, os, e.pair->id(os));
    auto b = frame_right_of(ctx.inst, ctx.cons, ctx.frames, os, e.pair->id(os));
    if (!a || !b) continue;
    if (e.f_right_of_s) {
      auto c = frame_left_of(ctx.inst, ctx.cons, ctx.frames, e.side, e.s->id);
      if (!c) continue;
      return RuleBranches{{FramePlacement{e.side, e.f->id, c->first + (b->first - a->last) + 1,
                                          c->last + (b->last - a->first) + w - 2}}};
    }
    auto d = frame_right_of(ctx.inst, ctx.cons, ctx.frames, e.side, e.s->id);
    if (!d) continue;
    return RuleBranches{{FramePlacement{e.side, e.f->id, d->first - (b->last - a->first) - w + 2,
                                        d->last - (b->first - a->last) - 1}}};
  }
  return std::nullopt;
}

Constraint fitting_rule(const Instance& inst, const Constraint& cons, const FrameSet& frames) {
  Constraint out = cons;
  for (Side s : {Side::X, Side::Y}) {
    auto& ps = out.pieces(s);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (ps[i].solid()) continue;
      auto fr = frames.get(s, ps[i].id);
      if (!fr) continue;
      if (i > 0) {
        ps[i - 1].last = fr->first;
        ps[i].first = fr->first;
      }
      if (i + 1 < ps.size()) {
        ps[i + 1].first = fr->last;
        ps[i].last = fr->last;
      }
    }
  }
  (void)inst;
  return out;
}

std::vector<int> feasible_alignments(const Instance& inst, const Constraint& cons, const SolidPair& pair) {
  if (pair.fixed()) throw std::domain_error("pair is already fixed");
  const Piece& s = cons.piece(Side::X, pair.x_id);
  const Piece& t = cons.piece(Side::Y, pair.y_id);
  const int n = inst.n();
  Occupancy occ(inst, cons);
  std::vector<int> out;
  const int lo = std::max(1 - s.first, t.last - n);
  const int hi = std::min(n - s.last, t.first - 1);
  for (int d = lo; d <= hi; ++d) {
    bool ok = true;
    for (int i = s.first; i <= s.last && ok; ++i)
      ok = inst.at(Side::X, i) == inst.at(Side::Y, i + d) && occ.free_for(Side::Y, i + d, t.id);
    for (int j = t.first; j <= t.last && ok; ++j)
      ok = inst.at(Side::Y, j) == inst.at(Side::X, j - d) && occ.free_for(Side::X, j - d, s.id);
    if (ok) out.push_back(d);
  }
  return out;
}

}  // namespace mcsp
