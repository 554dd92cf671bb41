#include "mcsp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace mcsp {

namespace {

bool same_content(const Instance& inst, const Block& xb, int y_first) {
  if (y_first + xb.length() - 1 > inst.n()) return false;
  for (int i = 0; i < xb.length(); ++i)
    if (inst.at(Side::X, xb.first + i) != inst.at(Side::Y, y_first + i)) return false;
  return true;
}

// Cuts y left to right, each time placing an unused x block that matches there.
std::optional<CommonStringPartition> match_into_y(const Instance& inst, const std::vector<Block>& xb) {
  const std::size_t m = xb.size();
  std::vector<int> owner;  // x block per y block, in y order
  std::vector<bool> used(m, false);
  std::function<bool(int)> place = [&](int pos) -> bool {
    if (pos > inst.n()) return true;
    for (std::size_t i = 0; i < m; ++i) {
      if (used[i] || !same_content(inst, xb[i], pos)) continue;
      // Equal blocks are interchangeable; try only the first unused one.
      bool dup = false;
      for (std::size_t j = 0; j < i && !dup; ++j)
        dup = !used[j] && xb[j].length() == xb[i].length() && same_content(inst, xb[j], pos);
      if (dup) continue;
      used[i] = true;
      owner.push_back(static_cast<int>(i));
      if (place(pos + xb[i].length())) return true;
      owner.pop_back();
      used[i] = false;
    }
    return false;
  };
  if (!place(1)) return std::nullopt;
  CommonStringPartition csp;
  csp.x_blocks = xb;
  csp.matching.assign(m, -1);
  int pos = 1;
  for (std::size_t j = 0; j < owner.size(); ++j) {
    const Block& b = xb[static_cast<std::size_t>(owner[j])];
    csp.y_blocks.push_back(Block{pos, pos + b.length() - 1});
    csp.matching[static_cast<std::size_t>(owner[j])] = static_cast<int>(j);
    pos += b.length();
  }
  return csp;
}

}  // namespace

OracleResult brute_force_min_csp(const Instance& inst, int k_max, int n_limit) {
  const int n = inst.n();
  // Number of x-partitions with at most k_max blocks, against those of an n_limit string.
  const double cap = std::ldexp(1.0, n_limit - 1);
  double total = 0, binom = 1;
  for (int m = 1; m <= std::min(k_max, n) && total <= cap; ++m) {
    total += binom;
    binom = binom * (n - m) / m;
  }
  if (total > cap)
    throw OracleLimitExceeded("oracle search space for n = " + std::to_string(n) + ", k = " + std::to_string(k_max) +
                              " exceeds that of a length-" + std::to_string(n_limit) + " string");
  OracleResult res;
  if (!inst.is_anagram()) return res;
  for (int m = 1; m <= std::min(k_max, n); ++m) {
    std::vector<int> cuts;  // left markers of the breakpoints
    std::function<bool(int)> choose = [&](int from) -> bool {
      if (static_cast<int>(cuts.size()) == m - 1) {
        ++res.explored;
        std::vector<Block> xb;
        int start = 1;
        for (int c : cuts) {
          xb.push_back(Block{start, c});
          start = c + 1;
        }
        xb.push_back(Block{start, n});
        if (auto csp = match_into_y(inst, xb)) {
          res.min_size = m;
          res.witness = std::move(csp);
          return true;
        }
        return false;
      }
      const int need = m - 1 - static_cast<int>(cuts.size());
      for (int c = from; c <= n - need; ++c) {
        cuts.push_back(c);
        if (choose(c + 1)) return true;
        cuts.pop_back();
      }
      return false;
    };
    if (choose(1)) return res;
  }
  return res;
}

std::optional<CommonStringPartition> greedy_csp(const Instance& inst) {
  if (!inst.is_anagram()) throw std::domain_error("greedy needs x and y to be anagrams");
  const int n = inst.n();
  std::vector<bool> done_x(static_cast<std::size_t>(n + 1), false), done_y(static_cast<std::size_t>(n + 1), false);
  std::vector<std::pair<Block, Block>> pairs;
  std::vector<int> prev(static_cast<std::size_t>(n + 1)), cur(static_cast<std::size_t>(n + 1));
  int remaining = n;
  while (remaining > 0) {
    // Longest common suffix ending at (i, j) over unmatched markers.
    int best = 0, bi = 0, bj = 0;
    std::fill(prev.begin(), prev.end(), 0);
    for (int i = 1; i <= n; ++i) {
      cur[0] = 0;
      for (int j = 1; j <= n; ++j) {
        if (done_x[static_cast<std::size_t>(i)] || done_y[static_cast<std::size_t>(j)] ||
            inst.at(Side::X, i) != inst.at(Side::Y, j)) {
          cur[static_cast<std::size_t>(j)] = 0;
          continue;
        }
        int len = prev[static_cast<std::size_t>(j - 1)] + 1;
        cur[static_cast<std::size_t>(j)] = len;
        if (len > best || (len == best && (i - len < bi - best || (i - len == bi - best && j - len < bj - best)))) {
          best = len;
          bi = i;
          bj = j;
        }
      }
      std::swap(prev, cur);
    }
    if (best == 0) throw std::logic_error("anagram instance without a common symbol");
    Block xb{bi - best + 1, bi}, yb{bj - best + 1, bj};
    for (int i = xb.first; i <= xb.last; ++i) done_x[static_cast<std::size_t>(i)] = true;
    for (int j = yb.first; j <= yb.last; ++j) done_y[static_cast<std::size_t>(j)] = true;
    pairs.emplace_back(xb, yb);
    remaining -= best;
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<Block> ys;
  for (const auto& p : pairs) ys.push_back(p.second);
  std::sort(ys.begin(), ys.end());
  CommonStringPartition csp;
  for (const auto& p : pairs) {
    csp.x_blocks.push_back(p.first);
    csp.matching.push_back(static_cast<int>(std::lower_bound(ys.begin(), ys.end(), p.second) - ys.begin()));
  }
  csp.y_blocks = std::move(ys);
  return csp;
}

}  // namespace mcsp
