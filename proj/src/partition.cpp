#include "mcsp/partition.hpp"

#include <algorithm>

namespace mcsp {

std::string_view defect_name(CspDefect d) {
  switch (d) {
    case CspDefect::None: return "ok";
    case CspDefect::Empty: return "empty";
    case CspDefect::SizeMismatch: return "size_mismatch";
    case CspDefect::NotCovering: return "not_covering";
    case CspDefect::BadMatching: return "bad_matching";
    case CspDefect::ContentMismatch: return "content_mismatch";
    case CspDefect::TooLarge: return "too_large";
  }
  return "unknown";
}

namespace {

bool covers(const std::vector<Block>& blocks, int n) {
  int next = 1;
  for (const Block& b : blocks) {
    if (b.first != next || b.last < b.first) return false;
    next = b.last + 1;
  }
  return next == n + 1;
}

}  // namespace

CspDefect diagnose_csp(const Instance& inst, const CommonStringPartition& csp, int k) {
  const std::size_t m = csp.x_blocks.size();
  if (m == 0) return CspDefect::Empty;
  if (csp.y_blocks.size() != m || csp.matching.size() != m) return CspDefect::SizeMismatch;
  if (!covers(csp.x_blocks, inst.n()) || !covers(csp.y_blocks, inst.n())) return CspDefect::NotCovering;
  std::vector<bool> seen(m, false);
  for (int j : csp.matching) {
    if (j < 0 || j >= static_cast<int>(m) || seen[static_cast<std::size_t>(j)]) return CspDefect::BadMatching;
    seen[static_cast<std::size_t>(j)] = true;
  }
  for (std::size_t i = 0; i < m; ++i) {
    const Block& a = csp.x_blocks[i];
    const Block& b = csp.y_blocks[static_cast<std::size_t>(csp.matching[i])];
    if (!interval_equiv(inst, Interval{Side::X, a.first, a.last}, Interval{Side::Y, b.first, b.last}))
      return CspDefect::ContentMismatch;
  }
  if (static_cast<int>(m) > k) return CspDefect::TooLarge;
  return CspDefect::None;
}

bool verify_csp(const Instance& inst, const CommonStringPartition& csp, int k) {
  return diagnose_csp(inst, csp, k) == CspDefect::None;
}

std::vector<Breakpoint> breakpoints(const CommonStringPartition& csp, Side s) {
  std::vector<Breakpoint> out;
  const auto& blocks = csp.blocks(s);
  for (std::size_t i = 0; i + 1 < blocks.size(); ++i) out.push_back(Breakpoint{s, blocks[i].last});
  return out;
}

std::vector<Breakpoint> breakpoints(const CommonStringPartition& csp) {
  auto out = breakpoints(csp, Side::X);
  auto y = breakpoints(csp, Side::Y);
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

int block_of(const CommonStringPartition& csp, Side s, int pos) {
  const auto& blocks = csp.blocks(s);
  auto it = std::upper_bound(blocks.begin(), blocks.end(), pos,
                             [](int p, const Block& b) { return p < b.first; });
  if (it == blocks.begin()) throw std::out_of_range("position before the first block");
  --it;
  if (!it->contains(pos)) throw std::out_of_range("position after the last block");
  return static_cast<int>(it - blocks.begin());
}

Marker matched_marker(const CommonStringPartition& csp, Marker a) {
  int i = block_of(csp, a.side, a.pos);
  int delta = a.pos - csp.blocks(a.side)[static_cast<std::size_t>(i)].first;
  int j;
  if (a.side == Side::X) {
    j = csp.matching[static_cast<std::size_t>(i)];
  } else {
    auto it = std::find(csp.matching.begin(), csp.matching.end(), i);
    j = static_cast<int>(it - csp.matching.begin());
  }
  Side o = other(a.side);
  return Marker{o, csp.blocks(o)[static_cast<std::size_t>(j)].first + delta};
}

Interval window(const CommonStringPartition& csp, const Interval& fragile) {
  int lo = 0, hi = 0;
  for (const Breakpoint& bp : breakpoints(csp, fragile.side)) {
    if (fragile.first <= bp.left && bp.right() <= fragile.last) {
      if (lo == 0) lo = bp.left;
      hi = bp.right();
    }
  }
  if (lo == 0) throw std::domain_error("fragile piece holds no breakpoint");
  return Interval{fragile.side, lo, hi};
}

CommonStringPartition csp_from_lengths(const std::vector<int>& x_lengths,
                                       const std::vector<int>& y_lengths,
                                       const std::vector<int>& matching) {
  CommonStringPartition csp;
  int next = 1;
  for (int len : x_lengths) {
    csp.x_blocks.push_back(Block{next, next + len - 1});
    next += len;
  }
  next = 1;
  for (int len : y_lengths) {
    csp.y_blocks.push_back(Block{next, next + len - 1});
    next += len;
  }
  csp.matching = matching;
  return csp;
}

nlohmann::json to_json(const CommonStringPartition& csp) {
  nlohmann::json doc;
  doc["size"] = csp.size();
  auto blocks = [](const std::vector<Block>& bs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Block& b : bs) arr.push_back({b.first, b.last});
    return arr;
  };
  doc["x_blocks"] = blocks(csp.x_blocks);
  doc["y_blocks"] = blocks(csp.y_blocks);
  nlohmann::json match = nlohmann::json::array();
  for (int j : csp.matching) match.push_back(j + 1);
  doc["matching"] = match;
  return doc;
}

CommonStringPartition csp_from_json(const nlohmann::json& doc) {
  try {
    CommonStringPartition csp;
    auto blocks = [](const nlohmann::json& arr) {
      std::vector<Block> out;
      for (const auto& b : arr) {
        if (!b.is_array() || b.size() != 2) throw std::invalid_argument("block must be [start, end]");
        out.push_back(Block{b.at(0).get<int>(), b.at(1).get<int>()});
      }
      return out;
    };
    csp.x_blocks = blocks(doc.at("x_blocks"));
    csp.y_blocks = blocks(doc.at("y_blocks"));
    for (const auto& j : doc.at("matching")) csp.matching.push_back(j.get<int>() - 1);
    if (doc.contains("size") && doc.at("size").get<int>() != csp.size())
      throw std::invalid_argument("size field disagrees with the block count");
    return csp;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed partition document: ") + e.what());
  }
}

}  // namespace mcsp
