#include "mcsp/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace mcsp {

namespace {

std::vector<std::string> symbols_of(const std::string& line, bool tokens) {
  std::vector<std::string> out;
  if (tokens) {
    std::istringstream in(line);
    for (std::string w; in >> w;) out.push_back(w);
  } else {
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) out.emplace_back(1, c);
  }
  return out;
}

}  // namespace

Instance parse_instance(const std::string& text, bool tokens) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) continue;
    lines.push_back(line);
  }
  if (lines.size() != 2) throw ParseError("expected two non-empty lines, got " + std::to_string(lines.size()));
  Alphabet alphabet;
  std::vector<Symbol> x, y;
  for (const auto& s : symbols_of(lines[0], tokens)) x.push_back(alphabet.intern(s));
  for (const auto& s : symbols_of(lines[1], tokens)) y.push_back(alphabet.intern(s));
  if (x.size() != y.size())
    throw ParseError("x has " + std::to_string(x.size()) + " symbols but y has " + std::to_string(y.size()));
  return Instance(std::move(x), std::move(y), std::move(alphabet));
}

Instance read_instance_file(const std::string& path, bool tokens) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), tokens);
}

std::string format_instance(const Instance& inst, bool tokens) {
  std::string out;
  for (Side s : {Side::X, Side::Y}) {
    bool first = true;
    for (Symbol c : inst.text(s)) {
      if (tokens && !first) out += ' ';
      out += inst.alphabet().name(c);
      first = false;
    }
    out += '\n';
  }
  return out;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::domain_error("empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    std::uint64_t v = rng();
    if (v < limit) return v % bound;
  }
}

GeneratedInstance generate_instance(int n, int k, int sigma, std::uint64_t seed) {
  if (n < 1) throw std::domain_error("n must be positive");
  if (k < 1 || k > n) throw std::domain_error("need 1 <= k <= n");
  if (sigma < 1) throw std::domain_error("sigma must be positive");
  std::mt19937_64 rng(seed);
  Alphabet alphabet;
  for (int c = 0; c < sigma; ++c)
    alphabet.intern(sigma <= 26 ? std::string(1, static_cast<char>('a' + c)) : "s" + std::to_string(c));
  std::vector<Symbol> x(static_cast<std::size_t>(n));
  for (auto& c : x) c = static_cast<Symbol>(bounded_draw(rng, static_cast<std::uint64_t>(sigma)));

  // First k-1 entries of a partial Fisher-Yates shuffle of the adjacencies 1..n-1.
  std::vector<int> adj(static_cast<std::size_t>(n - 1));
  std::iota(adj.begin(), adj.end(), 1);
  for (int i = 0; i < k - 1; ++i) {
    auto j = static_cast<std::size_t>(i) + bounded_draw(rng, static_cast<std::uint64_t>(n - 1 - i));
    std::swap(adj[static_cast<std::size_t>(i)], adj[j]);
  }
  std::vector<int> cuts(adj.begin(), adj.begin() + (k - 1));
  std::sort(cuts.begin(), cuts.end());
  std::vector<Block> xb;
  int start = 1;
  for (int c : cuts) {
    xb.push_back(Block{start, c});
    start = c + 1;
  }
  xb.push_back(Block{start, n});

  // order[j] is the x block placed j-th in y.
  std::vector<int> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  for (int i = k - 1; i > 0; --i)
    std::swap(order[static_cast<std::size_t>(i)],
              order[static_cast<std::size_t>(bounded_draw(rng, static_cast<std::uint64_t>(i + 1)))]);

  std::vector<Symbol> y;
  CommonStringPartition planted;
  planted.x_blocks = xb;
  planted.matching.assign(static_cast<std::size_t>(k), -1);
  for (int j = 0; j < k; ++j) {
    const Block& b = xb[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
    int at = static_cast<int>(y.size()) + 1;
    y.insert(y.end(), x.begin() + (b.first - 1), x.begin() + b.last);
    planted.y_blocks.push_back(Block{at, at + b.length() - 1});
    planted.matching[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])] = j;
  }
  return GeneratedInstance{Instance(std::move(x), std::move(y), std::move(alphabet)), std::move(planted)};
}

}  // namespace mcsp
