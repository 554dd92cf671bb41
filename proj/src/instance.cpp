#include "mcsp/instance.hpp"

#include <algorithm>

namespace mcsp {

char side_name(Side s) { return s == Side::X ? 'x' : 'y'; }

Symbol Alphabet::intern(const std::string& token) {
  auto it = ids_.find(token);
  if (it != ids_.end()) return it->second;
  Symbol id = static_cast<Symbol>(names_.size());
  ids_.emplace(token, id);
  names_.push_back(token);
  return id;
}

bool Alphabet::single_chars() const {
  return std::all_of(names_.begin(), names_.end(),
                     [](const std::string& s) { return s.size() == 1; });
}

Instance::Instance(std::vector<Symbol> x, std::vector<Symbol> y, Alphabet alphabet)
    : x_(std::move(x)), y_(std::move(y)), alphabet_(std::move(alphabet)) {
  if (x_.empty()) throw std::invalid_argument("instance strings must be nonempty");
  if (x_.size() != y_.size()) throw std::invalid_argument("instance strings differ in length");
  if (alphabet_.size() == 0) {
    Symbol hi = 0;
    for (Symbol c : x_) hi = std::max(hi, c);
    for (Symbol c : y_) hi = std::max(hi, c);
    for (Symbol c = 0; c <= hi; ++c) {
      alphabet_.intern(c < 26 ? std::string(1, static_cast<char>('a' + c)) : "s" + std::to_string(c));
    }
  }
}

Instance Instance::from_strings(const std::string& x, const std::string& y) {
  Alphabet a;
  std::vector<Symbol> xs, ys;
  for (char c : x) xs.push_back(a.intern(std::string(1, c)));
  for (char c : y) ys.push_back(a.intern(std::string(1, c)));
  return Instance(std::move(xs), std::move(ys), std::move(a));
}

std::span<const Symbol> Instance::slice(const Interval& iv) const {
  if (!in_range(*this, iv)) throw std::out_of_range("interval outside the string");
  return text(iv.side).subspan(static_cast<std::size_t>(iv.first - 1),
                               static_cast<std::size_t>(iv.length()));
}

bool Instance::is_anagram() const {
  auto a = x_, b = y_;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

std::string Instance::render(Side s) const { return render(Interval{s, 1, n()}); }

std::string Instance::render(const Interval& iv) const {
  std::string out;
  bool chars = alphabet_.single_chars();
  for (Symbol c : slice(iv)) {
    if (!chars && !out.empty()) out += ' ';
    out += alphabet_.name(c);
  }
  return out;
}

Marker offset(const Instance& inst, Marker e, int d, bool allow_sentinel) {
  int p = e.pos + d;
  int lo = allow_sentinel ? 0 : 1;
  int hi = allow_sentinel ? inst.n() + 1 : inst.n();
  if (p < lo || p > hi) throw std::out_of_range("offset leaves the string");
  return Marker{e.side, p};
}

int signed_distance(Marker a, Marker b) {
  if (a.side != b.side) throw std::domain_error("markers lie in different strings");
  return b.pos - a.pos;
}

bool in_range(const Instance& inst, const Interval& iv) {
  return iv.first >= 1 && iv.last <= inst.n() && iv.first <= iv.last;
}

bool interval_equiv(const Instance& inst, const Interval& s, const Interval& t) {
  if (!in_range(inst, s) || !in_range(inst, t)) return false;
  if (s.length() != t.length()) return false;
  auto a = inst.slice(s);
  auto b = inst.slice(t);
  return std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace mcsp
