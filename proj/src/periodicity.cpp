#include "mcsp/periodicity.hpp"

#include <algorithm>
#include <vector>

namespace mcsp {

bool has_period(std::span<const Symbol> s, int p) {
  if (p < 1) return false;
  for (std::size_t i = 0; i + static_cast<std::size_t>(p) < s.size(); ++i) {
    if (s[i] != s[i + static_cast<std::size_t>(p)]) return false;
  }
  return true;
}

int shortest_period_length(std::span<const Symbol> s) {
  const int n = static_cast<int>(s.size());
  if (n == 0) return 0;
  std::vector<int> border(static_cast<std::size_t>(n), 0);
  for (int i = 1; i < n; ++i) {
    int b = border[i - 1];
    while (b > 0 && s[i] != s[b]) b = border[b - 1];
    if (s[i] == s[b]) ++b;
    border[i] = b;
  }
  return n - border[n - 1];
}

PeriodInfo shortest_period(const Instance& inst, const Interval& s) {
  return PeriodInfo{s, shortest_period_length(inst.slice(s))};
}

bool has_word_period(std::span<const Symbol> s, std::span<const Symbol> pi) {
  const std::size_t p = pi.size();
  if (p == 0 || s.size() < p) return false;
  if (!has_period(s, static_cast<int>(p))) return false;
  // s[0..p) must be a rotation of pi.
  for (std::size_t r = 0; r < p; ++r) {
    bool ok = true;
    for (std::size_t i = 0; i < p && ok; ++i) ok = s[i] == pi[(i + r) % p];
    if (ok) return true;
  }
  return false;
}

bool periodicity_transfer(std::span<const Symbol> s, int ps, std::span<const Symbol> t, int pt,
                          int overlap) {
  if (overlap < 0 || overlap > static_cast<int>(s.size()) || overlap > static_cast<int>(t.size()))
    throw std::domain_error("overlap longer than an operand");
  if (!has_period(s, ps) || !has_period(t, pt)) throw std::domain_error("period does not hold");
  auto suf = s.subspan(s.size() - static_cast<std::size_t>(overlap));
  if (!std::equal(suf.begin(), suf.end(), t.begin())) throw std::domain_error("suffix is not a prefix");
  return overlap >= ps + pt;
}

Interval periodic_run(const Instance& inst, const Interval& s, int p, int lo, int hi) {
  Interval run = s;
  while (run.first - 1 >= lo && run.first - 1 + p <= inst.n() &&
         inst.at(s.side, run.first - 1) == inst.at(s.side, run.first - 1 + p))
    --run.first;
  while (run.last + 1 <= hi && run.last + 1 - p >= 1 &&
         inst.at(s.side, run.last + 1) == inst.at(s.side, run.last + 1 - p))
    ++run.last;
  return run;
}

std::optional<Marker> left_break(const Instance& inst, const Interval& s, int p) {
  Interval run = periodic_run(inst, s, p, 1, s.last);
  if (run.first == 1) return std::nullopt;
  return Marker{s.side, run.first - 1};
}

std::optional<Marker> right_break(const Instance& inst, const Interval& s, int p) {
  Interval run = periodic_run(inst, s, p, s.first, inst.n());
  if (run.last == inst.n()) return std::nullopt;
  return Marker{s.side, run.last + 1};
}

std::optional<Marker> left_break(const Instance& inst, const Interval& s) {
  return left_break(inst, s, shortest_period(inst, s).length);
}

std::optional<Marker> right_break(const Instance& inst, const Interval& s) {
  return right_break(inst, s, shortest_period(inst, s).length);
}

}  // namespace mcsp
