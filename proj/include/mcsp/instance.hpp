#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace mcsp {

using Symbol = std::int32_t;

enum class Side : std::uint8_t { X = 0, Y = 1 };

constexpr Side other(Side s) { return s == Side::X ? Side::Y : Side::X; }
constexpr int index(Side s) { return static_cast<int>(s); }
char side_name(Side s);

// Positions are 1-based, as in the text of the problem.
struct Marker {
  Side side = Side::X;
  int pos = 1;
  auto operator<=>(const Marker&) const = default;
};

struct Interval {
  Side side = Side::X;
  int first = 1;
  int last = 1;

  int length() const { return last - first + 1; }
  bool contains(int pos) const { return first <= pos && pos <= last; }
  bool contains(const Interval& o) const {
    return o.side == side && first <= o.first && o.last <= last;
  }
  auto operator<=>(const Interval&) const = default;
};

class Alphabet {
 public:
  Symbol intern(const std::string& token);
  const std::string& name(Symbol s) const { return names_.at(static_cast<std::size_t>(s)); }
  std::size_t size() const { return names_.size(); }
  bool single_chars() const;

 private:
  std::unordered_map<std::string, Symbol> ids_;
  std::vector<std::string> names_;
};

class Instance {
 public:
  Instance(std::vector<Symbol> x, std::vector<Symbol> y, Alphabet alphabet = {});

  // Interns each character of x and y as one symbol.
  static Instance from_strings(const std::string& x, const std::string& y);

  int n() const { return static_cast<int>(x_.size()); }
  Symbol at(Side s, int pos) const { return text(s)[static_cast<std::size_t>(pos - 1)]; }
  Symbol at(Marker m) const { return at(m.side, m.pos); }
  std::span<const Symbol> text(Side s) const { return s == Side::X ? x_ : y_; }
  std::span<const Symbol> slice(const Interval& iv) const;
  const Alphabet& alphabet() const { return alphabet_; }

  bool is_anagram() const;
  bool identical() const { return x_ == y_; }
  std::string render(Side s) const;
  std::string render(const Interval& iv) const;

 private:
  std::vector<Symbol> x_;
  std::vector<Symbol> y_;
  Alphabet alphabet_;
};

// e ⊞ d. Sentinel positions 0 and n+1 are allowed only when asked for.
Marker offset(const Instance& inst, Marker e, int d, bool allow_sentinel = false);

// |ab| for two markers of the same string.
int signed_distance(Marker a, Marker b);

// Content equality of two intervals, possibly on different sides.
bool interval_equiv(const Instance& inst, const Interval& s, const Interval& t);

bool in_range(const Instance& inst, const Interval& iv);

}  // namespace mcsp
