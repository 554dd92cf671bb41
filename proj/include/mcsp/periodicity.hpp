#pragma once

#include <optional>
#include <span>

#include "mcsp/instance.hpp"

namespace mcsp {

struct PeriodInfo {
  Interval interval;
  int length = 1;
};

bool has_period(std::span<const Symbol> s, int p);

// Border array method.
int shortest_period_length(std::span<const Symbol> s);

PeriodInfo shortest_period(const Instance& inst, const Interval& s);

// True iff s = rho pi^i tau for some i >= 1, rho a suffix and tau a prefix of pi.
bool has_word_period(std::span<const Symbol> s, std::span<const Symbol> pi);

// Requires s and t to have periods ps and pt and the length `overlap` suffix of s
// to equal the prefix of t; throws std::domain_error otherwise.
bool periodicity_transfer(std::span<const Symbol> s, int ps, std::span<const Symbol> t, int pt,
                          int overlap);

// Breaks of the shortest period of s in its whole string; nullopt when the
// periodic run reaches the string end.
std::optional<Marker> left_break(const Instance& inst, const Interval& s);
std::optional<Marker> right_break(const Instance& inst, const Interval& s);

// Same as above with an explicit period length.
std::optional<Marker> left_break(const Instance& inst, const Interval& s, int p);
std::optional<Marker> right_break(const Instance& inst, const Interval& s, int p);

// Maximal run around s with period p; `lo`/`hi` bound the run.
Interval periodic_run(const Instance& inst, const Interval& s, int p, int lo, int hi);

}  // namespace mcsp
