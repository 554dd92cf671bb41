#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include "mcsp/instance.hpp"
#include "mcsp/partition.hpp"

namespace mcsp {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two lines, x then y. By default every non-whitespace character is a symbol;
// with tokens, symbols are whitespace-separated words.
Instance parse_instance(const std::string& text, bool tokens = false);
Instance read_instance_file(const std::string& path, bool tokens = false);
std::string format_instance(const Instance& inst, bool tokens);

nlohmann::json read_json_file(const std::string& path);

// Uniform draw from [0, bound) by rejection on the top of the 64-bit range.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound);

struct GeneratedInstance {
  Instance inst;
  CommonStringPartition planted;
};

// x uniform over sigma letters; y is x cut into k uniformly chosen blocks,
// shuffled. Throws std::domain_error unless 1 <= k <= n and sigma >= 1.
GeneratedInstance generate_instance(int n, int k, int sigma, std::uint64_t seed);

}  // namespace mcsp
