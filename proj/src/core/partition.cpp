#include "saism/core/partition.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "saism/core/random.hpp"

namespace saism {

std::size_t StringPartition::component_count() const {
  std::size_t total = 0;
  for (const auto& s : strings) total += s.size();
  return total;
}

void StringPartition::validate(std::size_t m) const {
  if (strings.empty()) throw std::invalid_argument("partition has no strings");
  if (weights.size() != strings.size())
    throw std::invalid_argument("partition has " + std::to_string(strings.size()) +
                                " strings but " + std::to_string(weights.size()) +
                                " weights");
  std::vector<char> seen(m, 0);
  for (std::size_t l = 0; l < strings.size(); ++l) {
    if (strings[l].empty())
      throw std::invalid_argument("string " + std::to_string(l) + " is empty");
    for (std::size_t i : strings[l]) {
      if (i >= m)
        throw std::invalid_argument("index " + std::to_string(i) +
                                    " out of range for " + std::to_string(m) +
                                    " components");
      if (seen[i])
        throw std::invalid_argument("index " + std::to_string(i) +
                                    " appears in more than one string");
      seen[i] = 1;
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    if (!seen[i])
      throw std::invalid_argument("index " + std::to_string(i) +
                                  " is not covered by any string");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0 && w <= 1.0))
      throw std::invalid_argument("weight outside [0, 1]");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("weights sum to " + std::to_string(sum) +
                                ", expected 1");
}

StringPartition make_partition(std::vector<std::vector<std::size_t>> strings,
                               std::vector<double> weights) {
  StringPartition p{std::move(strings), std::move(weights)};
  p.validate(p.component_count());
  return p;
}

namespace {

StringPartition split_balanced(const std::vector<std::size_t>& order,
                               std::size_t string_count) {
  const std::size_t m = order.size();
  if (string_count == 0 || string_count > m)
    throw std::invalid_argument("string count must lie in [1, " +
                                std::to_string(m) + "], got " +
                                std::to_string(string_count));
  StringPartition p;
  p.strings.resize(string_count);
  p.weights.assign(string_count, 1.0 / static_cast<double>(string_count));
  const std::size_t base = m / string_count;
  const std::size_t extra = m % string_count;
  std::size_t pos = 0;
  for (std::size_t l = 0; l < string_count; ++l) {
    const std::size_t len = base + (l < extra ? 1 : 0);
    p.strings[l].assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                        order.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
  }
  return p;
}

}  // namespace

StringPartition make_contiguous_partition(std::size_t m, std::size_t string_count) {
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return split_balanced(order, string_count);
}

StringPartition make_random_partition(std::size_t m, std::size_t string_count,
                                      std::uint64_t seed) {
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Random rng(seed);
  for (std::size_t i = m; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(order[i - 1], order[j]);
  }
  return split_balanced(order, string_count);
}

}  // namespace saism
