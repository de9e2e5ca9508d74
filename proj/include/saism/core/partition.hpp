#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace saism {

/// Ordered strings of component indices together with their averaging weights.
///
/// Indices are 0-based. A valid partition over m components has pairwise
/// disjoint strings whose union is {0, ..., m-1}, every string non-empty, and
/// weights in [0, 1] summing to one within 1e-12.
struct StringPartition {
  std::vector<std::vector<std::size_t>> strings;
  std::vector<double> weights;

  std::size_t string_count() const { return strings.size(); }
  std::size_t component_count() const;

  /// Throws std::invalid_argument describing the first violated condition.
  void validate(std::size_t m) const;
};

/// Builds a partition from explicit strings and weights, validating it.
StringPartition make_partition(std::vector<std::vector<std::size_t>> strings,
                               std::vector<double> weights);

/// Equal-weight partition of the identity ordering into P contiguous chunks.
StringPartition make_contiguous_partition(std::size_t m, std::size_t string_count);

/// Shuffles {0..m-1} with a seeded Fisher-Yates pass (mt19937_64, unbiased
/// rejection sampling for each swap index) and splits the result into P
/// contiguous chunks. The first m % P strings get one extra index. All weights
/// are 1/P.
StringPartition make_random_partition(std::size_t m, std::size_t string_count,
                                      std::uint64_t seed);

}  // namespace saism
