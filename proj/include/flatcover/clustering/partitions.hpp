#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "flatcover/core/errors.hpp"
#include "flatcover/core/rational.hpp"

namespace flatcover {

/// Stirling number of the second kind S(n, k).
inline BigInt stirling2(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  if (n == 0) return 1;
  if (k == 0) return 0;
  std::vector<BigInt> row(k + 1, 0);
  row[0] = 1;  // S(0, 0)
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = std::min(i, k); j >= 1; --j) row[j] = BigInt(j) * row[j] + row[j - 1];
    row[0] = 0;
  }
  return row[k];
}

/// Number of set partitions of n items into at most k nonempty blocks.
inline BigInt partition_count(std::size_t n, std::size_t k) {
  BigInt s = 0;
  for (std::size_t j = 1; j <= k; ++j) s += stirling2(n, j);
  return s;
}

inline void check_partition_guard(std::size_t n, std::size_t k, std::uint64_t cap) {
  const BigInt total = partition_count(n, k);
  if (total > BigInt(static_cast<unsigned long>(cap)))
    throw GuardError("partition enumeration", saturate_u64(total), cap);
}

/// Set partitions of n items into at most k blocks as restricted growth
/// strings: item 0 is in block 0 and every label is at most one more than
/// the largest label before it. Strings come out in lexicographic order.
class PartitionIterator {
 public:
  PartitionIterator(std::size_t n, std::size_t k) : k_(k), labels_(n, 0), prefix_max_(n, 0) {
    if (n == 0) throw std::invalid_argument("partition of an empty set");
    if (k == 0) throw std::invalid_argument("k must be at least 1");
  }

  const std::vector<std::size_t>& labels() const { return labels_; }
  std::size_t blocks() const { return prefix_max_.back() + 1; }

  /// Advances to the next string; false once the sequence is exhausted.
  bool next() {
    const std::size_t n = labels_.size();
    for (std::size_t i = n; i-- > 1;) {
      if (labels_[i] + 1 < k_ && labels_[i] <= prefix_max_[i - 1]) {
        ++labels_[i];
        prefix_max_[i] = std::max(prefix_max_[i - 1], labels_[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
          labels_[j] = 0;
          prefix_max_[j] = prefix_max_[i];
        }
        return true;
      }
    }
    return false;
  }

 private:
  std::size_t k_;
  std::vector<std::size_t> labels_;
  std::vector<std::size_t> prefix_max_;
};

}  // namespace flatcover
