#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace tetra {

/// Binomial coefficient, exact for the small sizes used here (n <= 40).
inline std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Lexicographic rank of a sorted k-subset of {0, ..., d-1}.
inline std::int64_t subsetRank(std::span<const int> subset, int d) {
  const int k = static_cast<int>(subset.size());
  std::int64_t rank = 0;
  int prev = -1;
  for (int i = 0; i < k; ++i) {
    for (int v = prev + 1; v < subset[i]; ++v) rank += binomial(d - 1 - v, k - 1 - i);
    prev = subset[i];
  }
  return rank;
}

inline void subsetUnrank(std::int64_t rank, int d, int k, std::span<int> out) {
  int v = 0;
  for (int i = 0; i < k; ++i) {
    while (true) {
      const std::int64_t block = binomial(d - 1 - v, k - 1 - i);
      if (rank < block) break;
      rank -= block;
      ++v;
    }
    out[i] = v++;
  }
}

/// Calls fn(subset) for every sorted k-subset of {0, ..., d-1} in
/// lexicographic order.
template <typename Fn>
void forEachSubset(int d, int k, Fn&& fn) {
  if (k < 0 || k > d) return;
  std::vector<int> s(k);
  for (int i = 0; i < k; ++i) s[i] = i;
  while (true) {
    fn(std::span<const int>(s));
    int i = k - 1;
    while (i >= 0 && s[i] == d - k + i) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}

/// Merges two disjoint sorted index sets and reports the sign of the shuffle
/// permutation sorting their concatenation, i.e. (-1)^{#{(a,b): a>b}}.
/// Returns 0 if the sets intersect.
inline int mergeDisjoint(std::span<const int> first, std::span<const int> second,
                         std::vector<int>& merged) {
  merged.clear();
  merged.reserve(first.size() + second.size());
  std::size_t i = 0, j = 0;
  int inversions = 0;
  while (i < first.size() && j < second.size()) {
    if (first[i] == second[j]) return 0;
    if (first[i] < second[j]) {
      merged.push_back(first[i++]);
    } else {
      merged.push_back(second[j++]);
      inversions += static_cast<int>(first.size() - i);
    }
  }
  while (i < first.size()) merged.push_back(first[i++]);
  while (j < second.size()) merged.push_back(second[j++]);
  return (inversions % 2 == 0) ? 1 : -1;
}

}  // namespace tetra
