// Copyright 2026 The morphotrans Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Ordering and list metrics shared by the rankers, the learners and the evaluator.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "morphotrans/errors.hpp"

namespace morphotrans {

/// True when a ranks strictly above b. Scores within a relative 1e-12 are ties,
/// so sums that differ only by rounding do not reorder a list.
inline bool score_above(double a, double b) {
  double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return a - b > 1e-12 * scale;
}

/// Indices sorted by descending score. Items are assumed to already be in
/// tie-break order; ties keep that order.
inline std::vector<std::size_t> order_desc(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  // Insertion sort: lists are short and stability under score_above is required.
  for (std::size_t i = 1; i < order.size(); ++i) {
    auto cur = order[i];
    std::size_t j = i;
    while (j > 0 && score_above(scores[cur], scores[order[j - 1]])) {
      order[j] = order[j - 1];
      --j;
    }
    order[j] = cur;
  }
  return order;
}

/// Average precision of a ranked binary relevance vector (mean of precision@k over
/// the ranks k of relevant items). Zero when nothing is relevant.
inline double average_precision(std::span<const bool> relevant_in_rank_order) {
  double hits = 0.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < relevant_in_rank_order.size(); ++k) {
    if (!relevant_in_rank_order[k]) continue;
    hits += 1.0;
    sum += hits / static_cast<double>(k + 1);
  }
  return hits > 0.0 ? sum / hits : 0.0;
}

/// Average precision when items are ordered by descending score.
inline double average_precision(std::span<const double> scores, std::span<const bool> relevant) {
  auto order = order_desc(scores);
  double hits = 0.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (!relevant[order[k]]) continue;
    hits += 1.0;
    sum += hits / static_cast<double>(k + 1);
  }
  return hits > 0.0 ? sum / hits : 0.0;
}

/// Portable 64-bit generator (SplitMix64); identical streams on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound), by rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Fisher-Yates shuffle driven by SplitMix64.
template <typename T>
void seeded_shuffle(std::vector<T>& v, std::uint64_t seed) {
  SplitMix64 rng(seed);
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

}  // namespace morphotrans
