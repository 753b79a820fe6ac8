// Copyright 2026 The EMN Linker Authors.
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

#ifndef EMN_RANKER_INL_H_
#define EMN_RANKER_INL_H_

#include <algorithm>
#include <cmath>
#include <numeric>

namespace emn {

template <typename TieLess>
std::vector<size_t> OrderByScore(std::span<const double> scores,
                                 TieLess tie_less) {
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return scores[a] > scores[b];
  });
  size_t begin = 0;
  while (begin < order.size()) {
    size_t end = begin + 1;
    while (end < order.size()) {
      double hi = scores[order[end - 1]];
      double lo = scores[order[end]];
      double scale = std::max(std::abs(hi), std::abs(lo));
      if (hi - lo > kScoreTieTolerance * scale) break;
      ++end;
    }
    std::sort(order.begin() + begin, order.begin() + end, tie_less);
    begin = end;
  }
  return order;
}

}  // namespace emn

#endif  // EMN_RANKER_INL_H_
