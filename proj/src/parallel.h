// Copyright 2026 The stfidf Authors
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

#ifndef STFIDF_SRC_PARALLEL_H_
#define STFIDF_SRC_PARALLEL_H_

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace stfidf::internal {

// Calls fn(i) for every i in [0, n), striding items across up to `threads`
// workers. Callers write results into pre-sized slots, so the outcome does
// not depend on scheduling.
template <typename Fn>
void ParallelFor(size_t n, unsigned threads, Fn&& fn) {
  const size_t workers = std::clamp<size_t>(threads, 1, std::max<size_t>(n, 1));
  if (workers == 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&fn, n, w, workers] {
      for (size_t i = w; i < n; i += workers) fn(i);
    });
  }
}

}  // namespace stfidf::internal

#endif  // STFIDF_SRC_PARALLEL_H_
