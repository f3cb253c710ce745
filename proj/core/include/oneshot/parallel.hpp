// Copyright 2026 The Oneshot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ONESHOT_PARALLEL_HPP_
#define ONESHOT_PARALLEL_HPP_

#include <cstdint>
#include <functional>

namespace oneshot {

// Worker count for internally parallel loops: ONESHOT_THREADS env var,
// clamped to hardware concurrency. Defaults to 1 (fully sequential).
int thread_budget();

// Splits [0, count) into contiguous chunks, runs `work(chunk_index, begin,
// end)` on up to thread_budget() threads. Callers own making the reduction
// across chunks deterministic.
void parallel_chunks(std::uint64_t count,
                     const std::function<void(int, std::uint64_t,
                                              std::uint64_t)>& work);

int num_chunks(std::uint64_t count);

}  // namespace oneshot

#endif  // ONESHOT_PARALLEL_HPP_
