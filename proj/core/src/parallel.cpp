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

#include "oneshot/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace oneshot {

int thread_budget() {
  const char* env = std::getenv("ONESHOT_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  int requested = 1;
  try {
    requested = std::stoi(env);
  } catch (...) {
    return 1;
  }
  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  return std::clamp(requested, 1, std::max(1, hw));
}

int num_chunks(std::uint64_t count) {
  const int budget = thread_budget();
  if (budget <= 1 || count < 2) return 1;
  return static_cast<int>(
      std::min<std::uint64_t>(count, static_cast<std::uint64_t>(budget)));
}

void parallel_chunks(std::uint64_t count,
                     const std::function<void(int, std::uint64_t,
                                              std::uint64_t)>& work) {
  const int chunks = num_chunks(count);
  if (chunks == 1) {
    work(0, 0, count);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(chunks);
  const std::uint64_t per = count / chunks;
  const std::uint64_t extra = count % chunks;
  std::uint64_t begin = 0;
  for (int c = 0; c < chunks; ++c) {
    const std::uint64_t end = begin + per + (c < static_cast<int>(extra));
    threads.emplace_back([&work, c, begin, end] { work(c, begin, end); });
    begin = end;
  }
  for (std::thread& t : threads) t.join();
}

}  // namespace oneshot
