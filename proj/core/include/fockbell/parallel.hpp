// Copyright 2026 The fockbell Authors
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

#include <cstddef>
#include <functional>

namespace fockbell {

/// Environment variable holding the worker thread count.
inline constexpr const char* kThreadsEnv = "FOCKBELL_THREADS";

/// Threads to use: `requested` if positive, else $FOCKBELL_THREADS, else
/// the hardware concurrency (at least 1).
int thread_count(int requested = 0);

/// Runs body(0..n-1) on up to `threads` workers.  Work items must be
/// independent; the first exception thrown is rethrown after all workers
/// stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  int threads = 0);

}  // namespace fockbell
