// Copyright 2026 The divrepair Authors
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

#ifndef DIVREPAIR_COMMON_PARALLEL_HPP_
#define DIVREPAIR_COMMON_PARALLEL_HPP_

#include <cstddef>
#include <exception>
#include <mutex>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace divrepair {

/// Worker count for the data-parallel kernels. 1 selects the serial path.
struct Jobs {
  int count = 1;
};

/// Runs body(i) for i in [0, n). Iterations must write disjoint outputs; the
/// first exception thrown by any iteration is rethrown on the caller.
template <typename Body>
void parallel_for(std::size_t n, Jobs jobs, Body&& body) {
  if (jobs.count <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const long long count = static_cast<long long>(n);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs.count)
#endif
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace divrepair

#endif  // DIVREPAIR_COMMON_PARALLEL_HPP_
