// Copyright 2026 The Ambiset Authors
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
#include <exception>
#include <vector>

namespace ambiset {

/// Execution policy for the batch kernels. `kSerial` is the reference path;
/// `kParallel` distributes independent iterations over OpenMP threads when the
/// library is built with OpenMP and falls back to the serial loop otherwise.
/// Both produce bit-identical results: each iteration writes only its own
/// output slot and reductions happen afterwards in index order.
enum class Exec { kSerial, kParallel };

bool openmp_enabled() noexcept;
int max_threads() noexcept;

template <typename Fn>
void parallel_for(std::size_t count, Exec exec, Fn&& fn) {
  if (exec == Exec::kSerial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  // Exceptions cannot cross an OpenMP region; park them and rethrow the one
  // from the lowest index so failures are reported deterministically.
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<long long>(count);
#if defined(AMBISET_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
  for (long long i = 0; i < n; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace ambiset
