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

#include "ambiset/parallel.hpp"

#if defined(AMBISET_HAVE_OPENMP)
#include <omp.h>
#endif

namespace ambiset {

bool openmp_enabled() noexcept {
#if defined(AMBISET_HAVE_OPENMP)
  return true;
#else
  return false;
#endif
}

int max_threads() noexcept {
#if defined(AMBISET_HAVE_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace ambiset
