// Copyright 2026 The eqk Authors
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

#ifndef EQK_PARALLEL_H
#define EQK_PARALLEL_H

#include <cstddef>
#include <functional>

namespace eqk {

/// Worker count used by parallel_for. Defaults to the hardware concurrency.
void set_num_threads(int threads);
int num_threads();

/// Calls `body(i)` for every i in [0, n). Indices are split into contiguous
/// blocks, one per worker; results must be written to per-index slots so the
/// outcome does not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body);

}  // namespace eqk

#endif
