// Copyright 2026 The quasineg Authors
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

#include <functional>

namespace quasineg {

// Process-wide cap on worker threads used by parallel_for. Default 1.
void set_worker_threads(int n);
int worker_threads();

// Calls fn(i) for i in [0, count). Work is split into contiguous ranges per
// worker; callers write results by index, so output order never depends on
// scheduling. The first exception thrown by any worker is rethrown.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace quasineg
