// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

namespace kvn {

// Worker count: KVNLAB_THREADS if set (>= 1), else hardware concurrency.
int thread_count();
// Runs f(i) for i in [0, n) over contiguous blocks; f must only write data owned by index i.
void parallel_for(int n, const std::function<void(int)>& f);

}  // namespace kvn
