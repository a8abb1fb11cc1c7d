// Copyright 2026 The weldtree Authors
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

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace weldtree {

// Worker count from WELDTREE_WORKERS, else the hardware concurrency.
inline int default_workers() {
    if (const char *env = std::getenv("WELDTREE_WORKERS")) {
        int w = std::atoi(env);
        if (w > 0) {
            return w;
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// Calls f(i) for every i in [0, count) on up to `workers` threads. Each index
// runs exactly once; callers write results into per-index slots so the
// merged output does not depend on the worker count. The first exception
// thrown by any worker is rethrown after all workers finish.
template <typename F>
void parallel_for(size_t count, int workers, F f) {
    workers = std::max(1, std::min<int>(workers, static_cast<int>(std::min<size_t>(count, 1 << 16))));
    if (workers <= 1) {
        for (size_t i = 0; i < count; i++) {
            f(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    std::mutex mu;
    std::exception_ptr error;
    for (int w = 0; w < workers; w++) {
        pool.emplace_back([&, w] {
            try {
                for (size_t i = static_cast<size_t>(w); i < count; i += static_cast<size_t>(workers)) {
                    f(i);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!error) {
                    error = std::current_exception();
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace weldtree
