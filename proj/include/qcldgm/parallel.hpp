/*
   Copyright 2026 The qcldgm authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace qcldgm {

inline unsigned effective_workers(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

/// Splits [0, total) into one contiguous range per worker and runs
/// fn(worker_id, begin, end) on each. Results must be merged by the
/// caller in worker order so output stays deterministic for a fixed
/// (seed, worker count) pair. Exceptions are rethrown on the caller.
template <typename Fn>
void parallel_ranges(std::uint64_t total, unsigned workers, Fn&& fn) {
    workers = effective_workers(workers);
    if (workers <= 1 || total <= 1) {
        fn(0u, std::uint64_t{0}, total);
        return;
    }
    if (workers > total) workers = static_cast<unsigned>(total);

    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::uint64_t chunk = total / workers, extra = total % workers;
    std::uint64_t begin = 0;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
        pool.emplace_back([&, w, begin, end] {
            try {
                fn(w, begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
        begin = end;
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace qcldgm
