/**************************************************************************
 * parallel.hpp
 *
 * Copyright 2026 The kasami-designs Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace kasami {

/**
 * Splits [0, count) into `threads` contiguous chunks, runs `work(local,
 * begin, end)` on each with its own `Local` accumulator, then folds the
 * partials in chunk order with `merge(total, part)`. Callers supply an
 * associative, commutative merge, so the result does not depend on the
 * thread count.
 */
template <typename Local, typename Work, typename Merge>
Local parallel_reduce(std::uint64_t count, unsigned threads, const Local& init, Work&& work, Merge&& merge) {
    threads = std::max(1u, threads);
    if (threads == 1 || count < 2) {
        Local local = init;
        work(local, std::uint64_t{0}, count);
        return local;
    }
    const std::uint64_t chunks = std::min<std::uint64_t>(threads, count);
    std::vector<Local> partial(chunks, init);
    std::vector<std::exception_ptr> errors(chunks);
    std::vector<std::thread> pool;
    pool.reserve(chunks);
    for (std::uint64_t t = 0; t < chunks; ++t) {
        const std::uint64_t begin = count * t / chunks;
        const std::uint64_t end = count * (t + 1) / chunks;
        pool.emplace_back([&, t, begin, end] {
            try {
                work(partial[t], begin, end);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    Local total = init;
    for (auto& part : partial) merge(total, part);
    return total;
}

} // namespace kasami
