/**************************************************************************
 * rng.hpp
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

#include <cstdint>
#include <random>

namespace kasami {

/// 64-bit LCG, x' = 6364136223846793005 x + 1442695040888963407 mod 2^64.
using Lcg64 = std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL, 1442695040888963407ULL, 0ULL>;

/// Draw in [0, bound) from the high 32 bits of the next state.
inline std::uint64_t draw_below(Lcg64& rng, std::uint64_t bound) { return (rng() >> 32) % bound; }

} // namespace kasami
