// Copyright 2026 The gapscope Authors
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

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace gapscope {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/**
 * Counter-based random stream.
 *
 * A stream is identified by a key derived from the master seed and the
 * indices of the task that owns it, so the numbers a task sees do not
 * depend on which worker runs it or in which order. Satisfies
 * UniformRandomBitGenerator.
 */
class RandomStream {
  public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t key) noexcept : state_(key) {}

    /// Stream for (seed, i0, i1, ...). Distinct index tuples give
    /// statistically independent streams.
    static RandomStream derive(std::uint64_t seed,
                               std::initializer_list<std::uint64_t> indices) noexcept {
        std::uint64_t key = mix64(seed + 0x9e3779b97f4a7c15ULL);
        for (auto i : indices) {
            key = mix64(key ^ mix64(i + 0x632be59bd9b4e019ULL));
        }
        return RandomStream(key);
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) noexcept {
        // Lemire's multiply-shift; the bias is < n / 2^64.
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>((*this)()) * n) >> 64);
    }

  private:
    std::uint64_t state_;
};

} // namespace gapscope
