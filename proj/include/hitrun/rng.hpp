// Copyright (c) 2026 the hitrun authors
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

#include <cmath>
#include <cstdint>

namespace hitrun {

/// Deterministic pseudo-random stream (xoshiro256++ seeded through splitmix64).
///
/// Streams are keyed: the key fully determines the draw sequence, and
/// substream(i) derives an independent child stream from (key, i) alone,
/// so a master seed fans out reproducibly over chains, repetitions and
/// parallel workers regardless of execution order.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t key) : key_(key) {
        std::uint64_t x = key;
        for (auto& w : state_) w = splitmix64(x);
    }

    std::uint64_t key() const { return key_; }

    /// Child stream determined by (key, index) only; does not advance *this.
    RandomStream substream(std::uint64_t index) const {
        std::uint64_t x = key_ + 0x9E3779B97F4A7C15ull * (index + 1);
        std::uint64_t h = splitmix64(x);
        std::uint64_t y = h ^ 0xD1B54A32D192ED03ull;
        return RandomStream(splitmix64(y));
    }

    /// Fresh stream keyed from the next draw; advances *this.
    RandomStream split() {
        std::uint64_t x = next_u64();
        return RandomStream(splitmix64(x));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform on the open interval (0, 1); never returns an exact 0 or 1.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform on [lo, hi].
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller (uncached; two uniforms per draw).
    double normal() {
        const double u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t key_;
    std::uint64_t state_[4];
};

} // namespace hitrun
