/*
   Copyright 2026 The formiso Authors

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
#ifndef FORMISO_RNG_HPP
#define FORMISO_RNG_HPP

#include <cstdint>
#include <limits>

#include "formiso/gfq.hpp"

namespace formiso {

/// Counter-based generator: output k of stream (seed, id) is a pure function of
/// (seed, id, k), so sample i of an experiment can be regenerated on any worker
/// from `Rng(seed).substream(i)` without coordination.
class Rng {
   public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0) noexcept : key_(mix(seed ^ 0x6a09e667f3bcc909ULL)) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

    /// Independent stream keyed by (this stream's key, id); counter restarts at 0.
    Rng substream(std::uint64_t id) const noexcept {
        Rng r;
        r.key_ = mix(key_ ^ mix(id + 0xbb67ae8584caa73bULL));
        return r;
    }

    /// Uniform integer in [0, bound), bound > 0, by rejection.
    std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t limit = max() - max() % bound;
        std::uint64_t x;
        do x = (*this)();
        while (x >= limit);
        return x % bound;
    }

    Scalar element(const Field& F) noexcept { return static_cast<Scalar>(below(F.q())); }
    Scalar nonzero(const Field& F) noexcept { return static_cast<Scalar>(1 + below(F.q() - 1)); }

   private:
    static std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

}  // namespace formiso

#endif
