// SPDX-License-Identifier: Apache-2.0
//
// dfdsim: system-level simulator for distributed FD-MIMO downlink networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef dfdsim_rng_H
#define dfdsim_rng_H

#include <cstdint>
#include <random>

namespace dfdsim
{

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Seedable uniform random stream with fully specified output. All randomness
// in the simulator flows through caller-owned streams of this type, so results
// are bit-reproducible for a given seed regardless of execution order.
class RandomStream
{
  public:
    explicit RandomStream(std::uint64_t seed) : eng_(seed) {}

    // Uniform double in [0, 1), 53-bit resolution
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t bits() { return eng_(); }

  private:
    std::mt19937_64 eng_;
};

enum class StreamPurpose : std::uint64_t
{
    antenna_placement = 1,
    ue_placement = 2,
};

// Derives statistically independent substreams from (master seed, drop index,
// purpose, entity id). Streams for a given key are identical no matter which
// worker thread requests them and no matter how many other streams exist,
// which is what makes parallel drop execution reproducible.
struct StreamFactory
{
    std::uint64_t master_seed = 0;
    std::uint64_t drop = 0;

    RandomStream make(StreamPurpose purpose, std::uint64_t id) const
    {
        std::uint64_t h = mix64(master_seed ^ 0x6A09E667F3BCC908ULL);
        h = mix64(h ^ drop);
        h = mix64(h ^ static_cast<std::uint64_t>(purpose));
        h = mix64(h ^ id);
        return RandomStream(h);
    }
};

} // namespace dfdsim

#endif
