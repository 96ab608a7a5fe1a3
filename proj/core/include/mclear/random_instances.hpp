// Copyright 2026 The mclear Authors
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

#ifndef MCLEAR_RANDOM_INSTANCES_HPP_
#define MCLEAR_RANDOM_INSTANCES_HPP_

#include <cstdint>
#include <random>

#include "mclear/types.hpp"

namespace mclear {

// Seeded fuzz-instance generator with a fixed contract so results are
// reproducible across platforms (raw mt19937_64 draws, no distribution
// classes). Parameter ranges: c in [0,10], d in [0,60], a = 1, g = -1,
// h in [1,20], b = 0, r in [0.01,2], x0 in [0,h]; b0 is drawn in
// [0.2, 0.8] * sum(h) so at least one commitment is feasible.
struct InstanceGenOptions {
  int min_bidders = 2;
  int max_bidders = 8;
  bool quadratic_only = true;  // false mixes in r = 0 bidders (1 in 4)
};

double uniform01(std::mt19937_64& rng);  // 53-bit mantissa draw in [0,1)

MarketInstance random_instance(std::mt19937_64& rng,
                               const InstanceGenOptions& opts = {});

}  // namespace mclear

#endif  // MCLEAR_RANDOM_INSTANCES_HPP_
