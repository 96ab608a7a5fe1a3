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

#ifndef MCLEAR_SCARF_HPP_
#define MCLEAR_SCARF_HPP_

#include <span>
#include <vector>

#include "mclear/types.hpp"

namespace mclear {

// Scarf's two-technology benchmark market. Five "smokestack" plants
// (capacity 16, start-up 53, marginal 3) and ten "high tech" plants
// (capacity 7, start-up 30, marginal 2) serve a demand D.
inline constexpr int kScarfType1Count = 5;
inline constexpr int kScarfType2Count = 10;
inline constexpr int kScarfBidderCount = kScarfType1Count + kScarfType2Count;
inline constexpr double kScarfType1Capacity = 16.0;
inline constexpr double kScarfType2Capacity = 7.0;

// The linear benchmark: all r = 0, all x0 = 0, b0 = D. Requires D >= 0.
MarketInstance scarf_base(double demand);

// The ramped variant: type-1 plants get deviation cost r1, type-2 plants r2,
// measured from the reference outputs x0 (15 entries, within capacities).
MarketInstance scarf_ramped(double demand, double r1, double r2,
                            std::span<const double> x0);

// The reference dispatch: the optimal D = 55 dispatch of scarf_base.
// Three type-1 plants at capacity plus one type-2 plant at capacity,
// lowest indices first: (16,16,16,0,0 | 7,0,...,0). Total cost 347.
std::vector<double> baseline_dispatch();

}  // namespace mclear

#endif  // MCLEAR_SCARF_HPP_
