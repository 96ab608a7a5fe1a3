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

#include "mclear/random_instances.hpp"

#include <string>

namespace mclear {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

}  // namespace

MarketInstance random_instance(std::mt19937_64& rng,
                               const InstanceGenOptions& opts) {
  const int span = opts.max_bidders - opts.min_bidders + 1;
  const int n =
      opts.min_bidders + static_cast<int>(rng() % static_cast<std::uint64_t>(span));

  MarketInstance inst;
  inst.bidders.reserve(static_cast<std::size_t>(n));
  double cap_sum = 0.0;
  for (int k = 0; k < n; ++k) {
    BidderSpec b;
    b.id = "fuzz#" + std::to_string(k + 1);
    b.c = uniform(rng, 0.0, 10.0);
    b.d = uniform(rng, 0.0, 60.0);
    b.a = 1.0;
    b.g = -1.0;
    b.h = uniform(rng, 1.0, 20.0);
    b.b = 0.0;
    b.r = uniform(rng, 0.01, 2.0);
    if (!opts.quadratic_only && rng() % 4 == 0) b.r = 0.0;
    b.x0 = uniform(rng, 0.0, b.h);
    cap_sum += b.h;
    inst.bidders.push_back(std::move(b));
  }
  inst.b0 = uniform(rng, 0.2, 0.8) * cap_sum;
  return inst;
}

}  // namespace mclear
