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

#include "mclear/scarf.hpp"

#include <stdexcept>
#include <string>

namespace mclear {

namespace {

BidderSpec scarf_plant(int type, int index, double r, double x0) {
  BidderSpec b;
  b.id = (type == 1 ? "smokestack#" : "hightech#") + std::to_string(index);
  b.c = type == 1 ? 3.0 : 2.0;
  b.d = type == 1 ? 53.0 : 30.0;
  b.a = 1.0;
  // Capacity constraint x - cap * z <= 0, stored as g x + h z >= b.
  b.g = -1.0;
  b.h = type == 1 ? kScarfType1Capacity : kScarfType2Capacity;
  b.b = 0.0;
  b.r = r;
  b.x0 = x0;
  return b;
}

}  // namespace

MarketInstance scarf_base(double demand) {
  if (demand < 0.0) throw std::invalid_argument("scarf_base: demand < 0");
  MarketInstance inst;
  inst.b0 = demand;
  inst.bidders.reserve(kScarfBidderCount);
  for (int i = 1; i <= kScarfType1Count; ++i) {
    inst.bidders.push_back(scarf_plant(1, i, 0.0, 0.0));
  }
  for (int j = 1; j <= kScarfType2Count; ++j) {
    inst.bidders.push_back(scarf_plant(2, j, 0.0, 0.0));
  }
  return inst;
}

MarketInstance scarf_ramped(double demand, double r1, double r2,
                            std::span<const double> x0) {
  if (x0.size() != kScarfBidderCount) {
    throw std::invalid_argument("scarf_ramped: x0 must have 15 entries");
  }
  for (int k = 0; k < kScarfBidderCount; ++k) {
    const double cap =
        k < kScarfType1Count ? kScarfType1Capacity : kScarfType2Capacity;
    if (x0[k] < 0.0 || x0[k] > cap) {
      throw std::invalid_argument("scarf_ramped: x0 outside plant capacity");
    }
  }
  MarketInstance inst = scarf_base(demand);
  for (int k = 0; k < kScarfBidderCount; ++k) {
    inst.bidders[k].r = k < kScarfType1Count ? r1 : r2;
    inst.bidders[k].x0 = x0[k];
  }
  return inst;
}

std::vector<double> baseline_dispatch() {
  std::vector<double> x(kScarfBidderCount, 0.0);
  x[0] = x[1] = x[2] = kScarfType1Capacity;
  x[kScarfType1Count] = kScarfType2Capacity;
  return x;
}

}  // namespace mclear
