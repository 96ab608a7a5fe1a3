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

#include <algorithm>
#include <random>
#include <vector>

#include <doctest.h>

#include "mclear/scarf.hpp"
#include "mclear/types.hpp"

namespace {

using namespace mclear;

// Independent check for the linear benchmark: enumerate per-type committed
// counts and dispatch by merit order (type-2 first, it is cheaper). Used to
// freeze the reference dispatch; shares nothing with the solver.
struct BruteResult {
  double cost = kInf;
  int n1 = 0, n2 = 0;
  std::vector<double> x;
};

BruteResult scarf_base_brute(double demand) {
  BruteResult best;
  for (int n1 = 0; n1 <= kScarfType1Count; ++n1) {
    for (int n2 = 0; n2 <= kScarfType2Count; ++n2) {
      const double cap = 16.0 * n1 + 7.0 * n2;
      if (cap < demand) continue;
      const double x2 = std::min(demand, 7.0 * n2);
      const double x1 = demand - x2;
      if (x1 > 16.0 * n1) continue;
      const double cost = 53.0 * n1 + 30.0 * n2 + 3.0 * x1 + 2.0 * x2;
      if (cost < best.cost) {
        best.cost = cost;
        best.n1 = n1;
        best.n2 = n2;
        best.x.assign(kScarfBidderCount, 0.0);
        double rem1 = x1;
        for (int i = 0; i < n1; ++i) {
          best.x[i] = std::min(16.0, rem1);
          rem1 -= best.x[i];
        }
        double rem2 = x2;
        for (int j = 0; j < n2; ++j) {
          best.x[kScarfType1Count + j] = std::min(7.0, rem2);
          rem2 -= best.x[kScarfType1Count + j];
        }
      }
    }
  }
  return best;
}

BidderSpec plant(double c, double d, double a, double g, double h, double b,
                 double r, double x0) {
  BidderSpec spec;
  spec.id = "p";
  spec.c = c;
  spec.d = d;
  spec.a = a;
  spec.g = g;
  spec.h = h;
  spec.b = b;
  spec.r = r;
  spec.x0 = x0;
  return spec;
}

TEST_CASE("feasible interval covers the paper constraint row") {
  // Scarf type-1 plant, committed: capacity interval.
  const auto open = feasible_interval(plant(3, 53, 1, -1, 16, 0, 0, 0), true);
  REQUIRE(open.has_value());
  CHECK(open->lo == 0.0);
  CHECK(open->hi == 16.0);

  // Closed type-2 plant is forced to zero.
  const auto closed = feasible_interval(plant(2, 30, 1, -1, 7, 0, 0, 0), false);
  REQUIRE(closed.has_value());
  CHECK(closed->lo == 0.0);
  CHECK(closed->hi == 0.0);

  // Half line from a must-run style constraint.
  const auto half = feasible_interval(plant(1, 0, 1, 1, 0, 5, 0, 0), false);
  REQUIRE(half.has_value());
  CHECK(half->lo == 5.0);
  CHECK(!half->bounded());

  // g = 0: membership depends on h z >= b only.
  CHECK(!feasible_interval(plant(1, 0, 1, 0, 2, 1, 0, 0), false).has_value());
  CHECK(feasible_interval(plant(1, 0, 1, 0, 2, 1, 0, 0), true).has_value());

  // g < 0 with positive rhs: empty.
  CHECK(!feasible_interval(plant(1, 0, 1, -1, 0, 3, 0, 0), true).has_value());
}

TEST_CASE("validate_instance flags the invariants") {
  MarketInstance inst = scarf_base(60.0);
  auto report = validate_instance(inst);
  CHECK(report.ok());
  CHECK(report.linear_mode_ids.size() == 15);  // whole instance is linear

  inst.bidders[3].a = 0.0;
  inst.bidders[7].r = -0.1;
  report = validate_instance(inst);
  CHECK(!report.ok());
  int errors = 0;
  for (const auto& issue : report.issues) {
    errors += issue.severity == Severity::kError;
  }
  CHECK(errors == 2);

  MarketInstance dup = scarf_base(10.0);
  dup.bidders[1].id = dup.bidders[0].id;
  CHECK(!validate_instance(dup).ok());
}

TEST_CASE("objective_value matches the benchmark bookkeeping") {
  // Eight type-2 plants at capacity serve a demand of 56 for 352.
  MarketInstance inst = scarf_base(56.0);
  Commitment z(15, 0);
  std::vector<double> x(15, 0.0);
  for (int j = 0; j < 8; ++j) {
    z[kScarfType1Count + j] = 1;
    x[kScarfType1Count + j] = 7.0;
  }
  CHECK(objective_value(inst, z, x) == doctest::Approx(352.0).epsilon(1e-12));

  // All-off: only the deviation terms survive.
  MarketInstance ramped = scarf_ramped(60.0, 0.5, 0.25, baseline_dispatch());
  Commitment off(15, 0);
  std::vector<double> zero(15, 0.0);
  double expect = 0.0;
  for (const auto& bidder : ramped.bidders) {
    expect += bidder.r * bidder.x0 * bidder.x0;
  }
  CHECK(objective_value(ramped, off, zero) ==
        doctest::Approx(expect).epsilon(1e-12));

  // The optimum of the ramped problem at D = 60 costs 389.50:
  // three type-1 full at 16, the reference type-2 at 7, one more at 5.
  Commitment zr(15, 0);
  std::vector<double> xr(15, 0.0);
  zr[0] = zr[1] = zr[2] = 1;
  xr[0] = xr[1] = xr[2] = 16.0;
  zr[5] = 1;
  xr[5] = 7.0;
  zr[6] = 1;
  xr[6] = 5.0;
  MarketInstance r01 = scarf_ramped(60.0, 0.1, 0.1, baseline_dispatch());
  CHECK(objective_value(r01, zr, xr) ==
        doctest::Approx(389.50).epsilon(1e-12));

  CHECK_THROWS_AS(objective_value(inst, Commitment(14, 0), x),
                  std::invalid_argument);
}

TEST_CASE("objective_value is invariant under permuting identical bidders") {
  MarketInstance inst = scarf_ramped(60.0, 0.1, 0.1, baseline_dispatch());
  Commitment z(15, 0);
  std::vector<double> x(15, 0.0);
  std::mt19937_64 rng(7);
  for (int k = 0; k < 15; ++k) {
    z[k] = rng() % 2;
    x[k] = static_cast<double>(rng() % 8);
  }
  const double before = objective_value(inst, z, x);
  // Bidders 6..14 are identical; swap two of them together with their x, z.
  std::swap(inst.bidders[6], inst.bidders[12]);
  std::swap(z[6], z[12]);
  std::swap(x[6], x[12]);
  CHECK(objective_value(inst, z, x) == doctest::Approx(before).epsilon(1e-15));
}

TEST_CASE("scarf generators produce the benchmark instances") {
  const MarketInstance base = scarf_base(60.0);
  CHECK(base.size() == 15);
  CHECK(base.b0 == 60.0);
  CHECK(base.bidders[0].c == 3.0);
  CHECK(base.bidders[0].h == 16.0);
  CHECK(base.bidders[14].c == 2.0);
  CHECK(base.bidders[14].h == 7.0);
  CHECK_THROWS_AS(scarf_base(-1.0), std::invalid_argument);

  const std::vector<double> x0 = baseline_dispatch();
  const MarketInstance ramped = scarf_ramped(58.0, 0.1, 0.3, x0);
  CHECK(ramped.bidders[0].r == 0.1);
  CHECK(ramped.bidders[0].x0 == 16.0);
  CHECK(ramped.bidders[5].r == 0.3);
  CHECK(ramped.bidders[5].x0 == 7.0);
  CHECK(ramped.bidders[6].x0 == 0.0);
  CHECK_THROWS_AS(scarf_ramped(58.0, 0.1, 0.3, std::vector<double>(14, 0.0)),
                  std::invalid_argument);
  std::vector<double> too_big(15, 0.0);
  too_big[6] = 7.5;  // beyond type-2 capacity
  CHECK_THROWS_AS(scarf_ramped(58.0, 0.1, 0.3, too_big),
                  std::invalid_argument);
}

TEST_CASE("baseline dispatch is the brute-force optimum at demand 55") {
  const BruteResult brute = scarf_base_brute(55.0);
  CHECK(brute.cost == doctest::Approx(347.0).epsilon(1e-12));
  CHECK(brute.n1 == 3);
  CHECK(brute.n2 == 1);

  const std::vector<double> x0 = baseline_dispatch();
  REQUIRE(x0.size() == 15);
  CHECK(x0 == brute.x);

  double total = 0.0;
  for (const double xi : x0) total += xi;
  CHECK(total == doctest::Approx(55.0).epsilon(1e-15));

  // Feasible for the base instance and fully saturated.
  const MarketInstance inst = scarf_base(55.0);
  Commitment z(15, 0);
  for (int k = 0; k < 15; ++k) z[k] = x0[k] > 0.0;
  for (int k = 0; k < 15; ++k) {
    const auto iv = feasible_interval(inst.bidders[k], z[k] != 0);
    REQUIRE(iv.has_value());
    CHECK(iv->contains(x0[k]));
    if (z[k]) CHECK(x0[k] == iv->hi);
  }
  CHECK(objective_value(inst, z, x0) == doctest::Approx(347.0).epsilon(1e-12));
}

}  // namespace
