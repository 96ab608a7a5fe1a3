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

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "mclear/random_instances.hpp"
#include "mclear/scarf.hpp"
#include "mclear/search.hpp"

namespace {

using namespace mclear;

int count_committed(const Commitment& z, int begin, int end) {
  int total = 0;
  for (int k = begin; k < end; ++k) total += z[static_cast<std::size_t>(k)];
  return total;
}

TEST_CASE("enumerate_solve matches the linear benchmark at demand 60") {
  const SearchResult res = enumerate_solve(scarf_base(60.0));
  REQUIRE(res.feasible());
  CHECK(res.solution.objective == doctest::Approx(378.0).epsilon(1e-12));
  CHECK(count_committed(res.z_star, 0, 5) == 2);
  CHECK(count_committed(res.z_star, 5, 15) == 4);
  // Lowest-index members represent each class.
  CHECK(res.z_star[0] == 1);
  CHECK(res.z_star[1] == 1);
  CHECK(res.z_star[2] == 0);
  CHECK(res.z_star[5] == 1);
  CHECK(res.optimality_gap == 0.0);
  // Two classes of 5 and 10: six times eleven patterns.
  CHECK(res.nodes_explored == 66);

  // Zero demand: everything stays off at zero cost.
  const SearchResult idle = enumerate_solve(scarf_base(0.0));
  REQUIRE(idle.feasible());
  CHECK(idle.solution.objective == 0.0);
  CHECK(idle.z_star == Commitment(15, 0));
}

TEST_CASE("enumerate_solve matches the ramped benchmark rows") {
  const std::vector<double> x0 = baseline_dispatch();

  const SearchResult d70 = enumerate_solve(scarf_ramped(70.0, 0.1, 0.1, x0));
  REQUIRE(d70.feasible());
  CHECK(d70.solution.objective == doctest::Approx(467.50).epsilon(1e-9));
  CHECK(count_committed(d70.z_star, 0, 5) == 4);
  CHECK(count_committed(d70.z_star, 5, 15) == 1);

  // At the reference demand the reference dispatch stays optimal whatever
  // the ramping costs.
  for (const double r : {0.3, 1.7}) {
    const SearchResult d55 = enumerate_solve(scarf_ramped(55.0, r, r, x0));
    REQUIRE(d55.feasible());
    CHECK(d55.solution.objective == doctest::Approx(347.0).epsilon(1e-12));
    CHECK(d55.z_star == Commitment{1, 1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0});
  }
}

TEST_CASE("enumerate_solve guards the reduced pattern count") {
  MarketInstance inst;
  inst.b0 = 5.0;
  for (int k = 0; k < 21; ++k) {
    BidderSpec b;
    b.id = "b" + std::to_string(k);
    b.c = 1.0 + k;  // all distinct: 2^21 patterns
    b.a = 1.0;
    b.g = -1.0;
    b.h = 4.0;
    b.r = 0.5;
    inst.bidders.push_back(b);
  }
  CHECK_THROWS_AS(enumerate_solve(inst), std::invalid_argument);
}

TEST_CASE("enumerate_solve reports global infeasibility") {
  MarketInstance inst = scarf_base(500.0);  // beyond total capacity
  const SearchResult res = enumerate_solve(inst);
  CHECK(!res.feasible());
}

TEST_CASE("lagrangian bound attains the primal at a fixed optimum") {
  const MarketInstance inst = scarf_ramped(60.0, 0.1, 0.1, baseline_dispatch());
  const SearchResult res = enumerate_solve(inst);
  REQUIRE(res.feasible());
  PartialAssignment fixed(inst.size());
  for (std::size_t k = 0; k < inst.size(); ++k) {
    fixed[k] = res.z_star[k] ? Fix::kOne : Fix::kZero;
  }
  CHECK(lagrangian_bound(inst, fixed, res.p0) ==
        doctest::Approx(res.solution.objective).epsilon(1e-10));

  // Root-node bound never exceeds the optimum (weak duality), here probed
  // at a few prices.
  const PartialAssignment root(inst.size(), Fix::kFree);
  for (const double p0 : {0.0, 2.0, 3.0, 5.0}) {
    CHECK(lagrangian_bound(inst, root, p0) <=
          res.solution.objective + 1e-9);
  }
}

TEST_CASE("lagrangian bound is zero for the all-off friendly case") {
  MarketInstance inst;
  inst.b0 = 10.0;
  for (int k = 0; k < 4; ++k) {
    BidderSpec b;
    b.id = "b" + std::to_string(k);
    b.c = 1.0 + k;
    b.d = 3.0;
    b.a = 1.0;
    b.g = -1.0;
    b.h = 6.0;
    b.r = 0.25;
    inst.bidders.push_back(b);
  }
  const PartialAssignment root(inst.size(), Fix::kFree);
  CHECK(lagrangian_bound(inst, root, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("lagrangian bound under-estimates every completion") {
  std::mt19937_64 rng(424242);
  InstanceGenOptions gen;
  gen.min_bidders = 3;
  gen.max_bidders = 6;
  for (int trial = 0; trial < 25; ++trial) {
    const MarketInstance inst = random_instance(rng, gen);
    const std::size_t n = inst.size();
    PartialAssignment partial(n);
    for (auto& f : partial) {
      const auto roll = rng() % 3;
      f = roll == 0 ? Fix::kZero : (roll == 1 ? Fix::kOne : Fix::kFree);
    }
    const double p0 = -5.0 + 40.0 * uniform01(rng);
    const double bound = lagrangian_bound(inst, partial, p0);
    if (bound == kInf) continue;  // a fixed bidder is infeasible

    // Exhaustive completion minimum.
    double best = kInf;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      Commitment z(n, 0);
      bool respects = true;
      for (std::size_t k = 0; k < n; ++k) {
        z[k] = (mask >> k) & 1u;
        if (partial[k] != Fix::kFree &&
            static_cast<int>(partial[k]) != static_cast<int>(z[k])) {
          respects = false;
          break;
        }
      }
      if (!respects) continue;
      const FixedSolveResult fixed = solve_fixed(inst, z);
      if (fixed.feasible()) best = std::min(best, fixed.solution.objective);
    }
    if (best < kInf) {
      CHECK(bound <= best + 1e-7 * (1.0 + std::abs(best)));
    }
  }
}

TEST_CASE("branch and bound reproduces the mixed-ramp benchmark at 64") {
  SearchOptions opts;
  opts.mode = SearchMode::kBranchAndBound;
  const SearchResult res =
      branch_and_bound(scarf_ramped(64.0, 0.1, 0.3, baseline_dispatch()), opts);
  REQUIRE(res.feasible());
  CHECK(res.solution.objective == doctest::Approx(435.10).epsilon(1e-9));
  CHECK(count_committed(res.z_star, 0, 5) == 4);
  CHECK(count_committed(res.z_star, 5, 15) == 1);
  CHECK(res.optimality_gap == 0.0);
}

TEST_CASE("branch and bound agrees with enumeration on random instances") {
  std::mt19937_64 rng(8675309);
  InstanceGenOptions gen;
  SearchOptions opts;
  for (int trial = 0; trial < 40; ++trial) {
    const MarketInstance inst = random_instance(rng, gen);
    const SearchResult ex = enumerate_solve(inst, opts);
    const SearchResult bb = branch_and_bound(inst, opts);
    REQUIRE(ex.feasible() == bb.feasible());
    if (!ex.feasible()) continue;
    CHECK(std::abs(ex.solution.objective - bb.solution.objective) <=
          1e-9 * (1.0 + std::abs(ex.solution.objective)));
    CHECK(bb.z_star == ex.z_star);
  }
}

TEST_CASE("branch and bound explores fewer nodes than full enumeration") {
  const MarketInstance inst = scarf_ramped(60.0, 0.1, 0.1, baseline_dispatch());
  const SearchResult res = branch_and_bound(inst);
  REQUIRE(res.feasible());
  CHECK(res.solution.objective == doctest::Approx(389.50).epsilon(1e-9));
  CHECK(res.nodes_explored < (1u << 15));
}

TEST_CASE("node limit returns the incumbent with a positive gap") {
  SearchOptions opts;
  opts.node_limit = 3;
  const MarketInstance inst = scarf_ramped(60.0, 0.1, 0.1, baseline_dispatch());
  const SearchResult res = branch_and_bound(inst, opts);
  // With so few nodes the search cannot finish; if an incumbent exists the
  // gap must be reported as positive.
  if (res.feasible()) CHECK(res.optimality_gap > 0.0);
}

TEST_CASE("single-bidder trees evaluate leaves through solve_fixed") {
  MarketInstance inst;
  inst.b0 = 4.0;
  BidderSpec b;
  b.id = "solo";
  b.c = 2.0;
  b.a = 1.0;
  b.g = -1.0;
  b.h = 10.0;
  b.r = 0.5;
  b.x0 = 1.0;
  inst.bidders.push_back(b);
  const SearchResult res = branch_and_bound(inst);
  REQUIRE(res.feasible());
  const FixedSolveResult direct = solve_fixed(inst, Commitment{1});
  CHECK(res.solution.objective ==
        doctest::Approx(direct.solution.objective).epsilon(1e-12));
  CHECK(res.p0 == doctest::Approx(direct.p0).epsilon(1e-12));
}

TEST_CASE("ramped optimum grows with demand above the reference level") {
  const std::vector<double> x0 = baseline_dispatch();
  for (const auto& [r1, r2] : {std::pair{0.1, 0.1}, {0.1, 0.3}, {1.0, 1.0}}) {
    double prev = 347.0;  // the cost at the reference demand itself
    for (double demand = 56.0; demand <= 70.0; demand += 2.0) {
      const SearchResult res = enumerate_solve(scarf_ramped(demand, r1, r2, x0));
      REQUIRE(res.feasible());
      CHECK(res.solution.objective >= prev - 1e-9);
      prev = res.solution.objective;
    }
  }
}

TEST_CASE("commitment preference is deterministic") {
  const Commitment a{1, 0, 1};
  const Commitment b{0, 1, 1};
  CHECK(commitment_preferred(1.0, a, 2.0, b));
  CHECK(!commitment_preferred(2.0, a, 1.0, b));
  // Ties break toward committing the lowest-indexed bidders.
  CHECK(commitment_preferred(1.0, a, 1.0, b));
  CHECK(!commitment_preferred(1.0, b, 1.0, a));
}

}  // namespace
