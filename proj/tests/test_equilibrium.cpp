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

#include "mclear/equilibrium.hpp"
#include "mclear/random_instances.hpp"
#include "mclear/scarf.hpp"
#include "mclear/search.hpp"

namespace {

using namespace mclear;

TEST_CASE("solve_individual: the worked type-2 example at prices (12, 30)") {
  BidderSpec b;
  b.id = "hightech";
  b.c = 2.0;
  b.d = 30.0;
  b.a = 1.0;
  b.g = -1.0;
  b.h = 7.0;
  b.r = 1.0;
  b.x0 = 0.0;
  const IndividualSolution sol = solve_individual(b, 12.0, 30.0);
  REQUIRE(sol.feasible);
  CHECK(sol.committed);
  CHECK(sol.x == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(sol.value == doctest::Approx(-25.0).epsilon(1e-12));
}

TEST_CASE("solve_individual: strongly negative commitment price closes") {
  BidderSpec b;
  b.id = "b";
  b.c = 2.0;
  b.d = 30.0;
  b.a = 1.0;
  b.g = -1.0;
  b.h = 7.0;
  b.r = 0.5;
  const IndividualSolution sol = solve_individual(b, 3.0, -1000.0);
  REQUIRE(sol.feasible);
  CHECK(!sol.committed);
  CHECK(sol.x == 0.0);
}

TEST_CASE("solve_individual: indifference ties follow the preference") {
  BidderSpec b;
  b.id = "b";
  b.c = 4.0;
  b.d = 11.0;
  b.a = 1.0;
  b.g = -1.0;
  b.h = 9.0;
  b.r = 0.0;
  // t0 = c/a and tk = d: both branches are worth exactly zero.
  CHECK(!solve_individual(b, 4.0, 11.0).committed);
  CHECK(solve_individual(b, 4.0, 11.0, true).committed);
  CHECK(!solve_individual(b, 4.0, 11.0, false).committed);
}

TEST_CASE("contracts and payments at the ramped demand-60 solution") {
  const MarketInstance inst = scarf_ramped(60.0, 0.1, 0.1, baseline_dispatch());
  const SearchResult res = enumerate_solve(inst);
  REQUIRE(res.feasible());
  const DualCertificate cert =
      recover_duals(inst, res.z_star, res.solution, res.p0);
  const PriceSystem prices = prices_from_certificate(cert);
  const auto contracts =
      build_contracts(inst, res.z_star, res.solution.x, prices);

  // Reference type-2 plant: payment 3 * 7 + 23 = 44 = its total cost.
  CHECK(contracts[5].payment == doctest::Approx(44.0).epsilon(1e-9));
  // Partial type-2 plant: payment 3 * 5 + 30 = 45, cost 42.5, profit 2.5.
  CHECK(contracts[6].payment == doctest::Approx(45.0).epsilon(1e-9));
  const double partial_cost = 2.0 * 5.0 + 30.0 + 0.1 * 25.0;
  CHECK(contracts[6].payment - partial_cost ==
        doctest::Approx(2.5).epsilon(1e-9));
  // Closed plants receive nothing.
  CHECK(contracts[7].payment == doctest::Approx(0.0).epsilon(1e-12));

  // Accounting identity: payments sum to p0 b0 + sum_k p_k z_k.
  double total = 0.0, expected = prices.t0 * inst.b0;
  for (std::size_t k = 0; k < inst.size(); ++k) {
    total += contracts[k].payment;
    if (res.z_star[k]) expected += prices.t[k];
  }
  CHECK(total == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("strong duality holds at the table cases and detects tampering") {
  const MarketInstance inst = scarf_ramped(60.0, 0.1, 0.1, baseline_dispatch());
  const SearchResult res = enumerate_solve(inst);
  REQUIRE(res.feasible());
  DualCertificate cert = recover_duals(inst, res.z_star, res.solution, res.p0);

  const DualityGapReport ok =
      check_strong_duality(res.solution.objective, cert, false);
  CHECK(ok.pass);
  CHECK(ok.primal == doctest::Approx(389.5).epsilon(1e-9));
  CHECK(ok.dual == doctest::Approx(389.5).epsilon(1e-9));

  // Perturbing p0 shifts the dual objective through b0 * p0.
  cert.dual_objective += 0.1 * inst.b0;
  const DualityGapReport bad =
      check_strong_duality(res.solution.objective, cert, false);
  CHECK(!bad.pass);
  CHECK(bad.relative_gap > 1e-3);
}

TEST_CASE("verify_equilibrium certifies the solver's own prices") {
  const std::vector<double> x0 = baseline_dispatch();
  for (const auto& [r1, r2] : {std::pair{0.1, 0.1}, {0.1, 0.3}, {1.0, 1.0}}) {
    for (double demand = 56.0; demand <= 70.0; demand += 2.0) {
      const MarketInstance inst = scarf_ramped(demand, r1, r2, x0);
      const SearchResult res = enumerate_solve(inst);
      REQUIRE(res.feasible());
      const DualCertificate cert =
          recover_duals(inst, res.z_star, res.solution, res.p0);
      const EquilibriumReport report = verify_equilibrium(
          inst, res.z_star, res.solution.x, prices_from_certificate(cert));
      CHECK(report.pass);
      CHECK(report.max_uplift <= 1e-8);
    }
  }
}

TEST_CASE("the published uniform prices certify the linear allocations") {
  // Commodity price 3, type-1 start-up 53, type-2 start-up 23 support every
  // optimal allocation of the linear benchmark.
  for (double demand = 56.0; demand <= 70.0; demand += 2.0) {
    const MarketInstance inst = scarf_base(demand);
    const SearchResult res = enumerate_solve(inst);
    REQUIRE(res.feasible());
    PriceSystem published;
    published.t0 = 3.0;
    published.t.assign(15, 23.0);
    for (int k = 0; k < 5; ++k) published.t[static_cast<std::size_t>(k)] = 53.0;
    const EquilibriumReport report =
        verify_equilibrium(inst, res.z_star, res.solution.x, published);
    CHECK(report.pass);
    CHECK(report.max_uplift <= 1e-8);
  }
}

TEST_CASE("a wrong closed-plant price breaks the equilibrium by 2.5") {
  const MarketInstance inst = scarf_ramped(60.0, 0.1, 0.1, baseline_dispatch());
  const SearchResult res = enumerate_solve(inst);
  REQUIRE(res.feasible());
  const DualCertificate cert =
      recover_duals(inst, res.z_star, res.solution, res.p0);
  PriceSystem prices = prices_from_certificate(cert);
  // Hand the closed type-2 plants the partial-plant price 30 instead of 23:
  // opening at x = 5 would then net 2.5.
  for (std::size_t k = 7; k < 15; ++k) prices.t[k] = 30.0;
  const EquilibriumReport report =
      verify_equilibrium(inst, res.z_star, res.solution.x, prices);
  CHECK(!report.pass);
  CHECK(report.max_uplift == doctest::Approx(2.5).epsilon(1e-9));
}

TEST_CASE("two-sided markets (mixed a signs, b0 near zero) certify too") {
  std::mt19937_64 rng(99);
  InstanceGenOptions gen;
  for (int trial = 0; trial < 60; ++trial) {
    MarketInstance inst = random_instance(rng, gen);
    for (std::size_t k = 0; k < inst.size(); ++k) {
      if (rng() % 2) inst.bidders[k].a = -1.0;
    }
    inst.b0 = (rng() % 3 == 0) ? 0.0 : (uniform01(rng) - 0.5) * 10.0;
    const SearchResult res = enumerate_solve(inst);
    if (!res.feasible()) continue;
    const DualCertificate cert =
        recover_duals(inst, res.z_star, res.solution, res.p0);
    const KktReport kkt = kkt_residuals(inst, res.z_star, res.solution, cert);
    const EquilibriumReport eq = verify_equilibrium(
        inst, res.z_star, res.solution.x, prices_from_certificate(cert));
    CHECK(kkt.pass);
    CHECK(eq.pass);
    CHECK(std::abs(res.solution.objective - cert.dual_objective) <=
          1e-8 * (1.0 + std::abs(res.solution.objective)));
  }
}

TEST_CASE("profit of committed bidders matches the dual decomposition") {
  // cost - payment = q b - gamma + alpha + 2 beta x0 at an optimal pair.
  std::mt19937_64 rng(5551);
  InstanceGenOptions gen;
  for (int trial = 0; trial < 25; ++trial) {
    const MarketInstance inst = random_instance(rng, gen);
    const SearchResult res = enumerate_solve(inst);
    if (!res.feasible()) continue;
    const DualCertificate cert =
        recover_duals(inst, res.z_star, res.solution, res.p0);
    const PriceSystem prices = prices_from_certificate(cert);
    const auto contracts =
        build_contracts(inst, res.z_star, res.solution.x, prices);
    for (std::size_t k = 0; k < inst.size(); ++k) {
      if (!res.z_star[k]) continue;
      const BidderSpec& b = inst.bidders[k];
      const double dev = res.solution.x[k] - b.x0;
      const double cost =
          b.c * res.solution.x[k] + b.d + b.r * dev * dev;
      const double decomposed = cert.q[k] * b.b - cert.gamma[k] +
                                cert.alpha[k] + 2.0 * cert.beta[k] * b.x0;
      CHECK(cost - contracts[k].payment ==
            doctest::Approx(decomposed).epsilon(1e-8));
    }
  }
}

TEST_CASE("uplift is nonnegative and certified whenever KKT passes") {
  std::mt19937_64 rng(1234);
  InstanceGenOptions gen;
  for (int trial = 0; trial < 40; ++trial) {
    const MarketInstance inst = random_instance(rng, gen);
    const SearchResult res = enumerate_solve(inst);
    if (!res.feasible()) continue;
    const DualCertificate cert =
        recover_duals(inst, res.z_star, res.solution, res.p0);
    const KktReport kkt = kkt_residuals(inst, res.z_star, res.solution, cert);
    const EquilibriumReport report = verify_equilibrium(
        inst, res.z_star, res.solution.x, prices_from_certificate(cert));
    for (const BidderUplift& u : report.bidders) {
      CHECK(u.uplift >= -1e-10);
    }
    if (kkt.pass) CHECK(report.pass);
  }
}

}  // namespace
