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

#include "mclear/equilibrium.hpp"

#include <cmath>
#include <stdexcept>

namespace mclear {

PriceSystem prices_from_certificate(const DualCertificate& cert) {
  return PriceSystem{cert.p0, cert.p};
}

namespace {

// Value of the bidder's profit problem at a fixed z, minimized over x.
// Returns nullopt when that z is infeasible.
struct BranchValue {
  double x = 0.0;
  double value = 0.0;
};

std::optional<BranchValue> individual_branch(const BidderSpec& b,
                                             bool committed, double t0,
                                             double tk) {
  const auto iv = feasible_interval(b, committed);
  if (!iv) return std::nullopt;
  const double zk = committed ? 1.0 : 0.0;
  double x;
  if (b.r > 0.0) {
    x = iv->clamp(b.x0 + (b.a * t0 - b.c) / (2.0 * b.r));
  } else {
    const double s = b.c - b.a * t0;
    // At the breakpoint any x has the same value; take the lower end.
    x = s < 0.0 ? iv->hi : iv->lo;  // hi may be +inf: unbounded below
  }
  if (!std::isfinite(x)) {
    return BranchValue{x, -kInf};
  }
  const double dev = x - b.x0;
  const double value =
      b.c * x + b.d * zk + b.r * dev * dev - t0 * b.a * x - tk * zk;
  return BranchValue{x, value};
}

}  // namespace

IndividualSolution solve_individual(const BidderSpec& bidder, double t0,
                                    double tk,
                                    std::optional<bool> prefer_committed,
                                    double value_tie_tol) {
  const auto off = individual_branch(bidder, false, t0, tk);
  const auto on = individual_branch(bidder, true, t0, tk);

  IndividualSolution sol;
  if (!off && !on) return sol;  // infeasible bidder

  bool pick_on;
  if (!off) {
    pick_on = true;
  } else if (!on) {
    pick_on = false;
  } else {
    const double tie_scale =
        value_tie_tol * std::max({1.0, std::abs(on->value), std::abs(off->value)});
    if (on->value < off->value - tie_scale) {
      pick_on = true;
    } else if (off->value < on->value - tie_scale) {
      pick_on = false;
    } else {
      pick_on = prefer_committed.value_or(false);
    }
  }

  const BranchValue& chosen = pick_on ? *on : *off;
  sol.feasible = true;
  sol.committed = pick_on;
  sol.x = chosen.x;
  sol.y = (chosen.x - bidder.x0) * (chosen.x - bidder.x0);
  sol.value = chosen.value;
  return sol;
}

std::vector<Contract> build_contracts(const MarketInstance& inst,
                                      const Commitment& z,
                                      std::span<const double> x,
                                      const PriceSystem& prices) {
  const std::size_t n = inst.size();
  if (z.size() != n || x.size() != n || prices.t.size() != n) {
    throw std::invalid_argument("build_contracts: dimension mismatch");
  }
  std::vector<Contract> contracts;
  contracts.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double zk = z[k] ? 1.0 : 0.0;
    contracts.push_back({inst.bidders[k].id, z[k] != 0, x[k],
                         prices.t0 * inst.bidders[k].a * x[k] +
                             prices.t[k] * zk});
  }
  return contracts;
}

DualityGapReport check_strong_duality(double primal_objective,
                                      const DualCertificate& cert,
                                      bool has_linear_mode, double tol) {
  DualityGapReport report;
  report.primal = primal_objective;
  report.dual = cert.dual_objective;
  report.relative_gap = std::abs(primal_objective - cert.dual_objective) /
                        (1.0 + std::abs(primal_objective));
  report.pass = report.relative_gap <= tol;
  report.warning_only = has_linear_mode;
  return report;
}

EquilibriumReport verify_equilibrium(const MarketInstance& inst,
                                     const Commitment& z,
                                     std::span<const double> x,
                                     const PriceSystem& prices, double tol,
                                     double tol_eq) {
  const std::size_t n = inst.size();
  if (z.size() != n || x.size() != n || prices.t.size() != n) {
    throw std::invalid_argument("verify_equilibrium: dimension mismatch");
  }

  EquilibriumReport report;
  report.bidders.reserve(n);
  double clearing = inst.b0;
  bool all_within = true;
  for (std::size_t k = 0; k < n; ++k) {
    const BidderSpec& b = inst.bidders[k];
    const double zk = z[k] ? 1.0 : 0.0;
    const double dev = x[k] - b.x0;
    const double achieved = b.c * x[k] + b.d * zk + b.r * dev * dev -
                            prices.t0 * b.a * x[k] - prices.t[k] * zk;
    // Ties in the individual problem resolve toward the market allocation:
    // the definition asks the allocation to be an optimum, not unique.
    const IndividualSolution ind =
        solve_individual(b, prices.t0, prices.t[k], z[k] != 0);
    const double optimum = ind.feasible ? ind.value : achieved;
    const double uplift = achieved - optimum;
    report.bidders.push_back({b.id, optimum, achieved, uplift});
    report.max_uplift = std::max(report.max_uplift, uplift);
    all_within &= uplift <= tol;
    clearing -= b.a * x[k];
  }
  report.clearing_residual = std::abs(clearing);
  report.market_clears =
      report.clearing_residual <= tol_eq * std::max(1.0, std::abs(inst.b0));
  report.pass = all_within && report.market_clears;
  return report;
}

}  // namespace mclear
