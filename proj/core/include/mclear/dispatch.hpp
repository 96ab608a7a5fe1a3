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

#ifndef MCLEAR_DISPATCH_HPP_
#define MCLEAR_DISPATCH_HPP_

#include <vector>

#include "mclear/types.hpp"

namespace mclear {

// Solves the fixed-commitment subproblem by price decomposition. With z
// frozen, the problem separates per bidder once the clearing constraint is
// priced at p0: bidder k's conditional optimum is the clamp of
//
//   x_k(p0) = x0_k + (a_k p0 - c_k) / (2 r_k)
//
// onto its feasible interval (for r_k = 0 the response is an interval
// endpoint, or the whole interval at the breakpoint a_k p0 = c_k). The
// clearing price is the leftmost root of the aggregate excess
// sum_k a_k x_k(p0) - b0, which is nondecreasing in p0.

struct Tolerances {
  double p = 1e-12;    // clearing-price bisection width
  double eq = 1e-9;    // market-clearing residual
  double kkt = 1e-8;   // KKT / certificate residuals
};

// A bidder's optimal-response set at price p0: a single point for r > 0,
// possibly a whole interval for a linear-mode bidder at its breakpoint.
struct ResponseSet {
  double lo = 0.0;
  double hi = 0.0;

  bool is_point() const { return lo == hi; }
};

// Throws std::invalid_argument when the feasible interval is empty.
ResponseSet bidder_response(const BidderSpec& bidder, bool committed,
                            double p0);

// sum_k a_k x_k(p0) - b0 with linear-mode bidders at a breakpoint counted at
// the infimum of their contribution interval (leftmost-root convention).
// Throws std::invalid_argument when some feasible interval is empty.
double aggregate_excess(const MarketInstance& inst, const Commitment& z,
                        double p0);

struct DispatchSolution {
  std::vector<double> x;  // outputs, one per bidder
  std::vector<double> y;  // epigraph values, y_k = (x_k - x0_k)^2
  Commitment z;
  double objective = 0.0;
};

enum class SolveStatus { kOptimal, kInfeasible };

struct FixedSolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  DispatchSolution solution;
  double p0 = 0.0;  // clearing price (leftmost-root convention)

  bool feasible() const { return status == SolveStatus::kOptimal; }
};

// Solves min sum_k c_k x_k + d_k z_k + r_k (x_k - x0_k)^2 over the box of
// feasible intervals subject to sum_k a_k x_k = b0, for the given fixed z.
//
// Bracketing-then-bisection locates the leftmost clearing price to tol.p;
// an active-set refinement then solves the interior stationarity equation
// exactly so the returned p0 and x carry no bisection error. Linear-mode
// bidders at the breakpoint absorb residual demand lowest index first.
// An unreachable b0 yields kInfeasible rather than an exception.
FixedSolveResult solve_fixed(const MarketInstance& inst, const Commitment& z,
                             const Tolerances& tol = {});

}  // namespace mclear

#endif  // MCLEAR_DISPATCH_HPP_
