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

#ifndef MCLEAR_TYPES_HPP_
#define MCLEAR_TYPES_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mclear {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// One bidder in the assignment problem
//
//   min  sum_k  c_k x_k + d_k z_k + r_k (x_k - x0_k)^2
//   s.t. sum_k  a_k x_k = b0
//        g_k x_k + h_k z_k >= b_k          for each k
//        x_k >= 0,  z_k in {0,1}           for each k
//
// `c` is the variable cost per unit, `d` the fixed commitment cost, `a` the
// bidder's coefficient in the market-clearing constraint, (g, h, b) the
// bidder's internal operating constraint, `r` the quadratic deviation
// (ramping) cost and `x0` the reference output the deviation is measured
// from. `r == 0` puts the bidder in linear mode; see validate_instance().
struct BidderSpec {
  std::string id;
  double c = 0.0;
  double d = 0.0;
  double a = 1.0;
  double g = 0.0;
  double h = 0.0;
  double b = 0.0;
  double r = 0.0;
  double x0 = 0.0;

  bool linear_mode() const { return r == 0.0; }
};

// A market: the bidders plus the auctioned quantity b0 (b0 != 0 one-sided,
// b0 == 0 two-sided; both accepted).
struct MarketInstance {
  std::vector<BidderSpec> bidders;
  double b0 = 0.0;

  std::size_t size() const { return bidders.size(); }
};

// Commitment vector, one 0/1 entry per bidder.
using Commitment = std::vector<std::uint8_t>;

// Closed interval of admissible outputs; hi may be +infinity.
struct FeasibleInterval {
  double lo = 0.0;
  double hi = kInf;

  bool bounded() const { return hi < kInf; }
  double width() const { return hi - lo; }
  double clamp(double x) const { return x < lo ? lo : (x > hi ? hi : x); }
  bool contains(double x, double tol = 0.0) const {
    return x >= lo - tol && x <= hi + tol;
  }
};

// {x >= 0 : g x >= b - h z} as an interval, or nullopt when empty.
std::optional<FeasibleInterval> feasible_interval(const BidderSpec& bidder,
                                                  bool committed);

enum class Severity { kError, kWarning, kInfo };

struct ValidationIssue {
  Severity severity = Severity::kError;
  std::string bidder_id;  // empty for instance-level issues
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  // Bidders with r == 0: admitted, but strong-duality / equilibrium
  // guarantees degrade to warnings for instances containing them.
  std::vector<std::string> linear_mode_ids;

  bool ok() const;
  bool has_linear_mode() const { return !linear_mode_ids.empty(); }
};

// Report-style invariant check: a != 0, r >= 0, unique ids, finite numbers.
// c < 0 is flagged as a warning (the equilibrium guarantees assume c >= 0).
ValidationReport validate_instance(const MarketInstance& inst);

// sum_k c_k x_k + d_k z_k + r_k (x_k - x0_k)^2. Throws std::invalid_argument
// on dimension mismatch.
double objective_value(const MarketInstance& inst, const Commitment& z,
                       std::span<const double> x);

}  // namespace mclear

#endif  // MCLEAR_TYPES_HPP_
