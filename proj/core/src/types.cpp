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

#include "mclear/types.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace mclear {

std::optional<FeasibleInterval> feasible_interval(const BidderSpec& bidder,
                                                  bool committed) {
  const double z = committed ? 1.0 : 0.0;
  const double rhs = bidder.b - bidder.h * z;
  if (bidder.g > 0.0) {
    return FeasibleInterval{std::max(0.0, rhs / bidder.g), kInf};
  }
  if (bidder.g < 0.0) {
    const double hi = rhs / bidder.g;
    if (hi < 0.0) return std::nullopt;
    return FeasibleInterval{0.0, hi == 0.0 ? 0.0 : hi};  // canonical zero
  }
  // g == 0: the constraint no longer involves x.
  if (rhs <= 0.0) return FeasibleInterval{0.0, kInf};
  return std::nullopt;
}

bool ValidationReport::ok() const {
  for (const auto& issue : issues) {
    if (issue.severity == Severity::kError) return false;
  }
  return true;
}

namespace {

bool all_finite(const BidderSpec& b) {
  return std::isfinite(b.c) && std::isfinite(b.d) && std::isfinite(b.a) &&
         std::isfinite(b.g) && std::isfinite(b.h) && std::isfinite(b.b) &&
         std::isfinite(b.r) && std::isfinite(b.x0);
}

}  // namespace

ValidationReport validate_instance(const MarketInstance& inst) {
  ValidationReport report;
  if (!std::isfinite(inst.b0)) {
    report.issues.push_back(
        {Severity::kError, "", "b0 must be a finite number"});
  }
  std::unordered_set<std::string> seen;
  for (const auto& bidder : inst.bidders) {
    if (!seen.insert(bidder.id).second) {
      report.issues.push_back(
          {Severity::kError, bidder.id, "duplicate bidder id"});
    }
    if (!all_finite(bidder)) {
      report.issues.push_back(
          {Severity::kError, bidder.id, "parameters must be finite"});
      continue;
    }
    if (bidder.a == 0.0) {
      report.issues.push_back(
          {Severity::kError, bidder.id,
           "a must be nonzero (non-contributing bidders are excluded)"});
    }
    if (bidder.r < 0.0) {
      report.issues.push_back(
          {Severity::kError, bidder.id, "r must be nonnegative"});
    } else if (bidder.r == 0.0) {
      report.linear_mode_ids.push_back(bidder.id);
      report.issues.push_back(
          {Severity::kInfo, bidder.id,
           "r = 0: linear mode; equilibrium guarantees become warnings"});
    }
    if (bidder.c < 0.0) {
      report.issues.push_back(
          {Severity::kWarning, bidder.id,
           "c < 0: strong-duality guarantees assume c >= 0"});
    }
  }
  return report;
}

double objective_value(const MarketInstance& inst, const Commitment& z,
                       std::span<const double> x) {
  const std::size_t n = inst.size();
  if (z.size() != n || x.size() != n) {
    throw std::invalid_argument("objective_value: dimension mismatch");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const BidderSpec& b = inst.bidders[k];
    const double dev = x[k] - b.x0;
    total += b.c * x[k] + b.d * (z[k] ? 1.0 : 0.0) + b.r * dev * dev;
  }
  return total;
}

}  // namespace mclear
