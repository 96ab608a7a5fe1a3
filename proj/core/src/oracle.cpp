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

#include "mclear/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace mclear {

namespace {

// min over x in iv of c x + r (x - x0)^2 - p0 a x.
double inner_min(const BidderSpec& b, const FeasibleInterval& iv, double p0) {
  if (b.r > 0.0) {
    const double x = iv.clamp(b.x0 + (b.a * p0 - b.c) / (2.0 * b.r));
    const double dev = x - b.x0;
    return b.c * x + b.r * dev * dev - p0 * b.a * x;
  }
  const double coeff = b.c - p0 * b.a;
  if (coeff > 0.0) return coeff * iv.lo;
  if (coeff < 0.0) return iv.bounded() ? coeff * iv.hi : -kInf;
  return 0.0;
}

double inner_argmin(const BidderSpec& b, const FeasibleInterval& iv,
                    double p0) {
  if (b.r > 0.0) return iv.clamp(b.x0 + (b.a * p0 - b.c) / (2.0 * b.r));
  const double coeff = b.c - p0 * b.a;
  if (coeff > 0.0) return iv.lo;
  if (coeff < 0.0) return iv.hi;
  return iv.lo;  // breakpoint: residual fill decides
}

}  // namespace

OracleResult oracle_solve(const MarketInstance& inst, double tol) {
  const std::size_t n = inst.size();
  if (n > 12) {
    throw std::invalid_argument("oracle_solve: more than 12 bidders");
  }

  OracleResult best;
  const double resid_tol = tol * std::max(1.0, std::abs(inst.b0));

  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Commitment z(n, 0);
    std::vector<FeasibleInterval> ivs(n);
    bool ok = true;
    double commitment_cost = 0.0;
    for (std::size_t k = 0; k < n && ok; ++k) {
      z[k] = (mask >> k) & 1u;
      const auto iv = feasible_interval(inst.bidders[k], z[k] != 0);
      if (!iv) {
        ok = false;
      } else {
        ivs[k] = *iv;
        if (z[k]) commitment_cost += inst.bidders[k].d;
      }
    }
    if (!ok) continue;

    // Concave dual of the dispatch problem for this commitment.
    const auto dual = [&](double p0) {
      double total = p0 * inst.b0;
      for (std::size_t k = 0; k < n; ++k) {
        total += inner_min(inst.bidders[k], ivs[k], p0);
      }
      return total;
    };

    double lo = -1.0, hi = 1.0;
    for (int it = 0; it < 60; ++it) {
      const double w = hi - lo;
      if (dual(hi) >= dual(hi - w / 3.0)) {
        hi += w;
      } else if (dual(lo) >= dual(lo + w / 3.0)) {
        lo -= w;
      } else {
        break;
      }
    }
    for (int it = 0; it < 300; ++it) {
      if (hi - lo <= 1e-14 * std::max({1.0, std::abs(lo), std::abs(hi)})) break;
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      if (dual(m1) < dual(m2)) {
        lo = m1;
      } else {
        hi = m2;
      }
    }
    const double p_star = 0.5 * (lo + hi);

    std::vector<double> x(n);
    double residual = inst.b0;
    for (std::size_t k = 0; k < n; ++k) {
      x[k] = inner_argmin(inst.bidders[k], ivs[k], p_star);
      residual -= inst.bidders[k].a * x[k];
    }
    // Linear-mode bidders at their breakpoint pick up what remains.
    for (std::size_t k = 0; k < n && std::abs(residual) > 0.0; ++k) {
      const BidderSpec& b = inst.bidders[k];
      if (b.r > 0.0 || b.a == 0.0) continue;
      if (std::abs(b.c - p_star * b.a) >
          1e-9 * std::max({1.0, std::abs(b.c), std::abs(p_star * b.a)})) {
        continue;
      }
      const double want = x[k] + residual / b.a;
      const double moved = ivs[k].clamp(want);
      residual -= b.a * (moved - x[k]);
      x[k] = moved;
    }
    if (std::abs(residual) > resid_tol) continue;  // could not clear

    // The dual value at the located maximizer is second-order accurate in
    // the ternary error and equals the dispatch optimum by strong duality;
    // the recovered x would carry a first-order clearing error instead.
    const double objective = dual(p_star) + commitment_cost;
    if (best.status == SolveStatus::kInfeasible ||
        objective < best.objective) {
      best.status = SolveStatus::kOptimal;
      best.objective = objective;
      best.z = z;
      best.x = std::move(x);
    }
  }
  return best;
}

}  // namespace mclear
