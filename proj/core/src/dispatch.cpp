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

#include "mclear/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace mclear {

namespace {

enum class Kind { kLo, kHi, kInterior, kMarginal };

struct BidderState {
  FeasibleInterval interval;
  Kind kind = Kind::kLo;
};

double contrib_min(double a, const FeasibleInterval& iv) {
  if (a == 0.0) return 0.0;
  return a > 0.0 ? a * iv.lo : a * iv.hi;
}

double contrib_max(double a, const FeasibleInterval& iv) {
  if (a == 0.0) return 0.0;
  return a > 0.0 ? a * iv.hi : a * iv.lo;
}

ResponseSet response_on(const BidderSpec& b, const FeasibleInterval& iv,
                        double p0) {
  if (b.r > 0.0) {
    const double u = b.x0 + (b.a * p0 - b.c) / (2.0 * b.r);
    const double x = iv.clamp(u);
    return {x, x};
  }
  const double s = b.c - b.a * p0;  // marginal cost minus marginal revenue
  if (s > 0.0) return {iv.lo, iv.lo};
  if (s < 0.0) return {iv.hi, iv.hi};
  return {iv.lo, iv.hi};
}

}  // namespace

ResponseSet bidder_response(const BidderSpec& bidder, bool committed,
                            double p0) {
  const auto iv = feasible_interval(bidder, committed);
  if (!iv) throw std::invalid_argument("bidder_response: empty interval");
  return response_on(bidder, *iv, p0);
}

double aggregate_excess(const MarketInstance& inst, const Commitment& z,
                        double p0) {
  const std::size_t n = inst.size();
  if (z.size() != n) {
    throw std::invalid_argument("aggregate_excess: dimension mismatch");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const BidderSpec& b = inst.bidders[k];
    const auto iv = feasible_interval(b, z[k] != 0);
    if (!iv) throw std::invalid_argument("aggregate_excess: empty interval");
    const ResponseSet resp = response_on(b, *iv, p0);
    total += std::min(b.a * resp.lo, b.a * resp.hi);
  }
  return total - inst.b0;
}

namespace {

// Supremum variant of the excess: linear-mode bidders at their breakpoint
// count at the top of their contribution interval. Nondecreasing and
// right-continuous in p0; the leftmost clearing price is the first point
// where it reaches zero.
double excess_sup(const MarketInstance& inst,
                  const std::vector<BidderState>& states, double p0) {
  double total = 0.0;
  for (std::size_t k = 0; k < inst.size(); ++k) {
    const BidderSpec& b = inst.bidders[k];
    const ResponseSet resp = response_on(b, states[k].interval, p0);
    total += std::max(b.a * resp.lo, b.a * resp.hi);
  }
  return total - inst.b0;
}

Kind classify(const BidderSpec& b, const FeasibleInterval& iv, double p0,
              double tol_p) {
  if (b.r > 0.0) {
    const double u = b.x0 + (b.a * p0 - b.c) / (2.0 * b.r);
    const double eps = 10.0 * tol_p * std::max(1.0, std::abs(b.a) / (2.0 * b.r));
    if (u <= iv.lo + eps) return Kind::kLo;
    if (iv.bounded() && u >= iv.hi - eps) return Kind::kHi;
    return Kind::kInterior;
  }
  const double s = b.c - b.a * p0;
  const double eps =
      10.0 * tol_p * std::max({1.0, std::abs(b.c), std::abs(b.a * p0)});
  if (s > eps) return Kind::kLo;
  if (s < -eps) return Kind::kHi;
  return Kind::kMarginal;
}

}  // namespace

FixedSolveResult solve_fixed(const MarketInstance& inst, const Commitment& z,
                             const Tolerances& tol) {
  const std::size_t n = inst.size();
  if (z.size() != n) {
    throw std::invalid_argument("solve_fixed: dimension mismatch");
  }

  FixedSolveResult result;
  std::vector<BidderState> states(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto iv = feasible_interval(inst.bidders[k], z[k] != 0);
    if (!iv) return result;  // kInfeasible
    states[k].interval = *iv;
  }

  double cmin = 0.0, cmax = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    cmin += contrib_min(inst.bidders[k].a, states[k].interval);
    cmax += contrib_max(inst.bidders[k].a, states[k].interval);
  }
  const double eq_scale = std::max(1.0, std::abs(inst.b0));
  if (inst.b0 < cmin - tol.eq * eq_scale ||
      inst.b0 > cmax + tol.eq * eq_scale) {
    return result;  // kInfeasible
  }

  // Price range over which some response still moves; outside it the excess
  // is constant. The endpoints are the prices where a response meets its
  // interval bounds (the breakpoint c/a for linear-mode bidders).
  double p_low_hint = 0.0, p_high_hint = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const BidderSpec& b = inst.bidders[k];
    const FeasibleInterval& iv = states[k].interval;
    if (b.a == 0.0) continue;
    if (b.r > 0.0) {
      const double at_lo = (b.c + 2.0 * b.r * (iv.lo - b.x0)) / b.a;
      p_low_hint = std::min(p_low_hint, at_lo);
      p_high_hint = std::max(p_high_hint, at_lo);
      if (iv.bounded()) {
        const double at_hi = (b.c + 2.0 * b.r * (iv.hi - b.x0)) / b.a;
        p_low_hint = std::min(p_low_hint, at_hi);
        p_high_hint = std::max(p_high_hint, at_hi);
      }
    } else {
      const double bp = b.c / b.a;
      p_low_hint = std::min(p_low_hint, bp);
      p_high_hint = std::max(p_high_hint, bp);
    }
  }

  const bool pinned_at_bottom =
      std::isfinite(cmin) && inst.b0 <= cmin + tol.eq * eq_scale;

  double p0;
  std::vector<Kind> kinds(n, Kind::kLo);
  double p_hat = 0.0;
  std::vector<Kind> kinds_hat;

  if (pinned_at_bottom) {
    // The root set of the clearing equation is unbounded below; report a
    // finite representative just under every departure price.
    p0 = p_low_hint - 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      kinds[k] = inst.bidders[k].a >= 0.0 ? Kind::kLo : Kind::kHi;
    }
  } else {
    double lo = p_low_hint - 1.0;
    double hi = p_high_hint + 1.0;
    double step = 1.0;
    for (int it = 0; it < 200 && excess_sup(inst, states, lo) >= 0.0; ++it) {
      lo -= step;
      step *= 2.0;
    }
    step = 1.0;
    for (int it = 0; it < 200 && excess_sup(inst, states, hi) < 0.0; ++it) {
      hi += step;
      step *= 2.0;
    }
    // Leftmost point with excess_sup >= 0, to width tol.p.
    while (hi - lo > tol.p * std::max({1.0, std::abs(lo), std::abs(hi)})) {
      const double mid = 0.5 * (lo + hi);
      if (excess_sup(inst, states, mid) >= 0.0) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    p0 = hi;
    for (std::size_t k = 0; k < n; ++k) {
      kinds[k] = classify(inst.bidders[k], states[k].interval, p0, tol.p);
    }
    p_hat = p0;
    kinds_hat = kinds;

    // Active-set refinement: with the clamped sets frozen, the interior
    // stationarity equation is linear in p0 and gives the clearing price
    // exactly. Reclassify and repeat in case a bidder crosses a boundary.
    for (int round = 0; round < 3; ++round) {
      double denom = 0.0, fixed_contrib = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const BidderSpec& b = inst.bidders[k];
        const FeasibleInterval& iv = states[k].interval;
        switch (kinds[k]) {
          case Kind::kLo:
            fixed_contrib += b.a * iv.lo;
            break;
          case Kind::kHi:
            fixed_contrib += b.a * iv.hi;
            break;
          case Kind::kMarginal:
            fixed_contrib += contrib_min(b.a, iv);
            break;
          case Kind::kInterior:
            denom += b.a * b.a / (2.0 * b.r);
            fixed_contrib += b.a * (b.x0 - b.c / (2.0 * b.r));
            break;
        }
      }
      if (denom == 0.0) break;
      const double refined = (inst.b0 - fixed_contrib) / denom;
      bool stable = true;
      for (std::size_t k = 0; k < n; ++k) {
        const Kind nk =
            classify(inst.bidders[k], states[k].interval, refined, tol.p);
        if (nk != kinds[k]) {
          kinds[k] = nk;
          stable = false;
        }
      }
      p0 = refined;
      if (stable) break;
    }

    // No interior bidder: when linear-mode bidders sit at their breakpoint
    // the root is an interval and its infimum is the exact breakpoint.
    bool has_interior = false;
    for (const Kind k : kinds) has_interior |= (k == Kind::kInterior);
    if (!has_interior) {
      for (std::size_t k = 0; k < n; ++k) {
        if (kinds[k] == Kind::kMarginal) {
          p0 = inst.bidders[k].c / inst.bidders[k].a;
          break;
        }
      }
    }
  }

  // Assemble outputs at a price with its classification; marginal bidders
  // absorb residual demand lowest index first.
  const auto assemble = [&](double price, const std::vector<Kind>& kind) {
    std::vector<double> out(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      const BidderSpec& b = inst.bidders[k];
      const FeasibleInterval& iv = states[k].interval;
      switch (kind[k]) {
        case Kind::kLo:
          out[k] = iv.lo;
          break;
        case Kind::kHi:
          out[k] = iv.hi;
          break;
        case Kind::kMarginal:
          out[k] = b.a >= 0.0 ? iv.lo : iv.hi;  // contribution infimum
          break;
        case Kind::kInterior:
          out[k] = iv.clamp(b.x0 + (b.a * price - b.c) / (2.0 * b.r));
          break;
      }
    }
    double residual = inst.b0;
    for (std::size_t k = 0; k < n; ++k) residual -= inst.bidders[k].a * out[k];
    for (std::size_t k = 0; k < n && residual > 0.0; ++k) {
      if (kind[k] != Kind::kMarginal) continue;
      const BidderSpec& b = inst.bidders[k];
      const FeasibleInterval& iv = states[k].interval;
      const double room = contrib_max(b.a, iv) - contrib_min(b.a, iv);
      const double take = std::min(residual, room);
      if (take > 0.0 && b.a != 0.0) {
        out[k] += take / b.a;
        residual -= take;
      }
    }
    residual = inst.b0;
    for (std::size_t k = 0; k < n; ++k) residual -= inst.bidders[k].a * out[k];
    return std::make_pair(std::move(out), residual);
  };

  auto [x, clearing] = assemble(p0, kinds);
  if (std::abs(clearing) > tol.eq * eq_scale && !kinds_hat.empty()) {
    // Refinement walked out of the root; the bisection point is always safe.
    p0 = p_hat;
    kinds = kinds_hat;
    std::tie(x, clearing) = assemble(p0, kinds);
  }
  if (std::abs(clearing) > tol.eq * eq_scale) {
    return result;  // numerically unreachable b0 under this commitment
  }

  result.status = SolveStatus::kOptimal;
  result.p0 = p0;
  result.solution.z = z;
  result.solution.x = std::move(x);
  result.solution.y.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double dev = result.solution.x[k] - inst.bidders[k].x0;
    result.solution.y[k] = dev * dev;
  }
  result.solution.objective = objective_value(inst, z, result.solution.x);
  return result;
}

}  // namespace mclear
