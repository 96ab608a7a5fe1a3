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

#include "mclear/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace mclear {

bool commitment_preferred(double obj_a, const Commitment& za, double obj_b,
                          const Commitment& zb, double tie_tol) {
  if (obj_a < obj_b - tie_tol) return true;
  if (obj_b < obj_a - tie_tol) return false;
  // Tied objective: prefer committing the lowest-indexed bidders first,
  // i.e. the lexicographically larger 0/1 string.
  return za > zb;
}

namespace {

bool same_class(const BidderSpec& a, const BidderSpec& b) {
  return a.c == b.c && a.d == b.d && a.a == b.a && a.g == b.g && a.h == b.h &&
         a.b == b.b && a.r == b.r && a.x0 == b.x0;
}

std::vector<std::vector<std::size_t>> bidder_classes(
    const MarketInstance& inst) {
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t k = 0; k < inst.size(); ++k) {
    bool placed = false;
    for (auto& cls : classes) {
      if (same_class(inst.bidders[cls.front()], inst.bidders[k])) {
        cls.push_back(k);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({k});
  }
  return classes;
}

}  // namespace

SearchResult enumerate_solve(const MarketInstance& inst,
                             const SearchOptions& opts) {
  const auto classes = bidder_classes(inst);
  double pattern_count = 1.0;
  for (const auto& cls : classes) {
    pattern_count *= static_cast<double>(cls.size() + 1);
  }
  if (pattern_count > 1e6) {
    throw std::invalid_argument(
        "enumerate_solve: reduced pattern count exceeds 10^6");
  }

  SearchResult best;
  std::vector<std::size_t> counts(classes.size(), 0);
  bool done = false;
  while (!done) {
    Commitment z(inst.size(), 0);
    for (std::size_t c = 0; c < classes.size(); ++c) {
      for (std::size_t i = 0; i < counts[c]; ++i) z[classes[c][i]] = 1;
    }
    ++best.nodes_explored;
    FixedSolveResult fixed = solve_fixed(inst, z, opts.tol);
    if (fixed.feasible()) {
      if (best.status == SolveStatus::kInfeasible ||
          commitment_preferred(fixed.solution.objective, z,
                               best.solution.objective, best.z_star)) {
        best.status = SolveStatus::kOptimal;
        best.z_star = z;
        best.solution = std::move(fixed.solution);
        best.p0 = fixed.p0;
      }
    }
    // Mixed-radix increment over per-class committed counts.
    done = true;
    for (std::size_t c = 0; c < counts.size(); ++c) {
      if (counts[c] < classes[c].size()) {
        ++counts[c];
        std::fill(counts.begin(), counts.begin() + static_cast<std::ptrdiff_t>(c),
                  0);
        done = false;
        break;
      }
    }
  }
  return best;
}

namespace {

// min over x in iv of c x + r (x - x0)^2 - p0 a x, plus d z.
double branch_value(const BidderSpec& b, const FeasibleInterval& iv, double z,
                    double p0) {
  double val;
  if (b.r > 0.0) {
    const double x = iv.clamp(b.x0 + (b.a * p0 - b.c) / (2.0 * b.r));
    const double dev = x - b.x0;
    val = b.c * x + b.r * dev * dev - p0 * b.a * x;
  } else {
    const double coeff = b.c - p0 * b.a;
    if (coeff > 0.0) {
      val = coeff * iv.lo;
    } else if (coeff < 0.0) {
      val = iv.bounded() ? coeff * iv.hi : -kInf;
    } else {
      val = 0.0;
    }
  }
  return val + b.d * z;
}

// Feasible interval under a continuous commitment level z in [0,1].
std::optional<FeasibleInterval> relaxed_interval(const BidderSpec& b,
                                                 double z) {
  const double rhs = b.b - b.h * z;
  if (b.g > 0.0) return FeasibleInterval{std::max(0.0, rhs / b.g), kInf};
  if (b.g < 0.0) {
    const double hi = rhs / b.g;
    if (hi < 0.0) return std::nullopt;
    return FeasibleInterval{0.0, hi};
  }
  if (rhs <= 0.0) return FeasibleInterval{0.0, kInf};
  return std::nullopt;
}

double relaxed_value(const BidderSpec& b, double z, double p0) {
  const auto iv = relaxed_interval(b, z);
  if (!iv) return kInf;
  return branch_value(b, *iv, z, p0);
}

// Inner minimum for one bidder: z fixed, or relaxed over [0,1] when free.
double phi(const BidderSpec& b, Fix fix, double p0) {
  if (fix != Fix::kFree) {
    const bool committed = fix == Fix::kOne;
    const auto iv = feasible_interval(b, committed);
    if (!iv) return kInf;
    return branch_value(b, *iv, committed ? 1.0 : 0.0, p0);
  }

  // Free: convex in z over the feasible sub-range of [0,1].
  double z_lo = 0.0, z_hi = 1.0;
  if (b.g < 0.0 || b.g == 0.0) {
    // Need b - h z <= 0 (g < 0) or h z >= b (g == 0): one-sided in z.
    if (b.h > 0.0) {
      z_lo = std::max(z_lo, b.b / b.h);
    } else if (b.h < 0.0) {
      z_hi = std::min(z_hi, b.b / b.h);
    } else if (b.b > 0.0) {
      return kInf;  // no feasible z at all
    }
  }
  if (z_lo > 1.0 || z_hi < 0.0 || z_lo > z_hi) return kInf;
  z_lo = std::max(z_lo, 0.0);
  z_hi = std::min(z_hi, 1.0);

  double best = std::min(relaxed_value(b, z_lo, p0), relaxed_value(b, z_hi, p0));
  // Constraint-activation breakpoint: the z where the clamp switches.
  if (b.r > 0.0 && b.h != 0.0) {
    const double x_hat = b.x0 + (b.a * p0 - b.c) / (2.0 * b.r);
    const double z_break = (b.b - b.g * x_hat) / b.h;
    if (z_break > z_lo && z_break < z_hi) {
      best = std::min(best, relaxed_value(b, z_break, p0));
    }
  }
  // Golden-section on the convex 1-D profile.
  constexpr double kGolden = 0.6180339887498949;
  double lo = z_lo, hi = z_hi;
  double m1 = hi - kGolden * (hi - lo);
  double m2 = lo + kGolden * (hi - lo);
  double f1 = relaxed_value(b, m1, p0);
  double f2 = relaxed_value(b, m2, p0);
  for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
    if (f1 <= f2) {
      hi = m2;
      m2 = m1;
      f2 = f1;
      m1 = hi - kGolden * (hi - lo);
      f1 = relaxed_value(b, m1, p0);
    } else {
      lo = m1;
      m1 = m2;
      f1 = f2;
      m2 = lo + kGolden * (hi - lo);
      f2 = relaxed_value(b, m2, p0);
    }
  }
  best = std::min({best, f1, f2});
  return best;
}

}  // namespace

double lagrangian_bound(const MarketInstance& inst,
                        const PartialAssignment& partial, double p0) {
  if (partial.size() != inst.size()) {
    throw std::invalid_argument("lagrangian_bound: dimension mismatch");
  }
  double total = p0 * inst.b0;
  for (std::size_t k = 0; k < inst.size(); ++k) {
    const double contribution = phi(inst.bidders[k], partial[k], p0);
    if (contribution == kInf) return kInf;  // fixed bidder infeasible
    if (contribution == -kInf) return -kInf;
    total += contribution;
  }
  return total;
}

namespace {

struct NodeBound {
  double value = -kInf;
  double argmax_p0 = 0.0;
};

// Maximizes the concave lagrangian_bound over p0: expand a bracket around
// the seed by doubling, then ternary search (200 iterations, early exit on
// bracket collapse).
NodeBound maximize_bound(const MarketInstance& inst,
                         const PartialAssignment& partial, double seed) {
  const auto f = [&](double p0) { return lagrangian_bound(inst, partial, p0); };
  {
    const double probe = f(seed);
    if (probe == kInf) return {kInf, seed};
    if (probe == -kInf) return {-kInf, seed};
  }
  double lo = seed - 1.0, hi = seed + 1.0;
  for (int it = 0; it < 60; ++it) {
    const double w = hi - lo;
    if (f(hi) >= f(hi - w / 3.0)) {
      hi += w;
    } else if (f(lo) >= f(lo + w / 3.0)) {
      lo -= w;
    } else {
      break;
    }
  }
  for (int it = 0; it < 200; ++it) {
    if (hi - lo <= 1e-13 * std::max({1.0, std::abs(lo), std::abs(hi)})) break;
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (f(m1) < f(m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  const double mid = 0.5 * (lo + hi);
  return {f(mid), mid};
}

struct BnbNode {
  PartialAssignment fix;
  double bound = -kInf;
  double p0_seed = 0.0;
  std::uint64_t seq = 0;
};

struct NodeOrder {
  bool operator()(const BnbNode& a, const BnbNode& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
    return a.seq > b.seq;                              // then FIFO
  }
};

// Quick reachability check: b0 must lie in the contribution range over the
// node's fixed and free intervals. Free bidders use the union over z.
bool node_reachable(const MarketInstance& inst, const PartialAssignment& fix,
                    double tol_eq) {
  double cmin = 0.0, cmax = 0.0;
  for (std::size_t k = 0; k < inst.size(); ++k) {
    const BidderSpec& b = inst.bidders[k];
    double lo = kInf, hi = -kInf;
    for (int zv = 0; zv <= 1; ++zv) {
      if (fix[k] != Fix::kFree && static_cast<int>(fix[k]) != zv) continue;
      const auto iv = feasible_interval(b, zv == 1);
      if (!iv) continue;
      lo = std::min(lo, b.a == 0.0 ? 0.0 : std::min(b.a * iv->lo, b.a * iv->hi));
      hi = std::max(hi, b.a == 0.0 ? 0.0 : std::max(b.a * iv->lo, b.a * iv->hi));
    }
    if (lo > hi) return false;  // no feasible z for this bidder
    cmin += lo;
    cmax += hi;
  }
  const double pad = tol_eq * std::max(1.0, std::abs(inst.b0));
  return inst.b0 >= cmin - pad && inst.b0 <= cmax + pad;
}

}  // namespace

SearchResult branch_and_bound(const MarketInstance& inst,
                              const SearchOptions& opts) {
  const std::size_t n = inst.size();
  SearchResult best;
  best.optimality_gap = 0.0;

  std::priority_queue<BnbNode, std::vector<BnbNode>, NodeOrder> open;
  std::uint64_t seq = 0;

  BnbNode root;
  root.fix.assign(n, Fix::kFree);
  if (node_reachable(inst, root.fix, opts.tol.eq)) {
    const NodeBound nb = maximize_bound(inst, root.fix, 0.0);
    if (nb.value < kInf) {
      root.bound = nb.value;
      root.p0_seed = nb.argmax_p0;
      root.seq = seq++;
      open.push(root);
    }
  }

  bool have_incumbent = false;
  while (!open.empty()) {
    const BnbNode node = open.top();
    if (have_incumbent && node.bound >= best.solution.objective - 1e-12) {
      break;  // best-first: nothing left can improve
    }
    open.pop();
    ++best.nodes_explored;
    if (best.nodes_explored > opts.node_limit) {
      best.optimality_gap =
          have_incumbent
              ? std::max(0.0, best.solution.objective - node.bound)
              : kInf;
      return best;
    }

    int branch_k = -1;
    double branch_score = -kInf;
    for (std::size_t k = 0; k < n; ++k) {
      if (node.fix[k] != Fix::kFree) continue;
      const auto iv = feasible_interval(inst.bidders[k], true);
      const double width = iv ? (iv->bounded() ? iv->width() : 1e18) : 0.0;
      const double score = std::abs(inst.bidders[k].a) * width;
      if (score > branch_score) {
        branch_score = score;
        branch_k = static_cast<int>(k);
      }
    }

    if (branch_k < 0) {
      // Leaf: every bidder fixed.
      Commitment z(n, 0);
      for (std::size_t k = 0; k < n; ++k) z[k] = node.fix[k] == Fix::kOne;
      FixedSolveResult fixed = solve_fixed(inst, z, opts.tol);
      if (fixed.feasible()) {
        if (!have_incumbent ||
            commitment_preferred(fixed.solution.objective, z,
                                 best.solution.objective, best.z_star)) {
          best.status = SolveStatus::kOptimal;
          best.z_star = z;
          best.solution = std::move(fixed.solution);
          best.p0 = fixed.p0;
          have_incumbent = true;
        }
      }
      continue;
    }

    for (const Fix child_fix : {Fix::kOne, Fix::kZero}) {
      BnbNode child;
      child.fix = node.fix;
      child.fix[static_cast<std::size_t>(branch_k)] = child_fix;
      if (!node_reachable(inst, child.fix, opts.tol.eq)) continue;
      const NodeBound nb = maximize_bound(inst, child.fix, node.p0_seed);
      if (nb.value == kInf) continue;
      // Bounds only tighten along a path.
      child.bound = std::max(nb.value, node.bound);
      child.p0_seed = nb.argmax_p0;
      if (have_incumbent && child.bound >= best.solution.objective - 1e-12) {
        continue;
      }
      child.seq = seq++;
      open.push(child);
    }
  }

  return best;
}

SearchResult solve_market(const MarketInstance& inst,
                          const SearchOptions& opts) {
  return opts.mode == SearchMode::kExhaustive ? enumerate_solve(inst, opts)
                                              : branch_and_bound(inst, opts);
}

}  // namespace mclear
