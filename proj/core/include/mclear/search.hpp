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

#ifndef MCLEAR_SEARCH_HPP_
#define MCLEAR_SEARCH_HPP_

#include <cstdint>
#include <vector>

#include "mclear/dispatch.hpp"
#include "mclear/types.hpp"

namespace mclear {

enum class SearchMode { kExhaustive, kBranchAndBound };

struct SearchOptions {
  SearchMode mode = SearchMode::kExhaustive;
  std::uint64_t node_limit = 1'000'000;
  Tolerances tol;
};

struct SearchResult {
  SolveStatus status = SolveStatus::kInfeasible;
  Commitment z_star;
  DispatchSolution solution;
  double p0 = 0.0;
  std::uint64_t nodes_explored = 0;
  // 0 for exhaustive search and for branch-and-bound run to completion;
  // positive when the node limit stopped the search early.
  double optimality_gap = 0.0;

  bool feasible() const { return status == SolveStatus::kOptimal; }
};

// Deterministic preference order shared by both searches: lower objective
// wins; objectives within tie_tol are broken toward the commitment that
// commits the lowest-indexed bidders first (lexicographically largest as a
// 0/1 string). This matches the class representatives enumerated below.
bool commitment_preferred(double obj_a, const Commitment& za, double obj_b,
                          const Commitment& zb, double tie_tol = 1e-9);

// Exhaustive search with symmetry reduction: bidders with identical
// parameters form a class, and only per-class committed counts are
// enumerated (lowest-index members committed first). Throws
// std::invalid_argument when the reduced pattern count exceeds 10^6.
SearchResult enumerate_solve(const MarketInstance& inst,
                             const SearchOptions& opts = {});

// Per-bidder fixing for branch-and-bound nodes.
enum class Fix : std::int8_t { kZero = 0, kOne = 1, kFree = -1 };
using PartialAssignment = std::vector<Fix>;

// Lagrangian lower bound at price p0 for every completion of `partial`:
//   p0 b0 + sum_k min { c x + d z + r (x - x0)^2 - p0 a x }
// with the inner minimum over the bidder's own constraint set, z ranging
// over its fixed value or [0,1] when free. Valid by weak duality; +inf when
// some fixed bidder is infeasible, -inf only for unbounded linear bidders.
double lagrangian_bound(const MarketInstance& inst,
                        const PartialAssignment& partial, double p0);

// Best-first branch and bound. Node bounds maximize lagrangian_bound over
// p0 (concave) by ternary search on a doubling bracket; branching picks the
// free bidder with the largest |a| * committed-interval width; children are
// explored z=1 before z=0; leaves are evaluated with solve_fixed.
SearchResult branch_and_bound(const MarketInstance& inst,
                              const SearchOptions& opts = {});

// Dispatches on opts.mode.
SearchResult solve_market(const MarketInstance& inst,
                          const SearchOptions& opts = {});

}  // namespace mclear

#endif  // MCLEAR_SEARCH_HPP_
