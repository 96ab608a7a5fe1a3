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

#ifndef MCLEAR_ORACLE_HPP_
#define MCLEAR_ORACLE_HPP_

#include <string>
#include <vector>

#include "mclear/dispatch.hpp"
#include "mclear/types.hpp"

namespace mclear {

// Independent cross-check solver. Enumerates all 2^n commitments (no
// symmetry reduction) and, for each, maximizes the one-dimensional concave
// dual of the dispatch problem by ternary search instead of root-finding on
// the excess function. Deliberately slower and structurally different from
// enumerate_solve + solve_fixed; agreement tolerance is 1e-6.
struct OracleResult {
  SolveStatus status = SolveStatus::kInfeasible;
  double objective = 0.0;
  Commitment z;
  std::vector<double> x;
  std::string method = "enumerate+concave-dual-ternary";
};

// Requires inst.size() <= 12 (throws std::invalid_argument beyond that).
OracleResult oracle_solve(const MarketInstance& inst, double tol = 1e-6);

}  // namespace mclear

#endif  // MCLEAR_ORACLE_HPP_
