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

#ifndef MCLEAR_DUALS_HPP_
#define MCLEAR_DUALS_HPP_

#include <array>
#include <string>
#include <vector>

#include "mclear/dispatch.hpp"
#include "mclear/types.hpp"

namespace mclear {

// Dual variables of the fixed-commitment conic program:
//   p0              market-clearing constraint
//   q_k >= 0        internal constraint g_k x_k + h_k z_k >= b_k
//   p_k             commitment constraint z_k = z*_k (the start-up price)
//   (gamma, alpha, beta)_k   rotated-cone constraint, in the cone itself
//
// The certificate is recovered in closed form from an optimal dispatch:
//   beta_k  = -r_k (x_k - x0_k)
//   gamma_k =  r_k (1 + y_k) / 2,  alpha_k = r_k (1 - y_k) / 2
// which sit exactly on the cone boundary (gamma^2 = alpha^2 + beta^2), and
// q_k from per-bidder stationarity; p_k = d_k - h_k q_k for every bidder
// (forced by complementarity for committed bidders, the maximal
// dual-feasible choice for closed ones).
struct DualCertificate {
  double p0 = 0.0;
  std::vector<double> q;
  std::vector<double> p;
  std::vector<double> gamma;
  std::vector<double> alpha;
  std::vector<double> beta;
  double dual_objective = 0.0;

  // Largest per-bidder stationarity defect met during recovery. A value
  // above the tolerance means the input dispatch was not optimal.
  double stationarity_violation = 0.0;
  bool stationarity_ok = true;
};

DualCertificate recover_duals(const MarketInstance& inst, const Commitment& z,
                              const DispatchSolution& sol, double p0,
                              const Tolerances& tol = {});

// Max absolute violation per optimality-condition family.
struct KktReport {
  // 0: 0 <= (c - a p0 - g q - 2 beta) perp x >= 0
  // 1: 0 <= (d - h q - p) perp z >= 0
  // 2: 0 <= (r - gamma - alpha) perp y >= 0
  // 3: p0 (b0 - sum a x) = 0
  // 4: 0 <= q perp (g x + h z - b) >= 0
  // 5: p (z* - z) = 0
  // 6: cone memberships and gamma(y+1) + alpha(y-1) + 2 beta(x - x0) = 0
  std::array<double, 7> residuals{};
  double max_residual = 0.0;
  bool pass = false;

  double comp(int i) const { return residuals.at(static_cast<std::size_t>(i)); }
};

KktReport kkt_residuals(const MarketInstance& inst, const Commitment& z,
                        const DispatchSolution& sol,
                        const DualCertificate& cert,
                        const Tolerances& tol = {});

}  // namespace mclear

#endif  // MCLEAR_DUALS_HPP_
