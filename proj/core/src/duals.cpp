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

#include "mclear/duals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mclear {

DualCertificate recover_duals(const MarketInstance& inst, const Commitment& z,
                              const DispatchSolution& sol, double p0,
                              const Tolerances& tol) {
  const std::size_t n = inst.size();
  if (z.size() != n || sol.x.size() != n) {
    throw std::invalid_argument("recover_duals: dimension mismatch");
  }

  DualCertificate cert;
  cert.p0 = p0;
  cert.q.resize(n);
  cert.p.resize(n);
  cert.gamma.resize(n);
  cert.alpha.resize(n);
  cert.beta.resize(n);

  double dual_obj = inst.b0 * p0;
  for (std::size_t k = 0; k < n; ++k) {
    const BidderSpec& b = inst.bidders[k];
    const double zk = z[k] ? 1.0 : 0.0;
    const double xk = sol.x[k];
    const double dev = xk - b.x0;
    const double yk = dev * dev;

    // Cone multipliers on the boundary: gamma^2 = alpha^2 + beta^2 and
    // orthogonality with (y+1, y-1, 2(x-x0)) hold by construction.
    const double beta = -b.r * dev;
    const double gamma = b.r * (1.0 + yk) / 2.0;
    const double alpha = b.r * (1.0 - yk) / 2.0;

    // Stationarity coefficient with q still absent.
    const double s = b.c - b.a * p0 - 2.0 * beta;
    const double slack = b.g * xk + b.h * zk - b.b;
    const double act_tol =
        1e-7 * std::max({1.0, std::abs(b.g * xk), std::abs(b.h), std::abs(b.b)});

    double q = 0.0;
    double defect = 0.0;
    if (xk > act_tol) {
      if (std::abs(slack) <= act_tol && b.g != 0.0) {
        q = s / b.g;
        if (q < 0.0) {
          // Constraint touched but not binding: stationarity must close
          // with q = 0. A large |s| here means the input was not optimal.
          q = 0.0;
          defect = std::abs(s);
        }
      } else {
        // Interior output: stationarity with q = 0.
        defect = std::abs(s);
      }
    } else {
      // x = 0: smallest nonnegative q keeping the reduced cost >= 0.
      if (s < 0.0) {
        if (b.g != 0.0 && s / b.g >= 0.0 && std::abs(slack) <= act_tol) {
          q = s / b.g;
        } else {
          defect = -s;  // producing would be profitable; input not optimal
        }
      }
    }

    cert.q[k] = q;
    cert.p[k] = b.d - b.h * q;
    cert.gamma[k] = gamma;
    cert.alpha[k] = alpha;
    cert.beta[k] = beta;
    if (defect > cert.stationarity_violation) {
      cert.stationarity_violation = defect;
    }

    dual_obj += b.b * q + zk * cert.p[k] - gamma + alpha + 2.0 * beta * b.x0;
  }
  cert.dual_objective = dual_obj;
  cert.stationarity_ok = cert.stationarity_violation <= tol.kkt;
  return cert;
}

KktReport kkt_residuals(const MarketInstance& inst, const Commitment& z,
                        const DispatchSolution& sol,
                        const DualCertificate& cert, const Tolerances& tol) {
  const std::size_t n = inst.size();
  if (z.size() != n || sol.x.size() != n || cert.q.size() != n) {
    throw std::invalid_argument("kkt_residuals: dimension mismatch");
  }

  KktReport report;
  auto bump = [&report](int family, double violation) {
    auto& r = report.residuals[static_cast<std::size_t>(family)];
    r = std::max(r, violation);
  };

  double clearing = inst.b0;
  for (std::size_t k = 0; k < n; ++k) {
    const BidderSpec& b = inst.bidders[k];
    const double zk = z[k] ? 1.0 : 0.0;
    const double xk = sol.x[k];
    const double yk = sol.y[k];
    const double q = cert.q[k];
    const double p = cert.p[k];
    const double gamma = cert.gamma[k];
    const double alpha = cert.alpha[k];
    const double beta = cert.beta[k];

    clearing -= b.a * xk;

    const double s1 = b.c - b.a * cert.p0 - b.g * q - 2.0 * beta;
    bump(0, std::max(0.0, -s1));
    bump(0, std::max(0.0, -xk));
    bump(0, std::abs(s1 * xk));

    const double s2 = b.d - b.h * q - p;
    bump(1, std::max(0.0, -s2));
    bump(1, std::abs(s2 * zk));

    const double s3 = b.r - gamma - alpha;
    bump(2, std::max(0.0, -s3));
    bump(2, std::max(0.0, -yk));
    bump(2, std::abs(s3 * yk));

    const double slack = b.g * xk + b.h * zk - b.b;
    bump(4, std::max(0.0, -q));
    bump(4, std::max(0.0, -slack));
    bump(4, std::abs(q * slack));

    // Commitment constraint z = z*: trivially satisfied by the solution
    // itself; the residual guards tampered inputs where they differ.
    const double z_committed = sol.z.size() == n ? (sol.z[k] ? 1.0 : 0.0) : zk;
    bump(5, std::abs(p * (zk - z_committed)));

    // Cone memberships and orthogonality.
    const double primal_gap =
        std::hypot(yk - 1.0, 2.0 * (xk - b.x0)) - (yk + 1.0);
    bump(6, std::max(0.0, primal_gap));
    const double dual_gap = std::hypot(alpha, beta) - gamma;
    bump(6, std::max(0.0, dual_gap));
    const double orth =
        gamma * (yk + 1.0) + alpha * (yk - 1.0) + 2.0 * beta * (xk - b.x0);
    bump(6, std::abs(orth));
    // Epigraph tightness y = (x - x0)^2 folds into the cone family.
    bump(6, std::abs(yk - (xk - b.x0) * (xk - b.x0)));
  }
  bump(3, std::abs(cert.p0 * clearing));

  report.max_residual =
      *std::max_element(report.residuals.begin(), report.residuals.end());
  report.pass = report.max_residual <= tol.kkt;
  return report;
}

}  // namespace mclear
