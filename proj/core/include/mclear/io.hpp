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

#ifndef MCLEAR_IO_HPP_
#define MCLEAR_IO_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include "mclear/duals.hpp"
#include "mclear/equilibrium.hpp"
#include "mclear/search.hpp"
#include "mclear/types.hpp"

namespace mclear {

// Raised on malformed instance files / reports; `where` names the offending
// field (JSON pointer style) or carries the parser's byte position.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// Instance file schema:
//   {"b0": <num>, "bidders": [{"id": <str>, "c":, "d":, "a":, "g":, "h":,
//    "b":, "r":, "x0":, "count": <int, optional, default 1>}]}
// Absent b, x0, r default to 0; NaN/Inf are rejected. A bidder with
// count = n > 1 expands to n bidders with ids "<id>#1".."<id>#n".
MarketInstance parse_instance_json(const std::string& text);
MarketInstance load_instance_file(const std::string& path);
std::string instance_to_json(const MarketInstance& inst, int indent = 2);

// FNV-1a 64-bit over the canonical serialized instance, as a hex string.
std::string instance_digest(const MarketInstance& inst);

// Everything a solve produced, serializable losslessly to JSON (doubles are
// emitted with full round-trip precision) and re-checkable without solving.
struct RunReport {
  MarketInstance instance;
  std::string digest;
  SearchMode mode = SearchMode::kExhaustive;
  SolveStatus status = SolveStatus::kInfeasible;
  Commitment z;
  std::vector<double> x;
  std::vector<double> y;
  double objective = 0.0;
  double p0 = 0.0;
  DualCertificate cert;
  DualityGapReport gap;
  KktReport kkt;
  EquilibriumReport equilibrium;
  std::vector<Contract> contracts;
  bool has_linear_mode = false;
  bool certified = false;  // gap + KKT + equilibrium all pass
  double solve_ms = 0.0;
  std::uint64_t nodes_explored = 0;
};

RunReport build_run_report(const MarketInstance& inst,
                           const SearchResult& result, SearchMode mode,
                           double solve_ms, const Tolerances& tol = {});

std::string report_to_json(const RunReport& report, int indent = 2);
RunReport parse_report_json(const std::string& text);

// Re-derives every certificate check of a stored report from its raw data
// (instance, z, x, p0, duals) without re-solving. Used by `verify`.
struct ReportVerification {
  bool pass = false;
  std::vector<std::string> failures;
  KktReport kkt;
  DualityGapReport gap;
  EquilibriumReport equilibrium;
};

ReportVerification verify_report(const RunReport& report,
                                 const Tolerances& tol = {});

}  // namespace mclear

#endif  // MCLEAR_IO_HPP_
