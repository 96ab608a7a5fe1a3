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

#include "mclear/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mclear {

using nlohmann::json;

namespace {

double require_number(const json& node, const std::string& where) {
  if (!node.is_number()) {
    throw SchemaError(where, "expected a number");
  }
  const double v = node.get<double>();
  if (!std::isfinite(v)) {
    throw SchemaError(where, "NaN/Inf not accepted");
  }
  return v;
}

double number_or(const json& obj, const char* key, double fallback,
                 const std::string& where) {
  if (!obj.contains(key)) return fallback;
  return require_number(obj.at(key), where + "/" + key);
}

}  // namespace

MarketInstance parse_instance_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("byte " + std::to_string(e.byte), e.what());
  }
  if (!root.is_object()) throw SchemaError("/", "expected a JSON object");
  if (!root.contains("b0")) throw SchemaError("/b0", "missing");
  if (!root.contains("bidders") || !root.at("bidders").is_array()) {
    throw SchemaError("/bidders", "missing or not an array");
  }

  MarketInstance inst;
  inst.b0 = require_number(root.at("b0"), "/b0");

  const json& bidders = root.at("bidders");
  if (bidders.empty()) throw SchemaError("/bidders", "must not be empty");
  std::size_t index = 0;
  for (const json& node : bidders) {
    const std::string where = "/bidders/" + std::to_string(index++);
    if (!node.is_object()) throw SchemaError(where, "expected an object");
    if (!node.contains("id") || !node.at("id").is_string()) {
      throw SchemaError(where + "/id", "missing or not a string");
    }
    BidderSpec proto;
    proto.id = node.at("id").get<std::string>();
    for (const char* key : {"c", "d", "a", "g", "h"}) {
      if (!node.contains(key)) throw SchemaError(where + "/" + key, "missing");
    }
    proto.c = require_number(node.at("c"), where + "/c");
    proto.d = require_number(node.at("d"), where + "/d");
    proto.a = require_number(node.at("a"), where + "/a");
    proto.g = require_number(node.at("g"), where + "/g");
    proto.h = require_number(node.at("h"), where + "/h");
    proto.b = number_or(node, "b", 0.0, where);
    proto.r = number_or(node, "r", 0.0, where);
    proto.x0 = number_or(node, "x0", 0.0, where);

    long long count = 1;
    if (node.contains("count")) {
      if (!node.at("count").is_number_integer()) {
        throw SchemaError(where + "/count", "expected an integer");
      }
      count = node.at("count").get<long long>();
      if (count < 1) throw SchemaError(where + "/count", "must be >= 1");
    }
    if (count == 1) {
      inst.bidders.push_back(std::move(proto));
    } else {
      for (long long i = 1; i <= count; ++i) {
        BidderSpec copy = proto;
        copy.id = proto.id + "#" + std::to_string(i);
        inst.bidders.push_back(std::move(copy));
      }
    }
  }
  return inst;
}

MarketInstance load_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance_json(buf.str());
}

namespace {

json instance_json(const MarketInstance& inst) {
  json bidders = json::array();
  for (const BidderSpec& b : inst.bidders) {
    bidders.push_back({{"id", b.id},
                       {"c", b.c},
                       {"d", b.d},
                       {"a", b.a},
                       {"g", b.g},
                       {"h", b.h},
                       {"b", b.b},
                       {"r", b.r},
                       {"x0", b.x0}});
  }
  return json{{"b0", inst.b0}, {"bidders", std::move(bidders)}};
}

}  // namespace

std::string instance_to_json(const MarketInstance& inst, int indent) {
  return instance_json(inst).dump(indent);
}

std::string instance_digest(const MarketInstance& inst) {
  const std::string canon = instance_json(inst).dump();
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64
  for (const unsigned char ch : canon) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char out[17];
  std::snprintf(out, sizeof(out), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(out);
}

RunReport build_run_report(const MarketInstance& inst,
                           const SearchResult& result, SearchMode mode,
                           double solve_ms, const Tolerances& tol) {
  RunReport report;
  report.instance = inst;
  report.digest = instance_digest(inst);
  report.mode = mode;
  report.status = result.status;
  report.solve_ms = solve_ms;
  report.nodes_explored = result.nodes_explored;
  report.has_linear_mode = validate_instance(inst).has_linear_mode();
  if (!result.feasible()) return report;

  report.z = result.z_star;
  report.x = result.solution.x;
  report.y = result.solution.y;
  report.objective = result.solution.objective;
  report.p0 = result.p0;
  report.cert = recover_duals(inst, result.z_star, result.solution, result.p0,
                              tol);
  report.gap = check_strong_duality(report.objective, report.cert,
                                    report.has_linear_mode, tol.kkt);
  report.kkt = kkt_residuals(inst, result.z_star, result.solution, report.cert,
                             tol);
  const PriceSystem prices = prices_from_certificate(report.cert);
  report.equilibrium = verify_equilibrium(inst, result.z_star,
                                          result.solution.x, prices, tol.kkt,
                                          tol.eq);
  report.contracts = build_contracts(inst, result.z_star, result.solution.x,
                                     prices);
  report.certified =
      report.gap.pass && report.kkt.pass && report.equilibrium.pass;
  return report;
}

namespace {

json vec_json(const std::vector<double>& v) { return json(v); }

std::vector<double> vec_from(const json& node, const std::string& where) {
  if (!node.is_array()) throw SchemaError(where, "expected an array");
  std::vector<double> out;
  out.reserve(node.size());
  for (const json& item : node) out.push_back(item.get<double>());
  return out;
}

}  // namespace

std::string report_to_json(const RunReport& report, int indent) {
  json z = json::array();
  for (const auto zi : report.z) z.push_back(static_cast<int>(zi));

  json bidder_uplifts = json::array();
  for (const BidderUplift& u : report.equilibrium.bidders) {
    bidder_uplifts.push_back({{"id", u.id},
                              {"individual_optimum", u.individual_optimum},
                              {"achieved_value", u.achieved_value},
                              {"uplift", u.uplift}});
  }
  json contracts = json::array();
  for (const Contract& c : report.contracts) {
    contracts.push_back({{"id", c.bidder_id},
                         {"committed", c.committed},
                         {"x", c.x},
                         {"payment", c.payment}});
  }

  json doc{
      {"format", "mclear-run-report/1"},
      {"digest", report.digest},
      {"mode", report.mode == SearchMode::kExhaustive ? "exhaustive" : "bnb"},
      {"status",
       report.status == SolveStatus::kOptimal ? "optimal" : "infeasible"},
      {"instance", json::parse(instance_to_json(report.instance, 0))},
      {"z", std::move(z)},
      {"x", vec_json(report.x)},
      {"y", vec_json(report.y)},
      {"objective", report.objective},
      {"p0", report.p0},
      {"duals",
       {{"q", vec_json(report.cert.q)},
        {"p", vec_json(report.cert.p)},
        {"gamma", vec_json(report.cert.gamma)},
        {"alpha", vec_json(report.cert.alpha)},
        {"beta", vec_json(report.cert.beta)},
        {"dual_objective", report.cert.dual_objective}}},
      {"duality_gap",
       {{"primal", report.gap.primal},
        {"dual", report.gap.dual},
        {"relative_gap", report.gap.relative_gap},
        {"pass", report.gap.pass},
        {"warning_only", report.gap.warning_only}}},
      {"kkt",
       {{"residuals", report.kkt.residuals},
        {"max_residual", report.kkt.max_residual},
        {"pass", report.kkt.pass}}},
      {"equilibrium",
       {{"bidders", std::move(bidder_uplifts)},
        {"max_uplift", report.equilibrium.max_uplift},
        {"clearing_residual", report.equilibrium.clearing_residual},
        {"market_clears", report.equilibrium.market_clears},
        {"pass", report.equilibrium.pass}}},
      {"contracts", std::move(contracts)},
      {"has_linear_mode", report.has_linear_mode},
      {"certified", report.certified},
      {"solve_ms", report.solve_ms},
      {"nodes_explored", report.nodes_explored},
  };
  return doc.dump(indent);
}

RunReport parse_report_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("byte " + std::to_string(e.byte), e.what());
  }
  if (!doc.is_object() || doc.value("format", "") != "mclear-run-report/1") {
    throw SchemaError("/format", "not a mclear run report");
  }

  RunReport report;
  report.instance = parse_instance_json(doc.at("instance").dump());
  report.digest = doc.value("digest", "");
  report.mode = doc.value("mode", "exhaustive") == std::string("bnb")
                    ? SearchMode::kBranchAndBound
                    : SearchMode::kExhaustive;
  report.status = doc.value("status", "infeasible") == std::string("optimal")
                      ? SolveStatus::kOptimal
                      : SolveStatus::kInfeasible;
  for (const json& item : doc.at("z")) {
    report.z.push_back(item.get<int>() != 0);
  }
  report.x = vec_from(doc.at("x"), "/x");
  report.y = vec_from(doc.at("y"), "/y");
  report.objective = doc.value("objective", 0.0);
  report.p0 = doc.value("p0", 0.0);

  const json& duals = doc.at("duals");
  report.cert.p0 = report.p0;
  report.cert.q = vec_from(duals.at("q"), "/duals/q");
  report.cert.p = vec_from(duals.at("p"), "/duals/p");
  report.cert.gamma = vec_from(duals.at("gamma"), "/duals/gamma");
  report.cert.alpha = vec_from(duals.at("alpha"), "/duals/alpha");
  report.cert.beta = vec_from(duals.at("beta"), "/duals/beta");
  report.cert.dual_objective = duals.value("dual_objective", 0.0);

  report.has_linear_mode = doc.value("has_linear_mode", false);
  report.certified = doc.value("certified", false);
  report.solve_ms = doc.value("solve_ms", 0.0);
  report.nodes_explored = doc.value("nodes_explored", std::uint64_t{0});
  return report;
}

ReportVerification verify_report(const RunReport& report,
                                 const Tolerances& tol) {
  ReportVerification out;
  if (report.status != SolveStatus::kOptimal) {
    out.failures.push_back("status: report is not an optimal solve");
    return out;
  }
  const MarketInstance& inst = report.instance;
  const std::size_t n = inst.size();
  if (report.z.size() != n || report.x.size() != n || report.y.size() != n ||
      report.cert.q.size() != n) {
    out.failures.push_back("shape: vector sizes do not match the instance");
    return out;
  }
  if (instance_digest(inst) != report.digest) {
    out.failures.push_back("digest: instance does not match stored digest");
  }
  const bool linear = validate_instance(inst).has_linear_mode();

  DispatchSolution sol;
  sol.x = report.x;
  sol.y = report.y;
  sol.z = report.z;
  sol.objective = objective_value(inst, report.z, report.x);
  if (std::abs(sol.objective - report.objective) >
      tol.kkt * (1.0 + std::abs(sol.objective))) {
    out.failures.push_back("objective: stored value does not match x, z");
  }

  // Recompute the dual objective from the stored multipliers.
  DualCertificate cert = report.cert;
  cert.p0 = report.p0;
  double dual_obj = inst.b0 * cert.p0;
  for (std::size_t k = 0; k < n; ++k) {
    const BidderSpec& b = inst.bidders[k];
    const double zk = report.z[k] ? 1.0 : 0.0;
    dual_obj += b.b * cert.q[k] + zk * cert.p[k] - cert.gamma[k] +
                cert.alpha[k] + 2.0 * cert.beta[k] * b.x0;
  }
  cert.dual_objective = dual_obj;

  out.kkt = kkt_residuals(inst, report.z, sol, cert, tol);
  out.gap = check_strong_duality(sol.objective, cert, linear, tol.kkt);
  out.equilibrium = verify_equilibrium(inst, report.z, report.x,
                                       prices_from_certificate(cert), tol.kkt,
                                       tol.eq);

  if (!out.kkt.pass) {
    std::string failing = "kkt:";
    for (int i = 0; i < 7; ++i) {
      if (out.kkt.comp(i) > tol.kkt) {
        failing += " comp" + std::to_string(i + 1);
      }
    }
    if (linear) {
      failing += " (warning: linear-mode instance)";
    } else {
      out.failures.push_back(failing);
    }
  }
  if (!out.gap.pass && !linear) {
    out.failures.push_back("duality_gap: relative gap " +
                           std::to_string(out.gap.relative_gap));
  }
  if (!out.equilibrium.market_clears) {
    out.failures.push_back("market_clearing: residual " +
                           std::to_string(out.equilibrium.clearing_residual));
  }
  if (out.equilibrium.max_uplift > tol.kkt && !linear) {
    out.failures.push_back("equilibrium: max uplift " +
                           std::to_string(out.equilibrium.max_uplift));
  }
  out.pass = out.failures.empty();
  return out;
}

}  // namespace mclear
