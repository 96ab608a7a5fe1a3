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

// Command-line front end: instance ingestion, solving, price reporting,
// demand sweeps and certificate verification.
//
// Exit codes: 0 success, 2 input error, 3 infeasible, 4 certificate failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mclear/golden.hpp"
#include "mclear/io.hpp"
#include "mclear/oracle.hpp"
#include "mclear/random_instances.hpp"
#include "mclear/scarf.hpp"
#include "mclear/search.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitCertificate = 4;

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw mclear::SchemaError(out_path, "cannot open for writing");
  out << text << "\n";
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct SolveFlags {
  std::string mode = "exhaustive";
  double tol_p = 1e-12;
  double tol_eq = 1e-9;
  double tol_kkt = 1e-8;

  mclear::SearchOptions options() const {
    mclear::SearchOptions opts;
    opts.mode = mode == "bnb" ? mclear::SearchMode::kBranchAndBound
                              : mclear::SearchMode::kExhaustive;
    opts.tol.p = tol_p;
    opts.tol.eq = tol_eq;
    opts.tol.kkt = tol_kkt;
    return opts;
  }
};

void add_solve_flags(CLI::App* cmd, SolveFlags* flags) {
  cmd->add_option("--mode", flags->mode, "Search mode")
      ->check(CLI::IsMember({"exhaustive", "bnb"}));
  cmd->add_option("--tol-p", flags->tol_p, "Clearing-price bisection tolerance");
  cmd->add_option("--tol-eq", flags->tol_eq, "Market-clearing tolerance");
  cmd->add_option("--tol-kkt", flags->tol_kkt, "Certificate tolerance");
}

int run_solve(const std::string& instance_path, const SolveFlags& flags,
              const std::string& out_path) {
  mclear::MarketInstance inst = mclear::load_instance_file(instance_path);
  const mclear::ValidationReport validation = mclear::validate_instance(inst);
  if (!validation.ok()) {
    for (const auto& issue : validation.issues) {
      if (issue.severity == mclear::Severity::kError) {
        std::cerr << "error: " << issue.bidder_id << ": " << issue.message
                  << "\n";
      }
    }
    return kExitInput;
  }

  const mclear::SearchOptions opts = flags.options();
  const auto start = std::chrono::steady_clock::now();
  const mclear::SearchResult result = mclear::solve_market(inst, opts);
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();

  const mclear::RunReport report =
      mclear::build_run_report(inst, result, opts.mode, ms, opts.tol);
  write_output(mclear::report_to_json(report), out_path);

  if (!result.feasible()) return kExitInfeasible;
  if (!report.certified && !report.has_linear_mode) return kExitCertificate;
  return kExitOk;
}

std::vector<double> baseline_for(double baseline_demand,
                                 const mclear::SearchOptions& opts) {
  if (baseline_demand == 55.0) return mclear::baseline_dispatch();
  const mclear::MarketInstance base = mclear::scarf_base(baseline_demand);
  const mclear::SearchResult res = mclear::enumerate_solve(base, opts);
  if (!res.feasible()) {
    throw mclear::SchemaError("--baseline-demand", "no feasible dispatch");
  }
  return res.solution.x;
}

int run_scarf(double demand, double r1, double r2, double baseline_demand,
              const SolveFlags& flags, const std::string& out_path) {
  if (r1 < 0.0 || r2 < 0.0) {
    std::cerr << "error: --r1/--r2 must be nonnegative\n";
    return kExitInput;
  }
  mclear::MarketInstance inst;
  if (r1 == 0.0 && r2 == 0.0) {
    inst = mclear::scarf_base(demand);
  } else {
    const std::vector<double> x0 =
        baseline_for(baseline_demand, flags.options());
    inst = mclear::scarf_ramped(demand, r1, r2, x0);
  }
  write_output(mclear::instance_to_json(inst), out_path);
  return kExitOk;
}

struct DemandRange {
  double lo = 0.0, hi = 0.0, step = 1.0;
};

DemandRange parse_range(const std::string& text) {
  DemandRange range;
  char colon1 = 0, colon2 = 0;
  std::istringstream in(text);
  if (!(in >> range.lo >> colon1 >> range.hi >> colon2 >> range.step) ||
      colon1 != ':' || colon2 != ':' || range.step <= 0.0 ||
      range.hi < range.lo) {
    throw mclear::SchemaError("--demands", "expected lo:hi:step with step > 0");
  }
  return range;
}

int run_sweep(const std::string& demands, double r1, double r2,
              double baseline_demand, const std::string& format,
              const std::string& grouping_name, const SolveFlags& flags,
              const std::string& out_path) {
  if (r1 < 0.0 || r2 < 0.0) {
    std::cerr << "error: --r1/--r2 must be nonnegative\n";
    return kExitInput;
  }
  const DemandRange range = parse_range(demands);
  const mclear::SearchOptions opts = flags.options();
  const mclear::Grouping grouping = grouping_name == "saturation"
                                        ? mclear::Grouping::kSaturation
                                        : mclear::Grouping::kReference;
  const std::vector<double> x0 = baseline_for(baseline_demand, opts);

  static const char* kColumns[] = {
      "demand",          "t1_partial_count", "t1_partial_output",
      "t1_full_count",   "t1_full_output",   "t2_partial_count",
      "t2_partial_output", "t2_full_count",  "t2_full_output",
      "ramp_cost",       "total_cost",       "unit_price",
      "t1_price_partial", "t1_price_full_closed", "t2_price_partial",
      "t2_price_full_closed"};

  std::vector<mclear::ScarfRow> rows;
  for (double d = range.lo; d <= range.hi + 1e-9; d += range.step) {
    const mclear::MarketInstance inst =
        (r1 == 0.0 && r2 == 0.0) ? mclear::scarf_base(d)
                                 : mclear::scarf_ramped(d, r1, r2, x0);
    const mclear::SearchResult res = mclear::solve_market(inst, opts);
    if (!res.feasible()) return kExitInfeasible;
    const mclear::DualCertificate cert =
        mclear::recover_duals(inst, res.z_star, res.solution, res.p0, opts.tol);
    rows.push_back(mclear::build_scarf_row(inst, res, cert, grouping));
  }

  const auto row_values = [](const mclear::ScarfRow& row) {
    return std::vector<double>{
        row.demand,
        static_cast<double>(row.type1.partial_count),
        row.type1.partial_output,
        static_cast<double>(row.type1.full_count),
        row.type1.full_output,
        static_cast<double>(row.type2.partial_count),
        row.type2.partial_output,
        static_cast<double>(row.type2.full_count),
        row.type2.full_output,
        row.ramp_cost,
        row.total_cost,
        row.unit_price,
        row.price1_partial,
        row.price1_full_closed,
        row.price2_partial,
        row.price2_full_closed};
  };

  std::ostringstream out;
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) {
      nlohmann::json obj;
      const auto values = row_values(row);
      for (std::size_t i = 0; i < values.size(); ++i) {
        obj[kColumns[i]] = values[i];
      }
      arr.push_back(std::move(obj));
    }
    out << arr.dump(2);
  } else {
    for (std::size_t i = 0; i < std::size(kColumns); ++i) {
      out << (i ? "," : "") << kColumns[i];
    }
    out << "\n";
    for (const auto& row : rows) {
      const auto values = row_values(row);
      for (std::size_t i = 0; i < values.size(); ++i) {
        out << (i ? "," : "") << fmt17(values[i]);
      }
      out << "\n";
    }
  }
  std::string text = out.str();
  if (!text.empty() && text.back() == '\n') text.pop_back();
  write_output(text, out_path);
  return kExitOk;
}

int run_verify_report(const std::string& report_path, const SolveFlags& flags) {
  std::ifstream in(report_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open " << report_path << "\n";
    return kExitInput;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const mclear::RunReport report = mclear::parse_report_json(buf.str());
  mclear::Tolerances tol;
  tol.p = flags.tol_p;
  tol.eq = flags.tol_eq;
  tol.kkt = flags.tol_kkt;
  const mclear::ReportVerification verdict = mclear::verify_report(report, tol);
  if (verdict.pass) {
    std::cout << "verify: pass (kkt max residual "
              << fmt17(verdict.kkt.max_residual) << ", gap "
              << fmt17(verdict.gap.relative_gap) << ", max uplift "
              << fmt17(verdict.equilibrium.max_uplift) << ")\n";
    return kExitOk;
  }
  std::cout << "verify: FAIL\n";
  for (const std::string& failure : verdict.failures) {
    std::cout << "  " << failure << "\n";
  }
  return kExitCertificate;
}

int run_verify_oracle(std::uint64_t seed, int count, const SolveFlags& flags) {
  std::mt19937_64 rng(seed);
  mclear::InstanceGenOptions gen;
  const mclear::SearchOptions opts = flags.options();
  mclear::SearchOptions bnb_opts = opts;
  bnb_opts.mode = mclear::SearchMode::kBranchAndBound;

  int agree = 0;
  std::vector<std::string> failures;
  for (int i = 0; i < count; ++i) {
    const mclear::MarketInstance inst = mclear::random_instance(rng, gen);
    const mclear::SearchResult ex = mclear::enumerate_solve(inst, opts);
    const mclear::OracleResult oracle = mclear::oracle_solve(inst, 1e-6);
    const mclear::SearchResult bnb = mclear::branch_and_bound(inst, bnb_opts);

    bool ok = ex.feasible() == (oracle.status == mclear::SolveStatus::kOptimal);
    if (ok && ex.feasible()) {
      const double scale = 1.0 + std::abs(ex.solution.objective);
      ok = std::abs(ex.solution.objective - oracle.objective) <= 1e-6 * scale &&
           bnb.feasible() &&
           std::abs(ex.solution.objective - bnb.solution.objective) <=
               1e-9 * scale &&
           bnb.z_star == ex.z_star;
    }
    if (ok) {
      ++agree;
    } else if (failures.size() < 10) {
      failures.push_back("instance " + std::to_string(i) +
                         " (digest " + mclear::instance_digest(inst) + ")");
    }
  }
  std::cout << agree << "/" << count << " agree\n";
  for (const std::string& failure : failures) {
    std::cout << "  mismatch: " << failure << "\n";
  }
  return agree == count ? kExitOk : kExitCertificate;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"market clearing with commitments and quadratic ramping costs"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an instance file");
  std::string instance_path, solve_out;
  SolveFlags solve_flags;
  solve->add_option("--instance", instance_path, "Instance JSON path")
      ->required();
  solve->add_option("--out", solve_out, "Write the run report here");
  add_solve_flags(solve, &solve_flags);

  // scarf
  auto* scarf = app.add_subcommand("scarf", "Emit a benchmark instance");
  double demand = 60.0, r1 = 0.0, r2 = 0.0, baseline_demand = 55.0;
  std::string scarf_out;
  SolveFlags scarf_flags;
  scarf->add_option("--demand", demand, "Market demand")->required();
  scarf->add_option("--r1", r1, "Type-1 deviation cost");
  scarf->add_option("--r2", r2, "Type-2 deviation cost");
  scarf->add_option("--baseline-demand", baseline_demand,
                    "Demand defining the reference dispatch x0");
  scarf->add_option("--out", scarf_out, "Write the instance here");
  add_solve_flags(scarf, &scarf_flags);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Solve a demand range");
  std::string demands, sweep_format = "csv", sweep_out,
              grouping_name = "reference";
  double s_r1 = 0.0, s_r2 = 0.0, s_baseline = 55.0;
  SolveFlags sweep_flags;
  sweep->add_option("--demands", demands, "Range lo:hi:step")->required();
  sweep->add_option("--r1", s_r1, "Type-1 deviation cost");
  sweep->add_option("--r2", s_r2, "Type-2 deviation cost");
  sweep->add_option("--baseline-demand", s_baseline,
                    "Demand defining the reference dispatch x0");
  sweep->add_option("--format", sweep_format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--grouping", grouping_name,
                    "Partial/Full split: by reference output or saturation")
      ->check(CLI::IsMember({"reference", "saturation"}));
  sweep->add_option("--out", sweep_out, "Write the table here");
  add_solve_flags(sweep, &sweep_flags);

  // verify
  auto* verify = app.add_subcommand("verify", "Re-check a report or fuzz");
  std::string report_path;
  bool use_oracle = false;
  std::uint64_t seed = 1;
  int count = 100;
  SolveFlags verify_flags;
  verify->add_option("report", report_path, "Run-report JSON path");
  verify->add_flag("--oracle", use_oracle,
                   "Fuzz random instances against the oracle solver");
  verify->add_option("--seed", seed, "Fuzz seed");
  verify->add_option("--count", count, "Number of fuzz instances");
  add_solve_flags(verify, &verify_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return run_solve(instance_path, solve_flags, solve_out);
    if (*scarf) {
      return run_scarf(demand, r1, r2, baseline_demand, scarf_flags,
                       scarf_out);
    }
    if (*sweep) {
      return run_sweep(demands, s_r1, s_r2, s_baseline, sweep_format,
                       grouping_name, sweep_flags, sweep_out);
    }
    if (*verify) {
      if (use_oracle) return run_verify_oracle(seed, count, verify_flags);
      if (report_path.empty()) {
        std::cerr << "error: give a report path or --oracle\n";
        return kExitInput;
      }
      return run_verify_report(report_path, verify_flags);
    }
  } catch (const mclear::SchemaError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "fatal: %s\n", e.what());
    return kExitInput;
  }
}
