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

#include "mclear/golden.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "mclear/scarf.hpp"

namespace mclear {

namespace {

constexpr double kCellTol = 0.005;  // published values are rounded to 2 dp
constexpr double kGroupTol = 1e-6;
constexpr double kQTol = 1e-7;

struct BaseRow {
  double demand;
  double units1, units2, out1, out2, total;
};

// Optimal solutions of the linear benchmark.
constexpr std::array<BaseRow, 8> kBaseRows{{
    {56, 0, 8, 0, 56, 352},
    {58, 1, 6, 16, 42, 365},
    {60, 2, 4, 32, 28, 378},
    {62, 3, 2, 48, 14, 391},
    {64, 4, 0, 64, 0, 404},
    {66, 2, 5, 31, 35, 419},
    {68, 3, 3, 47, 21, 432},
    {70, 0, 10, 0, 70, 440},
}};

struct RampedRow {
  double demand;
  double t1p_no, t1p_prod, t1f_no, t1f_prod;
  double t2p_no, t2p_prod, t2f_no, t2f_prod;
  double ramp, total;
  double unit_price;
  double p1_partial, p1_fc, p2_partial, p2_fc;
};

// r1 = r2 = 0.1.
constexpr std::array<RampedRow, 8> kRampedLow{{
    {56, 3, 45.00, 0, 0, 1, 4.00, 1, 7, 1.90, 377.90, 2.80, 53.00, 53.00, 30, 24.40},
    {58, 3, 46.50, 0, 0, 1, 4.50, 1, 7, 2.10, 383.60, 2.90, 53.00, 53.00, 30, 23.70},
    {60, 0, 0, 3, 48, 1, 5.00, 1, 7, 2.50, 389.50, 3.00, 53.00, 53.00, 30, 23.00},
    {62, 0, 0, 3, 48, 1, 7.00, 1, 7, 4.90, 395.90, 3.40, 46.60, 46.60, 30, 20.20},
    {64, 3, 47.40, 0, 0, 2, 9.60, 1, 7, 4.62, 429.02, 2.96, 53.00, 53.00, 30, 23.28},
    {66, 0, 0, 3, 48, 2, 11.00, 1, 7, 6.05, 435.05, 3.10, 51.40, 51.40, 30, 22.30},
    {68, 0, 0, 3, 48, 2, 13.00, 1, 7, 8.45, 441.45, 3.30, 48.20, 48.20, 30, 20.90},
    {70, 1, 15.00, 3, 48, 0, 0, 1, 7, 22.50, 467.50, 6.00, 53.00, 5.00, 2, 2.00},
}};

// r1 = 0.1, r2 = 0.3. The D = 64 ramp cell prints 4.62 in the source table,
// inconsistent with its own total 435.10; the self-consistent value is 8.10.
constexpr std::array<RampedRow, 8> kRampedMixed{{
    {56, 3, 47.4, 0, 0, 1, 1.6, 1, 7, 0.78, 379.18, 2.96, 53.00, 53.00, 30.00, 23.28},
    {58, 0, 0, 3, 48, 1, 3.0, 1, 7, 2.70, 385.70, 3.80, 40.20, 40.20, 30.00, 17.40},
    {60, 0, 0, 3, 48, 1, 5.0, 1, 7, 7.50, 394.50, 5.00, 21.00, 21.00, 30.00, 9.00},
    {62, 0, 0, 3, 48, 0, 0, 2, 14, 14.70, 405.70, 6.20, 1.80, 1.80, 30.00, 0.60},
    {64, 1, 9.0, 3, 48, 0, 0, 1, 7, 4.62, 435.10, 4.80, 53.00, 24.20, 10.40, 10.40},
    {66, 1, 11.0, 3, 48, 0, 0, 1, 7, 12.10, 445.10, 5.20, 53.00, 17.80, 7.60, 7.60},
    {68, 1, 13.0, 3, 48, 0, 0, 1, 7, 16.90, 455.90, 5.60, 53.00, 11.40, 4.80, 4.80},
    {70, 1, 15.0, 3, 48, 0, 0, 1, 7, 22.50, 467.50, 6.00, 53.00, 5.00, 2.00, 2.00},
}};

// r1 = r2 = 1.
constexpr std::array<RampedRow, 8> kRampedHigh{{
    {56, 0, 0, 3, 48, 1, 1, 1, 7, 1.0, 380.0, 4, 37, 37, 30, 16},
    {58, 0, 0, 3, 48, 1, 3, 1, 7, 9.0, 392.0, 8, -27, -27, 30, -12},
    {60, 0, 0, 3, 48, 1, 5, 1, 7, 25.0, 412.0, 12, -91, -91, 30, -40},
    {62, 0, 0, 3, 48, 1, 7, 1, 7, 49.0, 440.0, 16, -155, -155, 30, -68},
    {64, 0, 0, 3, 48, 2, 9, 1, 7, 40.5, 465.5, 11, -75, -75, 30, -33},
    {66, 0, 0, 3, 48, 2, 11, 1, 7, 60.5, 489.5, 13, -107, -107, 30, -47},
    {68, 0, 0, 3, 48, 2, 13, 1, 7, 84.5, 517.5, 15, -139, -139, 30, -61},
    {70, 0, 0, 3, 48, 3, 15, 1, 7, 75.0, 542.0, 12, -91, -91, 30, -40},
}};

struct TypeSlice {
  std::size_t begin, end;
  double capacity;
  double d;
};

constexpr TypeSlice kType1{0, kScarfType1Count, kScarfType1Capacity, 53.0};
constexpr TypeSlice kType2{kScarfType1Count, kScarfBidderCount,
                           kScarfType2Capacity, 30.0};

ScarfGroupCells group_cells(const MarketInstance& inst,
                            const SearchResult& result, const TypeSlice& slice,
                            Grouping grouping) {
  ScarfGroupCells cells;
  for (std::size_t k = slice.begin; k < slice.end; ++k) {
    if (!result.z_star[k]) continue;
    const double x = result.solution.x[k];
    const double x0 = inst.bidders[k].x0;
    const bool full = grouping == Grouping::kReference
                          ? (x0 > 0.0 && std::abs(x - x0) <= kGroupTol)
                          : (x >= slice.capacity - kGroupTol);
    if (full) {
      ++cells.full_count;
      cells.full_output += x;
    } else {
      ++cells.partial_count;
      cells.partial_output += x;
    }
  }
  return cells;
}

void type_prices(const SearchResult& result, const DualCertificate& cert,
                 const TypeSlice& slice, double* partial, double* full_closed) {
  bool have_partial = false, have_closed = false, have_saturated = false;
  double partial_price = slice.d, closed_price = slice.d, saturated_price = slice.d;
  for (std::size_t k = slice.begin; k < slice.end; ++k) {
    if (!result.z_star[k]) {
      if (!have_closed) {
        closed_price = cert.p[k];
        have_closed = true;
      }
    } else if (cert.q[k] <= kQTol) {
      if (!have_partial) {
        partial_price = cert.p[k];
        have_partial = true;
      }
    } else if (!have_saturated) {
      saturated_price = cert.p[k];
      have_saturated = true;
    }
  }
  const double fc = have_closed ? closed_price
                    : have_saturated ? saturated_price
                                     : partial_price;
  *full_closed = fc;
  *partial = have_partial ? partial_price : fc;
}

}  // namespace

ScarfRow build_scarf_row(const MarketInstance& inst, const SearchResult& result,
                         const DualCertificate& cert, Grouping grouping) {
  if (inst.size() != kScarfBidderCount ||
      result.z_star.size() != kScarfBidderCount) {
    throw std::invalid_argument("build_scarf_row: not a Scarf-family solve");
  }
  ScarfRow row;
  row.demand = inst.b0;
  row.type1 = group_cells(inst, result, kType1, grouping);
  row.type2 = group_cells(inst, result, kType2, grouping);
  for (std::size_t k = 0; k < inst.size(); ++k) {
    const double dev = result.solution.x[k] - inst.bidders[k].x0;
    row.ramp_cost += inst.bidders[k].r * dev * dev;
  }
  row.total_cost = result.solution.objective;
  row.unit_price = cert.p0;
  type_prices(result, cert, kType1, &row.price1_partial, &row.price1_full_closed);
  type_prices(result, cert, kType2, &row.price2_partial, &row.price2_full_closed);
  return row;
}

namespace {

void check_cell(GoldenReport* report, const std::string& table, double demand,
                const std::string& column, double published, double computed,
                bool known_deviation = false, double self_consistent = 0.0,
                const std::string& note = "") {
  GoldenCell cell{table,    demand,          column, published,
                  computed, false,           known_deviation, note};
  ++report->checked;
  if (known_deviation) {
    cell.within_tol = std::abs(computed - self_consistent) <= kCellTol;
    report->deviations.push_back(cell);
  } else {
    cell.within_tol = std::abs(computed - published) <= kCellTol;
  }
  if (!cell.within_tol) ++report->mismatched;
  report->cells.push_back(std::move(cell));
}

}  // namespace

GoldenReport run_golden_tables() {
  GoldenReport report;
  const std::vector<double> baseline = baseline_dispatch();
  SearchOptions opts;

  // Linear base case.
  for (const BaseRow& expect : kBaseRows) {
    const MarketInstance inst = scarf_base(expect.demand);
    const SearchResult res = enumerate_solve(inst, opts);
    double units1 = 0, units2 = 0, out1 = 0, out2 = 0;
    for (std::size_t k = 0; k < inst.size(); ++k) {
      if (k < kScarfType1Count) {
        units1 += res.z_star[k];
        out1 += res.solution.x[k];
      } else {
        units2 += res.z_star[k];
        out2 += res.solution.x[k];
      }
    }
    check_cell(&report, "base", expect.demand, "units1", expect.units1, units1);
    check_cell(&report, "base", expect.demand, "units2", expect.units2, units2);
    check_cell(&report, "base", expect.demand, "out1", expect.out1, out1);
    check_cell(&report, "base", expect.demand, "out2", expect.out2, out2);
    check_cell(&report, "base", expect.demand, "total", expect.total,
               res.solution.objective);
  }

  struct Regime {
    const char* name;
    double r1, r2;
    const std::array<RampedRow, 8>* rows;
    Grouping grouping;
  };
  const Regime regimes[] = {
      {"r(0.1,0.1)", 0.1, 0.1, &kRampedLow, Grouping::kReference},
      {"r(0.1,0.3)", 0.1, 0.3, &kRampedMixed, Grouping::kSaturation},
      {"r(1,1)", 1.0, 1.0, &kRampedHigh, Grouping::kReference},
  };

  for (const Regime& regime : regimes) {
    for (const RampedRow& expect : *regime.rows) {
      const MarketInstance inst =
          scarf_ramped(expect.demand, regime.r1, regime.r2, baseline);
      const SearchResult res = enumerate_solve(inst, opts);
      const DualCertificate cert =
          recover_duals(inst, res.z_star, res.solution, res.p0);
      const ScarfRow row =
          build_scarf_row(inst, res, cert, regime.grouping);

      const std::string t = regime.name;
      const double D = expect.demand;
      check_cell(&report, t, D, "t1_partial_no", expect.t1p_no,
                 row.type1.partial_count);
      check_cell(&report, t, D, "t1_partial_prod", expect.t1p_prod,
                 row.type1.partial_output);
      check_cell(&report, t, D, "t1_full_no", expect.t1f_no,
                 row.type1.full_count);
      check_cell(&report, t, D, "t1_full_prod", expect.t1f_prod,
                 row.type1.full_output);
      check_cell(&report, t, D, "t2_partial_no", expect.t2p_no,
                 row.type2.partial_count);
      check_cell(&report, t, D, "t2_partial_prod", expect.t2p_prod,
                 row.type2.partial_output);
      check_cell(&report, t, D, "t2_full_no", expect.t2f_no,
                 row.type2.full_count);
      check_cell(&report, t, D, "t2_full_prod", expect.t2f_prod,
                 row.type2.full_output);
      const bool ramp_typo = regime.r2 == 0.3 && D == 64;
      check_cell(&report, t, D, "ramp", expect.ramp, row.ramp_cost, ramp_typo,
                 8.10,
                 ramp_typo ? "published 4.62 conflicts with total 435.10; "
                             "self-consistent ramp is 8.10"
                           : "");
      check_cell(&report, t, D, "total", expect.total, row.total_cost);
      check_cell(&report, t, D, "unit_price", expect.unit_price,
                 row.unit_price);
      check_cell(&report, t, D, "p1_partial", expect.p1_partial,
                 row.price1_partial);
      check_cell(&report, t, D, "p1_full_closed", expect.p1_fc,
                 row.price1_full_closed);
      check_cell(&report, t, D, "p2_partial", expect.p2_partial,
                 row.price2_partial);
      check_cell(&report, t, D, "p2_full_closed", expect.p2_fc,
                 row.price2_full_closed);
    }
  }

  report.pass = report.mismatched == 0;
  return report;
}

}  // namespace mclear
