#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ibp/bb_solver.hpp"
#include "ibp/response.hpp"
#include "ibp/scenario.hpp"

namespace ibp {

struct SolverSummary {
  std::string status = "none";  // SolveStatus name, "oracle" or "error"
  double value = 0.0;
  double bound = 0.0;
  double gap = 0.0;
  long nodes = 0;
  long lps = 0;
  double seconds = 0.0;
  std::string message;  // error text for failed grid points
};

SolverSummary summarize(const SolveOutcome& outcome);

/// Flat-tariff figures the reductions are measured against.
struct ReferenceFigures {
  double flat_price = 0.0;
  double peak = 0.0;
  double par = 0.0;
  double utility_cost = 0.0;
  double consumer_bill = 0.0;
};

struct SolutionReport {
  std::string label;
  bool has_solution = false;
  double xi = 0.0;
  int blocks = 0;
  PriceStructure prices;
  DemandResponse response;

  double peak = 0.0;
  double par = 0.0;
  double utility_cost = 0.0;
  double consumer_bill = 0.0;  // equals utility revenue
  double consumer_total_cost = 0.0;
  std::vector<double> cluster_bill;  // per household, for the baseline profile

  double par_reduction_pct = 0.0;
  double utility_cost_reduction_pct = 0.0;
  double consumer_bill_reduction_pct = 0.0;
  double consumer_total_cost_reduction_pct = 0.0;

  SolverSummary solver;
  ReferenceFigures reference;
};

ReferenceFigures reference_figures(const ScenarioConfig& cfg);

/// Evaluation metrics of `response` under `prices`, with the flat tariff
/// recomputed from `cfg` as reference.
SolutionReport metrics(const ScenarioConfig& cfg, const PriceStructure& prices,
                       const DemandResponse& response);

/// Coupling-row slacks re-evaluated from raw quantities.
struct Certification {
  double revenue_slack = 0.0;     // revenue - r * wholesale cost
  double min_bill_slack = 0.0;    // min over clusters of flat bill - ladder bill
  bool passes(double tol) const { return revenue_slack >= -tol && min_bill_slack >= -tol; }
};

Certification certify(const ScenarioConfig& cfg, const PriceStructure& prices,
                      const DemandResponse& response);

/// Per-(t, c) attainable demand bounds and their n-weighted aggregates.
struct Envelopes {
  std::vector<double> lower;  // [c * T + t]
  std::vector<double> upper;
  std::vector<double> aggregate_lower;  // [t]
  std::vector<double> aggregate_upper;
};

void emit_sweep_csv(const std::vector<SolutionReport>& reports, std::ostream& out);
void emit_sweep_csv_file(const std::vector<SolutionReport>& reports, const std::string& path);

void emit_profiles(const ScenarioConfig& cfg, const DemandResponse& response,
                   const std::optional<Envelopes>& envelopes, std::ostream& out);
void emit_profiles_file(const ScenarioConfig& cfg, const DemandResponse& response,
                        const std::optional<Envelopes>& envelopes, const std::string& path);

/// JSON run summary: scenario label, flat price, baseline PAR and the report
/// with the lowest PAR. Timing is included only when requested.
void emit_summary(const ScenarioConfig& cfg, const std::vector<SolutionReport>& reports,
                  std::ostream& out, bool include_time = false);

/// Number formatting shared by every emitted file.
std::string format_number(double v);
std::string format_percent(double v);

}  // namespace ibp
