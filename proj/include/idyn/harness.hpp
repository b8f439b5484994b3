#ifndef IDYN_HARNESS_HPP
#define IDYN_HARNESS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "idyn/policy.hpp"
#include "idyn/sim.hpp"

namespace idyn {

struct NetworkSpec {
  double bl_ms = 3.0;
  double mal_ms = 40.0;
  double min_bw_mbit = 200.0;
  double max_bw_mbit = 800.0;
  std::uint64_t delay_seed = 42;
  std::uint64_t bw_seed = 43;
  double refresh_period_s = 0.0;  // 0 = static matrices
  std::string interface = "eth0";
};

struct PolicySpec {
  std::string name = "spread";
  DecisionFilter filter;
  double trigger_cooldown_s = 60.0;
  PolicyParams params;
};

// Full scenario description; the JSON schema is documented in the README.
struct ScenarioSpec {
  std::vector<NodeInfo> nodes;
  std::vector<PodInfo> pods;
  std::map<std::string, CallGraphTemplate> templates;
  std::vector<WorkloadPhase> phases;
  ArrivalLaw arrival_law = ArrivalLaw::Deterministic;
  std::uint64_t arrival_seed = 7;
  NetworkSpec network;
  PolicySpec policy;
  SlaTarget sla;
  double window_s = 10.0;
  double per_hop_overhead_ms = 0.0;
  std::optional<double> horizon_s;
  std::map<int, std::string> node_ips;  // defaults to 10.0.0.(i+1)
  std::string out_dir = "out";
};

ScenarioSpec load_scenario(const std::string& path);
ScenarioSpec parse_scenario_json(const std::string& text, const std::string& base_dir);

struct RunOutput {
  RunMetrics metrics;
  std::vector<LoopEvent> events;
  std::vector<SlaFlag> sla_flags;
  Placement initial_placement;
  Placement final_placement;
  std::string out_dir;
  std::uint64_t arrivals_hash = 0;
};

// Executes the full loop for spec.policy and writes every artifact
// (matrices, tc scripts, arrivals, metrics CSVs, event log, report) under
// the output directory. The IDYN_OUT environment variable overrides
// spec.out_dir.
RunOutput run_scenario(const ScenarioSpec& spec);

// Same run without touching the filesystem (used by compare and tests).
RunOutput run_scenario_in_memory(const ScenarioSpec& spec,
                                 const std::string& policy_name);

struct PolicySummary {
  std::string policy;
  std::vector<WindowStats> windows;
  std::vector<SlaFlag> flags;
  double mean_avg_ms = 0.0;
  double mean_p99_ms = 0.0;
  int violation_windows = 0;
};

struct ComparisonReport {
  std::uint64_t arrivals_hash = 0;
  std::vector<PolicySummary> runs;  // runs[0] is the baseline
  // headline deltas vs. the baseline, keyed by policy name
  std::map<std::string, double> avg_improvement_pct;
  std::map<std::string, double> p99_improvement_pct;
};

// Runs the baseline plus each policy on identical arrivals and matrices.
ComparisonReport compare(const ScenarioSpec& spec, const std::vector<std::string>& policies);

std::string comparison_to_json(const ComparisonReport& report);

}  // namespace idyn

#endif  // IDYN_HARNESS_HPP
