#ifndef IDYN_SIM_HPP
#define IDYN_SIM_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "idyn/callgraph.hpp"
#include "idyn/cluster.hpp"
#include "idyn/workload.hpp"

namespace idyn {

struct SimConfig {
  ClusterState cluster;
  std::vector<PodInfo> pods;
  std::map<std::string, CallGraphTemplate> templates;
  std::vector<RequestEvent> arrivals;
  double per_hop_overhead_ms = 0.0;  // sidecar proxy cost for co-located hops
  double horizon_s = 0.0;
  double window_s = 10.0;
};

struct RequestRecord {
  std::uint64_t id = 0;
  std::string type;
  double arrival_s = 0.0;
  double end_s = 0.0;
  double response_ms = 0.0;
};

struct WindowStats {
  double start_s = 0.0;
  double avg_ms = 0.0;
  double p99_ms = 0.0;    // nearest-rank over the window's completions
  double stdev_ms = 0.0;  // population
  long count = 0;
};

// One byte-accounting entry, recorded when an edge's reply arrives.
struct TrafficIncrement {
  double t_s = 0.0;
  std::string um;
  std::string dm;
  long sent_bytes = 0;  // request direction
  long recv_bytes = 0;  // response direction
};

struct RunMetrics {
  std::vector<RequestRecord> requests;  // completed only, by completion time
  std::vector<WindowStats> windows;     // tile [0, horizon), keyed by completion
  std::vector<TrafficIncrement> traffic;
  std::map<std::pair<std::string, std::string>, std::pair<long, long>> edge_totals;
  long dropped_incomplete = 0;  // in flight at horizon
  long truncated_arrivals = 0;  // arrivals past the horizon
  double horizon_s = 0.0;
  double window_s = 10.0;
};

// Deterministic single-run execution. Throws ValidationError before
// starting if any referenced service has no placed replica.
RunMetrics simulate(const SimConfig& config);

// Cumulative per-(um,dm) counters sampled every window_s, compatible with
// call-graph ingestion.
std::vector<TrafficSample> traffic_export(const RunMetrics& metrics, double window_s);

struct SlaTarget {
  std::string metric = "avg";  // "avg" or "p99"
  double threshold_ms = 150.0;
};

struct SlaFlag {
  int window = 0;
  bool violated = false;
};

// Per-window violation flags; a window violates iff its metric strictly
// exceeds the threshold. Empty windows never violate.
std::vector<SlaFlag> sla_series(const RunMetrics& metrics, const SlaTarget& sla);
bool window_violates(const WindowStats& w, const SlaTarget& sla);

// Stepped execution for the rescheduling loop: run window by window,
// optionally swapping the placement between windows. A moved replica keeps
// its queued work; only subsequent network legs see the new node.
class SimEngine {
 public:
  explicit SimEngine(SimConfig config);
  ~SimEngine();
  SimEngine(SimEngine&&) noexcept;
  SimEngine& operator=(SimEngine&&) noexcept;

  void run_until(double t_s);
  RunMetrics finish();  // runs to the horizon and closes all windows

  void set_placement(const Placement& placement);
  const Placement& placement() const;
  double now_s() const;

  // Stats for one closed window (completions with start_s <= end < start_s + w).
  WindowStats window_stats(int index) const;
  // Cumulative-counter samples at from_s and to_s for every stream seen so far.
  std::vector<TrafficSample> window_traffic(double from_s, double to_s) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::string windows_to_csv(const RunMetrics& metrics, const std::vector<SlaFlag>& flags);
std::string requests_to_csv(const RunMetrics& metrics);

}  // namespace idyn

#endif  // IDYN_SIM_HPP
