#ifndef IDYN_POLICY_HPP
#define IDYN_POLICY_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "idyn/callgraph.hpp"
#include "idyn/cluster.hpp"
#include "idyn/sim.hpp"

namespace idyn {

// Immutable snapshot handed to policies.
struct ClusterView {
  const std::vector<NodeInfo>* nodes = nullptr;
  const std::vector<PodInfo>* pods = nullptr;
  const DelayMatrix* delays = nullptr;
  const BandwidthMatrix* bandwidths = nullptr;
  Placement placement;
};

// Contract every scheduling policy implements. update_metrics is invoked by
// the rescheduling loop before each batch; implementations refresh whatever
// internal state their decisions depend on.
class AbstractSchedulingPolicy {
 public:
  virtual ~AbstractSchedulingPolicy() = default;
  virtual std::string name() const = 0;

  virtual void update_metrics(const CallGraph& callgraph, const DelayMatrix& delays,
                              const BandwidthMatrix& bandwidths,
                              const RunMetrics& metrics) = 0;
  virtual std::optional<SchedulingDecision> schedule_pod(const PodInfo& pod,
                                                         const ClusterView& view) = 0;
  virtual std::vector<SchedulingDecision> schedule_batch(const std::vector<PodInfo>& pods,
                                                         const ClusterView& view) = 0;
};

struct PolicyParams {
  int top_k_pairs = 5;              // latency-aware critical pair count
  double stress_percentile = 90.0;  // bandwidth-aware edge cutoff
};

// Policy 1: greedy co-location of high-stress pairs, heaviest edge first.
std::vector<SchedulingDecision> policy_callgraph_aware(const CallGraph& callgraph,
                                                       const ClusterView& view);

// Policy 2: top-k stress pairs onto the node pair with minimal round-trip
// delay; co-location wins ties.
std::vector<SchedulingDecision> policy_latency_aware(const DelayMatrix& delays,
                                                     const CallGraph& callgraph,
                                                     const ClusterView& view,
                                                     int top_k = 5);

// Policy 3: edges above the stress percentile onto the node pair maximizing
// min(bw(a,b), bw(b,a)), co-locating when capacity allows.
std::vector<SchedulingDecision> policy_bandwidth_aware(const BandwidthMatrix& bandwidths,
                                                       const CallGraph& callgraph,
                                                       const ClusterView& view,
                                                       double percentile = 90.0);

// Service-node mapping cost: sum over edges of stress * round-trip delay.
double mapping_cost(const CallGraph& callgraph, const DelayMatrix& delays,
                    const std::map<std::string, NodeId>& mapping);

struct MappingResult {
  std::map<std::string, NodeId> mapping;
  double cost = 0.0;
};

// Policy 4 solver: greedy heaviest-edge seeding plus relocate/swap local
// search to a local optimum. Deterministic: ties break toward the lowest
// node index, then lexicographic service name. Throws ValidationError when
// total requests exceed total capacity.
MappingResult solve_service_mapping(const CallGraph& callgraph, const DelayMatrix& delays,
                                    const ClusterView& view);

std::vector<SchedulingDecision> policy_hybrid(const CallGraph& callgraph,
                                              const DelayMatrix& delays,
                                              const ClusterView& view);

// Exhaustive oracle for the mapping problem; service count capped by limit.
MappingResult brute_force_mapping(const CallGraph& callgraph, const DelayMatrix& delays,
                                  const ClusterView& view, int limit = 10);

struct DecisionFilter {
  int max_moves_per_event = 5;
  double cooldown_s = 60.0;  // per replica
  bool require_feasible = true;
};

// Replica -> last applied move time.
using MoveHistory = std::map<ReplicaId, double>;

// Drops cooldown violators, truncates to max_moves_per_event, and (when
// require_feasible) drops moves whose cumulative application would break
// capacity. Output is an order-stable subsequence of the input.
std::vector<SchedulingDecision> filter_decisions(const std::vector<SchedulingDecision>& queue,
                                                 const DecisionFilter& filter,
                                                 const ClusterView& view,
                                                 const MoveHistory& history);

// Named policy registry: callgraph | latency | bandwidth | hybrid | spread.
// "spread" never emits decisions (the no-reschedule baseline).
std::unique_ptr<AbstractSchedulingPolicy> make_policy(const std::string& name,
                                                      const PolicyParams& params = {});

struct LoopEvent {
  int window = 0;
  double t_s = 0.0;
  std::string trigger;  // e.g. "avg 168.6 > 150"
  int proposed = 0;
  int accepted = 0;
  int applied = 0;
  std::vector<SchedulingDecision> decisions;
};

struct LoopOptions {
  SlaTarget sla;
  DecisionFilter filter;
  double trigger_cooldown_s = 60.0;
};

struct LoopResult {
  RunMetrics metrics;
  std::vector<LoopEvent> events;
  Placement final_placement;
};

// SLA-triggered rescheduling over a full scenario run: after each closed
// window, a violation (re)invokes the policy, filters its decisions, applies
// them, and resumes the simulation from the current state.
LoopResult rescheduling_loop(AbstractSchedulingPolicy& policy, const SimConfig& config,
                             const LoopOptions& options);

std::string loop_events_to_jsonl(const std::vector<LoopEvent>& events);

}  // namespace idyn

#endif  // IDYN_POLICY_HPP
