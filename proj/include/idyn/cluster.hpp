#ifndef IDYN_CLUSTER_HPP
#define IDYN_CLUSTER_HPP

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "idyn/common.hpp"
#include "idyn/net_dynamics.hpp"

namespace idyn {

// Dense node index, 0..N-1. Display names live in NodeInfo.
using NodeId = int;

enum class NodeRole { Cloud, Edge };

struct NodeInfo {
  NodeId id = 0;
  std::string name;       // unique, e.g. "k8s-worker-1"
  long cpu_m = 4000;      // millicores
  long mem_mib = 32768;   // MiB
  NodeRole role = NodeRole::Edge;
};

// One placeable unit: replica `ordinal` of service `service`.
struct ReplicaId {
  std::string service;
  int ordinal = 0;

  auto operator<=>(const ReplicaId&) const = default;
  std::string str() const { return service + "." + std::to_string(ordinal); }
};

// Scheduling view of a pod, per replica.
struct PodInfo {
  std::string service;
  int replica = 0;
  long cpu_request_m = 0;
  long cpu_limit_m = 0;
  long mem_request_mib = 0;
  long mem_limit_mib = 0;

  ReplicaId id() const { return ReplicaId{service, replica}; }
};

struct Placement {
  std::map<ReplicaId, NodeId> assignments;

  bool operator==(const Placement&) const = default;
};

struct SchedulingDecision {
  ReplicaId replica;
  NodeId target = 0;
  std::string reason;
  double issued_at_s = 0.0;
};

struct ClusterState {
  std::vector<NodeInfo> nodes;
  DelayMatrix delays;
  BandwidthMatrix bandwidths;
  Placement placement;
};

// Free CPU/memory per node under a placement. Throws ValidationError on an
// unknown node or a replica whose service has no PodInfo entry.
struct NodeUsage {
  long cpu_m = 0;
  long mem_mib = 0;
};
std::vector<NodeUsage> node_usage(const Placement& placement,
                                  const std::vector<NodeInfo>& nodes,
                                  const std::vector<PodInfo>& pods);

// True iff every node's summed requests fit its capacities.
bool feasible(const Placement& placement, const std::vector<NodeInfo>& nodes,
              const std::vector<PodInfo>& pods);

// Applies replica moves and returns the new state. Rejects atomically
// (ValidationError listing the offending nodes) if the result is infeasible.
// A move targeting the replica's current node is a no-op.
ClusterState apply_decisions(const ClusterState& state,
                             const std::vector<SchedulingDecision>& decisions,
                             const std::vector<PodInfo>& pods);

// Capacity-aware round-robin assignment, the stand-in for the default
// orchestrator scheduler. Replicas are placed in (service, ordinal) order.
Placement spread_placement(const std::vector<NodeInfo>& nodes,
                           const std::vector<PodInfo>& pods);

// {"nodes":[{"name":...,"cpu_m":...,"mem_mib":...,"role":...},...]}
std::vector<NodeInfo> parse_cluster_json(const std::string& text);
std::string cluster_to_json(const std::vector<NodeInfo>& nodes);

}  // namespace idyn

#endif  // IDYN_CLUSTER_HPP
