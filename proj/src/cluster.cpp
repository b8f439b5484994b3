#include "idyn/cluster.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

namespace idyn {

namespace {

std::map<std::string, const PodInfo*> pods_by_replica(const std::vector<PodInfo>& pods) {
  std::map<std::string, const PodInfo*> out;
  for (const auto& p : pods) out[p.id().str()] = &p;
  return out;
}

}  // namespace

std::vector<NodeUsage> node_usage(const Placement& placement,
                                  const std::vector<NodeInfo>& nodes,
                                  const std::vector<PodInfo>& pods) {
  std::vector<NodeUsage> usage(nodes.size());
  auto by_replica = pods_by_replica(pods);
  for (const auto& [replica, node] : placement.assignments) {
    if (node < 0 || node >= static_cast<NodeId>(nodes.size()))
      throw ValidationError("placement references unknown node index " +
                            std::to_string(node) + " for replica " + replica.str());
    auto it = by_replica.find(replica.str());
    if (it == by_replica.end())
      throw ValidationError("no PodInfo for replica " + replica.str());
    usage[node].cpu_m += it->second->cpu_request_m;
    usage[node].mem_mib += it->second->mem_request_mib;
  }
  return usage;
}

bool feasible(const Placement& placement, const std::vector<NodeInfo>& nodes,
              const std::vector<PodInfo>& pods) {
  auto usage = node_usage(placement, nodes, pods);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (usage[i].cpu_m > nodes[i].cpu_m || usage[i].mem_mib > nodes[i].mem_mib)
      return false;
  }
  return true;
}

ClusterState apply_decisions(const ClusterState& state,
                             const std::vector<SchedulingDecision>& decisions,
                             const std::vector<PodInfo>& pods) {
  ClusterState next = state;
  for (const auto& d : decisions) {
    if (d.target < 0 || d.target >= static_cast<NodeId>(state.nodes.size()))
      throw ValidationError("decision targets unknown node index " +
                            std::to_string(d.target));
    auto it = next.placement.assignments.find(d.replica);
    if (it == next.placement.assignments.end())
      throw ValidationError("decision moves unplaced replica " + d.replica.str());
    it->second = d.target;  // same-node moves are harmless no-ops
  }

  auto usage = node_usage(next.placement, next.nodes, pods);
  std::vector<std::string> offending;
  for (std::size_t i = 0; i < next.nodes.size(); ++i) {
    if (usage[i].cpu_m > next.nodes[i].cpu_m || usage[i].mem_mib > next.nodes[i].mem_mib)
      offending.push_back(next.nodes[i].name);
  }
  if (!offending.empty()) {
    std::ostringstream msg;
    msg << "decisions rejected, capacity exceeded on:";
    for (const auto& n : offending) msg << " " << n;
    throw ValidationError(msg.str());
  }
  return next;
}

Placement spread_placement(const std::vector<NodeInfo>& nodes,
                           const std::vector<PodInfo>& pods) {
  Placement placement;
  if (nodes.empty()) {
    if (!pods.empty()) throw ValidationError("cannot place pods on an empty cluster");
    return placement;
  }
  std::vector<PodInfo> ordered = pods;
  std::sort(ordered.begin(), ordered.end(), [](const PodInfo& a, const PodInfo& b) {
    return std::tie(a.service, a.replica) < std::tie(b.service, b.replica);
  });

  std::vector<NodeUsage> usage(nodes.size());
  std::size_t cursor = 0;
  for (const auto& pod : ordered) {
    bool placed = false;
    for (std::size_t tried = 0; tried < nodes.size(); ++tried) {
      std::size_t n = (cursor + tried) % nodes.size();
      if (usage[n].cpu_m + pod.cpu_request_m <= nodes[n].cpu_m &&
          usage[n].mem_mib + pod.mem_request_mib <= nodes[n].mem_mib) {
        placement.assignments[pod.id()] = static_cast<NodeId>(n);
        usage[n].cpu_m += pod.cpu_request_m;
        usage[n].mem_mib += pod.mem_request_mib;
        cursor = (n + 1) % nodes.size();
        placed = true;
        break;
      }
    }
    if (!placed)
      throw ValidationError("no node can host replica " + pod.id().str());
  }
  return placement;
}

std::vector<NodeInfo> parse_cluster_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("cluster file is not valid JSON: ") + e.what());
  }
  if (!j.contains("nodes") || !j["nodes"].is_array())
    throw ValidationError("cluster file: missing \"nodes\" array");

  std::vector<NodeInfo> nodes;
  std::set<std::string> names;
  for (const auto& item : j["nodes"]) {
    NodeInfo n;
    n.id = static_cast<NodeId>(nodes.size());
    if (!item.contains("name")) throw ValidationError("cluster node: missing \"name\"");
    n.name = item["name"].get<std::string>();
    n.cpu_m = item.value("cpu_m", 4000L);
    n.mem_mib = item.value("mem_mib", 32768L);
    std::string role = item.value("role", std::string("edge"));
    if (role == "cloud")
      n.role = NodeRole::Cloud;
    else if (role == "edge")
      n.role = NodeRole::Edge;
    else
      throw ValidationError("cluster node " + n.name + ": unknown role \"" + role + "\"");
    if (n.cpu_m <= 0 || n.mem_mib <= 0)
      throw ValidationError("cluster node " + n.name + ": capacities must be positive");
    if (!names.insert(n.name).second)
      throw ValidationError("cluster file: duplicate node name \"" + n.name + "\"");
    nodes.push_back(std::move(n));
  }
  return nodes;
}

std::string cluster_to_json(const std::vector<NodeInfo>& nodes) {
  nlohmann::ordered_json j;
  j["nodes"] = nlohmann::ordered_json::array();
  for (const auto& n : nodes) {
    nlohmann::ordered_json item;
    item["name"] = n.name;
    item["cpu_m"] = n.cpu_m;
    item["mem_mib"] = n.mem_mib;
    item["role"] = n.role == NodeRole::Cloud ? "cloud" : "edge";
    j["nodes"].push_back(std::move(item));
  }
  return j.dump(2) + "\n";
}

}  // namespace idyn
