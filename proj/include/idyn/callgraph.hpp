#ifndef IDYN_CALLGRAPH_HPP
#define IDYN_CALLGRAPH_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "idyn/common.hpp"

namespace idyn {

// One scrape of the bidirectional counters for a (source, dest) stream.
// sent/received are cumulative totals, monotone within one counter epoch.
struct TrafficSample {
  double timestamp_s = 0.0;
  std::string source_ms;  // upstream service
  std::string dest_ms;    // downstream service
  double sent_bytes_total = 0.0;
  double received_bytes_total = 0.0;
  std::string ns;         // destination service namespace ("" when unknown)
};

// Upstream-downstream pair with its averaged bidirectional rate.
struct StressElement {
  std::string um;
  std::string dm;
  double stress_bps = 0.0;  // (delta_sent + delta_received) / (2 * window)
  double window_s = 0.0;
};

struct CallGraph {
  std::set<std::string> nodes;
  std::map<std::pair<std::string, std::string>, double> edges;  // (um,dm) -> bytes/s

  bool operator==(const CallGraph&) const = default;
};

// Counter delta across the window ending at the stream's latest sample,
// folded per the stress definition. Counter resets are absorbed by falling
// back to the latest monotone segment of the stream. Throws ValidationError
// when fewer than 2 usable samples span the window.
StressElement stress(const std::string& um, const std::string& dm,
                     const std::vector<TrafficSample>& samples, double window_s);

// Nodes are every service seen in the namespace; an edge exists for each
// ordered pair whose stress over the window is positive. Pairs with no
// usable window contribute no edge. `ns` empty selects all samples.
CallGraph build_call_graph(const std::string& ns,
                           const std::vector<TrafficSample>& samples,
                           double window_s);

// Maps metric family / label names onto TrafficSample fields. The defaults
// follow the Istio conventions; other mesh versions can rebind them.
struct ExpositionLabels {
  std::string sent_family = "istio_tcp_sent_bytes_total";
  std::string received_family = "istio_tcp_received_bytes_total";
  std::string source_label = "source_workload";
  std::string dest_label = "destination_workload";
  std::string namespace_label = "destination_service_namespace";
};

struct ParseIssue {
  int line = 0;
  std::string message;
};

// Lenient text-exposition parser: malformed lines are reported per line
// number and skipped; unknown families are ignored. Timestamps follow the
// exposition convention (integer milliseconds) and are converted to seconds.
std::vector<TrafficSample> parse_exposition(const std::string& text,
                                            std::vector<ParseIssue>* issues = nullptr,
                                            const ExpositionLabels& labels = {});

// CSV with header ts,src,dst,sent_total,recv_total.
std::vector<TrafficSample> parse_traffic_csv(const std::string& text);
std::string traffic_to_csv(const std::vector<TrafficSample>& samples);

struct WeightChange {
  std::string um;
  std::string dm;
  double before = 0.0;
  double after = 0.0;
};

// Minimal delta turning one graph into another.
struct GraphDelta {
  std::vector<std::string> added_nodes;
  std::vector<std::string> removed_nodes;
  std::vector<StressElement> added_edges;
  std::vector<StressElement> removed_edges;
  std::vector<WeightChange> weight_changes;

  bool empty() const {
    return added_nodes.empty() && removed_nodes.empty() && added_edges.empty() &&
           removed_edges.empty() && weight_changes.empty();
  }
};

GraphDelta graph_diff(const CallGraph& g1, const CallGraph& g2);
CallGraph apply_delta(const CallGraph& g, const GraphDelta& delta);

// {"nodes":[...],"edges":[{"um":..,"dm":..,"stress_bps":..}]}
std::string call_graph_to_json(const CallGraph& g);
CallGraph call_graph_from_json(const std::string& text);
std::string call_graph_to_dot(const CallGraph& g);
std::string graph_delta_to_json(const GraphDelta& d);

}  // namespace idyn

#endif  // IDYN_CALLGRAPH_HPP
