#ifndef IDYN_WORKLOAD_HPP
#define IDYN_WORKLOAD_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "idyn/common.hpp"

namespace idyn {

enum class InvocationMode { Sequential, Parallel };

struct TemplateEdge {
  std::string parent;
  std::string child;
  long request_bytes = 0;
  long response_bytes = 0;
  InvocationMode mode = InvocationMode::Parallel;
};

// Per-request execution shape: a DAG of calls rooted at `entry`, plus the
// deterministic processing cost of each service.
struct CallGraphTemplate {
  std::string name;
  std::string entry;
  std::vector<TemplateEdge> edges;
  std::map<std::string, double> processing_ms;

  std::vector<std::string> services() const;
  // Throws ValidationError unless edges form a DAG reachable from entry.
  void validate() const;
  // End-to-end processing time with a free network (parallel = max of
  // children, sequential = chained).
  double critical_path_ms() const;
};

struct WorkloadPhase {
  double duration_s = 0.0;
  double qps = 0.0;
  std::map<std::string, double> mix;  // template name -> weight, sums to 1
};

enum class ArrivalLaw { Deterministic, Poisson };

struct RequestEvent {
  double arrival_s = 0.0;
  std::string type;
  std::uint64_t id = 0;
};

// Open-loop arrivals. The deterministic law spaces events exactly 1/qps
// apart (floor(qps*duration) per phase); poisson draws exponential gaps at
// rate qps. Types are drawn from the phase mix. Pure in (phases, law, seed).
std::vector<RequestEvent> generate_arrivals(const std::vector<WorkloadPhase>& phases,
                                            ArrivalLaw law, std::uint64_t seed);

// Three request shapes patterned on the social-network benchmark (one
// write-heavy fan-out plus two read paths of differing depth). The write
// path carries a storage edge ~60x heavier than its light edges.
std::map<std::string, CallGraphTemplate> builtin_templates();

// Expands the "mixed" alias to an equal-weight mix of the builtin types.
std::map<std::string, double> expand_mix(const std::map<std::string, double>& mix,
                                         const std::map<std::string, CallGraphTemplate>& templates);

std::string arrivals_to_csv(const std::vector<RequestEvent>& events);
std::vector<RequestEvent> arrivals_from_csv(const std::string& text);

}  // namespace idyn

#endif  // IDYN_WORKLOAD_HPP
