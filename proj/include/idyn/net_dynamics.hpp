#ifndef IDYN_NET_DYNAMICS_HPP
#define IDYN_NET_DYNAMICS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "idyn/common.hpp"

namespace idyn {

// Pairwise one-way delays in whole milliseconds. Diagonal is always 0.
// Off-diagonal entries satisfy
//   floor(0.5*bl) <= d[i][j] <= floor(1.5*(bl + mal*(N-1)/N)).
struct DelayMatrix {
  int n = 0;
  std::vector<std::vector<int>> values;
  std::uint64_t seed = 0;
  double base_latency_ms = 0.0;      // bl
  double max_added_latency_ms = 0.0; // mal

  int at(int i, int j) const { return values[i][j]; }
};

// Pairwise available bandwidth in Mbit/s. Diagonal is unused and kept at 0.
struct BandwidthMatrix {
  int n = 0;
  std::vector<std::vector<double>> values;
  std::uint64_t seed = 0;
  double min_bw_mbit = 0.0;
  double max_bw_mbit = 0.0;

  double at(int i, int j) const { return values[i][j]; }
};

// d[i][j] = floor((bl + U(0,mal) * |i-j|/n) * U(0.5,1.5)) for i != j.
// Pure function of (n, bl, mal, seed).
DelayMatrix generate_delay_matrix(int n, double bl_ms, double mal_ms, std::uint64_t seed);

// Off-diagonal entries drawn uniformly from [min_bw, max_bw].
BandwidthMatrix generate_bandwidth_matrix(int n, double min_bw, double max_bw,
                                          std::uint64_t seed);

// One per-node egress shaping script: htb root with a reserved default class
// plus one class / one netem leaf / one u32 filter per destination.
struct TcScript {
  int node = 0;
  std::string interface;
  std::vector<std::string> lines;
  bool reserved_default = true;

  // "#!/bin/sh" header + one command per line.
  std::string shell_text() const;
  std::string teardown_text() const;
};

// Emits the delay-injection script for `node`. Destinations with a 0 ms
// entry still get an explicit class; unmatched traffic (master node,
// external hosts) rides the default class unmodified.
TcScript emit_delay_script(int node, const DelayMatrix& matrix,
                           const std::map<int, std::string>& ips,
                           const std::string& interface);

// Same structure with per-destination `rate X ceil X` htb classes.
TcScript emit_bandwidth_script(int node, const BandwidthMatrix& matrix,
                               const std::map<int, std::string>& ips,
                               const std::string& interface);

// Combined emission: rate-capped htb class with the netem delay leaf
// nested underneath, per destination.
TcScript emit_tc_script(int node, const DelayMatrix* delays,
                        const BandwidthMatrix* bandwidths,
                        const std::map<int, std::string>& ips,
                        const std::string& interface);

struct NoiseParams {
  double delay_add_max_ms = 1.0;  // additive U(0, x) on each delay entry
  double bw_rel = 0.05;           // multiplicative U(-x, +x) on each bandwidth entry
};

enum class MeasurementKind { Delay, Bandwidth };

// Injected-versus-measured report, shaped like the agent aggregator output.
struct MeasurementReport {
  MeasurementKind kind = MeasurementKind::Delay;
  std::vector<std::vector<double>> injected;
  std::vector<std::vector<double>> measured;
  double mae = 0.0;          // mean absolute error over off-diagonal entries
  double max_abs_err = 0.0;
};

MeasurementReport simulate_measurement(const DelayMatrix& injected,
                                       const NoiseParams& noise, std::uint64_t seed);
MeasurementReport simulate_measurement(const BandwidthMatrix& injected,
                                       const NoiseParams& noise, std::uint64_t seed);

// Error stats for externally supplied matrices, e.g. testbed tables.
MeasurementReport measurement_report(MeasurementKind kind,
                                     std::vector<std::vector<double>> injected,
                                     std::vector<std::vector<double>> measured);

// {"n":..,"unit":"ms","values":[[..]],"seed":..,"params":{..}}
std::string delay_matrix_to_json(const DelayMatrix& m);
DelayMatrix delay_matrix_from_json(const std::string& text);
std::string bandwidth_matrix_to_json(const BandwidthMatrix& m);
BandwidthMatrix bandwidth_matrix_from_json(const std::string& text);

// {"k8s-worker-1":"10.0.0.1", ...} resolved against node names in order.
std::map<int, std::string> parse_ip_map_json(const std::string& text,
                                             const std::vector<std::string>& node_names);

}  // namespace idyn

#endif  // IDYN_NET_DYNAMICS_HPP
