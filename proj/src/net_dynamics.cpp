#include "idyn/net_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace idyn {

namespace {

// htb classes need a rate; this stands in for "uncapped".
constexpr const char* kUncappedRate = "10gbit";
constexpr int kDefaultClassMinor = 999;

std::string fmt_mbit(double v) {
  long long rounded = std::llround(v);
  if (std::fabs(v - static_cast<double>(rounded)) < 1e-9) return std::to_string(rounded);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  std::string s(buf);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

void check_square(const std::vector<std::vector<double>>& m, const char* what) {
  for (const auto& row : m)
    if (row.size() != m.size())
      throw ValidationError(std::string(what) + ": matrix is not square");
}

}  // namespace

DelayMatrix generate_delay_matrix(int n, double bl_ms, double mal_ms, std::uint64_t seed) {
  if (n < 1) throw ValidationError("delay matrix: empty cluster (n must be >= 1)");
  if (bl_ms < 0 || mal_ms < 0)
    throw ValidationError("delay matrix: bl and mal must be nonnegative");

  DelayMatrix m;
  m.n = n;
  m.seed = seed;
  m.base_latency_ms = bl_ms;
  m.max_added_latency_ms = mal_ms;
  m.values.assign(n, std::vector<int>(n, 0));

  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;  // avoid self-delay
      double al = rng.uniform(0.0, mal_ms);
      double df = std::abs(i - j) / static_cast<double>(n);
      double emu_latency = bl_ms + al * df;
      double cf = rng.uniform(0.5, 1.5);
      m.values[i][j] = static_cast<int>(std::floor(emu_latency * cf));
    }
  }
  return m;
}

BandwidthMatrix generate_bandwidth_matrix(int n, double min_bw, double max_bw,
                                          std::uint64_t seed) {
  if (n < 1) throw ValidationError("bandwidth matrix: empty cluster (n must be >= 1)");
  if (min_bw <= 0) throw ValidationError("bandwidth matrix: min_bw must be positive");
  if (min_bw > max_bw) throw ValidationError("bandwidth matrix: min_bw exceeds max_bw");

  BandwidthMatrix m;
  m.n = n;
  m.seed = seed;
  m.min_bw_mbit = min_bw;
  m.max_bw_mbit = max_bw;
  m.values.assign(n, std::vector<double>(n, 0.0));

  Rng rng(seed);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) m.values[i][j] = rng.uniform(min_bw, max_bw);
  return m;
}

std::string TcScript::shell_text() const {
  std::string out = "#!/bin/sh\n";
  for (const auto& line : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

std::string TcScript::teardown_text() const {
  return "#!/bin/sh\ntc qdisc del dev " + interface + " root\n";
}

TcScript emit_tc_script(int node, const DelayMatrix* delays,
                        const BandwidthMatrix* bandwidths,
                        const std::map<int, std::string>& ips,
                        const std::string& interface) {
  if (interface.empty()) throw ValidationError("tc script: interface must be non-empty");
  if (!delays && !bandwidths)
    throw ValidationError("tc script: need a delay or bandwidth matrix");
  int n = delays ? delays->n : bandwidths->n;
  if (delays && bandwidths && delays->n != bandwidths->n)
    throw ValidationError("tc script: delay and bandwidth matrices disagree on size");
  if (node < 0 || node >= n)
    throw ValidationError("tc script: node index " + std::to_string(node) +
                          " out of range");

  TcScript script;
  script.node = node;
  script.interface = interface;
  script.reserved_default = true;

  // Destinations in ascending index order; the k-th destination (skipping
  // self) owns class minor k+2. 999 is the reserved default channel.
  std::vector<int> dests;
  for (int j = 0; j < n; ++j)
    if (j != node) dests.push_back(j);
  for (int j : dests)
    if (!ips.count(j))
      throw ValidationError("tc script: no IP for node index " + std::to_string(j));

  script.lines.push_back("tc qdisc add dev " + interface + " root handle 1: htb default " +
                         std::to_string(kDefaultClassMinor));
  script.lines.push_back("tc class add dev " + interface + " parent 1: classid 1:" +
                         std::to_string(kDefaultClassMinor) + " htb rate " + kUncappedRate);

  for (std::size_t k = 0; k < dests.size(); ++k) {
    int minor = static_cast<int>(k) + 2;
    std::string rate = kUncappedRate;
    if (bandwidths) {
      std::string bw = fmt_mbit(bandwidths->at(node, dests[k])) + "mbit";
      rate = bw + " ceil " + bw;
    }
    script.lines.push_back("tc class add dev " + interface + " parent 1: classid 1:" +
                           std::to_string(minor) + " htb rate " + rate);
  }
  for (std::size_t k = 0; k < dests.size(); ++k) {
    int minor = static_cast<int>(k) + 2;
    int delay_ms = delays ? delays->at(node, dests[k]) : 0;
    script.lines.push_back("tc qdisc add dev " + interface + " parent 1:" +
                           std::to_string(minor) + " handle " + std::to_string(minor) +
                           ": netem delay " + std::to_string(delay_ms) + "ms");
  }
  for (std::size_t k = 0; k < dests.size(); ++k) {
    int minor = static_cast<int>(k) + 2;
    script.lines.push_back("tc filter add dev " + interface +
                           " parent 1: protocol ip prio 1 u32 match ip dst " +
                           ips.at(dests[k]) + "/32 flowid 1:" + std::to_string(minor));
  }
  return script;
}

TcScript emit_delay_script(int node, const DelayMatrix& matrix,
                           const std::map<int, std::string>& ips,
                           const std::string& interface) {
  return emit_tc_script(node, &matrix, nullptr, ips, interface);
}

TcScript emit_bandwidth_script(int node, const BandwidthMatrix& matrix,
                               const std::map<int, std::string>& ips,
                               const std::string& interface) {
  return emit_tc_script(node, nullptr, &matrix, ips, interface);
}

MeasurementReport measurement_report(MeasurementKind kind,
                                     std::vector<std::vector<double>> injected,
                                     std::vector<std::vector<double>> measured) {
  if (injected.size() != measured.size())
    throw ValidationError("measurement report: matrix shapes differ");
  check_square(injected, "measurement report");
  check_square(measured, "measurement report");

  MeasurementReport report;
  report.kind = kind;
  report.injected = std::move(injected);
  report.measured = std::move(measured);

  double sum = 0.0;
  long count = 0;
  for (std::size_t i = 0; i < report.injected.size(); ++i) {
    for (std::size_t j = 0; j < report.injected.size(); ++j) {
      if (i == j) continue;
      double err = std::fabs(report.measured[i][j] - report.injected[i][j]);
      sum += err;
      report.max_abs_err = std::max(report.max_abs_err, err);
      ++count;
    }
  }
  report.mae = count ? sum / static_cast<double>(count) : 0.0;
  return report;
}

MeasurementReport simulate_measurement(const DelayMatrix& injected,
                                       const NoiseParams& noise, std::uint64_t seed) {
  if (noise.delay_add_max_ms < 0)
    throw ValidationError("measurement: noise parameters must be nonnegative");
  int n = injected.n;
  std::vector<std::vector<double>> inj(n, std::vector<double>(n, 0.0));
  std::vector<std::vector<double>> meas(n, std::vector<double>(n, 0.0));
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      inj[i][j] = injected.values[i][j];
      meas[i][j] = inj[i][j] + rng.uniform(0.0, noise.delay_add_max_ms);
    }
  }
  return measurement_report(MeasurementKind::Delay, std::move(inj), std::move(meas));
}

MeasurementReport simulate_measurement(const BandwidthMatrix& injected,
                                       const NoiseParams& noise, std::uint64_t seed) {
  if (noise.bw_rel < 0)
    throw ValidationError("measurement: noise parameters must be nonnegative");
  int n = injected.n;
  std::vector<std::vector<double>> inj(n, std::vector<double>(n, 0.0));
  std::vector<std::vector<double>> meas(n, std::vector<double>(n, 0.0));
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      inj[i][j] = injected.values[i][j];
      meas[i][j] = inj[i][j] * (1.0 + rng.uniform(-noise.bw_rel, noise.bw_rel));
    }
  }
  return measurement_report(MeasurementKind::Bandwidth, std::move(inj), std::move(meas));
}

std::string delay_matrix_to_json(const DelayMatrix& m) {
  nlohmann::ordered_json j;
  j["n"] = m.n;
  j["unit"] = "ms";
  j["values"] = m.values;
  j["seed"] = m.seed;
  j["params"] = {{"bl", m.base_latency_ms}, {"mal", m.max_added_latency_ms}};
  return j.dump(2) + "\n";
}

DelayMatrix delay_matrix_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("delay matrix: invalid JSON: ") + e.what());
  }
  DelayMatrix m;
  m.n = j.at("n").get<int>();
  m.values = j.at("values").get<std::vector<std::vector<int>>>();
  m.seed = j.value("seed", 0ull);
  if (j.contains("params")) {
    m.base_latency_ms = j["params"].value("bl", 0.0);
    m.max_added_latency_ms = j["params"].value("mal", 0.0);
  }
  if (static_cast<int>(m.values.size()) != m.n)
    throw ValidationError("delay matrix: values shape does not match n");
  for (const auto& row : m.values)
    if (static_cast<int>(row.size()) != m.n)
      throw ValidationError("delay matrix: values shape does not match n");
  return m;
}

std::string bandwidth_matrix_to_json(const BandwidthMatrix& m) {
  nlohmann::ordered_json j;
  j["n"] = m.n;
  j["unit"] = "mbit";
  j["values"] = m.values;
  j["seed"] = m.seed;
  j["params"] = {{"min_bw", m.min_bw_mbit}, {"max_bw", m.max_bw_mbit}};
  return j.dump(2) + "\n";
}

BandwidthMatrix bandwidth_matrix_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("bandwidth matrix: invalid JSON: ") + e.what());
  }
  BandwidthMatrix m;
  m.n = j.at("n").get<int>();
  m.values = j.at("values").get<std::vector<std::vector<double>>>();
  m.seed = j.value("seed", 0ull);
  if (j.contains("params")) {
    m.min_bw_mbit = j["params"].value("min_bw", 0.0);
    m.max_bw_mbit = j["params"].value("max_bw", 0.0);
  }
  if (static_cast<int>(m.values.size()) != m.n)
    throw ValidationError("bandwidth matrix: values shape does not match n");
  for (const auto& row : m.values)
    if (static_cast<int>(row.size()) != m.n)
      throw ValidationError("bandwidth matrix: values shape does not match n");
  return m;
}

std::map<int, std::string> parse_ip_map_json(const std::string& text,
                                             const std::vector<std::string>& node_names) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("ip map: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("ip map: expected a JSON object");
  std::map<int, std::string> out;
  for (std::size_t i = 0; i < node_names.size(); ++i) {
    auto it = j.find(node_names[i]);
    if (it == j.end())
      throw ValidationError("ip map: no entry for node " + node_names[i]);
    out[static_cast<int>(i)] = it->get<std::string>();
  }
  return out;  // entries for hosts outside the cluster are ignored
}

}  // namespace idyn
