// Copyright 2026 The nvsense Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nvsense/trace.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "nvsense/errors.hpp"

namespace nvsense {

namespace {

const std::pair<AxisKind, const char *> kAxisNames[] = {
    {AxisKind::kTau, "tau"},
    {AxisKind::kInverseTwoTau, "inverse-two-tau"},
    {AxisKind::kPulseCount, "pulse-count"},
    {AxisKind::kCoherenceTime, "coherence-time"},
    {AxisKind::kCorrelationTime, "correlation-time"},
    {AxisKind::kInnerPulseCount, "inner-pulse-count"},
    {AxisKind::kFrequency, "frequency"},
    {AxisKind::kDetuning, "detuning"},
    {AxisKind::kDelay, "delay"},
    {AxisKind::kDistance, "distance"},
    {AxisKind::kGeneric, "generic"},
};

bool parse_number(const std::string &s, double *out) {
  const char *b = s.data();
  const char *e = b + s.size();
  while (b < e && (*b == ' ' || *b == '\t')) ++b;
  while (e > b && (e[-1] == ' ' || e[-1] == '\r' || e[-1] == '\t')) --e;
  if (b == e) return false;
  auto r = std::from_chars(b, e, *out);
  return r.ec == std::errc() && r.ptr == e;
}

}  // namespace

std::string axis_kind_name(AxisKind k) {
  for (const auto &[kind, name] : kAxisNames)
    if (kind == k) return name;
  return "generic";
}

AxisKind axis_kind_from_name(const std::string &name) {
  for (const auto &[kind, n] : kAxisNames)
    if (name == n) return kind;
  throw DomainError("unknown trace axis kind '" + name + "'");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double MeasurementTrace::number(const std::string &key) const {
  auto it = metadata.find(key);
  if (it == metadata.end()) throw DomainError("trace metadata lacks '" + key + "'");
  double v = 0;
  if (!parse_number(it->second, &v))
    throw DomainError("trace metadata '" + key + "' is not numeric");
  return v;
}

void MeasurementTrace::set(const std::string &key, double v) {
  metadata[key] = format_double(v);
}

std::string trace_to_csv(const MeasurementTrace &t, const std::vector<std::string> &extra) {
  if (t.x.size() != t.y.size()) throw DomainError("trace x and y differ in length");
  std::string s;
  s += "# nvsense-trace: 1\n";
  for (const auto &line : extra) s += "# " + line + "\n";
  s += "# axis: " + axis_kind_name(t.axis) + "\n";
  s += "# x_unit: " + t.x_unit + "\n";
  s += "# y_unit: " + t.y_unit + "\n";
  for (const auto &[k, v] : t.metadata) s += "# " + k + ": " + v + "\n";
  s += "x,y\n";
  for (std::size_t i = 0; i < t.x.size(); ++i) {
    s += format_double(t.x[i]);
    s += ',';
    s += format_double(t.y[i]);
    s += '\n';
  }
  return s;
}

MeasurementTrace trace_from_csv(const std::string &text, const std::string &origin) {
  MeasurementTrace t;
  std::istringstream in(text);
  std::string line;
  bool columns_seen = false;
  std::size_t lineno = 0;
  const std::string where = origin.empty() ? "trace" : "trace '" + origin + "'";
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      while (!body.empty() && body.front() == ' ') body.erase(body.begin());
      const auto colon = body.find(':');
      if (colon == std::string::npos) continue;
      const std::string key = body.substr(0, colon);
      std::string val = body.substr(colon + 1);
      while (!val.empty() && val.front() == ' ') val.erase(val.begin());
      if (key == "axis")
        t.axis = axis_kind_from_name(val);
      else if (key == "x_unit")
        t.x_unit = val;
      else if (key == "y_unit")
        t.y_unit = val;
      else if (key != "nvsense-trace" && key.find(' ') == std::string::npos)
        t.metadata[key] = val;
      continue;
    }
    const auto comma = line.find(',');
    double x = 0, y = 0;
    const bool ok = comma != std::string::npos && parse_number(line.substr(0, comma), &x) &&
                    parse_number(line.substr(comma + 1), &y);
    if (!ok && !columns_seen && t.x.empty()) {
      columns_seen = true;
      continue;
    }
    if (!ok) {
      std::ostringstream os;
      os << where << ": malformed row at line " << lineno;
      throw DomainError(os.str());
    }
    t.x.push_back(x);
    t.y.push_back(y);
  }
  return t;
}

void save_trace(const MeasurementTrace &t, const std::string &path,
                const std::vector<std::string> &extra) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << trace_to_csv(t, extra);
  if (!out) throw IoError("write failed for '" + path + "'");
}

MeasurementTrace load_trace(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open trace file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return trace_from_csv(ss.str(), path);
}

MeasurementTrace to_inverse_two_tau(const MeasurementTrace &src) {
  if (src.axis != AxisKind::kTau) throw DomainError("relabeling needs a tau-sweep trace");
  MeasurementTrace t = src;
  t.axis = AxisKind::kInverseTwoTau;
  t.x_unit = "kHz";
  std::vector<std::size_t> idx(src.size());
  std::iota(idx.begin(), idx.end(), 0);
  for (double v : src.x)
    if (!(v > 0)) throw DomainError("(2 tau)^-1 undefined at tau <= 0");
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return src.x[a] > src.x[b]; });
  for (std::size_t i = 0; i < idx.size(); ++i) {
    t.x[i] = 1e3 / (2.0 * src.x[idx[i]]);
    t.y[i] = src.y[idx[i]];
  }
  return t;
}

MeasurementTrace to_coherence_time(const MeasurementTrace &src) {
  if (src.axis != AxisKind::kPulseCount) throw DomainError("rescaling needs an N-sweep trace");
  const double tau = src.number("tau_us");
  MeasurementTrace t = src;
  t.axis = AxisKind::kCoherenceTime;
  t.x_unit = "us";
  for (auto &v : t.x) v *= tau;
  return t;
}

}  // namespace nvsense
