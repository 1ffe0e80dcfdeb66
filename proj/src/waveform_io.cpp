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

#include "nvsense/waveform_io.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "nvsense/errors.hpp"

namespace nvsense {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string &s, const std::string &path) {
  double v = 0.0;
  const char *b = s.data();
  const char *e = s.data() + s.size();
  while (b < e && *b == ' ') ++b;
  auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc())
    throw DomainError("waveform file '" + path + "': bad number '" + s + "'");
  return v;
}

std::uint32_t to_le(std::uint32_t v) {
  if constexpr (std::endian::native == std::endian::big)
    return ((v & 0xffu) << 24) | ((v & 0xff00u) << 8) | ((v >> 8) & 0xff00u) | (v >> 24);
  return v;
}

}  // namespace

std::string waveform_format_name(WaveformFormat f) {
  return f == WaveformFormat::kCsv ? "csv" : "f32le";
}

WaveformFormat waveform_format_from_name(const std::string &name) {
  if (name == "csv") return WaveformFormat::kCsv;
  if (name == "f32le" || name == "bin" || name == "binary") return WaveformFormat::kF32Le;
  throw DomainError("unknown waveform format '" + name + "'");
}

std::string waveform_header(const IQWaveform &iq, WaveformFormat format) {
  std::ostringstream os;
  os << "nvsense-waveform: 1\n"
     << "format: " << waveform_format_name(format) << "\n"
     << "sample_rate_gsps: " << fmt17(iq.sample_rate_gsps) << "\n"
     << "f_if_mhz: " << fmt17(iq.f_if_mhz) << "\n"
     << "theta_if_deg: " << fmt17(iq.theta_if_deg) << "\n"
     << "channels: 2\n"
     << "samples: " << iq.size() << "\n"
     << "end_header\n";
  return os.str();
}

std::uint64_t f32le_file_size(const IQWaveform &iq) {
  return waveform_header(iq, WaveformFormat::kF32Le).size() + 8ull * iq.size();
}

void export_waveform(const IQWaveform &iq, const std::string &path,
                     WaveformFormat format) {
  if (iq.i.size() != iq.q.size())
    throw DomainError("IQ channels differ in length");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << waveform_header(iq, format);
  const std::size_t n = iq.size();
  if (format == WaveformFormat::kCsv) {
    std::string buf;
    for (std::size_t k = 0; k < n; ++k) {
      buf += fmt17(iq.i[k]);
      buf += ',';
      buf += fmt17(iq.q[k]);
      buf += '\n';
      if (buf.size() > (1u << 20)) {
        out << buf;
        buf.clear();
      }
    }
    out << buf;
  } else {
    constexpr std::size_t kChunk = 1 << 16;
    std::vector<std::uint32_t> words;
    words.reserve(2 * kChunk);
    for (std::size_t k = 0; k < n; k += kChunk) {
      const std::size_t m = std::min(kChunk, n - k);
      words.clear();
      for (std::size_t j = 0; j < m; ++j) {
        words.push_back(to_le(std::bit_cast<std::uint32_t>(static_cast<float>(iq.i[k + j]))));
        words.push_back(to_le(std::bit_cast<std::uint32_t>(static_cast<float>(iq.q[k + j]))));
      }
      out.write(reinterpret_cast<const char *>(words.data()),
                static_cast<std::streamsize>(words.size() * 4));
    }
  }
  out.flush();
  if (!out) throw IoError("write failed for '" + path + "'");
}

IQWaveform import_waveform(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open waveform file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  bool ended = false;
  while (std::getline(in, line)) {
    if (line == "end_header") {
      ended = true;
      break;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos)
      throw DomainError("waveform file '" + path + "': malformed header line '" + line + "'");
    std::string val = line.substr(colon + 1);
    while (!val.empty() && val.front() == ' ') val.erase(val.begin());
    kv[line.substr(0, colon)] = val;
  }
  if (!ended || kv["nvsense-waveform"] != "1")
    throw DomainError("waveform file '" + path + "': missing or unsupported header");
  for (const char *key : {"format", "sample_rate_gsps", "f_if_mhz", "theta_if_deg", "channels", "samples"})
    if (!kv.count(key))
      throw DomainError("waveform file '" + path + "': header lacks '" + key + "'");
  if (kv["channels"] != "2")
    throw DomainError("waveform file '" + path + "': only two-channel data is supported");

  IQWaveform w;
  w.sample_rate_gsps = parse_double(kv["sample_rate_gsps"], path);
  w.f_if_mhz = parse_double(kv["f_if_mhz"], path);
  w.theta_if_deg = parse_double(kv["theta_if_deg"], path);
  const auto n = static_cast<std::size_t>(std::stoull(kv["samples"]));
  const WaveformFormat fmt = waveform_format_from_name(kv["format"]);
  w.i.resize(n);
  w.q.resize(n);
  if (fmt == WaveformFormat::kCsv) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!std::getline(in, line))
        throw IoError("waveform file '" + path + "': truncated sample data");
      const auto comma = line.find(',');
      if (comma == std::string::npos)
        throw DomainError("waveform file '" + path + "': malformed sample line");
      w.i[k] = parse_double(line.substr(0, comma), path);
      w.q[k] = parse_double(line.substr(comma + 1), path);
    }
  } else {
    std::vector<std::uint32_t> words(2 * n);
    in.read(reinterpret_cast<char *>(words.data()),
            static_cast<std::streamsize>(words.size() * 4));
    if (static_cast<std::size_t>(in.gcount()) != words.size() * 4)
      throw IoError("waveform file '" + path + "': truncated sample data");
    for (std::size_t k = 0; k < n; ++k) {
      w.i[k] = std::bit_cast<float>(to_le(words[2 * k]));
      w.q[k] = std::bit_cast<float>(to_le(words[2 * k + 1]));
    }
  }
  return w;
}

}  // namespace nvsense
