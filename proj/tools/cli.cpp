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


#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nvsense/analytic.hpp"
#include "nvsense/driven.hpp"
#include "nvsense/errors.hpp"
#include "nvsense/fit.hpp"
#include "nvsense/geometry.hpp"
#include "nvsense/photons.hpp"
#include "nvsense/pipelines.hpp"
#include "nvsense/register_io.hpp"
#include "nvsense/sequences.hpp"
#include "nvsense/simulator.hpp"
#include "nvsense/spectrum.hpp"
#include "nvsense/trace.hpp"
#include "nvsense/waveform_io.hpp"

namespace nvsense::cli {

namespace {

using nlohmann::json;

// Identity block every artifact carries.
struct Provenance {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> config;
  std::string seed = "none";

  std::vector<std::string> header_lines() const {
    std::vector<std::string> lines = {std::string("tool: nvsense ") + kToolVersion,
                                      "subcommand: " + subcommand, "seed: " + seed};
    for (const auto &[k, v] : config) lines.push_back("config: " + k + "=" + v);
    return lines;
  }

  json to_json() const {
    json c = json::object();
    for (const auto &[k, v] : config) c[k] = v;
    return {{"tool", "nvsense"}, {"version", kToolVersion}, {"subcommand", subcommand},
            {"seed", seed}, {"config", c}};
  }
};

Provenance provenance_of(const CLI::App &sub) {
  Provenance p;
  p.subcommand = sub.get_name();
  std::istringstream in(sub.config_to_str(true, false));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string k = line.substr(0, eq), v = line.substr(eq + 1);
    auto trim = [](std::string &s) {
      while (!s.empty() && s.front() == ' ') s.erase(s.begin());
      while (!s.empty() && s.back() == ' ') s.pop_back();
      if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    };
    trim(k);
    trim(v);
    if (k == "help" || k == "config" || k == "out" || v.empty()) continue;
    p.config.emplace_back(k, v);
  }
  return p;
}

void emit(const std::string &text, const std::string &path, std::ostream &out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw IoError("write failed for '" + path + "'");
}

std::string dump(const json &j) { return j.dump(2) + "\n"; }

std::vector<double> parse_list(const std::string &s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception &) {
      throw DomainError("cannot parse list entry '" + item + "'");
    }
  }
  return v;
}

std::vector<double> make_grid(double start, double stop, double step) {
  if (!(step > 0)) throw DomainError("grid step must be positive");
  if (!(stop >= start)) throw DomainError("grid stop must not precede start");
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  if (n > 10000000) throw DomainError("grid has too many points");
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = start + step * static_cast<double>(i);
  return g;
}

struct GridArgs {
  double start = 0, stop = 0, step = 0;
  std::string list;

  void add(CLI::App *app, const std::string &what) {
    app->add_option("--start", start, what + " grid start");
    app->add_option("--stop", stop, what + " grid stop");
    app->add_option("--step", step, what + " grid step");
    app->add_option("--grid", list, "explicit comma-separated grid");
  }
  std::vector<double> values() const {
    if (!list.empty()) return parse_list(list);
    return make_grid(start, stop, step);
  }
};

// ---- magnet ----

struct MagnetArgs {
  int catalogue = 0;
  double remanence = 1270.0, radius = 0.0, height = 0.0;
  double d_start = 20.0, d_stop = 60.0, d_step = 1.0;
  double tilt = 35.0, plate = 5.0, travel = 25.0;
  std::string calibrate, out;
};

int cmd_magnet(const MagnetArgs &a, const Provenance &prov, std::ostream &out) {
  std::unique_ptr<CylindricalMagnet> m;
  if (a.catalogue == 1)
    m = std::make_unique<CylindricalMagnet>(CylindricalMagnet::magnet_1());
  else if (a.catalogue == 2)
    m = std::make_unique<CylindricalMagnet>(CylindricalMagnet::magnet_2());
  else if (a.radius > 0 && a.height > 0)
    m = std::make_unique<CylindricalMagnet>(a.remanence, a.radius, a.height);
  else
    throw CLI::ValidationError("magnet", "give --magnet 1|2 or --radius and --height");
  if (a.catalogue != 0 && a.remanence != 1270.0)
    m = std::make_unique<CylindricalMagnet>(a.remanence, m->radius_mm(), m->height_mm());

  if (!a.calibrate.empty()) {
    const MeasurementTrace t = load_trace(a.calibrate);
    std::vector<FieldSample> s;
    for (std::size_t i = 0; i < t.size(); ++i) s.push_back({t.x[i], t.y[i]});
    FitResult r = calibrate_remanence(s, m->radius_mm(), m->height_mm());
    json j = fit_result_to_json(r);
    j["artifact"] = prov.to_json();
    emit(dump(j), a.out, out);
    return 0;
  }
  const StageGeometry g(a.tilt, a.plate, a.travel);
  std::string s;
  for (const auto &l : prov.header_lines()) s += "# " + l + "\n";
  s += "# d_min_mm: " + format_double(minimum_distance_mm(g, *m)) + "\n";
  s += "d_mm,B0_mT,f_minus_MHz,f_plus_MHz\n";
  for (double d : make_grid(a.d_start, a.d_stop, a.d_step)) {
    const double b = magnet_field_mt(*m, d);
    s += format_double(d) + "," + format_double(b) + "," +
         format_double(nv_transition_frequency_mhz(b, NvTransition::kZeroToMinusOne)) + "," +
         format_double(nv_transition_frequency_mhz(b, NvTransition::kZeroToPlusOne)) + "\n";
  }
  emit(s, a.out, out);
  return 0;
}

// ---- shared sequence options ----

struct PlanArgs {
  std::string plan_file;
  std::string sequence = "hahn";
  double tau = 1.0;
  int n = 1;
  int block = 0;
  std::string block_kind = "xy8";
  double t_corr = 0.0;
  int inner = 0;
  double inner_tau = std::numeric_limits<double>::quiet_NaN();
  std::string readout = "+x";
  bool no_phase_cycling = false;
  double half_pi_ns = 0.0, pi_ns = 0.0;

  void add(CLI::App *app) {
    app->add_option("--plan", plan_file, "sequence plan JSON")->check(CLI::ExistingFile);
    app->add_option("--sequence", sequence, "sequence kind");
    app->add_option("--tau", tau, "pulse spacing tau (us)");
    app->add_option("--n", n, "pi pulses per train");
    app->add_option("--block", block, "repetition block size (0: natural)");
    app->add_option("--block-kind", block_kind, "train pattern inside correlation blocks");
    app->add_option("--t-corr", t_corr, "correlation storage time (us)");
    app->add_option("--inner", inner, "inner pi pulses (correlation-multipulse)");
    app->add_option("--inner-tau", inner_tau, "inner pulse spacing (us)");
    app->add_option("--readout", readout, "nominal readout phase (+x or -x)");
    app->add_flag("--no-phase-cycling", no_phase_cycling, "single readout branch");
    app->add_option("--half-pi-ns", half_pi_ns, "pi/2 duration (ns)");
    app->add_option("--pi-ns", pi_ns, "pi duration (ns)");
  }

  SequencePlan build() const {
    SequencePlan p;
    if (!plan_file.empty()) {
      p = load_plan(plan_file);
    } else {
      p.kind = sequence_kind_from_name(sequence);
      p.tau_us = tau;
      p.n_pulses = n;
      p.block_size = block;
      p.block_kind = sequence_kind_from_name(block_kind);
      p.t_corr_us = t_corr;
      p.inner_pulses = inner;
      if (!std::isnan(inner_tau)) p.inner_tau_us = inner_tau;
      if (readout == "+x")
        p.readout = ReadoutPhase::kPlusX;
      else if (readout == "-x")
        p.readout = ReadoutPhase::kMinusX;
      else
        throw DomainError("readout phase must be +x or -x");
      p.phase_cycling = !no_phase_cycling;
      p.pulses.half_pi_ns = half_pi_ns;
      p.pulses.pi_ns = pi_ns;
    }
    p.validate();
    return p;
  }
};

SpinRegister register_or_empty(const std::string &path, double b0) {
  if (!path.empty()) return load_register(path);
  return SpinRegister(b0, {});
}

// ---- simulate ----

struct SimulateArgs {
  std::string register_file;
  double b0 = 4.7;
  PlanArgs plan;
  std::string sweep = "tau";
  GridArgs grid;
  int threads = 1;
  std::string model = "oracle";
  std::string envelope = "none";
  double t_env = 1.0, p_env = 1.0;
  std::int64_t shots = 0;
  double bright = 0.02, dark = 0.014;
  std::uint64_t seed = 1;
  std::string axis_out = "native";
  bool triplet = false;
  double odmr_pi_ns = 1292.0;
  std::string out;
};

int cmd_simulate(const SimulateArgs &a, Provenance prov, std::ostream &out) {
  const std::vector<double> grid = a.grid.values();
  MeasurementTrace t;
  if (a.sweep == "odmr") {
    std::vector<DetuningComponent> mix;
    if (a.triplet) mix = nitrogen_triplet(2.16);
    t = pulsed_odmr_profile(a.odmr_pi_ns, grid, mix);
  } else {
    const SpinRegister reg = register_or_empty(a.register_file, a.b0);
    const SequencePlan plan = a.plan.build();
    const SweepAxis axis = sweep_axis_from_name(a.sweep);
    if (a.model == "oracle") {
      SweepOptions so;
      so.threads = a.threads;
      t = simulate_sweep(reg, plan, axis, grid, so);
    } else if (a.model == "analytic") {
      if (axis != SweepAxis::kTau) throw DomainError("analytic model supports tau sweeps only");
      t = full_spectrum(reg, grid, plan.n_pulses);
      // back onto the tau axis so envelopes and relabeling behave alike
      MeasurementTrace u = t;
      u.axis = AxisKind::kTau;
      u.x_unit = "us";
      for (std::size_t i = 0; i < t.size(); ++i) {
        u.x[t.size() - 1 - i] = 1e3 / (2.0 * t.x[i]);
        u.y[t.size() - 1 - i] = t.y[i];
      }
      u.set("register_hash", register_hash(reg));
      u.set("sequence", sequence_kind_name(plan.kind));
      t = u;
    } else {
      throw DomainError("unknown model '" + a.model + "' (oracle or analytic)");
    }
    if (a.envelope != "none") {
      DecoherenceEnvelope env;
      env.kind = envelope_kind_from_name(a.envelope);
      env.time_constant_us = a.t_env;
      env.exponent = a.p_env;
      t = apply_envelope(t, env);
    }
  }
  if (a.shots > 0) {
    ReadoutModel rm;
    rm.bright_per_shot = a.bright;
    rm.dark_per_shot = a.dark;
    rm.shots = a.shots;
    rm.seed = a.seed;
    t = sample_photons(t, rm).estimate;
    prov.seed = std::to_string(a.seed);
  }
  if (a.axis_out == "inverse-two-tau")
    t = to_inverse_two_tau(t);
  else if (a.axis_out == "coherence-time")
    t = to_coherence_time(t);
  else if (a.axis_out != "native")
    throw DomainError("unknown output axis '" + a.axis_out + "'");
  emit(trace_to_csv(t, prov.header_lines()), a.out, out);
  return 0;
}

// ---- spectrum ----

struct SpectrumArgs {
  std::string trace, window = "hann", out;
  int zero_pad = 4;
  double threshold = 0.1;
  std::size_t max_peaks = 16;
  bool full = false;
};

int cmd_spectrum(const SpectrumArgs &a, const Provenance &prov, std::ostream &out) {
  const MeasurementTrace t = load_trace(a.trace);
  SpectrumOptions o;
  o.window = window_from_name(a.window);
  o.zero_pad = a.zero_pad;
  o.threshold = a.threshold;
  o.max_peaks = a.max_peaks;
  MeasurementTrace in = t;
  if (in.axis == AxisKind::kPulseCount && in.has("tau_us")) in = to_coherence_time(in);
  const Spectrum s = spectrum(in, o);
  std::string text;
  for (const auto &l : prov.header_lines()) text += "# " + l + "\n";
  text += "# unit: " + s.unit + "\n";
  text += "# bin_width: " + format_double(s.bin_width) + "\n";
  if (a.full) {
    text += "frequency,amplitude\n";
    for (std::size_t k = 0; k < s.frequency.size(); ++k)
      text += format_double(s.frequency[k]) + "," + format_double(s.amplitude[k]) + "\n";
  } else {
    text += "rank,frequency,amplitude,half_width,method\n";
    for (std::size_t k = 0; k < s.peaks.size(); ++k) {
      const auto &p = s.peaks[k];
      text += std::to_string(k + 1) + "," + format_double(p.frequency) + "," +
              format_double(p.amplitude) + "," + format_double(p.half_width) + "," + p.method + "\n";
    }
  }
  emit(text, a.out, out);
  return 0;
}

// ---- fit ----

struct FitArgs {
  std::string model, trace, out;
  double rho = 6e28, fh = 1000.0;
  int n = 64;
  bool free_fh = false;
  std::string kind = "multipulse";
  bool fix_amplitudes = false;
};

int cmd_fit(const FitArgs &a, const Provenance &prov, std::ostream &out) {
  const MeasurementTrace t = load_trace(a.trace);
  FitResult r;
  if (a.model == "ramsey") {
    RamseyFitOptions o;
    if (a.fix_amplitudes) {
      o.a0 = 1.0 / 6.0;
      o.a1 = 1.0 / 3.0;
      o.fix_amplitudes = true;
    }
    r = fit_ramsey(t, o);
  } else if (a.model == "echo") {
    r = fit_echo(t);
  } else if (a.model == "g2") {
    r = fit_g2(t);
  } else if (a.model == "depth") {
    DepthOptions o;
    o.rho_per_m3 = a.rho;
    o.n_pulses = a.n;
    o.f_h_khz = a.fh;
    o.free_f_h = a.free_fh;
    r = extract_depth_pipeline(t, o);
  } else if (a.model == "envelope") {
    fit_envelope(t, {}, envelope_kind_from_name(a.kind), &r);
  } else {
    throw DomainError("unknown fit model '" + a.model + "'");
  }
  json j = fit_result_to_json(r);
  j["artifact"] = prov.to_json();
  emit(dump(j), a.out, out);
  return 0;
}

// ---- extract ----

struct ExtractArgs {
  std::string tau_sweep, correlation, n_sweep, out;
  double larmor = std::numeric_limits<double>::quiet_NaN();
  double min_dip = 1e-3, min_osc = 1e-4;
};

int cmd_extract(const ExtractArgs &a, const Provenance &prov, std::ostream &out) {
  HyperfineBundle b;
  b.tau_sweep = load_trace(a.tau_sweep);
  b.correlation = load_trace(a.correlation);
  b.n_sweep = load_trace(a.n_sweep);
  if (!std::isnan(a.larmor)) b.larmor_khz = a.larmor;
  HyperfineOptions o;
  o.min_dip_depth = a.min_dip;
  o.min_oscillation = a.min_osc;
  const HyperfineExtraction e = extract_hyperfine_pipeline(b, o);
  json j = {{"schema", "nvsense.extract/1"},
            {"status", extraction_status_name(e.status)},
            {"a_par_kHz", e.coupling.a_parallel_khz()},
            {"a_perp_kHz", e.coupling.a_perpendicular_khz()},
            {"f0_kHz", e.f0_khz},
            {"f1_kHz", e.f1_khz},
            {"f_r_kHz", e.fr_khz},
            {"tau_us", e.tau_us},
            {"report", e.report},
            {"artifact", prov.to_json()}};
  emit(dump(j), a.out, out);
  return 0;
}

// ---- waveform ----

struct WaveformArgs {
  std::string shape = "square";
  double duration = 48.0, rate = 1.0, f_if = 100.0, theta = 0.0, span = 0.0, exponent = 2.0;
  std::int64_t start_sample = 0;
  bool from_sequence = false;
  PlanArgs plan;
  double max_duration = 16.2e6;
  std::string format = "csv", out;
};

int cmd_waveform(const WaveformArgs &a, const Provenance &prov, std::ostream &out) {
  IQWaveform iq;
  json summary = {{"schema", "nvsense.waveform-run/1"}};
  if (a.from_sequence || !a.plan.plan_file.empty()) {
    const SequencePlan p = a.plan.build();
    const TimedEventList ev = expand_timing(build_sequence(p));
    WaveformSettings ws;
    ws.sample_rate_gsps = a.rate;
    ws.f_if_mhz = a.f_if;
    ws.max_duration_ns = a.max_duration;
    iq = sequence_to_waveform(ev, ws);
    summary["events"] = ev.events.size();
    summary["timing"] = ev.timing_table();
  } else {
    EnvelopeSpec s;
    s.shape = envelope_shape_from_name(a.shape);
    s.duration_ns = a.duration;
    s.chirp_span_mhz = a.span;
    s.wurst_exponent = a.exponent;
    if (a.duration > a.max_duration) throw DomainError("pulse exceeds the maximum waveform length");
    iq = synthesize_iq(s, a.f_if, a.theta, a.rate, a.start_sample);
  }
  const WaveformFormat fmt = waveform_format_from_name(a.format);
  if (fmt == WaveformFormat::kF32Le) iq = quantize_to_f32(iq);
  export_waveform(iq, a.out, fmt);
  summary["samples"] = iq.size();
  summary["duration_ns"] = iq.duration_ns();
  summary["file"] = a.out;
  summary["format"] = waveform_format_name(fmt);
  summary["artifact"] = prov.to_json();
  out << dump(summary);
  return 0;
}

// ---- oracle-compare ----

struct OracleArgs {
  std::string register_file, out;
  double b0 = 4.7;
  GridArgs tau;
  std::string n_list = "2,4,8,16";
  std::string sequence = "cpmg";
  double tolerance = 1e-6;
};

int cmd_oracle(const OracleArgs &a, const Provenance &prov, std::ostream &out) {
  const SpinRegister reg = register_or_empty(a.register_file, a.b0);
  const std::vector<double> taus = a.tau.values();
  std::vector<int> ns;
  for (double v : parse_list(a.n_list)) ns.push_back(static_cast<int>(v));
  struct Form {
    const char *name;
    FullSpectrumOptions opts;
    double max_dev = 0.0;
    std::size_t undefined = 0;
  };
  Form forms[2] = {{"composed", {}}, {"printed", {}}};
  forms[1].opts.dip = DipForm::kPrinted;
  forms[1].opts.product = ProductForm::kPrinted;
  SequencePlan p;
  p.kind = sequence_kind_from_name(a.sequence);
  std::size_t points = 0;
  for (int n : ns) {
    p.n_pulses = n;
    for (double tau : taus) {
      p.tau_us = tau;
      p.validate();
      const double sim = evolve_ideal(reg, p);
      ++points;
      for (auto &f : forms) {
        try {
          f.max_dev = std::max(f.max_dev, std::abs(full_spectrum_p0(reg, tau, n, f.opts) - sim));
        } catch (const DomainError &) {
          ++f.undefined;
        }
      }
    }
  }
  json j = {{"schema", "nvsense.oracle-compare/1"},
            {"points", points},
            {"tolerance", a.tolerance},
            {"register_hash", register_hash(reg)}};
  for (const auto &f : forms) {
    const bool pass = f.undefined == 0 && f.max_dev <= a.tolerance;
    j["forms"][f.name] = {{"max_deviation", f.max_dev},
                          {"undefined_points", f.undefined},
                          {"verdict", pass ? "pass" : "fail"}};
  }
  j["artifact"] = prov.to_json();
  emit(dump(j), a.out, out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"nvsense: NV-center sensing simulation and analysis"};
  app.set_version_flag("--version", std::string("nvsense ") + kToolVersion);
  app.set_config("--config", "", "TOML config file; flags override it");
  app.require_subcommand(1);

  MagnetArgs mg;
  auto *magnet = app.add_subcommand("magnet", "magnet field table or remanence calibration");
  magnet->add_option("--magnet", mg.catalogue, "catalogue magnet (1 or 2)")->check(CLI::Range(1, 2));
  magnet->add_option("--remanence", mg.remanence, "remanence B_r (mT)");
  magnet->add_option("--radius", mg.radius, "magnet radius (mm)");
  magnet->add_option("--height", mg.height, "magnet height (mm)");
  magnet->add_option("--d-start", mg.d_start, "first distance (mm)");
  magnet->add_option("--d-stop", mg.d_stop, "last distance (mm)");
  magnet->add_option("--d-step", mg.d_step, "distance step (mm)");
  magnet->add_option("--tilt", mg.tilt, "stage tilt (deg)");
  magnet->add_option("--plate", mg.plate, "plate thickness (mm)");
  magnet->add_option("--travel", mg.travel, "actuator travel (mm)");
  magnet->add_option("--calibrate", mg.calibrate, "(d, B0) CSV to fit B_r")->check(CLI::ExistingFile);
  magnet->add_option("-o,--out", mg.out, "output path (default stdout)");

  SimulateArgs sm;
  auto *simulate = app.add_subcommand("simulate", "simulate a sweep to a trace CSV");
  simulate->add_option("--register", sm.register_file, "register JSON")->check(CLI::ExistingFile);
  simulate->add_option("--b0", sm.b0, "field without a register file (mT)");
  sm.plan.add(simulate);
  simulate->add_option("--sweep", sm.sweep, "tau, n, tcorr, m or odmr");
  sm.grid.add(simulate, "sweep");
  simulate->add_option("--threads", sm.threads, "worker threads");
  simulate->add_option("--model", sm.model, "oracle or analytic");
  simulate->add_option("--envelope", sm.envelope, "none, ramsey, echo or multipulse");
  simulate->add_option("--T", sm.t_env, "envelope time constant (us)");
  simulate->add_option("--p", sm.p_env, "envelope stretch exponent");
  simulate->add_option("--shots", sm.shots, "photon shots per point (0: noiseless)");
  simulate->add_option("--bright", sm.bright, "bright counts per shot");
  simulate->add_option("--dark", sm.dark, "dark counts per shot");
  simulate->add_option("--seed", sm.seed, "noise seed");
  simulate->add_option("--axis-out", sm.axis_out, "native, inverse-two-tau or coherence-time");
  simulate->add_flag("--triplet", sm.triplet, "14N triplet mixture (odmr sweep)");
  simulate->add_option("--odmr-pi-ns", sm.odmr_pi_ns, "pi duration for the odmr sweep (ns)");
  simulate->add_option("-o,--out", sm.out, "output path (default stdout)");

  SpectrumArgs sp;
  auto *spec = app.add_subcommand("spectrum", "amplitude spectrum and peak list of a trace");
  spec->add_option("--trace", sp.trace, "input trace CSV")->required()->check(CLI::ExistingFile);
  spec->add_option("--window", sp.window, "hann or none");
  spec->add_option("--zero-pad", sp.zero_pad, "zero padding factor");
  spec->add_option("--threshold", sp.threshold, "peak threshold relative to the maximum");
  spec->add_option("--max-peaks", sp.max_peaks, "peaks to report");
  spec->add_flag("--full", sp.full, "emit the whole spectrum instead of peaks");
  spec->add_option("-o,--out", sp.out, "output path (default stdout)");

  FitArgs ft;
  auto *fitc = app.add_subcommand("fit", "fit a model to a trace");
  fitc->add_option("--model", ft.model, "ramsey, echo, g2, depth or envelope")->required();
  fitc->add_option("--trace", ft.trace, "input trace CSV")->required()->check(CLI::ExistingFile);
  fitc->add_option("--rho", ft.rho, "proton density (m^-3)");
  fitc->add_option("--n", ft.n, "pulse count of the proton sequence");
  fitc->add_option("--fh", ft.fh, "proton frequency (kHz)");
  fitc->add_flag("--free-fh", ft.free_fh, "fit the proton frequency too");
  fitc->add_option("--kind", ft.kind, "envelope kind for --model envelope");
  fitc->add_flag("--fix-amplitudes", ft.fix_amplitudes, "hold Ramsey a0, a1 at 1/6, 1/3");
  fitc->add_option("-o,--out", ft.out, "output path (default stdout)");

  ExtractArgs ex;
  auto *extract = app.add_subcommand("extract", "hyperfine extraction from a measurement bundle");
  extract->add_option("--tau-sweep", ex.tau_sweep, "tau sweep trace")->required()->check(CLI::ExistingFile);
  extract->add_option("--correlation", ex.correlation, "t_corr trace")->required()->check(CLI::ExistingFile);
  extract->add_option("--n-sweep", ex.n_sweep, "N sweep trace")->required()->check(CLI::ExistingFile);
  extract->add_option("--larmor", ex.larmor, "nuclear Larmor frequency (kHz)");
  extract->add_option("--min-dip", ex.min_dip, "smallest tau-dip depth");
  extract->add_option("--min-oscillation", ex.min_osc, "smallest N-sweep amplitude");
  extract->add_option("-o,--out", ex.out, "output path (default stdout)");

  WaveformArgs wf;
  auto *wave = app.add_subcommand("waveform", "render a pulse or a sequence to a waveform file");
  wave->add_option("--shape", wf.shape, "square, cosine-square, wurst, ...");
  wave->add_option("--duration", wf.duration, "pulse duration (ns)");
  wave->add_option("--rate", wf.rate, "sample rate (GS/s)");
  wave->add_option("--if", wf.f_if, "IF frequency (MHz)");
  wave->add_option("--theta", wf.theta, "IF phase (deg)");
  wave->add_option("--span", wf.span, "WURST chirp span (MHz)");
  wave->add_option("--exponent", wf.exponent, "WURST exponent");
  wave->add_option("--start-sample", wf.start_sample, "absolute index of the first sample");
  wave->add_flag("--from-sequence", wf.from_sequence, "render the sequence options instead");
  wf.plan.add(wave);
  wave->add_option("--max-duration", wf.max_duration, "longest waveform (ns)");
  wave->add_option("--format", wf.format, "csv or f32le");
  wave->add_option("-o,--out", wf.out, "output waveform path")->required();

  OracleArgs oc;
  auto *oracle = app.add_subcommand("oracle-compare", "closed-form dip models against the simulator");
  oracle->add_option("--register", oc.register_file, "register JSON")->check(CLI::ExistingFile);
  oracle->add_option("--b0", oc.b0, "field without a register file (mT)");
  oc.tau.add(oracle, "tau");
  oracle->add_option("--n-list", oc.n_list, "comma-separated even pulse counts");
  oracle->add_option("--sequence", oc.sequence, "pulse-train kind");
  oracle->add_option("--tolerance", oc.tolerance, "pass bar on max |dP0|");
  oracle->add_option("-o,--out", oc.out, "output path (default stdout)");

  std::vector<std::string> argv_s = {"nvsense"};
  argv_s.insert(argv_s.end(), args.begin(), args.end());
  std::vector<char *> argv;
  for (auto &s : argv_s) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (magnet->parsed()) return cmd_magnet(mg, provenance_of(*magnet), out);
    if (simulate->parsed()) return cmd_simulate(sm, provenance_of(*simulate), out);
    if (spec->parsed()) return cmd_spectrum(sp, provenance_of(*spec), out);
    if (fitc->parsed()) return cmd_fit(ft, provenance_of(*fitc), out);
    if (extract->parsed()) return cmd_extract(ex, provenance_of(*extract), out);
    if (wave->parsed()) return cmd_waveform(wf, provenance_of(*wave), out);
    if (oracle->parsed()) return cmd_oracle(oc, provenance_of(*oracle), out);
  } catch (const CLI::ValidationError &e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace nvsense::cli
