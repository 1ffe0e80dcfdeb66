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

#include "nvsense/sequences.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nvsense/errors.hpp"

namespace nvsense {

using nlohmann::json;

std::string axis_name(Axis a) {
  switch (a) {
    case Axis::kPlusX:
      return "+x";
    case Axis::kPlusY:
      return "+y";
    case Axis::kMinusX:
      return "-x";
    case Axis::kMinusY:
      return "-y";
  }
  return "+x";
}

double axis_phase_deg(Axis a) {
  switch (a) {
    case Axis::kPlusX:
      return 0.0;
    case Axis::kPlusY:
      return 90.0;
    case Axis::kMinusX:
      return 180.0;
    case Axis::kMinusY:
      return 270.0;
  }
  return 0.0;
}

Axis negate(Axis a) {
  switch (a) {
    case Axis::kPlusX:
      return Axis::kMinusX;
    case Axis::kPlusY:
      return Axis::kMinusY;
    case Axis::kMinusX:
      return Axis::kPlusX;
    case Axis::kMinusY:
      return Axis::kPlusY;
  }
  return a;
}

bool is_x_axis(Axis a) { return a == Axis::kPlusX || a == Axis::kMinusX; }

std::string PulseSpec::label() const {
  std::string s;
  if (axis == Axis::kMinusX || axis == Axis::kMinusY) s = "-";
  s += is_x_axis(axis) ? "X" : "Y";
  if (angle == Angle::kHalfPi) s += "/2";
  return s;
}

std::string sequence_kind_name(SequenceKind k) {
  switch (k) {
    case SequenceKind::kRamsey:
      return "ramsey";
    case SequenceKind::kHahn:
      return "hahn";
    case SequenceKind::kCp:
      return "cp";
    case SequenceKind::kCpmg:
      return "cpmg";
    case SequenceKind::kXy4:
      return "xy4";
    case SequenceKind::kXy8:
      return "xy8";
    case SequenceKind::kXy16:
      return "xy16";
    case SequenceKind::kCorrelation:
      return "correlation";
    case SequenceKind::kCorrelationMultipulse:
      return "correlation-multipulse";
  }
  return "hahn";
}

SequenceKind sequence_kind_from_name(const std::string &name) {
  for (SequenceKind k :
       {SequenceKind::kRamsey, SequenceKind::kHahn, SequenceKind::kCp, SequenceKind::kCpmg,
        SequenceKind::kXy4, SequenceKind::kXy8, SequenceKind::kXy16,
        SequenceKind::kCorrelation, SequenceKind::kCorrelationMultipulse})
    if (sequence_kind_name(k) == name) return k;
  throw DomainError("unknown sequence kind '" + name + "'");
}

int natural_block_size(SequenceKind k) {
  switch (k) {
    case SequenceKind::kXy4:
      return 4;
    case SequenceKind::kXy8:
      return 8;
    case SequenceKind::kXy16:
      return 16;
    default:
      return 1;
  }
}

namespace {

bool is_train_kind(SequenceKind k) {
  return k == SequenceKind::kCp || k == SequenceKind::kCpmg || k == SequenceKind::kXy4 ||
         k == SequenceKind::kXy8 || k == SequenceKind::kXy16;
}

bool is_correlation(SequenceKind k) {
  return k == SequenceKind::kCorrelation || k == SequenceKind::kCorrelationMultipulse;
}

SequenceKind train_kind(const SequencePlan &p) {
  return is_correlation(p.kind) ? p.block_kind : p.kind;
}

std::vector<Axis> block_axes(SequenceKind k) {
  using A = Axis;
  switch (k) {
    case SequenceKind::kCp:
    case SequenceKind::kHahn:
      return {A::kPlusX};
    case SequenceKind::kCpmg:
      return {A::kPlusY};
    case SequenceKind::kXy4:
      return {A::kPlusX, A::kPlusY, A::kPlusX, A::kPlusY};
    case SequenceKind::kXy8:
      return {A::kPlusX, A::kPlusY, A::kPlusX, A::kPlusY,
              A::kPlusY, A::kPlusX, A::kPlusY, A::kPlusX};
    case SequenceKind::kXy16: {
      auto v = block_axes(SequenceKind::kXy8);
      const auto first = v;
      for (Axis a : first) v.push_back(negate(a));
      return v;
    }
    default:
      break;
  }
  throw DomainError("kind has no pi-pulse block");
}

}  // namespace

int SequencePlan::effective_block_size() const {
  return natural_block_size(train_kind(*this));
}

bool SequencePlan::has_pi_train() const { return kind != SequenceKind::kRamsey; }

void SequencePlan::validate() const {
  std::ostringstream os;
  if (!std::isfinite(tau_us)) throw DomainError("tau must be finite");
  if (kind == SequenceKind::kRamsey) {
    if (tau_us < 0) throw DomainError("ramsey tau must be nonnegative");
  } else if (!(tau_us > 0)) {
    throw DomainError("tau must be positive");
  }
  if (kind == SequenceKind::kHahn && n_pulses != 1)
    throw DomainError("hahn echo has exactly one pi pulse (N = 1)");
  if (kind != SequenceKind::kRamsey) {
    if (n_pulses < 1) throw DomainError("decoupling sequences need N >= 1");
    const SequenceKind tk = train_kind(*this);
    if (is_correlation(kind) && !is_train_kind(tk))
      throw DomainError("correlation block kind must be cp, cpmg, xy4, xy8 or xy16");
    const int k = natural_block_size(tk);
    if (block_size != 0 && block_size != k) {
      os << "block size k = " << block_size << " does not match " << sequence_kind_name(tk)
         << " (k = " << k << ")";
      throw DomainError(os.str());
    }
    if (n_pulses % k != 0) {
      os << "N = " << n_pulses << " is not divisible by the " << sequence_kind_name(tk)
         << " block size k = " << k;
      throw DomainError(os.str());
    }
  }
  if (is_correlation(kind) && !(t_corr_us >= 0))
    throw DomainError("t_corr must be nonnegative");
  if (kind == SequenceKind::kCorrelationMultipulse) {
    if (inner_pulses < 1) throw DomainError("correlation-multipulse needs M >= 1");
    if (inner_tau_us && !(*inner_tau_us > 0)) throw DomainError("inner tau must be positive");
  }
  if (!(pulses.half_pi_ns >= 0 && pulses.pi_ns >= 0))
    throw DomainError("pulse durations must be nonnegative");
  if (!(init_laser_ns >= 0 && readout_laser_ns >= 0))
    throw DomainError("laser marker durations must be nonnegative");
}

namespace {

std::string shape_ref_name(PulseShapeRef s) {
  return s == PulseShapeRef::kSquare ? "square" : "cosine-square";
}

PulseShapeRef shape_ref_from_name(const std::string &s) {
  if (s == "square") return PulseShapeRef::kSquare;
  if (s == "cosine-square") return PulseShapeRef::kCosineSquare;
  throw DomainError("unknown pulse shape '" + s + "'");
}

}  // namespace

json plan_to_json(const SequencePlan &p) {
  json j;
  j["schema"] = "nvsense.plan/1";
  j["kind"] = sequence_kind_name(p.kind);
  j["tau_us"] = p.tau_us;
  j["n_pulses"] = p.n_pulses;
  j["block_size"] = p.effective_block_size();
  j["block_kind"] = sequence_kind_name(p.block_kind);
  j["t_corr_us"] = p.t_corr_us;
  j["inner_pulses"] = p.inner_pulses;
  if (p.inner_tau_us) j["inner_tau_us"] = *p.inner_tau_us;
  j["readout"] = p.readout == ReadoutPhase::kPlusX ? "+x" : "-x";
  j["phase_cycling"] = p.phase_cycling;
  j["half_pi_ns"] = p.pulses.half_pi_ns;
  j["pi_ns"] = p.pulses.pi_ns;
  j["half_pi_shape"] = shape_ref_name(p.pulses.half_pi_shape);
  j["pi_shape"] = shape_ref_name(p.pulses.pi_shape);
  j["init_laser_ns"] = p.init_laser_ns;
  j["readout_laser_ns"] = p.readout_laser_ns;
  return j;
}

SequencePlan plan_from_json(const json &j) {
  try {
    if (j.contains("schema") && j.at("schema") != "nvsense.plan/1")
      throw DomainError("plan schema tag must be 'nvsense.plan/1'");
    SequencePlan p;
    p.kind = sequence_kind_from_name(j.at("kind").get<std::string>());
    p.tau_us = j.value("tau_us", p.tau_us);
    p.n_pulses = j.value("n_pulses", p.kind == SequenceKind::kRamsey ? 0 : 1);
    p.block_size = j.value("block_size", 0);
    if (j.contains("block_kind"))
      p.block_kind = sequence_kind_from_name(j.at("block_kind").get<std::string>());
    p.t_corr_us = j.value("t_corr_us", 0.0);
    p.inner_pulses = j.value("inner_pulses", 0);
    if (j.contains("inner_tau_us")) p.inner_tau_us = j.at("inner_tau_us").get<double>();
    const std::string ro = j.value("readout", std::string("+x"));
    if (ro != "+x" && ro != "-x") throw DomainError("readout must be '+x' or '-x'");
    p.readout = ro == "+x" ? ReadoutPhase::kPlusX : ReadoutPhase::kMinusX;
    p.phase_cycling = j.value("phase_cycling", true);
    p.pulses.half_pi_ns = j.value("half_pi_ns", 0.0);
    p.pulses.pi_ns = j.value("pi_ns", 0.0);
    if (j.contains("half_pi_shape"))
      p.pulses.half_pi_shape = shape_ref_from_name(j.at("half_pi_shape"));
    if (j.contains("pi_shape")) p.pulses.pi_shape = shape_ref_from_name(j.at("pi_shape"));
    p.init_laser_ns = j.value("init_laser_ns", 1000.0);
    p.readout_laser_ns = j.value("readout_laser_ns", 1000.0);
    p.validate();
    return p;
  } catch (const json::exception &e) {
    throw DomainError(std::string("malformed plan description: ") + e.what());
  }
}

SequencePlan load_plan(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open plan file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception &e) {
    throw DomainError("plan file '" + path + "': " + e.what());
  }
  return plan_from_json(j);
}

std::string gap_name(Gap g) {
  switch (g) {
    case Gap::kNone:
      return "none";
    case Gap::kHalfTau:
      return "tau/2";
    case Gap::kTau:
      return "tau";
    case Gap::kInnerHalfTau:
      return "inner tau/2";
    case Gap::kInnerTau:
      return "inner tau";
    case Gap::kStorage:
      return "storage";
  }
  return "none";
}

namespace {

PulseSpec half_pi(const SequencePlan &p, Axis a) {
  return {a, Angle::kHalfPi, p.pulses.half_pi_shape, p.pulses.half_pi_ns};
}

PulseSpec pi(const SequencePlan &p, Axis a) {
  return {a, Angle::kPi, p.pulses.pi_shape, p.pulses.pi_ns};
}

void append_train(const SequencePlan &p, SequenceKind k, int n, Gap half, Gap full,
                  std::vector<SymbolicPulse> &out) {
  const auto axes = block_axes(k);
  for (int i = 0; i < n; ++i)
    out.push_back({pi(p, axes[static_cast<std::size_t>(i) % axes.size()]), i == 0 ? half : full});
}

}  // namespace

SymbolicSequence build_sequence(const SequencePlan &plan) {
  plan.validate();
  SymbolicSequence seq;
  seq.plan = plan;
  auto &v = seq.pulses;
  const Axis nominal = plan.readout == ReadoutPhase::kPlusX ? Axis::kPlusX : Axis::kMinusX;

  if (plan.kind == SequenceKind::kRamsey) {
    v.push_back({half_pi(plan, Axis::kPlusX), Gap::kNone});
    v.push_back({half_pi(plan, nominal), Gap::kTau});
    return seq;
  }

  v.push_back({half_pi(plan, Axis::kPlusX), Gap::kNone});
  const SequenceKind tk = train_kind(plan);
  const SequenceKind pattern = plan.kind == SequenceKind::kHahn ? SequenceKind::kCp : tk;
  append_train(plan, pattern, plan.n_pulses, Gap::kHalfTau, Gap::kTau, v);
  if (is_correlation(plan.kind)) {
    v.push_back({half_pi(plan, Axis::kPlusY), Gap::kHalfTau});
    if (plan.kind == SequenceKind::kCorrelation) {
      v.push_back({half_pi(plan, Axis::kPlusY), Gap::kStorage});
    } else {
      append_train(plan, SequenceKind::kCpmg, plan.inner_pulses, Gap::kInnerHalfTau,
                   Gap::kInnerTau, v);
      v.push_back({half_pi(plan, Axis::kPlusY), Gap::kInnerHalfTau});
    }
    append_train(plan, pattern, plan.n_pulses, Gap::kHalfTau, Gap::kTau, v);
  }

  int x_count = 0;
  for (const auto &s : v)
    if (s.pulse.angle == Angle::kPi && is_x_axis(s.pulse.axis)) ++x_count;
  const Axis ro = (x_count % 2 == 1) ? nominal : negate(nominal);
  v.push_back({half_pi(plan, ro), Gap::kHalfTau});
  return seq;
}

bool readout_flipped(const SymbolicSequence &seq) {
  if (seq.pulses.empty()) return false;
  const Axis nominal = seq.plan.readout == ReadoutPhase::kPlusX ? Axis::kPlusX : Axis::kMinusX;
  return seq.pulses.back().pulse.axis != nominal;
}

namespace {

constexpr std::int64_t kTicksPerNs = 1000000;  // 1 fs

Rational ns_from_us(double us) { return Rational::from_double(us * 1000.0, kTicksPerNs); }
Rational ns_exact(double ns) { return Rational::from_double(ns, kTicksPerNs); }

std::string ns_str(const Rational &r) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", r.to_double());
  return buf;
}

}  // namespace

TimedEventList expand_timing(const SymbolicSequence &seq) {
  return expand_timing(seq, seq.plan.tau_us, seq.plan.pulses);
}

TimedEventList expand_timing(const SymbolicSequence &seq, double tau_us,
                             const PulseDurations &durations) {
  const SequencePlan &p = seq.plan;
  const Rational tau = ns_from_us(tau_us);
  const Rational inner = ns_from_us(p.inner_tau_us.value_or(tau_us));
  const Rational storage = ns_from_us(p.t_corr_us);
  const Rational two(2);

  auto gap_len = [&](Gap g) -> Rational {
    switch (g) {
      case Gap::kNone:
        return Rational(0);
      case Gap::kHalfTau:
        return tau / two;
      case Gap::kTau:
        return tau;
      case Gap::kInnerHalfTau:
        return inner / two;
      case Gap::kInnerTau:
        return inner;
      case Gap::kStorage:
        return storage;
    }
    return Rational(0);
  };

  TimedEventList out;
  Rational sensing(0);
  Rational cursor(0);  // outgoing reference of the previous pulse
  for (std::size_t i = 0; i < seq.pulses.size(); ++i) {
    const SymbolicPulse &sp = seq.pulses[i];
    PulseSpec pulse = sp.pulse;
    pulse.duration_ns = pulse.angle == Angle::kPi ? durations.pi_ns : durations.half_pi_ns;
    pulse.shape = pulse.angle == Angle::kPi ? durations.pi_shape : durations.half_pi_shape;
    const Rational d = ns_exact(pulse.duration_ns);
    const Rational len = gap_len(sp.gap_before);
    if (sp.gap_before == Gap::kHalfTau || sp.gap_before == Gap::kTau) sensing += len;

    Rational start(0);
    if (i > 0) {
      const TimedEvent &prev = out.events.back();
      if (sp.gap_before == Gap::kNone)
        start = prev.end_ns();
      else
        start = pulse.angle == Angle::kPi ? cursor + len - d / two : cursor + len;
      // Pi pulses keep a guard band of half their width on each side.
      Rational guard(0);
      if (prev.pulse.angle == Angle::kPi) guard += prev.duration_ns / two;
      if (pulse.angle == Angle::kPi) guard += d / two;
      const Rational free = start - prev.end_ns();
      if (free < guard) {
        std::ostringstream os;
        os << "tau too small for the pulse durations: " << gap_name(sp.gap_before)
           << " gap between pulse " << i << " (" << prev.pulse.label() << ") and pulse "
           << i + 1 << " (" << pulse.label() << ") leaves " << ns_str(free)
           << " ns free; " << ns_str(guard) << " ns required";
        throw DomainError(os.str());
      }
    }
    out.events.push_back({start, d, pulse});
    cursor = pulse.angle == Angle::kPi ? start + d / two : start + d;
  }
  out.sensing_time_ns = sensing;
  out.end_ns = out.events.empty() ? Rational(0) : out.events.back().end_ns();
  out.init = {-ns_exact(p.init_laser_ns), ns_exact(p.init_laser_ns)};
  out.readout = {out.end_ns, ns_exact(p.readout_laser_ns)};
  return out;
}

std::string TimedEventList::timing_table() const {
  std::ostringstream os;
  os << "# idx  pulse  start_ns  center_ns  end_ns\n";
  os << "laser-init  start " << ns_str(init.start_ns) << "  duration "
     << ns_str(init.duration_ns) << "\n";
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto &e = events[i];
    os << i + 1 << "  " << e.pulse.label() << "  " << ns_str(e.start_ns) << "  "
       << ns_str(e.center_ns()) << "  " << ns_str(e.end_ns()) << "\n";
  }
  os << "laser-readout  start " << ns_str(readout.start_ns) << "  duration "
     << ns_str(readout.duration_ns) << "\n";
  os << "sensing_time_ns " << ns_str(sensing_time_ns) << "\n";
  return os.str();
}

std::pair<SequencePlan, SequencePlan> phase_cycle_pair(const SequencePlan &plan) {
  SequencePlan a = plan, b = plan;
  a.readout = ReadoutPhase::kPlusX;
  b.readout = ReadoutPhase::kMinusX;
  return {a, b};
}

double combine_phase_cycled(double p_plus, double p_minus) {
  return 0.5 * (p_plus + 1.0 - p_minus);
}

EnvelopeShape envelope_for(PulseShapeRef s) {
  return s == PulseShapeRef::kSquare ? EnvelopeShape::kSquare : EnvelopeShape::kCosineSquare;
}

IQWaveform sequence_to_waveform(const TimedEventList &ev, const WaveformSettings &ws) {
  if (!(ws.sample_rate_gsps > 0)) throw DomainError("sample rate must be positive");
  const double end = ev.end_ns.to_double();
  if (end > ws.max_duration_ns) {
    std::ostringstream os;
    os << "sequence lasts " << end << " ns, above the configured maximum "
       << ws.max_duration_ns << " ns";
    throw DomainError(os.str());
  }
  const auto total = static_cast<std::size_t>(std::llround(end * ws.sample_rate_gsps));
  IQWaveform w;
  w.sample_rate_gsps = ws.sample_rate_gsps;
  w.f_if_mhz = ws.f_if_mhz;
  w.theta_if_deg = 0.0;
  w.i.assign(total, 0.0);
  w.q.assign(total, 0.0);
  std::int64_t last_end = -1;
  for (std::size_t k = 0; k < ev.events.size(); ++k) {
    const auto &e = ev.events[k];
    if (e.pulse.duration_ns <= 0)
      throw DomainError("ideal (zero-duration) pulses cannot be rendered to a waveform");
    EnvelopeSpec spec;
    spec.shape = envelope_for(e.pulse.shape);
    spec.duration_ns = e.pulse.duration_ns;
    const auto start = static_cast<std::int64_t>(
        std::llround(e.start_ns.to_double() * ws.sample_rate_gsps));
    const IQWaveform seg = synthesize_iq(spec, ws.f_if_mhz, axis_phase_deg(e.pulse.axis),
                                         ws.sample_rate_gsps, start);
    if (start < last_end) {
      std::ostringstream os;
      os << "pulse " << k + 1 << " (" << e.pulse.label() << ") overlaps the previous pulse "
         << "after sample rounding";
      throw DomainError(os.str());
    }
    const std::int64_t stop = start + static_cast<std::int64_t>(seg.size());
    if (stop > static_cast<std::int64_t>(total)) {
      w.i.resize(static_cast<std::size_t>(stop), 0.0);
      w.q.resize(static_cast<std::size_t>(stop), 0.0);
    }
    for (std::size_t n = 0; n < seg.size(); ++n) {
      w.i[static_cast<std::size_t>(start) + n] = seg.i[n];
      w.q[static_cast<std::size_t>(start) + n] = seg.q[n];
    }
    last_end = stop;
  }
  return w;
}

}  // namespace nvsense
