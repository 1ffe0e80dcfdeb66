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


#include "nvsense/pipelines.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nvsense/constants.hpp"
#include "nvsense/errors.hpp"
#include "nvsense/spectrum.hpp"

namespace nvsense {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// c + sum_k (a_k cos 2 pi f_k x + b_k sin 2 pi f_k x), f in kHz, x in us.
// Amplitudes start from a linear solve at the given frequencies.
FitResult fit_tones(const std::vector<double> &x, const std::vector<double> &y,
                    const std::vector<double> &f_init) {
  const std::size_t nt = f_init.size();
  const Eigen::Index m = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd B(m, static_cast<Eigen::Index>(1 + 2 * nt));
  Eigen::VectorXd Y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double xi = x[static_cast<std::size_t>(i)];
    B(i, 0) = 1.0;
    for (std::size_t k = 0; k < nt; ++k) {
      const double ph = kTwoPi * f_init[k] * xi * 1e-3;
      B(i, static_cast<Eigen::Index>(1 + 2 * k)) = std::cos(ph);
      B(i, static_cast<Eigen::Index>(2 + 2 * k)) = std::sin(ph);
    }
    Y[i] = y[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd lin = B.colPivHouseholderQr().solve(Y);

  FitProblem prob;
  prob.x = x;
  prob.y = y;
  prob.params.push_back({"offset", lin[0]});
  for (std::size_t k = 0; k < nt; ++k) {
    const std::string s = std::to_string(k);
    prob.params.push_back({"f" + s + "_kHz", f_init[k]});
    prob.params.push_back({"a" + s, lin[static_cast<Eigen::Index>(1 + 2 * k)]});
    prob.params.push_back({"b" + s, lin[static_cast<Eigen::Index>(2 + 2 * k)]});
  }
  prob.model = [nt](double xi, std::span<const double> q) {
    double v = q[0];
    for (std::size_t k = 0; k < nt; ++k) {
      const double ph = kTwoPi * q[1 + 3 * k] * xi * 1e-3;
      v += q[2 + 3 * k] * std::cos(ph) + q[3 + 3 * k] * std::sin(ph);
    }
    return v;
  };
  return fit(prob);
}

std::vector<double> tau_axis(const MeasurementTrace &t) {
  std::vector<double> tau = t.x;
  if (t.axis == AxisKind::kInverseTwoTau) {
    for (auto &v : tau) v = 1e3 / (2.0 * v);
  } else if (t.axis != AxisKind::kTau) {
    throw DomainError("expected a tau or (2 tau)^-1 trace, got '" + axis_kind_name(t.axis) + "'");
  }
  return tau;
}

// Crossing of a level by linear interpolation; NaN when never crossed.
double first_crossing(const std::vector<double> &x, const std::vector<double> &y, double level) {
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double a = y[i - 1] - level, b = y[i] - level;
    if (a == 0.0) return x[i - 1];
    if ((a > 0) != (b > 0)) return x[i - 1] + (x[i] - x[i - 1]) * a / (a - b);
  }
  return kNaN;
}

}  // namespace

// ---- envelope normalization ----

DecoherenceEnvelope fit_envelope(const MeasurementTrace &trace, const std::vector<bool> &mask,
                                 EnvelopeKind kind, FitResult *details) {
  if (!mask.empty() && mask.size() != trace.size())
    throw DomainError("mask length differs from the trace");
  std::vector<double> w, y;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (!mask.empty() && !mask[i]) continue;
    w.push_back(coherence_window_us(trace, i, kind));
    y.push_back(trace.y[i]);
  }
  if (w.size() < 3) throw DomainError("envelope fit needs at least 3 masked points");
  std::vector<std::size_t> order(w.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return w[a] < w[b]; });
  std::vector<double> ws, ys;
  for (auto i : order) {
    ws.push_back(w[i]);
    ys.push_back(y[i]);
  }
  double t0 = first_crossing(ws, ys, 0.5 * (1.0 + std::exp(-1.0)));
  if (!(t0 > 0)) t0 = std::max(ws.back(), 1e-6);

  FitProblem prob;
  prob.x = ws;
  prob.y = ys;
  prob.params = {{"T_us", t0, 1e-9, kInf}, {"p", 1.0, 0.1, 10.0}};
  prob.model = [](double x, std::span<const double> q) {
    return 0.5 + 0.5 * std::exp(-std::pow(std::abs(x) / q[0], q[1]));
  };
  FitResult r = fit(prob);
  r.provenance["envelope_kind"] = envelope_kind_name(kind);
  r.provenance["initial_T_us"] = t0;
  if (details) *details = r;
  DecoherenceEnvelope env;
  env.kind = kind;
  env.time_constant_us = r.values[0];
  env.exponent = r.values[1];
  return env;
}

MeasurementTrace normalize_by_envelope(const MeasurementTrace &trace,
                                       const DecoherenceEnvelope &env,
                                       const std::vector<bool> &mask) {
  env.validate();
  if (!mask.empty() && mask.size() != trace.size())
    throw DomainError("mask length differs from the trace");
  MeasurementTrace out = trace;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double e = env.factor(coherence_window_us(trace, i, env.kind));
    const bool in_mask = mask.empty() || mask[i];
    if (!(e > 1e-12)) {
      if (in_mask) {
        std::ostringstream os;
        os << "envelope is " << e << " at masked point " << i << " (x = " << trace.x[i] << ")";
        throw DomainError(os.str());
      }
      out.y[i] = kNaN;
      continue;
    }
    out.y[i] = 0.5 + (trace.y[i] - 0.5) / e;
  }
  out.set("normalized_T_us", env.time_constant_us);
  out.set("normalized_p", env.exponent);
  out.set("normalized_kind", envelope_kind_name(env.kind));
  return out;
}

// ---- hyperfine extraction ----

std::string extraction_status_name(ExtractionStatus s) {
  switch (s) {
    case ExtractionStatus::kResolved:
      return "resolved";
    case ExtractionStatus::kUnderdetermined:
      return "underdetermined";
    case ExtractionStatus::kUncoupled:
      return "uncoupled";
  }
  return "underdetermined";
}

HyperfineExtraction extract_hyperfine_pipeline(const HyperfineBundle &b,
                                               const HyperfineOptions &opts) {
  HyperfineExtraction out;
  nlohmann::json &rep = out.report;

  // 1. dip in the tau sweep
  const std::vector<double> tau = tau_axis(b.tau_sweep);
  if (tau.size() < 3) throw DomainError("tau sweep needs at least 3 points");
  const auto &ty = b.tau_sweep.y;
  const std::size_t imin = static_cast<std::size_t>(std::min_element(ty.begin(), ty.end()) - ty.begin());
  const double depth = *std::max_element(ty.begin(), ty.end()) - ty[imin];
  double tau_dip = tau[imin];
  if (imin > 0 && imin + 1 < tau.size()) {
    const double y0 = ty[imin - 1], y1 = ty[imin], y2 = ty[imin + 1];
    const double den = y0 - 2.0 * y1 + y2;
    if (den > 0) {
      const double d = std::clamp(0.5 * (y0 - y2) / den, -0.5, 0.5);
      tau_dip = d < 0 ? tau[imin] + d * (tau[imin] - tau[imin - 1])
                      : tau[imin] + d * (tau[imin + 1] - tau[imin]);
    }
  }
  rep["dip"] = {{"tau_us", tau_dip},
                {"inverse_two_tau_kHz", 1e3 / (2.0 * tau_dip)},
                {"p0_min", ty[imin]},
                {"depth", depth}};
  if (depth < opts.min_dip_depth) {
    out.status = ExtractionStatus::kUncoupled;
    out.coupling = HyperfineCoupling(0.0, 0.0);
    out.tau_us = tau_dip;
    rep["status"] = extraction_status_name(out.status);
    rep["coupling"] = {{"a_par_kHz", 0.0}, {"a_perp_kHz", 0.0}};
    return out;
  }

  // 2. conditional frequencies from the correlation trace
  SpectrumOptions so;
  so.window = Window::kHann;
  so.zero_pad = opts.zero_pad;
  so.threshold = 0.02;
  const Spectrum cs = spectrum(b.correlation, so);
  rep["correlation_spectrum"]["bin_width_kHz"] = cs.bin_width;
  nlohmann::json cpeaks = nlohmann::json::array();
  for (const auto &p : cs.peaks) cpeaks.push_back({{"f_kHz", p.frequency}, {"amplitude", p.amplitude}});
  rep["correlation_spectrum"]["peaks"] = cpeaks;
  if (cs.peaks.size() < 2) {
    out.status = ExtractionStatus::kUnderdetermined;
    rep["status"] = extraction_status_name(out.status);
    rep["reason"] = "correlation spectrum shows fewer than two lines";
    if (!cs.peaks.empty()) out.f0_khz = out.f1_khz = cs.peaks[0].frequency;
    return out;
  }
  const FitResult tones = fit_tones(b.correlation.x, b.correlation.y,
                                    {cs.peaks[0].frequency, cs.peaks[1].frequency});
  double fa = std::abs(tones.value("f0_kHz")), fb = std::abs(tones.value("f1_kHz"));
  rep["correlation_fit"] = fit_result_to_json(tones);
  bool swap = false;
  if (b.larmor_khz)
    swap = std::abs(fb - *b.larmor_khz) < std::abs(fa - *b.larmor_khz);
  else
    swap = fb < fa;
  if (swap) std::swap(fa, fb);
  out.f0_khz = fa;
  out.f1_khz = fb;
  rep["f0_kHz"] = fa;
  rep["f1_kHz"] = fb;
  rep["f0_rule"] = b.larmor_khz ? "nearest Larmor" : "lower line";
  if (b.larmor_khz) rep["larmor_kHz"] = *b.larmor_khz;

  // 3. nuclear Rabi frequency from the N sweep
  const double tau_n = b.n_sweep.has("tau_us") ? b.n_sweep.number("tau_us") : tau_dip;
  out.tau_us = tau_n;
  rep["n_sweep_tau_us"] = tau_n;
  MeasurementTrace nt = b.n_sweep;
  if (!nt.has("tau_us")) nt.set("tau_us", tau_n);
  nt = to_coherence_time(nt);
  const Spectrum ns = spectrum(nt, so);
  const double dN = nt.x.size() > 1 ? nt.x[1] - nt.x[0] : 0.0;
  rep["n_sweep_spectrum"]["bin_width_kHz"] = ns.bin_width;
  if (ns.peaks.empty() || ns.peaks[0].amplitude < opts.min_oscillation) {
    out.status = ExtractionStatus::kUnderdetermined;
    rep["status"] = extraction_status_name(out.status);
    rep["reason"] = "no oscillation in the N sweep";
    rep["n_sweep_spectrum"]["top_amplitude"] = ns.peaks.empty() ? 0.0 : ns.peaks[0].amplitude;
    return out;
  }
  const FitResult osc = fit_tones(nt.x, nt.y, {ns.peaks[0].frequency});
  rep["n_sweep_fit"] = fit_result_to_json(osc);
  const double sample_rate = 1e3 / dN;  // kHz
  double fm = std::fmod(std::abs(osc.value("f0_kHz")), sample_rate);
  if (fm > 0.5 * sample_rate) fm = sample_rate - fm;
  const double amp = std::hypot(osc.value("a0"), osc.value("b0"));
  const double offset = osc.value("offset");
  rep["n_sweep_frequency_kHz"] = fm;
  rep["n_sweep_amplitude"] = amp;
  rep["n_sweep_offset"] = offset;

  // 4. alias choice
  const double half_rate = 1e3 / (2.0 * tau_n);
  std::vector<double> cands = {fm, half_rate - fm};
  nlohmann::json cj = nlohmann::json::array();
  double best_cost = kInf;
  for (double fr : cands) {
    nlohmann::json c = {{"f_r_kHz", fr}};
    try {
      const HyperfineCoupling hc = invert_hyperfine(fa, fb, fr, tau_n);
      const RotationAngles ang = inversion_angles(fa, fb, fr, tau_n);
      const double mx = hc.a_perpendicular_khz() / fb;
      const double s0 = std::sin(0.5 * ang.phi0), s1 = std::sin(0.5 * ang.phi1);
      const double den = 1.0 + std::cos(ang.phi_r);
      const double k = den > 1e-12 ? 2.0 * mx * mx * s0 * s0 * s1 * s1 / den : kInf;
      const double cost = std::abs(0.5 * k - amp) + std::abs(1.0 - 0.5 * k - offset);
      c["a_par_kHz"] = hc.a_parallel_khz();
      c["a_perp_kHz"] = hc.a_perpendicular_khz();
      c["predicted_amplitude"] = 0.5 * k;
      c["cost"] = cost;
      if (cost < best_cost) {
        best_cost = cost;
        out.coupling = hc;
        out.fr_khz = fr;
        out.status = ExtractionStatus::kResolved;
      }
    } catch (const DomainError &e) {
      c["error"] = e.what();
    }
    cj.push_back(c);
  }
  rep["f_r_candidates"] = cj;
  if (!std::isfinite(best_cost)) {
    out.status = ExtractionStatus::kUnderdetermined;
    rep["status"] = extraction_status_name(out.status);
    rep["reason"] = "neither f_r alias inverts";
    return out;
  }
  rep["f_r_kHz"] = out.fr_khz;
  rep["status"] = extraction_status_name(out.status);
  rep["coupling"] = {{"a_par_kHz", out.coupling.a_parallel_khz()},
                     {"a_perp_kHz", out.coupling.a_perpendicular_khz()}};
  return out;
}

HyperfineBundle simulate_hyperfine_bundle(const SpinRegister &reg, const BundlePlan &bp) {
  SweepOptions so;
  so.threads = bp.threads;
  HyperfineBundle b;

  SequencePlan tp;
  tp.kind = bp.tau_kind;
  tp.n_pulses = bp.tau_pulses;
  b.tau_sweep = simulate_sweep(reg, tp, SweepAxis::kTau, bp.tau_grid_us, so);

  double tau = bp.probe_tau_us;
  if (std::isnan(tau)) {
    const auto &y = b.tau_sweep.y;
    tau = b.tau_sweep.x[static_cast<std::size_t>(std::min_element(y.begin(), y.end()) - y.begin())];
  }

  SequencePlan cp;
  cp.kind = SequenceKind::kCorrelation;
  cp.block_kind = SequenceKind::kXy8;
  cp.n_pulses = bp.corr_pulses;
  cp.tau_us = tau;
  std::vector<double> tc(static_cast<std::size_t>(bp.t_corr_points));
  for (std::size_t i = 0; i < tc.size(); ++i) tc[i] = bp.t_corr_start_us + bp.t_corr_step_us * static_cast<double>(i);
  b.correlation = simulate_sweep(reg, cp, SweepAxis::kCorrelationTime, tc, so);

  SequencePlan np;
  np.kind = SequenceKind::kCpmg;
  np.tau_us = tau;
  std::vector<double> ng;
  for (int n = 2; n <= bp.n_max; n += 2) ng.push_back(n);
  b.n_sweep = simulate_sweep(reg, np, SweepAxis::kPulseCount, ng, so);
  return b;
}

FrSearchResult grid_search_fr(const MeasurementTrace &measured, const SpinRegister &known,
                              Species species, double f0, double f1, double tau_inv,
                              std::span<const double> grid, int n_pulses,
                              const FullSpectrumOptions &opts, double lo, double hi) {
  if (grid.empty()) throw DomainError("f_r grid is empty");
  const std::vector<double> tau = tau_axis(measured);
  FrSearchResult r;
  r.best_loss = kInf;
  for (double fr : grid) {
    double loss = kInf;
    try {
      const HyperfineCoupling c = invert_hyperfine(f0, f1, fr, tau_inv);
      std::vector<NuclearSpin> nuclei = known.nuclei();
      nuclei.emplace_back(species, c);
      const SpinRegister reg(known.b0_mt(), nuclei);
      loss = 0.0;
      for (std::size_t i = 0; i < tau.size(); ++i) {
        const double f = 1e3 / (2.0 * tau[i]);
        if (f < lo || f > hi) continue;
        const double d = measured.y[i] - full_spectrum_p0(reg, tau[i], n_pulses, opts);
        loss += d * d;
      }
      if (loss < r.best_loss) {
        r.best_loss = loss;
        r.best_fr_khz = fr;
        r.best_coupling = c;
      }
    } catch (const DomainError &) {
      loss = kInf;
    }
    r.fr_grid.push_back(fr);
    r.losses.push_back(loss);
  }
  if (!std::isfinite(r.best_loss)) throw DomainError("no f_r candidate inverts");
  return r;
}

// ---- decay and correlation fits ----

FitResult fit_ramsey(const MeasurementTrace &t, const RamseyFitOptions &o) {
  if (t.axis != AxisKind::kTau) throw DomainError("Ramsey fit needs a tau trace");
  if (t.size() < 8) throw DomainError("Ramsey fit needs at least 8 points");
  const double depth = std::max(0.5 - t.y.front(), 1e-3);
  // Oscillation candidates: the strongest spectral lines, each tried as a start.
  std::vector<double> a2s;
  if (o.a2_mhz) {
    a2s.push_back(*o.a2_mhz);
  } else {
    SpectrumOptions so;
    so.zero_pad = 4;
    const Spectrum s = spectrum(t, so);
    for (std::size_t k = 0; k < s.peaks.size() && k < 3; ++k)
      a2s.push_back(s.peaks[k].frequency * 1e-3);  // kHz -> MHz
    if (a2s.empty()) a2s.push_back(0.0);
  }
  // Decay time from where |P0 - 1/2| last exceeds depth / e.
  double t2 = t.x.back();
  for (std::size_t i = t.size(); i-- > 0;) {
    if (std::abs(t.y[i] - 0.5) > depth * std::exp(-1.0)) {
      t2 = std::max(t.x[i], 1e-6);
      break;
    }
  }
  FitProblem prob;
  prob.x = t.x;
  prob.y = t.y;
  prob.model = [](double x, std::span<const double> q) {
    return ramsey_model(x, q[0], q[1], q[2], q[3], q[4], q[5]);
  };
  FitResult best;
  bool have = false;
  nlohmann::json starts = nlohmann::json::array();
  for (double a2 : a2s) {
    prob.params = {{"t2s_us", o.t2s_us.value_or(t2), 1e-9, kInf},
                   {"p", o.p.value_or(2.0), 0.2, 5.0},
                   {"a0", o.a0.value_or(depth / 3.0), -1.0, 1.0, o.fix_amplitudes},
                   {"a1", o.a1.value_or(2.0 * depth / 3.0), -1.0, 1.0, o.fix_amplitudes},
                   {"a2_MHz", a2, 0.0, kInf},
                   {"a3", o.a3, -kTwoPi, kTwoPi, o.fix_a3}};
    FitResult r = fit(prob);
    starts.push_back({{"a2_MHz", a2}, {"residual_norm", r.residual_norm}});
    if (!have || r.residual_norm < best.residual_norm) {
      best = r;
      have = true;
    }
  }
  best.provenance["model"] = "ramsey";
  best.provenance["initial_t2s_us"] = o.t2s_us.value_or(t2);
  best.provenance["starts"] = starts;
  return best;
}

FitResult fit_echo(const MeasurementTrace &t, std::optional<double> t2_guess,
                   std::optional<double> p_guess) {
  if (t.axis != AxisKind::kTau) throw DomainError("echo fit needs a tau trace");
  if (t.size() < 3) throw DomainError("echo fit needs at least 3 points");
  double t2 = 2.0 * first_crossing(t.x, t.y, 0.5 * (1.0 + std::exp(-1.0)));
  if (!(t2 > 0)) t2 = 2.0 * t.x.back();
  FitProblem prob;
  prob.x = t.x;
  prob.y = t.y;
  prob.params = {{"t2_us", t2_guess.value_or(t2), 1e-9, kInf}, {"p", p_guess.value_or(1.0), 0.1, 10.0}};
  prob.model = [](double x, std::span<const double> q) { return echo_model(x, q[0], q[1]); };
  FitResult r = fit(prob);
  r.provenance["model"] = "echo";
  r.provenance["initial_t2_us"] = prob.params[0].initial;
  return r;
}

FitResult fit_g2(const MeasurementTrace &t) {
  if (t.size() < 5) throw DomainError("g2 fit needs at least 5 points");
  std::vector<double> ad(t.size());
  std::size_t i0 = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    ad[i] = std::abs(t.x[i]);
    if (ad[i] < ad[i0]) i0 = i;
  }
  const double zeta0 = std::clamp(1.0 - t.y[i0], 0.05, 1.0);
  const double ymax = *std::max_element(t.y.begin(), t.y.end());
  const double eta0 = ymax > 1.0 ? 1.0 + 2.0 * (ymax - 1.0) / zeta0 + 0.05 : 1.0;
  // Recovery time from the one-sided profile sorted by |delay|.
  std::vector<std::size_t> order(t.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ad[a] < ad[b]; });
  double t1 = kNaN;
  const double level = 1.0 - zeta0 * std::exp(-1.0);
  for (auto i : order) {
    if (t.y[i] >= level) {
      t1 = ad[i];
      break;
    }
  }
  const double g1 = t1 > 0 ? 1.0 / t1 : 0.1;
  FitProblem prob;
  prob.x = t.x;
  prob.y = t.y;
  prob.params = {{"zeta", zeta0, 0.0, 1.0},
                 {"eta", std::max(eta0, 1.0), 0.0, 20.0},
                 {"gamma1_per_ns", g1, 0.0, kInf},
                 {"gamma2_per_ns", 0.1 * g1, 0.0, kInf}};
  prob.model = [](double x, std::span<const double> q) {
    return g2_model(x, q[0], q[1], q[2], q[3]);
  };
  FitResult r = fit(prob);
  r.provenance["model"] = "g2";
  r.provenance["g2_zero"] = 1.0 - r.values[0];
  r.provenance["initial"] = {{"zeta", zeta0}, {"eta", prob.params[1].initial}, {"gamma1_per_ns", g1}};
  return r;
}

// ---- proton depth ----

FitResult extract_depth_pipeline(const MeasurementTrace &normalized, const DepthOptions &o) {
  if (!(o.rho_per_m3 > 0)) throw DomainError("proton density must be positive");
  if (o.n_pulses < 1) throw DomainError("pulse count must be positive");
  const std::vector<double> tau = tau_axis(normalized);
  std::vector<double> x, c;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (!std::isfinite(normalized.y[i])) continue;
    x.push_back(tau[i]);
    c.push_back(2.0 * normalized.y[i] - 1.0);
  }
  if (x.size() < 3) throw DomainError("depth fit needs at least 3 finite points");
  const std::size_t imin = static_cast<std::size_t>(std::min_element(c.begin(), c.end()) - c.begin());
  double d0 = o.depth_upper_nm;
  const double cmin = c[imin];
  if (cmin > 0 && cmin < 1) {
    const double b = std::sqrt(-std::log(cmin) / 8.0) /
                     (kConstants.gamma_e_hz_per_t() * o.n_pulses * x[imin] * 1e-6) * 1e9;
    d0 = std::clamp(depth_from_b_rms_nm(o.rho_per_m3, b), o.depth_lower_nm, o.depth_upper_nm);
  } else if (cmin <= 0) {
    d0 = o.depth_lower_nm;
  }
  FitProblem prob;
  prob.x = x;
  prob.y = c;
  prob.params = {{"depth_nm", d0, o.depth_lower_nm, o.depth_upper_nm},
                 {"f_h_kHz", o.f_h_khz, 0.0, kInf, !o.free_f_h}};
  const double rho = o.rho_per_m3;
  const int n = o.n_pulses;
  prob.model = [rho, n](double t, std::span<const double> q) {
    return proton_contrast(b_rms_nt(rho, q[0]), q[1], n, t);
  };
  FitResult r = fit(prob);
  r.provenance["model"] = "proton-depth";
  r.provenance["initial_depth_nm"] = d0;
  r.provenance["c_min"] = cmin;
  r.provenance["tau_at_c_min_us"] = x[imin];
  r.provenance["rho_per_m3"] = rho;
  r.provenance["n_pulses"] = n;
  r.provenance["B_rms_nT"] = b_rms_nt(rho, r.values[0]);
  if (r.at_bound[0]) r.status += "; depth at bound";
  return r;
}

}  // namespace nvsense
