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

#include "nvsense/simulator.hpp"

#include <Eigen/Eigenvalues>
#include <atomic>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "nvsense/constants.hpp"
#include "nvsense/errors.hpp"
#include "nvsense/kernels.hpp"
#include "nvsense/register_io.hpp"

namespace nvsense {

namespace {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;

// Nuclear register Hamiltonians, diagonalized once.
class Bath {
 public:
  explicit Bath(const SpinRegister &reg) {
    const int n = static_cast<int>(reg.nuclei().size());
    if (n > kMaxNuclei) {
      std::ostringstream os;
      os << "register holds " << n << " nuclei; the simulator supports at most " << kMaxNuclei;
      throw CapacityError(os.str());
    }
    dim_ = 1 << n;
    Mat h0 = Mat::Zero(dim_, dim_), h1 = Mat::Zero(dim_, dim_);
    for (int j = 0; j < n; ++j) {
      const auto hj = build_conditional_hamiltonians(reg.nuclei()[static_cast<std::size_t>(j)],
                                                     reg.b0_mt());
      h0 += embed(hj.ms0, j, n);
      h1 += embed(hj.ms_minus1, j, n);
    }
    Eigen::SelfAdjointEigenSolver<Mat> e0(h0), e1(h1);
    v0_ = e0.eigenvectors();
    l0_ = e0.eigenvalues();
    v1_ = e1.eigenvectors();
    l1_ = e1.eigenvalues();
  }

  int dim() const { return dim_; }

  // exp(-2 pi i H t) with H in kHz and t in us.
  const std::pair<Mat, Mat> &propagators(const Rational &t_ns) {
    const auto key = std::make_pair(t_ns.num(), t_ns.den());
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const double t_ms = t_ns.to_double() * 1e-6;
    auto u = [&](const Mat &v, const Eigen::VectorXd &l) {
      Eigen::VectorXcd ph(dim_);
      for (int k = 0; k < dim_; ++k) ph[k] = std::polar(1.0, -kTwoPi * l[k] * t_ms);
      return Mat(v * ph.asDiagonal() * v.adjoint());
    };
    return cache_.emplace(key, std::make_pair(u(v0_, l0_), u(v1_, l1_))).first->second;
  }

 private:
  static Mat embed(const Eigen::Matrix2cd &h, int j, int n) {
    const int left = 1 << j, right = 1 << (n - j - 1);
    Mat out = Mat::Zero(left * 2 * right, left * 2 * right);
    for (int a = 0; a < left; ++a)
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
          for (int b = 0; b < right; ++b)
            out((a * 2 + r) * right + b, (a * 2 + c) * right + b) = h(r, c);
    return out;
  }

  int dim_ = 1;
  Mat v0_, v1_;
  Eigen::VectorXd l0_, l1_;
  std::map<std::pair<std::int64_t, std::int64_t>, std::pair<Mat, Mat>> cache_;
};

Eigen::Matrix2cd rotation(const PulseSpec &p) {
  const double theta = p.angle == Angle::kPi ? kPi : 0.5 * kPi;
  double nx = 0, ny = 0;
  switch (p.axis) {
    case Axis::kPlusX:
      nx = 1;
      break;
    case Axis::kMinusX:
      nx = -1;
      break;
    case Axis::kPlusY:
      ny = 1;
      break;
    case Axis::kMinusY:
      ny = -1;
      break;
  }
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  // cos(t/2) I - i sin(t/2) (nx sx + ny sy)
  Eigen::Matrix2cd r;
  r << cd(c, 0), cd(-s * ny, -s * nx), cd(s * ny, -s * nx), cd(c, 0);
  return r;
}

bool dephasing_gap(const SymbolicSequence &seq, std::size_t i) {
  const Gap g = seq.pulses[i].gap_before;
  if (g == Gap::kStorage) return true;
  return g == Gap::kInnerHalfTau && i > 0 && seq.pulses[i - 1].pulse.angle == Angle::kHalfPi;
}

// Evolves the column blocks (psi0 over m_S = 0, psi1 over m_S = -1).
void run(Bath &bath, const SymbolicSequence &seq, const TimedEventList &ev, double detuning_mhz,
         bool flip_storage, Mat &psi0, Mat &psi1) {
  Rational now(0);
  for (std::size_t i = 0; i < ev.events.size(); ++i) {
    const TimedEvent &e = ev.events[i];
    if (flip_storage && dephasing_gap(seq, i)) psi1 = -psi1;
    const Rational dt = e.start_ns - now;
    if (dt > Rational(0)) {
      const auto &u = bath.propagators(dt);
      psi0 = u.first * psi0;
      psi1 = u.second * psi1;
      if (detuning_mhz != 0.0) psi1 *= std::polar(1.0, -kTwoPi * detuning_mhz * dt.to_double() * 1e-3);
    }
    const Eigen::Matrix2cd r = rotation(e.pulse);
    Mat a = r(0, 0) * psi0 + r(0, 1) * psi1;
    Mat b = r(1, 0) * psi0 + r(1, 1) * psi1;
    psi0.swap(a);
    psi1.swap(b);
    now = e.end_ns();
  }
}

double branch_p0(Bath &bath, const SequencePlan &plan, double detuning, bool dephase) {
  const SymbolicSequence seq = build_sequence(plan);
  PulseDurations ideal = plan.pulses;
  ideal.half_pi_ns = 0.0;
  ideal.pi_ns = 0.0;
  const TimedEventList ev = expand_timing(seq, plan.tau_us, ideal);
  const int d = bath.dim();
  bool has_storage = false;
  for (std::size_t i = 0; i < seq.pulses.size(); ++i) has_storage |= dephasing_gap(seq, i);
  double acc = 0.0;
  const int branches = (dephase && has_storage) ? 2 : 1;
  for (int b = 0; b < branches; ++b) {
    Mat psi0 = Mat::Identity(d, d);
    Mat psi1 = Mat::Zero(d, d);
    run(bath, seq, ev, detuning, b == 1, psi0, psi1);
    acc += psi0.squaredNorm() / d;
  }
  return acc / branches;
}

double mixture_p0(Bath &bath, const SpinRegister &reg, const SequencePlan &plan,
                  const SimulatorOptions &opts) {
  auto one = [&](double det) {
    if (!plan.phase_cycling) return branch_p0(bath, plan, det, opts.storage_dephasing);
    const auto [plus, minus] = phase_cycle_pair(plan);
    return combine_phase_cycled(branch_p0(bath, plus, det, opts.storage_dephasing),
                                branch_p0(bath, minus, det, opts.storage_dephasing));
  };
  if (reg.nitrogen_mixture().empty()) return one(0.0);
  double p = 0.0;
  for (const auto &c : reg.nitrogen_mixture()) p += c.weight * one(c.detuning_mhz);
  return p;
}

}  // namespace

double evolve_ideal(const SpinRegister &reg, const SequencePlan &plan,
                    const SimulatorOptions &opts) {
  Bath bath(reg);
  return mixture_p0(bath, reg, plan, opts);
}

double evolve_ideal_branch(const SpinRegister &reg, const SequencePlan &plan,
                           double detuning_mhz, const SimulatorOptions &opts) {
  Bath bath(reg);
  return branch_p0(bath, plan, detuning_mhz, opts.storage_dephasing);
}

RegisterState evolve_state(const SpinRegister &reg, const SequencePlan &plan,
                           const RegisterState &initial, double detuning_mhz,
                           bool flip_storage) {
  Bath bath(reg);
  const int d = bath.dim();
  if (initial.size() != 2 * d) throw DomainError("initial state has the wrong dimension");
  const SymbolicSequence seq = build_sequence(plan);
  PulseDurations ideal = plan.pulses;
  ideal.half_pi_ns = 0.0;
  ideal.pi_ns = 0.0;
  const TimedEventList ev = expand_timing(seq, plan.tau_us, ideal);
  Mat psi0 = initial.head(d), psi1 = initial.tail(d);
  run(bath, seq, ev, detuning_mhz, flip_storage, psi0, psi1);
  RegisterState out(2 * d);
  out << psi0.col(0), psi1.col(0);
  return out;
}

std::string sweep_axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::kTau:
      return "tau";
    case SweepAxis::kPulseCount:
      return "n";
    case SweepAxis::kCorrelationTime:
      return "tcorr";
    case SweepAxis::kInnerPulseCount:
      return "m";
  }
  return "tau";
}

SweepAxis sweep_axis_from_name(const std::string &name) {
  if (name == "tau") return SweepAxis::kTau;
  if (name == "n" || name == "N") return SweepAxis::kPulseCount;
  if (name == "tcorr" || name == "t_corr") return SweepAxis::kCorrelationTime;
  if (name == "m" || name == "M") return SweepAxis::kInnerPulseCount;
  throw DomainError("unknown sweep axis '" + name + "'");
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)> &fn) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(n, threads < 1 ? 1 : threads));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto &t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

MeasurementTrace simulate_sweep(const SpinRegister &reg, const SequencePlan &tmpl,
                                SweepAxis axis, std::span<const double> grid,
                                const SweepOptions &opts) {
  if (grid.empty()) throw DomainError("sweep grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw DomainError("sweep grid must be strictly increasing");
  std::vector<SequencePlan> plans(grid.size(), tmpl);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double g = grid[i];
    switch (axis) {
      case SweepAxis::kTau:
        plans[i].tau_us = g;
        break;
      case SweepAxis::kCorrelationTime:
        plans[i].t_corr_us = g;
        break;
      case SweepAxis::kPulseCount:
      case SweepAxis::kInnerPulseCount: {
        if (g != std::floor(g)) throw DomainError("pulse-count grid values must be integers");
        (axis == SweepAxis::kPulseCount ? plans[i].n_pulses : plans[i].inner_pulses) =
            static_cast<int>(g);
        break;
      }
    }
    plans[i].validate();
  }
  MeasurementTrace t;
  t.x.assign(grid.begin(), grid.end());
  t.y.assign(grid.size(), 0.0);
  t.y_unit = "P0";
  switch (axis) {
    case SweepAxis::kTau:
      t.axis = AxisKind::kTau;
      t.x_unit = "us";
      break;
    case SweepAxis::kPulseCount:
      t.axis = AxisKind::kPulseCount;
      t.x_unit = "count";
      break;
    case SweepAxis::kCorrelationTime:
      t.axis = AxisKind::kCorrelationTime;
      t.x_unit = "us";
      break;
    case SweepAxis::kInnerPulseCount:
      t.axis = AxisKind::kInnerPulseCount;
      t.x_unit = "count";
      break;
  }
  Bath probe(reg);  // validates capacity before spawning workers
  (void)probe;
  parallel_for(grid.size(), opts.threads, [&](std::size_t i) {
    Bath bath(reg);
    t.y[i] = mixture_p0(bath, reg, plans[i], opts.sim);
  });
  t.set("sequence", sequence_kind_name(tmpl.kind));
  if (axis != SweepAxis::kTau) t.set("tau_us", tmpl.tau_us);
  if (axis != SweepAxis::kPulseCount) t.set("n_pulses", static_cast<double>(tmpl.n_pulses));
  if (tmpl.kind == SequenceKind::kCorrelation && axis != SweepAxis::kCorrelationTime)
    t.set("t_corr_us", tmpl.t_corr_us);
  t.set("phase_cycling", tmpl.phase_cycling ? "on" : "off");
  t.set("register_hash", register_hash(reg));
  t.set("b0_mT", reg.b0_mt());
  return t;
}

std::string envelope_kind_name(EnvelopeKind k) {
  switch (k) {
    case EnvelopeKind::kRamsey:
      return "ramsey";
    case EnvelopeKind::kEcho:
      return "echo";
    case EnvelopeKind::kMultipulse:
      return "multipulse";
  }
  return "multipulse";
}

EnvelopeKind envelope_kind_from_name(const std::string &name) {
  if (name == "ramsey") return EnvelopeKind::kRamsey;
  if (name == "echo") return EnvelopeKind::kEcho;
  if (name == "multipulse") return EnvelopeKind::kMultipulse;
  throw DomainError("unknown envelope kind '" + name + "'");
}

void DecoherenceEnvelope::validate() const {
  if (!(time_constant_us > 0)) throw DomainError("envelope time constant must be positive");
  if (!(exponent > 0)) throw DomainError("envelope exponent must be positive");
}

double DecoherenceEnvelope::factor(double window_us) const {
  if (std::isinf(time_constant_us)) return 1.0;
  return std::exp(-std::pow(std::abs(window_us) / time_constant_us, exponent));
}

double coherence_window_us(const MeasurementTrace &t, std::size_t i, EnvelopeKind kind) {
  const double x = t.x[i];
  if (kind == EnvelopeKind::kRamsey) {
    if (t.axis == AxisKind::kTau) return x;
    throw DomainError("ramsey envelope needs a tau-sweep trace, got axis '" +
                      axis_kind_name(t.axis) + "'");
  }
  auto n_pulses = [&] { return t.has("n_pulses") ? t.number("n_pulses") : 1.0; };
  switch (t.axis) {
    case AxisKind::kTau:
      return n_pulses() * x;
    case AxisKind::kInverseTwoTau:
      return n_pulses() * 1e3 / (2.0 * x);
    case AxisKind::kPulseCount:
      return x * t.number("tau_us");
    case AxisKind::kCoherenceTime:
      return x;
    default:
      break;
  }
  throw DomainError("envelope '" + envelope_kind_name(kind) + "' cannot interpret axis '" +
                    axis_kind_name(t.axis) + "'");
}

MeasurementTrace apply_envelope(const MeasurementTrace &trace, const DecoherenceEnvelope &env) {
  env.validate();
  MeasurementTrace out = trace;
  std::vector<double> f(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i)
    f[i] = env.factor(coherence_window_us(trace, i, env.kind));
  kernels::active().affine_envelope(trace.y.data(), f.data(), out.y.data(), trace.size());
  out.set("envelope", envelope_kind_name(env.kind));
  out.set("envelope_T_us", env.time_constant_us);
  out.set("envelope_p", env.exponent);
  return out;
}

}  // namespace nvsense
