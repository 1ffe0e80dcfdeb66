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


#include <catch_amalgamated.hpp>
#include <cmath>

#include "nvsense/errors.hpp"
#include "nvsense/sequences.hpp"

using namespace nvsense;

namespace {

SequencePlan train(SequenceKind k, int n, double tau) {
  SequencePlan p;
  p.kind = k;
  p.n_pulses = n;
  p.tau_us = tau;
  return p;
}

std::string labels(const SymbolicSequence &s) {
  std::string out;
  for (const auto &p : s.pulses) out += p.pulse.label() + " ";
  return out;
}

}  // namespace

TEST_CASE("pulse orderings") {
  SequencePlan r;
  r.kind = SequenceKind::kRamsey;
  r.tau_us = 0.2;
  CHECK(labels(build_sequence(r)) == "X/2 X/2 ");
  CHECK(labels(build_sequence(train(SequenceKind::kHahn, 1, 1))) == "X/2 X X/2 ");
  CHECK(labels(build_sequence(train(SequenceKind::kCpmg, 2, 1))) == "X/2 Y Y -X/2 ");
  CHECK(labels(build_sequence(train(SequenceKind::kXy4, 4, 1))) == "X/2 X Y X Y -X/2 ");
  CHECK(labels(build_sequence(train(SequenceKind::kXy8, 8, 1))) == "X/2 X Y X Y Y X Y X -X/2 ");
  const auto xy16 = build_sequence(train(SequenceKind::kXy16, 16, 1));
  CHECK(xy16.pulses[9].pulse.axis == Axis::kMinusX);
  CHECK(xy16.pulses[10].pulse.axis == Axis::kMinusY);
}

TEST_CASE("readout parity rule") {
  CHECK(readout_flipped(build_sequence(train(SequenceKind::kCp, 2, 1))));
  CHECK_FALSE(readout_flipped(build_sequence(train(SequenceKind::kCp, 3, 1))));
  CHECK_FALSE(readout_flipped(build_sequence(train(SequenceKind::kHahn, 1, 1))));
  auto m = train(SequenceKind::kHahn, 1, 1);
  m.readout = ReadoutPhase::kMinusX;
  CHECK(build_sequence(m).pulses.back().pulse.axis == Axis::kMinusX);
}

TEST_CASE("correlation layout") {
  auto p = train(SequenceKind::kCorrelation, 8, 1);
  p.t_corr_us = 5;
  const auto s = build_sequence(p);
  CHECK(s.pulses.size() == 1 + 8 + 2 + 8 + 1);
  CHECK(s.pulses[9].pulse.axis == Axis::kPlusY);
  CHECK(s.pulses[10].gap_before == Gap::kStorage);
  auto mp = p;
  mp.kind = SequenceKind::kCorrelationMultipulse;
  mp.inner_pulses = 4;
  mp.inner_tau_us = 0.5;
  const auto sm = build_sequence(mp);
  CHECK(sm.pulses.size() == 1 + 8 + 1 + 4 + 1 + 8 + 1);
  CHECK(sm.pulses[10].gap_before == Gap::kInnerHalfTau);
}

TEST_CASE("plan validation") {
  CHECK_THROWS_AS(train(SequenceKind::kXy8, 12, 1).validate(), DomainError);
  CHECK_THROWS_AS(train(SequenceKind::kHahn, 2, 1).validate(), DomainError);
  CHECK_THROWS_AS(train(SequenceKind::kCpmg, 0, 1).validate(), DomainError);
  CHECK_THROWS_AS(train(SequenceKind::kCpmg, 2, 0).validate(), DomainError);
  auto b = train(SequenceKind::kXy8, 16, 1);
  b.block_size = 4;
  CHECK_THROWS_AS(b.validate(), DomainError);
  auto c = train(SequenceKind::kCorrelation, 8, 1);
  c.block_kind = SequenceKind::kHahn;
  CHECK_THROWS_AS(c.validate(), DomainError);
  SequencePlan r;
  r.kind = SequenceKind::kRamsey;
  r.tau_us = 0;
  CHECK_NOTHROW(r.validate());
  try {
    train(SequenceKind::kXy8, 12, 1).validate();
  } catch (const DomainError &e) {
    CHECK(std::string(e.what()).find("k = 8") != std::string::npos);
  }
}

TEST_CASE("plan JSON roundtrip") {
  auto p = train(SequenceKind::kCorrelationMultipulse, 8, 2.5);
  p.inner_pulses = 2;
  p.inner_tau_us = 0.75;
  p.t_corr_us = 3;
  p.pulses.pi_ns = 40;
  p.readout = ReadoutPhase::kMinusX;
  const auto j = plan_to_json(p);
  CHECK(plan_to_json(plan_from_json(j)) == j);
  auto bad = j;
  bad["schema"] = "other/1";
  CHECK_THROWS_AS(plan_from_json(bad), DomainError);
  CHECK_THROWS_AS(plan_from_json(nlohmann::json{{"tau_us", 1}}), DomainError);
}

TEST_CASE("timing references and exact arithmetic") {
  auto p = train(SequenceKind::kCpmg, 4, 1.0);
  p.pulses.half_pi_ns = 20;
  p.pulses.pi_ns = 40;
  const auto ev = expand_timing(build_sequence(p));
  REQUIRE(ev.events.size() == 6);
  // first pi centered tau/2 after the pi/2 falling edge
  CHECK(ev.events[1].center_ns() == Rational(20 + 500));
  for (int k = 2; k <= 4; ++k)
    CHECK(ev.events[k].center_ns() - ev.events[k - 1].center_ns() == Rational(1000));
  CHECK(ev.events[5].start_ns == ev.events[4].center_ns() + Rational(500));
  CHECK(ev.sensing_time_ns == Rational(4000));
  CHECK(ev.end_ns == ev.events[5].end_ns());
  CHECK(ev.readout.start_ns == ev.end_ns);
  CHECK(ev.init.start_ns == Rational(-1000));
  CHECK(ev.timing_table().find("sensing_time_ns 4000.000") != std::string::npos);

  // tau = 1/3 us has no finite decimal form; fs resolution keeps it exact to 1 fs
  const auto e3 = expand_timing(build_sequence(train(SequenceKind::kCpmg, 2, 1.0 / 3)));
  const double spacing = (e3.events[2].center_ns() - e3.events[1].center_ns()).to_double();
  CHECK(std::abs(spacing - 1000.0 / 3) <= 1e-6);
}

TEST_CASE("pulses that do not fit are rejected with a diagnostic") {
  auto p = train(SequenceKind::kCpmg, 2, 0.03);
  p.pulses.pi_ns = 40;
  try {
    expand_timing(build_sequence(p));
    FAIL("expected DomainError");
  } catch (const DomainError &e) {
    const std::string m = e.what();
    CHECK(m.find("tau too small") != std::string::npos);
    CHECK(m.find("required") != std::string::npos);
  }
}

TEST_CASE("phase cycling helpers") {
  const auto [a, b] = phase_cycle_pair(train(SequenceKind::kXy8, 8, 1));
  CHECK(a.readout == ReadoutPhase::kPlusX);
  CHECK(b.readout == ReadoutPhase::kMinusX);
  CHECK(combine_phase_cycled(1.0, 0.0) == 1.0);
  CHECK(combine_phase_cycled(0.7, 0.3) == 0.7);
}

TEST_CASE("sequence rendering") {
  auto p = train(SequenceKind::kHahn, 1, 0.2);
  p.pulses.half_pi_ns = 24;
  p.pulses.pi_ns = 48;
  const auto ev = expand_timing(build_sequence(p));
  WaveformSettings ws;
  const auto w = sequence_to_waveform(ev, ws);
  CHECK(w.size() == static_cast<std::size_t>(std::llround(ev.end_ns.to_double())));
  // square X/2 at IF phase 0 opens the waveform
  CHECK(w.i[0] == 1.0);
  CHECK(w.q[0] == 0.0);
  ws.max_duration_ns = 100;
  CHECK_THROWS_AS(sequence_to_waveform(ev, ws), DomainError);
  auto ideal = train(SequenceKind::kHahn, 1, 0.2);
  CHECK_THROWS_AS(sequence_to_waveform(expand_timing(build_sequence(ideal)), WaveformSettings{}),
                  DomainError);
}
