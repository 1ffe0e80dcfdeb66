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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "nvsense/pipelines.hpp"
#include "nvsense/register_io.hpp"
#include "nvsense/trace.hpp"
#include "nvsense/waveform_io.hpp"

using namespace nvsense;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream o, e;
  const int c = cli::run(args, o, e);
  return {c, o.str(), e.str()};
}

fs::path scratch() {
  const char *env = std::getenv("NVSENSE_TEST_TMP");
  fs::path p = env ? fs::path(env) : fs::temp_directory_path() / "nvsense_cli_test";
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string write_register(const std::string &name, const SpinRegister &reg) {
  const auto p = (scratch() / name).string();
  save_register(reg, p);
  return p;
}

}  // namespace

TEST_CASE("usage errors exit with 2 and help exits with 0") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"--help"}).out.find("simulate") != std::string::npos);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"spectrum"}).code == 2);
  CHECK(run({"spectrum", "--trace", "/nonexistent.csv"}).code == 2);
  CHECK(run({"magnet"}).code == 2);
  CHECK(run({"magnet", "--magnet", "3"}).code == 2);
  CHECK(run({"--version"}).out.find(cli::kToolVersion) != std::string::npos);
}

TEST_CASE("magnet table") {
  const auto r = run({"magnet", "--magnet", "2", "--d-start", "25", "--d-stop", "40", "--d-step", "15"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# tool: nvsense") != std::string::npos);
  CHECK(r.out.find("# d_min_mm: 22.99") != std::string::npos);
  CHECK(r.out.find("d_mm,B0_mT,f_minus_MHz,f_plus_MHz") != std::string::npos);
  CHECK(r.out.find("\n25,30.") != std::string::npos);
  CHECK(r.out.find("\n40,10.") != std::string::npos);
}

TEST_CASE("simulate, spectrum and fit chain through files") {
  const auto dir = scratch();
  const auto reg = write_register("a.json", SpinRegister(4.7, {NuclearSpin(Species::kCarbon13, HyperfineCoupling(-226.2, 242.8))}));
  const auto trace = (dir / "corr.csv").string();
  const auto r = run({"simulate", "--register", reg, "--sequence", "correlation", "--tau", "3.72", "--n", "8",
                      "--block-kind", "xy8", "--sweep", "tcorr", "--start", "0", "--stop", "199.5", "--step", "0.5",
                      "--out", trace});
  REQUIRE(r.code == 0);
  const auto t = load_trace(trace);
  CHECK(t.size() == 400);
  CHECK(t.axis == AxisKind::kCorrelationTime);
  CHECK(t.metadata.at("subcommand") == "simulate");

  const auto s = run({"spectrum", "--trace", trace, "--max-peaks", "2", "--threshold", "0.02"});
  REQUIRE(s.code == 0);
  CHECK(s.out.find("rank,frequency,amplitude,half_width,method") != std::string::npos);
  CHECK(s.out.find("# unit: kHz") != std::string::npos);

  const auto echo = (dir / "echo.csv").string();
  MeasurementTrace et;
  et.axis = AxisKind::kTau;
  et.x_unit = "us";
  for (int i = 0; i <= 400; ++i) {
    et.x.push_back(i);
    et.y.push_back(echo_model(i, 364, 1.06));
  }
  save_trace(et, echo);
  const auto f = run({"fit", "--model", "echo", "--trace", echo});
  REQUIRE(f.code == 0);
  const auto j = nlohmann::json::parse(f.out);
  CHECK(j["schema"] == "nvsense.fit/1");
  CHECK(j["artifact"]["subcommand"] == "fit");
  CHECK(std::abs(fit_result_from_json(j).value("t2_us") - 364) < 1e-3);
  CHECK(run({"fit", "--model", "nonsense", "--trace", echo}).code == 2);
}

TEST_CASE("config file supplies defaults and flags override it") {
  const auto dir = scratch();
  const auto cfg = (dir / "sim.toml").string();
  {
    std::ofstream c(cfg);
    c << "[simulate]\nsequence = \"cpmg\"\nn = 4\nsweep = \"tau\"\nstart = 1.0\nstop = 2.0\nstep = 0.5\n";
  }
  const auto a = run({"--config", cfg, "simulate", "--b0", "4.7"});
  REQUIRE(a.code == 0);
  auto t = trace_from_csv(a.out);
  CHECK(t.size() == 3);
  CHECK(t.metadata.at("n_pulses") == "4");
  const auto b = run({"--config", cfg, "simulate", "--n", "8", "--stop", "1.5"});
  REQUIRE(b.code == 0);
  t = trace_from_csv(b.out);
  CHECK(t.size() == 2);
  CHECK(t.metadata.at("n_pulses") == "8");
  CHECK(b.out.find("config: n=8") != std::string::npos);
}

TEST_CASE("noisy simulation is byte-identical for a fixed seed") {
  const std::vector<std::string> args = {"simulate", "--sequence", "ramsey", "--sweep", "tau", "--start", "0",
                                         "--stop", "0.2", "--step", "0.001", "--shots", "100000", "--seed", "77"};
  const auto a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("# seed: 77") != std::string::npos);
  auto other = args;
  other.back() = "78";
  CHECK(run(other).out != a.out);
}

TEST_CASE("domain errors from the library exit with 2") {
  CHECK(run({"simulate", "--sequence", "xy8", "--n", "12", "--sweep", "tau", "--start", "1", "--stop", "2", "--step", "1"}).code == 2);
  CHECK(run({"simulate", "--sweep", "tau", "--start", "2", "--stop", "1", "--step", "1"}).code == 2);
}

TEST_CASE("waveform subcommand") {
  const auto dir = scratch();
  const auto out = (dir / "pulse.csv").string();
  const auto r = run({"waveform", "--shape", "square", "--duration", "100", "--if", "100", "--out", out});
  REQUIRE(r.code == 0);
  const auto w = import_waveform(out);
  CHECK(w.size() == 100);
  CHECK(w.i[0] == w.i[10]);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["samples"] == 100);

  const auto seq = (dir / "seq.bin").string();
  const auto s = run({"waveform", "--from-sequence", "--sequence", "xy8", "--n", "8", "--tau", "0.2",
                      "--pi-ns", "40", "--half-pi-ns", "20", "--format", "f32le", "--out", seq});
  REQUIRE(s.code == 0);
  CHECK(fs::file_size(seq) == f32le_file_size(import_waveform(seq)));
  CHECK(run({"waveform", "--duration", "5000", "--max-duration", "1000", "--out", out}).code == 2);
  CHECK(run({"waveform", "--duration", "10"}).code == 2);
}

TEST_CASE("oracle-compare reports the composed form within tolerance") {
  const auto reg = write_register("d.json", SpinRegister(4.7, {NuclearSpin(Species::kCarbon13, HyperfineCoupling(357.0, 270.2))}));
  const auto r = run({"oracle-compare", "--register", reg, "--start", "0.5", "--stop", "5", "--step", "0.5",
                      "--n-list", "2,4,16"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["forms"]["composed"]["verdict"] == "pass");
  CHECK(j["points"] == 30);
}

TEST_CASE("extract subcommand on a simulated bundle") {
  const auto dir = scratch();
  const SpinRegister reg(4.7, {NuclearSpin(Species::kCarbon13, HyperfineCoupling(-226.2, 242.8))});
  BundlePlan bp;
  for (int i = 0; i <= 150; ++i) bp.tau_grid_us.push_back(3.0 + 0.01 * i);
  const auto b = simulate_hyperfine_bundle(reg, bp);
  save_trace(b.tau_sweep, (dir / "ts.csv").string());
  save_trace(b.correlation, (dir / "co.csv").string());
  save_trace(b.n_sweep, (dir / "ns.csv").string());
  const auto r = run({"extract", "--tau-sweep", (dir / "ts.csv").string(), "--correlation",
                      (dir / "co.csv").string(), "--n-sweep", (dir / "ns.csv").string(), "--larmor", "50.3135"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["status"] == "resolved");
  CHECK(std::abs(j["a_par_kHz"].get<double>() + 226.2) < 0.5);
}
