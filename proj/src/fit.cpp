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


#include "nvsense/fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "nvsense/errors.hpp"
#include "nvsense/kernels.hpp"

namespace nvsense {

double FitResult::uncertainty(const std::string &name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return uncertainties[i];
  throw DomainError("fit result has no parameter '" + name + "'");
}

double FitResult::value(const std::string &name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return values[i];
  throw DomainError("fit result has no parameter '" + name + "'");
}

bool FitResult::any_at_bound() const {
  return std::any_of(at_bound.begin(), at_bound.end(), [](bool b) { return b; });
}

nlohmann::json fit_result_to_json(const FitResult &r) {
  nlohmann::json params = nlohmann::json::array();
  for (std::size_t i = 0; i < r.names.size(); ++i) {
    params.push_back({{"name", r.names[i]},
                      {"value", r.values[i]},
                      {"uncertainty", r.uncertainties[i]},
                      {"fixed", static_cast<bool>(r.fixed[i])},
                      {"at_bound", static_cast<bool>(r.at_bound[i])}});
  }
  return {{"schema", kFitResultSchema},
          {"parameters", params},
          {"residual_norm", r.residual_norm},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"status", r.status},
          {"provenance", r.provenance}};
}

FitResult fit_result_from_json(const nlohmann::json &j) {
  try {
    if (j.at("schema").get<std::string>() != kFitResultSchema)
      throw DomainError("unsupported fit result schema");
    FitResult r;
    for (const auto &p : j.at("parameters")) {
      r.names.push_back(p.at("name").get<std::string>());
      r.values.push_back(p.at("value").get<double>());
      r.uncertainties.push_back(p.at("uncertainty").get<double>());
      r.fixed.push_back(p.at("fixed").get<bool>());
      r.at_bound.push_back(p.at("at_bound").get<bool>());
    }
    r.residual_norm = j.at("residual_norm").get<double>();
    r.iterations = j.at("iterations").get<int>();
    r.converged = j.at("converged").get<bool>();
    r.status = j.at("status").get<std::string>();
    r.provenance = j.value("provenance", nlohmann::json::object());
    return r;
  } catch (const nlohmann::json::exception &e) {
    throw DomainError(std::string("malformed fit result: ") + e.what());
  }
}

void FitProblem::validate() const {
  if (!model) throw DomainError("fit problem has no model");
  if (x.size() != y.size()) throw DomainError("fit data x and y differ in length");
  std::size_t free = 0;
  for (const auto &p : params) {
    if (!(p.lower <= p.upper)) throw DomainError("parameter '" + p.name + "' has lower > upper");
    if (!(p.initial >= p.lower && p.initial <= p.upper))
      throw DomainError("parameter '" + p.name + "' starts outside its bounds");
    if (!std::isfinite(p.initial)) throw DomainError("parameter '" + p.name + "' is not finite");
    if (!p.fixed) ++free;
  }
  if (free > x.size()) throw DomainError("more free parameters than data points");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
      throw DomainError("fit data contain non-finite values");
}

namespace {

void predict(const FitProblem &p, std::span<const double> q, std::vector<double> &out) {
  out.resize(p.x.size());
  for (std::size_t i = 0; i < p.x.size(); ++i) out[i] = p.model(p.x[i], q);
}

double rss_of(const FitProblem &p, std::span<const double> q, std::vector<double> &scratch) {
  predict(p, q, scratch);
  const double r = kernels::active().sum_sq_diff(p.y.data(), scratch.data(), p.y.size());
  return std::isfinite(r) ? r : std::numeric_limits<double>::infinity();
}

}  // namespace

double residual_sum_of_squares(const FitProblem &problem, std::span<const double> params) {
  std::vector<double> s;
  return rss_of(problem, params, s);
}

FitResult fit(const FitProblem &prob) {
  prob.validate();
  const FitOptions &o = prob.options;
  const std::size_t np = prob.params.size();
  const std::size_t m = prob.x.size();
  std::vector<double> q(np);
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < np; ++i) {
    q[i] = prob.params[i].initial;
    if (!prob.params[i].fixed) free.push_back(i);
  }
  const std::size_t nf = free.size();
  std::vector<double> scale(np);
  for (std::size_t i = 0; i < np; ++i) scale[i] = std::max(std::abs(q[i]), 1e-8);

  std::vector<double> pred, trial_pred;
  double rss = rss_of(prob, q, pred);
  if (!std::isfinite(rss)) throw DomainError("model is not finite at the initial parameters");

  auto clamp = [&](std::size_t i, double v) {
    return std::clamp(v, prob.params[i].lower, prob.params[i].upper);
  };

  Eigen::MatrixXd J(m, nf);
  auto jacobian = [&] {
    std::vector<double> qp = q, fp, fm;
    for (std::size_t c = 0; c < nf; ++c) {
      const std::size_t i = free[c];
      const double h = o.fd_relative_step * std::max(std::abs(q[i]), scale[i]);
      const double hi = clamp(i, q[i] + h), lo = clamp(i, q[i] - h);
      qp[i] = hi;
      predict(prob, qp, fp);
      qp[i] = lo;
      predict(prob, qp, fm);
      qp[i] = q[i];
      const double span = hi - lo;
      for (std::size_t r = 0; r < m; ++r) J(static_cast<Eigen::Index>(r), c) = span > 0 ? (fp[r] - fm[r]) / span : 0.0;
    }
  };

  FitResult res;
  int it = 0;
  bool converged = false;
  std::string status;
  if (rss == 0.0 || nf == 0) {
    converged = true;
    status = nf == 0 ? "no free parameters" : "zero residual at start";
  }
  double lambda = 1e-3;
  while (!converged && it < o.max_iterations) {
    ++it;
    jacobian();
    Eigen::VectorXd r(m);
    for (std::size_t k = 0; k < m; ++k) r[static_cast<Eigen::Index>(k)] = prob.y[k] - pred[k];
    const Eigen::MatrixXd A = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * r;
    Eigen::VectorXd d = A.diagonal();
    for (Eigen::Index k = 0; k < d.size(); ++k) d[k] = std::max(d[k], 1e-30);
    bool improved = false;
    while (lambda < 1e16) {
      Eigen::MatrixXd M = A;
      M.diagonal() += lambda * d;
      const Eigen::VectorXd step = M.ldlt().solve(g);
      std::vector<double> qt = q;
      double rel_step = 0.0;
      for (std::size_t c = 0; c < nf; ++c) {
        const std::size_t i = free[c];
        qt[i] = clamp(i, q[i] + step[static_cast<Eigen::Index>(c)]);
        rel_step = std::max(rel_step, std::abs(qt[i] - q[i]) / std::max(std::abs(q[i]), scale[i]));
      }
      const double rt = rss_of(prob, qt, trial_pred);
      if (rt < rss) {
        const double drop = (rss - rt) / rss;
        q = qt;
        pred.swap(trial_pred);
        rss = rt;
        lambda = std::max(lambda / 10.0, 1e-12);
        improved = true;
        if (rt == 0.0 || drop < o.rss_tolerance || rel_step < o.step_tolerance) {
          converged = true;
          status = "converged";
        }
        break;
      }
      if (rel_step < o.step_tolerance) {
        // The step no longer moves the parameters: a minimum to working precision.
        converged = true;
        status = "converged (step below tolerance)";
        break;
      }
      lambda *= 10.0;
    }
    if (!improved && !converged) {
      converged = true;
      status = "converged (no further decrease)";
    }
  }
  if (!converged) status = "iteration limit reached";

  res.names.reserve(np);
  for (const auto &p : prob.params) {
    res.names.push_back(p.name);
    res.fixed.push_back(p.fixed);
  }
  res.values = q;
  res.uncertainties.assign(np, 0.0);
  res.at_bound.assign(np, false);
  for (std::size_t i = 0; i < np; ++i) {
    const auto &p = prob.params[i];
    if (p.fixed) continue;
    const double tol = 1e-12 * std::max(1.0, std::abs(q[i]));
    res.at_bound[i] = std::abs(q[i] - p.lower) <= tol || std::abs(q[i] - p.upper) <= tol;
  }
  if (nf > 0 && m > nf) {
    jacobian();
    const Eigen::MatrixXd A = J.transpose() * J;
    const double s2 = rss / static_cast<double>(m - nf);
    const Eigen::MatrixXd cov = A.completeOrthogonalDecomposition().pseudoInverse() * s2;
    for (std::size_t c = 0; c < nf; ++c)
      res.uncertainties[free[c]] = std::sqrt(std::max(0.0, cov(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c))));
  }
  res.residual_norm = std::sqrt(rss);
  res.iterations = it;
  res.converged = converged;
  res.status = status;
  res.provenance["data_points"] = m;
  res.provenance["free_parameters"] = nf;
  return res;
}

}  // namespace nvsense
