// Copyright 2026 The Authors.
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

#include "robsub/multilinear.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace robsub {

namespace {

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// SplitMix64 finalizer; decorrelates per-sample substreams from (seed, index).
std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniforms for sample s; antithetic pairs mirror the preceding sample.
std::vector<double> sample_uniforms(const EstimatorConfig& cfg, std::int64_t s, int n) {
  std::int64_t base = cfg.antithetic ? (s / 2) : s;
  std::mt19937_64 rng(substream(cfg.seed, static_cast<std::uint64_t>(base)));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> u(n);
  for (int e = 0; e < n; ++e) u[e] = unit(rng);
  if (cfg.antithetic && (s % 2 == 1)) {
    for (int e = 0; e < n; ++e) u[e] = 1.0 - u[e];
  }
  return u;
}

ElementSet sample_set(const std::vector<double>& u, const Eigen::VectorXd& y) {
  const int n = static_cast<int>(y.size());
  ElementSet s(n);
  for (int e = 0; e < n; ++e) {
    if (u[e] < y[e]) s.insert(e);
  }
  return s;
}

Estimate summarize(const std::vector<double>& draws) {
  const auto m = static_cast<double>(draws.size());
  KahanSum total;
  for (double d : draws) total.add(d);
  double mean = total.sum / m;
  if (draws.size() < 2) return {mean, 0.0};
  KahanSum sq;
  for (double d : draws) sq.add((d - mean) * (d - mean));
  double variance = sq.sum / (m - 1.0);
  return {mean, std::sqrt(std::max(0.0, variance) / m)};
}

void check_exact_size(int n) {
  if (n > 20) throw SizeLimitError("exact multilinear evaluation limited to n <= 20");
}

}  // namespace

FractionalPoint::FractionalPoint(Eigen::VectorXd y) : y_(std::move(y)) {
  constexpr double kDrift = 1e-12;
  for (Eigen::Index e = 0; e < y_.size(); ++e) {
    if (y_[e] < -kDrift || y_[e] > 1.0 + kDrift) {
      throw std::invalid_argument("fractional point coordinate outside [0,1]");
    }
    y_[e] = std::clamp(y_[e], 0.0, 1.0);
  }
}

FractionalPoint FractionalPoint::indicator(const ElementSet& s) {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(s.ground_size());
  s.for_each([&](int e) { y[e] = 1.0; });
  return FractionalPoint(std::move(y));
}

double multilinear_exact(const SubmodularOracle& f, const FractionalPoint& y) {
  const int n = f.n();
  check_exact_size(n);
  if (y.n() != n) throw std::invalid_argument("point dimension mismatch");
  const std::uint64_t total = std::uint64_t{1} << n;
  KahanSum acc;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    double weight = 1.0;
    for (int e = 0; e < n; ++e) {
      weight *= ((mask >> e) & 1u) ? y[e] : (1.0 - y[e]);
    }
    if (weight == 0.0) continue;
    acc.add(weight * f.eval(ElementSet::from_mask(n, mask)));
  }
  return acc.sum;
}

Estimate multilinear_estimate(const SubmodularOracle& f, const FractionalPoint& y,
                              const EstimatorConfig& cfg) {
  if (cfg.samples < 1) throw std::invalid_argument("estimator needs samples >= 1");
  const int n = f.n();
  std::vector<double> draws;
  draws.reserve(cfg.samples);
  for (std::int64_t s = 0; s < cfg.samples; ++s) {
    draws.push_back(f.eval(sample_set(sample_uniforms(cfg, s, n), y.coords())));
  }
  return summarize(draws);
}

double delta_e(const SubmodularOracle& f, const FractionalPoint& y, int e,
               const EstimatorConfig& cfg) {
  if (e < 0 || e >= f.n()) throw std::domain_error("delta_e: element out of range");
  if (cfg.samples < 1) throw std::invalid_argument("estimator needs samples >= 1");
  const int n = f.n();
  KahanSum acc;
  for (std::int64_t s = 0; s < cfg.samples; ++s) {
    ElementSet set = sample_set(sample_uniforms(cfg, s, n), y.coords());
    if (set.contains(e)) continue;  // f(S+e) - f(S) = 0 when e already drawn
    acc.add(f.eval(set.with(e)) - f.eval(set));
  }
  return acc.sum / static_cast<double>(cfg.samples);
}

double delta_e_exact(const SubmodularOracle& f, const FractionalPoint& y, int e) {
  if (e < 0 || e >= f.n()) throw std::domain_error("delta_e: element out of range");
  MultilinearTable table(f);
  return table.delta(y.coords())[e];
}

Eigen::VectorXd delta_all_estimate(const SubmodularOracle& f, const FractionalPoint& y,
                                   const EstimatorConfig& cfg) {
  if (cfg.samples < 1) throw std::invalid_argument("estimator needs samples >= 1");
  const int n = f.n();
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(n);
  for (std::int64_t s = 0; s < cfg.samples; ++s) {
    ElementSet set = sample_set(sample_uniforms(cfg, s, n), y.coords());
    double base = f.eval(set);
    for (int e = 0; e < n; ++e) {
      if (!set.contains(e)) acc[e] += f.eval(set.with(e)) - base;
    }
  }
  return acc / static_cast<double>(cfg.samples);
}

MultilinearTable::MultilinearTable(const SubmodularOracle& f) : n_(f.n()) {
  check_exact_size(n_);
  const std::uint64_t total = std::uint64_t{1} << n_;
  table_.resize(total);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    table_[mask] = f.eval(ElementSet::from_mask(n_, mask));
  }
}

double MultilinearTable::value(const Eigen::VectorXd& y) const {
  if (y.size() != n_) throw std::invalid_argument("point dimension mismatch");
  // Contract one coordinate at a time: after folding element e the buffer
  // holds the conditional expectations over the remaining elements. The
  // scratch buffer is reused across calls; gradient loops hit this hard.
  thread_local std::vector<double> buf;
  buf = table_;
  std::size_t len = buf.size();
  for (int e = 0; e < n_; ++e) {
    len /= 2;
    for (std::size_t i = 0; i < len; ++i) {
      buf[i] = (1.0 - y[e]) * buf[2 * i] + y[e] * buf[2 * i + 1];
    }
  }
  return buf[0];
}

double MultilinearTable::partial(const Eigen::VectorXd& y, int e) const {
  if (e < 0 || e >= n_) throw std::domain_error("partial: element out of range");
  Eigen::VectorXd y1 = y, y0 = y;
  y1[e] = 1.0;
  y0[e] = 0.0;
  return value(y1) - value(y0);
}

Eigen::VectorXd MultilinearTable::gradient(const Eigen::VectorXd& y) const {
  Eigen::VectorXd g(n_);
  for (int e = 0; e < n_; ++e) g[e] = partial(y, e);
  return g;
}

Eigen::VectorXd MultilinearTable::delta(const Eigen::VectorXd& y) const {
  Eigen::VectorXd g = gradient(y);
  for (int e = 0; e < n_; ++e) g[e] *= (1.0 - y[e]);
  return g;
}

double MultilinearTable::min_value() const {
  return *std::min_element(table_.begin(), table_.end());
}

double MultilinearTable::max_value() const {
  return *std::max_element(table_.begin(), table_.end());
}

}  // namespace robsub
