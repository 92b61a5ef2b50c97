// Copyright 2026 The bag Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bag/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bag/core.hpp"

namespace bag {
namespace {

constexpr double kInvE = 1.0 / std::numbers::e;

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::domain_error(std::string(name) + " must be positive and finite");
  }
}

// w e^w - x is decreasing in w on (-inf, -1]; bisect on that interval.
double bisect_w_minus1(double x) {
  auto g = [x](double w) { return w * std::exp(w) - x; };
  double hi = -1.0;
  double lo = -2.0;
  while (g(lo) <= 0.0 && lo > -1e4) lo *= 2.0;
  for (int i = 0; i < 400 && hi - lo > 1e-15 * std::fabs(lo); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double lambert_w_minus1(double x) {
  if (!std::isfinite(x) || x >= 0.0 || x < -kInvE * (1.0 + 1e-15)) {
    throw std::domain_error("lambert_w_minus1 requires -1/e <= x < 0");
  }
  const double q = 1.0 + std::numbers::e * x;
  if (q <= 0.0) return -1.0;

  double w;
  if (q < 0.25) {
    // Series about the branch point.
    const double p = -std::sqrt(2.0 * q);
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else {
    const double l1 = std::log(-x);
    w = l1 - std::log(-l1);
  }

  for (int iter = 0; iter < 64; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (f == 0.0 || wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double next = w - f / denom;
    if (!std::isfinite(next) || next > -1.0) return bisect_w_minus1(x);
    const double step = std::fabs(next - w);
    w = next;
    if (step < 1e-14 * std::fabs(w)) break;
  }
  return w;
}

double alpha_upper(double delta) { return thresholds(delta).alpha_upper; }

double alpha_lower(double delta) {
  require_positive(delta, "delta");
  const double denom = 4.0 * delta - 1.0;
  if (std::fabs(denom) <= 1e-12) {
    throw std::domain_error("alpha_lower is undefined at delta = 1/4");
  }
  return (2.0 * std::sqrt(delta * delta * (delta + 2.0)) + delta - 1.0) / denom;
}

Thresholds thresholds(double delta) {
  require_positive(delta, "delta");
  Thresholds t;
  t.delta = delta;
  const double x = -2.0 * std::exp(-delta - 2.0);
  if (x == 0.0) throw std::domain_error("delta too large for double range");
  t.w = -0.5 * lambert_w_minus1(x);
  t.alpha_upper = t.w * (std::log(t.w) - t.w + delta + 1.0) / delta;
  if (std::fabs(4.0 * delta - 1.0) > 1e-12) t.alpha_lower = alpha_lower(delta);
  return t;
}

double ratio_function_f(double delta, double gamma) {
  require_positive(delta, "delta");
  require_positive(gamma, "gamma");
  return (gamma + delta * (gamma + 1.0)) / (delta + gamma * (gamma + 1.0));
}

double gamma_star(double delta) {
  require_positive(delta, "delta");
  return (std::sqrt(delta * delta * delta + 2.0 * delta * delta) - delta) /
         (delta + 1.0);
}

double worst_case_ratio(double delta, double capacity, double t_other,
                        double s_own) {
  require_positive(delta, "delta");
  require_positive(capacity, "capacity");
  if (!(t_other >= 0.0) || !std::isfinite(t_other)) {
    throw std::domain_error("t_other must be non-negative");
  }
  if (!(s_own > 0.0) || !approx_leq(s_own, delta * capacity)) {
    throw std::domain_error("s_own must lie in (0, delta * capacity]");
  }
  const double total = t_other + s_own;
  if (total <= capacity) return 1.0;
  if (t_other < capacity) {
    return total *
           (capacity - t_other + capacity * std::log(total / capacity)) /
           (capacity * s_own);
  }
  return total * std::log1p(s_own / t_other) / s_own;
}

double round_half_away(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(value * scale) / scale;
}

}  // namespace bag
