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

#ifndef BAG_BOUNDS_HPP_
#define BAG_BOUNDS_HPP_

// Existence thresholds for approximate pure equilibria in delta-share games.
//
// alpha_upper(delta) is the largest possible ratio between a player's share
// of a resource's potential and her utility from it; every sequence of
// alpha-moves with alpha >= alpha_upper increases the potential and hence
// terminates. alpha_lower(delta) is the best ratio achievable by the
// two-player cyclic gadget, below which equilibria may fail to exist.
//
// All functions throw std::domain_error outside their domains.

#include <optional>

namespace bag {

// Lower real branch W_{-1} of the Lambert W function on [-1/e, 0).
// Returns W <= -1 with W e^W = x.
double lambert_w_minus1(double x);

struct Thresholds {
  double delta = 0.0;
  // w = -W_{-1}(-2 e^{-delta-2}) / 2; the worst-case congestion level is
  // t_other = b (w - delta).
  double w = 0.0;
  double alpha_upper = 0.0;
  // Empty at delta = 1/4 where the closed form is 0/0.
  std::optional<double> alpha_lower;
};

Thresholds thresholds(double delta);

// w (ln w - w + delta + 1) / delta.
double alpha_upper(double delta);

// (2 sqrt(delta^2 (delta + 2)) + delta - 1) / (4 delta - 1).
double alpha_lower(double delta);

// Ratio u / u' between the two main players of the gadget as a function of
// the small demand gamma: (gamma + delta (gamma + 1)) / (delta + gamma (gamma + 1)).
double ratio_function_f(double delta, double gamma);

// Maximiser of ratio_function_f over gamma > 0.
double gamma_star(double delta);

// phi_{i,r} / u_{i,r} for a player demanding s_own on a resource of capacity
// `capacity` that already carries t_other. Equals 1 when the resource is not
// congested.
double worst_case_ratio(double delta, double capacity, double t_other,
                        double s_own);

// Rounds half away from zero to the given number of decimals.
double round_half_away(double value, int decimals);

}  // namespace bag

#endif  // BAG_BOUNDS_HPP_
