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

#ifndef BAG_CONSTRUCTIONS_HPP_
#define BAG_CONSTRUCTIONS_HPP_

// Generators for the instance families: the two-player gadget without a pure
// equilibrium, the exact-cover reduction, the price-of-anarchy family, and
// seeded random games.

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bag/core.hpp"

namespace bag {

// Gadget: four unit-capacity resources, two main players and n_aux
// auxiliary players that put sigma on every resource.
struct B0Params {
  double delta = 0.5;
  double gamma = 0.25;
  double sigma = 0.5;
  std::size_t n_aux = 1;
};

// gamma defaults to gamma_star(delta) for delta <= 1 and to (1 + delta) / 2
// above 1. For delta <= 1, n_aux = ceil((1 - delta) / delta) and sigma is
// adjusted so that n_aux * sigma + delta = 1.
B0Params default_b0_params(double delta,
                           std::optional<double> gamma = std::nullopt);

// The two main-player utilities that occur in every main profile: u for the
// player whose gamma-demand is congested, u' for the other one.
struct B0Utilities {
  double u = 0.0;
  double u_prime = 0.0;
};
B0Utilities b0_utilities(const B0Params& params);

// Players are ordered main 1, main 2, then the auxiliary players.
// Throws ConstructionError on illegal parameters.
Game build_b0(const B0Params& params);
Game build_b0(double delta, double gamma, double sigma, std::size_t n_aux);

// Exact cover by 3-sets over the universe {0, ..., 3m - 1}.
struct X3CInstance {
  std::size_t m = 1;
  std::vector<std::array<std::size_t, 3>> subsets;
};

// Throws ConstructionError unless every subset has three distinct in-range
// elements.
void check_instance(const X3CInstance& instance);

// Brute force over subsets of size m.
bool has_exact_cover(const X3CInstance& instance);
bool is_exact_cover(const X3CInstance& instance,
                    const std::vector<std::size_t>& chosen);

struct X3CLayout {
  B0Params gadget;
  B0Utilities gadget_utilities;
  // Demand of the gadget's extra strategy on the extra resource.
  double switch_demand = 0.0;
  double extra_capacity = 0.0;
  std::size_t gadget_aux = 0;
  PlayerId subset_first = 0;
  std::size_t subset_count = 0;
  PlayerId element_aux_first = 0;
  std::size_t element_aux_count = 0;
  double element_aux_sigma = 0.0;
  ResourceId element_first = 4;
  ResourceId extra_resource = 0;
};

struct X3CGame {
  Game game;
  X3CLayout layout;
};

// Smallest number of spare subsets (q - m) for which an overlapping cover
// player always gains more than a factor alpha by moving to the extra
// resource.
std::size_t x3c_required_slack(double delta, double alpha);

// Resources: gadget r1..r4, one per element, then the extra resource.
// Players: main 1, main 2 (with a third strategy on the extra resource),
// gadget auxiliaries, one player per subset (strategy 0 covers its elements,
// strategy 1 sits on the extra resource), then element auxiliaries when
// 2 delta <= 1. Requires delta <= 1, alpha >= 1 and
// q - m >= max(ceil(1 / delta), x3c_required_slack(delta, alpha)).
X3CGame build_x3c_game(const X3CInstance& instance, double delta, double alpha,
                       std::optional<double> gamma = std::nullopt);

// Indices of subsets whose players are on their covering strategy.
std::vector<std::size_t> covering_subsets(const X3CLayout& layout,
                                          const Profile& profile);

// N = n1 + n2 players on two resources. The first n1 players have the single
// strategy {r2: delta}; the others choose between {r1: alpha / N} and
// {r2: delta}. b_{r1} = alpha n2 / (delta N), b_{r2} = 1.
Game build_poa_game(double delta, double alpha, std::size_t n1, std::size_t n2);

// Capacities log-uniform in [0.1, 10]; each strategy uses each resource with
// probability `density` and demand uniform in (0, delta b_r]. A strategy that
// draws no resource gets one uniformly chosen resource.
Game random_game(std::uint64_t seed, std::size_t n_players,
                 std::size_t n_resources, std::size_t strategies_per_player,
                 double delta, double density);

}  // namespace bag

#endif  // BAG_CONSTRUCTIONS_HPP_
