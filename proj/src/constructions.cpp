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

#include "bag/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bag/bounds.hpp"
#include "bag/dynamics.hpp"
#include "bag/random.hpp"

namespace bag {
namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ConstructionError(message);
}

// Auxiliary players of size sigma that fill a unit resource up to 1 - delta.
std::pair<std::size_t, double> fill_players(double delta) {
  if (delta >= 1.0) return {0, delta};
  const auto n =
      static_cast<std::size_t>(std::ceil((1.0 - delta) / delta - 1e-9));
  return {n, (1.0 - delta) / static_cast<double>(n)};
}

std::vector<Resource> unit_resources(std::size_t count) {
  std::vector<Resource> out;
  for (ResourceId r = 0; r < count; ++r) out.push_back({r, 1.0});
  return out;
}

}  // namespace

B0Params default_b0_params(double delta, std::optional<double> gamma) {
  require(delta > 0.0 && std::isfinite(delta), "delta must be positive");
  B0Params p;
  p.delta = delta;
  if (delta <= 1.0) {
    p.gamma = gamma.value_or(gamma_star(delta));
    const auto [n, sigma] = fill_players(delta);
    p.n_aux = n;
    p.sigma = sigma;
  } else {
    p.gamma = gamma.value_or((1.0 + delta) / 2.0);
    p.n_aux = 0;
    p.sigma = delta;
  }
  return p;
}

B0Utilities b0_utilities(const B0Params& p) {
  const double aux = static_cast<double>(p.n_aux) * p.sigma;
  const double congested = p.delta + p.gamma + aux;
  return {p.gamma / congested + proportional_share(p.delta, p.delta + aux, 1.0),
          p.delta / congested + proportional_share(p.gamma, p.gamma + aux, 1.0)};
}

Game build_b0(const B0Params& p) {
  require(p.delta > 0.0 && std::isfinite(p.delta), "delta must be positive");
  require(p.gamma > 0.0 && p.gamma < p.delta,
          "gamma must satisfy 0 < gamma < delta");
  if (p.delta <= 1.0) {
    const double fill = static_cast<double>(p.n_aux) * p.sigma + p.delta;
    require(approx_equal(fill, 1.0), "n_aux * sigma + delta must equal 1");
    if (p.n_aux > 0) {
      require(p.sigma > 0.0 && approx_leq(p.sigma, p.delta),
              "sigma must satisfy 0 < sigma <= delta");
    }
  } else {
    require(p.n_aux == 0, "delta > 1 requires n_aux = 0");
    require(p.gamma > 1.0, "delta > 1 requires gamma > 1");
  }

  Game g;
  g.delta = p.delta;
  g.resources = unit_resources(4);
  const double d = p.delta;
  const double c = p.gamma;
  g.players.push_back({Strategy{{0, c}, {1, d}}, Strategy{{2, d}, {3, c}}});
  g.players.push_back({Strategy{{0, d}, {2, c}}, Strategy{{1, c}, {3, d}}});
  for (std::size_t k = 0; k < p.n_aux; ++k) {
    g.players.push_back(
        {Strategy{{0, p.sigma}, {1, p.sigma}, {2, p.sigma}, {3, p.sigma}}});
  }
  return g;
}

Game build_b0(double delta, double gamma, double sigma, std::size_t n_aux) {
  return build_b0(B0Params{delta, gamma, sigma, n_aux});
}

void check_instance(const X3CInstance& instance) {
  require(instance.m >= 1, "m must be at least 1");
  const std::size_t universe = 3 * instance.m;
  for (std::size_t k = 0; k < instance.subsets.size(); ++k) {
    const auto& w = instance.subsets[k];
    const std::string where = "subset " + std::to_string(k);
    for (std::size_t e : w) require(e < universe, where + " has an element out of range");
    require(w[0] != w[1] && w[0] != w[2] && w[1] != w[2],
            where + " repeats an element");
  }
}

bool is_exact_cover(const X3CInstance& instance,
                    const std::vector<std::size_t>& chosen) {
  if (chosen.size() != instance.m) return false;
  std::vector<int> hits(3 * instance.m, 0);
  for (std::size_t k : chosen) {
    if (k >= instance.subsets.size()) return false;
    for (std::size_t e : instance.subsets[k]) ++hits[e];
  }
  return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

bool has_exact_cover(const X3CInstance& instance) {
  check_instance(instance);
  const std::size_t q = instance.subsets.size();
  if (q < instance.m) return false;
  // Walk all m-combinations of subset indices.
  std::vector<std::size_t> pick(instance.m);
  for (std::size_t i = 0; i < instance.m; ++i) pick[i] = i;
  while (true) {
    if (is_exact_cover(instance, pick)) return true;
    std::size_t i = instance.m;
    while (i > 0 && pick[i - 1] == q - instance.m + i - 1) --i;
    if (i == 0) return false;
    ++pick[i - 1];
    for (std::size_t j = i; j < instance.m; ++j) pick[j] = pick[j - 1] + 1;
  }
}

std::size_t x3c_required_slack(double delta, double alpha) {
  require(delta > 0.0 && delta <= 1.0, "delta must lie in (0, 1]");
  require(alpha >= 1.0, "alpha must be at least 1");
  const B0Utilities gu = b0_utilities(default_b0_params(delta));
  const double switch_demand = std::max(gu.u, gu.u_prime) / alpha;
  const double element_aux = 2.0 * delta <= 1.0 ? 1.0 - delta : 0.0;
  // Best an overlapping cover player can do: two elements alone, one shared.
  const double overlap =
      2.0 * delta + proportional_share(delta, 2.0 * delta + element_aux, 1.0);
  const double seat = 3.0 * alpha * delta;
  require(seat > alpha * overlap, "no slack makes the extra resource attractive");
  constexpr std::size_t kLimit = 1000000;
  for (std::size_t k = 0; k < kLimit; ++k) {
    const double cap = static_cast<double>(k) * seat + switch_demand;
    if (seat * cap / (cap + seat) > alpha * overlap * (1.0 + kDefaultGuard)) {
      return k;
    }
  }
  throw ConstructionError("required slack is unbounded");
}

X3CGame build_x3c_game(const X3CInstance& instance, double delta, double alpha,
                       std::optional<double> gamma) {
  check_instance(instance);
  require(delta > 0.0 && delta <= 1.0, "delta must lie in (0, 1]");
  require(alpha >= 1.0, "alpha must be at least 1");
  const std::size_t q = instance.subsets.size();
  const std::size_t m = instance.m;
  require(q >= m, "need at least m subsets");
  const std::size_t slack = q - m;
  const auto min_by_delta = static_cast<std::size_t>(std::ceil(1.0 / delta - 1e-9));
  const std::size_t needed =
      std::max(min_by_delta, x3c_required_slack(delta, alpha));
  require(slack >= needed, "q - m must be at least " + std::to_string(needed));

  X3CGame out;
  X3CLayout& lay = out.layout;
  lay.gadget = default_b0_params(delta, gamma);
  lay.gadget_utilities = b0_utilities(lay.gadget);
  lay.switch_demand =
      std::max(lay.gadget_utilities.u, lay.gadget_utilities.u_prime) / alpha;
  const double seat = 3.0 * alpha * delta;
  lay.extra_capacity = static_cast<double>(slack) * seat + lay.switch_demand;
  lay.gadget_aux = lay.gadget.n_aux;
  lay.element_first = 4;
  lay.extra_resource = 4 + 3 * m;

  Game g = build_b0(lay.gadget);
  g.resources = unit_resources(4 + 3 * m);
  g.resources.push_back({lay.extra_resource, lay.extra_capacity});
  g.players[1].push_back(Strategy{{lay.extra_resource, lay.switch_demand}});

  lay.subset_first = g.num_players();
  lay.subset_count = q;
  for (const auto& w : instance.subsets) {
    Strategy cover;
    for (std::size_t e : w) cover.set(lay.element_first + e, delta);
    g.players.push_back({cover, Strategy{{lay.extra_resource, seat}}});
  }

  lay.element_aux_first = g.num_players();
  if (2.0 * delta <= 1.0) {
    const auto [n, sigma] = fill_players(delta);
    lay.element_aux_count = n;
    lay.element_aux_sigma = sigma;
    Strategy fill;
    for (std::size_t e = 0; e < 3 * m; ++e) fill.set(lay.element_first + e, sigma);
    for (std::size_t k = 0; k < n; ++k) g.players.push_back({fill});
  }
  out.game = std::move(g);
  return out;
}

std::vector<std::size_t> covering_subsets(const X3CLayout& layout,
                                          const Profile& profile) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < layout.subset_count; ++k) {
    if (profile[layout.subset_first + k] == 0) out.push_back(k);
  }
  return out;
}

Game build_poa_game(double delta, double alpha, std::size_t n1,
                    std::size_t n2) {
  require(delta > 0.0 && std::isfinite(delta), "delta must be positive");
  require(alpha >= 1.0 && std::isfinite(alpha), "alpha must be at least 1");
  require(n1 >= 1 && n2 >= 1, "n1 and n2 must be at least 1");
  require(approx_leq(1.0, delta * static_cast<double>(n1)),
          "delta * n1 must be at least 1");
  const double total = static_cast<double>(n1 + n2);
  Game g;
  g.delta = delta;
  g.resources = {{0, alpha * static_cast<double>(n2) / (delta * total)},
                 {1, 1.0}};
  for (std::size_t i = 0; i < n1; ++i) g.players.push_back({Strategy{{1, delta}}});
  for (std::size_t i = 0; i < n2; ++i) {
    g.players.push_back({Strategy{{0, alpha / total}}, Strategy{{1, delta}}});
  }
  return g;
}

Game random_game(std::uint64_t seed, std::size_t n_players,
                 std::size_t n_resources, std::size_t strategies_per_player,
                 double delta, double density) {
  require(n_players >= 1 && n_resources >= 1 && strategies_per_player >= 1,
          "counts must be at least 1");
  require(density > 0.0 && density <= 1.0, "density must lie in (0, 1]");
  require(delta > 0.0 && std::isfinite(delta), "delta must be positive");
  Xoshiro256 rng(seed);
  Game g;
  g.delta = delta;
  const double lo = std::log(0.1);
  const double hi = std::log(10.0);
  for (ResourceId r = 0; r < n_resources; ++r) {
    g.resources.push_back({r, std::exp(rng.uniform(lo, hi))});
  }
  auto draw_demand = [&](ResourceId r) {
    // 1 - U lies in (0, 1].
    return (1.0 - rng.uniform01()) * delta * g.capacity(r);
  };
  for (std::size_t i = 0; i < n_players; ++i) {
    std::vector<Strategy> strategies;
    for (std::size_t k = 0; k < strategies_per_player; ++k) {
      Strategy s;
      for (ResourceId r = 0; r < n_resources; ++r) {
        if (rng.uniform01() < density) s.set(r, draw_demand(r));
      }
      if (s.empty()) {
        const ResourceId r = rng.below(n_resources);
        s.set(r, draw_demand(r));
      }
      strategies.push_back(std::move(s));
    }
    g.players.push_back(std::move(strategies));
  }
  return g;
}

}  // namespace bag
