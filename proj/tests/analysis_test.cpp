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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "bag/analysis.hpp"
#include "bag/bounds.hpp"
#include "bag/constructions.hpp"
#include "bag/dynamics.hpp"
#include "bag/random.hpp"

namespace {

using bag::Game;
using bag::Profile;
using bag::Strategy;

constexpr double kInf = std::numeric_limits<double>::infinity();

Game singletons() {
  Game g;
  g.delta = 1.0;
  g.resources = {{0, 1.0}, {1, 2.0}};
  g.players = {{Strategy{{0, 0.7}}}, {Strategy{{0, 0.6}, {1, 1.0}}},
               {Strategy{{1, 2.0}}}};
  return g;
}

Profile all_second(const Game& poa, std::size_t n1) {
  Profile p = Profile::first(poa);
  for (std::size_t i = n1; i < p.size(); ++i) p[i] = 1;
  return p;
}

// Reference enumeration without threads or cached state.
struct Naive {
  double opt = 0.0;
  double min_alpha = kInf;
};

Naive naive(const Game& g) {
  Naive out;
  for (std::uint64_t k = 0; k < bag::profile_count(g); ++k) {
    const Profile p = bag::profile_at(g, k);
    out.opt = std::max(out.opt, bag::social_welfare(g, p));
    double worst = 1.0;
    for (std::size_t i = 0; i < g.num_players(); ++i) {
      const double u = bag::player_utility(g, p, i);
      for (std::size_t s = 0; s < g.players[i].size(); ++s) {
        Profile q = p;
        q[i] = s;
        const double v = bag::player_utility(g, q, i);
        if (v <= u) continue;
        worst = std::max(worst, u > 0.0 ? v / u : kInf);
      }
    }
    out.min_alpha = std::min(out.min_alpha, worst);
  }
  return out;
}

}  // namespace

TEST_CASE("profile indexing is lexicographic") {
  Game g;
  g.resources = {{0, 1.0}};
  g.players = {{Strategy{{0, 0.1}}, Strategy{{0, 0.2}}},
               {Strategy{{0, 0.1}}, Strategy{{0, 0.2}}, Strategy{{0, 0.3}}}};
  CHECK(bag::profile_count(g) == 6);
  CHECK(bag::profile_at(g, 0) == Profile{0, 0});
  CHECK(bag::profile_at(g, 1) == Profile{0, 1});
  CHECK(bag::profile_at(g, 3) == Profile{1, 0});
  CHECK(bag::profile_at(g, 5) == Profile{1, 2});
}

TEST_CASE("is_alpha_ne") {
  const Game s = singletons();
  CHECK(bag::is_alpha_ne(s, {0, 0, 0}, 1.0).is_equilibrium);

  const Game b0 = bag::build_b0(0.5, 0.25, 0.5, 1);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      const auto check = bag::is_alpha_ne(b0, {a, b, 0}, 1.0);
      CHECK_FALSE(check.is_equilibrium);
      REQUIRE(check.witness.has_value());
      CHECK(check.witness->ratio == doctest::Approx(14.0 / 13.0));
    }
  }

  const Game poa = bag::build_poa_game(0.5, 1.2, 2, 8);
  CHECK(bag::is_alpha_ne(poa, all_second(poa, 2), 1.2).is_equilibrium);
  CHECK_FALSE(bag::is_alpha_ne(poa, all_second(poa, 2), 1.19).is_equilibrium);

  CHECK_THROWS_AS(bag::is_alpha_ne(s, {0, 0, 0}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(bag::is_alpha_ne(s, {0, 0}, 1.0), std::invalid_argument);
}

TEST_CASE("profile_min_alpha") {
  CHECK(bag::profile_min_alpha(singletons(), {0, 0, 0}) == 1.0);
  const Game b0 = bag::build_b0(0.5, 0.25, 0.5, 1);
  CHECK(bag::profile_min_alpha(b0, {0, 0, 0}) == doctest::Approx(14.0 / 13.0));
  CHECK(bag::profile_min_alpha(b0, {1, 1, 0}) == doctest::Approx(14.0 / 13.0));

  // An empty strategy earns 0 while resource 0 would pay 0.3.
  Game g;
  g.delta = 1.0;
  g.resources = {{0, 1.0}};
  g.players = {{Strategy{}, Strategy{{0, 0.3}}}};
  CHECK(bag::profile_min_alpha(g, {0}) == kInf);
  CHECK(bag::profile_min_alpha(g, {1}) == 1.0);
}

TEST_CASE("brute-force minimum alpha") {
  const Game b0 = bag::build_b0(bag::default_b0_params(0.5));
  CHECK(bag::brute_force_min_alpha(b0).min_alpha ==
        doctest::Approx(bag::alpha_lower(0.5)).epsilon(1e-9));
  CHECK(std::fabs(bag::brute_force_min_alpha(b0).min_alpha - 1.0811) < 1e-4);
  const Game b0q = bag::build_b0(0.5, 0.25, 0.5, 1);
  const auto r = bag::brute_force_min_alpha(b0q);
  CHECK(r.min_alpha == doctest::Approx(14.0 / 13.0));
  CHECK(r.profile == Profile{0, 0, 0});
  CHECK(bag::brute_force_min_alpha(singletons()).min_alpha == 1.0);
}

TEST_CASE("brute-force optimum") {
  const Game poa = bag::build_poa_game(0.5, 1.2, 2, 8);
  const auto opt = bag::brute_force_opt(poa);
  CHECK(opt.welfare == doctest::Approx(1.96));
  CHECK(opt.profile == Profile::first(poa));
  const auto single = bag::brute_force_opt(singletons());
  CHECK(single.profile == Profile{0, 0, 0});
}

TEST_CASE("price of anarchy") {
  const Game poa = bag::build_poa_game(0.5, 1.2, 2, 8);
  const auto r = bag::price_of_anarchy(poa, 1.2);
  REQUIRE(r.defined());
  CHECK(*r.poa == doctest::Approx(1.96));
  CHECK(*r.poa <= 1.2 + 1.0);
  CHECK(*r.worst_ne_profile == all_second(poa, 2));

  Game one;
  one.delta = 1.0;
  one.resources = {{0, 1.0}, {1, 1.0}};
  one.players = {{Strategy{{0, 0.3}}, Strategy{{1, 0.9}}}};
  CHECK(*bag::price_of_anarchy(one, 1.0).poa == doctest::Approx(1.0));

  const auto none = bag::price_of_anarchy(bag::build_b0(0.5, 0.25, 0.5, 1), 1.0);
  CHECK_FALSE(none.defined());
  CHECK(none.min_alpha > 1.0);
}

TEST_CASE("analyze reports every alpha in one pass") {
  const Game poa = bag::build_poa_game(0.5, 1.2, 2, 8);
  const double alphas[] = {1.0, 1.2, 2.0};
  const auto rep = bag::analyze(poa, alphas);
  CHECK(rep.profile_count == 256);
  CHECK(rep.opt_welfare == doctest::Approx(1.96));
  REQUIRE(rep.find(1.2) != nullptr);
  CHECK(*rep.find(1.2)->poa == doctest::Approx(1.96));
  CHECK(rep.find(1.5) == nullptr);
  for (const auto& s : rep.per_alpha) {
    if (s.poa) CHECK(*s.poa >= 1.0);
  }
}

TEST_CASE("enumeration budget") {
  const Game g = bag::random_game(1, 10, 3, 3, 0.5, 0.5);
  bag::EnumerationOptions o;
  o.budget = 1000;
  CHECK_THROWS_AS(bag::brute_force_opt(g, o), bag::CapacityError);
  o.budget = 59049;
  CHECK_NOTHROW(bag::brute_force_opt(g, o));
}

TEST_CASE("parallel enumeration matches a single worker") {
  const Game g = bag::random_game(8, 8, 4, 4, 0.6, 0.5);
  REQUIRE(bag::profile_count(g) == 65536);
  const double alphas[] = {1.0, 1.1, bag::alpha_upper(0.6)};
  bag::EnumerationOptions serial;
  serial.threads = 1;
  bag::EnumerationOptions parallel;
  parallel.threads = 7;
  const auto a = bag::analyze(g, alphas, serial);
  const auto b = bag::analyze(g, alphas, parallel);
  CHECK(a.opt_profile == b.opt_profile);
  CHECK(a.opt_welfare == b.opt_welfare);
  CHECK(a.min_alpha == b.min_alpha);
  CHECK(a.min_alpha_profile == b.min_alpha_profile);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(a.per_alpha[k].worst_ne_profile == b.per_alpha[k].worst_ne_profile);
    CHECK(a.per_alpha[k].poa == b.per_alpha[k].poa);
  }
}

TEST_CASE("property: enumeration agrees with a naive reference") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Game g = bag::random_game(seed, 2 + seed % 4, 1 + seed % 3, 2 + seed % 2,
                                    0.3 + 0.01 * seed, 0.6);
    const Naive ref = naive(g);
    const auto rep = bag::analyze(g, {});
    CHECK(rep.opt_welfare == doctest::Approx(ref.opt));
    if (std::isinf(ref.min_alpha)) {
      CHECK(std::isinf(rep.min_alpha));
    } else {
      CHECK(rep.min_alpha == doctest::Approx(ref.min_alpha));
    }
  }
}

TEST_CASE("property: oracle consistency and PoA bound") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const double delta = 0.2 + 0.8 * ((seed * 37) % 100) / 100.0;
    const Game g = bag::random_game(seed, 3 + seed % 3, 2 + seed % 3, 2 + seed % 2,
                                    delta, 0.6);
    const auto m = bag::brute_force_min_alpha(g);
    CHECK(m.min_alpha <= bag::alpha_upper(delta) + 1e-9);
    CHECK(bag::is_alpha_ne(g, m.profile, m.min_alpha + 1e-6).is_equilibrium);
    if (m.min_alpha - 1e-6 >= 1.0) {
      for (std::uint64_t k = 0; k < bag::profile_count(g); ++k) {
        CHECK_FALSE(bag::is_alpha_ne(g, bag::profile_at(g, k), m.min_alpha - 1e-6)
                        .is_equilibrium);
      }
    }
    const double alphas[] = {1.0, 1.1, 1.3, bag::alpha_upper(delta)};
    const auto rep = bag::analyze(g, alphas);
    for (const auto& s : rep.per_alpha) {
      if (s.poa) CHECK(*s.poa <= s.alpha + 1.0 + 1e-9);
    }
  }
}

TEST_CASE("niceness") {
  bag::Xoshiro256 rng(3);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const double delta = 0.3 + 0.7 * rng.uniform01();
    const Game g = bag::random_game(seed, 4, 3, 3, delta, 0.6);
    const double alpha = bag::alpha_upper(delta);
    const auto opt = bag::brute_force_opt(g);
    for (std::uint64_t k = 0; k < bag::profile_count(g); ++k) {
      const auto r = bag::niceness_check(g, bag::profile_at(g, k), 1.0 / alpha,
                                         1.0 / alpha, opt.welfare);
      CHECK(r.holds);
    }
    const auto at_opt =
        bag::niceness_check(g, opt.profile, 0.5, 0.25, opt.welfare);
    CHECK(at_opt.slack >= (1.0 - 0.5 + 0.25) * opt.welfare - 1e-9);
  }

  // Hand-built 2-player game swept exhaustively with the enumerating overload.
  Game g;
  g.delta = 1.0;
  g.resources = {{0, 1.0}, {1, 1.5}};
  g.players = {{Strategy{{0, 1.0}}, Strategy{{1, 0.5}}},
               {Strategy{{0, 0.5}, {1, 1.0}}, Strategy{{1, 1.5}}}};
  for (std::uint64_t k = 0; k < 4; ++k) {
    CHECK(bag::niceness_check(g, bag::profile_at(g, k), 1.0, 1.0).holds);
  }
}

TEST_CASE("pruning") {
  Game g;
  g.delta = 1.0;
  g.resources = {{0, 1.0}, {1, 1.0}};
  // n delta = 2, player 0 opt = 1: threshold 0.5.
  g.players = {{Strategy{{0, 1.0}}, Strategy{{1, 0.1}}, Strategy{{1, 0.6}}},
               {Strategy{{1, 0.5}}}};
  CHECK_FALSE(bag::is_pruned(g));
  const Game p = bag::prune_dominated(g);
  CHECK(p.players[0].size() == 2);
  CHECK(p.players[0][1] == Strategy{{1, 0.6}});
  CHECK(bag::is_pruned(p));
}

TEST_CASE("utility floor and welfare sandwich") {
  SUBCASE("single player at capacity") {
    Game g;
    g.delta = 1.0;
    g.resources = {{0, 1.0}};
    g.players = {{Strategy{{0, 1.0}}}};
    const auto r = bag::lemma_bounds_check(g, {0});
    CHECK(r.utility_floor == bag::CheckStatus::kPassed);
    CHECK(r.sandwich == bag::CheckStatus::kPassed);
    CHECK(r.opt_utility[0] == 1.0);
  }
  SUBCASE("sandwich is tight on a saturated resource") {
    // n = 5 players each demanding delta b: T = n delta b.
    const double delta = 0.8;
    const double b = 2.0;
    Game g;
    g.delta = delta;
    g.resources = {{0, b}};
    for (int i = 0; i < 5; ++i) g.players.push_back({Strategy{{0, delta * b}}});
    const Profile p = Profile::first(g);
    const double ratio = bag::potential_total(g, p) / bag::social_welfare(g, p);
    CHECK(ratio == doctest::Approx(1.0 + std::log(5 * delta)).epsilon(1e-12));
    const auto r = bag::lemma_bounds_check(g, p);
    CHECK(r.sandwich == bag::CheckStatus::kPassed);
    CHECK(std::fabs(r.sandwich_upper_margin) <= 1e-9);
  }
  SUBCASE("skips below n delta = 1") {
    Game g;
    g.delta = 0.5;
    g.resources = {{0, 1.0}};
    g.players = {{Strategy{{0, 0.5}}}};
    const auto r = bag::lemma_bounds_check(g, {0});
    CHECK(r.utility_floor == bag::CheckStatus::kSkipped);
    CHECK(r.sandwich == bag::CheckStatus::kSkipped);
    CHECK_FALSE(r.reason.empty());
  }
  SUBCASE("unpruned games skip the floor") {
    Game g;
    g.delta = 1.0;
    g.resources = {{0, 1.0}, {1, 1.0}};
    g.players = {{Strategy{{0, 1.0}}, Strategy{{1, 0.01}}}, {Strategy{{0, 1.0}}}};
    const auto r = bag::lemma_bounds_check(g, {1, 0});
    CHECK(r.utility_floor == bag::CheckStatus::kSkipped);
    CHECK(r.sandwich == bag::CheckStatus::kPassed);
  }
  SUBCASE("random pruned games") {
    bag::Xoshiro256 rng(77);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const Game g = bag::prune_dominated(bag::random_game(seed, 5, 4, 3, 0.8, 0.5));
      for (int t = 0; t < 5; ++t) {
        Profile p = Profile::first(g);
        for (std::size_t i = 0; i < 5; ++i) p[i] = rng.below(g.players[i].size());
        const auto r = bag::lemma_bounds_check(g, p);
        CHECK(r.utility_floor == bag::CheckStatus::kPassed);
        CHECK(r.sandwich == bag::CheckStatus::kPassed);
      }
    }
  }
}

TEST_CASE("dynamics equilibria pass the oracle") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Game g = bag::random_game(seed, 4, 3, 3, 0.7, 0.6);
    bag::DynamicsConfig c;
    c.alpha = 1.0 + 0.05 * (seed % 10);
    c.max_steps = 5000;
    const auto t = bag::run_dynamics(g, Profile::first(g), c);
    if (t.terminal == bag::Terminal::kEquilibrium) {
      CHECK(bag::is_alpha_ne(g, t.final_profile, c.alpha).is_equilibrium);
    }
  }
}
