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

#include "bag/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bag {

bool approx_equal(double a, double b, double rel, double abs) {
  if (a == b) return true;
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return std::fabs(a - b) <= std::max(abs, rel * scale);
}

bool approx_leq(double a, double b, double rel, double abs) {
  return a <= b || approx_equal(a, b, rel, abs);
}

bool definitely_greater(double a, double b, double rel, double abs) {
  return a > b && !approx_equal(a, b, rel, abs);
}

Strategy::Strategy(std::initializer_list<std::pair<ResourceId, double>> demands) {
  for (const auto& [r, d] : demands) set(r, d);
}

Strategy Strategy::from_dense(std::span<const double> demands) {
  Strategy s;
  for (std::size_t r = 0; r < demands.size(); ++r) {
    if (demands[r] != 0.0) s.entries_.push_back({r, demands[r]});
  }
  return s;
}

void Strategy::set(ResourceId resource, double demand) {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), resource,
      [](const Entry& e, ResourceId r) { return e.resource < r; });
  const bool present = it != entries_.end() && it->resource == resource;
  if (demand == 0.0) {
    if (present) entries_.erase(it);
    return;
  }
  if (present) {
    it->demand = demand;
  } else {
    entries_.insert(it, Entry{resource, demand});
  }
}

double Strategy::demand(ResourceId resource) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), resource,
      [](const Entry& e, ResourceId r) { return e.resource < r; });
  if (it != entries_.end() && it->resource == resource) return it->demand;
  return 0.0;
}

Profile Profile::first(const Game& game) {
  return Profile(std::vector<StrategyIndex>(game.num_players(), 0));
}

std::string to_string(const Profile& profile) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (i > 0) out << ',';
    out << profile[i];
  }
  out << ')';
  return out.str();
}

void check_profile(const Game& game, const Profile& profile) {
  if (profile.size() != game.num_players()) {
    throw std::invalid_argument("profile has " + std::to_string(profile.size()) +
                                " choices for " +
                                std::to_string(game.num_players()) + " players");
  }
  for (PlayerId i = 0; i < profile.size(); ++i) {
    if (profile[i] >= game.players[i].size()) {
      throw std::invalid_argument("player " + std::to_string(i) +
                                  " has no strategy " +
                                  std::to_string(profile[i]));
    }
  }
}

std::vector<Violation> validate(const Game& game) {
  std::vector<Violation> out;
  if (!(game.delta > 0.0) || !std::isfinite(game.delta)) {
    out.push_back({Violation::Kind::kDelta, {}, {}, {},
                   "delta must be a positive finite number"});
  }
  const std::size_t m = game.num_resources();
  for (ResourceId r = 0; r < m; ++r) {
    const Resource& res = game.resources[r];
    if (res.id != r) {
      out.push_back({Violation::Kind::kResourceId, {}, {}, r,
                     "resource at position " + std::to_string(r) +
                         " has id " + std::to_string(res.id)});
    }
    if (!(res.capacity > 0.0) || !std::isfinite(res.capacity)) {
      out.push_back({Violation::Kind::kCapacity, {}, {}, r,
                     "resource " + std::to_string(r) +
                         " has non-positive capacity"});
    }
  }
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    if (game.players[i].empty()) {
      out.push_back({Violation::Kind::kNoStrategies, i, {}, {},
                     "player " + std::to_string(i) + " has no strategies"});
    }
    for (StrategyIndex k = 0; k < game.players[i].size(); ++k) {
      for (const auto& e : game.players[i][k].entries()) {
        const std::string where = "player " + std::to_string(i) +
                                  " strategy " + std::to_string(k) +
                                  " resource " + std::to_string(e.resource);
        if (e.resource >= m) {
          out.push_back({Violation::Kind::kReference, i, k, e.resource,
                         where + ": unknown resource"});
          continue;
        }
        if (!(e.demand > 0.0) || !std::isfinite(e.demand)) {
          out.push_back({Violation::Kind::kDemand, i, k, e.resource,
                         where + ": demand must be positive"});
          continue;
        }
        const double bound = game.delta * game.capacity(e.resource);
        if (!approx_leq(e.demand, bound)) {
          std::ostringstream msg;
          msg << where << ": demand " << e.demand << " exceeds delta*b = "
              << bound;
          out.push_back({Violation::Kind::kShare, i, k, e.resource, msg.str()});
        }
      }
    }
  }
  return out;
}

double infer_delta(const Game& game) {
  double delta = 0.0;
  for (const auto& strategies : game.players) {
    for (const auto& s : strategies) {
      for (const auto& e : s.entries()) {
        if (e.resource < game.num_resources()) {
          delta = std::max(delta, e.demand / game.capacity(e.resource));
        }
      }
    }
  }
  return delta;
}

double resource_potential(double load, double capacity) {
  if (load <= capacity) return load;
  return capacity + capacity * std::log(load / capacity);
}

std::vector<double> loads(const Game& game, const Profile& profile) {
  std::vector<double> t(game.num_resources(), 0.0);
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    for (const auto& e : game.strategy(i, profile[i]).entries()) {
      t[e.resource] += e.demand;
    }
  }
  return t;
}

double utility_per_resource(const Game& game, const Profile& profile,
                            PlayerId player, ResourceId resource) {
  check_profile(game, profile);
  if (player >= game.num_players()) {
    throw std::invalid_argument("player index out of range");
  }
  if (resource >= game.num_resources()) {
    throw std::invalid_argument("resource index out of range");
  }
  const double demand = game.strategy(player, profile[player]).demand(resource);
  if (demand <= 0.0) return 0.0;
  double load = 0.0;
  for (PlayerId j = 0; j < game.num_players(); ++j) {
    load += game.strategy(j, profile[j]).demand(resource);
  }
  return proportional_share(demand, load, game.capacity(resource));
}

double player_utility(const Game& game, const Profile& profile,
                      PlayerId player) {
  check_profile(game, profile);
  if (player >= game.num_players()) {
    throw std::invalid_argument("player index out of range");
  }
  return ProfileState(game, profile).utility(player);
}

std::vector<double> utilities(const Game& game, const Profile& profile) {
  check_profile(game, profile);
  ProfileState state(game, profile);
  std::vector<double> u(game.num_players());
  for (PlayerId i = 0; i < u.size(); ++i) u[i] = state.utility(i);
  return u;
}

double social_welfare(const Game& game, const Profile& profile) {
  check_profile(game, profile);
  return ProfileState(game, profile).welfare();
}

double deviation_utility(const Game& game, const Profile& profile,
                         PlayerId player, StrategyIndex strategy) {
  check_profile(game, profile);
  if (player >= game.num_players() ||
      strategy >= game.players[player].size()) {
    throw std::invalid_argument("deviation index out of range");
  }
  return ProfileState(game, profile).deviation_utility(player, strategy);
}

double standalone_utility(const Game& game, const Strategy& strategy) {
  double total = 0.0;
  for (const auto& e : strategy.entries()) {
    total += std::min(e.demand, game.capacity(e.resource));
  }
  return total;
}

double player_opt_utility(const Game& game, PlayerId player) {
  double best = 0.0;
  for (const auto& s : game.players.at(player)) {
    best = std::max(best, standalone_utility(game, s));
  }
  return best;
}

PotentialBreakdown potential(const Game& game, const Profile& profile) {
  check_profile(game, profile);
  const std::size_t m = game.num_resources();
  PotentialBreakdown out;
  out.num_resources = m;
  const std::vector<double> t = loads(game, profile);
  out.per_resource.resize(m);
  for (ResourceId r = 0; r < m; ++r) {
    out.per_resource[r] = resource_potential(t[r], game.capacity(r));
    out.total += out.per_resource[r];
  }
  out.marginals.assign(game.num_players() * m, 0.0);
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    for (const auto& e : game.strategy(i, profile[i]).entries()) {
      const double without =
          resource_potential(std::max(0.0, t[e.resource] - e.demand),
                             game.capacity(e.resource));
      out.marginals[i * m + e.resource] = out.per_resource[e.resource] - without;
    }
  }
  return out;
}

double potential_total(const Game& game, const Profile& profile) {
  check_profile(game, profile);
  return ProfileState(game, profile).potential();
}

ProfileState::ProfileState(const Game& game, Profile profile)
    : game_(&game), profile_(std::move(profile)) {
  recompute();
}

void ProfileState::recompute() {
  loads_.assign(game_->num_resources(), 0.0);
  for (PlayerId i = 0; i < game_->num_players(); ++i) {
    for (const auto& e : game_->strategy(i, profile_[i]).entries()) {
      loads_[e.resource] += e.demand;
    }
  }
}

double ProfileState::utility(PlayerId player) const {
  double u = 0.0;
  for (const auto& e : game_->strategy(player, profile_[player]).entries()) {
    u += proportional_share(e.demand, loads_[e.resource],
                            game_->capacity(e.resource));
  }
  return u;
}

double ProfileState::deviation_utility(PlayerId player,
                                       StrategyIndex strategy) const {
  const Strategy& current = game_->strategy(player, profile_[player]);
  double u = 0.0;
  for (const auto& e : game_->strategy(player, strategy).entries()) {
    const double others =
        std::max(0.0, loads_[e.resource] - current.demand(e.resource));
    u += proportional_share(e.demand, others + e.demand,
                            game_->capacity(e.resource));
  }
  return u;
}

double ProfileState::welfare() const {
  double total = 0.0;
  for (PlayerId i = 0; i < game_->num_players(); ++i) total += utility(i);
  return total;
}

double ProfileState::potential() const {
  double total = 0.0;
  for (ResourceId r = 0; r < loads_.size(); ++r) {
    total += resource_potential(loads_[r], game_->capacity(r));
  }
  return total;
}

void ProfileState::set_choice(PlayerId player, StrategyIndex strategy) {
  if (profile_[player] == strategy) return;
  profile_[player] = strategy;
  recompute();
}

void ProfileState::reset(Profile profile) {
  profile_ = std::move(profile);
  recompute();
}

}  // namespace bag
