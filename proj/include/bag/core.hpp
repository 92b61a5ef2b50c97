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

#ifndef BAG_CORE_HPP_
#define BAG_CORE_HPP_

// Core model of a delta-share bandwidth allocation game: resources with
// capacities, players choosing among demand vectors, proportional sharing of
// congested resources, and the logarithmic potential function.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bag {

using ResourceId = std::size_t;
using PlayerId = std::size_t;
using StrategyIndex = std::size_t;

// Numeric comparison tolerances shared by every module.
inline constexpr double kRelTol = 1e-9;
inline constexpr double kAbsTol = 1e-12;

// |a - b| <= max(kAbsTol, rel * max(|a|, |b|)).
bool approx_equal(double a, double b, double rel = kRelTol,
                  double abs = kAbsTol);
// a <= b up to the same tolerance.
bool approx_leq(double a, double b, double rel = kRelTol, double abs = kAbsTol);
// a > b by more than the tolerance.
bool definitely_greater(double a, double b, double rel = kRelTol,
                        double abs = kAbsTol);

// Thrown by constructors of instance families when parameters are illegal.
class ConstructionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when an exhaustive enumeration would exceed its profile budget.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Resource {
  ResourceId id = 0;
  double capacity = 1.0;

  friend bool operator==(const Resource&, const Resource&) = default;
};

// A sparse demand vector. Entries are kept sorted by resource id; a zero
// demand removes the entry.
class Strategy {
 public:
  struct Entry {
    ResourceId resource;
    double demand;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  Strategy() = default;
  Strategy(std::initializer_list<std::pair<ResourceId, double>> demands);

  // Builds from a dense vector indexed by resource id, skipping zeros.
  static Strategy from_dense(std::span<const double> demands);

  void set(ResourceId resource, double demand);
  double demand(ResourceId resource) const;
  std::span<const Entry> entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  friend bool operator==(const Strategy&, const Strategy&) = default;

 private:
  std::vector<Entry> entries_;
};

// resources[r].id == r for a well-formed game; validate() checks this along
// with the delta-share bound.
struct Game {
  std::vector<Resource> resources;
  std::vector<std::vector<Strategy>> players;
  double delta = 1.0;

  std::size_t num_players() const { return players.size(); }
  std::size_t num_resources() const { return resources.size(); }
  double capacity(ResourceId r) const { return resources[r].capacity; }
  const Strategy& strategy(PlayerId i, StrategyIndex k) const {
    return players[i][k];
  }

  friend bool operator==(const Game&, const Game&) = default;
};

// One strategy index per player, in player order.
struct Profile {
  std::vector<StrategyIndex> choices;

  Profile() = default;
  explicit Profile(std::vector<StrategyIndex> c) : choices(std::move(c)) {}
  Profile(std::initializer_list<StrategyIndex> c) : choices(c) {}

  // All players on strategy 0.
  static Profile first(const Game& game);

  std::size_t size() const { return choices.size(); }
  StrategyIndex operator[](PlayerId i) const { return choices[i]; }
  StrategyIndex& operator[](PlayerId i) { return choices[i]; }

  friend bool operator==(const Profile&, const Profile&) = default;
  friend auto operator<=>(const Profile&, const Profile&) = default;
};

std::string to_string(const Profile& profile);

// Throws std::invalid_argument unless the profile fits the game.
void check_profile(const Game& game, const Profile& profile);

struct Violation {
  enum class Kind {
    kNoStrategies,
    kCapacity,
    kResourceId,
    kReference,
    kDemand,
    kShare,
    kDelta,
  };

  Kind kind;
  std::optional<PlayerId> player;
  std::optional<StrategyIndex> strategy;
  std::optional<ResourceId> resource;
  std::string message;
};

// Empty iff every game invariant holds (including the delta-share bound).
std::vector<Violation> validate(const Game& game);

// Smallest delta for which the game is delta-share: max s_i(r) / b_r.
double infer_delta(const Game& game);

// Closed form of the per-resource potential: T if T <= b, otherwise
// b + b ln(T / b).
double resource_potential(double load, double capacity);

// Share player i receives from a resource with total load `load`.
inline double proportional_share(double demand, double load, double capacity) {
  if (demand <= 0.0) return 0.0;
  if (load <= capacity) return demand;
  return capacity * demand / load;
}

// Total demand on every resource, summed in player order.
std::vector<double> loads(const Game& game, const Profile& profile);

double utility_per_resource(const Game& game, const Profile& profile,
                            PlayerId player, ResourceId resource);
double player_utility(const Game& game, const Profile& profile,
                      PlayerId player);
std::vector<double> utilities(const Game& game, const Profile& profile);
double social_welfare(const Game& game, const Profile& profile);

// u_i(s_{-i}, s_i') for candidate strategy `strategy` of `player`.
double deviation_utility(const Game& game, const Profile& profile,
                         PlayerId player, StrategyIndex strategy);

// Max over the player's strategies of sum_r min(s_i(r), b_r).
double player_opt_utility(const Game& game, PlayerId player);
// sum_r min(s(r), b_r) for a single strategy.
double standalone_utility(const Game& game, const Strategy& strategy);

struct PotentialBreakdown {
  std::vector<double> per_resource;
  double total = 0.0;
  std::size_t num_resources = 0;
  // Row-major players x resources: phi_r(s) - phi_r(s_{-i}).
  std::vector<double> marginals;

  double marginal(PlayerId i, ResourceId r) const {
    return marginals[i * num_resources + r];
  }
};

PotentialBreakdown potential(const Game& game, const Profile& profile);
double potential_total(const Game& game, const Profile& profile);

// Cached loads for a fixed profile so that utilities and unilateral
// deviations can be evaluated without re-summing the whole profile.
class ProfileState {
 public:
  ProfileState(const Game& game, Profile profile);

  const Game& game() const { return *game_; }
  const Profile& profile() const { return profile_; }
  std::span<const double> loads() const { return loads_; }

  double utility(PlayerId player) const;
  double deviation_utility(PlayerId player, StrategyIndex strategy) const;
  double welfare() const;
  double potential() const;

  // Switches one player and recomputes the loads from scratch.
  void set_choice(PlayerId player, StrategyIndex strategy);
  void reset(Profile profile);

 private:
  void recompute();

  const Game* game_;
  Profile profile_;
  std::vector<double> loads_;
};

}  // namespace bag

#endif  // BAG_CORE_HPP_
