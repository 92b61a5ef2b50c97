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

#ifndef BAG_DYNAMICS_HPP_
#define BAG_DYNAMICS_HPP_

// Alpha-improvement dynamics. A player holds an alpha-move when her best
// response beats alpha times her current utility, strictly and by more than
// a relative guard; every move goes to the best response.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bag/core.hpp"

namespace bag {

inline constexpr double kDefaultGuard = 1e-9;

enum class Scheduler { kRoundRobin, kMaxGain, kRandom };

std::string_view to_string(Scheduler scheduler);
std::optional<Scheduler> parse_scheduler(std::string_view name);

struct DynamicsConfig {
  double alpha = 1.0;
  Scheduler scheduler = Scheduler::kRoundRobin;
  std::uint64_t seed = 0;
  std::size_t max_steps = 100000;
  double epsilon_guard = kDefaultGuard;
  // Steps beyond this many are kept only as periodic samples.
  std::size_t full_record_limit = 1000000;
  std::size_t sample_stride = 1000;
};

// Throws std::invalid_argument for alpha < 1, max_steps == 0 or a negative
// guard.
void check_config(const DynamicsConfig& config);

// The single predicate behind every alpha-move decision.
bool is_alpha_improvement(double new_utility, double old_utility, double alpha,
                          double guard = kDefaultGuard);

// new / old, +inf when old is zero and new positive, 1 when both are zero.
double improvement_ratio(double new_utility, double old_utility);

struct BestResponse {
  StrategyIndex strategy = 0;
  double utility = 0.0;
};

struct AlphaMove {
  StrategyIndex strategy = 0;
  double ratio = 1.0;
  double old_utility = 0.0;
  double new_utility = 0.0;
};

// Ties go to the lowest strategy index.
BestResponse best_response(const ProfileState& state, PlayerId player);
BestResponse best_response(const Game& game, const Profile& profile,
                           PlayerId player);

std::optional<AlphaMove> find_alpha_move(const ProfileState& state,
                                         PlayerId player, double alpha,
                                         double guard = kDefaultGuard);
std::optional<AlphaMove> find_alpha_move(const Game& game,
                                         const Profile& profile,
                                         PlayerId player, double alpha,
                                         double guard = kDefaultGuard);

// Among players holding an alpha-move, the one maximising
// u_i(s_{-i}, s_i^b) - alpha * u_i(s); ties go to the lowest index.
std::optional<PlayerId> max_gain_scheduler(const ProfileState& state,
                                           const DynamicsConfig& config);
std::optional<PlayerId> max_gain_scheduler(const Game& game,
                                           const Profile& profile,
                                           const DynamicsConfig& config);

struct TraceStep {
  std::size_t step = 0;
  PlayerId player = 0;
  StrategyIndex old_strategy = 0;
  StrategyIndex new_strategy = 0;
  double old_utility = 0.0;
  double new_utility = 0.0;
  double ratio = 1.0;
  double potential_before = 0.0;
  double potential_after = 0.0;
  // Social welfare after the move.
  double welfare = 0.0;
};

struct TraceSample {
  std::size_t step = 0;
  double potential = 0.0;
  double welfare = 0.0;
};

enum class Terminal { kEquilibrium, kStepBudgetExhausted };

std::string_view to_string(Terminal terminal);

struct Trace {
  std::vector<TraceStep> steps;
  // Only populated once the run passes config.full_record_limit.
  std::vector<TraceSample> samples;
  std::size_t total_steps = 0;
  Terminal terminal = Terminal::kEquilibrium;
  Profile initial_profile;
  Profile final_profile;
  double initial_potential = 0.0;
  double initial_welfare = 0.0;
  double final_potential = 0.0;
  double final_welfare = 0.0;
};

// Deterministic in (game, initial, config).
Trace run_dynamics(const Game& game, const Profile& initial,
                   const DynamicsConfig& config);

// True iff every recorded step strictly increased the potential.
bool potential_strictly_increasing(const Trace& trace);

// Empirical check of the move-count envelope log(n) n^5 / (epsilon lambda)
// for (alpha_upper + epsilon)-dynamics.
struct ConvergenceRecord {
  std::size_t players = 0;
  double lambda = 0.0;
  double epsilon = 0.0;
  double alpha = 0.0;
  std::size_t steps = 0;
  bool converged = false;
  double envelope = 0.0;
};

// min_i u_i^opt / max_j u_j^opt; 1 for games where every u^opt is zero.
double opt_utility_spread(const Game& game);

ConvergenceRecord measure_convergence(const Game& game, const Profile& initial,
                                      double epsilon, DynamicsConfig config);

// Largest observed steps / envelope over converged records.
double fitted_envelope_constant(std::span<const ConvergenceRecord> records);

}  // namespace bag

#endif  // BAG_DYNAMICS_HPP_
