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

#include "bag/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bag/bounds.hpp"
#include "bag/random.hpp"

namespace bag {

std::string_view to_string(Scheduler scheduler) {
  switch (scheduler) {
    case Scheduler::kRoundRobin:
      return "round-robin";
    case Scheduler::kMaxGain:
      return "max-gain";
    case Scheduler::kRandom:
      return "random";
  }
  return "unknown";
}

std::optional<Scheduler> parse_scheduler(std::string_view name) {
  if (name == "round-robin") return Scheduler::kRoundRobin;
  if (name == "max-gain") return Scheduler::kMaxGain;
  if (name == "random") return Scheduler::kRandom;
  return std::nullopt;
}

std::string_view to_string(Terminal terminal) {
  return terminal == Terminal::kEquilibrium ? "equilibrium"
                                            : "step-budget-exhausted";
}

void check_config(const DynamicsConfig& config) {
  if (!(config.alpha >= 1.0)) {
    throw std::invalid_argument("alpha must be at least 1");
  }
  if (config.max_steps == 0) {
    throw std::invalid_argument("max_steps must be positive");
  }
  if (!(config.epsilon_guard >= 0.0)) {
    throw std::invalid_argument("epsilon_guard must be non-negative");
  }
  if (config.sample_stride == 0) {
    throw std::invalid_argument("sample_stride must be positive");
  }
}

bool is_alpha_improvement(double new_utility, double old_utility, double alpha,
                          double guard) {
  if (old_utility <= kAbsTol) return new_utility > kAbsTol;
  return new_utility > alpha * old_utility * (1.0 + guard);
}

double improvement_ratio(double new_utility, double old_utility) {
  if (old_utility <= 0.0) {
    return new_utility > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  }
  return new_utility / old_utility;
}

BestResponse best_response(const ProfileState& state, PlayerId player) {
  BestResponse best;
  const std::size_t count = state.game().players[player].size();
  best.utility = state.deviation_utility(player, 0);
  for (StrategyIndex k = 1; k < count; ++k) {
    const double u = state.deviation_utility(player, k);
    if (definitely_greater(u, best.utility)) best = {k, u};
  }
  return best;
}

BestResponse best_response(const Game& game, const Profile& profile,
                           PlayerId player) {
  check_profile(game, profile);
  if (player >= game.num_players()) {
    throw std::invalid_argument("player index out of range");
  }
  return best_response(ProfileState(game, profile), player);
}

std::optional<AlphaMove> find_alpha_move(const ProfileState& state,
                                         PlayerId player, double alpha,
                                         double guard) {
  const double current = state.utility(player);
  const BestResponse br = best_response(state, player);
  if (br.strategy == state.profile()[player] ||
      !is_alpha_improvement(br.utility, current, alpha, guard)) {
    return std::nullopt;
  }
  return AlphaMove{br.strategy, improvement_ratio(br.utility, current),
                   current, br.utility};
}

std::optional<AlphaMove> find_alpha_move(const Game& game,
                                         const Profile& profile,
                                         PlayerId player, double alpha,
                                         double guard) {
  check_profile(game, profile);
  if (player >= game.num_players()) {
    throw std::invalid_argument("player index out of range");
  }
  return find_alpha_move(ProfileState(game, profile), player, alpha, guard);
}

std::optional<PlayerId> max_gain_scheduler(const ProfileState& state,
                                           const DynamicsConfig& config) {
  std::optional<PlayerId> chosen;
  double best_gain = 0.0;
  for (PlayerId i = 0; i < state.game().num_players(); ++i) {
    const auto move =
        find_alpha_move(state, i, config.alpha, config.epsilon_guard);
    if (!move) continue;
    const double gain = move->new_utility - config.alpha * move->old_utility;
    if (!chosen || definitely_greater(gain, best_gain)) {
      chosen = i;
      best_gain = gain;
    }
  }
  return chosen;
}

std::optional<PlayerId> max_gain_scheduler(const Game& game,
                                           const Profile& profile,
                                           const DynamicsConfig& config) {
  check_profile(game, profile);
  return max_gain_scheduler(ProfileState(game, profile), config);
}

namespace {

class MoveSelector {
 public:
  explicit MoveSelector(const DynamicsConfig& config)
      : config_(config), rng_(config.seed) {}

  // Next player to move together with her move, or nothing at an
  // alpha-equilibrium.
  std::optional<std::pair<PlayerId, AlphaMove>> next(const ProfileState& state) {
    const std::size_t n = state.game().num_players();
    switch (config_.scheduler) {
      case Scheduler::kRoundRobin: {
        for (std::size_t offset = 0; offset < n; ++offset) {
          const PlayerId i = (cursor_ + offset) % n;
          if (auto move = probe(state, i)) {
            cursor_ = (i + 1) % n;
            return std::pair{i, *move};
          }
        }
        return std::nullopt;
      }
      case Scheduler::kMaxGain: {
        const auto player = max_gain_scheduler(state, config_);
        if (!player) return std::nullopt;
        return std::pair{*player, *probe(state, *player)};
      }
      case Scheduler::kRandom: {
        std::vector<std::pair<PlayerId, AlphaMove>> candidates;
        for (PlayerId i = 0; i < n; ++i) {
          if (auto move = probe(state, i)) candidates.emplace_back(i, *move);
        }
        if (candidates.empty()) return std::nullopt;
        return candidates[rng_.below(candidates.size())];
      }
    }
    return std::nullopt;
  }

 private:
  std::optional<AlphaMove> probe(const ProfileState& state, PlayerId i) const {
    return find_alpha_move(state, i, config_.alpha, config_.epsilon_guard);
  }

  const DynamicsConfig& config_;
  Xoshiro256 rng_;
  PlayerId cursor_ = 0;
};

}  // namespace

Trace run_dynamics(const Game& game, const Profile& initial,
                   const DynamicsConfig& config) {
  check_profile(game, initial);
  check_config(config);

  ProfileState state(game, initial);
  MoveSelector selector(config);
  Trace trace;
  trace.initial_profile = initial;
  trace.initial_potential = state.potential();
  trace.initial_welfare = state.welfare();

  double potential = trace.initial_potential;
  bool at_equilibrium = false;
  while (trace.total_steps < config.max_steps) {
    const auto next = selector.next(state);
    if (!next) {
      at_equilibrium = true;
      break;
    }
    const auto& [player, move] = *next;
    const StrategyIndex old_strategy = state.profile()[player];
    state.set_choice(player, move.strategy);
    const double after = state.potential();
    const double welfare = state.welfare();
    const std::size_t step = trace.total_steps++;
    if (step < config.full_record_limit) {
      trace.steps.push_back({step, player, old_strategy, move.strategy,
                             move.old_utility, move.new_utility, move.ratio,
                             potential, after, welfare});
    } else if ((step - config.full_record_limit) % config.sample_stride == 0) {
      trace.samples.push_back({step, after, welfare});
    }
    potential = after;
  }
  if (!at_equilibrium) at_equilibrium = !selector.next(state).has_value();

  trace.terminal = at_equilibrium ? Terminal::kEquilibrium
                                  : Terminal::kStepBudgetExhausted;
  trace.final_profile = state.profile();
  trace.final_potential = potential;
  trace.final_welfare = state.welfare();
  return trace;
}

bool potential_strictly_increasing(const Trace& trace) {
  return std::all_of(trace.steps.begin(), trace.steps.end(),
                     [](const TraceStep& s) {
                       return s.potential_after > s.potential_before;
                     });
}

double opt_utility_spread(const Game& game) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    const double u = player_opt_utility(game, i);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  if (hi <= 0.0) return 1.0;
  return lo / hi;
}

ConvergenceRecord measure_convergence(const Game& game, const Profile& initial,
                                      double epsilon, DynamicsConfig config) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  ConvergenceRecord rec;
  rec.players = game.num_players();
  rec.lambda = opt_utility_spread(game);
  rec.epsilon = epsilon;
  rec.alpha = alpha_upper(game.delta) + epsilon;
  config.alpha = rec.alpha;
  const Trace trace = run_dynamics(game, initial, config);
  rec.steps = trace.total_steps;
  rec.converged = trace.terminal == Terminal::kEquilibrium;
  const double n = static_cast<double>(rec.players);
  const double log_n = std::max(1.0, std::log(n));
  rec.envelope = log_n * std::pow(n, 5) / (epsilon * std::max(rec.lambda, 1e-300));
  return rec;
}

double fitted_envelope_constant(std::span<const ConvergenceRecord> records) {
  double c = 0.0;
  for (const auto& r : records) {
    if (r.converged && r.envelope > 0.0) {
      c = std::max(c, static_cast<double>(r.steps) / r.envelope);
    }
  }
  return c;
}

}  // namespace bag
