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

#include "bag/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace bag {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Below this many profiles a single worker is used.
constexpr std::uint64_t kParallelThreshold = 1 << 15;

struct PlayerEval {
  double utility;
  double best;
  bool best_is_current;
};

void evaluate_players(const ProfileState& state, std::vector<PlayerEval>& out) {
  const std::size_t n = state.game().num_players();
  out.resize(n);
  for (PlayerId i = 0; i < n; ++i) {
    const BestResponse br = best_response(state, i);
    out[i] = {state.utility(i), br.utility,
              br.strategy == state.profile()[i]};
  }
}

bool holds_alpha_move(const PlayerEval& e, double alpha, double guard) {
  return !e.best_is_current &&
         is_alpha_improvement(e.best, e.utility, alpha, guard);
}

double player_ratio(const PlayerEval& e) {
  if (e.best_is_current) return 1.0;
  if (e.utility <= kAbsTol) return e.best > kAbsTol ? kInf : 1.0;
  return std::max(1.0, e.best / e.utility);
}

double min_alpha_of(const std::vector<PlayerEval>& evals) {
  double worst = 1.0;
  for (const auto& e : evals) worst = std::max(worst, player_ratio(e));
  return worst;
}

double welfare_of(const std::vector<PlayerEval>& evals) {
  double total = 0.0;
  for (const auto& e : evals) total += e.utility;
  return total;
}

bool definitely_less(double a, double b) { return definitely_greater(b, a); }

void check_budget(const Game& game, std::uint64_t budget) {
  const std::uint64_t count = profile_count(game);
  if (count > budget) {
    throw CapacityError("profile space of " +
                        (count == std::numeric_limits<std::uint64_t>::max()
                             ? std::string("more than 2^64")
                             : std::to_string(count)) +
                        " profiles exceeds the enumeration budget of " +
                        std::to_string(budget));
  }
}

// Advances to the next profile in lexicographic order. Returns false after
// the last one.
bool advance(const Game& game, Profile& p) {
  for (std::size_t i = game.num_players(); i-- > 0;) {
    if (++p[i] < game.players[i].size()) return true;
    p[i] = 0;
  }
  return false;
}

// Visits every profile with `visit(acc, state, evals, index)`, one
// accumulator per contiguous index range, and merges accumulators in range
// order with `merge(into, from)`.
template <class Acc, class Visit, class Merge>
Acc reduce_profiles(const Game& game, const EnumerationOptions& options,
                    const Acc& init, Visit visit, Merge merge) {
  for (const auto& strategies : game.players) {
    if (strategies.empty()) {
      throw std::invalid_argument("every player needs at least one strategy");
    }
  }
  check_budget(game, options.budget);
  const std::uint64_t total = profile_count(game);
  unsigned workers = options.threads != 0 ? options.threads
                                          : std::thread::hardware_concurrency();
  workers = std::max(1u, workers);
  if (total < kParallelThreshold) workers = 1;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, total));

  std::vector<Acc> partial(workers, init);
  auto run_range = [&](unsigned w) {
    const std::uint64_t begin = total * w / workers;
    const std::uint64_t end = total * (w + 1) / workers;
    Profile p = profile_at(game, begin);
    ProfileState state(game, p);
    std::vector<PlayerEval> evals;
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      evaluate_players(state, evals);
      visit(partial[w], state, evals, idx);
      if (idx + 1 < end) {
        advance(game, p);
        state.reset(p);
      }
    }
  };

  if (workers == 1) {
    run_range(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_range, w);
    for (auto& t : pool) t.join();
  }

  Acc result = std::move(partial[0]);
  for (unsigned w = 1; w < workers; ++w) merge(result, partial[w]);
  return result;
}

struct Best {
  bool set = false;
  double value = 0.0;
  std::uint64_t index = 0;
};

// Keeps the earliest profile unless a later one is better beyond tolerance.
template <class Better>
void offer(Best& best, double value, std::uint64_t index, Better better) {
  if (!best.set || better(value, best.value)) best = {true, value, index};
}

template <class Better>
void merge_best(Best& into, const Best& from, Better better) {
  if (from.set && (!into.set || better(from.value, into.value))) into = from;
}

auto greater = [](double a, double b) { return definitely_greater(a, b); };
auto less = [](double a, double b) { return definitely_less(a, b); };

}  // namespace

std::uint64_t profile_count(const Game& game) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t count = 1;
  for (const auto& strategies : game.players) {
    const std::uint64_t k = strategies.size();
    if (k == 0) return 0;
    if (count > kMax / k) return kMax;
    count *= k;
  }
  return count;
}

Profile profile_at(const Game& game, std::uint64_t index) {
  Profile p = Profile::first(game);
  for (std::size_t i = game.num_players(); i-- > 0;) {
    const std::uint64_t k = game.players[i].size();
    p[i] = static_cast<StrategyIndex>(index % k);
    index /= k;
  }
  return p;
}

NashCheck is_alpha_ne(const Game& game, const Profile& profile, double alpha,
                      double guard) {
  if (!(alpha >= 1.0)) throw std::invalid_argument("alpha must be at least 1");
  check_profile(game, profile);
  ProfileState state(game, profile);
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    if (auto move = find_alpha_move(state, i, alpha, guard)) {
      return {false, AlphaWitness{i, move->strategy, move->ratio}};
    }
  }
  return {};
}

double profile_min_alpha(const Game& game, const Profile& profile) {
  check_profile(game, profile);
  ProfileState state(game, profile);
  std::vector<PlayerEval> evals;
  evaluate_players(state, evals);
  return min_alpha_of(evals);
}

MinAlphaResult brute_force_min_alpha(const Game& game,
                                     const EnumerationOptions& options) {
  const Best best = reduce_profiles(
      game, options, Best{},
      [](Best& acc, const ProfileState&, const std::vector<PlayerEval>& evals,
         std::uint64_t idx) { offer(acc, min_alpha_of(evals), idx, less); },
      [](Best& into, const Best& from) { merge_best(into, from, less); });
  return {best.value, profile_at(game, best.index)};
}

OptResult brute_force_opt(const Game& game, const EnumerationOptions& options) {
  const Best best = reduce_profiles(
      game, options, Best{},
      [](Best& acc, const ProfileState& state, const std::vector<PlayerEval>&,
         std::uint64_t idx) { offer(acc, state.welfare(), idx, greater); },
      [](Best& into, const Best& from) { merge_best(into, from, greater); });
  return {profile_at(game, best.index), best.value};
}

const AlphaSummary* AnalysisReport::find(double alpha) const {
  for (const auto& s : per_alpha) {
    if (s.alpha == alpha) return &s;
  }
  return nullptr;
}

AnalysisReport analyze(const Game& game, std::span<const double> alphas,
                       const EnumerationOptions& options) {
  for (double a : alphas) {
    if (!(a >= 1.0)) throw std::invalid_argument("alpha must be at least 1");
  }
  struct Acc {
    Best opt;
    Best min_alpha;
    std::vector<Best> worst_ne;
  };
  const double guard = options.guard;
  Acc init;
  init.worst_ne.resize(alphas.size());
  const Acc acc = reduce_profiles(
      game, options, init,
      [&](Acc& a, const ProfileState&, const std::vector<PlayerEval>& evals,
          std::uint64_t idx) {
        const double welfare = welfare_of(evals);
        offer(a.opt, welfare, idx, greater);
        offer(a.min_alpha, min_alpha_of(evals), idx, less);
        for (std::size_t k = 0; k < alphas.size(); ++k) {
          const bool equilibrium =
              std::none_of(evals.begin(), evals.end(), [&](const PlayerEval& e) {
                return holds_alpha_move(e, alphas[k], guard);
              });
          if (equilibrium) offer(a.worst_ne[k], welfare, idx, less);
        }
      },
      [](Acc& into, const Acc& from) {
        merge_best(into.opt, from.opt, greater);
        merge_best(into.min_alpha, from.min_alpha, less);
        for (std::size_t k = 0; k < into.worst_ne.size(); ++k) {
          merge_best(into.worst_ne[k], from.worst_ne[k], less);
        }
      });

  AnalysisReport report;
  report.profile_count = profile_count(game);
  report.opt_profile = profile_at(game, acc.opt.index);
  report.opt_welfare = acc.opt.value;
  report.min_alpha = acc.min_alpha.value;
  report.min_alpha_profile = profile_at(game, acc.min_alpha.index);
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    AlphaSummary s;
    s.alpha = alphas[k];
    if (acc.worst_ne[k].set) {
      const double worst = acc.worst_ne[k].value;
      s.worst_ne_welfare = worst;
      s.worst_ne_profile = profile_at(game, acc.worst_ne[k].index);
      if (worst > 0.0) {
        s.poa = report.opt_welfare / worst;
      } else {
        s.poa = report.opt_welfare > 0.0 ? kInf : 1.0;
      }
    }
    report.per_alpha.push_back(std::move(s));
  }
  return report;
}

PoaResult price_of_anarchy(const Game& game, double alpha,
                           const EnumerationOptions& options) {
  const double alphas[] = {alpha};
  AnalysisReport report = analyze(game, alphas, options);
  PoaResult out;
  out.opt_welfare = report.opt_welfare;
  out.min_alpha = report.min_alpha;
  out.poa = report.per_alpha[0].poa;
  out.worst_ne_welfare = report.per_alpha[0].worst_ne_welfare;
  out.worst_ne_profile = std::move(report.per_alpha[0].worst_ne_profile);
  return out;
}

NicenessResult niceness_check(const Game& game, const Profile& profile,
                              double lambda, double mu, double opt_welfare) {
  check_profile(game, profile);
  ProfileState state(game, profile);
  NicenessResult out;
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    out.best_response_sum += best_response(state, i).utility;
  }
  const double rhs = lambda * opt_welfare - mu * state.welfare();
  out.slack = out.best_response_sum - rhs;
  out.holds = approx_leq(rhs, out.best_response_sum);
  return out;
}

NicenessResult niceness_check(const Game& game, const Profile& profile,
                              double lambda, double mu,
                              const EnumerationOptions& options) {
  return niceness_check(game, profile, lambda, mu,
                        brute_force_opt(game, options).welfare);
}

namespace {

double pruning_threshold(const Game& game, PlayerId i) {
  const double n_delta = static_cast<double>(game.num_players()) * game.delta;
  return player_opt_utility(game, i) / std::max(n_delta, 1.0);
}

bool keeps(const Game& game, const Strategy& s, double threshold) {
  return approx_leq(threshold, standalone_utility(game, s));
}

}  // namespace

Game prune_dominated(const Game& game) {
  Game out = game;
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    const double threshold = pruning_threshold(game, i);
    auto& strategies = out.players[i];
    std::erase_if(strategies, [&](const Strategy& s) {
      return !keeps(game, s, threshold);
    });
  }
  return out;
}

bool is_pruned(const Game& game) {
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    const double threshold = pruning_threshold(game, i);
    for (const auto& s : game.players[i]) {
      if (!keeps(game, s, threshold)) return false;
    }
  }
  return true;
}

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPassed:
      return "passed";
    case CheckStatus::kViolated:
      return "violated";
    case CheckStatus::kSkipped:
      return "skipped";
  }
  return "unknown";
}

LemmaReport lemma_bounds_check(const Game& game, const Profile& profile) {
  check_profile(game, profile);
  LemmaReport report;
  const std::size_t n = game.num_players();
  const double n_delta = static_cast<double>(n) * game.delta;
  for (PlayerId i = 0; i < n; ++i) {
    report.opt_utility.push_back(player_opt_utility(game, i));
  }
  if (n_delta < 1.0) {
    report.reason = "n * delta < 1";
    return report;
  }

  ProfileState state(game, profile);
  const double welfare = state.welfare();
  const double phi = state.potential();

  report.sandwich_lower_margin = phi - welfare;
  report.sandwich_upper_margin = (1.0 + std::log(n_delta)) * welfare - phi;
  const bool sandwich_ok =
      approx_leq(welfare, phi) &&
      approx_leq(phi, (1.0 + std::log(n_delta)) * welfare);
  report.sandwich = sandwich_ok ? CheckStatus::kPassed : CheckStatus::kViolated;

  if (!is_pruned(game)) {
    report.reason = "strategy sets are not pruned; utility floor skipped";
    return report;
  }
  report.utility_floor_margin = kInf;
  bool floor_ok = true;
  for (PlayerId i = 0; i < n; ++i) {
    const double floor = report.opt_utility[i] / (n_delta * n_delta);
    const double u = state.utility(i);
    report.utility_floor_margin = std::min(report.utility_floor_margin, u - floor);
    floor_ok = floor_ok && approx_leq(floor, u);
  }
  report.utility_floor = floor_ok ? CheckStatus::kPassed : CheckStatus::kViolated;
  return report;
}

}  // namespace bag
