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

#ifndef BAG_ANALYSIS_HPP_
#define BAG_ANALYSIS_HPP_

// Brute-force oracles over the full profile space.
//
// Profiles are enumerated in lexicographic order of their choice vectors
// (player 0 most significant). The space is split into contiguous index
// ranges, one per worker, and partial results are merged in range order, so
// every tie resolves to the lexicographically smallest profile.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bag/core.hpp"
#include "bag/dynamics.hpp"

namespace bag {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 100000000;

struct EnumerationOptions {
  std::uint64_t budget = kDefaultEnumerationBudget;
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  double guard = kDefaultGuard;
};

// Product of strategy-set sizes, saturating at UINT64_MAX.
std::uint64_t profile_count(const Game& game);

// The profile at position `index` in lexicographic order.
Profile profile_at(const Game& game, std::uint64_t index);

struct AlphaWitness {
  PlayerId player = 0;
  StrategyIndex strategy = 0;
  double ratio = 1.0;
};

struct NashCheck {
  bool is_equilibrium = true;
  std::optional<AlphaWitness> witness;

  explicit operator bool() const { return is_equilibrium; }
};

// Requires alpha >= 1. The witness is the lowest-index player holding an
// alpha-move, with her best response.
NashCheck is_alpha_ne(const Game& game, const Profile& profile, double alpha,
                      double guard = kDefaultGuard);

// Max over players of best-response utility / current utility, floored at 1
// and +inf for a player earning nothing who could earn something.
double profile_min_alpha(const Game& game, const Profile& profile);

struct MinAlphaResult {
  double min_alpha = 1.0;
  Profile profile;
};

// Smallest alpha for which some profile is an alpha-NE. Throws CapacityError
// above the enumeration budget.
MinAlphaResult brute_force_min_alpha(const Game& game,
                                     const EnumerationOptions& options = {});

struct OptResult {
  Profile profile;
  double welfare = 0.0;
};

OptResult brute_force_opt(const Game& game,
                          const EnumerationOptions& options = {});

struct AlphaSummary {
  double alpha = 1.0;
  std::optional<double> worst_ne_welfare;
  std::optional<Profile> worst_ne_profile;
  // opt welfare / worst alpha-NE welfare; empty when no alpha-NE exists.
  std::optional<double> poa;
};

struct AnalysisReport {
  Profile opt_profile;
  double opt_welfare = 0.0;
  double min_alpha = 1.0;
  Profile min_alpha_profile;
  std::vector<AlphaSummary> per_alpha;
  std::uint64_t profile_count = 0;

  const AlphaSummary* find(double alpha) const;
};

// One enumeration pass computing everything above for the given alphas.
AnalysisReport analyze(const Game& game, std::span<const double> alphas,
                       const EnumerationOptions& options = {});

struct PoaResult {
  std::optional<double> poa;
  std::optional<double> worst_ne_welfare;
  std::optional<Profile> worst_ne_profile;
  double opt_welfare = 0.0;
  // Certifies nonexistence when poa is empty: alpha < min_alpha.
  double min_alpha = 1.0;

  bool defined() const { return poa.has_value(); }
};

PoaResult price_of_anarchy(const Game& game, double alpha,
                           const EnumerationOptions& options = {});

struct NicenessResult {
  bool holds = false;
  // sum_i u_i(s_{-i}, s_i^b) - (lambda u(opt) - mu u(s)).
  double slack = 0.0;
  double best_response_sum = 0.0;
};

NicenessResult niceness_check(const Game& game, const Profile& profile,
                              double lambda, double mu, double opt_welfare);
NicenessResult niceness_check(const Game& game, const Profile& profile,
                              double lambda, double mu,
                              const EnumerationOptions& options = {});

// Drops strategies whose capacity-clipped demand sum falls below
// u_i^opt / (n delta). Such a strategy always earns less than the player's
// best standalone strategy, whatever the others do.
Game prune_dominated(const Game& game);

// True when no strategy would be removed by prune_dominated.
bool is_pruned(const Game& game);

enum class CheckStatus { kPassed, kViolated, kSkipped };

std::string_view to_string(CheckStatus status);

struct LemmaReport {
  CheckStatus utility_floor = CheckStatus::kSkipped;
  CheckStatus sandwich = CheckStatus::kSkipped;
  std::string reason;
  std::vector<double> opt_utility;
  // min_i u_i(s) - u_i^opt / (n delta)^2.
  double utility_floor_margin = 0.0;
  // phi(s) - u(s).
  double sandwich_lower_margin = 0.0;
  // (1 + ln(n delta)) u(s) - phi(s).
  double sandwich_upper_margin = 0.0;
};

// Checks u_i(s) >= u_i^opt / (n delta)^2 (pruned games only) and
// u(s) <= phi(s) <= (1 + ln(n delta)) u(s). Both need n delta >= 1.
LemmaReport lemma_bounds_check(const Game& game, const Profile& profile);

}  // namespace bag

#endif  // BAG_ANALYSIS_HPP_
