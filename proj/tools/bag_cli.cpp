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

// Command-line front end: bounds, simulate, analyze, generate, verify.
//
// Exit codes: 0 success or equilibrium, 1 input error, 2 non-convergence (or
// "not an equilibrium" for verify), 3 enumeration budget exceeded.

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bag/analysis.hpp"
#include "bag/bounds.hpp"
#include "bag/constructions.hpp"
#include "bag/core.hpp"
#include "bag/dynamics.hpp"
#include "bag/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNoConvergence = 2;
constexpr int kExitBudget = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bag::Game load_valid_game(const std::string& path) {
  bag::Game game = bag::read_game_file(path);
  const auto violations = bag::validate(game);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << path << ": " << violations.size() << " violation(s)";
    for (const auto& v : violations) msg << "\n  " << v.message;
    throw InputError(msg.str());
  }
  return game;
}

std::uint64_t enumeration_budget() {
  const char* env = std::getenv("BAG_ENUM_BUDGET");
  if (env == nullptr || *env == '\0') return bag::kDefaultEnumerationBudget;
  std::uint64_t v = 0;
  const std::string_view s(env);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InputError("BAG_ENUM_BUDGET must be a non-negative integer");
  }
  return v;
}

// Writes `text` to `path`, or stdout when path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    bag::write_text_file(path, text);
  }
}

struct BoundsArgs {
  std::vector<double> deltas;
  std::string table;
  bool csv = false;
};

int run_bounds(const BoundsArgs& a) {
  std::vector<double> deltas = a.deltas;
  if (!a.table.empty()) {
    const auto range = bag::parse_range(a.table);
    deltas.insert(deltas.end(), range.begin(), range.end());
  }
  if (deltas.empty()) throw InputError("bounds needs --delta or --table");
  for (double d : deltas) {
    if (!(d > 0.0)) throw InputError("delta must be positive");
  }
  if (a.csv) {
    std::cout << bag::bounds_csv(deltas);
    return kExitOk;
  }
  if (deltas.size() > 1 || !a.table.empty()) {
    std::cout << "delta alpha_upper alpha_lower\n";
  }
  for (double d : deltas) std::cout << bag::bounds_row(d) << '\n';
  return kExitOk;
}

struct SimulateArgs {
  std::string game;
  double alpha = 1.0;
  std::string scheduler = "round-robin";
  std::uint64_t seed = 0;
  std::size_t max_steps = 100000;
  double guard = bag::kDefaultGuard;
  std::string trace;
  std::string initial;
};

int run_simulate(const SimulateArgs& a) {
  const bag::Game game = load_valid_game(a.game);
  bag::DynamicsConfig config;
  config.alpha = a.alpha;
  const auto scheduler = bag::parse_scheduler(a.scheduler);
  if (!scheduler) throw InputError("unknown scheduler '" + a.scheduler + "'");
  config.scheduler = *scheduler;
  config.seed = a.seed;
  config.max_steps = a.max_steps;
  config.epsilon_guard = a.guard;
  bag::check_config(config);
  const bag::Profile initial =
      a.initial.empty() ? bag::Profile::first(game) : bag::parse_profile(a.initial);
  bag::check_profile(game, initial);

  const bag::Trace trace = bag::run_dynamics(game, initial, config);
  if (!a.trace.empty()) {
    std::ofstream out(a.trace, std::ios::binary);
    if (!out) throw InputError("cannot write " + a.trace);
    bag::write_trace_csv(out, trace);
  }
  std::cout << "terminal: " << bag::to_string(trace.terminal) << '\n'
            << "steps: " << trace.total_steps << '\n'
            << "final_profile: " << bag::to_string(trace.final_profile) << '\n'
            << "final_welfare: " << bag::format_double(trace.final_welfare)
            << '\n'
            << "final_potential: " << bag::format_double(trace.final_potential)
            << '\n';
  return trace.terminal == bag::Terminal::kEquilibrium ? kExitOk
                                                      : kExitNoConvergence;
}

struct AnalyzeArgs {
  std::string game;
  std::vector<double> alphas;
  std::string out;
  unsigned threads = 0;
};

int run_analyze(const AnalyzeArgs& a) {
  const bag::Game game = load_valid_game(a.game);
  for (double alpha : a.alphas) {
    if (!(alpha >= 1.0)) throw InputError("alpha must be at least 1");
  }
  bag::EnumerationOptions options;
  options.budget = enumeration_budget();
  options.threads = a.threads;
  const bag::AnalysisReport report = bag::analyze(game, a.alphas, options);
  emit(a.out, bag::report_to_json(report));
  return kExitOk;
}

struct GenerateArgs {
  std::string out;
  // b0
  double delta = 0.5;
  std::optional<double> gamma;
  std::optional<double> sigma;
  std::optional<std::size_t> n_aux;
  // x3c, poa
  std::string instance;
  double alpha = 1.0;
  std::size_t n1 = 1;
  std::size_t n2 = 1;
  // random
  std::uint64_t seed = 0;
  std::size_t players = 4;
  std::size_t resources = 3;
  std::size_t strategies = 2;
  double density = 0.5;
};

int finish_generate(const GenerateArgs& a, const bag::Game& game,
                    const std::string& echo) {
  const auto violations = bag::validate(game);
  if (!violations.empty()) {
    throw InputError("generated game fails validation: " +
                     violations.front().message);
  }
  emit(a.out, bag::game_to_json(game));
  std::ostream& log = a.out.empty() ? std::cerr : std::cout;
  log << echo << " players=" << game.num_players()
      << " resources=" << game.num_resources() << '\n';
  return kExitOk;
}

int run_generate_b0(const GenerateArgs& a) {
  bag::B0Params p = bag::default_b0_params(a.delta, a.gamma);
  if (a.sigma) p.sigma = *a.sigma;
  if (a.n_aux) p.n_aux = *a.n_aux;
  const bag::Game game = bag::build_b0(p);
  const bag::B0Utilities u = bag::b0_utilities(p);
  return finish_generate(
      a, game,
      "family=b0 delta=" + bag::format_double(p.delta) +
          " gamma=" + bag::format_double(p.gamma) +
          " sigma=" + bag::format_double(p.sigma) +
          " n_aux=" + std::to_string(p.n_aux) + " u=" + bag::format_double(u.u) +
          " u_prime=" + bag::format_double(u.u_prime));
}

int run_generate_x3c(const GenerateArgs& a) {
  if (a.instance.empty()) throw InputError("x3c needs --instance");
  const bag::X3CInstance inst =
      bag::x3c_from_json(bag::read_text_file(a.instance));
  const bag::X3CGame xg = bag::build_x3c_game(inst, a.delta, a.alpha, a.gamma);
  return finish_generate(
      a, xg.game,
      "family=x3c m=" + std::to_string(inst.m) +
          " q=" + std::to_string(inst.subsets.size()) +
          " delta=" + bag::format_double(a.delta) +
          " alpha=" + bag::format_double(a.alpha) +
          " gamma=" + bag::format_double(xg.layout.gadget.gamma) +
          " extra_capacity=" + bag::format_double(xg.layout.extra_capacity));
}

int run_generate_poa(const GenerateArgs& a) {
  const bag::Game game = bag::build_poa_game(a.delta, a.alpha, a.n1, a.n2);
  return finish_generate(a, game,
                         "family=poa delta=" + bag::format_double(a.delta) +
                             " alpha=" + bag::format_double(a.alpha) +
                             " n1=" + std::to_string(a.n1) +
                             " n2=" + std::to_string(a.n2));
}

int run_generate_random(const GenerateArgs& a) {
  const bag::Game game = bag::random_game(a.seed, a.players, a.resources,
                                          a.strategies, a.delta, a.density);
  return finish_generate(
      a, game,
      "family=random seed=" + std::to_string(a.seed) +
          " strategies=" + std::to_string(a.strategies) +
          " delta=" + bag::format_double(a.delta) +
          " density=" + bag::format_double(a.density));
}

struct VerifyArgs {
  std::string game;
  std::string profile;
  double alpha = 1.0;
};

int run_verify(const VerifyArgs& a) {
  const bag::Game game = load_valid_game(a.game);
  const bag::Profile profile = bag::parse_profile(a.profile);
  bag::check_profile(game, profile);
  if (!(a.alpha >= 1.0)) throw InputError("alpha must be at least 1");
  const bag::NashCheck check = bag::is_alpha_ne(game, profile, a.alpha);
  std::cout << "profile: " << bag::to_string(profile) << '\n'
            << "alpha: " << bag::format_double(a.alpha) << '\n'
            << "min_alpha: "
            << bag::format_double(bag::profile_min_alpha(game, profile)) << '\n';
  if (check) {
    std::cout << "alpha-ne: yes\n";
    return kExitOk;
  }
  const auto& w = *check.witness;
  std::cout << "alpha-ne: no\n"
            << "witness: player=" << w.player << " strategy=" << w.strategy
            << " ratio=" << bag::format_double(w.ratio) << '\n';
  return kExitNoConvergence;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bag: delta-share bandwidth allocation games"};
  app.require_subcommand(1);

  BoundsArgs bounds;
  auto* cmd_bounds = app.add_subcommand(
      "bounds", "Print the upper and lower existence thresholds");
  cmd_bounds->add_option("--delta", bounds.deltas, "Share bound delta (repeatable)");
  cmd_bounds->add_option("--table", bounds.table, "Range lo:hi:step of delta values");
  cmd_bounds->add_flag("--csv", bounds.csv,
                       "Emit delta,w,alpha_upper,alpha_lower as CSV at full precision");

  SimulateArgs sim;
  auto* cmd_sim = app.add_subcommand("simulate", "Run alpha-improvement dynamics");
  cmd_sim->add_option("game", sim.game, "Game file (JSON)")->required();
  cmd_sim->add_option("--alpha", sim.alpha, "Approximation factor")->capture_default_str();
  cmd_sim->add_option("--scheduler", sim.scheduler,
                      "round-robin, max-gain or random")
      ->capture_default_str();
  cmd_sim->add_option("--seed", sim.seed, "Seed for the random scheduler")
      ->capture_default_str();
  cmd_sim->add_option("--max-steps", sim.max_steps, "Step budget")->capture_default_str();
  cmd_sim->add_option("--guard", sim.guard, "Relative slack on the alpha-move test")
      ->capture_default_str();
  cmd_sim->add_option("--trace", sim.trace, "Write the move trace as CSV");
  cmd_sim->add_option("--initial", sim.initial,
                      "Initial profile, e.g. 0,1,0 (default all zeros)");

  AnalyzeArgs an;
  auto* cmd_an = app.add_subcommand(
      "analyze", "Exhaustive optimum, min alpha and alpha-PoA (BAG_ENUM_BUDGET caps profiles, default 1e8)");
  cmd_an->add_option("game", an.game, "Game file (JSON)")->required();
  cmd_an->add_option("--alpha", an.alphas, "Alpha for the PoA columns (repeatable)");
  cmd_an->add_option("--out", an.out, "Report path (default stdout)");
  cmd_an->add_option("--threads", an.threads, "Worker threads, 0 = hardware")
      ->capture_default_str();

  GenerateArgs gen;
  auto* cmd_gen = app.add_subcommand("generate", "Write a game file");
  cmd_gen->require_subcommand(1);
  cmd_gen->add_option("--out", gen.out, "Output path (default stdout)");
  auto* gen_b0 = cmd_gen->add_subcommand("b0", "Gadget without a pure equilibrium");
  gen_b0->add_option("--delta", gen.delta, "Share bound")->capture_default_str();
  gen_b0->add_option("--gamma", gen.gamma, "Small demand (default: the worst-case gamma)");
  gen_b0->add_option("--sigma", gen.sigma, "Auxiliary demand");
  gen_b0->add_option("--n-aux", gen.n_aux, "Auxiliary player count");
  gen_b0->add_option("--out", gen.out, "Output path (default stdout)");
  auto* gen_x3c = cmd_gen->add_subcommand("x3c", "Exact-cover reduction");
  gen_x3c->add_option("--instance", gen.instance, "Instance JSON {m, subsets}")->required();
  gen_x3c->add_option("--delta", gen.delta, "Share bound")->capture_default_str();
  gen_x3c->add_option("--alpha", gen.alpha, "Target alpha")->capture_default_str();
  gen_x3c->add_option("--gamma", gen.gamma, "Gadget gamma");
  gen_x3c->add_option("--out", gen.out, "Output path (default stdout)");
  auto* gen_poa = cmd_gen->add_subcommand("poa", "Price-of-anarchy family");
  gen_poa->add_option("--delta", gen.delta, "Share bound")->capture_default_str();
  gen_poa->add_option("--alpha", gen.alpha, "Target alpha")->capture_default_str();
  gen_poa->add_option("--n1", gen.n1, "Fixed players")->capture_default_str();
  gen_poa->add_option("--n2", gen.n2, "Flexible players")->capture_default_str();
  gen_poa->add_option("--out", gen.out, "Output path (default stdout)");
  auto* gen_random = cmd_gen->add_subcommand("random", "Seeded random game");
  gen_random->add_option("--seed", gen.seed, "Seed")->capture_default_str();
  gen_random->add_option("--players", gen.players, "Players")->capture_default_str();
  gen_random->add_option("--resources", gen.resources, "Resources")->capture_default_str();
  gen_random->add_option("--strategies", gen.strategies, "Strategies per player")
      ->capture_default_str();
  gen_random->add_option("--delta", gen.delta, "Share bound")->capture_default_str();
  gen_random->add_option("--density", gen.density, "Resource inclusion probability")
      ->capture_default_str();
  gen_random->add_option("--out", gen.out, "Output path (default stdout)");

  VerifyArgs ver;
  auto* cmd_ver = app.add_subcommand("verify", "Check whether a profile is an alpha-NE");
  cmd_ver->add_option("game", ver.game, "Game file (JSON)")->required();
  cmd_ver->add_option("--profile", ver.profile, "Profile, e.g. 0,1,0")->required();
  cmd_ver->add_option("--alpha", ver.alpha, "Approximation factor")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*cmd_bounds) return run_bounds(bounds);
    if (*cmd_sim) return run_simulate(sim);
    if (*cmd_an) return run_analyze(an);
    if (*cmd_ver) return run_verify(ver);
    if (*gen_b0) return run_generate_b0(gen);
    if (*gen_x3c) return run_generate_x3c(gen);
    if (*gen_poa) return run_generate_poa(gen);
    if (*gen_random) return run_generate_random(gen);
  } catch (const bag::CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
