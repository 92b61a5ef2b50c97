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
#include <sstream>

#include "bag/constructions.hpp"
#include "bag/io.hpp"
#include "bag/random.hpp"
#include "json.hpp"
#include "reference_values.hpp"

namespace {

using bag::Game;
using bag::Strategy;

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("shortest round-trip doubles") {
  CHECK(bag::format_double(0.1) == "0.1");
  CHECK(bag::format_double(1.0) == "1");
  CHECK(bag::format_double(std::numeric_limits<double>::infinity()) == "inf");
  bag::Xoshiro256 rng(1);
  for (int k = 0; k < 10000; ++k) {
    const double v = std::ldexp(rng.uniform01(), static_cast<int>(rng.below(80)) - 40);
    CHECK(std::stod(bag::format_double(v)) == v);
  }
}

TEST_CASE("game files round-trip bit for bit") {
  std::vector<Game> corpus;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    corpus.push_back(bag::random_game(seed, 1 + seed % 6, 1 + seed % 5,
                                      1 + seed % 4, 0.05 + 0.02 * seed, 0.5));
  }
  corpus.push_back(bag::build_b0(0.5, 0.25, 0.5, 1));
  corpus.push_back(bag::build_b0(bag::default_b0_params(0.3)));
  corpus.push_back(bag::build_poa_game(0.5, 1.2, 2, 8));
  for (const Game& g : corpus) {
    const std::string text = bag::game_to_json(g);
    const Game back = bag::game_from_json(text);
    CHECK(back == g);
    CHECK(bag::game_to_json(back) == text);
  }
}

TEST_CASE("game file details") {
  SUBCASE("schema shape") {
    const auto doc =
        nlohmann::json::parse(bag::game_to_json(bag::build_b0(0.5, 0.25, 0.5, 1)));
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["delta"] == 0.5);
    CHECK(doc["resources"].size() == 4);
    CHECK(doc["resources"][2]["id"] == 2);
    CHECK(doc["players"][0]["strategies"][0]["demands"]["1"] == 0.5);
  }
  SUBCASE("missing delta is inferred and zero demands are dropped") {
    const Game g = bag::game_from_json(R"({
      "resources": [{"id": 0, "capacity": 2}],
      "players": [{"strategies": [{"demands": {"0": 1.5}}, {"demands": {"0": 0}}]}]
    })");
    CHECK(g.delta == doctest::Approx(0.75));
    CHECK(g.players[0][1].empty());
  }
  SUBCASE("structural errors") {
    CHECK_THROWS_AS(bag::game_from_json("{"), bag::ParseError);
    CHECK_THROWS_AS(bag::game_from_json("[]"), bag::ParseError);
    CHECK_THROWS_AS(bag::game_from_json(R"({"resources": []})"), bag::ParseError);
    CHECK_THROWS_AS(
        bag::game_from_json(R"({"resources": [{"id": 0, "capacity": "x"}], "players": []})"),
        bag::ParseError);
    CHECK_THROWS_AS(bag::game_from_json(R"({"schema_version": 9, "resources": [], "players": []})"),
                    bag::ParseError);
    CHECK_THROWS_AS(bag::game_from_json(R"({"resources": [{"id": 0, "capacity": 1}],
        "players": [{"strategies": [{"demands": {"r0": 0.5}}]}]})"),
                    bag::ParseError);
  }
  SUBCASE("semantic errors are left to validate") {
    const Game g = bag::game_from_json(R"({"delta": 1, "resources": [{"id": 0, "capacity": 1}],
        "players": [{"strategies": [{"demands": {"3": 0.5}}]}]})");
    CHECK(bag::validate(g).size() == 1);
  }
}

TEST_CASE("exact-cover instances are 1-based on disk") {
  const bag::X3CInstance inst =
      bag::x3c_from_json(R"({"m": 1, "subsets": [[1, 2, 3], [3, 2, 1]]})");
  CHECK(inst.m == 1);
  REQUIRE(inst.subsets.size() == 2);
  CHECK(inst.subsets[0] == std::array<std::size_t, 3>{0, 1, 2});
  CHECK(bag::x3c_from_json(bag::x3c_to_json(inst)).subsets == inst.subsets);
  CHECK_THROWS_AS(bag::x3c_from_json(R"({"m": 1, "subsets": [[0, 1, 2]]})"), bag::ParseError);
  CHECK_THROWS_AS(bag::x3c_from_json(R"({"m": 1, "subsets": [[1, 2, 4]]})"), bag::ParseError);
  CHECK_THROWS_AS(bag::x3c_from_json(R"({"m": 1, "subsets": [[1, 2]]})"), bag::ParseError);
}

TEST_CASE("trace CSV") {
  bag::DynamicsConfig c;
  c.max_steps = 4;
  const Game g = bag::build_b0(0.5, 0.25, 0.5, 1);
  const auto t = bag::run_dynamics(g, {0, 0, 0}, c);
  std::ostringstream out;
  bag::write_trace_csv(out, t);
  const std::string csv = out.str();
  CHECK(csv.rfind(std::string(bag::kTraceCsvHeader) + "\n", 0) == 0);
  CHECK(count_lines(csv) == 5);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  CHECK(line.rfind("0,1,0,1,0.65,0.7,", 0) == 0);
}

TEST_CASE("report JSON") {
  const Game g = bag::build_poa_game(0.5, 1.2, 2, 8);
  const double alphas[] = {1.2};
  const auto rep = bag::analyze(g, alphas);
  const auto doc = nlohmann::json::parse(bag::report_to_json(rep));
  CHECK(doc["profile_count"] == 256);
  CHECK(doc["opt_welfare"].get<double>() == doctest::Approx(1.96));
  CHECK(doc["poa"]["1.2"].get<double>() == doctest::Approx(1.96));
  CHECK(doc["worst_ne_welfare"]["1.2"].get<double>() == doctest::Approx(1.0));
  CHECK(doc["opt_profile"].size() == 10);

  const double low[] = {1.0};
  const auto none = bag::analyze(bag::build_b0(0.5, 0.25, 0.5, 1), low);
  const auto d2 = nlohmann::json::parse(bag::report_to_json(none));
  CHECK(d2["poa"]["1"].is_null());
  CHECK(d2["worst_ne_welfare"]["1"].is_null());

  Game zero;
  zero.delta = 1.0;
  zero.resources = {{0, 1.0}};
  zero.players = {{Strategy{}, Strategy{{0, 0.5}}}, {Strategy{{0, 0.5}}}};
  // Player 0 earns nothing at (0, 0) against a best response of 0.5, so
  // the first profile has an infinite ratio and (1, 0) must still win.
  const auto r3 = bag::analyze(zero, low);
  CHECK(nlohmann::json::parse(bag::report_to_json(r3))["min_alpha"] == 1.0);
}

TEST_CASE("profiles and ranges") {
  CHECK(bag::parse_profile("0,1,2") == bag::Profile{0, 1, 2});
  CHECK(bag::parse_profile("(3, 0)") == bag::Profile{3, 0});
  CHECK_THROWS_AS(bag::parse_profile("0,,1"), bag::ParseError);
  CHECK_THROWS_AS(bag::parse_profile("a"), bag::ParseError);
  CHECK_THROWS_AS(bag::parse_profile(""), bag::ParseError);

  const auto r = bag::parse_range("0.1:1.0:0.1");
  REQUIRE(r.size() == 10);
  for (std::size_t k = 0; k < 10; ++k) CHECK(r[k] == bag::testing::kTableDelta[k]);
  CHECK(bag::parse_range("1:1:0.5").size() == 1);
  CHECK_THROWS_AS(bag::parse_range("0.1:1.0"), bag::ParseError);
  CHECK_THROWS_AS(bag::parse_range("0.1:x:0.1"), bag::ParseError);
  CHECK_THROWS_AS(bag::parse_range("1:0:0.1"), bag::ParseError);
  CHECK_THROWS_AS(bag::parse_range("0:1:0"), bag::ParseError);
}

TEST_CASE("bounds table") {
  CHECK(bag::bounds_row(1.0) == "1.0000 1.4181 1.1547");
  CHECK(bag::bounds_row(0.2) == "0.2000 1.0946 1.0335");
  CHECK(bag::bounds_row(0.25).ends_with(" -"));
  const std::string csv = bag::bounds_csv({0.5, 1.0});
  CHECK(csv.rfind("delta,w,alpha_upper,alpha_lower\n", 0) == 0);
  CHECK(count_lines(csv) == 3);
}
