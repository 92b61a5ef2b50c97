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

#include "bag/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "bag/bounds.hpp"
#include "json.hpp"

namespace bag {
namespace {

using Json = nlohmann::ordered_json;

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(where + ": missing \"" + key + "\"");
  }
  return obj.at(key);
}

double number(const Json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + ": expected a number");
  return v.get<double>();
}

std::size_t index(const Json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ParseError(where + ": expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

// Rejects trailing garbage, accepts a leading '+'.
double parse_number(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", round_half_away(v, 4));
  return buf;
}

}  // namespace

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string game_to_json(const Game& game) {
  Json doc;
  doc["schema_version"] = kGameSchemaVersion;
  doc["delta"] = game.delta;
  Json resources = Json::array();
  for (const auto& r : game.resources) {
    resources.push_back({{"id", r.id}, {"capacity", r.capacity}});
  }
  doc["resources"] = std::move(resources);
  Json players = Json::array();
  for (const auto& strategies : game.players) {
    Json list = Json::array();
    for (const auto& s : strategies) {
      Json demands = Json::object();
      for (const auto& e : s.entries()) {
        demands[std::to_string(e.resource)] = e.demand;
      }
      list.push_back({{"demands", std::move(demands)}});
    }
    players.push_back({{"strategies", std::move(list)}});
  }
  doc["players"] = std::move(players);
  return doc.dump(2) + "\n";
}

Game game_from_json(std::string_view text) {
  const Json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("game file must be a JSON object");
  if (doc.contains("schema_version")) {
    const std::size_t version = index(doc["schema_version"], "schema_version");
    if (version != kGameSchemaVersion) {
      throw ParseError("unsupported schema_version " + std::to_string(version));
    }
  }
  Game g;
  const Json& resources = field(doc, "resources", "game");
  if (!resources.is_array()) throw ParseError("resources must be an array");
  for (std::size_t k = 0; k < resources.size(); ++k) {
    const std::string where = "resources[" + std::to_string(k) + "]";
    g.resources.push_back({index(field(resources[k], "id", where), where + ".id"),
                           number(field(resources[k], "capacity", where),
                                  where + ".capacity")});
  }
  const Json& players = field(doc, "players", "game");
  if (!players.is_array()) throw ParseError("players must be an array");
  for (std::size_t i = 0; i < players.size(); ++i) {
    const std::string pw = "players[" + std::to_string(i) + "]";
    const Json& list = field(players[i], "strategies", pw);
    if (!list.is_array()) throw ParseError(pw + ".strategies must be an array");
    std::vector<Strategy> strategies;
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string sw = pw + ".strategies[" + std::to_string(k) + "]";
      const Json& demands = field(list[k], "demands", sw);
      if (!demands.is_object()) throw ParseError(sw + ".demands must be an object");
      Strategy s;
      for (const auto& [key, value] : demands.items()) {
        std::size_t r = 0;
        const auto [ptr, ec] =
            std::from_chars(key.data(), key.data() + key.size(), r);
        if (ec != std::errc() || ptr != key.data() + key.size()) {
          throw ParseError(sw + ": bad resource id '" + key + "'");
        }
        s.set(r, number(value, sw + ".demands." + key));
      }
      strategies.push_back(std::move(s));
    }
    g.players.push_back(std::move(strategies));
  }
  if (doc.contains("delta") && !doc["delta"].is_null()) {
    g.delta = number(doc["delta"], "delta");
  } else {
    g.delta = infer_delta(g);
  }
  return g;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_game_file(const std::filesystem::path& path, const Game& game) {
  write_text_file(path, game_to_json(game));
}

Game read_game_file(const std::filesystem::path& path) {
  return game_from_json(read_text_file(path));
}

std::string x3c_to_json(const X3CInstance& instance) {
  Json doc;
  doc["m"] = instance.m;
  Json subsets = Json::array();
  for (const auto& w : instance.subsets) {
    subsets.push_back({w[0] + 1, w[1] + 1, w[2] + 1});
  }
  doc["subsets"] = std::move(subsets);
  return doc.dump() + "\n";
}

X3CInstance x3c_from_json(std::string_view text) {
  const Json doc = parse_json(text);
  X3CInstance inst;
  inst.m = index(field(doc, "m", "instance"), "m");
  const Json& subsets = field(doc, "subsets", "instance");
  if (!subsets.is_array()) throw ParseError("subsets must be an array");
  for (std::size_t k = 0; k < subsets.size(); ++k) {
    const std::string where = "subsets[" + std::to_string(k) + "]";
    if (!subsets[k].is_array() || subsets[k].size() != 3) {
      throw ParseError(where + " must hold exactly 3 elements");
    }
    std::array<std::size_t, 3> w{};
    for (std::size_t j = 0; j < 3; ++j) {
      const std::size_t e = index(subsets[k][j], where);
      if (e == 0) throw ParseError(where + ": elements are 1-based");
      w[j] = e - 1;
    }
    inst.subsets.push_back(w);
  }
  try {
    check_instance(inst);
  } catch (const ConstructionError& e) {
    throw ParseError(e.what());
  }
  return inst;
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  out << kTraceCsvHeader << '\n';
  for (const auto& s : trace.steps) {
    out << s.step << ',' << s.player << ',' << s.old_strategy << ','
        << s.new_strategy << ',' << format_double(s.old_utility) << ','
        << format_double(s.new_utility) << ',' << format_double(s.ratio) << ','
        << format_double(s.potential_before) << ','
        << format_double(s.potential_after) << ',' << format_double(s.welfare)
        << '\n';
  }
}

std::string report_to_json(const AnalysisReport& report) {
  auto real = [](double v) -> Json {
    if (std::isfinite(v)) return v;
    return format_double(v);
  };
  auto profile = [](const Profile& p) { return Json(p.choices); };
  Json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["profile_count"] = report.profile_count;
  doc["opt_profile"] = profile(report.opt_profile);
  doc["opt_welfare"] = real(report.opt_welfare);
  doc["min_alpha"] = real(report.min_alpha);
  doc["min_alpha_profile"] = profile(report.min_alpha_profile);
  Json worst = Json::object();
  Json worst_profile = Json::object();
  Json poa = Json::object();
  for (const auto& s : report.per_alpha) {
    const std::string key = format_double(s.alpha);
    worst[key] = s.worst_ne_welfare ? real(*s.worst_ne_welfare) : Json();
    worst_profile[key] =
        s.worst_ne_profile ? profile(*s.worst_ne_profile) : Json();
    poa[key] = s.poa ? real(*s.poa) : Json();
  }
  doc["worst_ne_welfare"] = std::move(worst);
  doc["worst_ne_profile"] = std::move(worst_profile);
  doc["poa"] = std::move(poa);
  return doc.dump(2) + "\n";
}

Profile parse_profile(std::string_view text) {
  if (!text.empty() && text.front() == '(') text.remove_prefix(1);
  if (!text.empty() && text.back() == ')') text.remove_suffix(1);
  Profile p;
  while (!text.empty()) {
    const std::size_t comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    std::size_t k = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), k);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw ParseError("bad profile entry '" + std::string(item) + "'");
    }
    p.choices.push_back(k);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (p.choices.empty()) throw ParseError("empty profile");
  return p;
}

std::vector<double> parse_range(std::string_view text) {
  std::vector<std::string_view> parts;
  while (true) {
    const std::size_t colon = text.find(':');
    parts.push_back(text.substr(0, colon));
    if (colon == std::string_view::npos) break;
    text.remove_prefix(colon + 1);
  }
  if (parts.size() != 3) throw ParseError("range must look like lo:hi:step");
  const double lo = parse_number(parts[0]);
  const double hi = parse_number(parts[1]);
  const double step = parse_number(parts[2]);
  if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(hi - lo)) {
    throw ParseError("range needs lo <= hi and step > 0");
  }
  const double count = std::floor((hi - lo) / step + 1e-9);
  if (count > 1e7) throw ParseError("range has too many points");
  std::vector<double> out;
  for (std::size_t k = 0; k <= static_cast<std::size_t>(count); ++k) {
    const double v = lo + static_cast<double>(k) * step;
    out.push_back(std::round(v * 1e12) / 1e12);
  }
  return out;
}

std::string bounds_row(double delta) {
  const Thresholds t = thresholds(delta);
  return fixed4(delta) + " " + fixed4(t.alpha_upper) + " " +
         (t.alpha_lower ? fixed4(*t.alpha_lower) : std::string("-"));
}

std::string bounds_csv(const std::vector<double>& deltas) {
  std::string out = "delta,w,alpha_upper,alpha_lower\n";
  for (double d : deltas) {
    const Thresholds t = thresholds(d);
    out += format_double(d) + "," + format_double(t.w) + "," +
           format_double(t.alpha_upper) + "," +
           (t.alpha_lower ? format_double(*t.alpha_lower) : std::string()) +
           "\n";
  }
  return out;
}

}  // namespace bag
