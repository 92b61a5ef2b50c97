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

#ifndef BAG_IO_HPP_
#define BAG_IO_HPP_

// File formats: JSON game files and exact-cover instances, CSV traces, JSON
// analysis reports, and the fixed-width threshold table.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bag/analysis.hpp"
#include "bag/constructions.hpp"
#include "bag/core.hpp"
#include "bag/dynamics.hpp"

namespace bag {

inline constexpr int kGameSchemaVersion = 1;
inline constexpr int kReportSchemaVersion = 1;

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Shortest decimal that parses back to the same double. Infinities print as
// "inf" / "-inf".
std::string format_double(double value);

// {"schema_version", "delta", "resources": [{"id", "capacity"}],
//  "players": [{"strategies": [{"demands": {"<id>": demand}}]}]}
std::string game_to_json(const Game& game);
// A missing "delta" is inferred from the demands. Zero demands are dropped.
// Structural problems throw ParseError; semantic ones are left to validate().
Game game_from_json(std::string_view text);

void write_game_file(const std::filesystem::path& path, const Game& game);
Game read_game_file(const std::filesystem::path& path);

// {"m": int, "subsets": [[int, int, int], ...]} with 1-based elements.
std::string x3c_to_json(const X3CInstance& instance);
X3CInstance x3c_from_json(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

inline constexpr std::string_view kTraceCsvHeader =
    "step,player,old_strategy,new_strategy,old_utility,new_utility,ratio,"
    "potential_before,potential_after,welfare";

void write_trace_csv(std::ostream& out, const Trace& trace);

std::string report_to_json(const AnalysisReport& report);

// "0,1,2" or "(0,1,2)".
Profile parse_profile(std::string_view text);

// "lo:hi:step", inclusive of hi up to rounding; values rounded to 1e-12.
std::vector<double> parse_range(std::string_view text);

// "delta alpha_upper alpha_lower" with 4 decimals, half away from zero. The
// lower column prints "-" where it is undefined.
std::string bounds_row(double delta);
// delta,w,alpha_upper,alpha_lower in shortest round-trip form.
std::string bounds_csv(const std::vector<double>& deltas);

}  // namespace bag

#endif  // BAG_IO_HPP_
