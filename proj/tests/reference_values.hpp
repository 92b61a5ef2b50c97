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

#ifndef BAG_TESTS_REFERENCE_VALUES_HPP_
#define BAG_TESTS_REFERENCE_VALUES_HPP_

#include <array>

namespace bag::testing {

// Published 4-decimal thresholds for delta = 0.1, 0.2, ..., 1.0.
inline constexpr std::array<double, 10> kTableDelta = {
    0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
inline constexpr std::array<double, 10> kTableUpper = {
    1.0485, 1.0946, 1.1388, 1.1816, 1.2232,
    1.2637, 1.3033, 1.3422, 1.3804, 1.4181};
inline constexpr std::array<double, 10> kTableLower = {
    1.0170, 1.0335, 1.0497, 1.0656, 1.0811,
    1.0964, 1.1114, 1.1261, 1.1405, 1.1547};

}  // namespace bag::testing

#endif  // BAG_TESTS_REFERENCE_VALUES_HPP_
