// Copyright 2026 The matchcore Authors
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

#ifndef MATCHCORE_TESTS_FIXTURES_HPP_
#define MATCHCORE_TESTS_FIXTURES_HPP_

#include <initializer_list>
#include <vector>

#include "matchcore/auction.hpp"
#include "matchcore/tu_game.hpp"

namespace matchcore::testing {

inline Bundle B(std::initializer_list<int> v) {
  Bundle x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (const int e : v) x(k++) = e;
  return x;
}

inline RationalVector Q(std::initializer_list<Rational> v) {
  RationalVector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (const auto& e : v) x(k++) = e;
  return x;
}

// Table over C(w) from a function of the bundle.
template <typename F>
ValuationTable table_from(const std::string& id, const Bundle& w, F&& f) {
  const Box box(w);
  std::vector<Rational> values(box.size());
  for (std::size_t idx = 0; idx < box.size(); ++idx) values[idx] = f(box.point(idx));
  return ValuationTable(id, box, std::move(values));
}

// Five players, every three-player coalition worth 30.
inline TuGame triple_game() {
  std::vector<Rational> worths(32);
  for (Coalition s = 1; s < 32; ++s) {
    if (coalition_size(s) == 3) worths[s] = Rational(30);
  }
  return TuGame(5, std::move(worths));
}

inline TuGame pair_game() {
  return TuGame::from_list(3, {{0b011, Rational(10)}});
}

inline TuGame all_pairs_game() {
  std::vector<std::pair<Coalition, Rational>> worths;
  for (Coalition s = 1; s < 16; ++s) {
    if (coalition_size(s) == 2) worths.emplace_back(s, Rational(10));
  }
  return TuGame::from_list(4, worths);
}

}  // namespace matchcore::testing

#endif  // MATCHCORE_TESTS_FIXTURES_HPP_
