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

#include "matchcore/value_function.hpp"

#include <ostream>
#include <stdexcept>

namespace matchcore {
namespace {

Box doubled_box(const MultiUnitAuction& a, std::size_t cell_budget) {
  const Bundle upper = 2 * a.endowment();
  const std::size_t points = checked_box_size(upper, cell_budget);
  if (points * static_cast<std::size_t>(a.num_agents()) > cell_budget) {
    throw std::length_error(
        "value table needs " + std::to_string(a.num_agents()) + " x " +
        std::to_string(points) + " cells, budget is " + std::to_string(cell_budget));
  }
  return Box(upper);
}

// Offset in `outer` of each point of `inner`.
std::vector<std::size_t> offsets_in(const Box& outer, const Box& inner) {
  std::vector<std::size_t> out(inner.size());
  for (std::size_t idx = 0; idx < inner.size(); ++idx) {
    out[idx] = outer.index(inner.point(idx));
  }
  return out;
}

}  // namespace

const Rational& ValueFunction::at(const Bundle& x) const {
  if (!domain_.contains(x)) {
    throw std::out_of_range("bundle outside the value table C(2w)");
  }
  return values_[domain_.index(x)];
}

Allocation ValueFunction::efficient_allocation(const Bundle& x) const {
  if (!domain_.contains(x)) {
    throw std::out_of_range("bundle outside the value table C(2w)");
  }
  const int L = static_cast<int>(endowment_.size());
  Allocation X(static_cast<std::size_t>(num_agents_), Bundle::Zero(L));
  Bundle rest = x;
  for (int k = num_agents_ - 1; k >= 0; --k) {
    const auto choice = choices_[static_cast<std::size_t>(k)][domain_.index(rest)];
    X[static_cast<std::size_t>(k)] = choice_box_.point(choice);
    rest -= X[static_cast<std::size_t>(k)];
  }
  for (int j = 0; j < L; ++j) {
    X[static_cast<std::size_t>(absorber_[static_cast<std::size_t>(j)])](j) += rest(j);
  }
  return X;
}

void ValueFunction::write_csv(std::ostream& os) const {
  const int L = domain_.dimension();
  for (int j = 0; j < L; ++j) os << "x_" << (j + 1) << ',';
  os << "V\n";
  for (std::size_t idx = 0; idx < domain_.size(); ++idx) {
    const Bundle x = domain_.point(idx);
    for (int j = 0; j < L; ++j) os << x(j) << ',';
    os << values_[idx].str() << '\n';
  }
}

ValueFunction build_value_function(const MultiUnitAuction& a,
                                   std::size_t cell_budget) {
  ValueFunction vf;
  vf.domain_ = doubled_box(a, cell_budget);
  vf.endowment_ = a.endowment();
  vf.num_agents_ = a.num_agents();
  vf.choice_box_ = a.endowment_box();
  vf.absorber_.assign(static_cast<std::size_t>(a.num_items()), 0);

  const Box& small = vf.choice_box_;
  const std::size_t n = vf.domain_.size();
  const std::vector<std::size_t> offset = offsets_in(vf.domain_, small);
  std::vector<Bundle> small_points(small.size());
  for (std::size_t y = 0; y < small.size(); ++y) small_points[y] = small.point(y);
  std::vector<Bundle> points(n);
  for (std::size_t x = 0; x < n; ++x) points[x] = vf.domain_.point(x);

  std::vector<Rational> prev(n);
  std::vector<Rational> cur(n);
  vf.choices_.assign(static_cast<std::size_t>(a.num_agents()),
                     std::vector<std::uint32_t>(n, 0));
  for (int k = 0; k < a.num_agents(); ++k) {
    const auto& table = a.valuation(k).values();
    auto& choice = vf.choices_[static_cast<std::size_t>(k)];
    for (std::size_t x = 0; x < n; ++x) {
      cur[x] = table[0] + prev[x];
      choice[x] = 0;
      for (std::size_t y = 1; y < small.size(); ++y) {
        if (!dominated_by(small_points[y], points[x])) continue;
        Rational candidate = table[y] + prev[x - offset[y]];
        if (candidate > cur[x]) {
          cur[x] = std::move(candidate);
          choice[x] = static_cast<std::uint32_t>(y);
        }
      }
    }
    std::swap(prev, cur);
  }
  vf.values_ = std::move(prev);
  return vf;
}

ValueFunction build_single_minded_value_function(const MultiUnitAuction& a,
                                                 std::span<const Bundle> keys,
                                                 std::size_t cell_budget) {
  if (static_cast<int>(keys.size()) != a.num_agents()) {
    throw std::invalid_argument("one key bundle per agent required");
  }
  const Box& small = a.endowment_box();
  for (int k = 0; k < a.num_agents(); ++k) {
    const Bundle& key = keys[static_cast<std::size_t>(k)];
    if (!small.contains(key)) {
      throw std::invalid_argument("key bundle outside C(w)");
    }
    const auto& table = a.valuation(k).values();
    const Rational& worth = table[small.index(key)];
    for (std::size_t y = 0; y < small.size(); ++y) {
      const Rational expected = dominated_by(key, small.point(y)) ? worth : Rational(0);
      if (!(table[y] == expected)) {
        throw std::invalid_argument("agent '" + a.valuation(k).id() +
                                    "' is not single-minded on its key");
      }
    }
  }

  ValueFunction vf;
  vf.domain_ = doubled_box(a, cell_budget);
  vf.endowment_ = a.endowment();
  vf.num_agents_ = a.num_agents();
  vf.choice_box_ = small;
  vf.absorber_.assign(static_cast<std::size_t>(a.num_items()), 0);
  for (int j = a.num_items(); j-- > 0;) {
    const Bundle unit = basis_bundle(j, a.num_items());
    for (int k = 0; k < a.num_agents(); ++k) {
      if (keys[static_cast<std::size_t>(k)] == unit) {
        vf.absorber_[static_cast<std::size_t>(j)] = k;
        break;
      }
    }
  }

  const std::size_t n = vf.domain_.size();
  std::vector<Bundle> points(n);
  for (std::size_t x = 0; x < n; ++x) points[x] = vf.domain_.point(x);
  std::vector<Rational> prev(n);
  std::vector<Rational> cur(n);
  vf.choices_.assign(static_cast<std::size_t>(a.num_agents()),
                     std::vector<std::uint32_t>(n, 0));
  for (int k = 0; k < a.num_agents(); ++k) {
    const Bundle& key = keys[static_cast<std::size_t>(k)];
    const std::size_t key_small = small.index(key);
    const std::size_t key_offset = vf.domain_.index(key);
    const Rational& worth = a.valuation(k).at(key_small);
    auto& choice = vf.choices_[static_cast<std::size_t>(k)];
    for (std::size_t x = 0; x < n; ++x) {
      cur[x] = prev[x];
      choice[x] = 0;
      if (worth.sign() > 0 && dominated_by(key, points[x])) {
        Rational candidate = worth + prev[x - key_offset];
        if (candidate > cur[x]) {
          cur[x] = std::move(candidate);
          choice[x] = static_cast<std::uint32_t>(key_small);
        }
      }
    }
    std::swap(prev, cur);
  }
  vf.values_ = std::move(prev);
  return vf;
}

WeakMonotonicityReport check_weak_monotonicity(const ValueFunction& vf) {
  WeakMonotonicityReport report;
  const Bundle& w = vf.endowment();
  const Rational& base = vf.at(w);
  const int L = static_cast<int>(w.size());
  bool axes = true;
  for (int j = 0; j < L; ++j) {
    const bool ok = vf.at(Bundle(w + basis_bundle(j, L))) >= base;
    report.axis.push_back(ok);
    axes = axes && ok;
  }
  report.strict_step = vf.at(Bundle(w + unit_bundle(L))) > base;
  report.holds = axes && report.strict_step;
  return report;
}

}  // namespace matchcore
