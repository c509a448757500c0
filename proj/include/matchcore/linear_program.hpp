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

#ifndef MATCHCORE_LINEAR_PROGRAM_HPP_
#define MATCHCORE_LINEAR_PROGRAM_HPP_

// Dense two-phase primal simplex with Bland's rule, templated on an exact
// ordered field (in practice matchcore::Rational). Returns primal and dual
// solutions on optimality and a Farkas certificate on infeasibility.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace matchcore {

enum class Sense { kMaximize, kMinimize };
enum class Relation { kLessEqual, kEqual, kGreaterEqual };
enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "?";
}

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// optimize objective^T x  s.t.  constraints.row(i) x  relations[i]  rhs[i],
// x_j >= 0 unless free_variable[j].
template <typename Scalar>
struct LinearProgram {
  Sense sense = Sense::kMaximize;
  Vec<Scalar> objective;
  Mat<Scalar> constraints;
  std::vector<Relation> relations;
  Vec<Scalar> rhs;
  std::vector<bool> free_variable;

  LinearProgram() = default;
  explicit LinearProgram(Eigen::Index num_variables, Sense s = Sense::kMaximize)
      : sense(s),
        objective(Vec<Scalar>::Zero(num_variables)),
        constraints(0, num_variables),
        rhs(0),
        free_variable(static_cast<std::size_t>(num_variables), false) {}

  Eigen::Index num_variables() const { return objective.size(); }
  Eigen::Index num_constraints() const { return constraints.rows(); }

  bool is_free(Eigen::Index j) const {
    return !free_variable.empty() && free_variable[static_cast<std::size_t>(j)];
  }

  template <typename Derived>
  void add_constraint(const Eigen::MatrixBase<Derived>& row, Relation rel,
                      const Scalar& bound) {
    if (row.size() != num_variables()) {
      throw std::invalid_argument("constraint row length " +
                                  std::to_string(row.size()) +
                                  " != variable count " +
                                  std::to_string(num_variables()));
    }
    const Eigen::Index m = constraints.rows();
    constraints.conservativeResize(m + 1, num_variables());
    constraints.row(m) = row.transpose();
    rhs.conservativeResize(m + 1);
    rhs(m) = bound;
    relations.push_back(rel);
  }

  void validate() const {
    if (constraints.cols() != num_variables()) {
      throw std::invalid_argument("constraint matrix width != variable count");
    }
    if (rhs.size() != constraints.rows() ||
        relations.size() != static_cast<std::size_t>(constraints.rows())) {
      throw std::invalid_argument("rhs/relations length != constraint count");
    }
    if (!free_variable.empty() &&
        free_variable.size() != static_cast<std::size_t>(num_variables())) {
      throw std::invalid_argument("free_variable length != variable count");
    }
  }
};

// Dual sign convention (the usual one for the stated sense):
//   maximize: y_i >= 0 on <= rows, y_i <= 0 on >= rows, free on = rows,
//             objective - A^T y <= 0 (= 0 on free variables);
//   minimize: the mirror image, objective - A^T y >= 0.
// On optimality rhs^T y equals the objective value.
template <typename Scalar>
struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Vec<Scalar> primal;
  Vec<Scalar> duals;
  Scalar objective{};
  // Set when status == kInfeasible: multipliers y with y_i >= 0 on <= rows,
  // y_i <= 0 on >= rows, y^T A >= 0 (= 0 on free columns), y^T rhs < 0.
  Vec<Scalar> farkas;
};

template <typename Scalar>
struct FeasiblePoint {
  Vec<Scalar> values;
};

template <typename Scalar>
struct FarkasCertificate {
  Vec<Scalar> multipliers;
};

template <typename Scalar>
using FeasibilityResult =
    std::variant<FeasiblePoint<Scalar>, FarkasCertificate<Scalar>>;

namespace detail {

template <typename Scalar>
class SimplexTableau {
 public:
  explicit SimplexTableau(const LinearProgram<Scalar>& lp) : lp_(lp) {
    lp.validate();
    m_ = lp.num_constraints();
    n_ = lp.num_variables();

    // Structural columns: one per variable plus a negated copy per free one.
    for (Eigen::Index j = 0; j < n_; ++j) {
      structural_.push_back({j, +1});
    }
    for (Eigen::Index j = 0; j < n_; ++j) {
      if (lp.is_free(j)) structural_.push_back({j, -1});
    }
    const auto ns = static_cast<Eigen::Index>(structural_.size());

    row_sign_.assign(static_cast<std::size_t>(m_), 1);
    std::vector<Relation> rel(lp.relations);
    Eigen::Index slack_count = 0;
    Eigen::Index art_count = 0;
    for (Eigen::Index i = 0; i < m_; ++i) {
      auto& r = rel[static_cast<std::size_t>(i)];
      if (lp.rhs(i) < Scalar(0)) {
        row_sign_[static_cast<std::size_t>(i)] = -1;
        if (r == Relation::kLessEqual) {
          r = Relation::kGreaterEqual;
        } else if (r == Relation::kGreaterEqual) {
          r = Relation::kLessEqual;
        }
      }
      if (r != Relation::kEqual) ++slack_count;
      if (r != Relation::kLessEqual) ++art_count;
    }

    first_slack_ = ns;
    first_artificial_ = ns + slack_count;
    cols_ = first_artificial_ + art_count;
    tableau_ = Mat<Scalar>::Zero(m_, cols_ + 1);
    basis_.assign(static_cast<std::size_t>(m_), 0);
    identity_col_.assign(static_cast<std::size_t>(m_), 0);

    Eigen::Index slack = first_slack_;
    Eigen::Index art = first_artificial_;
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Scalar s(row_sign_[static_cast<std::size_t>(i)]);
      for (Eigen::Index k = 0; k < ns; ++k) {
        const auto& col = structural_[static_cast<std::size_t>(k)];
        const Scalar& a = lp.constraints(i, col.var);
        if (!(a == Scalar(0))) {
          tableau_(i, k) = col.sign > 0 ? Scalar(s * a) : Scalar(-(s * a));
        }
      }
      tableau_(i, cols_) = s * lp.rhs(i);
      const Relation r = rel[static_cast<std::size_t>(i)];
      if (r == Relation::kLessEqual) {
        tableau_(i, slack) = Scalar(1);
        basis_[static_cast<std::size_t>(i)] = slack;
        identity_col_[static_cast<std::size_t>(i)] = slack;
        ++slack;
      } else {
        if (r == Relation::kGreaterEqual) {
          tableau_(i, slack) = Scalar(-1);
          ++slack;
        }
        tableau_(i, art) = Scalar(1);
        basis_[static_cast<std::size_t>(i)] = art;
        identity_col_[static_cast<std::size_t>(i)] = art;
        ++art;
      }
    }
  }

  LpSolution<Scalar> solve() {
    LpSolution<Scalar> out;

    // Phase one: maximize -(sum of artificials).
    Vec<Scalar> phase1 = Vec<Scalar>::Zero(cols_);
    for (Eigen::Index j = first_artificial_; j < cols_; ++j) phase1(j) = Scalar(-1);
    run(phase1, cols_);
    if (objective_value(phase1) < Scalar(0)) {
      out.status = LpStatus::kInfeasible;
      out.farkas = row_duals(phase1);
      return out;
    }
    drive_out_artificials();

    // Phase two over the original objective in maximize form; artificial
    // columns may no longer enter.
    Vec<Scalar> phase2 = Vec<Scalar>::Zero(cols_);
    const Scalar flip(lp_.sense == Sense::kMaximize ? 1 : -1);
    for (Eigen::Index k = 0; k < first_slack_; ++k) {
      const auto& col = structural_[static_cast<std::size_t>(k)];
      phase2(k) = flip * lp_.objective(col.var) * Scalar(col.sign);
    }
    if (!run(phase2, first_artificial_)) {
      out.status = LpStatus::kUnbounded;
      out.primal = primal();
      return out;
    }

    out.status = LpStatus::kOptimal;
    out.primal = primal();
    out.duals = row_duals(phase2);
    if (lp_.sense == Sense::kMinimize) out.duals = -out.duals;
    out.objective = lp_.objective.dot(out.primal);
    return out;
  }

 private:
  struct Column {
    Eigen::Index var;
    int sign;
  };

  // Runs Bland-rule pivots for `cost` with entering columns restricted to
  // [0, entering_limit). Returns false when unbounded.
  bool run(const Vec<Scalar>& cost, Eigen::Index entering_limit) {
    Vec<Scalar> reduced = cost;
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Scalar& cb = cost(basis_[static_cast<std::size_t>(i)]);
      if (cb == Scalar(0)) continue;
      for (Eigen::Index j = 0; j < cols_; ++j) {
        if (!(tableau_(i, j) == Scalar(0))) reduced(j) -= cb * tableau_(i, j);
      }
    }
    for (;;) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < entering_limit; ++j) {
        if (reduced(j) > Scalar(0)) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;

      Eigen::Index leave = -1;
      Scalar best_ratio;
      for (Eigen::Index i = 0; i < m_; ++i) {
        const Scalar& a = tableau_(i, enter);
        if (!(a > Scalar(0))) continue;
        Scalar ratio = tableau_(i, cols_) / a;
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio &&
             basis_[static_cast<std::size_t>(i)] <
                 basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leave < 0) return false;

      pivot(leave, enter);
      const Scalar factor = reduced(enter);
      for (Eigen::Index j = 0; j <= cols_ - 1; ++j) {
        if (!(tableau_(leave, j) == Scalar(0))) {
          reduced(j) -= factor * tableau_(leave, j);
        }
      }
    }
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    const Scalar p = tableau_(row, col);
    tableau_.row(row) /= p;
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (i == row) continue;
      const Scalar f = tableau_(i, col);
      if (f == Scalar(0)) continue;
      for (Eigen::Index j = 0; j <= cols_; ++j) {
        if (!(tableau_(row, j) == Scalar(0))) {
          tableau_(i, j) -= f * tableau_(row, j);
        }
      }
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  // Degenerate pivots that replace zero-level artificials by any non-artificial
  // column with a nonzero entry. Rows without one are redundant; their
  // artificial stays basic at zero and can never move again.
  void drive_out_artificials() {
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < first_artificial_) continue;
      for (Eigen::Index j = 0; j < first_artificial_; ++j) {
        if (!(tableau_(i, j) == Scalar(0))) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  Scalar objective_value(const Vec<Scalar>& cost) const {
    Scalar z(0);
    for (Eigen::Index i = 0; i < m_; ++i) {
      z += cost(basis_[static_cast<std::size_t>(i)]) * tableau_(i, cols_);
    }
    return z;
  }

  // y^T = c_B^T B^{-1}, read off the columns that started as the identity,
  // mapped back through the row sign normalisation.
  Vec<Scalar> row_duals(const Vec<Scalar>& cost) const {
    Vec<Scalar> y = Vec<Scalar>::Zero(m_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Eigen::Index col = identity_col_[static_cast<std::size_t>(i)];
      Scalar acc(0);
      for (Eigen::Index r = 0; r < m_; ++r) {
        const Scalar& cb = cost(basis_[static_cast<std::size_t>(r)]);
        if (!(cb == Scalar(0)) && !(tableau_(r, col) == Scalar(0))) {
          acc += cb * tableau_(r, col);
        }
      }
      y(i) = row_sign_[static_cast<std::size_t>(i)] > 0 ? acc : Scalar(-acc);
    }
    return y;
  }

  Vec<Scalar> primal() const {
    Vec<Scalar> x = Vec<Scalar>::Zero(n_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Eigen::Index b = basis_[static_cast<std::size_t>(i)];
      if (b >= first_slack_) continue;
      const auto& col = structural_[static_cast<std::size_t>(b)];
      if (col.sign > 0) {
        x(col.var) += tableau_(i, cols_);
      } else {
        x(col.var) -= tableau_(i, cols_);
      }
    }
    return x;
  }

  const LinearProgram<Scalar>& lp_;
  Eigen::Index m_ = 0;
  Eigen::Index n_ = 0;
  Eigen::Index cols_ = 0;
  Eigen::Index first_slack_ = 0;
  Eigen::Index first_artificial_ = 0;
  std::vector<Column> structural_;
  std::vector<int> row_sign_;
  std::vector<Eigen::Index> basis_;
  std::vector<Eigen::Index> identity_col_;
  Mat<Scalar> tableau_;
};

}  // namespace detail

template <typename Scalar>
LpSolution<Scalar> lp_solve(const LinearProgram<Scalar>& lp) {
  detail::SimplexTableau<Scalar> tableau(lp);
  return tableau.solve();
}

template <typename Scalar>
bool is_primal_feasible(const LinearProgram<Scalar>& lp,
                        const Vec<Scalar>& x) {
  if (x.size() != lp.num_variables()) return false;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (!lp.is_free(j) && x(j) < Scalar(0)) return false;
  }
  for (Eigen::Index i = 0; i < lp.num_constraints(); ++i) {
    const Scalar lhs = lp.constraints.row(i).dot(x);
    switch (lp.relations[static_cast<std::size_t>(i)]) {
      case Relation::kLessEqual:
        if (lhs > lp.rhs(i)) return false;
        break;
      case Relation::kEqual:
        if (!(lhs == lp.rhs(i))) return false;
        break;
      case Relation::kGreaterEqual:
        if (lhs < lp.rhs(i)) return false;
        break;
    }
  }
  return true;
}

// Exact optimality check of a claimed optimal (primal, dual) pair: primal
// feasibility, dual feasibility under the sign convention above,
// complementary slackness on rows and columns, and zero duality gap.
template <typename Scalar>
bool verify_optimality(const LinearProgram<Scalar>& lp,
                       const LpSolution<Scalar>& sol) {
  if (sol.status != LpStatus::kOptimal) return false;
  if (!is_primal_feasible(lp, sol.primal)) return false;
  if (sol.duals.size() != lp.num_constraints()) return false;
  const bool maximize = lp.sense == Sense::kMaximize;
  for (Eigen::Index i = 0; i < lp.num_constraints(); ++i) {
    const Scalar& y = sol.duals(i);
    const Relation r = lp.relations[static_cast<std::size_t>(i)];
    const bool le = r == Relation::kLessEqual;
    const bool ge = r == Relation::kGreaterEqual;
    if (maximize ? ((le && y < Scalar(0)) || (ge && y > Scalar(0)))
                 : ((le && y > Scalar(0)) || (ge && y < Scalar(0)))) {
      return false;
    }
    const Scalar slack = lp.constraints.row(i).dot(sol.primal) - lp.rhs(i);
    if (!(y == Scalar(0)) && !(slack == Scalar(0))) return false;
  }
  const Vec<Scalar> reduced =
      lp.objective - lp.constraints.transpose() * sol.duals;
  for (Eigen::Index j = 0; j < lp.num_variables(); ++j) {
    if (lp.is_free(j)) {
      if (!(reduced(j) == Scalar(0))) return false;
    } else {
      if (maximize ? reduced(j) > Scalar(0) : reduced(j) < Scalar(0)) {
        return false;
      }
      if (!(reduced(j) == Scalar(0)) && !(sol.primal(j) == Scalar(0))) {
        return false;
      }
    }
  }
  const Scalar primal_value = lp.objective.dot(sol.primal);
  const Scalar dual_value = lp.rhs.dot(sol.duals);
  return primal_value == dual_value && primal_value == sol.objective;
}

// Checks that `y` proves infeasibility of the constraint system of `lp`.
template <typename Scalar>
bool verify_farkas(const LinearProgram<Scalar>& lp, const Vec<Scalar>& y) {
  if (y.size() != lp.num_constraints()) return false;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const Relation r = lp.relations[static_cast<std::size_t>(i)];
    if (r == Relation::kLessEqual && y(i) < Scalar(0)) return false;
    if (r == Relation::kGreaterEqual && y(i) > Scalar(0)) return false;
  }
  const Vec<Scalar> combined = lp.constraints.transpose() * y;
  for (Eigen::Index j = 0; j < combined.size(); ++j) {
    if (lp.is_free(j) ? !(combined(j) == Scalar(0)) : combined(j) < Scalar(0)) {
      return false;
    }
  }
  return lp.rhs.dot(y) < Scalar(0);
}

// Solves the constraint system of `lp` (the objective is ignored) and returns
// either a feasible point or an exact Farkas certificate of infeasibility.
template <typename Scalar>
FeasibilityResult<Scalar> farkas_certificate(const LinearProgram<Scalar>& lp) {
  LinearProgram<Scalar> system = lp;
  system.sense = Sense::kMaximize;
  system.objective = Vec<Scalar>::Zero(lp.num_variables());
  LpSolution<Scalar> sol = lp_solve(system);
  if (sol.status == LpStatus::kInfeasible) {
    if (!verify_farkas(lp, sol.farkas)) {
      throw std::logic_error("phase-one produced an invalid Farkas certificate");
    }
    return FarkasCertificate<Scalar>{std::move(sol.farkas)};
  }
  return FeasiblePoint<Scalar>{std::move(sol.primal)};
}

}  // namespace matchcore

#endif  // MATCHCORE_LINEAR_PROGRAM_HPP_
