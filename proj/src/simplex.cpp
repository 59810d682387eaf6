// Copyright 2026 The SGIQ Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sgiq/simplex.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace sgiq {

namespace {

enum class VarStatus { Basic, AtLower, AtUpper };

// Row-major so the rank-one inverse update walks contiguous memory.
using BasisInverse =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

class Simplex {
 public:
  Simplex(const LpProblem& p, const SimplexOptions& opt) : opt_(opt) {
    n_ = p.num_vars;
    m_ = static_cast<int>(p.rows.size());
    total_ = n_ + m_;

    lower_.assign(p.lower.begin(), p.lower.end());
    upper_.assign(p.upper.begin(), p.upper.end());
    cost_.assign(p.objective.begin(), p.objective.end());
    lower_.resize(total_, 0.0);
    upper_.resize(total_, kInfinity);
    cost_.resize(total_, 0.0);

    columns_.resize(n_);
    rhs_ = Eigen::VectorXd::Zero(m_);
    for (int i = 0; i < m_; ++i) {
      const Row& row = p.rows[i];
      // Normalize >= rows to <= by negation; equalities pin their slack.
      const double sign = row.relation == Relation::GreaterEqual ? -1.0 : 1.0;
      rhs_[i] = sign * row.rhs;
      for (auto [var, coeff] : row.coeffs) {
        if (coeff != 0.0) {
          columns_[var].emplace_back(i, sign * coeff);
        }
      }
      const int slack = n_ + i;
      if (row.relation == Relation::Equal) {
        upper_[slack] = 0.0;
      }
    }
  }

  LpResult solve() {
    LpResult result;
    if (m_ == 0 || n_ == 0) {
      // Box-only problem.
      result.values.assign(n_, 0.0);
      result.objective = 0.0;
      for (int j = 0; j < n_; ++j) {
        if (cost_[j] > 0.0) {
          if (!std::isfinite(upper_[j])) {
            result.status = LpStatus::Unbounded;
            return result;
          }
          result.values[j] = upper_[j];
        } else {
          result.values[j] = lower_[j];
        }
        result.objective += cost_[j] * result.values[j];
      }
      result.status = LpStatus::Optimal;
      return result;
    }

    init_basis();
    for (int i = 0; i < m_; ++i) {
      if (x_basic_[i] < lower_[basis_[i]] - opt_.feasibility_tol ||
          x_basic_[i] > upper_[basis_[i]] + opt_.feasibility_tol) {
        throw Error("simplex: all-slack starting basis is infeasible");
      }
    }

    long stall = 0;
    bool bland = false;
    double last_objective = current_objective();
    for (result.iterations = 0; result.iterations < opt_.max_iterations;
         ++result.iterations) {
      if (pivots_since_refactor_ >= opt_.refactor_interval) {
        refactor();
      }
      const Eigen::VectorXd y = binv_.transpose() * basic_cost();

      int entering = -1;
      double best_score = opt_.pivot_tol;
      double entering_d = 0.0;
      for (int j = 0; j < total_; ++j) {
        if (status_[j] == VarStatus::Basic) {
          continue;
        }
        if (lower_[j] == upper_[j]) {
          continue;  // fixed (equality slacks)
        }
        const double d = cost_[j] - dot_column(j, y);
        const bool improving = (status_[j] == VarStatus::AtLower && d > opt_.pivot_tol) ||
                               (status_[j] == VarStatus::AtUpper && d < -opt_.pivot_tol);
        if (!improving) {
          continue;
        }
        if (bland) {
          entering = j;
          entering_d = d;
          break;
        }
        if (std::abs(d) > best_score) {
          best_score = std::abs(d);
          entering = j;
          entering_d = d;
        }
      }
      if (entering < 0) {
        return finish(result, LpStatus::Optimal);
      }

      const double direction = entering_d > 0.0 ? 1.0 : -1.0;  // move off its bound
      const Eigen::VectorXd w = ftran(entering);

      // Ratio test: first blocking basic variable; ties to the lowest
      // variable index keep Bland's rule sound.
      double t_max = upper_[entering] - lower_[entering];
      int leaving_row = -1;
      for (int i = 0; i < m_; ++i) {
        const double delta = -direction * w[i];
        double limit = kInfinity;
        if (delta > opt_.pivot_tol) {
          limit = (upper_[basis_[i]] - x_basic_[i]) / delta;
        } else if (delta < -opt_.pivot_tol) {
          limit = (lower_[basis_[i]] - x_basic_[i]) / delta;
        } else {
          continue;
        }
        limit = std::max(limit, 0.0);
        if (limit < t_max - opt_.pivot_tol ||
            (limit < t_max + opt_.pivot_tol && leaving_row >= 0 &&
             basis_[i] < basis_[leaving_row])) {
          t_max = std::min(t_max, limit);
          leaving_row = i;
        }
      }

      if (std::isinf(t_max)) {
        return finish(result, LpStatus::Unbounded);
      }

      x_basic_ -= direction * t_max * w;
      if (leaving_row < 0) {
        // Bound flip: the entering variable runs to its opposite bound.
        status_[entering] =
            status_[entering] == VarStatus::AtLower ? VarStatus::AtUpper : VarStatus::AtLower;
      } else {
        const int leaving = basis_[leaving_row];
        const double enter_value = (status_[entering] == VarStatus::AtLower
                                        ? lower_[entering]
                                        : upper_[entering]) +
                                   direction * t_max;
        const double hit = x_basic_[leaving_row];
        status_[leaving] = std::abs(hit - lower_[leaving]) < std::abs(hit - upper_[leaving])
                               ? VarStatus::AtLower
                               : VarStatus::AtUpper;
        status_[entering] = VarStatus::Basic;
        basis_[leaving_row] = entering;
        x_basic_[leaving_row] = enter_value;
        update_inverse(w, leaving_row);
        ++pivots_since_refactor_;
      }

      const double obj = current_objective();
      if (obj > last_objective + 1e-10 * (1.0 + std::abs(last_objective))) {
        last_objective = obj;
        stall = 0;
        bland = false;
      } else if (++stall > m_ / 2 + 20) {
        bland = true;  // anti-cycling
      }
    }
    return finish(result, LpStatus::IterationLimit);
  }

 private:
  void init_basis() {
    basis_.resize(m_);
    status_.assign(total_, VarStatus::AtLower);
    for (int i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;
      status_[n_ + i] = VarStatus::Basic;
    }
    binv_ = BasisInverse::Identity(m_, m_);
    pivots_since_refactor_ = 0;
    x_basic_ = rhs_;
  }

  Eigen::VectorXd basic_cost() const {
    Eigen::VectorXd cb(m_);
    for (int i = 0; i < m_; ++i) {
      cb[i] = cost_[basis_[i]];
    }
    return cb;
  }

  double dot_column(int j, const Eigen::VectorXd& y) const {
    if (j >= n_) {
      return y[j - n_];
    }
    double s = 0.0;
    for (auto [row, coeff] : columns_[j]) {
      s += coeff * y[row];
    }
    return s;
  }

  Eigen::VectorXd ftran(int j) const {
    if (j >= n_) {
      return binv_.col(j - n_);
    }
    Eigen::VectorXd w = Eigen::VectorXd::Zero(m_);
    for (auto [row, coeff] : columns_[j]) {
      w += coeff * binv_.col(row);
    }
    return w;
  }

  void update_inverse(const Eigen::VectorXd& w, int r) {
    const double pivot = w[r];
    binv_.row(r) /= pivot;
    for (int i = 0; i < m_; ++i) {
      if (i != r && w[i] != 0.0) {
        binv_.row(i) -= w[i] * binv_.row(r);
      }
    }
  }

  void refactor() {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m_, m_);
    for (int i = 0; i < m_; ++i) {
      const int j = basis_[i];
      if (j >= n_) {
        b(j - n_, i) = 1.0;
      } else {
        for (auto [row, coeff] : columns_[j]) {
          b(row, i) += coeff;
        }
      }
    }
    binv_ = Eigen::PartialPivLU<Eigen::MatrixXd>(b).inverse();
    recompute_basics();
    pivots_since_refactor_ = 0;
  }

  void recompute_basics() {
    Eigen::VectorXd residual = rhs_;
    for (int j = 0; j < total_; ++j) {
      if (status_[j] == VarStatus::Basic) {
        continue;
      }
      const double v = status_[j] == VarStatus::AtLower ? lower_[j] : upper_[j];
      if (v == 0.0) {
        continue;
      }
      if (j >= n_) {
        residual[j - n_] -= v;
      } else {
        for (auto [row, coeff] : columns_[j]) {
          residual[row] -= coeff * v;
        }
      }
    }
    x_basic_ = binv_ * residual;
  }

  double value_of(int j) const {
    if (status_[j] == VarStatus::AtLower) {
      return lower_[j];
    }
    if (status_[j] == VarStatus::AtUpper) {
      return upper_[j];
    }
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] == j) {
        return x_basic_[i];
      }
    }
    return 0.0;
  }

  double current_objective() const {
    double obj = 0.0;
    for (int i = 0; i < m_; ++i) {
      obj += cost_[basis_[i]] * x_basic_[i];
    }
    for (int j = 0; j < total_; ++j) {
      if (status_[j] == VarStatus::AtUpper) {
        obj += cost_[j] * upper_[j];
      } else if (status_[j] == VarStatus::AtLower && lower_[j] != 0.0) {
        obj += cost_[j] * lower_[j];
      }
    }
    return obj;
  }

  LpResult finish(LpResult result, LpStatus status) {
    result.status = status;
    if (status != LpStatus::Optimal) {
      return result;
    }
    refactor();  // fresh factorization before certifying
    result.values.resize(n_);
    std::vector<double> full(total_);
    for (int j = 0; j < total_; ++j) {
      full[j] = value_of(j);
    }
    for (int j = 0; j < n_; ++j) {
      result.values[j] = full[j];
    }
    result.objective = 0.0;
    for (int j = 0; j < total_; ++j) {
      result.objective += cost_[j] * full[j];
    }

    const Eigen::VectorXd y = binv_.transpose() * basic_cost();
    result.duals.assign(y.data(), y.data() + m_);
    double dual_obj = y.dot(rhs_);
    for (int j = 0; j < total_; ++j) {
      if (status_[j] == VarStatus::Basic) {
        continue;
      }
      const double d = cost_[j] - dot_column(j, y);
      const double v = status_[j] == VarStatus::AtLower ? lower_[j] : upper_[j];
      if (v != 0.0) {
        dual_obj += d * v;
      }
    }
    result.duality_gap = std::abs(result.objective - dual_obj);
    if (result.duality_gap > opt_.gap_tol * (1.0 + std::abs(result.objective))) {
      throw Error("simplex: optimality certificate failed the duality-gap check");
    }
    return result;
  }

  SimplexOptions opt_;
  int n_ = 0, m_ = 0, total_ = 0;
  std::vector<std::vector<std::pair<int, double>>> columns_;
  std::vector<double> lower_, upper_, cost_;
  Eigen::VectorXd rhs_;
  std::vector<int> basis_;
  std::vector<VarStatus> status_;
  BasisInverse binv_;
  Eigen::VectorXd x_basic_;
  int pivots_since_refactor_ = 0;
};

}  // namespace

LpResult solve_lp_problem(const LpProblem& problem, const SimplexOptions& options) {
  return Simplex(problem, options).solve();
}

}  // namespace sgiq
