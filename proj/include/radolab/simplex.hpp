#pragma once

// Dense two-phase primal simplex over an exact field. Bland's rule for both
// entering and leaving variables, so it terminates without perturbation.
// Problems here have at most a few hundred columns.

#include "radolab/linalg.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace radolab {

enum class LpStatus { optimal, infeasible, unbounded };
enum class Sense { le, eq, ge };

template <typename Scalar>
struct LpConstraint {
  VectorX<Scalar> coeffs;
  Sense sense = Sense::le;
  Scalar rhs{0};
};

/// maximize objective·x subject to the constraints. Variables are nonnegative
/// unless flagged in `free_variable`.
template <typename Scalar>
struct LpProblem {
  VectorX<Scalar> objective;
  std::vector<LpConstraint<Scalar>> constraints;
  std::vector<bool> free_variable;

  explicit LpProblem(Eigen::Index num_vars)
      : objective(VectorX<Scalar>::Zero(num_vars)),
        free_variable(static_cast<std::size_t>(num_vars), false) {}

  Eigen::Index num_vars() const { return objective.size(); }

  void add(VectorX<Scalar> coeffs, Sense sense, Scalar rhs) {
    constraints.push_back({std::move(coeffs), sense, std::move(rhs)});
  }
};

template <typename Scalar>
struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Scalar value{0};
  VectorX<Scalar> point;                 // optimal certificate when status == optimal
  std::vector<Eigen::Index> basic_vars;  // original variables basic at the optimum
};

/// Exact check that `x` satisfies every constraint and sign restriction.
template <typename Scalar>
bool satisfies(const LpProblem<Scalar>& problem, const VectorX<Scalar>& x) {
  if (x.size() != problem.num_vars()) return false;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (!problem.free_variable[static_cast<std::size_t>(j)] && x(j) < Scalar(0)) return false;
  }
  for (const auto& c : problem.constraints) {
    const Scalar lhs = c.coeffs.dot(x);
    switch (c.sense) {
      case Sense::le: if (lhs > c.rhs) return false; break;
      case Sense::eq: if (lhs != c.rhs) return false; break;
      case Sense::ge: if (lhs < c.rhs) return false; break;
    }
  }
  return true;
}

namespace detail {

template <typename Scalar>
class Tableau {
 public:
  MatrixX<Scalar> t;                  // m rows, last column is the rhs
  VectorX<Scalar> z;                  // reduced costs, last entry is -objective
  std::vector<Eigen::Index> basis;

  Eigen::Index rows() const { return t.rows(); }
  Eigen::Index cols() const { return t.cols() - 1; }
  const Scalar& rhs(Eigen::Index r) const { return t(r, cols()); }

  void pivot(Eigen::Index r, Eigen::Index c) {
    const Scalar lead = t(r, c);
    t.row(r) /= lead;
    for (Eigen::Index i = 0; i < rows(); ++i) {
      if (i == r || t(i, c) == Scalar(0)) continue;
      const Scalar f = t(i, c);
      t.row(i) -= f * t.row(r);
    }
    if (z(c) != Scalar(0)) {
      const Scalar f = z(c);
      z -= f * t.row(r).transpose();
    }
    basis[static_cast<std::size_t>(r)] = c;
  }

  void set_objective(const VectorX<Scalar>& cost) {
    z = VectorX<Scalar>::Zero(t.cols());
    z.head(cost.size()) = cost;
    for (Eigen::Index r = 0; r < rows(); ++r) {
      const Eigen::Index b = basis[static_cast<std::size_t>(r)];
      if (b < cost.size() && cost(b) != Scalar(0)) z -= cost(b) * t.row(r).transpose();
    }
  }

  /// Runs Bland's rule over columns [0, limit). Returns false if unbounded.
  bool optimize(Eigen::Index limit) {
    for (;;) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < limit; ++j) {
        if (z(j) > Scalar(0)) { enter = j; break; }
      }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      Scalar best_ratio{0};
      for (Eigen::Index r = 0; r < rows(); ++r) {
        if (t(r, enter) <= Scalar(0)) continue;
        Scalar ratio = rhs(r) / t(r, enter);
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leave)])) {
          leave = r;
          best_ratio = std::move(ratio);
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void drop_row(Eigen::Index r) {
    const Eigen::Index last = rows() - 1;
    if (r != last) {
      t.row(r).swap(t.row(last));
      std::swap(basis[static_cast<std::size_t>(r)], basis[static_cast<std::size_t>(last)]);
    }
    t.conservativeResize(last, Eigen::NoChange);
    basis.pop_back();
  }
};

}  // namespace detail

template <typename Scalar>
LpResult<Scalar> solve_lp(const LpProblem<Scalar>& problem) {
  const Eigen::Index n = problem.num_vars();
  const Eigen::Index m = static_cast<Eigen::Index>(problem.constraints.size());

  // Structural columns: every variable, then the negative part of each free one.
  std::vector<Eigen::Index> origin;  // structural column -> original variable
  std::vector<int> sign;
  for (Eigen::Index j = 0; j < n; ++j) { origin.push_back(j); sign.push_back(1); }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (problem.free_variable[static_cast<std::size_t>(j)]) { origin.push_back(j); sign.push_back(-1); }
  }
  const Eigen::Index structural = static_cast<Eigen::Index>(origin.size());

  std::vector<Sense> senses;
  std::vector<int> row_sign;
  Eigen::Index slack_count = 0;
  Eigen::Index artificial_count = 0;
  for (const auto& c : problem.constraints) {
    require_same_dim(n, c.coeffs.size(), "LP constraint");
    Sense s = c.sense;
    const int flip = c.rhs < Scalar(0) ? -1 : 1;
    if (flip < 0 && s != Sense::eq) s = (s == Sense::le) ? Sense::ge : Sense::le;
    senses.push_back(s);
    row_sign.push_back(flip);
    if (s != Sense::eq) ++slack_count;
    if (s != Sense::le) ++artificial_count;
  }

  const Eigen::Index first_slack = structural;
  const Eigen::Index first_artificial = structural + slack_count;
  const Eigen::Index total = first_artificial + artificial_count;

  detail::Tableau<Scalar> tab;
  tab.t = MatrixX<Scalar>::Zero(m, total + 1);
  tab.basis.assign(static_cast<std::size_t>(m), -1);
  Eigen::Index next_slack = first_slack;
  Eigen::Index next_artificial = first_artificial;
  for (Eigen::Index r = 0; r < m; ++r) {
    const auto& c = problem.constraints[static_cast<std::size_t>(r)];
    const Scalar f(row_sign[static_cast<std::size_t>(r)]);
    for (Eigen::Index k = 0; k < structural; ++k) {
      tab.t(r, k) = f * Scalar(sign[static_cast<std::size_t>(k)]) * c.coeffs(origin[static_cast<std::size_t>(k)]);
    }
    tab.t(r, total) = f * c.rhs;
    switch (senses[static_cast<std::size_t>(r)]) {
      case Sense::le:
        tab.t(r, next_slack) = Scalar(1);
        tab.basis[static_cast<std::size_t>(r)] = next_slack++;
        break;
      case Sense::ge:
        tab.t(r, next_slack++) = Scalar(-1);
        tab.t(r, next_artificial) = Scalar(1);
        tab.basis[static_cast<std::size_t>(r)] = next_artificial++;
        break;
      case Sense::eq:
        tab.t(r, next_artificial) = Scalar(1);
        tab.basis[static_cast<std::size_t>(r)] = next_artificial++;
        break;
    }
  }

  LpResult<Scalar> result;

  if (artificial_count > 0) {
    VectorX<Scalar> phase_one = VectorX<Scalar>::Zero(total);
    phase_one.tail(artificial_count).setConstant(Scalar(-1));
    tab.set_objective(phase_one);
    tab.optimize(total);
    if (tab.z(total) != Scalar(0)) {  // -(phase one optimum) = sum of artificials > 0
      result.status = LpStatus::infeasible;
      return result;
    }
    for (Eigen::Index r = tab.rows() - 1; r >= 0; --r) {
      if (tab.basis[static_cast<std::size_t>(r)] < first_artificial) continue;
      Eigen::Index col = -1;
      for (Eigen::Index j = 0; j < first_artificial; ++j) {
        if (tab.t(r, j) != Scalar(0)) { col = j; break; }
      }
      if (col >= 0) tab.pivot(r, col);
      else tab.drop_row(r);
    }
    // Artificial columns are never re-entered below.
  }

  VectorX<Scalar> cost = VectorX<Scalar>::Zero(total);
  for (Eigen::Index k = 0; k < structural; ++k) {
    cost(k) = Scalar(sign[static_cast<std::size_t>(k)]) * problem.objective(origin[static_cast<std::size_t>(k)]);
  }
  tab.set_objective(cost);
  if (!tab.optimize(first_artificial)) {
    result.status = LpStatus::unbounded;
    return result;
  }

  result.status = LpStatus::optimal;
  result.point = VectorX<Scalar>::Zero(n);
  for (Eigen::Index r = 0; r < tab.rows(); ++r) {
    const Eigen::Index b = tab.basis[static_cast<std::size_t>(r)];
    if (b >= structural) continue;
    const Eigen::Index j = origin[static_cast<std::size_t>(b)];
    result.point(j) += Scalar(sign[static_cast<std::size_t>(b)]) * tab.rhs(r);
    result.basic_vars.push_back(j);
  }
  result.value = problem.objective.dot(result.point);
  return result;
}

}  // namespace radolab
