#pragma once

// Exact linear algebra over any field scalar (Gauss-Jordan, no pivot
// thresholds). Eigen's own decompositions assume an inexact scalar and rank
// tolerances, so they are not used on rationals.

#include "radolab/rational.hpp"

#include <optional>
#include <vector>

namespace radolab::linalg {

template <typename Scalar>
struct RowEchelon {
  MatrixX<Scalar> reduced;             // reduced row echelon form
  std::vector<Eigen::Index> pivots;    // pivot column of each nonzero row
};

template <typename Derived>
RowEchelon<typename Derived::Scalar> row_reduce(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  MatrixX<Scalar> m = input;
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pivot = row;
    while (pivot < m.rows() && m(pivot, col) == Scalar(0)) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    const Scalar lead = m(row, col);
    m.row(row) /= lead;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == Scalar(0)) continue;
      const Scalar factor = m(r, col);
      m.row(r) -= factor * m.row(row);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& m) {
  return static_cast<Eigen::Index>(row_reduce(m).pivots.size());
}

/// Indices of the columns of `m` that are not in the span of earlier columns.
template <typename Derived>
std::vector<Eigen::Index> pivot_columns(const Eigen::MatrixBase<Derived>& m) {
  return row_reduce(m).pivots;
}

/// Solves a·x = b; returns nullopt when the system is inconsistent. Free
/// variables are set to zero.
template <typename DerivedA, typename DerivedB>
std::optional<VectorX<typename DerivedA::Scalar>> solve(const Eigen::MatrixBase<DerivedA>& a,
                                                        const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  MatrixX<Scalar> augmented(a.rows(), a.cols() + 1);
  augmented << a, b;
  const auto echelon = row_reduce(augmented);
  VectorX<Scalar> x = VectorX<Scalar>::Zero(a.cols());
  for (std::size_t r = 0; r < echelon.pivots.size(); ++r) {
    const Eigen::Index col = echelon.pivots[r];
    if (col == a.cols()) return std::nullopt;
    x(col) = echelon.reduced(static_cast<Eigen::Index>(r), a.cols());
  }
  return x;
}

template <typename Derived>
std::optional<MatrixX<typename Derived::Scalar>> inverse(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() != a.cols()) return std::nullopt;
  const Eigen::Index n = a.rows();
  MatrixX<Scalar> augmented(n, 2 * n);
  augmented << a, MatrixX<Scalar>::Identity(n, n);
  const auto echelon = row_reduce(augmented);
  if (echelon.pivots.size() != static_cast<std::size_t>(n) || (n > 0 && echelon.pivots.back() >= n)) {
    return std::nullopt;
  }
  return MatrixX<Scalar>(echelon.reduced.rightCols(n));
}

/// Stacks vectors as the columns of a d×k matrix.
template <typename Scalar>
MatrixX<Scalar> columns(const std::vector<VectorX<Scalar>>& vectors, Eigen::Index dim) {
  MatrixX<Scalar> m(dim, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = vectors[i];
  return m;
}

template <typename Scalar>
bool in_span(const std::vector<VectorX<Scalar>>& spanning, const VectorX<Scalar>& v) {
  if (spanning.empty()) return v.isZero();
  return solve(columns(spanning, v.size()), v).has_value();
}

/// Greedy scan: indices of the first linearly independent vectors, in order.
template <typename Scalar>
std::vector<std::size_t> independent_prefix(const std::vector<VectorX<Scalar>>& vectors,
                                            Eigen::Index dim) {
  std::vector<std::size_t> out;
  if (vectors.empty()) return out;
  for (Eigen::Index col : pivot_columns(columns(vectors, dim))) out.push_back(static_cast<std::size_t>(col));
  return out;
}

/// A basis (subset of the inputs) of the span of `vectors`.
template <typename Scalar>
std::vector<VectorX<Scalar>> span_basis(const std::vector<VectorX<Scalar>>& vectors, Eigen::Index dim) {
  std::vector<VectorX<Scalar>> out;
  for (std::size_t i : independent_prefix(vectors, dim)) out.push_back(vectors[i]);
  return out;
}

}  // namespace radolab::linalg
