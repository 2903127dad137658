#pragma once

#include <optional>

#include "tft/tensor.hpp"

namespace tft {

/// Gauss-Jordan inverse. Exact scalars pivot on the first nonzero entry;
/// floating scalars pivot on the largest modulus and treat |pivot| <= tol as
/// zero. Returns nullopt for singular input.
template <FieldScalar S>
std::optional<Matrix<S>> inverse(const Matrix<S>& m, double tol = kDefaultTolerance) {
  if (m.rows() != m.cols()) throw StructuralError("inverse of a non-square matrix");
  const Eigen::Index n = m.rows();
  Matrix<S> a = m;
  Matrix<S> inv = Matrix<S>::Identity(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = -1;
    if constexpr (ScalarTraits<S>::exact) {
      for (Eigen::Index r = col; r < n; ++r) {
        if (!structurally_zero(a(r, col))) {
          pivot = r;
          break;
        }
      }
    } else {
      double best = tol;
      for (Eigen::Index r = col; r < n; ++r) {
        if (std::abs(a(r, col)) > best) {
          best = std::abs(a(r, col));
          pivot = r;
        }
      }
    }
    if (pivot < 0) return std::nullopt;
    a.row(col).swap(a.row(pivot));
    inv.row(col).swap(inv.row(pivot));
    const S scale = S(1) / a(col, col);
    a.row(col) *= scale;
    inv.row(col) *= scale;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col || structurally_zero(a(r, col))) continue;
      const S factor = a(r, col);
      a.row(r) -= factor * a.row(col);
      inv.row(r) -= factor * inv.row(col);
    }
  }
  return inv;
}

}  // namespace tft
