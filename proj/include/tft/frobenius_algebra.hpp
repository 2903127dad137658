#pragma once

// Finite-dimensional commutative Frobenius algebras: the field theories over
// a point. The counit is data; the comultiplication is always derived from
// the pairing so that the Frobenius relation holds by construction.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tft/errors.hpp"
#include "tft/group.hpp"
#include "tft/linalg.hpp"
#include "tft/report.hpp"
#include "tft/tensor.hpp"

namespace tft {

template <FieldScalar S>
class FrobeniusAlgebra {
 public:
  /// `multiplication` is n x n^2: column i*n+j holds the coordinates of e_i e_j.
  FrobeniusAlgebra(std::vector<std::string> basis, Matrix<S> multiplication, Vector<S> unit,
                   RowVector<S> counit)
      : basis_(std::move(basis)),
        mul_(std::move(multiplication)),
        unit_(std::move(unit)),
        counit_(std::move(counit)) {
    const auto n = static_cast<Eigen::Index>(basis_.size());
    if (n == 0) throw StructuralError("algebra dimension must be positive");
    if (mul_.rows() != n || mul_.cols() != n * n) {
      throw StructuralError("multiplication must be a dim x dim^2 matrix");
    }
    if (unit_.size() != n) throw StructuralError("unit vector has wrong length");
    if (counit_.size() != n) throw StructuralError("counit vector has wrong length");
  }

  /// Structure constants c[i][j][k] with e_i e_j = sum_k c[i][j][k] e_k.
  static FrobeniusAlgebra from_structure_constants(std::vector<std::string> basis, const Tensor<S>& c,
                                                   Vector<S> unit, RowVector<S> counit) {
    const std::size_t n = basis.size();
    if (c.shape() != Shape{n, n, n}) throw StructuralError("structure constants must have shape [n,n,n]");
    return FrobeniusAlgebra(std::move(basis), tensor_to_map(c, 2), std::move(unit), std::move(counit));
  }

  std::size_t dim() const { return basis_.size(); }
  const std::vector<std::string>& basis() const { return basis_; }
  const Matrix<S>& multiplication() const { return mul_; }
  const Vector<S>& unit() const { return unit_; }
  const RowVector<S>& counit() const { return counit_; }

  const S& structure_constant(std::size_t i, std::size_t j, std::size_t k) const {
    return mul_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i * dim() + j));
  }

  Tensor<S> structure_constants() const { return map_to_tensor(mul_, {dim(), dim()}, {dim()}); }

  /// g[i][j] = eps(e_i e_j)
  Matrix<S> pairing() const {
    const auto n = static_cast<Eigen::Index>(dim());
    RowVector<S> flat = counit_ * mul_;
    Matrix<S> g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) g.row(i) = flat.segment(i * n, n);
    return g;
  }

  FrobeniusAlgebra with_counit(RowVector<S> counit) const {
    return FrobeniusAlgebra(basis_, mul_, unit_, std::move(counit));
  }

  template <FieldScalar T>
  FrobeniusAlgebra<T> cast() const {
    return FrobeniusAlgebra<T>(basis_, cast_scalars<T>(mul_), cast_scalars<T>(unit_), cast_scalars<T>(counit_));
  }

 private:
  std::vector<std::string> basis_;
  Matrix<S> mul_;
  Vector<S> unit_;
  RowVector<S> counit_;
};

template <FieldScalar S>
ValidationReport validate(const FrobeniusAlgebra<S>& a, double tol = kDefaultTolerance) {
  ValidationReport report;
  const auto n = static_cast<Eigen::Index>(a.dim());
  const auto& mul = a.multiplication();
  const Matrix<S> id = identity_map<S>(a.dim());
  using Idx = std::size_t;

  report.checked("associativity");
  {
    const Matrix<S> left = mul * kron(mul, id);   // (e_i e_j) e_k
    const Matrix<S> right = mul * kron(id, mul);  // e_i (e_j e_k)
    if (auto bad = first_mismatch(left, right, tol)) {
      const auto [row, col] = *bad;
      report.fail({"associativity", {},
                   {Idx(col / (n * n)), Idx(col / n % n), Idx(col % n), Idx(row)},
                   "(e_i e_j) e_k != e_i (e_j e_k) at coordinate l"});
    }
  }

  report.checked("commutativity");
  if (auto bad = first_mismatch(mul, Matrix<S>(mul * swap_map<S>(a.dim(), a.dim())), tol)) {
    const auto [row, col] = *bad;
    report.fail({"commutativity", {}, {Idx(col / n), Idx(col % n), Idx(row)}, "e_i e_j != e_j e_i"});
  }

  report.checked("unit");
  {
    const Matrix<S> left_unit = mul * kron(Matrix<S>(a.unit()), id);
    if (auto bad = first_mismatch(left_unit, id, tol)) {
      const auto [row, col] = *bad;
      report.fail({"unit", {}, {Idx(col), Idx(row)}, "u e_j != e_j"});
    }
  }

  report.checked("nondegeneracy");
  if (!inverse(a.pairing(), tol)) {
    report.fail({"nondegeneracy", {}, {}, "pairing eps(e_i e_j) is singular"});
  }
  return report;
}

/// n^2 x n matrix of the comultiplication, (mu (x) id)(id (x) copairing).
template <FieldScalar S>
Matrix<S> comultiplication_map(const FrobeniusAlgebra<S>& a, double tol = kDefaultTolerance) {
  auto copairing = inverse(a.pairing(), tol);
  if (!copairing) throw DegenerateError("comultiplication needs a nondegenerate pairing");
  const auto n = static_cast<Eigen::Index>(a.dim());
  Vector<S> omega(n * n);  // sum_{ab} ginv[a][b] e_a (x) e_b
  for (Eigen::Index i = 0; i < n; ++i) omega.segment(i * n, n) = copairing->row(i).transpose();
  const Matrix<S> id = identity_map<S>(a.dim());
  return kron(a.multiplication(), id) * kron(id, Matrix<S>(omega));
}

/// delta[k][i][j]: coefficient of e_i (x) e_j in delta(e_k).
template <FieldScalar S>
Tensor<S> comultiplication(const FrobeniusAlgebra<S>& a, double tol = kDefaultTolerance) {
  return map_to_tensor(comultiplication_map(a, tol), {a.dim()}, {a.dim(), a.dim()});
}

/// H = mu o delta
template <FieldScalar S>
Matrix<S> handle_operator(const FrobeniusAlgebra<S>& a, double tol = kDefaultTolerance) {
  return a.multiplication() * comultiplication_map(a, tol);
}

/// Invariant of the closed genus-g surface: eps(H^g(u)).
template <FieldScalar S>
S closed_invariant(const FrobeniusAlgebra<S>& a, std::size_t genus, double tol = kDefaultTolerance) {
  const Matrix<S> h = handle_operator(a, tol);
  Vector<S> v = a.unit();
  for (std::size_t i = 0; i < genus; ++i) v = h * v;
  return (a.counit() * v)(0);
}

// ---------------------------------------------------------------------------
// Library of standard algebras.

namespace library {

template <FieldScalar S>
FrobeniusAlgebra<S> ground_field() {
  return FrobeniusAlgebra<S>({"1"}, Matrix<S>::Constant(1, 1, S(1)), Vector<S>::Constant(1, S(1)),
                             RowVector<S>::Constant(1, S(1)));
}

/// k[x]/(x^2) with eps(1) = 0, eps(x) = 1.
template <FieldScalar S>
FrobeniusAlgebra<S> dual_numbers() {
  Matrix<S> mul = Matrix<S>::Zero(2, 4);
  mul(0, 0) = S(1);  // 1*1 = 1
  mul(1, 1) = S(1);  // 1*x = x
  mul(1, 2) = S(1);  // x*1 = x
  Vector<S> unit(2);
  unit << S(1), S(0);
  RowVector<S> counit(2);
  counit << S(0), S(1);
  return FrobeniusAlgebra<S>({"1", "x"}, std::move(mul), std::move(unit), std::move(counit));
}

/// k^n with idempotent basis and eps(e_i) = weights[i]; weights must be nonzero.
template <FieldScalar S>
FrobeniusAlgebra<S> diagonal(const std::vector<S>& weights) {
  const auto n = static_cast<Eigen::Index>(weights.size());
  if (n == 0) throw StructuralError("diagonal algebra needs at least one weight");
  Matrix<S> mul = Matrix<S>::Zero(n, n * n);
  Vector<S> unit(n);
  RowVector<S> counit(n);
  std::vector<std::string> basis;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (ScalarTraits<S>::is_zero(weights[static_cast<std::size_t>(i)])) {
      throw StructuralError("diagonal algebra weight " + std::to_string(i) + " is zero (degenerate)");
    }
    mul(i, i * n + i) = S(1);
    unit(i) = S(1);
    counit(i) = weights[static_cast<std::size_t>(i)];
    basis.push_back("e" + std::to_string(i + 1));
  }
  return FrobeniusAlgebra<S>(std::move(basis), std::move(mul), std::move(unit), std::move(counit));
}

/// Center of the group algebra, basis the conjugacy-class sums, with
/// eps(x) = normalization * (coefficient of the identity in x). The default
/// normalization is 1/|G|.
template <FieldScalar S>
FrobeniusAlgebra<S> group_center(const FiniteGroup& g, std::optional<S> normalization = std::nullopt) {
  const auto classes = g.conjugacy_classes();
  const auto n = static_cast<Eigen::Index>(classes.size());
  std::vector<std::size_t> class_of(g.order());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (auto x : classes[c]) class_of[x] = c;
  }
  // C_i C_j = sum_k c_ijk C_k where c_ijk counts (x, y) in C_i x C_j with xy = z
  // for a fixed z in C_k.
  Matrix<S> mul = Matrix<S>::Zero(n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      std::vector<long long> hits(g.order(), 0);
      for (auto x : classes[static_cast<std::size_t>(i)]) {
        for (auto y : classes[static_cast<std::size_t>(j)]) ++hits[g.multiply(x, y)];
      }
      for (Eigen::Index k = 0; k < n; ++k) {
        mul(k, i * n + j) = S(hits[classes[static_cast<std::size_t>(k)].front()]);
      }
    }
  }
  const S lambda = normalization ? *normalization : S(1) / S(static_cast<long long>(g.order()));
  Vector<S> unit = Vector<S>::Zero(n);
  RowVector<S> counit = RowVector<S>::Zero(n);
  std::vector<std::string> basis;
  for (Eigen::Index c = 0; c < n; ++c) {
    const auto& cls = classes[static_cast<std::size_t>(c)];
    basis.push_back("C_" + g.label(cls.front()));
    if (cls.size() == 1 && cls.front() == g.identity()) {
      unit(c) = S(1);
      counit(c) = lambda;
    }
  }
  return FrobeniusAlgebra<S>(std::move(basis), std::move(mul), std::move(unit), std::move(counit));
}

struct Parameters {
  std::vector<Rational> weights;                  // diagonal
  std::optional<FiniteGroup> group;               // group_center
  std::optional<Rational> normalization;          // group_center
};

/// Dispatch by name: ground_field, dual_numbers, diagonal, group_center.
template <FieldScalar S>
FrobeniusAlgebra<S> by_name(std::string_view name, const Parameters& p = {}) {
  if (name == "ground_field") return ground_field<S>();
  if (name == "dual_numbers") return dual_numbers<S>();
  if (name == "diagonal") {
    std::vector<S> w;
    for (const auto& r : p.weights) w.push_back(ScalarTraits<S>::from_rational(r));
    return diagonal<S>(w);
  }
  if (name == "group_center") {
    if (!p.group) throw StructuralError("group_center needs a group");
    std::optional<S> lambda;
    if (p.normalization) lambda = ScalarTraits<S>::from_rational(*p.normalization);
    return group_center<S>(*p.group, lambda);
  }
  throw StructuralError("unknown library algebra '" + std::string(name) + "'");
}

}  // namespace library

}  // namespace tft
