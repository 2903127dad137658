#pragma once

// Dense multi-index arrays and the linear-map helpers the evaluators share.
// Linear maps V -> W are Eigen matrices with rows indexing W; a tensor power
// V1 (x) ... (x) Vr is indexed in row-major (first factor most significant)
// order, so composition is the matrix product and (x) is kron().

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "tft/errors.hpp"
#include "tft/scalar.hpp"

namespace tft {

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using RowVector = Eigen::Matrix<S, 1, Eigen::Dynamic>;

using Shape = std::vector<std::size_t>;

inline std::size_t shape_size(std::span<const std::size_t> shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

/// Dense tensor with row-major entries. The empty shape is a scalar.
template <FieldScalar S>
class Tensor {
 public:
  Tensor() : entries_(Vector<S>::Constant(1, S(1))) {}

  Tensor(Shape shape, Vector<S> entries) : shape_(std::move(shape)), entries_(std::move(entries)) {
    for (auto d : shape_) {
      if (d == 0) throw StructuralError("tensor dimensions must be positive");
    }
    if (static_cast<std::size_t>(entries_.size()) != shape_size(shape_)) {
      throw StructuralError("tensor entry count does not match its shape");
    }
  }

  static Tensor scalar(const S& value) { return Tensor({}, Vector<S>::Constant(1, value)); }
  static Tensor zeros(Shape shape) {
    const auto n = static_cast<Eigen::Index>(shape_size(shape));
    return Tensor(std::move(shape), Vector<S>::Zero(n));
  }

  const Shape& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return static_cast<std::size_t>(entries_.size()); }
  const Vector<S>& entries() const { return entries_; }

  std::size_t offset(std::span<const std::size_t> index) const {
    if (index.size() != shape_.size()) throw StructuralError("tensor index has wrong rank");
    std::size_t flat = 0;
    for (std::size_t i = 0; i < index.size(); ++i) {
      if (index[i] >= shape_[i]) throw StructuralError("tensor index out of range");
      flat = flat * shape_[i] + index[i];
    }
    return flat;
  }

  const S& operator()(std::initializer_list<std::size_t> index) const {
    return entries_(static_cast<Eigen::Index>(offset(std::span(index.begin(), index.size()))));
  }
  S& operator()(std::initializer_list<std::size_t> index) {
    return entries_(static_cast<Eigen::Index>(offset(std::span(index.begin(), index.size()))));
  }
  const S& at(std::span<const std::size_t> index) const {
    return entries_(static_cast<Eigen::Index>(offset(index)));
  }

 private:
  Shape shape_;
  Vector<S> entries_;
};

/// Outer product; the shape is the concatenation of the two shapes.
template <FieldScalar S>
Tensor<S> tensor_product(const Tensor<S>& a, const Tensor<S>& b) {
  Shape shape = a.shape();
  shape.insert(shape.end(), b.shape().begin(), b.shape().end());
  const auto nb = static_cast<Eigen::Index>(b.size());
  Vector<S> entries(static_cast<Eigen::Index>(a.size()) * nb);
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(a.size()); ++i) {
    entries.segment(i * nb, nb) = a.entries()(i) * b.entries();
  }
  return Tensor<S>(std::move(shape), std::move(entries));
}

/// Sums over each pair of legs; surviving legs keep their relative order.
template <FieldScalar S>
Tensor<S> contract(const Tensor<S>& a, std::span<const std::pair<std::size_t, std::size_t>> legs) {
  const auto& shape = a.shape();
  std::vector<int> role(shape.size(), -1);  // -1 free, otherwise pair index
  for (std::size_t p = 0; p < legs.size(); ++p) {
    auto [x, y] = legs[p];
    if (x >= shape.size() || y >= shape.size()) throw StructuralError("contracted leg out of range");
    if (x == y || role[x] != -1 || role[y] != -1) throw StructuralError("repeated leg index in contraction");
    if (shape[x] != shape[y]) throw StructuralError("contracted legs have different dimensions");
    role[x] = role[y] = static_cast<int>(p);
  }
  Shape out_shape;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (role[i] == -1) out_shape.push_back(shape[i]);
  }
  auto out = Tensor<S>::zeros(out_shape);
  Vector<S> acc = out.entries();

  std::vector<std::size_t> index(shape.size(), 0);
  for (std::size_t flat = 0; flat < a.size(); ++flat) {
    bool diagonal = true;
    for (const auto& [x, y] : legs) diagonal = diagonal && index[x] == index[y];
    if (diagonal) {
      std::size_t target = 0;
      for (std::size_t i = 0; i < shape.size(); ++i) {
        if (role[i] == -1) target = target * shape[i] + index[i];
      }
      acc(static_cast<Eigen::Index>(target)) += a.entries()(static_cast<Eigen::Index>(flat));
    }
    for (std::size_t i = shape.size(); i-- > 0;) {
      if (++index[i] < shape[i]) break;
      index[i] = 0;
    }
  }
  return Tensor<S>(std::move(out_shape), std::move(acc));
}

template <FieldScalar S>
Tensor<S> contract(const Tensor<S>& a, std::initializer_list<std::pair<std::size_t, std::size_t>> legs) {
  return contract(a, std::span(legs.begin(), legs.size()));
}

template <FieldScalar S>
bool equal(const Tensor<S>& a, const Tensor<S>& b, double tol = kDefaultTolerance) {
  if (a.shape() != b.shape()) return false;
  for (Eigen::Index i = 0; i < a.entries().size(); ++i) {
    if (!ScalarTraits<S>::equal(a.entries()(i), b.entries()(i), tol)) return false;
  }
  return true;
}

/// Kronecker product: the matrix of f (x) g.
template <class DerivedA, class DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using S = typename DerivedA::Scalar;
  Matrix<S> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// First entry where two matrices differ, or nullopt when equal (shape
/// mismatch reports (-1, -1)).
template <class DerivedA, class DerivedB>
std::optional<std::pair<Eigen::Index, Eigen::Index>> first_mismatch(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
    double tol = kDefaultTolerance) {
  using S = typename DerivedA::Scalar;
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::pair<Eigen::Index, Eigen::Index>{-1, -1};
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (!ScalarTraits<S>::equal(a(i, j), b(i, j), tol)) return std::pair{i, j};
    }
  }
  return std::nullopt;
}

template <class DerivedA, class DerivedB>
bool approx_equal(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                  double tol = kDefaultTolerance) {
  return !first_mismatch(a, b, tol).has_value();
}

/// Tensor with legs (inputs..., outputs...) holding the matrix of a map.
template <FieldScalar S>
Tensor<S> map_to_tensor(const Matrix<S>& m, const Shape& in_dims, const Shape& out_dims) {
  if (static_cast<std::size_t>(m.cols()) != shape_size(in_dims) ||
      static_cast<std::size_t>(m.rows()) != shape_size(out_dims)) {
    throw StructuralError("map does not match the given leg dimensions");
  }
  Shape shape = in_dims;
  shape.insert(shape.end(), out_dims.begin(), out_dims.end());
  Vector<S> entries(m.size());
  Eigen::Index k = 0;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) entries(k++) = m(r, c);
  }
  return Tensor<S>(std::move(shape), std::move(entries));
}

/// Inverse of map_to_tensor: the first `input_legs` legs index the domain.
template <FieldScalar S>
Matrix<S> tensor_to_map(const Tensor<S>& t, std::size_t input_legs) {
  if (input_legs > t.rank()) throw StructuralError("more input legs than tensor legs");
  const auto& shape = t.shape();
  const auto cols = shape_size(std::span(shape).first(input_legs));
  const auto rows = shape_size(std::span(shape).subspan(input_legs));
  Matrix<S> m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  Eigen::Index k = 0;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) = t.entries()(k++);
  }
  return m;
}

/// Matrix of the permutation V1 (x) V2 -> V2 (x) V1.
template <FieldScalar S>
Matrix<S> swap_map(std::size_t d1, std::size_t d2) {
  const auto n = static_cast<Eigen::Index>(d1 * d2);
  Matrix<S> m = Matrix<S>::Zero(n, n);
  for (std::size_t i = 0; i < d1; ++i) {
    for (std::size_t j = 0; j < d2; ++j) {
      m(static_cast<Eigen::Index>(j * d1 + i), static_cast<Eigen::Index>(i * d2 + j)) = S(1);
    }
  }
  return m;
}

template <FieldScalar S>
Matrix<S> identity_map(std::size_t d) {
  return Matrix<S>::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
}

template <class Target, class Derived>
Matrix<Target> cast_scalars(const Eigen::MatrixBase<Derived>& m) {
  using Source = typename Derived::Scalar;
  Matrix<Target> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<Source, Target>) {
        out(i, j) = m(i, j);
      } else {
        out(i, j) = ScalarTraits<Target>::from_rational(m(i, j));
      }
    }
  }
  return out;
}

/// A linear map from a fixed domain into a tensor product of strands whose
/// dimensions are tracked, so that an operator can be applied to a run of
/// adjacent strands without materializing identity Kronecker factors.
template <FieldScalar S>
class StrandState {
 public:
  /// Identity on the tensor product of `dims`.
  explicit StrandState(Shape dims) : dims_(std::move(dims)) {
    state_ = identity_map<S>(shape_size(dims_));
  }

  StrandState(Matrix<S> state, Shape dims) : dims_(std::move(dims)), state_(std::move(state)) {
    if (static_cast<std::size_t>(state_.rows()) != shape_size(dims_)) {
      throw StructuralError("strand dimensions do not match the state");
    }
  }

  const Shape& dims() const { return dims_; }
  const Matrix<S>& matrix() const { return state_; }
  Matrix<S> release() && { return std::move(state_); }

  /// Replace strands [offset, offset + in_count) by `out_dims`, acting with `op`
  /// (rows: product of out_dims, cols: product of the replaced dims).
  void apply(std::size_t offset, std::size_t in_count, const Matrix<S>& op, const Shape& out_dims) {
    if (offset + in_count > dims_.size()) throw StructuralError("operator acts beyond the strands");
    const std::size_t pre = shape_size(std::span(dims_).first(offset));
    const std::size_t mid = shape_size(std::span(dims_).subspan(offset, in_count));
    const std::size_t post = shape_size(std::span(dims_).subspan(offset + in_count));
    const std::size_t out_mid = shape_size(out_dims);
    if (static_cast<std::size_t>(op.cols()) != mid || static_cast<std::size_t>(op.rows()) != out_mid) {
      throw StructuralError("operator shape does not match the strands it acts on");
    }
    Matrix<S> next = Matrix<S>::Zero(static_cast<Eigen::Index>(pre * out_mid * post), state_.cols());
    for (std::size_t p = 0; p < pre; ++p) {
      for (std::size_t m = 0; m < mid; ++m) {
        for (std::size_t o = 0; o < out_mid; ++o) {
          const S& c = op(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(m));
          if (structurally_zero(c)) continue;
          for (std::size_t q = 0; q < post; ++q) {
            next.row(static_cast<Eigen::Index>((p * out_mid + o) * post + q)) +=
                c * state_.row(static_cast<Eigen::Index>((p * mid + m) * post + q));
          }
        }
      }
    }
    state_ = std::move(next);
    Shape dims(dims_.begin(), dims_.begin() + static_cast<std::ptrdiff_t>(offset));
    dims.insert(dims.end(), out_dims.begin(), out_dims.end());
    dims.insert(dims.end(), dims_.begin() + static_cast<std::ptrdiff_t>(offset + in_count), dims_.end());
    dims_ = std::move(dims);
  }

 private:
  Shape dims_;
  Matrix<S> state_;
};

}  // namespace tft
