#pragma once

// Fixtures shared by the unit tests and the acceptance binary.

#include <random>
#include <vector>

#include "tft/crossed_bundle.hpp"
#include "tft/frobenius_algebra.hpp"
#include "tft/rank_one.hpp"
#include "tft/linalg.hpp"

namespace tft::testing {

using Q = Rational;

inline Q random_nonzero(std::mt19937_64& rng, long long bound = 3) {
  for (;;) {
    const long long n = static_cast<long long>(rng() % (2 * bound + 1)) - bound;
    const long long d = 1 + static_cast<long long>(rng() % 3);
    if (n != 0) return Q(n, d);
  }
}

/// k[x]/(x^n); eps(x^(n-1)) nonzero, the other counit values arbitrary.
inline FrobeniusAlgebra<Q> truncated_polynomial(std::size_t n, std::mt19937_64& rng) {
  const auto m = static_cast<Eigen::Index>(n);
  Matrix<Q> mul = Matrix<Q>::Zero(m, m * m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      if (i + j < m) mul(i + j, i * m + j) = Q(1);
    }
  }
  Vector<Q> unit = Vector<Q>::Zero(m);
  unit(0) = Q(1);
  RowVector<Q> counit(m);
  for (Eigen::Index i = 0; i + 1 < m; ++i) counit(i) = Q(static_cast<long long>(rng() % 5) - 2);
  counit(m - 1) = random_nonzero(rng);
  std::vector<std::string> basis;
  for (std::size_t i = 0; i < n; ++i) basis.push_back("x" + std::to_string(i));
  return FrobeniusAlgebra<Q>(basis, mul, unit, counit);
}

inline FrobeniusAlgebra<Q> direct_sum(const FrobeniusAlgebra<Q>& a, const FrobeniusAlgebra<Q>& b) {
  const auto na = static_cast<Eigen::Index>(a.dim());
  const auto nb = static_cast<Eigen::Index>(b.dim());
  const auto n = na + nb;
  Matrix<Q> mul = Matrix<Q>::Zero(n, n * n);
  for (Eigen::Index i = 0; i < na; ++i)
    for (Eigen::Index j = 0; j < na; ++j) mul.block(0, i * n + j, na, 1) = a.multiplication().col(i * na + j);
  for (Eigen::Index i = 0; i < nb; ++i)
    for (Eigen::Index j = 0; j < nb; ++j)
      mul.block(na, (na + i) * n + na + j, nb, 1) = b.multiplication().col(i * nb + j);
  Vector<Q> unit(n);
  unit << a.unit(), b.unit();
  RowVector<Q> counit(n);
  counit << a.counit(), b.counit();
  std::vector<std::string> basis;
  for (const auto& s : a.basis()) basis.push_back("a_" + s);
  for (const auto& s : b.basis()) basis.push_back("b_" + s);
  return FrobeniusAlgebra<Q>(basis, mul, unit, counit);
}

/// The same algebra in the basis given by the columns of p.
inline FrobeniusAlgebra<Q> change_basis(const FrobeniusAlgebra<Q>& a, const Matrix<Q>& p) {
  const Matrix<Q> pinv = *inverse(p);
  return FrobeniusAlgebra<Q>(a.basis(), pinv * a.multiplication() * kron(p, p), pinv * a.unit(),
                             a.counit() * p);
}

/// Random valid commutative Frobenius algebra of dimension 1..max_dim:
/// a direct sum of diagonal and truncated polynomial blocks in a random basis.
inline FrobeniusAlgebra<Q> random_algebra(std::mt19937_64& rng, std::size_t max_dim = 3) {
  const std::size_t n = 1 + rng() % max_dim;
  std::size_t left = n;
  std::optional<FrobeniusAlgebra<Q>> acc;
  while (left > 0) {
    const std::size_t k = 1 + rng() % left;
    auto block = (k == 1 || rng() % 2) ? truncated_polynomial(k, rng)
                                       : library::diagonal<Q>(std::vector<Q>(k, random_nonzero(rng)));
    acc = acc ? direct_sum(*acc, block) : block;
    left -= k;
  }
  const auto m = static_cast<Eigen::Index>(n);
  for (;;) {
    Matrix<Q> p(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j) p(i, j) = Q(static_cast<long long>(rng() % 5) - 2);
    if (inverse(p)) return change_basis(*acc, p);
  }
}


inline FiniteGroup s3() { return FiniteGroup::symmetric(3); }
inline FiniteGroup klein() { return FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)); }

/// S3 acting on {1,2,3,*}: fibers of dimension 4, 2 and 1.
inline CrossedBundle<Q> fixed_point_s3() { return fixed_point_bundle<Q>(s3(), natural_action(s3(), 3, 1)); }

/// Rank-one bundle of the sign cocycle on Z/2 x Z/2 with transgressed transport.
inline CrossedBundle<Q> klein_gerbe() {
  return to_crossed_bundle(from_cocycle<Q>(klein(), klein_sign_cocycle<Q>(klein())));
}

/// Rank-one bundle over S3 gauge equivalent to the trivial one.
inline CrossedBundle<Q> gauged_s3(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Q> beta(6, Q(1));
  for (Element g = 1; g < 6; ++g) beta[g] = random_nonzero(rng);
  return to_crossed_bundle(gauge_transform(ScalarBundle<Q>(s3()), beta));
}

/// Fission nu_{e,g} on the fixed-point bundle replaced, for each
/// transposition g, by delta_x -> delta_{sx} (x) delta_x where s swaps the two
/// points fixed by g. Only the module/comodule compatibility breaks.
inline CrossedBundle<Q> plant_square_violation(CrossedBundle<Q> b) {
  const auto& G = b.group();
  const auto e = G.identity();
  const auto action = natural_action(G, 3, 1);
  for (Element g = 0; g < G.order(); ++g) {
    const auto fix = fixed_points(action, g);
    if (fix.size() != 2) continue;
    const auto de = static_cast<Eigen::Index>(b.dim(e));
    Matrix<Q> nu = Matrix<Q>::Zero(de * 2, 2);
    for (Eigen::Index i = 0; i < 2; ++i) {
      const auto other = static_cast<Eigen::Index>(fix[1 - i]);  // points of A_e are indexed by themselves
      nu(other * 2 + i, i) = Q(1);
    }
    b.set_fission(e, g, nu);
  }
  return b;
}

}  // namespace tft::testing
