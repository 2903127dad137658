#pragma once

// Frobenius bundles with flat connection over the loop space of BG, in the
// discrete model: a G-graded family of fibers A_g with fusion
// A_g (x) A_h -> A_gh, fission A_gh -> A_g (x) A_h, conjugation transport
// P_k : A_g -> A_{kgk^-1}, and unit/counit on the constant-loop fiber A_e.
//
// All maps are stored as matrices with rows indexing the codomain.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "tft/frobenius_algebra.hpp"
#include "tft/group.hpp"
#include "tft/linalg.hpp"
#include "tft/report.hpp"
#include "tft/tensor.hpp"

namespace tft {

template <FieldScalar S>
class CrossedBundle {
 public:
  /// Fiber dimensions per element (all >= 1). Every map starts at zero.
  CrossedBundle(FiniteGroup group, std::vector<std::size_t> dims) : group_(std::move(group)), dims_(std::move(dims)) {
    const auto m = group_.order();
    if (dims_.size() != m) throw StructuralError("need one fiber dimension per group element");
    for (std::size_t g = 0; g < m; ++g) {
      if (dims_[g] == 0) throw StructuralError("fiber over " + group_.label(g) + " has dimension 0");
    }
    fusion_.resize(m * m);
    fission_.resize(m * m);
    transport_.resize(m * m);
    for (Element g = 0; g < m; ++g) {
      for (Element h = 0; h < m; ++h) {
        const auto gh = group_.multiply(g, h);
        fusion_[g * m + h] = Matrix<S>::Zero(d(gh), d(g) * d(h));
        fission_[g * m + h] = Matrix<S>::Zero(d(g) * d(h), d(gh));
        transport_[g * m + h] = Matrix<S>::Zero(d(group_.conjugate(g, h)), d(h));
      }
    }
    unit_ = Vector<S>::Zero(d(group_.identity()));
    counit_ = RowVector<S>::Zero(d(group_.identity()));
  }

  const FiniteGroup& group() const { return group_; }
  std::size_t dim(Element g) const { return dims_[g]; }
  const std::vector<std::size_t>& dims() const { return dims_; }

  /// mu_{g,h} : A_g (x) A_h -> A_gh
  const Matrix<S>& fusion(Element g, Element h) const { return fusion_[g * group_.order() + h]; }
  /// nu_{g,h} : A_gh -> A_g (x) A_h
  const Matrix<S>& fission(Element g, Element h) const { return fission_[g * group_.order() + h]; }
  /// P_k : A_g -> A_{kgk^-1}
  const Matrix<S>& transport(Element k, Element g) const { return transport_[k * group_.order() + g]; }
  const Vector<S>& unit() const { return unit_; }
  const RowVector<S>& counit() const { return counit_; }

  void set_fusion(Element g, Element h, Matrix<S> m) {
    expect_shape(m, d(group_.multiply(g, h)), d(g) * d(h), "fusion", g, h);
    fusion_[g * group_.order() + h] = std::move(m);
  }
  void set_fission(Element g, Element h, Matrix<S> m) {
    expect_shape(m, d(g) * d(h), d(group_.multiply(g, h)), "fission", g, h);
    fission_[g * group_.order() + h] = std::move(m);
  }
  void set_transport(Element k, Element g, Matrix<S> m) {
    expect_shape(m, d(group_.conjugate(k, g)), d(g), "transport", k, g);
    transport_[k * group_.order() + g] = std::move(m);
  }
  void set_unit(Vector<S> u) {
    if (static_cast<std::size_t>(u.size()) != d(group_.identity())) throw StructuralError("unit has wrong length");
    unit_ = std::move(u);
  }
  void set_counit(RowVector<S> c) {
    if (static_cast<std::size_t>(c.size()) != d(group_.identity())) {
      throw StructuralError("counit has wrong length");
    }
    counit_ = std::move(c);
  }

  /// Pairing eps mu_{e,e} on the constant-loop fiber.
  Matrix<S> pairing() const {
    const auto e = group_.identity();
    const auto n = static_cast<Eigen::Index>(d(e));
    const RowVector<S> flat = counit_ * fusion(e, e);
    Matrix<S> g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) g.row(i) = flat.segment(i * n, n);
    return g;
  }

  template <FieldScalar T>
  CrossedBundle<T> cast() const {
    CrossedBundle<T> out(group_, dims_);
    const auto m = group_.order();
    for (Element g = 0; g < m; ++g) {
      for (Element h = 0; h < m; ++h) {
        out.set_fusion(g, h, cast_scalars<T>(fusion(g, h)));
        out.set_fission(g, h, cast_scalars<T>(fission(g, h)));
        out.set_transport(g, h, cast_scalars<T>(transport(g, h)));
      }
    }
    out.set_unit(cast_scalars<T>(unit_));
    out.set_counit(cast_scalars<T>(counit_));
    return out;
  }

 private:
  std::size_t d(Element g) const { return dims_[g]; }

  void expect_shape(const Matrix<S>& m, std::size_t rows, std::size_t cols, const char* what, Element a,
                    Element b) const {
    if (static_cast<std::size_t>(m.rows()) != rows || static_cast<std::size_t>(m.cols()) != cols) {
      throw StructuralError(std::string(what) + " " + group_.label(a) + " " + group_.label(b) + " must be " +
                            std::to_string(rows) + " x " + std::to_string(cols) + ", got " +
                            std::to_string(m.rows()) + " x " + std::to_string(m.cols()));
    }
  }

  FiniteGroup group_;
  std::vector<std::size_t> dims_;
  std::vector<Matrix<S>> fusion_, fission_, transport_;
  Vector<S> unit_;
  RowVector<S> counit_;
};

/// Description of the first entry where two bundles differ, or nullopt.
template <FieldScalar S>
std::optional<std::string> bundle_difference(const CrossedBundle<S>& a, const CrossedBundle<S>& b,
                                             double tol = kDefaultTolerance) {
  if (!(a.group() == b.group())) return "different groups";
  if (a.dims() != b.dims()) return "different fiber dimensions";
  const auto& G = a.group();
  auto describe = [&](const char* what, Element x, Element y, std::pair<Eigen::Index, Eigen::Index> at) {
    return std::string(what) + " " + G.label(x) + " " + G.label(y) + " differs at (" + std::to_string(at.first) +
           "," + std::to_string(at.second) + ")";
  };
  for (Element g = 0; g < G.order(); ++g) {
    for (Element h = 0; h < G.order(); ++h) {
      if (auto bad = first_mismatch(a.fusion(g, h), b.fusion(g, h), tol)) return describe("fusion", g, h, *bad);
      if (auto bad = first_mismatch(a.fission(g, h), b.fission(g, h), tol)) return describe("fission", g, h, *bad);
      if (auto bad = first_mismatch(a.transport(g, h), b.transport(g, h), tol)) {
        return describe("transport", g, h, *bad);
      }
    }
  }
  if (first_mismatch(a.unit(), b.unit(), tol)) return "units differ";
  if (first_mismatch(a.counit(), b.counit(), tol)) return "counits differ";
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Validation

namespace detail {

template <FieldScalar S>
class BundleChecker {
 public:
  BundleChecker(const CrossedBundle<S>& b, double tol, ValidationReport& report) : b_(b), tol_(tol), report_(report) {}

  void expect(const std::string& axiom, std::vector<std::size_t> grading, const Matrix<S>& lhs,
              const Matrix<S>& rhs, const std::string& detail) {
    if (auto bad = first_mismatch(lhs, rhs, tol_)) {
      report_.fail({axiom, std::move(grading),
                    {static_cast<std::size_t>(bad->first), static_cast<std::size_t>(bad->second)}, detail});
    }
  }

  Matrix<S> id(Element g) const { return identity_map<S>(b_.dim(g)); }

 private:
  const CrossedBundle<S>& b_;
  double tol_;
  ValidationReport& report_;
};

}  // namespace detail

/// Checks, over all gradings: transport_compatibility, associativity,
/// coassociativity, frobenius, unit_transport, unit, counit, nondegeneracy,
/// flatness and twist (P_g acts trivially on A_g). Witness indices are the
/// (row, column) of the first differing entry of the two sides.
template <FieldScalar S>
ValidationReport validate_bundle(const CrossedBundle<S>& b, double tol = kDefaultTolerance) {
  ValidationReport report;
  detail::BundleChecker<S> check(b, tol, report);
  const auto& G = b.group();
  const auto m = G.order();
  const auto e = G.identity();
  auto mu = [&](Element g, Element h) -> const Matrix<S>& { return b.fusion(g, h); };
  auto nu = [&](Element g, Element h) -> const Matrix<S>& { return b.fission(g, h); };
  auto P = [&](Element k, Element g) -> const Matrix<S>& { return b.transport(k, g); };
  auto mul = [&](Element g, Element h) { return G.multiply(g, h); };
  auto conj = [&](Element k, Element g) { return G.conjugate(k, g); };

  for (const char* axiom : {"transport_compatibility", "associativity", "coassociativity", "frobenius",
                            "unit_transport", "unit", "counit", "nondegeneracy", "flatness", "twist"}) {
    report.checked(axiom);
  }

  for (Element k = 0; k < m; ++k) {
    for (Element g = 0; g < m; ++g) {
      for (Element h = 0; h < m; ++h) {
        const auto gh = mul(g, h);
        const auto cg = conj(k, g);
        const auto ch = conj(k, h);
        const Matrix<S> pp = kron(P(k, g), P(k, h));
        check.expect("transport_compatibility", {k, g, h}, P(k, gh) * mu(g, h), mu(cg, ch) * pp,
                     "P_k mu_{g,h} != mu_{kgk^-1,khk^-1} (P_k (x) P_k)");
        check.expect("transport_compatibility", {k, g, h}, nu(cg, ch) * P(k, gh), pp * nu(g, h),
                     "nu_{kgk^-1,khk^-1} P_k != (P_k (x) P_k) nu_{g,h}");
      }
    }
  }

  for (Element g = 0; g < m; ++g) {
    for (Element h = 0; h < m; ++h) {
      for (Element l = 0; l < m; ++l) {
        const auto gh = mul(g, h);
        const auto hl = mul(h, l);
        check.expect("associativity", {g, h, l}, mu(gh, l) * kron(mu(g, h), check.id(l)),
                     mu(g, hl) * kron(check.id(g), mu(h, l)), "mu (mu (x) id) != mu (id (x) mu)");
        check.expect("coassociativity", {g, h, l}, kron(nu(g, h), check.id(l)) * nu(gh, l),
                     kron(check.id(g), nu(h, l)) * nu(g, hl), "(nu (x) id) nu != (id (x) nu) nu");
        check.expect("frobenius", {g, h, l}, nu(g, hl) * mu(gh, l),
                     kron(check.id(g), mu(h, l)) * kron(nu(g, h), check.id(l)),
                     "nu_{g,hl} mu_{gh,l} != (id (x) mu_{h,l})(nu_{g,h} (x) id)");
        check.expect("frobenius", {g, h, l}, nu(gh, l) * mu(g, hl),
                     kron(mu(g, h), check.id(l)) * kron(check.id(g), nu(h, l)),
                     "nu_{gh,l} mu_{g,hl} != (mu_{g,h} (x) id)(id (x) nu_{h,l})");
      }
    }
  }

  const Matrix<S> eta = b.unit();
  const Matrix<S> eps = b.counit();
  for (Element k = 0; k < m; ++k) {
    check.expect("unit_transport", {k}, P(k, e) * eta, eta, "P_k eta != eta");
    check.expect("unit_transport", {k}, eps * P(k, e), eps, "eps P_k != eps");
  }
  for (Element g = 0; g < m; ++g) {
    check.expect("unit", {g}, mu(g, e) * kron(check.id(g), eta), check.id(g), "mu_{g,e}(a (x) eta) != a");
    check.expect("unit", {g}, mu(e, g) * kron(eta, check.id(g)), check.id(g), "mu_{e,g}(eta (x) a) != a");
    check.expect("counit", {g}, kron(check.id(g), eps) * nu(g, e), check.id(g), "(id (x) eps) nu_{g,e} != id");
    check.expect("counit", {g}, kron(eps, check.id(g)) * nu(e, g), check.id(g), "(eps (x) id) nu_{e,g} != id");
  }

  if (!inverse(b.pairing(), tol)) {
    report.fail({"nondegeneracy", {e}, {}, "eps mu_{e,e} is singular on the constant-loop fiber"});
  }

  for (Element g = 0; g < m; ++g) {
    check.expect("flatness", {e, g}, P(e, g), check.id(g), "P_e != id");
    for (Element k = 0; k < m; ++k) {
      for (Element l = 0; l < m; ++l) {
        check.expect("flatness", {k, l, g}, P(k, conj(l, g)) * P(l, g), P(mul(k, l), g), "P_k P_l != P_kl");
      }
    }
    check.expect("twist", {g}, P(g, g), check.id(g), "P_g acts nontrivially on A_g");
  }
  return report;
}

// ---------------------------------------------------------------------------
// Fixtures

/// One-dimensional fibers, every structure scalar 1.
template <FieldScalar S>
CrossedBundle<S> from_group_algebra(const FiniteGroup& G) {
  CrossedBundle<S> b(G, std::vector<std::size_t>(G.order(), 1));
  const Matrix<S> one = Matrix<S>::Constant(1, 1, S(1));
  for (Element g = 0; g < G.order(); ++g) {
    for (Element h = 0; h < G.order(); ++h) {
      b.set_fusion(g, h, one);
      b.set_fission(g, h, one);
      b.set_transport(g, h, one);
    }
  }
  b.set_unit(Vector<S>::Constant(1, S(1)));
  b.set_counit(RowVector<S>::Constant(1, S(1)));
  return b;
}

/// A Frobenius algebra as a bundle over the trivial group: fission is the
/// comultiplication, transport the identity.
template <FieldScalar S>
CrossedBundle<S> from_frobenius_algebra(const FrobeniusAlgebra<S>& a, double tol = kDefaultTolerance) {
  CrossedBundle<S> b(FiniteGroup::trivial(), {a.dim()});
  b.set_fusion(0, 0, a.multiplication());
  b.set_fission(0, 0, comultiplication_map(a, tol));
  b.set_transport(0, 0, identity_map<S>(a.dim()));
  b.set_unit(a.unit());
  b.set_counit(a.counit());
  return b;
}

/// Points of a G-set fixed by g, ascending.
inline std::vector<std::size_t> fixed_points(const std::vector<std::vector<std::size_t>>& action, Element g) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < action[g].size(); ++x) {
    if (action[g][x] == x) out.push_back(x);
  }
  return out;
}

/// Functions on fixed-point sets of a G-set: A_g = k[X^g] with basis delta_x,
/// pointwise product on X^g n X^h, diagonal fission, (P_k f)(x) = f(k^-1 x),
/// eta = 1 and eps = sum over X. Every element needs a fixed point.
template <FieldScalar S>
CrossedBundle<S> fixed_point_bundle(const FiniteGroup& G, const std::vector<std::vector<std::size_t>>& action) {
  check_action(G, action);
  const auto m = G.order();
  std::vector<std::vector<std::size_t>> fix(m);
  std::vector<std::size_t> dims(m);
  for (Element g = 0; g < m; ++g) {
    fix[g] = fixed_points(action, g);
    if (fix[g].empty()) throw StructuralError("element " + G.label(g) + " has no fixed point");
    dims[g] = fix[g].size();
  }
  auto pos = [&](Element g, std::size_t x) -> std::optional<Eigen::Index> {
    auto it = std::find(fix[g].begin(), fix[g].end(), x);
    if (it == fix[g].end()) return std::nullopt;
    return static_cast<Eigen::Index>(it - fix[g].begin());
  };
  CrossedBundle<S> b(G, dims);
  for (Element g = 0; g < m; ++g) {
    for (Element h = 0; h < m; ++h) {
      const auto gh = G.multiply(g, h);
      const auto dh = static_cast<Eigen::Index>(dims[h]);
      Matrix<S> mu = Matrix<S>::Zero(static_cast<Eigen::Index>(dims[gh]), static_cast<Eigen::Index>(dims[g]) * dh);
      Matrix<S> nu = Matrix<S>::Zero(static_cast<Eigen::Index>(dims[g]) * dh, static_cast<Eigen::Index>(dims[gh]));
      for (auto x : fix[g]) {
        auto i = pos(g, x);
        auto j = pos(h, x);
        auto k = pos(gh, x);
        if (i && j && k) {
          mu(*k, *i * dh + *j) = S(1);
          nu(*i * dh + *j, *k) = S(1);
        }
      }
      b.set_fusion(g, h, std::move(mu));
      b.set_fission(g, h, std::move(nu));

      // P_g on A_h sends delta_y to delta_{g y}
      const auto target = G.conjugate(g, h);
      Matrix<S> p = Matrix<S>::Zero(static_cast<Eigen::Index>(dims[target]), dh);
      for (auto y : fix[h]) p(*pos(target, action[g][y]), *pos(h, y)) = S(1);
      b.set_transport(g, h, std::move(p));
    }
  }
  const auto e = G.identity();
  b.set_unit(Vector<S>::Constant(static_cast<Eigen::Index>(dims[e]), S(1)));
  b.set_counit(RowVector<S>::Constant(static_cast<Eigen::Index>(dims[e]), S(1)));
  return b;
}

/// Copy of b with every fission recomputed from fusion and counit:
/// nu_{g,h} = (mu_{gh,h^-1} (x) id)(id (x) Omega_h), where Omega_h in
/// A_{h^-1} (x) A_h is the copairing of eps mu_{h,h^-1}. Throws
/// DegenerateError when some graded pairing is singular.
template <FieldScalar S>
CrossedBundle<S> with_derived_fission(const CrossedBundle<S>& b, double tol = kDefaultTolerance) {
  const auto& G = b.group();
  CrossedBundle<S> out = b;
  for (Element h = 0; h < G.order(); ++h) {
    const auto hi = G.inverse(h);
    const auto dh = static_cast<Eigen::Index>(b.dim(h));
    const auto dhi = static_cast<Eigen::Index>(b.dim(hi));
    // N(a, i) = eps mu_{h,h^-1}(e_a (x) f_i)
    const RowVector<S> flat = b.counit() * b.fusion(h, hi);
    Matrix<S> n(dh, dhi);
    for (Eigen::Index a = 0; a < dh; ++a) n.row(a) = flat.segment(a * dhi, dhi);
    auto c = inverse(n, tol);
    if (!c) throw DegenerateError("pairing between A_" + G.label(h) + " and A_" + G.label(hi) + " is singular");
    Vector<S> omega(dhi * dh);
    for (Eigen::Index i = 0; i < dhi; ++i) omega.segment(i * dh, dh) = c->row(i).transpose();
    for (Element g = 0; g < G.order(); ++g) {
      const auto gh = G.multiply(g, h);
      out.set_fission(g, h, kron(b.fusion(gh, hi), identity_map<S>(b.dim(h))) *
                                kron(identity_map<S>(b.dim(gh)), Matrix<S>(omega)));
    }
  }
  return out;
}

}  // namespace tft
