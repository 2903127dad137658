#pragma once

// Rank-one crossed bundles: every fiber is the ground field, so the whole
// structure is a fusion scalar theta(g,h), a transport scalar tau(k,g) and
// the counit value. Associativity of fusion is the 2-cocycle identity.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tft/bundle_structure.hpp"
#include "tft/crossed_bundle.hpp"
#include "tft/errors.hpp"
#include "tft/surfaces.hpp"

namespace tft {

template <FieldScalar S>
class ScalarBundle {
 public:
  /// theta = tau = 1, counit 1.
  explicit ScalarBundle(FiniteGroup group)
      : group_(std::move(group)),
        theta_(group_.order() * group_.order(), S(1)),
        tau_(group_.order() * group_.order(), S(1)) {}

  const FiniteGroup& group() const { return group_; }
  const S& theta(Element g, Element h) const { return theta_[g * group_.order() + h]; }
  const S& tau(Element k, Element g) const { return tau_[k * group_.order() + g]; }
  const S& counit() const { return counit_; }

  void set_theta(Element g, Element h, S v) { theta_.at(g * group_.order() + h) = std::move(v); }
  void set_tau(Element k, Element g, S v) { tau_.at(k * group_.order() + g) = std::move(v); }
  void set_counit(S v) { counit_ = std::move(v); }

  /// Fission scalar forced by fusion and counit (the graded pairing on
  /// one-dimensional fibers is the number eps theta(h, h^-1)).
  S nu(Element g, Element h) const {
    const auto hi = group_.inverse(h);
    return theta(group_.multiply(g, h), hi) / (counit_ * theta(h, hi));
  }

 private:
  FiniteGroup group_;
  std::vector<S> theta_, tau_;
  S counit_ = S(1);
};

/// Transport forced by theta: tau(k,g) = theta(k,g) / theta(kgk^-1, k).
template <FieldScalar S>
ScalarBundle<S> from_cocycle(const FiniteGroup& G, const std::vector<std::vector<S>>& theta) {
  ScalarBundle<S> b(G);
  for (Element g = 0; g < G.order(); ++g) {
    for (Element h = 0; h < G.order(); ++h) b.set_theta(g, h, theta.at(g).at(h));
  }
  for (Element k = 0; k < G.order(); ++k) {
    for (Element g = 0; g < G.order(); ++g) b.set_tau(k, g, b.theta(k, g) / b.theta(G.conjugate(k, g), k));
  }
  return b;
}

/// theta((a1,a2),(b1,b2)) = (-1)^(a2 b1) on Z/2 x Z/2.
template <FieldScalar S>
std::vector<std::vector<S>> klein_sign_cocycle(const FiniteGroup& klein) {
  // direct_product(cyclic(2), cyclic(2)) labels elements "a1_a2"
  if (klein.order() != 4 || klein.label(0).size() != 3) throw StructuralError("expected Z/2 x Z/2 with pair labels");
  std::vector<std::vector<S>> theta(klein.order(), std::vector<S>(klein.order(), S(1)));
  auto part = [&](Element x, std::size_t i) { return klein.label(x).at(i == 0 ? 0 : 2) == '1'; };
  for (Element g = 0; g < klein.order(); ++g) {
    for (Element h = 0; h < klein.order(); ++h) {
      if (part(g, 1) && part(h, 0)) theta[g][h] = S(-1);
    }
  }
  return theta;
}

/// Multiplies by the coboundary of beta (beta(e) = 1): theta' = theta beta(g)
/// beta(h) / beta(gh), tau'(k,g) = tau beta(g) / beta(kgk^-1).
template <FieldScalar S>
ScalarBundle<S> gauge_transform(const ScalarBundle<S>& b, const std::vector<S>& beta) {
  const auto& G = b.group();
  if (beta.size() != G.order()) throw StructuralError("need one gauge value per element");
  for (const auto& x : beta) {
    if (ScalarTraits<S>::is_zero(x)) throw StructuralError("gauge values must be nonzero");
  }
  ScalarBundle<S> out = b;
  for (Element g = 0; g < G.order(); ++g) {
    for (Element h = 0; h < G.order(); ++h) {
      out.set_theta(g, h, b.theta(g, h) * beta[g] * beta[h] / beta[G.multiply(g, h)]);
      out.set_tau(g, h, b.tau(g, h) * beta[h] / beta[G.conjugate(g, h)]);
    }
  }
  return out;
}

template <FieldScalar S>
CrossedBundle<S> to_crossed_bundle(const ScalarBundle<S>& b) {
  const auto& G = b.group();
  CrossedBundle<S> out(G, std::vector<std::size_t>(G.order(), 1));
  auto one_by_one = [](const S& x) { return Matrix<S>::Constant(1, 1, x); };
  for (Element g = 0; g < G.order(); ++g) {
    for (Element h = 0; h < G.order(); ++h) {
      out.set_fusion(g, h, one_by_one(b.theta(g, h)));
      out.set_fission(g, h, one_by_one(b.nu(g, h)));
      out.set_transport(g, h, one_by_one(b.tau(g, h)));
    }
  }
  out.set_unit(Vector<S>::Constant(1, S(1)));
  out.set_counit(RowVector<S>::Constant(1, b.counit()));
  return out;
}

/// Families: cocycle, normalization, transport_compatibility, flatness,
/// twist. Throws StructuralError on a zero scalar.
template <FieldScalar S>
ValidationReport check_cocycle(const ScalarBundle<S>& b, double tol = kDefaultTolerance) {
  const auto& G = b.group();
  const auto m = G.order();
  const auto e = G.identity();
  auto fmt = [](const S& x) { return ScalarTraits<S>::format(x); };
  if (ScalarTraits<S>::is_zero(b.counit(), tol)) throw StructuralError("counit is zero");
  for (Element g = 0; g < m; ++g) {
    for (Element h = 0; h < m; ++h) {
      if (ScalarTraits<S>::is_zero(b.theta(g, h), tol)) {
        throw StructuralError("theta(" + G.label(g) + "," + G.label(h) + ") is zero");
      }
      if (ScalarTraits<S>::is_zero(b.tau(g, h), tol)) {
        throw StructuralError("tau(" + G.label(g) + "," + G.label(h) + ") is zero");
      }
    }
  }
  ValidationReport report;
  for (const char* axiom : {"cocycle", "normalization", "transport_compatibility", "flatness", "twist"}) {
    report.checked(axiom);
  }
  auto expect = [&](const char* axiom, std::vector<std::size_t> grading, const S& lhs, const S& rhs,
                    const std::string& what) {
    if (!ScalarTraits<S>::equal(lhs, rhs, tol)) {
      report.fail({axiom, std::move(grading), {}, what + ": " + fmt(lhs) + " != " + fmt(rhs)});
    }
  };

  for (Element g = 0; g < m; ++g) {
    for (Element h = 0; h < m; ++h) {
      for (Element k = 0; k < m; ++k) {
        expect("cocycle", {g, h, k}, b.theta(g, h) * b.theta(G.multiply(g, h), k),
               b.theta(h, k) * b.theta(g, G.multiply(h, k)), "theta(g,h) theta(gh,k) vs theta(h,k) theta(g,hk)");
      }
    }
  }

  const S c = b.theta(e, e);
  const std::string hint = ScalarTraits<S>::equal(c, S(1), tol)
                               ? std::string()
                               : "; dividing theta by the constant coboundary beta = " + fmt(c) + " normalizes it";
  for (Element g = 0; g < m; ++g) {
    expect("normalization", {g, e}, b.theta(g, e), S(1), "theta(g,e) must be 1" + hint);
    expect("normalization", {e, g}, b.theta(e, g), S(1), "theta(e,g) must be 1" + hint);
  }

  for (Element k = 0; k < m; ++k) {
    for (Element g = 0; g < m; ++g) {
      for (Element h = 0; h < m; ++h) {
        expect("transport_compatibility", {k, g, h},
               b.tau(k, g) * b.tau(k, h) * b.theta(G.conjugate(k, g), G.conjugate(k, h)),
               b.tau(k, G.multiply(g, h)) * b.theta(g, h), "tau(k,g) tau(k,h) theta(g',h') vs tau(k,gh) theta(g,h)");
      }
    }
  }

  for (Element g = 0; g < m; ++g) {
    expect("flatness", {e, g}, b.tau(e, g), S(1), "tau(e,g) must be 1");
    for (Element k = 0; k < m; ++k) {
      for (Element l = 0; l < m; ++l) {
        expect("flatness", {k, l, g}, b.tau(G.multiply(k, l), g), b.tau(k, G.conjugate(l, g)) * b.tau(l, g),
               "tau(kl,g) vs tau(k,lgl^-1) tau(l,g)");
      }
    }
    expect("twist", {g}, b.tau(g, g), S(1), "tau(g,g) must be 1");
  }
  return report;
}

/// Associativity of the fusion maps between loops 1..4: with x = g1 g2^-1,
/// y = g2 g3^-1, z = g3 g4^-1 (g_i the evaluations), lambda_134 lambda_123
/// = theta(x,y) theta(xy,z) must equal lambda_124 lambda_234 =
/// theta(y,z) theta(x,yz).
template <FieldScalar S>
ValidationReport fusion_lambda_check(const ScalarBundle<S>& b, const std::vector<LoopWord>& words,
                                     double tol = kDefaultTolerance) {
  if (words.size() != 4) throw StructuralError("fusion associativity takes four loops");
  const auto& G = b.group();
  std::vector<Element> g;
  for (const auto& w : words) g.push_back(w.eval(G));
  auto quotient = [&](std::size_t i, std::size_t j) { return G.multiply(g[i], G.inverse(g[j])); };
  const auto x = quotient(0, 1);
  const auto y = quotient(1, 2);
  const auto z = quotient(2, 3);
  const S lhs = b.theta(x, y) * b.theta(G.multiply(x, y), z);
  const S rhs = b.theta(y, z) * b.theta(x, G.multiply(y, z));
  ValidationReport report;
  report.checked("lambda_associativity");
  if (!ScalarTraits<S>::equal(lhs, rhs, tol)) {
    report.fail({"lambda_associativity",
                 {x, y, z},
                 {},
                 "lambda_134 lambda_123 = " + ScalarTraits<S>::format(lhs) + " but lambda_124 lambda_234 = " +
                     ScalarTraits<S>::format(rhs)});
  }
  return report;
}

/// Product of scalars along the handle chain of closed_surface:
/// eps * prod_i nu(a_i, a_i^-1 c_i) tau(b_i, a_i) theta(b_i a_i b_i^-1, a_i^-1 c_i)
/// with c_1 = e and c_{i+1} = [b_i, a_i] c_i.
template <FieldScalar S>
S closed_form_holonomy(const ScalarBundle<S>& b, const SurfaceLabels& labels) {
  const auto& G = b.group();
  check_surface_labels(G, labels);
  S value = b.counit();
  Element c = G.identity();
  for (auto [a, x] : labels.handles) {
    const auto rest = G.multiply(G.inverse(a), c);
    value = value * b.nu(a, rest) * b.tau(x, a) * b.theta(G.conjugate(x, a), rest);
    c = G.multiply(G.commutator(x, a), c);
  }
  return value;
}

template <FieldScalar S>
struct GerbeHolonomy {
  S evaluator;    // generic labeled evaluation of the rank-one bundle
  S closed_form;  // closed_form_holonomy
  bool agree;
};

template <FieldScalar S>
GerbeHolonomy<S> gerbe_holonomy(const ScalarBundle<S>& b, const SurfaceLabels& labels,
                                double tol = kDefaultTolerance) {
  const S general = holonomy(closed_surface(b.group(), labels), to_crossed_bundle(b));
  const S closed = closed_form_holonomy(b, labels);
  return {general, closed, ScalarTraits<S>::equal(general, closed, tol)};
}

}  // namespace tft
