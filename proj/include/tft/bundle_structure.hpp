#pragma once

// Derived structure of a crossed bundle: holonomy of closed labeled
// surfaces, the Frobenius action of A_e on each fiber, rotation of loops,
// and agreement of fusion/fission towers along all bracketings.

#include <string>
#include <utility>
#include <vector>

#include "tft/crossed_bundle.hpp"
#include "tft/errors.hpp"
#include "tft/labeled.hpp"
#include "tft/surfaces.hpp"

namespace tft {

/// Scalar of a closed labeled surface.
template <FieldScalar S>
S holonomy(const LabeledBordism& b, const CrossedBundle<S>& B) {
  if (!b.closed()) throw StructuralError("holonomy needs a closed surface, got " + to_string(b));
  return evaluate_labeled(b, B)(0, 0);
}

/// Position of a generator: (layer, index within the layer).
using GeneratorAt = std::pair<std::size_t, std::size_t>;

/// Map A_e -> A_e of the surface with the cap at `cap_at` and the cup at
/// `cup_at` cut out. The cap must sit in an earlier layer than the cup.
template <FieldScalar S>
Matrix<S> evaluate_punctured(const LabeledBordism& b, const CrossedBundle<S>& B, GeneratorAt cap_at,
                             GeneratorAt cup_at) {
  if (!b.closed()) throw StructuralError("punctures are cut from closed surfaces only");
  const auto& layers = b.layers();
  auto kind_at = [&](GeneratorAt at) {
    if (at.first >= layers.size() || at.second >= layers[at.first].size()) {
      throw StructuralError("puncture position out of range");
    }
    return layers[at.first][at.second].kind;
  };
  if (kind_at(cap_at) != Generator::Cap || kind_at(cup_at) != Generator::Cup) {
    throw StructuralError("punctures must replace a cap and a cup");
  }
  if (cap_at.first >= cup_at.first) throw StructuralError("the cap must come before the cup");

  const auto de = B.dim(B.group().identity());
  // the incoming puncture strand waits at position 0 until its cap
  StrandState<S> state(Shape{de});
  auto move = [&](std::size_t from, std::size_t to) {
    for (; from < to; ++from) {
      const auto& d = state.dims();
      state.apply(from, 2, swap_map<S>(d[from], d[from + 1]), Shape{d[from + 1], d[from]});
    }
  };
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& layer = layers[l];
    const auto offsets = layer_offsets(layer);
    const std::size_t shift = l <= cap_at.first ? 1 : 0;
    for (std::size_t i = layer.size(); i-- > 0;) {
      const auto& g = layer[i];
      if (GeneratorAt{l, i} == cap_at) {
        move(0, offsets[i]);
        continue;
      }
      const auto at = offsets[i] + (l == cap_at.first && i < cap_at.second ? 0 : shift);
      if (GeneratorAt{l, i} == cup_at) {
        move(at, state.dims().size() - 1);
        continue;
      }
      state.apply(at, g.inputs.size(), generator_map(g, B), fiber_dims(B, g.outputs));
    }
  }
  return std::move(state).release();
}

/// Compares eps M eta for every (cap, cup) puncture pair against the closed
/// evaluation; failures are reported under "puncture_independence".
template <FieldScalar S>
ValidationReport puncture_check(const LabeledBordism& b, const CrossedBundle<S>& B,
                                double tol = kDefaultTolerance) {
  ValidationReport report;
  report.checked("puncture_independence");
  const S closed = holonomy(b, B);
  std::vector<GeneratorAt> caps, cups;
  for (std::size_t l = 0; l < b.layers().size(); ++l) {
    for (std::size_t i = 0; i < b.layers()[l].size(); ++i) {
      const auto k = b.layers()[l][i].kind;
      if (k == Generator::Cap) caps.emplace_back(l, i);
      if (k == Generator::Cup) cups.emplace_back(l, i);
    }
  }
  const Matrix<S> eta = B.unit();
  const Matrix<S> eps = B.counit();
  for (auto cap_at : caps) {
    for (auto cup_at : cups) {
      if (cap_at.first >= cup_at.first) continue;
      const S value = (eps * evaluate_punctured(b, B, cap_at, cup_at) * eta)(0, 0);
      if (!ScalarTraits<S>::equal(value, closed, tol)) {
        report.fail({"puncture_independence",
                     {},
                     {cap_at.first, cap_at.second, cup_at.first, cup_at.second},
                     "cutting at cap in layer " + std::to_string(cap_at.first + 1) + " and cup in layer " +
                         std::to_string(cup_at.first + 1) + " gives " + ScalarTraits<S>::format(value) +
                         ", closed value " + ScalarTraits<S>::format(closed)});
      }
    }
  }
  return report;
}

template <FieldScalar S>
struct FrobeniusAction {
  Matrix<S> action;    // A_e (x) A_g -> A_g
  Matrix<S> coaction;  // A_g -> A_e (x) A_g
  ValidationReport report;
};

/// A_e acting on A_g by fusion and coacting by fission. Checks module (with
/// unit), comodule (with counit), the compatibility square
/// nu_{e,g} mu_{e,g} = (mu_{e,e} (x) id)(id (x) nu_{e,g}), and that
/// transport along P_k intertwines the actions on A_g and A_{kgk^-1}.
template <FieldScalar S>
FrobeniusAction<S> frobenius_action(const CrossedBundle<S>& B, Element g, double tol = kDefaultTolerance) {
  const auto& G = B.group();
  if (g >= G.order()) throw StructuralError("element out of range");
  const auto e = G.identity();
  FrobeniusAction<S> out{B.fusion(e, g), B.fission(e, g), {}};
  auto& report = out.report;
  detail::BundleChecker<S> check(B, tol, report);
  for (const char* axiom : {"module", "comodule", "compatibility_square", "reparametrization"}) {
    report.checked(axiom);
  }
  const Matrix<S> ide = check.id(e);
  const Matrix<S> idg = check.id(g);
  const Matrix<S> eta = B.unit();
  const Matrix<S> eps = B.counit();
  const auto& act = out.action;
  const auto& coact = out.coaction;

  check.expect("module", {g}, act * kron(B.fusion(e, e), idg), act * kron(ide, act),
               "a.(b.x) != (ab).x");
  check.expect("module", {g}, act * kron(eta, idg), idg, "1.x != x");
  check.expect("comodule", {g}, kron(B.fission(e, e), idg) * coact, kron(ide, coact) * coact,
               "coaction is not coassociative");
  check.expect("comodule", {g}, kron(eps, idg) * coact, idg, "(eps (x) id) coaction != id");
  check.expect("compatibility_square", {g}, coact * act, kron(B.fusion(e, e), idg) * kron(ide, coact),
               "coaction(a.x) != (mu (x) id)(a (x) coaction(x))");
  for (Element k = 0; k < G.order(); ++k) {
    const auto cg = G.conjugate(k, g);
    const Matrix<S> pe = B.transport(k, e);
    const Matrix<S> pg = B.transport(k, g);
    check.expect("reparametrization", {k, g}, pg * act, B.fusion(e, cg) * kron(pe, pg),
                 "P_k (a.x) != (P_k a).(P_k x)");
    check.expect("reparametrization", {k, g}, B.fission(e, cg) * pg, kron(pe, pg) * coact,
                 "coaction(P_k x) != (P_k (x) P_k) coaction(x)");
  }
  return out;
}

/// R_j : A_{eval w} -> A_{eval rot_j w}, transport by the inverse of the
/// first j letters. Defined for 0 <= j <= length; j = length is the full turn.
template <FieldScalar S>
Matrix<S> rotation_transport(const LoopWord& w, std::size_t j, const CrossedBundle<S>& B) {
  if (j > w.length()) {
    throw StructuralError("rotation by " + std::to_string(j) + " on a loop of length " +
                          std::to_string(w.length()));
  }
  const auto& G = B.group();
  return B.transport(G.inverse(w.prefix(G, j)), w.eval(G));
}

/// Pants towers fusing gs along every binary tree must agree, and so must
/// copants towers splitting into gs. Reported as higher_associativity and
/// higher_coassociativity against the first tree.
template <FieldScalar S>
ValidationReport nfold_fission_check(const CrossedBundle<S>& B, const std::vector<Element>& gs,
                                     double tol = kDefaultTolerance) {
  if (gs.empty() || gs.size() > 5) throw StructuralError("tower checks take between 1 and 5 labels");
  const auto& G = B.group();
  ValidationReport report;
  report.checked("higher_associativity");
  report.checked("higher_coassociativity");
  const auto trees = binary_trees(gs.size());
  const Matrix<S> fuse0 = evaluate_labeled(pants_tower(G, gs, trees[0]), B);
  const Matrix<S> split0 = evaluate_labeled(copants_tower(G, gs, trees[0]), B);
  for (std::size_t t = 1; t < trees.size(); ++t) {
    const auto name = trees[0].str() + " vs " + trees[t].str();
    if (auto bad = first_mismatch(evaluate_labeled(pants_tower(G, gs, trees[t]), B), fuse0, tol)) {
      report.fail({"higher_associativity", gs,
                   {static_cast<std::size_t>(bad->first), static_cast<std::size_t>(bad->second)},
                   "fusion towers differ: " + name});
    }
    if (auto bad = first_mismatch(evaluate_labeled(copants_tower(G, gs, trees[t]), B), split0, tol)) {
      report.fail({"higher_coassociativity", gs,
                   {static_cast<std::size_t>(bad->first), static_cast<std::size_t>(bad->second)},
                   "fission towers differ: " + name});
    }
  }
  return report;
}

}  // namespace tft
