#pragma once

// From a field theory back to bundle data: an oracle evaluates labeled
// bordisms, and its values on single generators give fusion, fission,
// transport, unit and counit. roundtrip_check closes the loop against the
// evaluator of a given bundle.

#include <functional>
#include <string>
#include <vector>

#include "tft/bundle_structure.hpp"
#include "tft/crossed_bundle.hpp"
#include "tft/errors.hpp"
#include "tft/labeled.hpp"
#include "tft/surfaces.hpp"

namespace tft {

template <FieldScalar S>
struct TftOracle {
  FiniteGroup group;
  std::vector<std::size_t> dims;
  std::function<Matrix<S>(const LabeledBordism&)> evaluate;
};

template <FieldScalar S>
TftOracle<S> oracle_from_bundle(CrossedBundle<S> B) {
  auto group = B.group();
  auto dims = B.dims();
  return {std::move(group), std::move(dims),
          [B = std::move(B)](const LabeledBordism& b) { return evaluate_labeled(b, B); }};
}

/// Connected labeled words with at most `max_generators` generators
/// (cylinders count), over every labelling: all input labels, conjugators
/// and fission splits. Disconnected words are tensor products of these.
std::vector<LabeledBordism> enumerate_labeled_words(const FiniteGroup& G, std::size_t max_generators);

/// Reads the bundle off single-generator surfaces after checking that the
/// oracle preserves identities, tensor products of cylinders and
/// composition of cylinders. Throws ExtractionError naming the failed
/// property (identity_preserving, monoidal, decomposition, shape).
template <FieldScalar S>
CrossedBundle<S> tft_to_bundle(const TftOracle<S>& E, const FiniteGroup& G, double tol = kDefaultTolerance) {
  using namespace labeled;
  if (!(E.group == G)) throw ExtractionError("shape", "oracle is defined over a different group");
  const auto m = G.order();
  auto value = [&](const std::vector<LabeledLayer>& layers) {
    LabeledBordism b(G, layers);
    Matrix<S> v = E.evaluate(b);
    std::size_t rows = 1, cols = 1;
    for (auto g : b.output_labels()) rows *= E.dims.at(g);
    for (auto g : b.input_labels()) cols *= E.dims.at(g);
    if (static_cast<std::size_t>(v.rows()) != rows || static_cast<std::size_t>(v.cols()) != cols) {
      throw ExtractionError("shape", to_string(b) + " has a " + std::to_string(v.rows()) + " x " +
                                         std::to_string(v.cols()) + " value, expected " + std::to_string(rows) +
                                         " x " + std::to_string(cols));
    }
    return v;
  };
  auto expect = [&](const char* axiom, const Matrix<S>& lhs, const Matrix<S>& rhs, const std::string& what) {
    if (auto bad = first_mismatch(lhs, rhs, tol)) {
      throw ExtractionError(axiom, what + " (entry " + std::to_string(bad->first) + "," +
                                       std::to_string(bad->second) + ")");
    }
  };

  if (E.dims.size() != m) throw ExtractionError("shape", "oracle needs one fiber dimension per element");
  CrossedBundle<S> B(G, E.dims);
  for (Element g = 0; g < m; ++g) {
    expect("identity_preserving", value({{id(G, g)}}), identity_map<S>(E.dims[g]),
           "the plain cylinder over " + G.label(g) + " is not the identity");
  }
  for (Element g = 0; g < m; ++g) {
    for (Element h = 0; h < m; ++h) {
      expect("monoidal", value({{id(G, g), id(G, h)}}), identity_map<S>(E.dims[g] * E.dims[h]),
             "two parallel cylinders over " + G.label(g) + ", " + G.label(h) + " are not the identity");
    }
  }
  for (Element k = 0; k < m; ++k) {
    for (Element g = 0; g < m; ++g) B.set_transport(k, g, value({{id(G, k, g)}}));
  }
  for (Element k = 0; k < m; ++k) {
    for (Element l = 0; l < m; ++l) {
      for (Element g = 0; g < m; ++g) {
        const auto lg = G.conjugate(l, g);
        expect("decomposition", value({{id(G, l, g)}, {id(G, k, lg)}}), B.transport(k, lg) * B.transport(l, g),
               "cylinders conjugating by " + G.label(l) + " then " + G.label(k) + " over " + G.label(g) +
                   " do not compose");
      }
    }
  }
  for (Element g = 0; g < m; ++g) {
    for (Element h = 0; h < m; ++h) {
      B.set_fusion(g, h, value({{pants(G, g, h)}}));
      B.set_fission(g, h, value({{copants(G, g, h)}}));
    }
  }
  B.set_unit(value({{cap(G)}}).col(0));
  B.set_counit(value({{cup(G)}}).row(0));
  return B;
}

/// bundle_equality: tft_to_bundle of B's evaluator gives back B.
/// word_agreement: the rebuilt bundle evaluates every test word like B.
/// tower_agreement: fusion and fission towers over every 4 labels agree
/// across bracketings, i.e. the evaluator is independent of the
/// decomposition of the 4-to-1 surface.
template <FieldScalar S>
ValidationReport roundtrip_check(const CrossedBundle<S>& B, const std::vector<LabeledBordism>& words,
                                 double tol = kDefaultTolerance) {
  ValidationReport report;
  for (const char* axiom : {"bundle_equality", "word_agreement", "tower_agreement"}) report.checked(axiom);
  const auto& G = B.group();
  const auto rebuilt = tft_to_bundle(oracle_from_bundle(B), G, tol);
  if (auto diff = bundle_difference(rebuilt, B, tol)) report.fail({"bundle_equality", {}, {}, *diff});

  for (const auto& w : words) {
    if (auto bad = first_mismatch(evaluate_labeled(w, rebuilt), evaluate_labeled(w, B), tol)) {
      report.fail({"word_agreement",
                   {},
                   {static_cast<std::size_t>(bad->first), static_cast<std::size_t>(bad->second)},
                   to_string(w)});
    }
  }

  const auto m = G.order();
  for (Element a = 0; a < m; ++a) {
    for (Element b = 0; b < m; ++b) {
      for (Element c = 0; c < m; ++c) {
        for (Element d = 0; d < m; ++d) {
          auto towers = nfold_fission_check(rebuilt, {a, b, c, d}, tol);
          for (const auto& v : towers.violations()) {
            report.fail({"tower_agreement", v.grading, v.index, v.axiom + ": " + v.detail});
          }
        }
      }
    }
  }
  return report;
}

}  // namespace tft
