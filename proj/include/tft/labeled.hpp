#pragma once

// Bordisms in X = BG: bordism words whose circles carry group labels (the
// holonomy of the map to X), and loops as words in the group.
//
// Text form extends the word grammar with bracket annotations:
//   pants[g,h]    inputs g, h; output gh
//   copants[g,h]  outputs g, h; input gh
//   swap[g,h]     inputs g, h
//   id[k]         cylinder conjugating by k (label x becomes k x k^-1)
//   id[k,g]       the same with input label g
//   cap[] cup[]   identity-labelled disks (a bare name works too)
// Unannotated labels are inferred through the surface; ambiguity or
// inconsistency raises LabelError.

#include <string>
#include <string_view>
#include <vector>

#include "tft/bordism.hpp"
#include "tft/errors.hpp"
#include "tft/crossed_bundle.hpp"
#include "tft/group.hpp"

namespace tft {

/// Loop in BG given by a word g_1 ... g_n; the empty word is a constant loop.
struct LoopWord {
  std::vector<Element> letters;

  std::size_t length() const { return letters.size(); }
  Element eval(const FiniteGroup& G) const { return G.product(letters); }
  /// g_{j+1} ... g_n g_1 ... g_j
  LoopWord rotated(std::size_t j) const;
  /// Product of the first j letters.
  Element prefix(const FiniteGroup& G, std::size_t j) const;
  friend bool operator==(const LoopWord&, const LoopWord&) = default;
};

struct LabeledGenerator {
  Generator kind;
  std::vector<Element> inputs;
  std::vector<Element> outputs;
  Element conjugator = 0;  // cylinders only
  friend bool operator==(const LabeledGenerator&, const LabeledGenerator&) = default;
};

using LabeledLayer = std::vector<LabeledGenerator>;

namespace labeled {

LabeledGenerator id(const FiniteGroup& G, Element k, Element g);
inline LabeledGenerator id(const FiniteGroup& G, Element g) { return id(G, G.identity(), g); }
LabeledGenerator swap(Element g, Element h);
LabeledGenerator cap(const FiniteGroup& G);
LabeledGenerator cup(const FiniteGroup& G);
LabeledGenerator pants(const FiniteGroup& G, Element g, Element h);
LabeledGenerator copants(const FiniteGroup& G, Element g, Element h);

}  // namespace labeled

class LabeledBordism {
 public:
  /// Throws ArityError for non-composable layers and LabelError when labels
  /// disagree across a boundary or violate a generator's constraint.
  LabeledBordism(FiniteGroup group, std::vector<LabeledLayer> layers);

  const FiniteGroup& group() const { return group_; }
  const std::vector<LabeledLayer>& layers() const { return layers_; }
  BordismWord shape() const;
  std::vector<Element> input_labels() const;
  std::vector<Element> output_labels() const;
  std::size_t generator_count() const;
  bool closed() const { return input_labels().empty() && output_labels().empty(); }

  friend bool operator==(const LabeledBordism& a, const LabeledBordism& b) {
    return a.group_ == b.group_ && a.layers_ == b.layers_;
  }

 private:
  FiniteGroup group_;
  std::vector<LabeledLayer> layers_;
};

LabeledBordism parse_labeled(std::string_view text, const FiniteGroup& G);
/// Fully annotated text; parse_labeled(to_string(b)) == b.
std::string to_string(const LabeledBordism& b);

/// Sequential composite; labels must match at the interface.
LabeledBordism compose(const LabeledBordism& first, const LabeledBordism& second);
/// Parallel composite, padding the shorter side with plain cylinders.
LabeledBordism tensor(const LabeledBordism& left, const LabeledBordism& right);

template <FieldScalar S>
Shape fiber_dims(const CrossedBundle<S>& B, const std::vector<Element>& labels) {
  Shape s;
  for (auto g : labels) s.push_back(B.dim(g));
  return s;
}

/// The bundle's map for one labeled generator.
template <FieldScalar S>
Matrix<S> generator_map(const LabeledGenerator& g, const CrossedBundle<S>& B) {
  switch (g.kind) {
    case Generator::Id: return B.transport(g.conjugator, g.inputs[0]);
    case Generator::Swap: return swap_map<S>(B.dim(g.inputs[0]), B.dim(g.inputs[1]));
    case Generator::Cap: return B.unit();
    case Generator::Cup: return B.counit();
    case Generator::Pants: return B.fusion(g.inputs[0], g.inputs[1]);
    case Generator::Copants: return B.fission(g.outputs[0], g.outputs[1]);
  }
  throw StructuralError("unknown generator");
}

/// Offsets of each generator's first input strand within its layer.
inline std::vector<std::size_t> layer_offsets(const LabeledLayer& layer) {
  std::vector<std::size_t> offsets;
  std::size_t pos = 0;
  for (const auto& g : layer) {
    offsets.push_back(pos);
    pos += g.inputs.size();
  }
  return offsets;
}

/// Matrix of the labeled surface: columns index the tensor product of the
/// input fibers, rows the output fibers.
template <FieldScalar S>
Matrix<S> evaluate_labeled(const LabeledBordism& b, const CrossedBundle<S>& B) {
  if (!(b.group() == B.group())) throw LabelError("bordism and bundle are over different groups");
  StrandState<S> state(fiber_dims(B, b.input_labels()));
  for (const auto& layer : b.layers()) {
    const auto offsets = layer_offsets(layer);
    for (std::size_t i = layer.size(); i-- > 0;) {
      const auto& g = layer[i];
      state.apply(offsets[i], g.inputs.size(), generator_map(g, B), fiber_dims(B, g.outputs));
    }
  }
  return std::move(state).release();
}

}  // namespace tft
