#pragma once

// Compiles a bordism word into the linear map it defines over a Frobenius
// algebra: layer by layer, each generator acting on its run of strands.

#include "tft/bordism.hpp"
#include "tft/frobenius_algebra.hpp"

namespace tft {

/// The six generator maps of an algebra, computed once.
template <FieldScalar S>
struct GeneratorMaps {
  explicit GeneratorMaps(const FrobeniusAlgebra<S>& a, double tol = kDefaultTolerance)
      : dim(a.dim()),
        swap(swap_map<S>(a.dim(), a.dim())),
        cap(Matrix<S>(a.unit())),
        cup(Matrix<S>(a.counit())),
        pants(a.multiplication()),
        copants(comultiplication_map(a, tol)) {}

  const Matrix<S>& operator()(Generator g) const {
    switch (g) {
      case Generator::Swap: return swap;
      case Generator::Cap: return cap;
      case Generator::Cup: return cup;
      case Generator::Pants: return pants;
      case Generator::Copants: return copants;
      case Generator::Id: break;
    }
    throw std::logic_error("identity has no stored map");
  }

  std::size_t dim;
  Matrix<S> swap, cap, cup, pants, copants;
};

/// Apply one layer to the state. Generators are applied right to left so the
/// offsets of the ones still pending do not move.
template <FieldScalar S>
void apply_layer(StrandState<S>& state, const Layer& layer, const GeneratorMaps<S>& maps) {
  std::vector<std::size_t> offsets;
  std::size_t pos = 0;
  for (auto g : layer) {
    offsets.push_back(pos);
    pos += arity(g).in;
  }
  for (std::size_t i = layer.size(); i-- > 0;) {
    const auto g = layer[i];
    if (g == Generator::Id) continue;
    const auto a = arity(g);
    state.apply(offsets[i], a.in, maps(g), Shape(a.out, maps.dim));
  }
}

/// Matrix of the word: rows index A^(x)out, columns A^(x)in (a 1x1 matrix for
/// closed words).
template <FieldScalar S>
Matrix<S> evaluate(const BordismWord& w, const GeneratorMaps<S>& maps) {
  StrandState<S> state(Shape(w.input_arity(), maps.dim));
  for (const auto& layer : w.layers()) apply_layer(state, layer, maps);
  return std::move(state).release();
}

template <FieldScalar S>
Matrix<S> evaluate(const BordismWord& w, const FrobeniusAlgebra<S>& a, double tol = kDefaultTolerance) {
  return evaluate(w, GeneratorMaps<S>(a, tol));
}

}  // namespace tft
