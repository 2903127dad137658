#include "tft/reconstruction.hpp"

namespace tft {

namespace {

constexpr Generator kKinds[] = {Generator::Cap,   Generator::Id,   Generator::Cup,
                                Generator::Pants, Generator::Swap, Generator::Copants};

// Unlabeled words with at most `budget` generators.
struct ShapeEnumerator {
  std::size_t budget;
  std::vector<std::vector<Layer>> out;
  std::vector<Layer> word;

  void grow(std::size_t strands, std::size_t used) {
    if (used >= budget) return;
    Layer layer;
    fill(strands, 0, 0, used, layer);
  }

  void fill(std::size_t strands, std::size_t pos, std::size_t produced, std::size_t used, Layer& layer) {
    if (pos == strands && !layer.empty()) {
      word.push_back(layer);
      out.push_back(word);
      grow(produced, used + layer.size());
      word.pop_back();
    }
    if (used + layer.size() >= budget) return;
    for (auto k : kKinds) {
      const auto a = arity(k);
      if (pos + a.in > strands) continue;
      layer.push_back(k);
      fill(strands, pos + a.in, produced + a.out, used, layer);
      layer.pop_back();
    }
  }
};

// Every labelling of one shape.
struct Labeler {
  const FiniteGroup& G;
  const std::vector<Layer>& shape;
  std::vector<LabeledBordism>& out;
  std::vector<LabeledLayer> word;

  void layer(std::size_t t, std::size_t i, std::size_t pos, const std::vector<Element>& labels,
             std::vector<Element>& next, LabeledLayer& current) {
    if (t == shape.size()) {
      out.emplace_back(G, word);
      return;
    }
    if (i == shape[t].size()) {
      word.push_back(current);
      LabeledLayer fresh;
      std::vector<Element> after;
      layer(t + 1, 0, 0, next, after, fresh);
      word.pop_back();
      return;
    }
    auto take = [&](LabeledGenerator g) {
      const auto consumed = g.inputs.size();
      const auto produced = g.outputs.size();
      next.insert(next.end(), g.outputs.begin(), g.outputs.end());
      current.push_back(std::move(g));
      layer(t, i + 1, pos + consumed, labels, next, current);
      current.pop_back();
      next.resize(next.size() - produced);
    };
    const auto e = G.identity();
    switch (shape[t][i]) {
      case Generator::Cap: take(labeled::cap(G)); break;
      case Generator::Cup:
        if (labels[pos] == e) take(labeled::cup(G));
        break;
      case Generator::Id:
        for (Element k = 0; k < G.order(); ++k) take(labeled::id(G, k, labels[pos]));
        break;
      case Generator::Copants:
        for (Element a = 0; a < G.order(); ++a) {
          take(labeled::copants(G, a, G.multiply(G.inverse(a), labels[pos])));
        }
        break;
      case Generator::Pants: take(labeled::pants(G, labels[pos], labels[pos + 1])); break;
      case Generator::Swap: take(labeled::swap(labels[pos], labels[pos + 1])); break;
    }
  }
};

}  // namespace

std::vector<LabeledBordism> enumerate_labeled_words(const FiniteGroup& G, std::size_t max_generators) {
  ShapeEnumerator shapes{max_generators, {}, {}};
  for (std::size_t n = 0; n <= 2 * max_generators; ++n) shapes.grow(n, 0);

  std::vector<LabeledBordism> out;
  for (const auto& shape : shapes.out) {
    if (topological_type(BordismWord(shape)).components.size() != 1) continue;
    const std::size_t n = BordismWord(shape).arity().in;
    std::vector<Element> labels(n, 0);
    for (;;) {
      Labeler lab{G, shape, out, {}};
      std::vector<Element> next;
      LabeledLayer current;
      lab.layer(0, 0, 0, labels, next, current);
      std::size_t i = 0;
      while (i < n && ++labels[i] == G.order()) labels[i++] = 0;
      if (i == n) break;
    }
  }
  return out;
}

}  // namespace tft
