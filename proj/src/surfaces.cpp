#include "tft/surfaces.hpp"

#include <set>

#include "tft/errors.hpp"

namespace tft {

void check_surface_labels(const FiniteGroup& G, const SurfaceLabels& labels) {
  Element acc = G.identity();
  for (auto [a, b] : labels.handles) {
    if (a >= G.order() || b >= G.order()) throw LabelError("surface label out of range");
    acc = G.multiply(acc, G.commutator(a, b));
  }
  if (acc != G.identity()) {
    throw LabelError("product of commutators is " + G.label(acc) + ", not the identity");
  }
}

namespace {

using namespace labeled;

struct Chain {
  const FiniteGroup& G;
  std::vector<LabeledLayer> layers;
  Element c;

  explicit Chain(const FiniteGroup& g) : G(g), c(g.identity()) { layers.push_back({cap(G)}); }

  void handle(Element a, Element b) {
    const auto rest = G.multiply(G.inverse(a), c);
    layers.push_back({copants(G, a, rest)});
    layers.push_back({id(G, b, a), id(G, rest)});
    layers.push_back({pants(G, G.conjugate(b, a), rest)});
    c = G.multiply(G.commutator(b, a), c);
  }

  LabeledBordism close() {
    layers.push_back({cup(G)});
    return LabeledBordism(G, layers);
  }
};

SurfaceLabels conjugated(const FiniteGroup& G, const SurfaceLabels& s, Element k) {
  SurfaceLabels out;
  for (auto [a, b] : s.handles) out.handles.emplace_back(G.conjugate(k, a), G.conjugate(k, b));
  return out;
}

}  // namespace

LabeledBordism closed_surface(const FiniteGroup& G, const SurfaceLabels& labels) {
  check_surface_labels(G, labels);
  Chain chain(G);
  for (auto [a, b] : labels.handles) chain.handle(a, b);
  return chain.close();
}

std::vector<LabeledBordism> closed_surface_variants(const FiniteGroup& G, const SurfaceLabels& labels) {
  check_surface_labels(G, labels);
  const auto e = G.identity();
  std::vector<LabeledBordism> out{closed_surface(G, labels)};

  // conjugate everything by an element that moves some label, if there is one
  Element k = e;
  for (Element x = 0; x < G.order() && k == e; ++x) {
    for (auto [a, b] : labels.handles) {
      if (G.conjugate(x, a) != a || G.conjugate(x, b) != b) k = x;
    }
  }
  if (k != e) out.push_back(closed_surface(G, conjugated(G, labels, k)));

  // unit bubble after the cap, transport there and back on the first handle
  {
    auto base = closed_surface(G, labels);
    auto layers = base.layers();
    std::vector<LabeledLayer> with;
    with.push_back(layers[0]);
    with.push_back({cap(G), id(G, e)});
    with.push_back({pants(G, e, e)});
    const Element t = G.order() > 1 ? (e == 0 ? 1 : 0) : e;
    for (std::size_t i = 1; i < layers.size(); ++i) {
      with.push_back(layers[i]);
      if (i == 1 && layers[i][0].kind == Generator::Copants) {
        const auto x = layers[i][0].outputs[0];
        const auto y = layers[i][0].outputs[1];
        with.push_back({id(G, t, x), id(G, y)});
        with.push_back({id(G, G.inverse(t), G.conjugate(t, x)), id(G, y)});
      }
    }
    out.emplace_back(G, std::move(with));
  }

  // counit bubble before the cup
  {
    auto layers = closed_surface(G, labels).layers();
    const auto cup_layer = layers.back();
    layers.pop_back();
    layers.push_back({copants(G, e, e)});
    layers.push_back({cup(G), id(G, e)});
    layers.push_back(cup_layer);
    out.emplace_back(G, std::move(layers));
  }

  if (labels.genus() == 1) {
    // torus: conjugate the other leg by b^-1 instead
    const auto [a, b] = labels.handles[0];
    if (G.commute(a, b)) {
      std::vector<LabeledLayer> layers{{cap(G)},
                                       {copants(G, a, G.inverse(a))},
                                       {id(G, a), id(G, G.inverse(b), G.inverse(a))},
                                       {pants(G, a, G.inverse(a))},
                                       {cup(G)}};
      out.emplace_back(G, std::move(layers));
    }
  } else if (labels.genus() >= 2) {
    // Frobenius move between the first handle's pants and the second's copants
    auto layers = closed_surface(G, labels).layers();
    const auto [a1, b1] = labels.handles[0];
    const auto a2 = labels.handles[1].first;
    const auto l = G.inverse(a1);  // running label before the first handle is e
    const auto h = G.multiply(G.inverse(a2), G.conjugate(b1, a1));
    std::vector<LabeledLayer> moved(layers.begin(), layers.begin() + 3);
    moved.push_back({copants(G, a2, h), id(G, l)});
    moved.push_back({id(G, a2), pants(G, h, l)});
    moved.insert(moved.end(), layers.begin() + 5, layers.end());
    out.emplace_back(G, std::move(moved));
  }

  // keep distinct words only
  std::vector<LabeledBordism> distinct;
  std::set<std::string> seen;
  for (auto& w : out) {
    if (seen.insert(to_string(w)).second) distinct.push_back(std::move(w));
  }
  return distinct;
}

std::string BinaryTree::str(std::size_t first) const {
  if (children.empty()) return std::to_string(first);
  return "(" + children[0].str(first) + " " + children[1].str(first + children[0].leaves) + ")";
}

std::vector<BinaryTree> binary_trees(std::size_t leaves) {
  if (leaves == 0) throw StructuralError("a tree needs at least one leaf");
  if (leaves == 1) return {BinaryTree{}};
  std::vector<BinaryTree> out;
  for (std::size_t k = 1; k < leaves; ++k) {
    for (const auto& l : binary_trees(k)) {
      for (const auto& r : binary_trees(leaves - k)) out.push_back(BinaryTree{leaves, {l, r}});
    }
  }
  return out;
}

namespace {

struct TowerBuilder {
  const FiniteGroup& G;
  const std::vector<Element>& gs;
  std::vector<Element> labels;
  std::vector<LabeledLayer> layers;

  void single(std::size_t p, LabeledGenerator gen) {
    LabeledLayer layer;
    const auto in = gen.inputs.size();
    for (std::size_t i = 0; i < p; ++i) layer.push_back(id(G, labels[i]));
    std::vector<Element> next(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(p));
    next.insert(next.end(), gen.outputs.begin(), gen.outputs.end());
    layer.push_back(std::move(gen));
    for (std::size_t i = p + in; i < labels.size(); ++i) {
      layer.push_back(id(G, labels[i]));
      next.push_back(labels[i]);
    }
    labels = std::move(next);
    layers.push_back(std::move(layer));
  }

  Element product(std::size_t first, std::size_t count) const {
    return G.product(std::vector<Element>(gs.begin() + static_cast<std::ptrdiff_t>(first),
                                          gs.begin() + static_cast<std::ptrdiff_t>(first + count)));
  }

  void fuse(const BinaryTree& t, std::size_t base) {
    if (t.children.empty()) return;
    fuse(t.children[0], base);
    fuse(t.children[1], base + 1);
    single(base, pants(G, labels[base], labels[base + 1]));
  }

  void split(const BinaryTree& t, std::size_t base, std::size_t first) {
    if (t.children.empty()) return;
    const auto left = t.children[0].leaves;
    single(base, copants(G, product(first, left), product(first + left, t.leaves - left)));
    split(t.children[1], base + 1, first + left);
    split(t.children[0], base, first);
  }

  LabeledBordism finish() {
    if (layers.empty()) {
      LabeledLayer l;
      for (auto g : labels) l.push_back(id(G, g));
      layers.push_back(std::move(l));
    }
    return LabeledBordism(G, std::move(layers));
  }
};

}  // namespace

LabeledBordism pants_tower(const FiniteGroup& G, const std::vector<Element>& gs, const BinaryTree& tree) {
  if (tree.leaves != gs.size()) throw StructuralError("tree and label list have different sizes");
  TowerBuilder b{G, gs, gs, {}};
  b.fuse(tree, 0);
  return b.finish();
}

LabeledBordism copants_tower(const FiniteGroup& G, const std::vector<Element>& gs, const BinaryTree& tree) {
  if (tree.leaves != gs.size()) throw StructuralError("tree and label list have different sizes");
  TowerBuilder b{G, gs, {G.product(gs)}, {}};
  b.split(tree, 0, 0);
  return b.finish();
}

}  // namespace tft
