#include "tft/labeled.hpp"

#include <optional>
#include <sstream>

#include "tft/errors.hpp"

namespace tft {

LoopWord LoopWord::rotated(std::size_t j) const {
  if (letters.empty()) return *this;
  j %= letters.size();
  LoopWord out;
  out.letters.insert(out.letters.end(), letters.begin() + static_cast<std::ptrdiff_t>(j), letters.end());
  out.letters.insert(out.letters.end(), letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(j));
  return out;
}

Element LoopWord::prefix(const FiniteGroup& G, std::size_t j) const {
  if (j > letters.size()) throw StructuralError("prefix longer than the loop word");
  return G.product(std::vector<Element>(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(j)));
}

namespace labeled {

LabeledGenerator id(const FiniteGroup& G, Element k, Element g) {
  return {Generator::Id, {g}, {G.conjugate(k, g)}, k};
}
LabeledGenerator swap(Element g, Element h) { return {Generator::Swap, {g, h}, {h, g}, 0}; }
LabeledGenerator cap(const FiniteGroup& G) { return {Generator::Cap, {}, {G.identity()}, 0}; }
LabeledGenerator cup(const FiniteGroup& G) { return {Generator::Cup, {G.identity()}, {}, 0}; }
LabeledGenerator pants(const FiniteGroup& G, Element g, Element h) {
  return {Generator::Pants, {g, h}, {G.multiply(g, h)}, 0};
}
LabeledGenerator copants(const FiniteGroup& G, Element g, Element h) {
  return {Generator::Copants, {G.multiply(g, h)}, {g, h}, 0};
}

}  // namespace labeled

namespace {

std::string labels_text(const FiniteGroup& G, const std::vector<Element>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + G.label(xs[i]);
  return out;
}

// The generator's own constraint; returns a complaint or empty.
std::string constraint_violation(const FiniteGroup& G, const LabeledGenerator& g) {
  const auto a = arity(g.kind);
  if (g.inputs.size() != a.in || g.outputs.size() != a.out) return "wrong number of labels";
  for (auto x : g.inputs)
    if (x >= G.order()) return "label out of range";
  for (auto x : g.outputs)
    if (x >= G.order()) return "label out of range";
  const auto e = G.identity();
  switch (g.kind) {
    case Generator::Id:
      if (g.conjugator >= G.order()) return "conjugator out of range";
      if (g.outputs[0] != G.conjugate(g.conjugator, g.inputs[0])) return "cylinder output is not k g k^-1";
      break;
    case Generator::Swap:
      if (g.outputs[0] != g.inputs[1] || g.outputs[1] != g.inputs[0]) return "swap must exchange its labels";
      break;
    case Generator::Cap:
      if (g.outputs[0] != e) return "cap bounds a circle labelled " + G.label(g.outputs[0]) + ", not the identity";
      break;
    case Generator::Cup:
      if (g.inputs[0] != e) return "cup bounds a circle labelled " + G.label(g.inputs[0]) + ", not the identity";
      break;
    case Generator::Pants:
      if (g.outputs[0] != G.multiply(g.inputs[0], g.inputs[1])) return "pants output is not the product";
      break;
    case Generator::Copants:
      if (g.inputs[0] != G.multiply(g.outputs[0], g.outputs[1])) return "copants input is not the product";
      break;
  }
  return {};
}

}  // namespace

LabeledBordism::LabeledBordism(FiniteGroup group, std::vector<LabeledLayer> layers)
    : group_(std::move(group)), layers_(std::move(layers)) {
  std::vector<Layer> kinds;
  for (const auto& l : layers_) {
    Layer k;
    for (const auto& g : l) k.push_back(g.kind);
    kinds.push_back(std::move(k));
  }
  BordismWord check(kinds);  // arity errors
  for (std::size_t t = 0; t < layers_.size(); ++t) {
    for (const auto& g : layers_[t]) {
      auto why = constraint_violation(group_, g);
      if (!why.empty()) {
        throw LabelError("layer " + std::to_string(t + 1) + ", " + std::string(name(g.kind)) + ": " + why);
      }
    }
  }
  for (std::size_t t = 0; t + 1 < layers_.size(); ++t) {
    std::vector<Element> out, in;
    for (const auto& g : layers_[t]) out.insert(out.end(), g.outputs.begin(), g.outputs.end());
    for (const auto& g : layers_[t + 1]) in.insert(in.end(), g.inputs.begin(), g.inputs.end());
    if (out != in) {
      throw LabelError("labels (" + labels_text(group_, out) + ") leaving layer " + std::to_string(t + 1) +
                       " do not match (" + labels_text(group_, in) + ") entering layer " + std::to_string(t + 2));
    }
  }
}

BordismWord LabeledBordism::shape() const {
  std::vector<Layer> kinds;
  for (const auto& l : layers_) {
    Layer k;
    for (const auto& g : l) k.push_back(g.kind);
    kinds.push_back(std::move(k));
  }
  return BordismWord(std::move(kinds));
}

std::vector<Element> LabeledBordism::input_labels() const {
  std::vector<Element> out;
  for (const auto& g : layers_.front()) out.insert(out.end(), g.inputs.begin(), g.inputs.end());
  return out;
}

std::vector<Element> LabeledBordism::output_labels() const {
  std::vector<Element> out;
  for (const auto& g : layers_.back()) out.insert(out.end(), g.outputs.begin(), g.outputs.end());
  return out;
}

std::size_t LabeledBordism::generator_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += l.size();
  return n;
}

// ---------------------------------------------------------------------------
// Parsing with label inference

namespace {

class LabelSolver {
 public:
  LabelSolver(const FiniteGroup& G, const std::vector<detail::AnnotatedLayer>& layers) : G_(G), layers_(layers) {
    offset_.push_back(0);
    std::size_t count = 0;
    for (const auto& g : layers.front()) count += arity(g.kind).in;
    counts_.push_back(count);
    for (const auto& l : layers) {
      offset_.push_back(offset_.back() + counts_.back());
      std::size_t out = 0;
      for (const auto& g : l) out += arity(g.kind).out;
      counts_.push_back(out);
    }
    value_.assign(offset_.back() + counts_.back(), std::nullopt);
    conj_.resize(layers.size());
    for (std::size_t t = 0; t < layers.size(); ++t) {
      conj_[t].assign(layers[t].size(), G.identity());
    }
  }

  LabeledBordism solve() {
    read_annotations();
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t t = 0; t < layers_.size(); ++t) {
        std::size_t in = 0, out = 0;
        for (std::size_t i = 0; i < layers_[t].size(); ++i) {
          changed = propagate(t, i, in, out) || changed;
          in += arity(layers_[t][i].kind).in;
          out += arity(layers_[t][i].kind).out;
        }
      }
    }
    std::vector<LabeledLayer> result;
    for (std::size_t t = 0; t < layers_.size(); ++t) {
      LabeledLayer layer;
      std::size_t in = 0, out = 0;
      for (std::size_t i = 0; i < layers_[t].size(); ++i) {
        const auto& ag = layers_[t][i];
        const auto a = arity(ag.kind);
        LabeledGenerator g{ag.kind, {}, {}, conj_[t][i]};
        for (std::size_t j = 0; j < a.in; ++j) g.inputs.push_back(known(t, in + j, ag));
        for (std::size_t j = 0; j < a.out; ++j) g.outputs.push_back(known(t + 1, out + j, ag));
        in += a.in;
        out += a.out;
        layer.push_back(std::move(g));
      }
      result.push_back(std::move(layer));
    }
    return LabeledBordism(G_, std::move(result));
  }

 private:
  std::size_t var(std::size_t boundary, std::size_t pos) const { return offset_[boundary] + pos; }

  Element known(std::size_t boundary, std::size_t pos, const detail::AnnotatedGenerator& g) const {
    const auto& v = value_[var(boundary, pos)];
    if (!v) {
      throw LabelError("cannot infer the label of circle " + std::to_string(pos + 1) + " at boundary " +
                       std::to_string(boundary) + " (near " + std::string(name(g.kind)) + " at position " +
                       std::to_string(g.position) + "); annotate it");
    }
    return *v;
  }

  bool set(std::size_t v, Element x, const detail::AnnotatedGenerator& g) {
    if (value_[v]) {
      if (*value_[v] != x) {
        throw LabelError("inconsistent labels " + G_.label(*value_[v]) + " and " + G_.label(x) + " at " +
                         std::string(name(g.kind)) + " (position " + std::to_string(g.position) + ")");
      }
      return false;
    }
    value_[v] = x;
    return true;
  }

  Element element(const std::string& label, const detail::AnnotatedGenerator& g) const {
    for (Element x = 0; x < G_.order(); ++x) {
      if (G_.label(x) == label) return x;
    }
    throw LabelError("unknown group element '" + label + "' at position " + std::to_string(g.position));
  }

  void read_annotations() {
    for (std::size_t t = 0; t < layers_.size(); ++t) {
      std::size_t in = 0, out = 0;
      for (std::size_t i = 0; i < layers_[t].size(); ++i) {
        const auto& g = layers_[t][i];
        const auto a = arity(g.kind);
        if (g.labels) {
          const auto& ls = *g.labels;
          auto need = [&](std::size_t lo, std::size_t hi) {
            if (ls.size() < lo || ls.size() > hi) {
              throw LabelError(std::string(name(g.kind)) + " at position " + std::to_string(g.position) +
                               " takes " + (lo == hi ? std::to_string(lo) : std::to_string(lo) + " or " +
                                                                                 std::to_string(hi)) +
                               " labels");
            }
          };
          switch (g.kind) {
            case Generator::Id:
              need(0, 2);
              if (!ls.empty()) conj_[t][i] = element(ls[0], g);
              if (ls.size() == 2) set(var(t, in), element(ls[1], g), g);
              break;
            case Generator::Swap:
            case Generator::Pants:
              need(0, 2);
              if (ls.size() == 1) need(2, 2);
              for (std::size_t j = 0; j < ls.size(); ++j) set(var(t, in + j), element(ls[j], g), g);
              break;
            case Generator::Copants:
              need(0, 2);
              if (ls.size() == 1) need(2, 2);
              for (std::size_t j = 0; j < ls.size(); ++j) set(var(t + 1, out + j), element(ls[j], g), g);
              break;
            case Generator::Cap:
            case Generator::Cup:
              need(0, 1);
              if (ls.size() == 1 && element(ls[0], g) != G_.identity()) {
                throw LabelError(std::string(name(g.kind)) + " at position " + std::to_string(g.position) +
                                 " must bound an identity-labelled circle");
              }
              break;
          }
        }
        in += a.in;
        out += a.out;
      }
    }
  }

  bool propagate(std::size_t t, std::size_t i, std::size_t in, std::size_t out) {
    const auto& g = layers_[t][i];
    auto x = [&](std::size_t j) -> std::optional<Element>& { return value_[var(t, in + j)]; };
    auto y = [&](std::size_t j) -> std::optional<Element>& { return value_[var(t + 1, out + j)]; };
    auto vx = [&](std::size_t j) { return var(t, in + j); };
    auto vy = [&](std::size_t j) { return var(t + 1, out + j); };
    const auto e = G_.identity();
    bool c = false;
    switch (g.kind) {
      case Generator::Id: {
        const auto k = conj_[t][i];
        if (x(0)) c = set(vy(0), G_.conjugate(k, *x(0)), g) || c;
        if (y(0)) c = set(vx(0), G_.conjugate(G_.inverse(k), *y(0)), g) || c;
        break;
      }
      case Generator::Swap:
        if (x(0)) c = set(vy(1), *x(0), g) || c;
        if (x(1)) c = set(vy(0), *x(1), g) || c;
        if (y(0)) c = set(vx(1), *y(0), g) || c;
        if (y(1)) c = set(vx(0), *y(1), g) || c;
        break;
      case Generator::Cap: c = set(vy(0), e, g); break;
      case Generator::Cup: c = set(vx(0), e, g); break;
      case Generator::Pants:
        if (x(0) && x(1)) c = set(vy(0), G_.multiply(*x(0), *x(1)), g) || c;
        if (y(0) && x(0)) c = set(vx(1), G_.multiply(G_.inverse(*x(0)), *y(0)), g) || c;
        if (y(0) && x(1)) c = set(vx(0), G_.multiply(*y(0), G_.inverse(*x(1))), g) || c;
        break;
      case Generator::Copants:
        if (y(0) && y(1)) c = set(vx(0), G_.multiply(*y(0), *y(1)), g) || c;
        if (x(0) && y(0)) c = set(vy(1), G_.multiply(G_.inverse(*y(0)), *x(0)), g) || c;
        if (x(0) && y(1)) c = set(vy(0), G_.multiply(*x(0), G_.inverse(*y(1))), g) || c;
        break;
    }
    return c;
  }

  const FiniteGroup& G_;
  const std::vector<detail::AnnotatedLayer>& layers_;
  std::vector<std::size_t> offset_, counts_;
  std::vector<std::optional<Element>> value_;
  std::vector<std::vector<Element>> conj_;
};

}  // namespace

LabeledBordism parse_labeled(std::string_view text, const FiniteGroup& G) {
  const auto layers = detail::parse_annotated(text);
  return LabelSolver(G, layers).solve();
}

std::string to_string(const LabeledBordism& b) {
  const auto& G = b.group();
  std::ostringstream os;
  for (std::size_t t = 0; t < b.layers().size(); ++t) {
    if (t) os << " ; ";
    const auto& layer = b.layers()[t];
    for (std::size_t i = 0; i < layer.size(); ++i) {
      if (i) os << " * ";
      const auto& g = layer[i];
      os << name(g.kind) << "[";
      switch (g.kind) {
        case Generator::Id: os << G.label(g.conjugator) << "," << G.label(g.inputs[0]); break;
        case Generator::Swap:
        case Generator::Pants: os << labels_text(G, g.inputs); break;
        case Generator::Copants: os << labels_text(G, g.outputs); break;
        case Generator::Cap:
        case Generator::Cup: break;
      }
      os << "]";
    }
  }
  return os.str();
}

LabeledBordism compose(const LabeledBordism& first, const LabeledBordism& second) {
  auto layers = first.layers();
  layers.insert(layers.end(), second.layers().begin(), second.layers().end());
  return LabeledBordism(first.group(), std::move(layers));
}

LabeledBordism tensor(const LabeledBordism& left, const LabeledBordism& right) {
  const auto depth = std::max(left.layers().size(), right.layers().size());
  std::vector<LabeledLayer> layers(depth);
  for (const auto* w : {&left, &right}) {
    const auto outs = w->output_labels();
    for (std::size_t t = 0; t < depth; ++t) {
      if (t < w->layers().size()) {
        layers[t].insert(layers[t].end(), w->layers()[t].begin(), w->layers()[t].end());
      } else {
        for (auto g : outs) layers[t].push_back(labeled::id(w->group(), g));
      }
    }
  }
  return LabeledBordism(left.group(), std::move(layers));
}

}  // namespace tft
