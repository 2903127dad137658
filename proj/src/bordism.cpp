#include "tft/bordism.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

#include "tft/errors.hpp"

namespace tft {

Arity arity(Generator g) {
  switch (g) {
    case Generator::Id: return {1, 1};
    case Generator::Swap: return {2, 2};
    case Generator::Cap: return {0, 1};
    case Generator::Cup: return {1, 0};
    case Generator::Pants: return {2, 1};
    case Generator::Copants: return {1, 2};
  }
  return {};
}

int euler_characteristic(Generator g) {
  switch (g) {
    case Generator::Id:
    case Generator::Swap: return 0;
    case Generator::Cap:
    case Generator::Cup: return 1;
    case Generator::Pants:
    case Generator::Copants: return -1;
  }
  return 0;
}

std::string_view name(Generator g) {
  switch (g) {
    case Generator::Id: return "id";
    case Generator::Swap: return "swap";
    case Generator::Cap: return "cap";
    case Generator::Cup: return "cup";
    case Generator::Pants: return "pants";
    case Generator::Copants: return "copants";
  }
  return "?";
}

std::optional<Generator> generator_from_name(std::string_view s) {
  for (auto g : {Generator::Id, Generator::Swap, Generator::Cap, Generator::Cup, Generator::Pants,
                 Generator::Copants}) {
    if (name(g) == s) return g;
  }
  return std::nullopt;
}

Arity arity(const Layer& layer) {
  Arity a;
  for (auto g : layer) {
    a.in += arity(g).in;
    a.out += arity(g).out;
  }
  return a;
}

BordismWord::BordismWord(std::vector<Layer> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) throw StructuralError("a bordism word needs at least one layer");
  for (const auto& l : layers_) {
    if (l.empty()) throw StructuralError("a layer needs at least one generator");
  }
  for (std::size_t t = 0; t + 1 < layers_.size(); ++t) {
    const auto out = tft::arity(layers_[t]).out;
    const auto in = tft::arity(layers_[t + 1]).in;
    if (out != in) {
      throw ArityError("arity mismatch between layer " + std::to_string(t + 1) + " (" + std::to_string(out) +
                           " outputs) and layer " + std::to_string(t + 2) + " (" + std::to_string(in) +
                           " inputs)",
                       t + 1);
    }
  }
}

std::size_t BordismWord::generator_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += l.size();
  return n;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {
namespace {

Arity arity(const AnnotatedLayer& layer) {
  Arity a;
  for (const auto& g : layer) {
    a.in += tft::arity(g.kind).in;
    a.out += tft::arity(g.kind).out;
  }
  return a;
}

using AnnotatedWord = std::vector<AnnotatedLayer>;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  AnnotatedWord parse() {
    auto w = word();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  AnnotatedWord word() {
    AnnotatedWord acc = layer();
    std::size_t top_level = 1;
    while (accept(';')) {
      AnnotatedWord next = layer();
      const auto out = arity(acc.back()).out;
      const auto in = arity(next.front()).in;
      if (out != in) {
        throw ArityError("arity mismatch between layer " + std::to_string(top_level) + " (" +
                             std::to_string(out) + " outputs) and layer " + std::to_string(top_level + 1) +
                             " (" + std::to_string(in) + " inputs) at position " + std::to_string(pos_),
                         top_level);
      }
      acc.insert(acc.end(), next.begin(), next.end());
      ++top_level;
    }
    return acc;
  }

  AnnotatedWord layer() {
    std::vector<AnnotatedWord> factors{factor()};
    while (accept('*')) factors.push_back(factor());
    std::size_t depth = 0;
    for (const auto& f : factors) depth = std::max(depth, f.size());
    AnnotatedWord out(depth);
    for (const auto& f : factors) {
      for (std::size_t t = 0; t < depth; ++t) {
        if (t < f.size()) {
          out[t].insert(out[t].end(), f[t].begin(), f[t].end());
        } else {
          const auto strands = arity(f.back()).out;
          for (std::size_t s = 0; s < strands; ++s) out[t].push_back({Generator::Id, std::nullopt, pos_});
        }
      }
    }
    return out;
  }

  AnnotatedWord factor() {
    skip_space();
    if (accept('(')) {
      auto w = word();
      if (!accept(')')) fail("expected ')'");
      return w;
    }
    const auto start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) {
      if (pos_ == text_.size()) fail("unexpected end of word");
      fail("expected a generator, found '" + std::string(1, text_[pos_]) + "'");
    }
    const auto ident = text_.substr(start, pos_ - start);
    auto kind = generator_from_name(ident);
    if (!kind) {
      pos_ = start;
      fail("unknown generator '" + std::string(ident) + "'");
    }
    AnnotatedGenerator g{*kind, std::nullopt, start};
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '[') {
      ++pos_;
      std::vector<std::string> labels;
      std::string current;
      bool any = false;
      for (;;) {
        if (pos_ == text_.size()) fail("unterminated label list");
        const char c = text_[pos_++];
        if (c == ']') break;
        if (c == ',') {
          if (current.empty()) fail("empty label");
          labels.push_back(current);
          current.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
          current += c;
          any = true;
        }
      }
      if (!current.empty()) labels.push_back(current);
      else if (any || !labels.empty()) fail("empty label");
      g.labels = std::move(labels);
    }
    return {{g}};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<AnnotatedLayer> parse_annotated(std::string_view text) { return Parser(text).parse(); }

}  // namespace detail

BordismWord parse_word(std::string_view text) {
  auto annotated = detail::parse_annotated(text);
  std::vector<Layer> layers;
  for (const auto& al : annotated) {
    Layer l;
    for (const auto& g : al) {
      if (g.labels) throw ParseError("labels are not allowed in a plain bordism word", g.position);
      l.push_back(g.kind);
    }
    layers.push_back(std::move(l));
  }
  return BordismWord(std::move(layers));
}

std::string to_string(const BordismWord& w) {
  std::string out;
  for (std::size_t t = 0; t < w.layers().size(); ++t) {
    if (t) out += " ; ";
    const auto& l = w.layers()[t];
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (i) out += " * ";
      out += name(l[i]);
    }
  }
  return out;
}

BordismWord compose(const BordismWord& first, const BordismWord& second) {
  auto layers = first.layers();
  layers.insert(layers.end(), second.layers().begin(), second.layers().end());
  if (first.output_arity() != second.input_arity()) {
    throw ArityError("cannot compose: " + std::to_string(first.output_arity()) + " outputs feed " +
                         std::to_string(second.input_arity()) + " inputs",
                     first.layer_count());
  }
  return BordismWord(std::move(layers));
}

BordismWord tensor(const BordismWord& left, const BordismWord& right) {
  const auto depth = std::max(left.layer_count(), right.layer_count());
  std::vector<Layer> layers(depth);
  for (const auto* w : {&left, &right}) {
    for (std::size_t t = 0; t < depth; ++t) {
      if (t < w->layer_count()) {
        layers[t].insert(layers[t].end(), w->layers()[t].begin(), w->layers()[t].end());
      } else {
        layers[t].insert(layers[t].end(), w->output_arity(), Generator::Id);
      }
    }
  }
  return BordismWord(std::move(layers));
}

BordismWord closed_surface_word(std::size_t genus) {
  std::vector<Layer> layers{{Generator::Cap}};
  for (std::size_t i = 0; i < genus; ++i) {
    layers.push_back({Generator::Copants});
    layers.push_back({Generator::Pants});
  }
  layers.push_back({Generator::Cup});
  return BordismWord(std::move(layers));
}

// ---------------------------------------------------------------------------
// Classification

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

TopologicalType topological_type(const BordismWord& w) {
  const auto& layers = w.layers();
  // circles at boundary t (t = 0 .. L) get ids offset[t] + position
  std::vector<std::size_t> offset{0};
  std::vector<std::size_t> count{w.input_arity()};
  for (const auto& l : layers) {
    offset.push_back(offset.back() + count.back());
    count.push_back(arity(l).out);
  }
  const std::size_t total = offset.back() + count.back();
  UnionFind uf(total);
  std::vector<std::pair<std::size_t, int>> chi_at;  // (a circle of the generator, chi)

  for (std::size_t t = 0; t < layers.size(); ++t) {
    std::size_t in_pos = 0;
    std::size_t out_pos = 0;
    for (auto g : layers[t]) {
      const auto a = arity(g);
      std::vector<std::size_t> circles;
      for (std::size_t i = 0; i < a.in; ++i) circles.push_back(offset[t] + in_pos + i);
      for (std::size_t i = 0; i < a.out; ++i) circles.push_back(offset[t + 1] + out_pos + i);
      if (g == Generator::Swap) {
        uf.unite(circles[0], circles[3]);
        uf.unite(circles[1], circles[2]);
        chi_at.emplace_back(circles[0], 0);
      } else {
        for (std::size_t i = 1; i < circles.size(); ++i) uf.unite(circles[0], circles[i]);
        chi_at.emplace_back(circles[0], euler_characteristic(g));
      }
      in_pos += a.in;
      out_pos += a.out;
    }
  }

  std::map<std::size_t, Component> by_root;
  std::map<std::size_t, long> chi;
  for (std::size_t c = 0; c < total; ++c) by_root[uf.find(c)];
  for (auto [circle, x] : chi_at) chi[uf.find(circle)] += x;
  for (std::size_t p = 0; p < count.front(); ++p) by_root[uf.find(p)].inputs.push_back(p);
  for (std::size_t p = 0; p < count.back(); ++p) by_root[uf.find(offset.back() + p)].outputs.push_back(p);

  TopologicalType type;
  for (auto& [root, comp] : by_root) {
    const long b = static_cast<long>(comp.inputs.size() + comp.outputs.size());
    const long twice_genus = 2 - chi[root] - b;
    if (twice_genus < 0 || twice_genus % 2 != 0) {
      throw std::logic_error("invalid Euler characteristic bookkeeping in topological_type");
    }
    comp.genus = static_cast<std::size_t>(twice_genus / 2);
    type.components.push_back(std::move(comp));
  }
  std::sort(type.components.begin(), type.components.end());
  return type;
}

std::string to_string(const TopologicalType& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.components.size(); ++i) {
    const auto& c = t.components[i];
    if (i) os << "; ";
    os << "genus " << c.genus << " in {";
    for (std::size_t k = 0; k < c.inputs.size(); ++k) os << (k ? "," : "") << c.inputs[k] + 1;
    os << "} out {";
    for (std::size_t k = 0; k < c.outputs.size(); ++k) os << (k ? "," : "") << c.outputs[k] + 1;
    os << "}";
  }
  return os.str();
}

bool equivalent(const BordismWord& a, const BordismWord& b) {
  if (a.arity() != b.arity()) throw ArityError("cannot compare words of different arity", 0);
  return topological_type(a) == topological_type(b);
}

}  // namespace tft
