#pragma once

// Bordism words: layered sequential/parallel composites of the basic
// cobordisms, with boundary circles ordered left to right.
//
// Grammar (whitespace-insensitive, "*" binds tighter than ";"):
//   word   := layer (";" layer)*
//   layer  := factor ("*" factor)*
//   factor := generator | "(" word ")"
// Parenthesized words splice in as sub-words; parallel factors with fewer
// layers are padded with identities on their outputs.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tft {

enum class Generator { Id, Swap, Cap, Cup, Pants, Copants };

struct Arity {
  std::size_t in = 0;
  std::size_t out = 0;
  friend bool operator==(const Arity&, const Arity&) = default;
};

Arity arity(Generator g);
/// Euler characteristic of the generator surface.
int euler_characteristic(Generator g);
std::string_view name(Generator g);
std::optional<Generator> generator_from_name(std::string_view s);

using Layer = std::vector<Generator>;

Arity arity(const Layer& layer);

class BordismWord {
 public:
  /// Throws ArityError naming the first layer whose outputs do not feed the next.
  explicit BordismWord(std::vector<Layer> layers);

  const std::vector<Layer>& layers() const { return layers_; }
  std::size_t layer_count() const { return layers_.size(); }
  std::size_t generator_count() const;
  std::size_t input_arity() const { return tft::arity(layers_.front()).in; }
  std::size_t output_arity() const { return tft::arity(layers_.back()).out; }
  Arity arity() const { return {input_arity(), output_arity()}; }

  friend bool operator==(const BordismWord&, const BordismWord&) = default;

 private:
  std::vector<Layer> layers_;
};

BordismWord parse_word(std::string_view text);
std::string to_string(const BordismWord& w);

/// "first ; second"; throws ArityError on mismatch.
BordismWord compose(const BordismWord& first, const BordismWord& second);
/// "left * right", padding the shorter word with identities.
BordismWord tensor(const BordismWord& left, const BordismWord& right);

/// cap ; (copants ; pants)^g ; cup
BordismWord closed_surface_word(std::size_t genus);

struct Component {
  std::size_t genus = 0;
  std::vector<std::size_t> inputs;   // 0-based input circle positions
  std::vector<std::size_t> outputs;  // 0-based output circle positions
  friend auto operator<=>(const Component&, const Component&) = default;
};

/// Genus and boundary data per connected component, sorted.
struct TopologicalType {
  std::vector<Component> components;
  friend bool operator==(const TopologicalType&, const TopologicalType&) = default;
};

TopologicalType topological_type(const BordismWord& w);
std::string to_string(const TopologicalType& t);

/// Same topological type. Throws ArityError when the arities differ.
bool equivalent(const BordismWord& a, const BordismWord& b);

namespace detail {

/// A generator occurrence with its optional bracket annotation.
struct AnnotatedGenerator {
  Generator kind;
  std::optional<std::vector<std::string>> labels;
  std::size_t position = 0;  // character offset in the source text
};

using AnnotatedLayer = std::vector<AnnotatedGenerator>;

/// Parses the word grammar, accepting `name[l1,...]` annotations; used by both
/// the plain and the labeled front ends.
std::vector<AnnotatedLayer> parse_annotated(std::string_view text);

}  // namespace detail

}  // namespace tft
