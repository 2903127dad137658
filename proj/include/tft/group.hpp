#pragma once

// Finite groups as the discrete model of the target space: X = BG.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tft {

using Element = std::size_t;

class FiniteGroup {
 public:
  /// `table[a][b]` is the index of a*b. Verifies closure, associativity,
  /// identity and inverses; throws StructuralError otherwise.
  FiniteGroup(std::vector<std::vector<Element>> table, std::vector<std::string> labels);

  static FiniteGroup trivial();
  static FiniteGroup cyclic(std::size_t n);
  /// Permutations of {1..n} in lexicographic one-line order, labelled by
  /// their one-line notation ("123", "213", ...). (s*t)(i) = s(t(i)).
  static FiniteGroup symmetric(std::size_t n);
  /// Elements (a, b) labelled "<a>_<b>", index a * |H| + b.
  static FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

  std::size_t order() const { return table_.size(); }
  Element identity() const { return identity_; }
  Element multiply(Element a, Element b) const { return table_[a][b]; }
  Element inverse(Element a) const { return inverse_[a]; }
  /// k g k^-1
  Element conjugate(Element k, Element g) const { return multiply(multiply(k, g), inverse(k)); }
  /// a b a^-1 b^-1
  Element commutator(Element a, Element b) const {
    return multiply(multiply(a, b), multiply(inverse(a), inverse(b)));
  }
  Element product(const std::vector<Element>& word) const;

  const std::string& label(Element a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Throws StructuralError for an unknown label.
  Element element(std::string_view label) const;
  const std::vector<std::vector<Element>>& table() const { return table_; }

  std::vector<std::vector<Element>> conjugacy_classes() const;
  bool commute(Element a, Element b) const { return multiply(a, b) == multiply(b, a); }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.table_ == b.table_ && a.labels_ == b.labels_;
  }

 private:
  std::vector<std::vector<Element>> table_;
  std::vector<std::string> labels_;
  std::vector<Element> inverse_;
  Element identity_ = 0;
};

/// Permutation action of a group on {0..points-1}: action[g][x] = g.x.
/// Throws StructuralError unless it is a homomorphism into permutations.
void check_action(const FiniteGroup& group, const std::vector<std::vector<std::size_t>>& action);

/// Natural action of symmetric(n) on n points, plus `extra_fixed` points fixed by everything.
std::vector<std::vector<std::size_t>> natural_action(const FiniteGroup& symmetric_group, std::size_t n,
                                                     std::size_t extra_fixed = 0);

}  // namespace tft
