#pragma once

// Builders for the labeled surfaces used by the structural checks: closed
// surfaces with prescribed holonomy, and fusion/fission towers over binary
// trees.

#include <string>
#include <vector>

#include "tft/labeled.hpp"

namespace tft {

/// Holonomy data of a closed surface: pairs (a_i, b_i) with
/// [a_1,b_1] ... [a_g,b_g] = e (commutator x y x^-1 y^-1).
struct SurfaceLabels {
  std::vector<std::pair<Element, Element>> handles;
  std::size_t genus() const { return handles.size(); }
};

/// Throws LabelError unless the commutator product is the identity.
void check_surface_labels(const FiniteGroup& G, const SurfaceLabels& labels);

/// cap ; then per handle copants[a, a^-1 c] ; id[b] * id ; pants ; finally cup.
/// Each handle turns the running label c into [b, a] c.
LabeledBordism closed_surface(const FiniteGroup& G, const SurfaceLabels& labels);

/// Distinct words for the same closed labeled surface (at least three):
/// the handle chain, the chain with all labels conjugated, a unit bubble with
/// a transport pair, a counit bubble before the cup, and for genus 1 the
/// conjugator moved to the other leg, for genus >= 2 a Frobenius move between
/// the first two handles.
std::vector<LabeledBordism> closed_surface_variants(const FiniteGroup& G, const SurfaceLabels& labels);

/// A planar binary tree over leaves [0, n), printed like "((01)2)".
struct BinaryTree {
  std::size_t leaves = 1;
  std::vector<BinaryTree> children;  // empty or exactly two
  std::string str(std::size_t first = 0) const;
};

std::vector<BinaryTree> binary_trees(std::size_t leaves);

/// Fusion tower merging circles labelled gs[0..n) along the tree.
LabeledBordism pants_tower(const FiniteGroup& G, const std::vector<Element>& gs, const BinaryTree& tree);
/// Fission tower splitting one circle into circles labelled gs[0..n).
LabeledBordism copants_tower(const FiniteGroup& G, const std::vector<Element>& gs, const BinaryTree& tree);

}  // namespace tft
