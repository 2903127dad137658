#pragma once

// Random generation of topologically equivalent word pairs.
//
// Words are built as sequences of elementary steps (one generator acting at a
// strand position, everything else passing through), rewritten by local
// moves, and only then packed into layers.

#include <cstdint>
#include <utility>
#include <vector>

#include "tft/bordism.hpp"

namespace tft {

struct Step {
  Generator kind;
  std::size_t position;  // first input strand (insertion point for cap)
  friend bool operator==(const Step&, const Step&) = default;
};

/// Strand counts after each step, or nullopt if some step does not fit.
std::optional<std::vector<std::size_t>> strand_counts(const std::vector<Step>& steps, std::size_t inputs);

/// Packs steps into as few layers as a greedy left-to-right merge allows.
/// An empty sequence becomes a single identity layer (needs inputs > 0).
BordismWord pack_steps(const std::vector<Step>& steps, std::size_t inputs);

/// Deterministic in `seed`. Both words have at most `max_layers` layers and
/// the same topological type; with max_layers == 1 they are equal. Throws
/// std::invalid_argument when no word of the arity fits in max_layers.
std::pair<BordismWord, BordismWord> random_equivalent_pair(Arity arity, std::size_t max_layers,
                                                           std::uint64_t seed);

}  // namespace tft
