#include "tft/rewrite.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "tft/errors.hpp"

namespace tft {

std::optional<std::vector<std::size_t>> strand_counts(const std::vector<Step>& steps, std::size_t inputs) {
  std::vector<std::size_t> counts{inputs};
  for (const auto& s : steps) {
    const auto a = arity(s.kind);
    const auto c = counts.back();
    if (s.position + a.in > c) return std::nullopt;
    counts.push_back(c - a.in + a.out);
  }
  return counts;
}

namespace {

bool merge_into(Layer& layer, const Step& s) {
  const auto a = arity(s.kind);
  std::size_t offset = 0;
  for (std::size_t i = 0; i <= layer.size(); ++i) {
    if (offset == s.position) {
      if (a.in == 0) {
        layer.insert(layer.begin() + static_cast<std::ptrdiff_t>(i), s.kind);
        return true;
      }
      if (i + a.in > layer.size()) return false;
      for (std::size_t j = i; j < i + a.in; ++j) {
        if (layer[j] != Generator::Id) return false;
      }
      layer.erase(layer.begin() + static_cast<std::ptrdiff_t>(i),
                  layer.begin() + static_cast<std::ptrdiff_t>(i + a.in));
      layer.insert(layer.begin() + static_cast<std::ptrdiff_t>(i), s.kind);
      return true;
    }
    if (offset > s.position || i == layer.size()) return false;
    offset += arity(layer[i]).out;
  }
  return false;
}

}  // namespace

BordismWord pack_steps(const std::vector<Step>& steps, std::size_t inputs) {
  auto counts = strand_counts(steps, inputs);
  if (!counts) throw StructuralError("step sequence does not fit its strands");
  if (steps.empty()) {
    if (inputs == 0) throw StructuralError("empty step sequence on zero strands");
    return BordismWord({Layer(inputs, Generator::Id)});
  }
  std::vector<Layer> layers;
  for (std::size_t t = 0; t < steps.size(); ++t) {
    const auto& s = steps[t];
    if (!layers.empty() && merge_into(layers.back(), s)) continue;
    const auto c = (*counts)[t];
    Layer l(s.position, Generator::Id);
    l.push_back(s.kind);
    l.insert(l.end(), c - s.position - arity(s.kind).in, Generator::Id);
    layers.push_back(std::move(l));
  }
  return BordismWord(std::move(layers));
}

namespace {

using G = Generator;
using Pattern = std::vector<std::pair<Generator, std::size_t>>;

struct Rule {
  Pattern lhs, rhs;
};

// Local moves; each holds in every commutative Frobenius algebra and
// preserves the topological type. Positions are relative to a base strand.
const std::vector<Rule>& rules() {
  static const std::vector<Rule> r = {
      {{{G::Pants, 0}, {G::Pants, 0}}, {{G::Pants, 1}, {G::Pants, 0}}},          // associativity
      {{{G::Copants, 0}, {G::Copants, 0}}, {{G::Copants, 0}, {G::Copants, 1}}},  // coassociativity
      {{{G::Pants, 0}, {G::Copants, 0}}, {{G::Copants, 1}, {G::Pants, 0}}},      // Frobenius
      {{{G::Pants, 0}, {G::Copants, 0}}, {{G::Copants, 0}, {G::Pants, 1}}},
      {{}, {{G::Cap, 0}, {G::Pants, 0}}},  // unit
      {{}, {{G::Cap, 1}, {G::Pants, 0}}},
      {{}, {{G::Copants, 0}, {G::Cup, 0}}},  // counit
      {{}, {{G::Copants, 0}, {G::Cup, 1}}},
      {{{G::Pants, 0}}, {{G::Swap, 0}, {G::Pants, 0}}},  // commutativity
      {{{G::Copants, 0}}, {{G::Copants, 0}, {G::Swap, 0}}},
      {{}, {{G::Swap, 0}, {G::Swap, 0}}},
      {{{G::Cup, 0}}, {{G::Swap, 0}, {G::Cup, 1}}},  // swap naturality
      {{{G::Cup, 1}}, {{G::Swap, 0}, {G::Cup, 0}}},
      {{{G::Cap, 1}}, {{G::Cap, 0}, {G::Swap, 0}}},
      {{{G::Cap, 0}}, {{G::Cap, 1}, {G::Swap, 0}}},
      {{}, {{G::Id, 0}}},
  };
  return r;
}

std::vector<Step> instantiate(const Pattern& p, std::size_t base) {
  std::vector<Step> out;
  for (auto [g, rel] : p) out.push_back({g, base + rel});
  return out;
}

// Steps i and i+1 act on disjoint strands: exchange them.
std::optional<std::vector<Step>> interchange(const std::vector<Step>& steps, std::size_t i) {
  const Step s1 = steps[i];
  const Step s2 = steps[i + 1];
  const auto a1 = arity(s1.kind);
  const auto a2 = arity(s2.kind);
  Step n1 = s2;
  Step n2 = s1;
  if (s2.position >= s1.position + a1.out) {
    n1.position = s2.position - a1.out + a1.in;
  } else if (s2.position + a2.in <= s1.position) {
    n2.position = s1.position - a2.in + a2.out;
  } else {
    return std::nullopt;
  }
  auto out = steps;
  out[i] = n1;
  out[i + 1] = n2;
  return out;
}

class Fuzzer {
 public:
  Fuzzer(Arity arity, std::size_t max_steps, std::uint64_t seed)
      : arity_(arity), max_steps_(max_steps), rng_(seed) {
    cap_ = std::max<std::size_t>({arity.in, arity.out, 1}) + 2;
  }

  std::size_t uniform(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  std::vector<Step> random_walk() {
    // reach[r][c]: from c strands, exactly r steps can end at arity.out
    std::vector<std::vector<bool>> reach(max_steps_ + 1, std::vector<bool>(cap_ + 1, false));
    reach[0][arity_.out] = true;
    for (std::size_t r = 1; r <= max_steps_; ++r) {
      for (std::size_t c = 0; c <= cap_; ++c) {
        for (const auto& [g, next] : moves(c)) reach[r][c] = reach[r][c] || reach[r - 1][next];
      }
    }
    std::vector<std::size_t> lengths;
    for (std::size_t k = 1; k <= max_steps_; ++k) {
      if (arity_.in <= cap_ && reach[k][arity_.in]) lengths.push_back(k);
    }
    if (lengths.empty()) {
      throw std::invalid_argument("no word of arity " + std::to_string(arity_.in) + "->" +
                                  std::to_string(arity_.out) + " fits in " + std::to_string(max_steps_) +
                                  " layers");
    }
    // favour long walks; they are the ones that build handles
    const auto k = lengths[std::max(uniform(lengths.size()), uniform(lengths.size()))];
    std::vector<Step> steps;
    std::size_t c = arity_.in;
    for (std::size_t r = k; r > 0; --r) {
      std::vector<std::pair<Generator, std::size_t>> options;
      for (const auto& m : moves(c)) {
        if (!reach[r - 1][m.second]) continue;
        const int weight = (m.first == G::Pants || m.first == G::Copants) ? 3 : 1;
        options.insert(options.end(), weight, m);
      }
      const auto [g, next] = options[uniform(options.size())];
      const auto a = arity(g);
      steps.push_back({g, uniform(c - a.in + 1)});
      c = next;
    }
    return steps;
  }

  std::vector<Step> rewrite(std::vector<Step> steps) {
    const auto rounds = 1 + uniform(2 * max_steps_);
    for (std::size_t round = 0; round < rounds; ++round) {
      auto candidates = rewrites(steps);
      if (candidates.empty()) break;
      steps = std::move(candidates[uniform(candidates.size())]);
    }
    return steps;
  }

 private:
  std::vector<std::pair<Generator, std::size_t>> moves(std::size_t c) const {
    std::vector<std::pair<Generator, std::size_t>> out;
    if (c >= 1) out.push_back({G::Id, c});
    if (c >= 2) out.push_back({G::Swap, c});
    if (c + 1 <= cap_) out.push_back({G::Cap, c + 1});
    if (c >= 1) out.push_back({G::Cup, c - 1});
    if (c >= 2) out.push_back({G::Pants, c - 1});
    if (c >= 1 && c + 1 <= cap_) out.push_back({G::Copants, c + 1});
    return out;
  }

  bool admissible(const std::vector<Step>& steps) const {
    if (steps.size() > max_steps_) return false;
    if (steps.empty() && arity_.in == 0) return false;
    auto counts = strand_counts(steps, arity_.in);
    if (!counts) return false;
    return std::all_of(counts->begin(), counts->end(), [&](std::size_t c) { return c <= cap_; });
  }

  // All admissible single rewrites, grouped by move so that insertion moves
  // (which have many placements) do not crowd out the others.
  std::vector<std::vector<Step>> rewrites(const std::vector<Step>& steps) {
    std::vector<std::vector<std::vector<Step>>> groups;
    const auto counts = *strand_counts(steps, arity_.in);
    for (const auto& rule : rules()) {
      for (int dir = 0; dir < 2; ++dir) {
        const Pattern& from = dir ? rule.rhs : rule.lhs;
        const Pattern& to = dir ? rule.lhs : rule.rhs;
        std::vector<std::vector<Step>> group;
        if (from.empty()) {
          for (std::size_t i = 0; i <= steps.size(); ++i) {
            for (std::size_t base = 0; base <= counts[i]; ++base) {
              auto next = steps;
              auto ins = instantiate(to, base);
              next.insert(next.begin() + static_cast<std::ptrdiff_t>(i), ins.begin(), ins.end());
              if (admissible(next)) group.push_back(std::move(next));
            }
          }
        } else {
          for (std::size_t i = 0; i + from.size() <= steps.size(); ++i) {
            if (steps[i].kind != from[0].first || steps[i].position < from[0].second) continue;
            const auto base = steps[i].position - from[0].second;
            bool match = true;
            for (std::size_t j = 0; j < from.size() && match; ++j) {
              match = steps[i + j].kind == from[j].first && steps[i + j].position == base + from[j].second;
            }
            if (!match) continue;
            auto next = steps;
            next.erase(next.begin() + static_cast<std::ptrdiff_t>(i),
                       next.begin() + static_cast<std::ptrdiff_t>(i + from.size()));
            auto ins = instantiate(to, base);
            next.insert(next.begin() + static_cast<std::ptrdiff_t>(i), ins.begin(), ins.end());
            if (admissible(next)) group.push_back(std::move(next));
          }
        }
        if (!group.empty()) groups.push_back(std::move(group));
      }
    }
    std::vector<std::vector<Step>> swaps;
    for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
      if (auto next = interchange(steps, i); next && admissible(*next)) swaps.push_back(std::move(*next));
    }
    if (!swaps.empty()) groups.push_back(std::move(swaps));
    if (groups.empty()) return {};
    return std::move(groups[uniform(groups.size())]);
  }

  Arity arity_;
  std::size_t max_steps_;
  std::size_t cap_;
  std::mt19937_64 rng_;
};

}  // namespace

std::pair<BordismWord, BordismWord> random_equivalent_pair(Arity arity, std::size_t max_layers,
                                                           std::uint64_t seed) {
  if (max_layers == 0) throw std::invalid_argument("max_layers must be at least 1");
  Fuzzer fuzzer(arity, max_layers, seed);
  const auto steps = fuzzer.random_walk();
  const auto rewritten = fuzzer.rewrite(steps);
  auto w1 = pack_steps(steps, arity.in);
  auto w2 = pack_steps(rewritten, arity.in);
  if (!equivalent(w1, w2)) {
    throw std::logic_error("rewrite changed the topological type: " + to_string(w1) + " vs " + to_string(w2));
  }
  return {std::move(w1), std::move(w2)};
}

}  // namespace tft
