#include <doctest.h>

#include "support.hpp"
#include "tft/reconstruction.hpp"

using namespace tft;
using namespace tft::testing;

namespace {

bool single_layer_of(const LabeledBordism& b, std::size_t generators) {
  return b.layers().size() == 1 && b.layers()[0].size() == generators;
}

}  // namespace

TEST_CASE("word enumeration") {
  const auto words = enumerate_labeled_words(FiniteGroup::cyclic(2), 3);
  CHECK(words.size() > 100);
  for (const auto& w : words) {
    CHECK(w.generator_count() <= 3);
    CHECK(topological_type(w.shape()).components.size() == 1);
  }
  // every connected single generator with every labelling: 2 cylinders per
  // label, 4 pants, 4 copants, one cap, one cup (a lone swap is two cylinders)
  std::size_t singles = 0;
  for (const auto& w : words) singles += w.generator_count() == 1;
  CHECK(singles == 4 + 4 + 4 + 1 + 1);
  CHECK(enumerate_labeled_words(FiniteGroup::trivial(), 1).size() == 5);
}

TEST_CASE("round trip on the canonical examples") {
  const auto Z2 = FiniteGroup::cyclic(2);
  auto B = from_group_algebra<Q>(Z2);
  CHECK_FALSE(bundle_difference(tft_to_bundle(oracle_from_bundle(B), Z2), B));
  for (const auto& b : {from_group_algebra<Q>(FiniteGroup::trivial()), B, fixed_point_s3(), klein_gerbe()}) {
    auto r = roundtrip_check(b, enumerate_labeled_words(b.group(), 2));
    INFO(format_report(r));
    CHECK(r.pass());
  }
}

TEST_CASE("oracle violating identity preservation") {
  const auto G = s3();
  auto oracle = oracle_from_bundle(fixed_point_s3());
  auto inner = oracle.evaluate;
  oracle.evaluate = [inner](const LabeledBordism& b) -> Matrix<Q> {
    Matrix<Q> v = inner(b);
    if (single_layer_of(b, 1) && b.layers()[0][0].kind == Generator::Id) v *= Q(3);
    return v;
  };
  try {
    tft_to_bundle(oracle, G);
    FAIL("expected an extraction error");
  } catch (const ExtractionError& e) {
    CHECK(e.axiom() == "identity_preserving");
  }
}

TEST_CASE("oracle violating monoidality") {
  const auto G = s3();
  auto oracle = oracle_from_bundle(from_group_algebra<Q>(G));
  auto inner = oracle.evaluate;
  oracle.evaluate = [inner](const LabeledBordism& b) -> Matrix<Q> {
    Matrix<Q> v = inner(b);
    if (single_layer_of(b, 2)) v *= Q(-1);
    return v;
  };
  CHECK_THROWS_AS(tft_to_bundle(oracle, G), ExtractionError);
  try {
    tft_to_bundle(oracle, G);
  } catch (const ExtractionError& e) {
    CHECK(e.axiom() == "monoidal");
  }
}

TEST_CASE("oracle that does not compose cylinders") {
  const auto G = s3();
  auto oracle = oracle_from_bundle(from_group_algebra<Q>(G));
  auto inner = oracle.evaluate;
  oracle.evaluate = [inner](const LabeledBordism& b) -> Matrix<Q> {
    Matrix<Q> v = inner(b);
    if (b.layers().size() == 2 && b.layers()[0][0].conjugator != 0) v *= Q(2);
    return v;
  };
  try {
    tft_to_bundle(oracle, G);
    FAIL("expected an extraction error");
  } catch (const ExtractionError& e) {
    CHECK(e.axiom() == "decomposition");
  }
}

TEST_CASE("oracle with wrong fiber dimensions") {
  auto oracle = oracle_from_bundle(from_group_algebra<Q>(FiniteGroup::cyclic(2)));
  oracle.dims = {2, 1};
  try {
    tft_to_bundle(oracle, FiniteGroup::cyclic(2));
    FAIL("expected an extraction error");
  } catch (const ExtractionError& e) {
    CHECK(e.axiom() == "shape");
  }
}

TEST_CASE("planted associativity failure shows on a 4-to-1 tower") {
  const auto G = s3();
  auto B = from_group_algebra<Q>(G);
  B.set_fusion(G.element("213"), G.element("132"), Matrix<Q>::Constant(1, 1, Q(-1)));
  auto r = roundtrip_check(B, enumerate_labeled_words(G, 1));
  CHECK_FALSE(r.failed("bundle_equality"));
  CHECK_FALSE(r.failed("word_agreement"));
  CHECK(r.failed("tower_agreement"));
  CHECK(r.violations().front().grading.size() == 4);
}
