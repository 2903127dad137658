#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tft/bundle_structure.hpp"
#include "tft/surfaces.hpp"

using namespace tft;
using namespace tft::testing;

namespace {

Element el(const FiniteGroup& G, std::string_view label) { return G.element(label); }

Matrix<Q> one(Q x) { return Matrix<Q>::Constant(1, 1, x); }

std::vector<CrossedBundle<Q>> fixtures() {
  return {from_group_algebra<Q>(FiniteGroup::trivial()), from_group_algebra<Q>(FiniteGroup::cyclic(2)),
          from_group_algebra<Q>(s3()), fixed_point_s3(), klein_gerbe(), gauged_s3(7)};
}

/// Label pairs with trivial commutator product, a handful per genus.
std::vector<SurfaceLabels> sample_labels(const FiniteGroup& G, std::size_t genus, std::size_t limit) {
  std::vector<SurfaceLabels> out;
  const auto m = G.order();
  if (genus == 0) return {SurfaceLabels{}};
  if (genus == 1) {
    for (Element a = 0; a < m && out.size() < limit; ++a)
      for (Element b = 0; b < m && out.size() < limit; ++b)
        if (G.commute(a, b)) out.push_back({{{a, b}}});
    return out;
  }
  for (Element a1 = 0; a1 < m; ++a1)
    for (Element b1 = 0; b1 < m; ++b1)
      for (Element a2 = 0; a2 < m; ++a2)
        for (Element b2 = 0; b2 < m; ++b2) {
          if (out.size() >= limit) return out;
          const auto c = G.multiply(G.commutator(a1, b1), G.commutator(a2, b2));
          if (c == G.identity() && (a1 * 7 + b1 * 3 + a2 + b2) % 5 == 0) out.push_back({{{a1, b1}, {a2, b2}}});
        }
  return out;
}

}  // namespace

TEST_CASE("fixtures validate") {
  for (const auto& B : fixtures()) {
    auto r = validate_bundle(B);
    INFO(format_report(r));
    CHECK(r.pass());
    CHECK(r.checked_axioms().size() == 10);
  }
  auto fp = fixed_point_s3();
  CHECK(fp.dim(0) == 4);
  CHECK(fp.dim(el(s3(), "213")) == 2);
  CHECK(fp.dim(el(s3(), "231")) == 1);
}

TEST_CASE("derived fission reproduces the fixtures") {
  for (const auto& B : fixtures()) CHECK_FALSE(bundle_difference(with_derived_fission(B), B));
}

TEST_CASE("group algebra with a flipped fusion scalar") {
  // on Z/2 a single flip is still a cocycle, so use S3
  auto B = from_group_algebra<Q>(s3());
  B.set_fusion(el(s3(), "213"), el(s3(), "132"), one(Q(-1)));
  auto r = validate_bundle(B);
  CHECK(r.failed("associativity"));
  bool named = false;
  for (const auto& v : r.violations())
    if (v.axiom == "associativity") named = v.grading.size() == 3;
  CHECK(named);
}

TEST_CASE("transport moving the unit") {
  auto B = from_group_algebra<Q>(FiniteGroup::cyclic(2));
  B.set_transport(1, 0, one(Q(2)));
  auto r = validate_bundle(B);
  CHECK(r.failed("unit_transport"));
}

TEST_CASE("transport of the group algebra permutes fibers by conjugation") {
  const auto G = s3();
  auto B = from_group_algebra<Q>(G);
  for (Element k = 0; k < 6; ++k)
    for (Element g = 0; g < 6; ++g) CHECK(B.transport(k, g) == one(Q(1)));
  CHECK(G.conjugate(el(G, "213"), el(G, "132")) == el(G, "321"));
}

TEST_CASE("trivial group bundle is the ground field") {
  auto B = from_group_algebra<Q>(FiniteGroup::trivial());
  auto A = from_frobenius_algebra(library::ground_field<Q>());
  CHECK_FALSE(bundle_difference(A, B));
}

TEST_CASE("labeled parsing and inference") {
  const auto G = s3();
  auto b = parse_labeled("pants[213,213] ; id[231] ; cup[]", G);
  CHECK(b.closed() == false);
  CHECK(b.input_labels() == std::vector<Element>{el(G, "213"), el(G, "213")});
  CHECK(b.output_labels().empty());
  CHECK(to_string(b) == "pants[213,213] ; id[231,123] ; cup[]");
  CHECK(parse_labeled(to_string(b), G) == b);

  auto c = parse_labeled("copants[213,132] ; id[312] * id", G);
  CHECK(c.input_labels() == std::vector<Element>{G.multiply(el(G, "213"), el(G, "132"))});
  CHECK(c.output_labels() ==
        std::vector<Element>{G.conjugate(el(G, "312"), el(G, "213")), el(G, "132")});

  // labels flow backwards through cups and pants
  auto d = parse_labeled("id[123,231] * id ; pants ; cup", G);
  CHECK(d.input_labels() == std::vector<Element>{el(G, "231"), el(G, "312")});

  CHECK_THROWS_AS(parse_labeled("pants ; cup", G), LabelError);
  CHECK_THROWS_AS(parse_labeled("cap[213]", G), LabelError);
  CHECK_THROWS_AS(parse_labeled("pants[213,213] ; id[123,231]", G), LabelError);
  CHECK_THROWS_AS(parse_labeled("id[999]", G), LabelError);
  CHECK_THROWS_AS(parse_labeled("pants ; cup ; pants", G), ArityError);
  CHECK_THROWS_AS(LabeledBordism(G, {{labeled::cap(G)}, {labeled::id(G, 1)}}), LabelError);
}

TEST_CASE("labeled compose and tensor") {
  const auto G = s3();
  auto a = parse_labeled("pants[213,312]", G);
  auto b = LabeledBordism(G, {{labeled::id(G, el(G, "132"), a.output_labels()[0])}});
  auto c = compose(a, b);
  CHECK(c.input_labels() == a.input_labels());
  CHECK(c.output_labels() == std::vector<Element>{G.conjugate(el(G, "132"), G.multiply(el(G, "213"), el(G, "312")))});
  auto t = tensor(a, parse_labeled("cap ; id", G));
  CHECK(t.layers().size() == 2);
  CHECK(t.output_labels().size() == 2);
  CHECK_THROWS_AS(compose(a, parse_labeled("id[123,213]", G)), LabelError);
}

TEST_CASE("evaluate_labeled examples") {
  const auto G = s3();
  for (const auto& B : {from_group_algebra<Q>(G), fixed_point_s3()}) {
    for (Element g = 0; g < 6; ++g) {
      auto cyl = LabeledBordism(G, {{labeled::id(G, g)}});
      CHECK(evaluate_labeled(cyl, B) == identity_map<Q>(B.dim(g)));
    }
  }
  auto B = from_group_algebra<Q>(G);
  for (Element g = 0; g < 6; ++g) {
    auto pair = LabeledBordism(G, {{labeled::pants(G, g, G.inverse(g))}, {labeled::cup(G)}});
    CHECK(evaluate_labeled(pair, B) == one(Q(1)));
  }
  // the torus with commuting labels, contracted by hand: eps mu (P_b (x) id) nu eta = 1
  auto torus = closed_surface(G, {{{el(G, "231"), el(G, "312")}}});
  CHECK(evaluate_labeled(torus, B) == one(Q(1)));
}

TEST_CASE("routing through a conjugated intermediate loop") {
  const auto G = s3();
  for (const auto& B : fixtures()) {
    if (!(B.group() == G)) continue;
    for (Element g = 0; g < 6; ++g)
      for (Element h = 0; h < 6; ++h)
        for (Element k = 0; k < 6; ++k) {
          auto direct = LabeledBordism(G, {{labeled::pants(G, g, h)}, {labeled::id(G, k, G.multiply(g, h))}});
          auto routed = LabeledBordism(
              G, {{labeled::id(G, k, g), labeled::id(G, k, h)}, {labeled::pants(G, G.conjugate(k, g), G.conjugate(k, h))}});
          CHECK(evaluate_labeled(direct, B) == evaluate_labeled(routed, B));
        }
  }
}

TEST_CASE("holonomy examples") {
  for (const auto& B : fixtures()) {
    const auto& G = B.group();
    auto sphere = LabeledBordism(G, {{labeled::cap(G)}, {labeled::cup(G)}});
    CHECK(holonomy(sphere, B) == (B.counit() * B.unit())(0));
  }
  auto Bz = from_group_algebra<Q>(FiniteGroup::cyclic(2));
  for (Element a = 0; a < 2; ++a)
    for (Element b = 0; b < 2; ++b) CHECK(holonomy(closed_surface(Bz.group(), {{{a, b}}}), Bz) == Q(1));

  CHECK_THROWS_AS(holonomy(parse_labeled("pants[1,1]", Bz.group()), Bz), StructuralError);

  // over the trivial group the fibers form one Frobenius algebra
  const auto trivial = FiniteGroup::trivial();
  for (const auto& A : {library::dual_numbers<Q>(), library::diagonal<Q>({1, 2, 3}),
                        library::group_center<Q>(s3())}) {
    auto B = from_frobenius_algebra(A);
    CHECK(validate_bundle(B).pass());
    CHECK(holonomy(closed_surface(trivial, {{{0, 0}, {0, 0}}}), B) == closed_invariant(A, 2));
    CHECK(holonomy(closed_surface(trivial, {{{0, 0}}}), B) == Q(static_cast<long long>(A.dim())));
  }
  // A_e of the fixed-point bundle is functions on four points with eps the sum
  auto fp = fixed_point_s3();
  CHECK(holonomy(closed_surface(s3(), {{{0, 0}, {0, 0}}}), fp) ==
        closed_invariant(library::diagonal<Q>({1, 1, 1, 1}), 2));
}

TEST_CASE("sign cocycle torus") {
  const auto G = klein();
  auto B = klein_gerbe();
  const auto u = el(G, "1_0");
  const auto v = el(G, "0_1");
  CHECK(holonomy(closed_surface(G, {{{u, v}}}), B) == Q(-1));
  CHECK(holonomy(closed_surface(G, {{{u, u}}}), B) == Q(1));
}

TEST_CASE("closed surface labels must multiply to the identity") {
  const auto G = s3();
  CHECK_THROWS_AS(closed_surface(G, {{{el(G, "213"), el(G, "132")}}}), LabelError);
  auto w = closed_surface(G, {{{el(G, "213"), el(G, "132")}, {el(G, "132"), el(G, "213")}}});
  CHECK(w.closed());
  CHECK(w.shape().arity() == Arity{0, 0});
  CHECK(topological_type(w.shape()).components.at(0).genus == 2);
}

TEST_CASE("holonomy does not depend on the decomposition") {
  for (const auto& B : fixtures()) {
    const auto& G = B.group();
    for (std::size_t genus = 0; genus <= 2; ++genus) {
      for (const auto& labels : sample_labels(G, genus, genus == 2 ? 4 : 12)) {
        auto words = closed_surface_variants(G, labels);
        CHECK(words.size() >= 3);
        const Q first = holonomy(words[0], B);
        for (const auto& w : words) {
          INFO(to_string(w));
          CHECK(holonomy(w, B) == first);
          if (genus <= 1) {
            auto r = puncture_check(w, B);
            INFO(format_report(r));
            CHECK(r.pass());
          }
        }
      }
    }
  }
}

TEST_CASE("punctured evaluation on a sphere is the identity") {
  const auto G = s3();
  auto B = fixed_point_s3();
  auto sphere = LabeledBordism(G, {{labeled::cap(G)}, {labeled::cup(G)}});
  CHECK(evaluate_punctured(sphere, B, {0, 0}, {1, 0}) == identity_map<Q>(4));
  CHECK_THROWS_AS(evaluate_punctured(sphere, B, {1, 0}, {0, 0}), StructuralError);
}

TEST_CASE("frobenius action") {
  for (const auto& B : {from_group_algebra<Q>(s3()), fixed_point_s3()}) {
    for (Element g = 0; g < 6; ++g) {
      auto a = frobenius_action(B, g);
      INFO(format_report(a.report));
      CHECK(a.report.pass());
      CHECK(a.report.checked_axioms().size() == 4);
      CHECK(a.action == B.fusion(0, g));
      CHECK(a.coaction == B.fission(0, g));
    }
  }
  // g = e is the algebra A_e itself
  auto A = library::dual_numbers<Q>();
  auto Ba = from_frobenius_algebra(A);
  CHECK(frobenius_action(Ba, 0).action == A.multiplication());

  auto planted = plant_square_violation(fixed_point_s3());
  CHECK(validate_bundle(planted).failed("frobenius"));
  std::size_t broken = 0;
  for (Element g = 0; g < 6; ++g) {
    auto r = frobenius_action(planted, g).report;
    if (!r.pass()) {
      ++broken;
      CHECK(r.failed_axioms() == std::vector<std::string>{"compatibility_square"});
    }
  }
  CHECK(broken == 3);
}

TEST_CASE("rotation transport") {
  const auto G = s3();
  auto B = fixed_point_s3();
  const LoopWord w{{el(G, "213"), el(G, "132")}};
  CHECK(rotation_transport(w, 0, B) == identity_map<Q>(B.dim(w.eval(G))));
  CHECK(rotation_transport(w, 1, B) == B.transport(G.inverse(el(G, "213")), w.eval(G)));
  CHECK(w.rotated(1).eval(G) == G.multiply(el(G, "132"), el(G, "213")));
  CHECK(rotation_transport(w, 2, B) == identity_map<Q>(B.dim(w.eval(G))));
  CHECK_THROWS_AS(rotation_transport(w, 3, B), StructuralError);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    LoopWord v;
    const auto n = 1 + rng() % 6;
    for (std::size_t i = 0; i < n; ++i) v.letters.push_back(rng() % 6);
    const auto j = rng() % n;
    const auto j2 = rng() % n;
    const Matrix<Q> lhs = rotation_transport(v.rotated(j), j2, B) * rotation_transport(v, j, B);
    CHECK(lhs == rotation_transport(v, (j + j2) % n, B));
  }
}

TEST_CASE("towers") {
  CHECK(binary_trees(1).size() == 1);
  CHECK(binary_trees(4).size() == 5);
  CHECK(binary_trees(5).size() == 14);
  CHECK(binary_trees(3)[0].str() == "(0 (1 2))");

  const auto G = s3();
  auto tower = pants_tower(G, {1, 2, 3, 4}, binary_trees(4)[0]);
  CHECK(tower.input_labels() == std::vector<Element>{1, 2, 3, 4});
  CHECK(tower.output_labels() == std::vector<Element>{G.product({1, 2, 3, 4})});
  auto split = copants_tower(G, {1, 2, 3, 4}, binary_trees(4)[3]);
  CHECK(split.output_labels() == std::vector<Element>{1, 2, 3, 4});

  for (const auto& B : fixtures()) {
    const auto m = B.group().order();
    CHECK(nfold_fission_check(B, {0, m - 1}).pass());
    CHECK(nfold_fission_check(B, {m - 1, m / 2, 0, m - 1}).pass());
    CHECK(nfold_fission_check(B, {m / 2, m - 1, m / 2, 0, m - 1}).pass());
  }

  auto B = from_group_algebra<Q>(G);
  B.set_fission(1, 2, one(Q(2)));
  auto r = nfold_fission_check(B, {1, 2, 3, 4});
  CHECK(r.failed("higher_coassociativity"));
  CHECK_FALSE(r.failed("higher_associativity"));
  CHECK(r.violations().front().detail.find(" vs ") != std::string::npos);
}
