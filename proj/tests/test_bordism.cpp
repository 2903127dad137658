#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tft/evaluate.hpp"
#include "tft/rewrite.hpp"

using namespace tft;
using tft::testing::Q;

namespace {

const char* const kTorus = "cap ; copants ; pants ; cup";

std::vector<FrobeniusAlgebra<Q>> library_algebras() {
  return {library::ground_field<Q>(), library::dual_numbers<Q>(), library::diagonal<Q>({1, 2}),
          library::diagonal<Q>({1, Q(-1, 2), 3, 5}), library::group_center<Q>(FiniteGroup::cyclic(2)),
          library::group_center<Q>(FiniteGroup::symmetric(3))};
}

}  // namespace

TEST_CASE("parse") {
  auto p = parse_word("pants");
  CHECK(p.layer_count() == 1);
  CHECK(p.arity() == Arity{2, 1});

  auto u = parse_word("cap * id ; pants");
  CHECK(u.arity() == Arity{1, 1});
  CHECK(u.layer_count() == 2);

  CHECK(parse_word("pants ; copants ; pants ; cup ; cap").arity() == Arity{2, 1});

  try {
    parse_word("pants ; cup ; pants");
    FAIL("expected an arity error");
  } catch (const ArityError& e) {
    CHECK(e.layer() == 2);
  }
  CHECK_THROWS_AS(parse_word("pants ; ; cup"), ParseError);
  CHECK_THROWS_AS(parse_word("pantz"), ParseError);
  CHECK_THROWS_AS(parse_word("(id"), ParseError);
  CHECK_THROWS_AS(parse_word(""), ParseError);
  CHECK_THROWS_AS(parse_word("id[a]"), ParseError);
  try {
    parse_word("id * bogus");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
}

TEST_CASE("parenthesized words splice with identity padding") {
  auto w = parse_word("(copants ; pants) * cap ; pants");
  CHECK(to_string(w) == "copants * cap ; pants * id ; pants");
  auto v = parse_word("  id*( swap ;swap) ");
  CHECK(to_string(v) == "id * swap ; id * swap");
}

TEST_CASE("print then parse is the identity") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto [w1, w2] = random_equivalent_pair({seed % 3, (seed / 3) % 3}, 6, seed);
    CHECK(parse_word(to_string(w1)) == w1);
    CHECK(parse_word(to_string(w2)) == w2);
  }
}

TEST_CASE("topological types") {
  auto id = topological_type(parse_word("id"));
  REQUIRE(id.components.size() == 1);
  CHECK(id.components[0] == Component{0, {0}, {0}});

  auto four = topological_type(parse_word("pants ; copants"));
  REQUIRE(four.components.size() == 1);
  CHECK(four.components[0] == Component{0, {0, 1}, {0, 1}});

  auto torus = topological_type(parse_word(kTorus));
  REQUIRE(torus.components.size() == 1);
  CHECK(torus.components[0] == Component{1, {}, {}});

  auto split = topological_type(parse_word("swap"));
  CHECK(split.components.size() == 2);
  CHECK_FALSE(equivalent(parse_word("swap"), parse_word("id * id")));
  CHECK(equivalent(parse_word("swap ; swap"), parse_word("id * id")));
  CHECK(equivalent(parse_word("cap ; cap * id ; pants"), parse_word("cap")));
  CHECK_FALSE(equivalent(parse_word("cap ; cup * cap"), parse_word("cap")));
  CHECK_THROWS_AS(equivalent(parse_word("id"), parse_word("pants")), ArityError);

  for (std::size_t g = 0; g < 4; ++g) {
    auto t = topological_type(closed_surface_word(g));
    CHECK(t.components == std::vector<Component>{{g, {}, {}}});
  }
}

TEST_CASE("evaluation examples") {
  for (const auto& a : library_algebras()) {
    const Matrix<Q> id = identity_map<Q>(a.dim());
    CHECK(evaluate(parse_word("id"), a) == id);
    CHECK(evaluate(parse_word("cap * id ; pants"), a) == id);
    CHECK(evaluate(parse_word("id * cap ; pants"), a) == id);
    CHECK(evaluate(parse_word("copants ; cup * id"), a) == id);
    CHECK(evaluate(parse_word(kTorus), a)(0, 0) == Q(static_cast<long long>(a.dim())));
    CHECK(evaluate(parse_word("cap ; cup"), a)(0, 0) == (a.counit() * a.unit())(0));
    for (std::size_t g = 0; g < 4; ++g) {
      CHECK(evaluate(closed_surface_word(g), a)(0, 0) == closed_invariant(a, g));
    }
  }
  CHECK(evaluate(parse_word("cap ; cup"), library::dual_numbers<Q>())(0, 0) == Q(0));
}

TEST_CASE("evaluation agrees with an explicit tensor contraction") {
  // pants ; copants built by contracting structure-constant tensors directly
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = testing::random_algebra(rng, 3);
    const auto n = a.dim();
    auto c = a.structure_constants();   // [i, j, k]
    auto d = comultiplication(a);       // [k, i, j]
    auto t = contract(tensor_product(c, d), {{2, 3}});  // [i, j, p, q]
    const Matrix<Q> m = evaluate(parse_word("pants ; copants"), a);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t p = 0; p < n; ++p)
          for (std::size_t q = 0; q < n; ++q)
            CHECK(m(static_cast<Eigen::Index>(p * n + q), static_cast<Eigen::Index>(i * n + j)) == t({i, j, p, q}));
  }
}

TEST_CASE("composition and tensor decompose evaluation") {
  std::mt19937_64 rng(5);
  auto a = testing::random_algebra(rng, 3);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto [w1, unused1] = random_equivalent_pair({1, 2}, 4, seed);
    auto [w2, unused2] = random_equivalent_pair({2, 1}, 4, seed + 100);
    CHECK(evaluate(compose(w1, w2), a) == Matrix<Q>(evaluate(w2, a) * evaluate(w1, a)));
    CHECK(evaluate(tensor(w1, w2), a) == kron(evaluate(w1, a), evaluate(w2, a)));
    CHECK_THROWS_AS(compose(w1, w1), ArityError);
  }
}

TEST_CASE("genus-two and four-holed sphere decompositions") {
  const std::vector<std::string> genus_two = {"copants ; copants * id ; id * pants ; pants",
                                              "copants ; id * copants ; pants * id ; pants",
                                              "copants ; pants ; copants ; pants"};
  for (const auto& a : library_algebras()) {
    const auto ref = evaluate(parse_word(genus_two[0]), a);
    for (const auto& w : genus_two) {
      CHECK(equivalent(parse_word(w), parse_word(genus_two[0])));
      CHECK(evaluate(parse_word(w), a) == ref);
    }
    CHECK(equivalent(parse_word("pants ; copants"), parse_word("copants * id ; id * pants")));
    CHECK(evaluate(parse_word("pants ; copants"), a) == evaluate(parse_word("copants * id ; id * pants"), a));
  }
}

TEST_CASE("random equivalent pairs") {
  auto [a, b] = random_equivalent_pair({1, 1}, 8, 0);
  CHECK(equivalent(a, b));
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t layers = 2 + seed % 7;
    auto [x, y] = random_equivalent_pair({seed % 3, seed % 2}, layers, seed);
    CHECK(x.layer_count() <= layers);
    CHECK(y.layer_count() <= layers);
    auto [p, q] = random_equivalent_pair({seed % 3, seed % 2}, 8, seed);
    auto [p2, q2] = random_equivalent_pair({seed % 3, seed % 2}, 8, seed);
    CHECK(p == p2);
    CHECK(q == q2);
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto [x, y] = random_equivalent_pair({1, 2}, 1, seed);
    CHECK(x == y);
  }
  CHECK_THROWS_AS(random_equivalent_pair({0, 0}, 1, 0), std::invalid_argument);

  // the rewrites actually change words
  int changed = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto [x, y] = random_equivalent_pair({1, 1}, 8, seed);
    changed += x == y ? 0 : 1;
  }
  CHECK(changed > 40);
}

TEST_CASE("equivalent random words evaluate equally") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 6; ++trial) {
    auto a = testing::random_algebra(rng, 3);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      auto [w1, w2] = random_equivalent_pair({seed % 3, (seed / 3) % 3}, 8, seed + 1000 * trial);
      CHECK(evaluate(w1, a) == evaluate(w2, a));
    }
  }
}
