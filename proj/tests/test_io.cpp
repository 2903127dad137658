#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "support.hpp"
#include "tft/io.hpp"

using namespace tft;
using namespace tft::testing;

namespace {

const std::filesystem::path data_dir = TFT_DATA_DIR;

GroupLoader only(const FiniteGroup& G) {
  return [G](const std::string&) { return G; };
}

std::size_t parse_error_line(auto&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.position();
  }
  FAIL("expected a parse error");
  return 0;
}

}  // namespace

TEST_CASE("dual numbers file") {
  auto a = load_algebra(data_dir / "dual_numbers.fa");
  CHECK(a.dim() == 2);
  CHECK(a.basis() == std::vector<std::string>{"1", "x"});
  CHECK(a.structure_constant(1, 1, 0) == Q(0));
  CHECK(a.structure_constant(0, 1, 1) == Q(1));
  CHECK(a.counit()(1) == Q(1));
  CHECK(validate(a).pass());
  CHECK(parse_algebra(format_algebra(a)).multiplication() == a.multiplication());
}

TEST_CASE("algebra round trip for every library algebra") {
  std::vector<FrobeniusAlgebra<Q>> algebras{library::ground_field<Q>(), library::dual_numbers<Q>(),
                                            library::diagonal<Q>({Q(1), Q(-2, 3), Q(5)}),
                                            library::group_center<Q>(s3())};
  std::mt19937_64 rng(3);
  for (int i = 0; i < 5; ++i) algebras.push_back(random_algebra(rng));
  for (const auto& a : algebras) {
    auto b = parse_algebra(format_algebra(a));
    CHECK(b.basis() == a.basis());
    CHECK(b.multiplication() == a.multiplication());
    CHECK(b.unit() == a.unit());
    CHECK(b.counit() == a.counit());
  }
}

TEST_CASE("algebra parse errors carry the line") {
  CHECK(parse_error_line([] { parse_algebra("dim 2\nbasis a\nunit 1 0\ncounit 0 1\n"); }) == 2);
  CHECK(parse_error_line([] { parse_algebra("dim 2\nbasis a b\nunit 1 0\ncounit 0 1/0\n"); }) == 4);
  CHECK(parse_error_line([] { parse_algebra("# header\n\ndim 1\nbasis a\nunit 1\ncounit 1\nmul 1 2 -> 1:1\n"); }) == 7);
  CHECK(parse_error_line([] { parse_algebra("dim 1\nbasis a\nunit 1\ncounit 1\nmul 1 1 -> 1:1\nmul 1 1 -> 1:2\n"); }) ==
        6);
  CHECK(parse_error_line([] { parse_algebra("dim 1\nbasis a\nunit 1\ncounit 1\nmul 1 1 -> 1\n"); }) == 5);
  CHECK(parse_error_line([] { parse_algebra("dim x\nbasis a\nunit 1\ncounit 1\n"); }) == 1);
  CHECK_THROWS_AS(load_algebra(data_dir / "missing.fa"), FileError);
}

TEST_CASE("group files") {
  const auto G = load_group(data_dir / "s3.group");
  CHECK(G == s3());
  CHECK(parse_group(format_group(klein())) == klein());
  auto Z3 = parse_group("group 3\n0 1 2\n1 2 0\n2 0 1\n");
  CHECK(Z3.label(2) == "2");
  CHECK(parse_error_line([] { parse_group("group 2\n0 1\n1\n"); }) == 3);
  CHECK(parse_error_line([] { parse_group("group 2\n0 1\n1 0\nlabels a\n"); }) == 4);
  CHECK_THROWS_AS(parse_group("group 2\n0 1\n0 1\n"), StructuralError);
}

TEST_CASE("bundle round trip") {
  for (const auto& B : {from_group_algebra<Q>(s3()), fixed_point_s3(), klein_gerbe(), gauged_s3(4)}) {
    const auto text = format_bundle(B, "g");
    auto back = parse_bundle(text, only(B.group()));
    CHECK_FALSE(bundle_difference(back, B));
  }
  auto file = load_bundle(data_dir / "s3_fixed_points.bundle");
  CHECK_FALSE(bundle_difference(file, fixed_point_s3()));
  CHECK(validate_bundle(file).pass());
}

TEST_CASE("bundle tensor layout") {
  // Z2 with a 2-dimensional fiber over the identity: transport entries are
  // listed input index first, i.e. the transpose of the matrix
  const auto Z2 = FiniteGroup::cyclic(2);
  const std::string text =
      "bundle over z2\nfiber 0 dim 2\nfiber 1 dim 1\n"
      "transport 0 0 : 1 0 0 1\ntransport 0 1 : 1\ntransport 1 0 : 0 1 1 0\ntransport 1 1 : 1\n"
      "transport 1 0 : 1 0 0 1\n";
  CHECK(parse_error_line([&] { parse_bundle(text, only(Z2)); }) == 8);
  const std::string ok =
      "bundle over z2\nfiber 0 dim 2\nfiber 1 dim 1\n"
      "transport 0 0 : 1 0 0 1\ntransport 0 1 : 1\ntransport 1 0 : 0 2 3 0\ntransport 1 1 : 1\n"
      "fusion 0 1 : 5 7\nfission 1 0 : 11 13\nunit : 1 0\ncounit : 0 1\n";
  auto B = parse_bundle(ok, only(Z2));
  CHECK(B.transport(1, 0)(1, 0) == Q(2));
  CHECK(B.transport(1, 0)(0, 1) == Q(3));
  CHECK(B.fusion(0, 1)(0, 1) == Q(7));
  CHECK(B.fission(1, 0)(1, 0) == Q(13));
  CHECK(B.fusion(0, 0) == Matrix<Q>::Zero(2, 4));
}

TEST_CASE("bundle errors") {
  const auto Z2 = FiniteGroup::cyclic(2);
  const std::string head = "bundle over z2\nfiber 0 dim 1\nfiber 1 dim 1\n";
  const std::string transports = "transport 0 0 : 1\ntransport 0 1 : 1\ntransport 1 0 : 1\ntransport 1 1 : 1\n";
  CHECK_NOTHROW(parse_bundle(head + transports + "unit : 1\ncounit : 1\n", only(Z2)));
  CHECK_THROWS_AS(parse_bundle(head + transports + "unit : 1\n", only(Z2)), ParseError);
  CHECK_THROWS_AS(parse_bundle(head + "unit : 1\ncounit : 1\n", only(Z2)), ParseError);
  CHECK_THROWS_AS(parse_bundle("bundle over z2\nfiber 0 dim 1\nunit : 1\n", only(Z2)), ParseError);
  CHECK(parse_error_line([&] { parse_bundle(head + "fusion 0 7 : 1\n", only(Z2)); }) == 4);
  CHECK(parse_error_line([&] { parse_bundle(head + "fusion 0 1 : 1 2\n", only(Z2)); }) == 4);
  CHECK(parse_error_line([&] { parse_bundle(head + "holonomy 0 1 : 1\n", only(Z2)); }) == 4);
  CHECK(parse_error_line([&] { parse_bundle("bundle on z2\n", only(Z2)); }) == 1);
  CHECK(parse_error_line([&] { parse_bundle("bundle over z2\nfiber 0 dim 0\n", only(Z2)); }) == 2);
  CHECK_THROWS_AS(load_bundle(data_dir / "s3_fixed_points.bundle.missing"), FileError);
}

TEST_CASE("cocycle files") {
  const auto file = load_cocycle(data_dir / "klein_sign.cocycle");
  const auto G = file.group();
  const auto theta = klein_sign_cocycle<Q>(G);
  const auto reference = from_cocycle<Q>(G, theta);
  for (Element g = 0; g < 4; ++g) {
    for (Element h = 0; h < 4; ++h) {
      CHECK(file.theta(g, h) == theta[g][h]);
      CHECK(file.tau(g, h) == reference.tau(g, h));
    }
  }
  CHECK(check_cocycle(file).pass());

  // explicit tau lines switch off the transgression
  auto flat = parse_cocycle("cocycle over k\ntheta 0_1 1_0 = -1\ntau 0_0 0_0 = 1\n", only(klein()));
  CHECK(flat.tau(G.element("1_0"), G.element("0_1")) == Q(1));
  CHECK(parse_error_line([] { parse_cocycle("cocycle over k\ntheta 0_1 = -1\n", only(klein())); }) == 2);
  CHECK(parse_error_line([] { parse_cocycle("cocycle over k\n\ntheta 0_1 0_1 = a\n", only(klein())); }) == 3);
  CHECK(parse_error_line([] {
          parse_cocycle("cocycle over k\ntau 0_1 0_1 = 1\ntau 0_1 0_1 = 1\n", only(klein()));
        }) == 3);
}
