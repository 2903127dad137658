#include <doctest.h>

#include <sstream>

#include "tft/cli.hpp"

namespace {

const std::string data = std::string(TFT_DATA_DIR) + "/";

struct Run {
  int code;
  std::string out;

  std::string last_line() const {
    auto end = out.find_last_not_of('\n');
    auto start = out.rfind('\n', end);
    return out.substr(start == std::string::npos ? 0 : start + 1, end - (start == std::string::npos ? 0 : start + 1) + 1);
  }
  bool has(const std::string& s) const { return out.find(s) != std::string::npos; }
};

Run run(std::vector<std::string> args) {
  std::ostringstream os;
  const int code = tft::cli::run(args, os);
  return {code, os.str()};
}

}  // namespace

TEST_CASE("validate the dual numbers") {
  auto r = run({"validate", "--algebra", data + "dual_numbers.fa"});
  CHECK(r.code == 0);
  for (const char* axiom : {"associativity", "commutativity", "unit", "nondegeneracy"}) {
    CHECK(r.has(std::string("  ") + axiom + ": ok"));
  }
  CHECK(r.has("axioms checked: 4"));
  CHECK(r.last_line() == "RESULT: PASS 4/4 axioms");
}

TEST_CASE("invariant of the dual numbers") {
  auto r = run({"invariant", "--algebra", data + "dual_numbers.fa", "--genus", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("2\n", 0) == 0);
  CHECK(r.last_line().rfind("RESULT: PASS", 0) == 0);
  auto s3 = run({"invariant", "--algebra", "lib:group_center:S3", "--genus", "2"});
  CHECK(s3.out.rfind("81\n", 0) == 0);
  auto f = run({"invariant", "--algebra", "lib:group_center:S3", "--genus", "2", "--mode", "float"});
  CHECK(f.code == 0);
  CHECK(f.out.rfind("81\n", 0) == 0);
}

TEST_CASE("fuzz 200 pairs") {
  auto r = run({"fuzz-equiv", "--algebra", data + "dual_numbers.fa", "--count", "200", "--seed", "42", "--max-layers",
                "8"});
  CHECK(r.code == 0);
  CHECK(r.has("200/200 agreements"));
  CHECK(r.last_line() == "RESULT: PASS 200/200 agreements");
}

TEST_CASE("output is deterministic") {
  const std::vector<std::vector<std::string>> commands{
      {"fuzz-equiv", "--algebra", "lib:group_center:S3", "--count", "20", "--seed", "7"},
      {"holonomy", "--bundle", data + "s3_fixed_points.bundle", "--labels", "213,132,132,213"},
      {"validate", "--bundle", data + "z2_bad_unit.bundle"},
  };
  for (const auto& c : commands) CHECK(run(c).out == run(c).out);
}

TEST_CASE("planted failures exit with 1") {
  const std::vector<std::vector<std::string>> commands{
      {"validate", "--algebra", data + "dual_numbers_degenerate.fa"},
      {"validate", "--algebra", data + "noncommutative.fa"},
      {"validate", "--bundle", data + "z2_bad_unit.bundle"},
      {"validate", "--cocycle", data + "klein_bad.cocycle"},
      {"cocycle", "--cocycle", data + "klein_bad.cocycle"},
      {"invariant", "--algebra", data + "dual_numbers_degenerate.fa", "--genus", "2"},
  };
  for (const auto& c : commands) {
    auto r = run(c);
    INFO(r.out);
    CHECK(r.code == 1);
    CHECK(r.last_line().rfind("RESULT: FAIL", 0) == 0);
  }
  CHECK(run({"validate", "--bundle", data + "z2_bad_unit.bundle"}).last_line() == "RESULT: FAIL failed unit");
}

TEST_CASE("bad input exits with 2") {
  const std::vector<std::vector<std::string>> commands{
      {"validate", "--algebra", data + "broken_syntax.fa"},
      {"validate", "--algebra", data + "no_such_file.fa"},
      {"validate"},
      {"validate", "--algebra", "lib:dual_numbers", "--bundle", "lib:sign_gerbe"},
      {"eval", "--algebra", "lib:dual_numbers", "--word", "pants ; cup ; pants"},
      {"eval", "--algebra", "lib:dual_numbers", "--word", "pants ; ; cup"},
      {"eval", "--bundle", "lib:fixed_points:S3", "--word", "cap[213]"},
      {"holonomy", "--bundle", "lib:group_algebra:S3", "--labels", "213,132"},
      {"holonomy", "--bundle", "lib:group_algebra:S3", "--labels", "213"},
      {"validate", "--algebra", "lib:octonions"},
      {"validate", "--algebra", "lib:dual_numbers", "--mode", "fuzzy"},
      {"frobnicate"},
      {},
  };
  for (const auto& c : commands) {
    auto r = run(c);
    INFO(r.out);
    CHECK(r.code == 2);
    CHECK(r.last_line().rfind("RESULT: FAIL", 0) == 0);
  }
}

TEST_CASE("eval prints the matrix") {
  auto r = run({"eval", "--algebra", "lib:dual_numbers", "--word", "pants"});
  CHECK(r.code == 0);
  CHECK(r.has("2 x 4\n1 0 0 0\n0 1 1 0\n"));
  auto b = run({"eval", "--bundle", "lib:fixed_points:S3", "--word", "pants[213,213] ; id[231] ; cup[]"});
  CHECK(b.code == 0);
  CHECK(b.has("1 x 4\n1 0 0 1\n"));
}

TEST_CASE("type of words and labeled surfaces") {
  auto r = run({"type", "--word", "copants ; pants"});
  CHECK(r.has("type: genus 1 in {1} out {1}"));
  auto s = run({"type", "--group", data + "klein.group", "--surface", data + "klein_torus.surface"});
  CHECK(s.code == 0);
  CHECK(s.has("labels: [] -> []"));
  CHECK(s.has("type: genus 1 in {} out {}"));
}

TEST_CASE("gerbe holonomy from the command line") {
  auto r = run({"holonomy", "--cocycle", data + "klein_sign.cocycle", "--labels", "1_0,0_1"});
  CHECK(r.code == 0);
  CHECK(r.has("closed form: -1"));
  CHECK(r.last_line() == "RESULT: PASS holonomy -1");
  auto s = run({"holonomy", "--cocycle", "lib:sign_gerbe", "--surface", data + "klein_torus.surface"});
  CHECK(s.last_line() == "RESULT: PASS holonomy -1");
  auto c = run({"cocycle", "--cocycle", data + "klein_sign.cocycle", "--labels", "1_0,0_1"});
  CHECK(c.code == 0);
  CHECK(c.has("holonomy: evaluator -1, closed form -1"));
  auto g = run({"holonomy", "--bundle", "lib:fixed_points:S3", "--genus", "2"});
  CHECK(g.code == 0);
}

TEST_CASE("roundtrip from the command line") {
  auto r = run({"roundtrip", "--bundle", data + "z2_group_algebra.bundle", "--max-generators", "2"});
  CHECK(r.code == 0);
  CHECK(r.last_line() == "RESULT: PASS 3/3 axioms");
}

TEST_CASE("help") {
  auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.has("fuzz-equiv"));
}
