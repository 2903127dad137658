#include "tft/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "tft/bundle_structure.hpp"
#include "tft/crossed_bundle.hpp"
#include "tft/errors.hpp"
#include "tft/evaluate.hpp"
#include "tft/frobenius_algebra.hpp"
#include "tft/io.hpp"
#include "tft/rank_one.hpp"
#include "tft/reconstruction.hpp"
#include "tft/rewrite.hpp"
#include "tft/surfaces.hpp"

namespace tft::cli {

namespace {

using Q = Rational;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::string algebra, bundle, group, word, surface, labels, cocycle;
  std::optional<std::size_t> genus;
  std::size_t count = 100;
  std::uint64_t seed = 0;
  std::size_t max_layers = 8;
  std::size_t max_generators = 3;
  std::string mode = "exact";
  double tolerance = kDefaultTolerance;
};

struct Outcome {
  bool pass = true;
  std::string details;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string part; std::getline(in, part, sep);) out.push_back(part);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

bool is_library(const std::string& s) { return s.rfind("lib:", 0) == 0; }

std::size_t small_number(const std::string& s, const std::string& what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 3) {
    throw StructuralError("bad " + what + " '" + s + "'");
  }
  return std::stoul(s);
}

// S<n>, Z<n>, klein, trivial
FiniteGroup named_group(const std::string& name) {
  if (name == "trivial") return FiniteGroup::trivial();
  if (name == "klein" || name == "V4") {
    return FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  }
  if (name.size() > 1 && name[0] == 'S') {
    const auto n = small_number(name.substr(1), "symmetric group degree");
    if (n < 1 || n > 5) throw StructuralError("symmetric groups S1..S5 only");
    return FiniteGroup::symmetric(n);
  }
  if (name.size() > 1 && name[0] == 'Z') {
    const auto n = small_number(name.substr(1), "cyclic group order");
    if (n < 1) throw StructuralError("cyclic group of order 0");
    return FiniteGroup::cyclic(n);
  }
  throw StructuralError("unknown library group '" + name + "'");
}

FiniteGroup group_from(const std::string& spec) {
  return is_library(spec) ? named_group(spec.substr(4)) : load_group(spec);
}

FrobeniusAlgebra<Q> algebra_from(const std::string& spec) {
  if (!is_library(spec)) return load_algebra(spec);
  const auto parts = split(spec.substr(4), ':');
  library::Parameters p;
  if (parts.empty()) throw StructuralError("empty library name");
  if (parts[0] == "diagonal") {
    if (parts.size() != 2) throw StructuralError("use lib:diagonal:<w1>,<w2>,...");
    for (const auto& w : split(parts[1], ',')) p.weights.push_back(Q::parse(w));
  } else if (parts[0] == "group_center") {
    if (parts.size() != 2) throw StructuralError("use lib:group_center:<group>");
    p.group = named_group(parts[1]);
  } else if (parts.size() != 1) {
    throw StructuralError("library algebra '" + parts[0] + "' takes no parameters");
  }
  return library::by_name<Q>(parts[0], p);
}

ScalarBundle<Q> sign_gerbe() {
  const auto G = named_group("klein");
  return from_cocycle<Q>(G, klein_sign_cocycle<Q>(G));
}

CrossedBundle<Q> bundle_from(const std::string& spec) {
  if (!is_library(spec)) return load_bundle(spec);
  const auto parts = split(spec.substr(4), ':');
  if (parts.size() == 1 && parts[0] == "sign_gerbe") return to_crossed_bundle(sign_gerbe());
  if (parts.size() == 2 && parts[0] == "group_algebra") return from_group_algebra<Q>(named_group(parts[1]));
  if (parts.size() == 2 && parts[0] == "fixed_points") {
    if (parts[1].size() < 2 || parts[1][0] != 'S') throw StructuralError("fixed_points needs a symmetric group");
    const auto G = named_group(parts[1]);
    return fixed_point_bundle<Q>(G, natural_action(G, small_number(parts[1].substr(1), "degree"), 1));
  }
  if (parts.size() >= 2 && parts[0] == "algebra") {
    return from_frobenius_algebra(algebra_from("lib:" + spec.substr(4 + 8)));
  }
  throw StructuralError("unknown library bundle '" + spec.substr(4) + "'");
}

ScalarBundle<Q> cocycle_from(const std::string& spec) {
  if (!is_library(spec)) return load_cocycle(spec);
  const auto parts = split(spec.substr(4), ':');
  if (parts.size() == 1 && parts[0] == "sign_gerbe") return sign_gerbe();
  if (parts.size() == 2 && parts[0] == "trivial") return ScalarBundle<Q>(named_group(parts[1]));
  throw StructuralError("unknown library cocycle '" + spec.substr(4) + "'");
}

std::string word_text(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return read_file(arg);
  return arg;
}

SurfaceLabels labels_from(const FiniteGroup& G, const std::string& text) {
  const auto names = split(text, ',');
  if (names.empty() || names.size() % 2 != 0) throw LabelError("--labels needs pairs a1,b1,a2,b2,...");
  SurfaceLabels labels;
  for (std::size_t i = 0; i < names.size(); i += 2) labels.handles.emplace_back(G.element(names[i]), G.element(names[i + 1]));
  check_surface_labels(G, labels);
  return labels;
}

// ---------------------------------------------------------------------------
// scalar conversion

template <FieldScalar S>
S scalar(const Q& x) {
  return ScalarTraits<S>::from_rational(x);
}

template <FieldScalar S>
FrobeniusAlgebra<S> as(const FrobeniusAlgebra<Q>& a) {
  if constexpr (std::is_same_v<S, Q>) return a; else return a.template cast<S>();
}

template <FieldScalar S>
CrossedBundle<S> as(const CrossedBundle<Q>& b) {
  if constexpr (std::is_same_v<S, Q>) return b; else return b.template cast<S>();
}

template <FieldScalar S>
ScalarBundle<S> as(const ScalarBundle<Q>& b) {
  if constexpr (std::is_same_v<S, Q>) {
    return b;
  } else {
    const auto& G = b.group();
    ScalarBundle<S> out(G);
    for (Element g = 0; g < G.order(); ++g) {
      for (Element h = 0; h < G.order(); ++h) {
        out.set_theta(g, h, scalar<S>(b.theta(g, h)));
        out.set_tau(g, h, scalar<S>(b.tau(g, h)));
      }
    }
    out.set_counit(scalar<S>(b.counit()));
    return out;
  }
}

template <FieldScalar S>
std::string fmt(const S& x) {
  return ScalarTraits<S>::format(x);
}

template <FieldScalar S>
void print_matrix(std::ostream& out, const Matrix<S>& m) {
  out << m.rows() << " x " << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << fmt(m(i, j));
    out << '\n';
  }
}

Outcome report_outcome(std::ostream& out, const ValidationReport& r) {
  out << format_report(r);
  const auto checked = r.checked_axioms().size();
  const auto failed = r.failed_axioms();
  out << "axioms checked: " << checked << ", failed: " << failed.size() << '\n';
  if (failed.empty()) return {true, std::to_string(checked) + "/" + std::to_string(checked) + " axioms"};
  std::string names;
  for (const auto& f : failed) names += (names.empty() ? "" : ",") + f;
  return {false, "failed " + names};
}

// ---------------------------------------------------------------------------
// commands

template <FieldScalar S>
class Commands {
 public:
  Commands(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  Outcome dispatch() {
    const auto& c = o_.command;
    if (c == "validate") return validate_cmd();
    if (c == "eval") return eval();
    if (c == "invariant") return invariant();
    if (c == "type") return type();
    if (c == "fuzz-equiv") return fuzz();
    if (c == "roundtrip") return roundtrip();
    if (c == "holonomy") return holonomy_cmd();
    if (c == "cocycle") return cocycle();
    throw UsageError("unknown command " + c);
  }

 private:
  const Options& o_;
  std::ostream& out_;

  double tol() const { return o_.tolerance; }

  void need(const std::string& value, const char* flag) const {
    if (value.empty()) throw UsageError(o_.command + " needs " + flag);
  }

  // Exactly one of the given flags must be set; returns its index.
  std::size_t one_of(std::initializer_list<std::pair<const char*, const std::string*>> flags) const {
    std::size_t found = flags.size(), n = 0, i = 0;
    std::string names;
    for (const auto& [name, value] : flags) {
      names += (names.empty() ? "" : " or ") + std::string(name);
      if (!value->empty()) {
        found = i;
        ++n;
      }
      ++i;
    }
    if (n != 1) throw UsageError(o_.command + " needs exactly one of " + names);
    return found;
  }

  // The bundle named by --bundle or --cocycle, if any.
  std::optional<CrossedBundle<S>> labeled_source() const {
    if (!o_.bundle.empty()) return as<S>(bundle_from(o_.bundle));
    if (!o_.cocycle.empty()) return as<S>(to_crossed_bundle(cocycle_from(o_.cocycle)));
    return std::nullopt;
  }

  FiniteGroup labeled_group(const std::optional<CrossedBundle<S>>& source) const {
    if (source) return source->group();
    if (!o_.group.empty()) return group_from(o_.group);
    throw UsageError(o_.command + " on a labeled surface needs --bundle, --cocycle or --group");
  }

  Outcome validate_cmd() {
    switch (one_of({{"--algebra", &o_.algebra}, {"--bundle", &o_.bundle}, {"--cocycle", &o_.cocycle}})) {
      case 0:
        out_ << "validate algebra " << o_.algebra << " (" << o_.mode << ")\n";
        return report_outcome(out_, tft::validate(as<S>(algebra_from(o_.algebra)), tol()));
      case 1:
        out_ << "validate bundle " << o_.bundle << " (" << o_.mode << ")\n";
        return report_outcome(out_, validate_bundle(as<S>(bundle_from(o_.bundle)), tol()));
      default:
        out_ << "validate cocycle " << o_.cocycle << " (" << o_.mode << ")\n";
        return report_outcome(out_, check_cocycle(as<S>(cocycle_from(o_.cocycle)), tol()));
    }
  }

  Outcome eval() {
    need(o_.word, "--word");
    const auto text = word_text(o_.word);
    if (!o_.algebra.empty()) {
      const auto w = parse_word(text);
      const auto a = as<S>(algebra_from(o_.algebra));
      out_ << "word: " << to_string(w) << '\n';
      const Matrix<S> v = evaluate(w, a, tol());
      print_matrix(out_, v);
      return {true, std::to_string(v.rows()) + "x" + std::to_string(v.cols())};
    }
    const auto source = labeled_source();
    if (!source) throw UsageError("eval needs --algebra, --bundle or --cocycle");
    const auto b = parse_labeled(text, source->group());
    out_ << "word: " << to_string(b) << '\n';
    const Matrix<S> v = evaluate_labeled(b, *source);
    print_matrix(out_, v);
    return {true, std::to_string(v.rows()) + "x" + std::to_string(v.cols())};
  }

  Outcome invariant() {
    need(o_.algebra, "--algebra");
    if (!o_.genus) throw UsageError("invariant needs --genus");
    const auto a = as<S>(algebra_from(o_.algebra));
    const S z = closed_invariant(a, *o_.genus, tol());
    const S direct = evaluate(closed_surface_word(*o_.genus), a, tol())(0, 0);
    out_ << fmt(z) << '\n';
    if (!ScalarTraits<S>::equal(z, direct, tol())) {
      out_ << "handle operator and direct contraction disagree: " << fmt(z) << " vs " << fmt(direct) << '\n';
      return {false, "genus " + std::to_string(*o_.genus) + " mismatch"};
    }
    return {true, "genus " + std::to_string(*o_.genus) + " invariant " + fmt(z)};
  }

  Outcome type() {
    if (!o_.word.empty()) {
      if (!o_.surface.empty()) throw UsageError("type takes --word or --surface, not both");
      const auto w = parse_word(word_text(o_.word));
      const auto t = topological_type(w);
      out_ << "word: " << to_string(w) << '\n' << "arity: " << w.arity().in << " -> " << w.arity().out << '\n';
      out_ << "type: " << to_string(t) << '\n';
      return {true, std::to_string(t.components.size()) + " component(s)"};
    }
    need(o_.surface, "--word or --surface");
    const auto source = labeled_source();
    const auto G = labeled_group(source);
    const auto b = parse_labeled(read_file(o_.surface), G);
    const auto t = topological_type(b.shape());
    auto labels = [&](const std::vector<Element>& xs) {
      std::string s;
      for (auto x : xs) s += (s.empty() ? "" : ",") + G.label(x);
      return "[" + s + "]";
    };
    out_ << "surface: " << to_string(b) << '\n';
    out_ << "labels: " << labels(b.input_labels()) << " -> " << labels(b.output_labels()) << '\n';
    out_ << "type: " << to_string(t) << '\n';
    return {true, std::to_string(t.components.size()) + " component(s)"};
  }

  Outcome fuzz() {
    need(o_.algebra, "--algebra");
    if (o_.count == 0) throw UsageError("--count must be positive");
    const auto a = as<S>(algebra_from(o_.algebra));
    std::size_t agree = 0;
    for (std::size_t i = 0; i < o_.count; ++i) {
      const std::uint64_t s = o_.seed + i;
      const Arity arity{s % 3, (s / 3) % 3};
      const auto [w1, w2] = random_equivalent_pair(arity, o_.max_layers, s);
      if (!equivalent(w1, w2)) {
        out_ << "case " << i << ": generator produced inequivalent words\n  " << to_string(w1) << "\n  "
             << to_string(w2) << '\n';
        continue;
      }
      if (auto bad = first_mismatch(evaluate(w1, a, tol()), evaluate(w2, a, tol()), tol())) {
        out_ << "case " << i << " (seed " << s << "): maps differ at (" << bad->first << "," << bad->second
             << ")\n  " << to_string(w1) << "\n  " << to_string(w2) << '\n';
        continue;
      }
      ++agree;
    }
    const auto tally = std::to_string(agree) + "/" + std::to_string(o_.count) + " agreements";
    out_ << "fuzz-equiv " << o_.algebra << " seeds " << o_.seed << ".." << o_.seed + o_.count - 1 << " max layers "
         << o_.max_layers << '\n'
         << tally << '\n';
    return {agree == o_.count, tally};
  }

  Outcome roundtrip() {
    need(o_.bundle, "--bundle");
    const auto B = as<S>(bundle_from(o_.bundle));
    const auto words = enumerate_labeled_words(B.group(), o_.max_generators);
    out_ << "roundtrip " << o_.bundle << " over " << words.size() << " connected words with at most "
         << o_.max_generators << " generators\n";
    return report_outcome(out_, roundtrip_check(B, words, tol()));
  }

  Outcome holonomy_cmd() {
    std::optional<ScalarBundle<S>> rank_one;
    if (!o_.cocycle.empty()) rank_one = as<S>(cocycle_from(o_.cocycle));
    one_of({{"--bundle", &o_.bundle}, {"--cocycle", &o_.cocycle}});
    const auto B = *labeled_source();
    const auto& G = B.group();

    if (!o_.surface.empty()) {
      const auto b = parse_labeled(read_file(o_.surface), G);
      const S value = holonomy(b, B);
      out_ << "surface: " << to_string(b) << "\nholonomy: " << fmt(value) << '\n';
      auto outcome = report_outcome(out_, puncture_check(b, B, tol()));
      outcome.details = "holonomy " + fmt(value) + (outcome.pass ? "" : ", " + outcome.details);
      return outcome;
    }
    SurfaceLabels labels;
    if (!o_.labels.empty()) {
      labels = labels_from(G, o_.labels);
      if (o_.genus && *o_.genus != labels.genus()) throw UsageError("--genus disagrees with --labels");
    } else if (o_.genus) {
      labels.handles.assign(*o_.genus, {G.identity(), G.identity()});
    } else {
      throw UsageError("holonomy needs --surface, --labels or --genus");
    }
    const auto variants = closed_surface_variants(G, labels);
    std::optional<S> first;
    bool agree = true;
    for (const auto& w : variants) {
      const S v = holonomy(w, B);
      out_ << to_string(w) << "\n  = " << fmt(v) << '\n';
      if (!first) first = v;
      agree = agree && ScalarTraits<S>::equal(v, *first, tol());
    }
    if (rank_one) {
      const S closed = closed_form_holonomy(*rank_one, labels);
      out_ << "closed form: " << fmt(closed) << '\n';
      agree = agree && ScalarTraits<S>::equal(closed, *first, tol());
    }
    out_ << variants.size() << " decompositions " << (agree ? "agree" : "disagree") << '\n';
    if (!agree) return {false, "decompositions disagree"};
    return {true, "holonomy " + fmt(*first)};
  }

  Outcome cocycle() {
    need(o_.cocycle, "--cocycle");
    const auto b = as<S>(cocycle_from(o_.cocycle));
    out_ << "cocycle " << o_.cocycle << " over a group of order " << b.group().order() << " (" << o_.mode << ")\n";
    auto outcome = report_outcome(out_, check_cocycle(b, tol()));
    if (!o_.labels.empty()) {
      const auto h = gerbe_holonomy(b, labels_from(b.group(), o_.labels), tol());
      out_ << "holonomy: evaluator " << fmt(h.evaluator) << ", closed form " << fmt(h.closed_form) << '\n';
      if (!h.agree) return {false, "holonomy evaluator and closed form disagree"};
      if (outcome.pass) outcome.details += ", holonomy " + fmt(h.evaluator);
    }
    return outcome;
  }
};

void add_flags(CLI::App* sub, Options& o) {
  sub->add_option("--algebra", o.algebra, "algebra file or lib:<name>");
  sub->add_option("--bundle", o.bundle, "bundle file or lib:<name>");
  sub->add_option("--group", o.group, "group file or lib:<name>");
  sub->add_option("--word", o.word, "bordism word, or a file containing one");
  sub->add_option("--surface", o.surface, "labeled surface file");
  sub->add_option("--genus", o.genus, "genus of a closed surface");
  sub->add_option("--labels", o.labels, "holonomy pairs a1,b1,a2,b2,...");
  sub->add_option("--cocycle", o.cocycle, "cocycle file or lib:<name>");
  sub->add_option("--count", o.count, "number of fuzz cases");
  sub->add_option("--seed", o.seed, "first fuzz seed");
  sub->add_option("--max-layers", o.max_layers, "layer bound for fuzz words");
  sub->add_option("--max-generators", o.max_generators, "generator bound for round-trip words");
  sub->add_option("--mode", o.mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  sub->add_option("--tolerance", o.tolerance, "comparison tolerance in float mode");
}

int finish(std::ostream& out, int code, const std::string& details) {
  out << "RESULT: " << (code == kPass ? "PASS" : "FAIL") << ' ' << details << '\n';
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out) {
  Options o;
  CLI::App app{"Evaluators and axiom checks for 2d field theories and their crossed bundles", "tft"};
  app.require_subcommand(1, 1);
  const std::vector<std::pair<const char*, const char*>> commands{
      {"validate", "check the axioms of an algebra, bundle or cocycle"},
      {"eval", "evaluate a word"},
      {"invariant", "closed-surface invariant of an algebra"},
      {"type", "topological type of a word or labeled surface"},
      {"fuzz-equiv", "evaluate random equivalent word pairs"},
      {"roundtrip", "rebuild a bundle from its field theory"},
      {"holonomy", "holonomy of closed labeled surfaces"},
      {"cocycle", "check a rank-one cocycle"}};
  for (const auto& [name, help] : commands) add_flags(app.add_subcommand(name, help), o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, out);
    if (code == 0) return finish(out, kPass, "help");
    return finish(out, kInputError, "usage");
  }
  o.command = app.get_subcommands().front()->get_name();

  try {
    const auto outcome =
        o.mode == "exact" ? Commands<Q>(o, out).dispatch() : Commands<Complex>(o, out).dispatch();
    return finish(out, outcome.pass ? kPass : kFail, outcome.details);
  } catch (const ExtractionError& e) {
    out << "extraction failed (" << e.axiom() << "): " << e.what() << '\n';
    return finish(out, kFail, "extraction " + e.axiom());
  } catch (const DegenerateError& e) {
    out << "degenerate: " << e.what() << '\n';
    return finish(out, kFail, "degenerate");
  } catch (const ParseError& e) {
    out << "parse error: " << e.what() << '\n';
    return finish(out, kInputError, "parse error");
  } catch (const FileError& e) {
    out << "file error: " << e.what() << '\n';
    return finish(out, kInputError, "file error");
  } catch (const ArityError& e) {
    out << "arity error: " << e.what() << '\n';
    return finish(out, kInputError, "arity error");
  } catch (const LabelError& e) {
    out << "label error: " << e.what() << '\n';
    return finish(out, kInputError, "label error");
  } catch (const UsageError& e) {
    out << "usage: " << e.what() << '\n';
    return finish(out, kInputError, "usage");
  } catch (const Error& e) {
    out << "error: " << e.what() << '\n';
    return finish(out, kInputError, "error");
  } catch (const std::invalid_argument& e) {
    out << "error: " << e.what() << '\n';
    return finish(out, kInputError, "error");
  }
}

}  // namespace tft::cli
