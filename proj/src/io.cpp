#include "tft/io.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "tft/errors.hpp"

namespace tft {

namespace {

using Q = Rational;

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  for (std::size_t n = 1; std::getline(in, raw); ++n) {
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    Line line{n, {}};
    for (std::string w; words >> w;) line.tokens.push_back(w);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

[[noreturn]] void fail(const Line& line, const std::string& what) { throw ParseError(what, line.number); }

Q rational(const Line& line, const std::string& token) {
  try {
    return Q::parse(token);
  } catch (const Error&) {
    fail(line, "'" + token + "' is not a rational number");
  }
}

std::size_t integer(const Line& line, const std::string& token) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || token.empty() || token[0] == '-') fail(line, "'" + token + "' is not a nonnegative integer");
  return v;
}

void expect_keyword(const Line& line, std::string_view keyword, std::size_t min_tokens) {
  if (line.tokens[0] != keyword) fail(line, "expected '" + std::string(keyword) + "', got '" + line.tokens[0] + "'");
  if (line.tokens.size() < min_tokens) fail(line, "'" + std::string(keyword) + "' line is too short");
}

Element element(const FiniteGroup& G, const Line& line, const std::string& label) {
  for (Element x = 0; x < G.order(); ++x) {
    if (G.label(x) == label) return x;
  }
  fail(line, "unknown group element '" + label + "'");
}

// Everything after a ':' token (or a token ending in ':').
std::vector<Q> values_after_colon(const Line& line) {
  std::vector<Q> out;
  bool seen = false;
  for (const auto& t : line.tokens) {
    if (!seen) {
      if (t == ":") seen = true;
      continue;
    }
    out.push_back(rational(line, t));
  }
  if (!seen) fail(line, "missing ':' before the values");
  return out;
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? " " : "") + xs[i];
  return out;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// ---------------------------------------------------------------------------
// Algebras

FrobeniusAlgebra<Q> parse_algebra(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.size() < 4) throw ParseError("an algebra file needs dim, basis, unit and counit lines", lines.size() + 1);
  expect_keyword(lines[0], "dim", 2);
  const auto n = integer(lines[0], lines[0].tokens[1]);
  if (n == 0) fail(lines[0], "dimension must be positive");
  const auto m = static_cast<Eigen::Index>(n);

  expect_keyword(lines[1], "basis", 1);
  std::vector<std::string> basis(lines[1].tokens.begin() + 1, lines[1].tokens.end());
  if (basis.size() != n) fail(lines[1], "basis has " + std::to_string(basis.size()) + " names, expected " + std::to_string(n));

  auto vector_line = [&](const Line& line, std::string_view keyword) {
    expect_keyword(line, keyword, 1);
    if (line.tokens.size() - 1 != n) {
      fail(line, std::string(keyword) + " has " + std::to_string(line.tokens.size() - 1) + " entries, expected " +
                     std::to_string(n));
    }
    std::vector<Q> v;
    for (std::size_t i = 1; i < line.tokens.size(); ++i) v.push_back(rational(line, line.tokens[i]));
    return v;
  };
  const auto u = vector_line(lines[2], "unit");
  const auto c = vector_line(lines[3], "counit");
  Vector<Q> unit(m);
  RowVector<Q> counit(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    unit(i) = u[static_cast<std::size_t>(i)];
    counit(i) = c[static_cast<std::size_t>(i)];
  }

  Matrix<Q> mul = Matrix<Q>::Zero(m, m * m);
  std::vector<bool> seen(n * n, false);
  for (std::size_t l = 4; l < lines.size(); ++l) {
    const auto& line = lines[l];
    expect_keyword(line, "mul", 5);
    if (line.tokens[3] != "->") fail(line, "expected '->' after the two factors");
    const auto i = integer(line, line.tokens[1]);
    const auto j = integer(line, line.tokens[2]);
    if (i < 1 || i > n || j < 1 || j > n) fail(line, "basis index out of range");
    if (seen[(i - 1) * n + (j - 1)]) fail(line, "product e" + std::to_string(i) + " e" + std::to_string(j) + " given twice");
    seen[(i - 1) * n + (j - 1)] = true;
    std::string terms;
    for (std::size_t t = 4; t < line.tokens.size(); ++t) terms += line.tokens[t];
    std::istringstream parts(terms);
    for (std::string term; std::getline(parts, term, ',');) {
      const auto colon = term.find(':');
      if (colon == std::string::npos) fail(line, "term '" + term + "' is not <k>:<c>");
      const auto k = integer(line, term.substr(0, colon));
      if (k < 1 || k > n) fail(line, "basis index out of range");
      mul(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>((i - 1) * n + (j - 1))) +=
          rational(line, term.substr(colon + 1));
    }
  }
  return FrobeniusAlgebra<Q>(std::move(basis), std::move(mul), std::move(unit), std::move(counit));
}

std::string format_algebra(const FrobeniusAlgebra<Q>& a) {
  const auto n = a.dim();
  std::ostringstream os;
  os << "dim " << n << "\nbasis " << join(a.basis()) << "\nunit";
  for (std::size_t i = 0; i < n; ++i) os << ' ' << a.unit()(static_cast<Eigen::Index>(i));
  os << "\ncounit";
  for (std::size_t i = 0; i < n; ++i) os << ' ' << a.counit()(static_cast<Eigen::Index>(i));
  os << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::string terms;
      for (std::size_t k = 0; k < n; ++k) {
        const auto& c = a.structure_constant(i, j, k);
        if (!c.is_zero()) terms += (terms.empty() ? "" : ",") + std::to_string(k + 1) + ":" + c.str();
      }
      if (!terms.empty()) os << "mul " << i + 1 << ' ' << j + 1 << " -> " << terms << '\n';
    }
  }
  return os.str();
}

FrobeniusAlgebra<Q> load_algebra(const std::filesystem::path& path) { return parse_algebra(read_file(path)); }

// ---------------------------------------------------------------------------
// Groups

FiniteGroup parse_group(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError("empty group file", 1);
  expect_keyword(lines[0], "group", 2);
  const auto m = integer(lines[0], lines[0].tokens[1]);
  if (m == 0) fail(lines[0], "group order must be positive");
  if (lines.size() < m + 1) throw ParseError("expected " + std::to_string(m) + " table rows", lines.back().number + 1);
  std::vector<std::vector<Element>> table;
  for (std::size_t r = 1; r <= m; ++r) {
    const auto& line = lines[r];
    if (line.tokens.size() != m) fail(line, "table row has " + std::to_string(line.tokens.size()) + " entries, expected " + std::to_string(m));
    std::vector<Element> row;
    for (const auto& t : line.tokens) {
      const auto x = integer(line, t);
      if (x >= m) fail(line, "table entry " + t + " out of range");
      row.push_back(x);
    }
    table.push_back(std::move(row));
  }
  std::vector<std::string> labels;
  if (lines.size() > m + 1) {
    const auto& line = lines[m + 1];
    expect_keyword(line, "labels", 1);
    labels.assign(line.tokens.begin() + 1, line.tokens.end());
    if (labels.size() != m) fail(line, "expected " + std::to_string(m) + " labels");
    if (lines.size() > m + 2) fail(lines[m + 2], "unexpected content after the labels");
  } else {
    for (std::size_t i = 0; i < m; ++i) labels.push_back(std::to_string(i));
  }
  return FiniteGroup(std::move(table), std::move(labels));
}

std::string format_group(const FiniteGroup& G) {
  std::ostringstream os;
  os << "group " << G.order() << '\n';
  for (Element a = 0; a < G.order(); ++a) {
    for (Element b = 0; b < G.order(); ++b) os << (b ? " " : "") << G.multiply(a, b);
    os << '\n';
  }
  os << "labels " << join(G.labels()) << '\n';
  return os.str();
}

FiniteGroup load_group(const std::filesystem::path& path) { return parse_group(read_file(path)); }

// ---------------------------------------------------------------------------
// Bundles

CrossedBundle<Q> parse_bundle(std::string_view text, const GroupLoader& groups) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError("empty bundle file", 1);
  const auto& head = lines[0];
  if (head.tokens.size() != 3 || head.tokens[0] != "bundle" || head.tokens[1] != "over") {
    fail(head, "expected 'bundle over <groupfile>'");
  }
  const FiniteGroup G = groups(head.tokens[2]);
  const auto m = G.order();

  std::vector<std::optional<std::size_t>> dims(m);
  std::size_t body = 1;
  for (; body < lines.size() && lines[body].tokens[0] == "fiber"; ++body) {
    const auto& line = lines[body];
    if (line.tokens.size() != 4 || line.tokens[2] != "dim") fail(line, "expected 'fiber <g> dim <d>'");
    const auto g = element(G, line, line.tokens[1]);
    if (dims[g]) fail(line, "fiber " + line.tokens[1] + " given twice");
    const auto d = integer(line, line.tokens[3]);
    if (d == 0) fail(line, "fiber dimensions must be positive");
    dims[g] = d;
  }
  std::vector<std::size_t> d(m);
  for (Element g = 0; g < m; ++g) {
    if (!dims[g]) throw ParseError("no fiber line for " + G.label(g), body < lines.size() ? lines[body].number : lines.back().number);
    d[g] = *dims[g];
  }
  CrossedBundle<Q> B(G, d);

  auto count_check = [](const Line& line, const std::vector<Q>& v, std::size_t expected) {
    if (v.size() != expected) {
      fail(line, "expected " + std::to_string(expected) + " values, got " + std::to_string(v.size()));
    }
  };
  std::vector<bool> have_transport(m * m, false);
  bool have_unit = false, have_counit = false;
  std::map<std::pair<std::string, std::size_t>, bool> seen;
  for (std::size_t l = body; l < lines.size(); ++l) {
    const auto& line = lines[l];
    const auto& kw = line.tokens[0];
    if (kw == "unit" || kw == "counit") {
      const auto v = values_after_colon(line);
      count_check(line, v, d[G.identity()]);
      auto& flag = kw == "unit" ? have_unit : have_counit;
      if (flag) fail(line, kw + " given twice");
      flag = true;
      if (kw == "unit") {
        B.set_unit(Eigen::Map<const Vector<Q>>(v.data(), static_cast<Eigen::Index>(v.size())));
      } else {
        B.set_counit(Eigen::Map<const RowVector<Q>>(v.data(), static_cast<Eigen::Index>(v.size())));
      }
      continue;
    }
    if (kw != "fusion" && kw != "fission" && kw != "transport") fail(line, "unknown block '" + kw + "'");
    if (line.tokens.size() < 4) fail(line, "expected '" + kw + " <a> <b> : values'");
    const auto a = element(G, line, line.tokens[1]);
    const auto b = element(G, line, line.tokens[2]);
    if (seen[{kw, a * m + b}]) fail(line, kw + " " + line.tokens[1] + " " + line.tokens[2] + " given twice");
    seen[{kw, a * m + b}] = true;
    const auto v = values_after_colon(line);
    const auto ab = G.multiply(a, b);
    const auto da = static_cast<Eigen::Index>(d[a]);
    const auto db = static_cast<Eigen::Index>(d[b]);
    if (kw == "fusion") {
      const auto dab = static_cast<Eigen::Index>(d[ab]);
      count_check(line, v, d[a] * d[b] * d[ab]);
      Matrix<Q> mu(dab, da * db);
      std::size_t t = 0;
      for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index j = 0; j < db; ++j)
          for (Eigen::Index k = 0; k < dab; ++k) mu(k, i * db + j) = v[t++];
      B.set_fusion(a, b, std::move(mu));
    } else if (kw == "fission") {
      const auto dab = static_cast<Eigen::Index>(d[ab]);
      count_check(line, v, d[a] * d[b] * d[ab]);
      Matrix<Q> nu(da * db, dab);
      std::size_t t = 0;
      for (Eigen::Index k = 0; k < dab; ++k)
        for (Eigen::Index i = 0; i < da; ++i)
          for (Eigen::Index j = 0; j < db; ++j) nu(i * db + j, k) = v[t++];
      B.set_fission(a, b, std::move(nu));
    } else {
      const auto target = static_cast<Eigen::Index>(d[G.conjugate(a, b)]);
      count_check(line, v, d[b] * d[G.conjugate(a, b)]);
      Matrix<Q> p(target, db);
      std::size_t t = 0;
      for (Eigen::Index i = 0; i < db; ++i)
        for (Eigen::Index j = 0; j < target; ++j) p(j, i) = v[t++];
      B.set_transport(a, b, std::move(p));
      have_transport[a * m + b] = true;
    }
  }
  const auto last = lines.back().number;
  for (Element k = 0; k < m; ++k) {
    for (Element g = 0; g < m; ++g) {
      if (!have_transport[k * m + g]) throw ParseError("missing transport " + G.label(k) + " " + G.label(g), last);
    }
  }
  if (!have_unit) throw ParseError("missing unit", last);
  if (!have_counit) throw ParseError("missing counit", last);
  return B;
}

std::string format_bundle(const CrossedBundle<Q>& B, const std::string& group_path) {
  const auto& G = B.group();
  const auto m = G.order();
  std::ostringstream os;
  os << "bundle over " << group_path << '\n';
  for (Element g = 0; g < m; ++g) os << "fiber " << G.label(g) << " dim " << B.dim(g) << '\n';
  auto block = [&](const std::string& head, const std::vector<Q>& v) {
    bool zero = true;
    for (const auto& x : v) zero = zero && x.is_zero();
    if (zero && head.rfind("transport", 0) != 0) return;
    os << head << " :";
    for (const auto& x : v) os << ' ' << x;
    os << '\n';
  };
  for (Element a = 0; a < m; ++a) {
    for (Element b = 0; b < m; ++b) {
      const auto& mu = B.fusion(a, b);
      const auto& nu = B.fission(a, b);
      const auto da = static_cast<Eigen::Index>(B.dim(a));
      const auto db = static_cast<Eigen::Index>(B.dim(b));
      const auto dab = static_cast<Eigen::Index>(B.dim(G.multiply(a, b)));
      std::vector<Q> fv, nv;
      for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index j = 0; j < db; ++j)
          for (Eigen::Index k = 0; k < dab; ++k) fv.push_back(mu(k, i * db + j));
      for (Eigen::Index k = 0; k < dab; ++k)
        for (Eigen::Index i = 0; i < da; ++i)
          for (Eigen::Index j = 0; j < db; ++j) nv.push_back(nu(i * db + j, k));
      const auto pair = G.label(a) + " " + G.label(b);
      block("fusion " + pair, fv);
      block("fission " + pair, nv);
    }
  }
  for (Element k = 0; k < m; ++k) {
    for (Element g = 0; g < m; ++g) {
      const auto& p = B.transport(k, g);
      std::vector<Q> v;
      for (Eigen::Index i = 0; i < p.cols(); ++i)
        for (Eigen::Index j = 0; j < p.rows(); ++j) v.push_back(p(j, i));
      block("transport " + G.label(k) + " " + G.label(g), v);
    }
  }
  os << "unit :";
  for (Eigen::Index i = 0; i < B.unit().size(); ++i) os << ' ' << B.unit()(i);
  os << "\ncounit :";
  for (Eigen::Index i = 0; i < B.counit().size(); ++i) os << ' ' << B.counit()(i);
  os << '\n';
  return os.str();
}

namespace {

GroupLoader relative_to(const std::filesystem::path& file) {
  return [dir = file.parent_path()](const std::string& name) {
    const std::filesystem::path p(name);
    return load_group(p.is_absolute() ? p : dir / p);
  };
}

}  // namespace

CrossedBundle<Q> load_bundle(const std::filesystem::path& path) {
  return parse_bundle(read_file(path), relative_to(path));
}

// ---------------------------------------------------------------------------
// Cocycles

ScalarBundle<Q> parse_cocycle(std::string_view text, const GroupLoader& groups) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError("empty cocycle file", 1);
  const auto& head = lines[0];
  if (head.tokens.size() != 3 || head.tokens[0] != "cocycle" || head.tokens[1] != "over") {
    fail(head, "expected 'cocycle over <groupfile>'");
  }
  const FiniteGroup G = groups(head.tokens[2]);
  const auto m = G.order();
  std::vector<std::vector<Q>> theta(m, std::vector<Q>(m, Q(1)));
  std::vector<std::vector<std::optional<Q>>> tau(m, std::vector<std::optional<Q>>(m));
  bool any_tau = false;
  std::vector<bool> seen(2 * m * m, false);
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto& line = lines[l];
    const auto& kw = line.tokens[0];
    if (kw != "theta" && kw != "tau") fail(line, "unknown entry '" + kw + "'");
    if (line.tokens.size() != 5 || line.tokens[3] != "=") fail(line, "expected '" + kw + " <a> <b> = <value>'");
    const auto a = element(G, line, line.tokens[1]);
    const auto b = element(G, line, line.tokens[2]);
    const auto slot = (kw == "tau" ? m * m : 0) + a * m + b;
    if (seen[slot]) fail(line, kw + " " + line.tokens[1] + " " + line.tokens[2] + " given twice");
    seen[slot] = true;
    const auto v = rational(line, line.tokens[4]);
    if (kw == "theta") {
      theta[a][b] = v;
    } else {
      tau[a][b] = v;
      any_tau = true;
    }
  }
  auto b = from_cocycle<Q>(G, theta);
  if (any_tau) {
    for (Element k = 0; k < m; ++k)
      for (Element g = 0; g < m; ++g) b.set_tau(k, g, tau[k][g].value_or(Q(1)));
  }
  return b;
}

ScalarBundle<Q> load_cocycle(const std::filesystem::path& path) {
  return parse_cocycle(read_file(path), relative_to(path));
}

}  // namespace tft
