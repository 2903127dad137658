#include "tft/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "tft/errors.hpp"

namespace tft {

FiniteGroup::FiniteGroup(std::vector<std::vector<Element>> table, std::vector<std::string> labels)
    : table_(std::move(table)), labels_(std::move(labels)) {
  const std::size_t m = table_.size();
  if (m == 0) throw StructuralError("group must have at least one element");
  if (labels_.size() != m) throw StructuralError("group needs exactly one label per element");
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != m) throw StructuralError("group labels must be distinct");
  for (const auto& l : labels_) {
    if (l.empty() || l.find_first_of(" \t,;*()[]#") != std::string::npos) {
      throw StructuralError("invalid group label '" + l + "'");
    }
  }
  for (const auto& row : table_) {
    if (row.size() != m) throw StructuralError("multiplication table must be square");
    for (auto x : row) {
      if (x >= m) throw StructuralError("multiplication table entry out of range");
    }
  }
  bool found = false;
  for (Element e = 0; e < m && !found; ++e) {
    bool is_identity = true;
    for (Element a = 0; a < m && is_identity; ++a) is_identity = table_[e][a] == a && table_[a][e] == a;
    if (is_identity) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw StructuralError("multiplication table has no identity");
  for (Element a = 0; a < m; ++a) {
    for (Element b = 0; b < m; ++b) {
      for (Element c = 0; c < m; ++c) {
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) {
          throw StructuralError("multiplication table is not associative at (" + std::to_string(a) + "," +
                                std::to_string(b) + "," + std::to_string(c) + ")");
        }
      }
    }
  }
  inverse_.assign(m, m);
  for (Element a = 0; a < m; ++a) {
    for (Element b = 0; b < m; ++b) {
      if (table_[a][b] == identity_ && table_[b][a] == identity_) inverse_[a] = b;
    }
    if (inverse_[a] == m) throw StructuralError("element " + labels_[a] + " has no inverse");
  }
}

FiniteGroup FiniteGroup::trivial() { return FiniteGroup({{0}}, {"e"}); }

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n == 0) throw StructuralError("cyclic group of order zero");
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  std::vector<std::string> labels(n);
  for (std::size_t a = 0; a < n; ++a) {
    labels[a] = std::to_string(a);
    for (std::size_t b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  }
  return FiniteGroup(std::move(table), std::move(labels));
}

FiniteGroup FiniteGroup::symmetric(std::size_t n) {
  if (n == 0 || n > 6) throw StructuralError("symmetric group supported for 1 <= n <= 6");
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const std::size_t m = perms.size();
  std::vector<std::string> labels(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (auto x : perms[i]) labels[i] += std::to_string(x + 1);
  }
  std::vector<std::vector<Element>> table(m, std::vector<Element>(m));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      std::vector<std::size_t> c(n);
      for (std::size_t i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      table[a][b] = static_cast<Element>(std::lower_bound(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return FiniteGroup(std::move(table), std::move(labels));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t m = g.order() * h.order();
  std::vector<std::vector<Element>> table(m, std::vector<Element>(m));
  std::vector<std::string> labels(m);
  for (Element a = 0; a < m; ++a) {
    labels[a] = g.label(a / h.order()) + "_" + h.label(a % h.order());
    for (Element b = 0; b < m; ++b) {
      table[a][b] = g.multiply(a / h.order(), b / h.order()) * h.order() +
                    h.multiply(a % h.order(), b % h.order());
    }
  }
  return FiniteGroup(std::move(table), std::move(labels));
}

Element FiniteGroup::product(const std::vector<Element>& word) const {
  Element acc = identity_;
  for (auto x : word) {
    if (x >= order()) throw StructuralError("group element index out of range");
    acc = multiply(acc, x);
  }
  return acc;
}

Element FiniteGroup::element(std::string_view label) const {
  for (Element a = 0; a < order(); ++a) {
    if (labels_[a] == label) return a;
  }
  throw StructuralError("unknown group element '" + std::string(label) + "'");
}

std::vector<std::vector<Element>> FiniteGroup::conjugacy_classes() const {
  std::vector<std::vector<Element>> classes;
  std::vector<bool> seen(order(), false);
  for (Element g = 0; g < order(); ++g) {
    if (seen[g]) continue;
    std::set<Element> cls;
    for (Element k = 0; k < order(); ++k) cls.insert(conjugate(k, g));
    for (auto x : cls) seen[x] = true;
    classes.emplace_back(cls.begin(), cls.end());
  }
  return classes;
}

void check_action(const FiniteGroup& group, const std::vector<std::vector<std::size_t>>& action) {
  if (action.size() != group.order()) throw StructuralError("action needs one permutation per element");
  const std::size_t points = action.front().size();
  for (const auto& perm : action) {
    if (perm.size() != points) throw StructuralError("action permutations have different sizes");
    std::vector<bool> hit(points, false);
    for (auto x : perm) {
      if (x >= points || hit[x]) throw StructuralError("action entry is not a permutation");
      hit[x] = true;
    }
  }
  for (Element a = 0; a < group.order(); ++a) {
    for (Element b = 0; b < group.order(); ++b) {
      for (std::size_t x = 0; x < points; ++x) {
        if (action[group.multiply(a, b)][x] != action[a][action[b][x]]) {
          throw StructuralError("action is not compatible with the group law");
        }
      }
    }
  }
  for (std::size_t x = 0; x < points; ++x) {
    if (action[group.identity()][x] != x) throw StructuralError("identity does not act trivially");
  }
}

std::vector<std::vector<std::size_t>> natural_action(const FiniteGroup& symmetric_group, std::size_t n,
                                                     std::size_t extra_fixed) {
  std::vector<std::vector<std::size_t>> action;
  for (Element g = 0; g < symmetric_group.order(); ++g) {
    const auto& label = symmetric_group.label(g);
    if (label.size() != n) throw StructuralError("group is not symmetric(" + std::to_string(n) + ")");
    std::vector<std::size_t> perm(n + extra_fixed);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::size_t>(label[i] - '1');
    std::iota(perm.begin() + static_cast<std::ptrdiff_t>(n), perm.end(), n);
    action.push_back(std::move(perm));
  }
  check_action(symmetric_group, action);
  return action;
}

}  // namespace tft
