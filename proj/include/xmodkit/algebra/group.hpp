// Finite groups presented by explicit multiplication tables.
//
// Element identifiers are strings and the stored order is lexicographic,
// so a group serializes the same way every run. The constructor checks
// the full set of group axioms (all |g|^3 triples); nothing downstream
// ever re-verifies them.

#ifndef XMODKIT_ALGEBRA_GROUP_HPP_
#define XMODKIT_ALGEBRA_GROUP_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "xmodkit/num/rational.hpp"

namespace xmodkit::algebra {

using Idx = std::uint32_t;

class FiniteGroup {
 public:
  FiniteGroup() = default;

  // `table[i][j]` = name of names[i]*names[j]. Names are re-sorted
  // lexicographically; the table is remapped accordingly.
  FiniteGroup(std::vector<std::string> names,
              const std::vector<std::vector<std::string>>& table,
              const std::string& identity_name) {
    std::size_t n = names.size();
    if (n == 0) fail("SchemaError", "group needs at least one element");
    std::vector<std::string> sorted = names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      fail("SchemaError", "duplicate element identifier");
    std::map<std::string, Idx> pos;
    for (Idx i = 0; i < n; ++i) pos[sorted[i]] = i;
    if (table.size() != n) fail("SchemaError", "table row count != element count");

    names_ = std::move(sorted);
    table_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (table[i].size() != n) fail("SchemaError", "table is not square");
      for (std::size_t j = 0; j < n; ++j) {
        auto it = pos.find(table[i][j]);
        if (it == pos.end()) fail("UnknownElement", "table entry '" + table[i][j] + "'");
        table_[pos.at(names[i]) * n + pos.at(names[j])] = it->second;
      }
    }
    auto idit = pos.find(identity_name);
    if (idit == pos.end()) fail("UnknownElement", "identity '" + identity_name + "'");
    identity_ = idit->second;
    finish_checks();
  }

  // Internal builder: table already index-based and names already sorted.
  static FiniteGroup from_indexed(std::vector<std::string> sorted_names,
                                  std::vector<Idx> flat_table, Idx identity) {
    FiniteGroup g;
    g.names_ = std::move(sorted_names);
    g.table_ = std::move(flat_table);
    g.identity_ = identity;
    if (!std::is_sorted(g.names_.begin(), g.names_.end()))
      fail("SchemaError", "internal: names not sorted");
    g.finish_checks();
    return g;
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Idx i) const { return names_[i]; }
  Idx identity() const { return identity_; }

  Idx index(const std::string& name) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name) fail("UnknownElement", "'" + name + "'");
    return static_cast<Idx>(it - names_.begin());
  }
  bool contains(const std::string& name) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    return it != names_.end() && *it == name;
  }

  Idx op(Idx a, Idx b) const { return table_[a * size() + b]; }
  Idx inv(Idx a) const { return inverse_[a]; }
  Idx conj(Idx g, Idx x) const { return op(op(g, x), inv(g)); }

  std::size_t element_order(Idx a) const {
    std::size_t k = 1;
    Idx x = a;
    while (x != identity_) { x = op(x, a); ++k; }
    return k;
  }

  bool is_abelian() const {
    for (Idx a = 0; a < size(); ++a)
      for (Idx b = a + 1; b < size(); ++b)
        if (op(a, b) != op(b, a)) return false;
    return true;
  }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.names_ == b.names_ && a.table_ == b.table_ && a.identity_ == b.identity_;
  }

 private:
  void finish_checks() {
    std::size_t n = names_.size();
    if (table_.size() != n * n) fail("SchemaError", "table size mismatch");
    for (Idx v : table_)
      if (v >= n) fail("SchemaError", "table entry out of range");
    for (Idx a = 0; a < n; ++a) {
      if (op(identity_, a) != a || op(a, identity_) != a)
        fail("SchemaError", "identity fails at '" + names_[a] + "'");
    }
    inverse_.assign(n, 0);
    for (Idx a = 0; a < n; ++a) {
      bool found = false;
      for (Idx b = 0; b < n; ++b) {
        if (op(a, b) == identity_ && op(b, a) == identity_) {
          inverse_[a] = b;
          found = true;
          break;
        }
      }
      if (!found) fail("SchemaError", "no two-sided inverse for '" + names_[a] + "'");
    }
    for (Idx a = 0; a < n; ++a)
      for (Idx b = 0; b < n; ++b)
        for (Idx c = 0; c < n; ++c)
          if (op(op(a, b), c) != op(a, op(b, c)))
            fail("SchemaError", "associativity fails at (" + names_[a] + "," + names_[b] +
                                    "," + names_[c] + ")");
  }

  std::vector<std::string> names_;
  std::vector<Idx> table_;  // row-major
  std::vector<Idx> inverse_;
  Idx identity_ = 0;
};

// A subgroup given by the sorted element indices of its ambient group.
struct Subgroup {
  std::vector<Idx> elements;

  bool contains(Idx x) const {
    return std::binary_search(elements.begin(), elements.end(), x);
  }
  std::size_t size() const { return elements.size(); }
};

inline Subgroup full_subgroup(const FiniteGroup& g) {
  Subgroup s;
  for (Idx i = 0; i < g.size(); ++i) s.elements.push_back(i);
  return s;
}

inline Subgroup generated_subgroup(const FiniteGroup& g, std::vector<Idx> gens) {
  std::vector<bool> in(g.size(), false);
  in[g.identity()] = true;
  std::vector<Idx> frontier{g.identity()};
  for (Idx x : gens)
    if (!in[x]) { in[x] = true; frontier.push_back(x); }
  for (std::size_t i = 0; i < frontier.size(); ++i)
    for (Idx x : gens) {
      Idx a = g.op(frontier[i], x);
      if (!in[a]) { in[a] = true; frontier.push_back(a); }
      Idx b = g.op(frontier[i], g.inv(x));
      if (!in[b]) { in[b] = true; frontier.push_back(b); }
    }
  Subgroup s;
  for (Idx i = 0; i < g.size(); ++i)
    if (in[i]) s.elements.push_back(i);
  return s;
}

inline bool is_subgroup(const FiniteGroup& g, const Subgroup& s) {
  if (!s.contains(g.identity())) return false;
  for (Idx a : s.elements) {
    if (!s.contains(g.inv(a))) return false;
    for (Idx b : s.elements)
      if (!s.contains(g.op(a, b))) return false;
  }
  return true;
}

inline bool is_normal(const FiniteGroup& g, const Subgroup& s) {
  for (Idx x = 0; x < g.size(); ++x)
    for (Idx n : s.elements)
      if (!s.contains(g.conj(x, n))) return false;
  return true;
}

// CenterSubgroup per the exhaustive commutation check.
struct CenterSubgroup {
  Subgroup sub;
};

inline CenterSubgroup center(const FiniteGroup& g) {
  CenterSubgroup z;
  for (Idx a = 0; a < g.size(); ++a) {
    bool central = true;
    for (Idx b = 0; b < g.size() && central; ++b)
      if (g.op(a, b) != g.op(b, a)) central = false;
    if (central) z.sub.elements.push_back(a);
  }
  return z;
}

struct QuotientGroup {
  FiniteGroup group;
  std::vector<Idx> projection;           // ambient index -> quotient index
  std::vector<Idx> coset_representative; // quotient index -> ambient index
};

// Quotient by a normal subgroup; coset names are "[m]" with m the
// lexicographically smallest member.
inline QuotientGroup quotient(const FiniteGroup& g, const Subgroup& n) {
  if (!is_subgroup(g, n)) fail("SchemaError", "quotient by a non-subgroup");
  if (!is_normal(g, n)) fail("NotNormal", "quotient subgroup is not normal");
  std::vector<Idx> coset_of(g.size(), UINT32_MAX);
  std::vector<Idx> reps;
  for (Idx a = 0; a < g.size(); ++a) {
    if (coset_of[a] != UINT32_MAX) continue;
    Idx id = static_cast<Idx>(reps.size());
    // a is minimal in its coset because indices scan in name order
    reps.push_back(a);
    for (Idx h : n.elements) coset_of[g.op(a, h)] = id;
  }
  std::size_t q = reps.size();
  std::vector<std::string> names(q);
  for (std::size_t i = 0; i < q; ++i) names[i] = "[" + g.name(reps[i]) + "]";

  // names must be sorted; reorder cosets to match
  std::vector<Idx> order(q);
  for (Idx i = 0; i < q; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](Idx x, Idx y) { return names[x] < names[y]; });
  std::vector<Idx> rank(q);
  for (Idx i = 0; i < q; ++i) rank[order[i]] = i;

  std::vector<std::string> sorted_names(q);
  std::vector<Idx> sorted_reps(q);
  for (Idx i = 0; i < q; ++i) {
    sorted_names[rank[i]] = names[i];
    sorted_reps[rank[i]] = reps[i];
  }
  std::vector<Idx> table(q * q);
  for (Idx x = 0; x < q; ++x)
    for (Idx y = 0; y < q; ++y)
      table[x * q + y] = rank[coset_of[g.op(sorted_reps[x], sorted_reps[y])]];

  QuotientGroup out;
  out.group = FiniteGroup::from_indexed(sorted_names, std::move(table),
                                        rank[coset_of[g.identity()]]);
  out.coset_representative = std::move(sorted_reps);
  out.projection.resize(g.size());
  for (Idx a = 0; a < g.size(); ++a) out.projection[a] = rank[coset_of[a]];
  return out;
}

// --- builders ---------------------------------------------------------

inline std::string padded(std::size_t v, std::size_t width) {
  std::string s = std::to_string(v);
  while (s.size() < width) s.insert(s.begin(), '0');
  return s;
}

inline FiniteGroup trivial_group() {
  return FiniteGroup({"e"}, {{"e"}}, "e");
}

inline FiniteGroup cyclic_group(std::size_t n) {
  std::size_t width = n > 10 ? 2 : 1;
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = padded(i, width);
  std::vector<std::vector<std::string>> table(n, std::vector<std::string>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i][j] = names[(i + j) % n];
  return FiniteGroup(names, table, names[0]);
}

inline FiniteGroup klein_four() {
  std::vector<std::string> names{"e", "a", "b", "c"};
  auto mul = [&](std::size_t i, std::size_t j) {
    return i == 0 ? j : (j == 0 ? i : (i == j ? 0 : 6 - i - j));
  };
  std::vector<std::vector<std::string>> table(4, std::vector<std::string>(4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) table[i][j] = names[mul(i, j)];
  return FiniteGroup(names, table, "e");
}

// Symmetric group on {1,2,3} with cycle-notation names.
inline FiniteGroup symmetric3() {
  // permutations as images of (1,2,3)
  struct P { std::string name; int img[3]; };
  std::vector<P> ps{{"e", {0, 1, 2}},
                    {"(12)", {1, 0, 2}},
                    {"(13)", {2, 1, 0}},
                    {"(23)", {0, 2, 1}},
                    {"(123)", {1, 2, 0}},
                    {"(132)", {2, 0, 1}}};
  auto compose = [&](const P& a, const P& b) {  // a after b
    int img[3];
    for (int i = 0; i < 3; ++i) img[i] = a.img[b.img[i]];
    for (const P& p : ps)
      if (p.img[0] == img[0] && p.img[1] == img[1] && p.img[2] == img[2]) return p.name;
    fail("SchemaError", "unreachable");
  };
  std::vector<std::string> names;
  for (const P& p : ps) names.push_back(p.name);
  std::vector<std::vector<std::string>> table(6, std::vector<std::string>(6));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) table[i][j] = compose(ps[i], ps[j]);
  return FiniteGroup(names, table, "e");
}

// Dihedral group of order 2n: r0..r(n-1) rotations, s0..s(n-1) reflections.
inline FiniteGroup dihedral_group(std::size_t n) {
  std::size_t width = n > 10 ? 2 : 1;
  std::vector<std::string> names(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    names[i] = "r" + padded(i, width);
    names[n + i] = "s" + padded(i, width);
  }
  auto mul = [&](std::size_t a, std::size_t b) -> std::size_t {
    bool fa = a >= n, fb = b >= n;
    std::size_t ia = a % n, ib = b % n;
    if (!fa && !fb) return (ia + ib) % n;
    if (!fa && fb) return n + (ia + ib) % n;
    if (fa && !fb) return n + (ia + n - ib) % n;
    return (ia + n - ib) % n;
  };
  std::vector<std::vector<std::string>> table(2 * n, std::vector<std::string>(2 * n));
  for (std::size_t i = 0; i < 2 * n; ++i)
    for (std::size_t j = 0; j < 2 * n; ++j) table[i][j] = names[mul(i, j)];
  return FiniteGroup(names, table, names[0]);
}

inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  std::size_t n = a.size() * b.size();
  std::vector<std::string> names;
  names.reserve(n);
  for (Idx i = 0; i < a.size(); ++i)
    for (Idx j = 0; j < b.size(); ++j) names.push_back(a.name(i) + "|" + b.name(j));
  std::vector<std::vector<std::string>> table(n, std::vector<std::string>(n));
  auto nm = [&](Idx i, Idx j) { return a.name(i) + "|" + b.name(j); };
  std::size_t r = 0;
  for (Idx i = 0; i < a.size(); ++i)
    for (Idx j = 0; j < b.size(); ++j, ++r) {
      std::size_t c = 0;
      for (Idx k = 0; k < a.size(); ++k)
        for (Idx l = 0; l < b.size(); ++l, ++c) table[r][c] = nm(a.op(i, k), b.op(j, l));
    }
  return FiniteGroup(names, table, nm(a.identity(), b.identity()));
}

}  // namespace xmodkit::algebra

#endif  // XMODKIT_ALGEBRA_GROUP_HPP_
