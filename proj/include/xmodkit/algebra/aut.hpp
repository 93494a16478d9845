// Automorphism groups by exhaustive search with generator-image pruning,
// and cyclic decompositions of finite abelian groups (the coefficient
// systems of all obstruction classes).

#ifndef XMODKIT_ALGEBRA_AUT_HPP_
#define XMODKIT_ALGEBRA_AUT_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "xmodkit/algebra/hom.hpp"

namespace xmodkit::algebra {

inline constexpr std::size_t kDefaultAutBound = 12;

// Smallest generating set under the canonical element order: all
// singletons first, then pairs, then triples, ...
inline std::vector<Idx> minimal_generators(const FiniteGroup& g) {
  std::vector<Idx> nonid;
  for (Idx i = 0; i < g.size(); ++i)
    if (i != g.identity()) nonid.push_back(i);
  if (nonid.empty()) return {};
  for (std::size_t k = 1; k <= nonid.size(); ++k) {
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    for (;;) {
      std::vector<Idx> gens;
      for (std::size_t p : pick) gens.push_back(nonid[p]);
      if (generated_subgroup(g, gens).size() == g.size()) return gens;
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == nonid.size() - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  fail("SchemaError", "unreachable: no generating set");
}

struct AutomorphismGroup {
  FiniteGroup base;
  std::vector<std::vector<Idx>> autos;  // permutations of base, sorted
  std::vector<std::size_t> inner;       // indices into autos
  FiniteGroup as_group;                 // composition table over names "a###"
  std::vector<std::size_t> as_group_to_auto;  // group element -> auto index

  std::size_t index_of(const std::vector<Idx>& perm) const {
    auto it = std::lower_bound(autos.begin(), autos.end(), perm);
    if (it == autos.end() || *it != perm) fail("UnknownElement", "not an automorphism");
    return static_cast<std::size_t>(it - autos.begin());
  }
  GroupHom hom(std::size_t i) const { return GroupHom{base, base, autos[i]}; }
  bool is_inner(std::size_t i) const {
    return std::binary_search(inner.begin(), inner.end(), i);
  }
};

// Extends generator images to a full map by closing under products;
// returns empty when the images are inconsistent.
inline std::vector<Idx> extend_from_generators(const FiniteGroup& g,
                                               const std::vector<Idx>& gens,
                                               const std::vector<Idx>& images) {
  std::vector<Idx> map(g.size(), UINT32_MAX);
  map[g.identity()] = g.identity();
  std::vector<Idx> frontier{g.identity()};
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (map[gens[k]] != UINT32_MAX && map[gens[k]] != images[k]) return {};
    if (map[gens[k]] == UINT32_MAX) {
      map[gens[k]] = images[k];
      frontier.push_back(gens[k]);
    }
  }
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Idx x = g.op(frontier[i], gens[k]);
      Idx fx = g.op(map[frontier[i]], images[k]);
      if (map[x] == UINT32_MAX) {
        map[x] = fx;
        frontier.push_back(x);
      } else if (map[x] != fx) {
        return {};
      }
    }
  }
  for (Idx v : map)
    if (v == UINT32_MAX) return {};
  return map;
}

inline bool is_automorphism_map(const FiniteGroup& g, const std::vector<Idx>& map) {
  std::vector<bool> hit(g.size(), false);
  for (Idx v : map) {
    if (hit[v]) return false;
    hit[v] = true;
  }
  for (Idx a = 0; a < g.size(); ++a)
    for (Idx b = 0; b < g.size(); ++b)
      if (map[g.op(a, b)] != g.op(map[a], map[b])) return false;
  return true;
}

inline AutomorphismGroup automorphism_group(const FiniteGroup& g,
                                            std::size_t bound = kDefaultAutBound) {
  if (g.size() > bound)
    fail("SizeBoundExceeded", "|g| = " + std::to_string(g.size()) +
                                  " exceeds automorphism search bound " +
                                  std::to_string(bound));
  AutomorphismGroup out;
  out.base = g;

  std::vector<Idx> gens = minimal_generators(g);
  std::vector<std::vector<Idx>> found;
  if (gens.empty()) {
    found.push_back({g.identity()});
  } else {
    // candidate images must preserve element order
    std::vector<std::vector<Idx>> candidates(gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k) {
      std::size_t ord = g.element_order(gens[k]);
      for (Idx x = 0; x < g.size(); ++x)
        if (g.element_order(x) == ord) candidates[k].push_back(x);
    }
    std::vector<Idx> images(gens.size());
    auto search = [&](auto&& self, std::size_t depth) -> void {
      if (depth == gens.size()) {
        auto map = extend_from_generators(g, gens, images);
        if (!map.empty() && is_automorphism_map(g, map)) found.push_back(map);
        return;
      }
      for (Idx cand : candidates[depth]) {
        images[depth] = cand;
        self(self, depth + 1);
      }
    };
    search(search, 0);
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  out.autos = std::move(found);

  for (Idx h = 0; h < g.size(); ++h) {
    auto ih = inner_automorphism(g, h).map;
    out.inner.push_back(out.index_of(ih));
  }
  std::sort(out.inner.begin(), out.inner.end());
  out.inner.erase(std::unique(out.inner.begin(), out.inner.end()), out.inner.end());

  // composition table over canonical names
  std::size_t n = out.autos.size();
  std::size_t width = std::to_string(n - 1).size();
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = "a" + padded(i, width);
  std::vector<Idx> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Idx> comp(g.size());
      for (Idx x = 0; x < g.size(); ++x) comp[x] = out.autos[i][out.autos[j][x]];
      table[i * n + j] = static_cast<Idx>(out.index_of(comp));
    }
  std::vector<Idx> idperm(g.size());
  for (Idx x = 0; x < g.size(); ++x) idperm[x] = x;
  out.as_group = FiniteGroup::from_indexed(names, std::move(table),
                                           static_cast<Idx>(out.index_of(idperm)));
  out.as_group_to_auto.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.as_group_to_auto[i] = i;
  return out;
}

// Kernel of h -> I_h as a subgroup; equals the center (cross-checked in tests).
inline Subgroup inner_kernel(const FiniteGroup& g) {
  Subgroup s;
  auto id = identity_hom(g).map;
  for (Idx h = 0; h < g.size(); ++h)
    if (inner_automorphism(g, h).map == id) s.elements.push_back(h);
  return s;
}

// --- abelian structure -------------------------------------------------

struct AbelianDecomposition {
  std::vector<Idx> generators;          // ambient indices
  std::vector<std::int64_t> orders;     // invariant-ish factor orders
  std::map<Idx, std::vector<std::int64_t>> coords;  // element -> exponents
};

// Decomposes a finite abelian group (given as a subgroup of g) into a
// direct product of cyclic pieces, greedily splitting off a maximal-order
// element. Sizes here are tiny, so the complement search is brute force.
inline AbelianDecomposition decompose_abelian(const FiniteGroup& g, const Subgroup& a) {
  for (Idx x : a.elements)
    for (Idx y : a.elements)
      if (g.op(x, y) != g.op(y, x)) fail("SchemaError", "decompose of non-abelian group");

  AbelianDecomposition out;
  // peel off cyclic factors; `rest` holds a transversal subgroup
  std::vector<Idx> rest = a.elements;
  while (rest.size() > 1) {
    Idx best = rest[0];
    std::size_t best_ord = 0;
    for (Idx x : rest) {
      std::size_t o = g.element_order(x);
      if (o > best_ord) { best_ord = o; best = x; }
    }
    out.generators.push_back(best);
    out.orders.push_back(static_cast<std::int64_t>(best_ord));
    if (best_ord == rest.size()) break;

    // find a complement: a subgroup of `rest` meeting <best> trivially,
    // of the right size
    Subgroup cyc = generated_subgroup(g, {best});
    std::size_t want = rest.size() / best_ord;
    Subgroup restsub;
    restsub.elements = rest;
    bool found = false;
    // try subgroups generated by up to 2 elements of rest (enough at this scale)
    for (std::size_t tries = 1; tries <= 2 && !found; ++tries) {
      std::vector<std::size_t> pick(tries, 0);
      std::vector<Idx> cand;
      auto attempt = [&](const std::vector<Idx>& gens) {
        Subgroup s = generated_subgroup(g, gens);
        if (s.size() != want) return false;
        for (Idx x : s.elements) {
          if (!restsub.contains(x)) return false;
          if (cyc.contains(x) && x != g.identity()) return false;
        }
        rest = s.elements;
        return true;
      };
      if (tries == 1) {
        for (Idx x : rest)
          if (attempt({x})) { found = true; break; }
      } else {
        for (Idx x : rest) {
          for (Idx y : rest)
            if (attempt({x, y})) { found = true; break; }
          if (found) break;
        }
      }
    }
    if (!found) fail("SchemaError", "abelian complement search failed");
  }
  if (out.generators.empty()) {
    out.generators.push_back(g.identity());
    out.orders.push_back(1);
  }

  // coordinates by enumeration of the product
  std::vector<std::int64_t> exp(out.generators.size(), 0);
  for (;;) {
    Idx val = g.identity();
    for (std::size_t i = 0; i < out.generators.size(); ++i)
      for (std::int64_t k = 0; k < exp[i]; ++k) val = g.op(val, out.generators[i]);
    if (out.coords.find(val) == out.coords.end()) out.coords[val] = exp;
    std::size_t i = 0;
    while (i < exp.size()) {
      if (++exp[i] < out.orders[i]) break;
      exp[i] = 0;
      ++i;
    }
    if (i == exp.size()) break;
  }
  if (out.coords.size() != a.size())
    fail("SchemaError", "abelian decomposition does not span");
  return out;
}

}  // namespace xmodkit::algebra

#endif  // XMODKIT_ALGEBRA_AUT_HPP_
