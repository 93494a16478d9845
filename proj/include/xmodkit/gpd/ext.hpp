// Quotients of groupoids (by normal subbundles, by group actions, by
// explicit partitions), groupoid extensions with their validators, and
// the parametrized base-fixing isomorphism machinery used by every
// equivalence search.

#ifndef XMODKIT_GPD_EXT_HPP_
#define XMODKIT_GPD_EXT_HPP_

#include <map>

#include "xmodkit/gpd/bundle.hpp"

namespace xmodkit::gpd {

// A subbundle of the isotropy: per object, a sorted set of vertex arrows.
struct IsotropySubbundle {
  std::vector<std::vector<Idx>> arrows;  // per object

  bool contains(Idx object, Idx arrow) const {
    return std::binary_search(arrows[object].begin(), arrows[object].end(), arrow);
  }
};

inline bool is_normal_subbundle(const FiniteGroupoid& g, const IsotropySubbundle& n) {
  for (Idx x = 0; x < g.object_count(); ++x) {
    for (Idx a : n.arrows[x])
      if (g.src(a) != x || g.tgt(a) != x) return false;
    // subgroup closure
    for (Idx a : n.arrows[x]) {
      if (!n.contains(x, g.inverse(a))) return false;
      for (Idx b : n.arrows[x])
        if (!n.contains(x, g.compose(a, b))) return false;
    }
    if (!n.contains(x, g.unit(x))) return false;
  }
  // closed under conjugation by every arrow
  for (Idx a = 0; a < g.arrow_count(); ++a)
    for (Idx nn : n.arrows[g.src(a)])
      if (!n.contains(g.tgt(a), g.conj(a, nn))) return false;
  return true;
}

struct GroupoidQuotient {
  FiniteGroupoid quotient;
  std::vector<Idx> object_class;  // source object -> quotient object
  std::vector<Idx> arrow_class;   // source arrow -> quotient arrow
};

// Quotient from explicit partitions; verifies that endpoints and
// composition descend. Class labels must be 0..count-1.
inline GroupoidQuotient quotient_groupoid(const FiniteGroupoid& g,
                                          const std::vector<Idx>& object_class,
                                          const std::vector<Idx>& arrow_class) {
  std::size_t oc = 0, ac = 0;
  for (Idx c : object_class) oc = std::max<std::size_t>(oc, c + 1);
  for (Idx c : arrow_class) ac = std::max<std::size_t>(ac, c + 1);

  // canonical representatives: least name in each class
  std::vector<Idx> orep(oc, UINT32_MAX), arep(ac, UINT32_MAX);
  for (Idx x = 0; x < g.object_count(); ++x)
    if (orep[object_class[x]] == UINT32_MAX) orep[object_class[x]] = x;
  for (Idx a = 0; a < g.arrow_count(); ++a)
    if (arep[arrow_class[a]] == UINT32_MAX) arep[arrow_class[a]] = a;

  // endpoints must be class functions
  for (Idx a = 0; a < g.arrow_count(); ++a) {
    Idx r = arep[arrow_class[a]];
    if (object_class[g.src(a)] != object_class[g.src(r)] ||
        object_class[g.tgt(a)] != object_class[g.tgt(r)])
      fail("IllDefinedComposition", "arrow class mixes endpoint classes");
  }

  // composition must descend to classes
  std::map<std::pair<Idx, Idx>, Idx> table;
  for (Idx a = 0; a < g.arrow_count(); ++a)
    for (Idx b = 0; b < g.arrow_count(); ++b) {
      if (g.src(a) != g.tgt(b)) continue;
      auto key = std::make_pair(arrow_class[a], arrow_class[b]);
      Idx val = arrow_class[g.compose(a, b)];
      auto [it, fresh] = table.emplace(key, val);
      if (!fresh && it->second != val)
        fail("IllDefinedComposition", "composition does not descend to classes");
    }

  std::vector<std::string> qobjects(oc);
  for (std::size_t c = 0; c < oc; ++c) qobjects[c] = "[" + g.objects()[orep[c]] + "]";
  std::vector<Arrow> qarrows(ac);
  // object names get re-sorted inside the groupoid; build the rank map first
  std::vector<std::string> sorted = qobjects;
  std::sort(sorted.begin(), sorted.end());
  auto orank = [&](Idx cls) {
    return static_cast<Idx>(
        std::lower_bound(sorted.begin(), sorted.end(), qobjects[cls]) - sorted.begin());
  };
  for (std::size_t c = 0; c < ac; ++c)
    qarrows[c] = Arrow{"[" + g.arrow(arep[c]).name + "]", orank(object_class[g.src(arep[c])]),
                       orank(object_class[g.tgt(arep[c])])};

  GroupoidQuotient out;
  out.quotient = FiniteGroupoid::from_parts(sorted, qarrows);
  // recompute arrow indexes after sorting by name
  std::vector<Idx> arrow_rank(ac);
  for (std::size_t c = 0; c < ac; ++c)
    arrow_rank[c] = out.quotient.arrow_index("[" + g.arrow(arep[c]).name + "]");

  for (const auto& [key, val] : table)
    out.quotient.set_compose(arrow_rank[key.first], arrow_rank[key.second], arrow_rank[val]);
  for (Idx x = 0; x < g.object_count(); ++x)
    out.quotient.set_unit(orank(object_class[x]), arrow_rank[arrow_class[g.unit(x)]]);
  for (Idx a = 0; a < g.arrow_count(); ++a)
    out.quotient.set_inverse(arrow_rank[arrow_class[a]], arrow_rank[arrow_class[g.inverse(a)]]);

  out.object_class.resize(g.object_count());
  for (Idx x = 0; x < g.object_count(); ++x) out.object_class[x] = orank(object_class[x]);
  out.arrow_class.resize(g.arrow_count());
  for (Idx a = 0; a < g.arrow_count(); ++a) out.arrow_class[a] = arrow_rank[arrow_class[a]];
  return out;
}

// Quotient by a normal subbundle: xi ~ xi . n.
inline GroupoidQuotient quotient_by_normal_subbundle(const FiniteGroupoid& g,
                                                     const IsotropySubbundle& n) {
  if (!is_normal_subbundle(g, n)) fail("NotNormal", "subbundle not normal");
  std::vector<Idx> arrow_class(g.arrow_count(), UINT32_MAX);
  Idx next = 0;
  for (Idx a = 0; a < g.arrow_count(); ++a) {
    if (arrow_class[a] != UINT32_MAX) continue;
    arrow_class[a] = next;
    for (Idx nn : n.arrows[g.src(a)]) arrow_class[g.compose(a, nn)] = next;
    ++next;
  }
  std::vector<Idx> object_class(g.object_count());
  for (Idx x = 0; x < g.object_count(); ++x) object_class[x] = x;
  return quotient_groupoid(g, object_class, arrow_class);
}

// Quotient by a free right action of a finite group on objects and arrows.
inline GroupoidQuotient quotient_by_group_action(
    const FiniteGroupoid& g, const FiniteGroup& grp,
    const std::vector<std::vector<Idx>>& object_act,
    const std::vector<std::vector<Idx>>& arrow_act) {
  std::vector<Idx> object_class(g.object_count(), UINT32_MAX);
  Idx next = 0;
  for (Idx x = 0; x < g.object_count(); ++x) {
    if (object_class[x] != UINT32_MAX) continue;
    for (Idx e = 0; e < grp.size(); ++e) object_class[object_act[x][e]] = next;
    ++next;
  }
  std::vector<Idx> arrow_class(g.arrow_count(), UINT32_MAX);
  next = 0;
  for (Idx a = 0; a < g.arrow_count(); ++a) {
    if (arrow_class[a] != UINT32_MAX) continue;
    for (Idx e = 0; e < grp.size(); ++e) arrow_class[arrow_act[a][e]] = next;
    ++next;
  }
  return quotient_groupoid(g, object_class, arrow_class);
}

// --- extensions ---------------------------------------------------------

struct GroupoidMorData {
  std::vector<Idx> object_map;
  std::vector<Idx> arrow_map;
};

// F >-> total ->> quotient over a common object set (object maps of both
// legs are identities in our finite model).
struct GroupoidExtension {
  GroupBundle kernel;
  FiniteGroupoid total;
  FiniteGroupoid quotient;
  std::vector<std::vector<Idx>> iota;  // (object, fiber element) -> total arrow
  GroupoidMorData pi;                  // total -> quotient
};

struct ExtensionReport {
  bool valid = false;
  std::vector<GCondition> conditions;
};

inline ExtensionReport validate_extension(const GroupoidExtension& e) {
  ExtensionReport rep;
  auto add = [&](std::string name, bool ok, std::string wit = "") {
    rep.conditions.push_back({std::move(name), ok, std::move(wit)});
  };

  // iota: fiberwise injective homomorphism into isotropy
  bool iota_ok = e.iota.size() == e.total.object_count() &&
                 e.kernel.base_size() == e.total.object_count();
  std::string wit;
  for (Idx x = 0; iota_ok && x < e.total.object_count(); ++x) {
    const FiniteGroup& fx = e.kernel.fiber(x);
    if (e.iota[x].size() != fx.size()) {
      iota_ok = false;
      wit = e.total.objects()[x];
      break;
    }
    std::vector<Idx> seen;
    for (Idx v = 0; v < fx.size(); ++v) {
      Idx a = e.iota[x][v];
      if (e.total.src(a) != x || e.total.tgt(a) != x) iota_ok = false;
      seen.push_back(a);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) iota_ok = false;
    if (e.iota[x][fx.identity()] != e.total.unit(x)) iota_ok = false;
    for (Idx v = 0; v < fx.size() && iota_ok; ++v)
      for (Idx w = 0; w < fx.size(); ++w)
        if (e.iota[x][fx.op(v, w)] != e.total.compose(e.iota[x][v], e.iota[x][w])) {
          iota_ok = false;
          wit = e.total.objects()[x];
          break;
        }
  }
  add("iota fiberwise injective hom", iota_ok, wit);

  // pi: functor, surjective on arrows, object map respected
  GroupoidMor pi{&e.total, &e.quotient, e.pi.object_map, e.pi.arrow_map};
  bool pi_ok = is_functor(pi);
  if (pi_ok) {
    std::vector<bool> hit(e.quotient.arrow_count(), false);
    for (Idx a : e.pi.arrow_map) hit[a] = true;
    for (bool h : hit) pi_ok = pi_ok && h;
  }
  add("pi full surjective functor", pi_ok);

  // exactness at each object: ker pi = iota(F)
  bool exact = iota_ok && pi_ok;
  if (exact) {
    for (Idx a = 0; a < e.total.arrow_count() && exact; ++a) {
      bool in_ker = e.pi.arrow_map[a] == e.quotient.unit(e.pi.object_map[e.total.src(a)]);
      bool in_img = false;
      if (e.total.src(a) == e.total.tgt(a)) {
        Idx x = e.total.src(a);
        for (Idx v = 0; v < e.kernel.fiber(x).size(); ++v)
          if (e.iota[x][v] == a) in_img = true;
      }
      if (in_ker != in_img) {
        exact = false;
        wit = e.total.arrow(a).name;
      }
    }
  }
  add("exactness: ker pi = iota(F)", exact, exact ? "" : wit);

  rep.valid = true;
  for (const auto& c : rep.conditions) rep.valid = rep.valid && c.ok;
  return rep;
}

// --- base-fixing isomorphisms -------------------------------------------

// Every base-fixing isomorphism of transitive groupoids factors through a
// vertex-group isomorphism phi and a per-object correction c:
//   kappa(xi) = (t2_y c_y) phi(t1_y^{-1} xi t1_x) (t2_x c_x)^{-1}.
// Searches below enumerate (phi, c) with caller-supplied pruning.
struct IsoFrame {
  std::vector<Idx> tree1, tree2;  // spanning arrows from the base objects
  VertexGroup v1, v2;
  std::vector<Idx> object_map;
};

inline IsoFrame make_iso_frame(const FiniteGroupoid& g1, const FiniteGroupoid& g2,
                               const std::vector<Idx>& object_map) {
  IsoFrame fr;
  fr.object_map = object_map;
  fr.tree1 = spanning_arrows(g1, 0);
  fr.tree1[0] = g1.unit(0);
  Idx base2 = object_map[0];
  fr.tree2.assign(g2.object_count(), UINT32_MAX);
  for (Idx x = 0; x < g1.object_count(); ++x) {
    auto cands = g2.arrows_between(base2, object_map[x]);
    if (cands.empty()) fail("NotTransitive", "target groupoid lacks arrows");
    fr.tree2[x] = cands.front();  // indexed by source objects
  }
  fr.tree2[0] = g2.unit(base2);
  fr.v1 = vertex_group(g1, 0);
  fr.v2 = vertex_group(g2, base2);
  return fr;
}

// All group isomorphisms A -> B (empty when none).
inline std::vector<algebra::GroupHom> group_isomorphisms(const FiniteGroup& a,
                                                         const FiniteGroup& b) {
  std::vector<algebra::GroupHom> out;
  if (a.size() != b.size()) return out;
  std::vector<Idx> gens = algebra::minimal_generators(a);
  std::vector<std::vector<Idx>> candidates(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    std::size_t ord = a.element_order(gens[k]);
    for (Idx x = 0; x < b.size(); ++x)
      if (b.element_order(x) == ord) candidates[k].push_back(x);
  }
  if (gens.empty()) {
    out.push_back(algebra::GroupHom{a, b, {b.identity()}});
    return out;
  }
  std::vector<Idx> images(gens.size());
  auto rec = [&](auto&& self, std::size_t depth) -> void {
    if (depth == gens.size()) {
      // extend and verify like the automorphism search, across two groups
      std::vector<Idx> map(a.size(), UINT32_MAX);
      map[a.identity()] = b.identity();
      std::vector<Idx> frontier{a.identity()};
      for (std::size_t k = 0; k < gens.size(); ++k) {
        if (map[gens[k]] == UINT32_MAX) {
          map[gens[k]] = images[k];
          frontier.push_back(gens[k]);
        } else if (map[gens[k]] != images[k]) {
          return;
        }
      }
      for (std::size_t i = 0; i < frontier.size(); ++i)
        for (std::size_t k = 0; k < gens.size(); ++k) {
          Idx x = a.op(frontier[i], gens[k]);
          Idx fx = b.op(map[frontier[i]], images[k]);
          if (map[x] == UINT32_MAX) {
            map[x] = fx;
            frontier.push_back(x);
          } else if (map[x] != fx) {
            return;
          }
        }
      for (Idx v : map)
        if (v == UINT32_MAX) return;
      std::vector<bool> hit(b.size(), false);
      for (Idx v : map) {
        if (hit[v]) return;
        hit[v] = true;
      }
      for (Idx x = 0; x < a.size(); ++x)
        for (Idx y = 0; y < a.size(); ++y)
          if (map[a.op(x, y)] != b.op(map[x], map[y])) return;
      out.push_back(algebra::GroupHom{a, b, map});
      return;
    }
    for (Idx cand : candidates[depth]) {
      images[depth] = cand;
      self(self, depth + 1);
    }
  };
  rec(rec, 0);
  return out;
}

// Builds the arrow map of the iso determined by (phi, c) in a frame.
inline GroupoidMorData realize_iso(const FiniteGroupoid& g1, const FiniteGroupoid& g2,
                                   const IsoFrame& fr, const algebra::GroupHom& phi,
                                   const std::vector<Idx>& c) {
  GroupoidMorData out;
  out.object_map = fr.object_map;
  out.arrow_map.resize(g1.arrow_count());
  std::vector<Idx> leg(g1.object_count());  // t2_x c_x as arrows of g2
  for (Idx x = 0; x < g1.object_count(); ++x)
    leg[x] = g2.compose(fr.tree2[x], fr.v2.arrow_of[c[x]]);
  for (Idx a = 0; a < g1.arrow_count(); ++a) {
    Idx x = g1.src(a), y = g1.tgt(a);
    Idx h = fr.v1.element(g1.compose(g1.compose(g1.inverse(fr.tree1[y]), a), fr.tree1[x]));
    out.arrow_map[a] = g2.compose(g2.compose(leg[y], fr.v2.arrow_of[phi.map[h]]),
                                  g2.inverse(leg[x]));
  }
  return out;
}

}  // namespace xmodkit::gpd

#endif  // XMODKIT_GPD_EXT_HPP_
