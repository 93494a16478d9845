// Finite groupoids with explicit arrow sets: axioms, transitivity,
// isotropy, vertex groups, canonical spanning trees, morphisms and the
// pair/trivialized builders everything else glues against.

#ifndef XMODKIT_GPD_GROUPOID_HPP_
#define XMODKIT_GPD_GROUPOID_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "xmodkit/algebra/aut.hpp"

namespace xmodkit::gpd {

using algebra::FiniteGroup;
using algebra::Idx;

inline constexpr std::size_t kDefaultArrowBound = 100000;

struct Arrow {
  std::string name;
  Idx src = 0;
  Idx tgt = 0;
};

class FiniteGroupoid {
 public:
  FiniteGroupoid() = default;

  // arrows sorted by name on construction; composition entries are
  // (left, right) -> result with s(left) = t(right)
  FiniteGroupoid(std::vector<std::string> objects, std::vector<Arrow> arrows,
                 const std::vector<std::array<std::string, 3>>& composition,
                 std::size_t arrow_bound = kDefaultArrowBound) {
    if (arrows.size() > arrow_bound)
      fail("SizeBoundExceeded", "arrow count " + std::to_string(arrows.size()));
    objects_ = std::move(objects);
    std::sort(objects_.begin(), objects_.end());
    if (std::adjacent_find(objects_.begin(), objects_.end()) != objects_.end())
      fail("SchemaError", "duplicate object");
    std::sort(arrows.begin(), arrows.end(),
              [](const Arrow& a, const Arrow& b) { return a.name < b.name; });
    for (std::size_t i = 0; i + 1 < arrows.size(); ++i)
      if (arrows[i].name == arrows[i + 1].name) fail("SchemaError", "duplicate arrow name");
    arrows_ = std::move(arrows);
    for (const Arrow& a : arrows_)
      if (a.src >= objects_.size() || a.tgt >= objects_.size())
        fail("SchemaError", "arrow endpoint out of range");
    for (const auto& [l, r, res] : composition)
      set_compose(arrow_index(l), arrow_index(r), arrow_index(res));
  }

  static FiniteGroupoid from_parts(std::vector<std::string> objects, std::vector<Arrow> arrows) {
    FiniteGroupoid g;
    g.objects_ = std::move(objects);
    g.arrows_ = std::move(arrows);
    std::sort(g.arrows_.begin(), g.arrows_.end(),
              [](const Arrow& a, const Arrow& b) { return a.name < b.name; });
    return g;
  }

  std::size_t object_count() const { return objects_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }
  const std::vector<std::string>& objects() const { return objects_; }
  const Arrow& arrow(Idx a) const { return arrows_[a]; }
  Idx src(Idx a) const { return arrows_[a].src; }
  Idx tgt(Idx a) const { return arrows_[a].tgt; }

  Idx object_index(const std::string& name) const {
    auto it = std::lower_bound(objects_.begin(), objects_.end(), name);
    if (it == objects_.end() || *it != name) fail("UnknownElement", "object '" + name + "'");
    return static_cast<Idx>(it - objects_.begin());
  }
  Idx arrow_index(const std::string& name) const {
    auto it = std::lower_bound(arrows_.begin(), arrows_.end(), name,
                               [](const Arrow& a, const std::string& n) { return a.name < n; });
    if (it == arrows_.end() || it->name != name) fail("UnknownElement", "arrow '" + name + "'");
    return static_cast<Idx>(it - arrows_.begin());
  }

  void set_compose(Idx left, Idx right, Idx result) {
    comp_[key(left, right)] = result;
  }
  void set_unit(Idx object, Idx arrow) {
    if (units_.size() < objects_.size()) units_.assign(objects_.size(), UINT32_MAX);
    units_[object] = arrow;
  }
  void set_inverse(Idx arrow, Idx inv) {
    if (invs_.size() < arrows_.size()) invs_.assign(arrows_.size(), UINT32_MAX);
    invs_[arrow] = inv;
  }

  bool has_compose(Idx left, Idx right) const { return comp_.count(key(left, right)) > 0; }
  // left o right: s(left) = t(right); result runs s(right) -> t(left)
  Idx compose(Idx left, Idx right) const {
    auto it = comp_.find(key(left, right));
    if (it == comp_.end()) fail("IllDefinedComposition", "missing composite");
    return it->second;
  }
  Idx unit(Idx object) const {
    if (object >= units_.size() || units_[object] == UINT32_MAX)
      fail("SchemaError", "missing unit");
    return units_[object];
  }
  Idx inverse(Idx arrow) const {
    if (arrow >= invs_.size() || invs_[arrow] == UINT32_MAX)
      fail("SchemaError", "missing inverse");
    return invs_[arrow];
  }
  bool units_ready() const { return units_.size() == objects_.size(); }

  Idx conj(Idx g, Idx x) const {  // g x g^{-1}
    return compose(compose(g, x), inverse(g));
  }

  std::vector<Idx> arrows_from(Idx object) const {
    std::vector<Idx> out;
    for (Idx a = 0; a < arrows_.size(); ++a)
      if (arrows_[a].src == object) out.push_back(a);
    return out;
  }
  std::vector<Idx> arrows_between(Idx source, Idx target) const {
    std::vector<Idx> out;
    for (Idx a = 0; a < arrows_.size(); ++a)
      if (arrows_[a].src == source && arrows_[a].tgt == target) out.push_back(a);
    return out;
  }

  bool is_transitive() const {
    for (Idx x = 0; x < objects_.size(); ++x)
      for (Idx y = 0; y < objects_.size(); ++y)
        if (arrows_between(x, y).empty()) return false;
    return true;
  }

 private:
  static std::uint64_t key(Idx a, Idx b) { return (std::uint64_t(a) << 32) | b; }

  std::vector<std::string> objects_;
  std::vector<Arrow> arrows_;
  std::unordered_map<std::uint64_t, Idx> comp_;
  std::vector<Idx> units_;
  std::vector<Idx> invs_;
};

struct GroupoidReport {
  bool valid = false;
  std::vector<std::string> violations;
  bool transitive = false;
  std::vector<std::vector<Idx>> isotropy;  // per object, its vertex arrows
};

inline GroupoidReport validate_groupoid(const FiniteGroupoid& g) {
  GroupoidReport rep;
  auto bad = [&](const std::string& msg) { rep.violations.push_back(msg); };

  if (!g.units_ready()) {
    bad("units missing");
    return rep;
  }
  for (Idx x = 0; x < g.object_count(); ++x) {
    Idx u = g.unit(x);
    if (g.src(u) != x || g.tgt(u) != x) bad("unit of " + g.objects()[x] + " is not a loop");
  }
  for (Idx a = 0; a < g.arrow_count(); ++a) {
    Idx i = g.inverse(a);
    if (g.src(i) != g.tgt(a) || g.tgt(i) != g.src(a))
      bad("inverse of " + g.arrow(a).name + " has wrong endpoints");
  }
  // totality and typing of composition
  for (Idx a = 0; a < g.arrow_count(); ++a)
    for (Idx b = 0; b < g.arrow_count(); ++b) {
      if (g.src(a) != g.tgt(b)) {
        if (g.has_compose(a, b)) bad("composite defined on non-composable pair");
        continue;
      }
      if (!g.has_compose(a, b)) {
        bad("missing composite " + g.arrow(a).name + " o " + g.arrow(b).name);
        continue;
      }
      Idx c = g.compose(a, b);
      if (g.src(c) != g.src(b) || g.tgt(c) != g.tgt(a))
        bad("composite endpoints wrong at " + g.arrow(a).name + " o " + g.arrow(b).name);
    }
  if (!rep.violations.empty()) return rep;
  // units, inverses, associativity
  for (Idx a = 0; a < g.arrow_count(); ++a) {
    if (g.compose(a, g.unit(g.src(a))) != a) bad("right unit fails at " + g.arrow(a).name);
    if (g.compose(g.unit(g.tgt(a)), a) != a) bad("left unit fails at " + g.arrow(a).name);
    if (g.compose(a, g.inverse(a)) != g.unit(g.tgt(a)))
      bad("right inverse fails at " + g.arrow(a).name);
    if (g.compose(g.inverse(a), a) != g.unit(g.src(a)))
      bad("left inverse fails at " + g.arrow(a).name);
  }
  for (Idx a = 0; a < g.arrow_count(); ++a)
    for (Idx b = 0; b < g.arrow_count(); ++b) {
      if (g.src(a) != g.tgt(b)) continue;
      for (Idx c = 0; c < g.arrow_count(); ++c) {
        if (g.src(b) != g.tgt(c)) continue;
        if (g.compose(g.compose(a, b), c) != g.compose(a, g.compose(b, c))) {
          bad("associativity fails at (" + g.arrow(a).name + "," + g.arrow(b).name + "," +
              g.arrow(c).name + ")");
          break;
        }
      }
    }

  rep.valid = rep.violations.empty();
  rep.transitive = g.is_transitive();
  rep.isotropy.resize(g.object_count());
  for (Idx x = 0; x < g.object_count(); ++x) rep.isotropy[x] = g.arrows_between(x, x);
  return rep;
}

// Vertex group at an object, with maps between arrow ids and elements.
struct VertexGroup {
  FiniteGroup group;
  std::vector<Idx> arrow_of;            // group element -> arrow id
  std::unordered_map<Idx, Idx> element_of;  // arrow id -> group element

  Idx element(Idx arrow) const {
    auto it = element_of.find(arrow);
    if (it == element_of.end()) fail("UnknownElement", "arrow outside vertex group");
    return it->second;
  }
};

inline VertexGroup vertex_group(const FiniteGroupoid& g, Idx object) {
  std::vector<Idx> loops = g.arrows_between(object, object);
  VertexGroup out;
  std::vector<std::string> names;
  for (Idx a : loops) names.push_back(g.arrow(a).name);
  std::vector<std::vector<std::string>> table(loops.size(),
                                              std::vector<std::string>(loops.size()));
  for (std::size_t i = 0; i < loops.size(); ++i)
    for (std::size_t j = 0; j < loops.size(); ++j)
      table[i][j] = g.arrow(g.compose(loops[i], loops[j])).name;
  out.group = FiniteGroup(names, table, g.arrow(g.unit(object)).name);
  out.arrow_of.resize(loops.size());
  for (Idx a : loops) {
    Idx e = out.group.index(g.arrow(a).name);
    out.arrow_of[e] = a;
    out.element_of[a] = e;
  }
  return out;
}

// Deterministic transversal: for each object, the least-named arrow from
// the base object. The base object is index 0 unless specified.
inline std::vector<Idx> spanning_arrows(const FiniteGroupoid& g, Idx base = 0) {
  std::vector<Idx> out(g.object_count(), UINT32_MAX);
  for (Idx x = 0; x < g.object_count(); ++x) {
    auto cands = g.arrows_between(base, x);
    if (cands.empty()) fail("NotTransitive", "no arrow from base to " + g.objects()[x]);
    out[x] = cands.front();  // arrows sorted by name already
  }
  return out;
}

// --- builders -----------------------------------------------------------

inline std::string pair_arrow_name(const std::string& t, const std::string& s) {
  return "(" + t + "<-" + s + ")";
}

inline FiniteGroupoid pair_groupoid(const std::vector<std::string>& objects) {
  std::vector<std::string> objs = objects;
  std::sort(objs.begin(), objs.end());
  std::vector<Arrow> arrows;
  for (Idx t = 0; t < objs.size(); ++t)
    for (Idx s = 0; s < objs.size(); ++s)
      arrows.push_back({pair_arrow_name(objs[t], objs[s]), s, t});
  FiniteGroupoid g = FiniteGroupoid::from_parts(objs, std::move(arrows));
  for (Idx t = 0; t < objs.size(); ++t)
    for (Idx s = 0; s < objs.size(); ++s) {
      Idx a = g.arrow_index(pair_arrow_name(objs[t], objs[s]));
      for (Idx w = 0; w < objs.size(); ++w)
        g.set_compose(a, g.arrow_index(pair_arrow_name(objs[s], objs[w])),
                      g.arrow_index(pair_arrow_name(objs[t], objs[w])));
      if (t == s) g.set_unit(t, a);
      g.set_inverse(a, g.arrow_index(pair_arrow_name(objs[s], objs[t])));
    }
  return g;
}

inline std::string triv_arrow_name(const std::string& t, const std::string& h,
                                   const std::string& s) {
  return "(" + t + "|" + h + "|" + s + ")";
}

// Trivialized transitive groupoid: arrows (u, h, v): v -> u with
// (u,h,v)(v,h',w) = (u,hh',w).
inline FiniteGroupoid trivialized_groupoid(const std::vector<std::string>& objects,
                                           const FiniteGroup& h) {
  std::vector<std::string> objs = objects;
  std::sort(objs.begin(), objs.end());
  std::vector<Arrow> arrows;
  for (Idx t = 0; t < objs.size(); ++t)
    for (Idx e = 0; e < h.size(); ++e)
      for (Idx s = 0; s < objs.size(); ++s)
        arrows.push_back({triv_arrow_name(objs[t], h.name(e), objs[s]), s, t});
  FiniteGroupoid g = FiniteGroupoid::from_parts(objs, std::move(arrows));
  for (Idx t = 0; t < objs.size(); ++t)
    for (Idx e = 0; e < h.size(); ++e)
      for (Idx s = 0; s < objs.size(); ++s) {
        Idx a = g.arrow_index(triv_arrow_name(objs[t], h.name(e), objs[s]));
        for (Idx e2 = 0; e2 < h.size(); ++e2)
          for (Idx w = 0; w < objs.size(); ++w)
            g.set_compose(a, g.arrow_index(triv_arrow_name(objs[s], h.name(e2), objs[w])),
                          g.arrow_index(triv_arrow_name(objs[t], h.name(h.op(e, e2)), objs[w])));
        if (t == s && e == h.identity()) g.set_unit(t, a);
        g.set_inverse(a, g.arrow_index(triv_arrow_name(objs[s], h.name(h.inv(e)), objs[t])));
      }
  return g;
}

// --- morphisms ----------------------------------------------------------

struct GroupoidMor {
  const FiniteGroupoid* source = nullptr;
  const FiniteGroupoid* target = nullptr;
  std::vector<Idx> object_map;
  std::vector<Idx> arrow_map;
};

inline bool is_functor(const GroupoidMor& m) {
  const FiniteGroupoid& s = *m.source;
  const FiniteGroupoid& t = *m.target;
  if (m.object_map.size() != s.object_count() || m.arrow_map.size() != s.arrow_count())
    return false;
  for (Idx a = 0; a < s.arrow_count(); ++a) {
    Idx fa = m.arrow_map[a];
    if (t.src(fa) != m.object_map[s.src(a)] || t.tgt(fa) != m.object_map[s.tgt(a)]) return false;
  }
  for (Idx x = 0; x < s.object_count(); ++x)
    if (m.arrow_map[s.unit(x)] != t.unit(m.object_map[x])) return false;
  for (Idx a = 0; a < s.arrow_count(); ++a)
    for (Idx b = 0; b < s.arrow_count(); ++b) {
      if (s.src(a) != s.tgt(b)) continue;
      if (m.arrow_map[s.compose(a, b)] != t.compose(m.arrow_map[a], m.arrow_map[b])) return false;
    }
  return true;
}

inline bool is_isomorphism(const GroupoidMor& m) {
  if (!is_functor(m)) return false;
  std::vector<bool> hit(m.target->arrow_count(), false);
  if (m.source->arrow_count() != m.target->arrow_count()) return false;
  for (Idx a : m.arrow_map) {
    if (hit[a]) return false;
    hit[a] = true;
  }
  std::vector<bool> ohit(m.target->object_count(), false);
  if (m.source->object_count() != m.target->object_count()) return false;
  for (Idx x : m.object_map) {
    if (ohit[x]) return false;
    ohit[x] = true;
  }
  return true;
}

}  // namespace xmodkit::gpd

#endif  // XMODKIT_GPD_GROUPOID_HPP_
