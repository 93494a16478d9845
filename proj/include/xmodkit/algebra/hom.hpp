// Group homomorphisms as total index maps, plus kernels, images and the
// inner automorphisms every crossed-module condition leans on.

#ifndef XMODKIT_ALGEBRA_HOM_HPP_
#define XMODKIT_ALGEBRA_HOM_HPP_

#include <string>
#include <vector>

#include "xmodkit/algebra/group.hpp"

namespace xmodkit::algebra {

struct GroupHom {
  FiniteGroup source;
  FiniteGroup target;
  std::vector<Idx> map;  // source index -> target index

  Idx operator()(Idx x) const { return map[x]; }

  bool is_bijective() const {
    if (source.size() != target.size()) return false;
    std::vector<bool> hit(target.size(), false);
    for (Idx v : map) {
      if (hit[v]) return false;
      hit[v] = true;
    }
    return true;
  }
};

inline void check_hom(const GroupHom& h) {
  if (h.map.size() != h.source.size()) fail("DimensionMismatch", "hom map size");
  if (h.map[h.source.identity()] != h.target.identity())
    fail("SchemaError", "hom does not fix identity");
  for (Idx a = 0; a < h.source.size(); ++a)
    for (Idx b = 0; b < h.source.size(); ++b)
      if (h.map[h.source.op(a, b)] != h.target.op(h.map[a], h.map[b]))
        fail("SchemaError", "map(xy) != map(x)map(y) at (" + h.source.name(a) + "," +
                                h.source.name(b) + ")");
}

inline GroupHom identity_hom(const FiniteGroup& g) {
  GroupHom h{g, g, {}};
  h.map.resize(g.size());
  for (Idx i = 0; i < g.size(); ++i) h.map[i] = i;
  return h;
}

inline GroupHom compose(const GroupHom& f, const GroupHom& g) {
  // f after g
  if (!(g.target == f.source)) fail("DimensionMismatch", "hom composition");
  GroupHom h{g.source, f.target, {}};
  h.map.resize(g.source.size());
  for (Idx i = 0; i < g.source.size(); ++i) h.map[i] = f.map[g.map[i]];
  return h;
}

inline GroupHom inverse_hom(const GroupHom& f) {
  if (!f.is_bijective()) fail("SchemaError", "inverse of a non-bijective hom");
  GroupHom h{f.target, f.source, {}};
  h.map.resize(f.target.size());
  for (Idx i = 0; i < f.source.size(); ++i) h.map[f.map[i]] = i;
  return h;
}

inline Subgroup kernel(const GroupHom& h) {
  Subgroup s;
  for (Idx a = 0; a < h.source.size(); ++a)
    if (h.map[a] == h.target.identity()) s.elements.push_back(a);
  return s;
}

inline Subgroup image(const GroupHom& h) {
  std::vector<bool> hit(h.target.size(), false);
  for (Idx v : h.map) hit[v] = true;
  Subgroup s;
  for (Idx a = 0; a < h.target.size(); ++a)
    if (hit[a]) s.elements.push_back(a);
  return s;
}

// x -> h x h^{-1}; always an automorphism.
inline GroupHom inner_automorphism(const FiniteGroup& g, Idx h) {
  if (h >= g.size()) fail("UnknownElement", "inner automorphism base element");
  GroupHom a{g, g, {}};
  a.map.resize(g.size());
  for (Idx x = 0; x < g.size(); ++x) a.map[x] = g.conj(h, x);
  return a;
}

inline GroupHom inner_automorphism(const FiniteGroup& g, const std::string& h) {
  return inner_automorphism(g, g.index(h));
}

// Projection onto a quotient, packaged as a hom.
inline GroupHom projection_hom(const FiniteGroup& g, const QuotientGroup& q) {
  GroupHom h{g, q.group, q.projection};
  return h;
}

}  // namespace xmodkit::algebra

#endif  // XMODKIT_ALGEBRA_HOM_HPP_
