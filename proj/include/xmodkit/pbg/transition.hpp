// Isometablic transition data over a principal atlas, the gluing
// construction producing a PBG-groupoid, canonical isometablic sections,
// extraction of data from a groupoid, and equivalence of data with the
// explicit isomorphism it induces.
//
// Data is stored in the anchored presentation: pointwise transition
// functions s_ij : P_ij -> H with exact cocycle law, together with the
// per-chart representations phi_i : G -> Aut(H). The paper's pair
// (chi, alpha) is recovered as chi_ij(u,v) = s_ij(u) s_ij(v)^{-1} and
// alpha_ij(u) = I_{s_ij(u)}, with the anchor values s_ij(u_ij) carrying
// the reference automorphisms of the isometablicity condition (ii).

#ifndef XMODKIT_PBG_TRANSITION_HPP_
#define XMODKIT_PBG_TRANSITION_HPP_

#include "xmodkit/gpd/ext.hpp"
#include "xmodkit/site/atlas.hpp"
#include "xmodkit/site/cochain.hpp"

namespace xmodkit::pbg {

using algebra::FiniteGroup;
using algebra::Idx;
using site::Nerve;
using site::PrincipalAtlas;

// phi_i(g) as a permutation of the group h; each must be an automorphism
// and each phi_i a homomorphism G -> Aut(h).
struct RepFamily {
  std::vector<std::vector<std::vector<Idx>>> phi;  // [chart][g][h element]

  const std::vector<Idx>& at(Idx chart, Idx g) const { return phi[chart][g]; }
};

inline void validate_rep_family(const PrincipalAtlas& atlas, const FiniteGroup& h,
                                const RepFamily& fam) {
  const FiniteGroup& grp = atlas.group();
  if (fam.phi.size() != atlas.base().chart_count())
    fail("DimensionMismatch", "phi family chart count");
  for (Idx c = 0; c < fam.phi.size(); ++c) {
    if (fam.phi[c].size() != grp.size()) fail("DimensionMismatch", "phi family group size");
    for (Idx g = 0; g < grp.size(); ++g)
      if (!algebra::is_automorphism_map(h, fam.phi[c][g]))
        fail("SchemaError", "phi value is not an automorphism");
    for (Idx g1 = 0; g1 < grp.size(); ++g1)
      for (Idx g2 = 0; g2 < grp.size(); ++g2)
        for (Idx v = 0; v < h.size(); ++v)
          if (fam.phi[c][grp.op(g1, g2)][v] != fam.phi[c][g2][fam.phi[c][g1][v]])
            fail("SchemaError", "phi_i is not a homomorphism into Aut(h)");
  }
}

struct TransitionData {
  PrincipalAtlas atlas;
  FiniteGroup h;
  RepFamily phi;
  // s[k][t]: value of s_{ij} at the t-th point of the k-th pairwise
  // overlap of the total nerve (charts i < j); s_ji = s_ij^{-1}
  std::vector<std::vector<Idx>> s;

  Idx s_of(Idx i, Idx j, Idx point) const {
    if (i == j) return h.identity();
    const Nerve& nv = atlas.total();
    std::size_t si = nv.find_simplex({std::min(i, j), std::max(i, j)});
    if (si == Nerve::npos) fail("UnknownReference", "no overlap for transition value");
    const site::Simplex& sx = nv.simplices(1)[si];
    auto it = std::lower_bound(sx.points.begin(), sx.points.end(), point);
    if (it == sx.points.end() || *it != point)
      fail("UnknownElement", "point outside the overlap");
    Idx val = s[si][static_cast<std::size_t>(it - sx.points.begin())];
    return i < j ? val : h.inv(val);
  }

  Idx chi(Idx i, Idx j, Idx u, Idx v) const { return h.op(s_of(i, j, u), h.inv(s_of(i, j, v))); }
  Idx alpha(Idx i, Idx j, Idx u, Idx x) const { return h.conj(s_of(i, j, u), x); }
  Idx ref(Idx i, Idx j) const { return s_of(i, j, atlas.pair_anchor(i, j)); }

  // phi_ij(g) = phi_i(g) followed by right multiplication with
  // d_ij(g) = phi_i(g)(ref_ij)^{-1} s_ij(anchor . g); defined on
  // overlapping chart pairs, extended along chains elsewhere by glue.
  Idx d_of(Idx i, Idx j, Idx g) const {
    if (i == j) return h.identity();
    Idx anchor = atlas.pair_anchor(i, j);
    return h.op(h.inv(phi.at(i, g)[ref(i, j)]), s_of(i, j, atlas.act(anchor, g)));
  }
  Idx phi_pair(Idx i, Idx j, Idx g, Idx x) const {
    return h.op(phi.at(i, g)[x], d_of(i, j, g));
  }
};

// The isometablicity law for the stored transition functions:
//   s_ij(u g) = phi_i(g)(s_ij(u)) . phi_i(g)(ref_ij)^{-1} . s_ij(anchor g)
// which is s_ij(u g) = phi_ij(g)(s_ij(u)) with the derived pair family.
inline void validate_transition_data(const TransitionData& td) {
  validate_rep_family(td.atlas, td.h, td.phi);
  const Nerve& nv = td.atlas.total();
  const FiniteGroup& grp = td.atlas.group();
  const FiniteGroup& h = td.h;
  const auto& pairs = nv.simplices(1);
  if (td.s.size() != pairs.size()) fail("DimensionMismatch", "transition data shape");
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (td.s[k].size() != pairs[k].points.size())
      fail("DimensionMismatch", "transition data pointwise shape");
    for (Idx v : td.s[k])
      if (v >= h.size()) fail("UnknownElement", "transition value outside h");
    // locally constant per component of the total-space overlap
    for (const auto& comp : pairs[k].comps) {
      Idx first = UINT32_MAX;
      for (Idx p : comp) {
        std::size_t at = std::lower_bound(pairs[k].points.begin(), pairs[k].points.end(), p) -
                         pairs[k].points.begin();
        if (first == UINT32_MAX) first = td.s[k][at];
        if (td.s[k][at] != first) fail("SchemaError", "transition data not locally constant");
      }
    }
  }
  // exact cocycle identity on triples
  for (const site::Simplex& tr : nv.simplices(2)) {
    Idx i = tr.charts[0], j = tr.charts[1], k = tr.charts[2];
    for (Idx p : tr.points) {
      Idx z = h.op(h.op(td.s_of(j, k, p), h.inv(td.s_of(i, k, p))), td.s_of(i, j, p));
      if (z != h.identity()) fail("RelationNotEquivalence", "transition cocycle law fails");
    }
  }
  // isometablicity law
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    Idx i = pairs[k].charts[0], j = pairs[k].charts[1];
    for (Idx p : pairs[k].points)
      for (Idx g = 0; g < grp.size(); ++g)
        if (td.s_of(i, j, td.atlas.act(p, g)) != td.phi_pair(i, j, g, td.s_of(i, j, p)))
          fail("NotIsometablic", "transition data breaks the isometablic law");
  }
}

// The four conditions of the paper's definition of isometablic transition
// data, checked verbatim against the derived (chi, alpha).
struct DataConditionsReport {
  bool valid = false;
  std::vector<gpd::GCondition> conditions;
};

inline DataConditionsReport check_isometablic_conditions(const TransitionData& td) {
  DataConditionsReport rep;
  const Nerve& nv = td.atlas.total();
  const FiniteGroup& grp = td.atlas.group();
  const FiniteGroup& h = td.h;
  auto add = [&](std::string name, bool ok, std::string wit = "") {
    rep.conditions.push_back({std::move(name), ok, std::move(wit)});
  };

  // (i) chi_ik(u,v) = chi_ij(u,v) . alpha_ij(v)(chi_jk(u,v))
  {
    bool ok = true;
    for (const site::Simplex& tr : nv.simplices(2)) {
      Idx i = tr.charts[0], j = tr.charts[1], k = tr.charts[2];
      for (Idx u : tr.points)
        for (Idx v : tr.points)
          if (td.chi(i, k, u, v) !=
              h.op(td.chi(i, j, u, v), td.alpha(i, j, v, td.chi(j, k, u, v)))) {
            ok = false;
            break;
          }
    }
    add("cocycle condition (i)", ok);
  }
  // (ii) alpha_ij(u) = I_{chi_ij(u, anchor)} o I_{ref_ij}
  {
    bool ok = true;
    for (const site::Simplex& pr : nv.simplices(1)) {
      Idx i = pr.charts[0], j = pr.charts[1];
      Idx anchor = td.atlas.pair_anchor(i, j);
      for (Idx u : pr.points)
        for (Idx x = 0; x < h.size(); ++x) {
          Idx lhs = td.alpha(i, j, u, x);
          Idx rhs = h.conj(td.chi(i, j, u, anchor), h.conj(td.ref(i, j), x));
          if (lhs != rhs) {
            ok = false;
            break;
          }
        }
    }
    add("anchored automorphism condition (ii)", ok);
  }
  // (iii) chi_ij(ug, vg) = phi_i(g)(chi_ij(u,v))
  {
    bool ok = true;
    for (const site::Simplex& pr : nv.simplices(1)) {
      Idx i = pr.charts[0], j = pr.charts[1];
      for (Idx u : pr.points)
        for (Idx v : pr.points)
          for (Idx g = 0; g < grp.size(); ++g)
            if (td.chi(i, j, td.atlas.act(u, g), td.atlas.act(v, g)) !=
                td.phi.at(i, g)[td.chi(i, j, u, v)]) {
              ok = false;
              break;
            }
    }
    add("chi equivariance (iii)", ok);
  }
  // (iv) alpha_ij(ug)(phi_j(g)(x)) = phi_i(g)(alpha_ij(u)(x))
  {
    bool ok = true;
    for (const site::Simplex& pr : nv.simplices(1)) {
      Idx i = pr.charts[0], j = pr.charts[1];
      for (Idx u : pr.points)
        for (Idx g = 0; g < grp.size(); ++g)
          for (Idx x = 0; x < h.size(); ++x)
            if (td.alpha(i, j, td.atlas.act(u, g), td.phi.at(j, g)[x]) !=
                td.phi.at(i, g)[td.alpha(i, j, u, x)]) {
              ok = false;
              break;
            }
    }
    add("alpha equivariance (iv)", ok);
  }
  rep.valid = true;
  for (const auto& c : rep.conditions) rep.valid = rep.valid && c.ok;
  return rep;
}

// --- gluing ---------------------------------------------------------------

struct PBGGroupoid {
  PrincipalAtlas atlas;
  gpd::FiniteGroupoid g;
  std::vector<std::vector<Idx>> object_act;  // [object][group element]
  std::vector<std::vector<Idx>> arrow_act;   // [arrow][group element]

  Idx act_obj(Idx o, Idx ge) const { return object_act[o][ge]; }
  Idx act_arrow(Idx a, Idx ge) const { return arrow_act[a][ge]; }
};

struct PBGReport {
  bool valid = false;
  std::vector<gpd::GCondition> conditions;
};

inline PBGReport validate_pbg(const PBGGroupoid& p) {
  PBGReport rep;
  const gpd::FiniteGroupoid& g = p.g;
  const FiniteGroup& grp = p.atlas.group();
  auto add = [&](std::string name, bool ok, std::string wit = "") {
    rep.conditions.push_back({std::move(name), ok, std::move(wit)});
  };
  add("groupoid axioms", gpd::validate_groupoid(g).valid);

  bool shapes = p.object_act.size() == g.object_count() && p.arrow_act.size() == g.arrow_count();
  add("action tables sized", shapes);
  if (!rep.conditions[0].ok || !shapes) return rep;

  // objects move by the atlas action
  {
    bool ok = true;
    for (Idx o = 0; o < g.object_count() && ok; ++o) {
      Idx p_at = p.atlas.total().point_index(g.objects()[o]);
      for (Idx ge = 0; ge < grp.size(); ++ge) {
        Idx expect = p.atlas.act(p_at, ge);
        if (g.objects()[p.object_act[o][ge]] != p.atlas.total().point_names()[expect]) ok = false;
      }
    }
    add("object action matches the atlas", ok);
  }
  // group action laws and bijectivity
  {
    bool ok = true;
    for (Idx a = 0; a < g.arrow_count() && ok; ++a) {
      if (p.arrow_act[a][grp.identity()] != a) ok = false;
      for (Idx g1 = 0; g1 < grp.size() && ok; ++g1)
        for (Idx g2 = 0; g2 < grp.size(); ++g2)
          if (p.arrow_act[p.arrow_act[a][g1]][g2] != p.arrow_act[a][grp.op(g1, g2)]) {
            ok = false;
            break;
          }
    }
    for (Idx ge = 0; ge < grp.size() && ok; ++ge) {
      std::vector<bool> hit(g.arrow_count(), false);
      for (Idx a = 0; a < g.arrow_count(); ++a) {
        Idx img = p.arrow_act[a][ge];
        if (hit[img]) ok = false;
        hit[img] = true;
      }
    }
    add("right action by bijections", ok);
  }
  // PBG axioms: endpoints, units, products, inverses
  {
    bool ok = true;
    std::string wit;
    for (Idx a = 0; a < g.arrow_count() && ok; ++a)
      for (Idx ge = 0; ge < grp.size(); ++ge) {
        Idx ag = p.arrow_act[a][ge];
        if (g.src(ag) != p.object_act[g.src(a)][ge] || g.tgt(ag) != p.object_act[g.tgt(a)][ge]) {
          ok = false;
          wit = g.arrow(a).name;
          break;
        }
      }
    add("t(xi g) = t(xi) g and s(xi g) = s(xi) g", ok, wit);

    ok = true;
    for (Idx o = 0; o < g.object_count() && ok; ++o)
      for (Idx ge = 0; ge < grp.size(); ++ge)
        if (p.arrow_act[g.unit(o)][ge] != g.unit(p.object_act[o][ge])) {
          ok = false;
          break;
        }
    add("units: 1_{ug} = 1_u g", ok);

    ok = true;
    for (Idx a = 0; a < g.arrow_count() && ok; ++a)
      for (Idx b = 0; b < g.arrow_count() && ok; ++b) {
        if (g.src(a) != g.tgt(b)) continue;
        for (Idx ge = 0; ge < grp.size(); ++ge)
          if (g.compose(p.arrow_act[a][ge], p.arrow_act[b][ge]) !=
              p.arrow_act[g.compose(a, b)][ge]) {
            ok = false;
            break;
          }
      }
    add("products: (xi eta) g = (xi g)(eta g)", ok);

    ok = true;
    for (Idx a = 0; a < g.arrow_count() && ok; ++a)
      for (Idx ge = 0; ge < grp.size(); ++ge)
        if (g.inverse(p.arrow_act[a][ge]) != p.arrow_act[g.inverse(a)][ge]) {
          ok = false;
          break;
        }
    add("inverses: (xi g)^{-1} = xi^{-1} g", ok);
  }
  rep.valid = true;
  for (const auto& c : rep.conditions) rep.valid = rep.valid && c.ok;
  return rep;
}

namespace detail {

// least chart of a total-space point
inline std::vector<Idx> chart_table(const Nerve& nv) {
  std::vector<Idx> out(nv.point_count(), UINT32_MAX);
  for (Idx c = 0; c < nv.chart_count(); ++c)
    for (Idx p : nv.chart_points(c))
      if (out[p] == UINT32_MAX) out[p] = c;
  for (Idx v : out)
    if (v == UINT32_MAX) fail("SchemaError", "charts do not cover the total space");
  return out;
}

// spanning tree of the chart graph: parent array toward chart 0
inline std::vector<Idx> chart_tree(const Nerve& nv) {
  std::vector<Idx> parent(nv.chart_count(), UINT32_MAX);
  std::vector<bool> reached(nv.chart_count(), false);
  reached[0] = true;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const site::Simplex& pr : nv.simplices(1)) {
      Idx a = pr.charts[0], b = pr.charts[1];
      if (reached[a] && !reached[b]) {
        parent[b] = a;
        reached[b] = true;
        grew = true;
      } else if (reached[b] && !reached[a]) {
        parent[a] = b;
        reached[a] = true;
        grew = true;
      }
    }
  }
  for (Idx c = 0; c < nv.chart_count(); ++c)
    if (!reached[c]) fail("NotTransitive", "chart graph is disconnected");
  return parent;
}

}  // namespace detail

// d_ij(g) extended along the chart tree by the chain rule
// d_ij = d_ik . d_kj.
inline Idx chained_d(const TransitionData& td, const std::vector<Idx>& parent, Idx i, Idx j,
                     Idx g) {
  if (i == j) return td.h.identity();
  const Nerve& nv = td.atlas.total();
  if (nv.find_simplex({std::min(i, j), std::max(i, j)}) != Nerve::npos)
    return td.d_of(i, j, g);
  // walk both nodes to the root collecting the chains
  auto path_to_root = [&](Idx c) {
    std::vector<Idx> path{c};
    while (parent[path.back()] != UINT32_MAX) path.push_back(parent[path.back()]);
    return path;
  };
  std::vector<Idx> pi = path_to_root(i), pj = path_to_root(j);
  // d_i,root = product of edge d's along the path
  auto d_to_root = [&](const std::vector<Idx>& path) {
    Idx acc = td.h.identity();
    for (std::size_t t = 0; t + 1 < path.size(); ++t)
      acc = td.h.op(acc, td.d_of(path[t], path[t + 1], g));
    return acc;
  };
  // d_ij = d_i,root . d_root,j = d_i,root . d_j,root^{-1}
  return td.h.op(d_to_root(pi), td.h.inv(d_to_root(pj)));
}

// Glue a PBG-groupoid from transition data. In canonical coordinates the
// arrows form the product groupoid P x H x P; the data lives in the
// G-action twist phi_{c c'}(g) = phi_c(g) . d_{c c'}(g) with c, c' the
// canonical charts of the endpoints.
inline PBGGroupoid glue(const TransitionData& td) {
  validate_transition_data(td);
  PBGGroupoid out;
  out.atlas = td.atlas;
  const Nerve& nv = td.atlas.total();
  out.g = gpd::trivialized_groupoid(nv.point_names(), td.h);

  std::vector<Idx> chart = detail::chart_table(nv);
  std::vector<Idx> tree = detail::chart_tree(nv);
  const FiniteGroup& grp = td.atlas.group();

  out.object_act.resize(out.g.object_count());
  for (Idx o = 0; o < out.g.object_count(); ++o) {
    out.object_act[o].resize(grp.size());
    Idx p = nv.point_index(out.g.objects()[o]);
    for (Idx ge = 0; ge < grp.size(); ++ge)
      out.object_act[o][ge] = out.g.object_index(nv.point_names()[td.atlas.act(p, ge)]);
  }
  out.arrow_act.resize(out.g.arrow_count());
  for (Idx a = 0; a < out.g.arrow_count(); ++a) {
    out.arrow_act[a].resize(grp.size());
    Idx sp = nv.point_index(out.g.objects()[out.g.src(a)]);
    Idx tp = nv.point_index(out.g.objects()[out.g.tgt(a)]);
    const std::string& nm = out.g.arrow(a).name;
    std::size_t l = nm.find('|'), r = nm.rfind('|');
    Idx hval = td.h.index(nm.substr(l + 1, r - l - 1));
    Idx ct = chart[tp], cs = chart[sp];
    for (Idx ge = 0; ge < grp.size(); ++ge) {
      Idx twisted = td.h.op(td.phi.at(ct, ge)[hval], chained_d(td, tree, ct, cs, ge));
      out.arrow_act[a][ge] = out.g.arrow_index(
          gpd::triv_arrow_name(nv.point_names()[td.atlas.act(tp, ge)], td.h.name(twisted),
                               nv.point_names()[td.atlas.act(sp, ge)]));
    }
  }
  return out;
}

// --- sections and extraction ----------------------------------------------

// Sections sigma_i : P_i -> arrows(u0 -> u); stored per chart aligned
// with the chart's point list.
struct SectionFamily {
  std::vector<std::vector<Idx>> sigma;  // [chart][point position in chart]

  Idx of(const Nerve& nv, Idx chart, Idx point) const {
    const auto& pts = nv.chart_points(chart);
    auto it = std::lower_bound(pts.begin(), pts.end(), point);
    if (it == pts.end() || *it != point) fail("UnknownElement", "point outside chart");
    return sigma[chart][static_cast<std::size_t>(it - pts.begin())];
  }
};

// Canonical sections of a glued groupoid: sigma_i(u) = (u | s_{c(u),i}(u) | u0).
inline SectionFamily canonical_sections(const PBGGroupoid& p, const TransitionData& td) {
  const Nerve& nv = p.atlas.total();
  std::vector<Idx> chart = detail::chart_table(nv);
  Idx u0 = p.atlas.basepoint();
  SectionFamily fam;
  fam.sigma.resize(nv.chart_count());
  for (Idx c = 0; c < nv.chart_count(); ++c) {
    const auto& pts = nv.chart_points(c);
    fam.sigma[c].resize(pts.size());
    for (std::size_t t = 0; t < pts.size(); ++t) {
      Idx u = pts[t];
      Idx hval = td.s_of(chart[u], c, u);
      fam.sigma[c][t] = p.g.arrow_index(gpd::triv_arrow_name(
          nv.point_names()[u], td.h.name(hval), nv.point_names()[u0]));
    }
  }
  return fam;
}

inline void validate_sections(const PBGGroupoid& p, const SectionFamily& fam) {
  const Nerve& nv = p.atlas.total();
  const gpd::FiniteGroupoid& g = p.g;
  Idx u0 = p.atlas.basepoint();
  Idx base_obj = g.object_index(nv.point_names()[u0]);
  const FiniteGroup& grp = p.atlas.group();
  if (fam.sigma.size() != nv.chart_count()) fail("DimensionMismatch", "section family shape");
  for (Idx c = 0; c < nv.chart_count(); ++c) {
    const auto& pts = nv.chart_points(c);
    if (fam.sigma[c].size() != pts.size())
      fail("DimensionMismatch", "section family pointwise shape");
    for (std::size_t t = 0; t < pts.size(); ++t) {
      Idx a = fam.sigma[c][t];
      if (g.src(a) != base_obj || g.objects()[g.tgt(a)] != nv.point_names()[pts[t]])
        fail("SectionsNotIsometablic", "section endpoints wrong");
    }
    // isometablicity: sigma_i(ug) = [sigma_i(u)g] . (xi_i^{-1} g) . sigma_i(u_i g)
    Idx ui = p.atlas.chart_basepoint(c);
    Idx xi = fam.of(nv, c, ui);
    for (std::size_t t = 0; t < pts.size(); ++t)
      for (Idx ge = 0; ge < grp.size(); ++ge) {
        Idx u = pts[t];
        Idx lhs = fam.of(nv, c, p.atlas.act(u, ge));
        Idx rhs = g.compose(
            g.compose(p.act_arrow(fam.of(nv, c, u), ge), g.inverse(p.act_arrow(xi, ge))),
            fam.of(nv, c, p.atlas.act(ui, ge)));
        if (lhs != rhs) fail("SectionsNotIsometablic", "sections break the isometablic law");
      }
  }
}

// Extract transition data (in the groupoid's own vertex group) from a
// PBG-groupoid with isometablic sections.
inline TransitionData extract_transition_data(const PBGGroupoid& p, const SectionFamily& fam) {
  if (!p.g.is_transitive()) fail("NotTransitive", "extraction needs a transitive groupoid");
  validate_sections(p, fam);
  const Nerve& nv = p.atlas.total();
  const gpd::FiniteGroupoid& g = p.g;
  Idx u0 = p.atlas.basepoint();
  Idx base_obj = g.object_index(nv.point_names()[u0]);
  gpd::VertexGroup vg = gpd::vertex_group(g, base_obj);
  const FiniteGroup& grp = p.atlas.group();

  TransitionData td;
  td.atlas = p.atlas;
  td.h = vg.group;
  // phi_i(g)(x) = sigma_i(u_i g)^{-1} (xi_i g) (x g) (xi_i g)^{-1} sigma_i(u_i g)
  td.phi.phi.resize(nv.chart_count());
  for (Idx c = 0; c < nv.chart_count(); ++c) {
    Idx ui = p.atlas.chart_basepoint(c);
    Idx xi = fam.of(nv, c, ui);
    td.phi.phi[c].resize(grp.size());
    for (Idx ge = 0; ge < grp.size(); ++ge) {
      Idx sec = fam.of(nv, c, p.atlas.act(ui, ge));
      Idx xig = p.act_arrow(xi, ge);
      td.phi.phi[c][ge].resize(vg.group.size());
      for (Idx x = 0; x < vg.group.size(); ++x) {
        Idx xg = p.act_arrow(vg.arrow_of[x], ge);
        Idx val = g.compose(
            g.compose(g.compose(g.compose(g.inverse(sec), xig), xg), g.inverse(xig)), sec);
        td.phi.phi[c][ge][x] = vg.element(val);
      }
    }
  }
  // s_ij(u) = sigma_i(u)^{-1} sigma_j(u)
  const auto& pairs = nv.simplices(1);
  td.s.resize(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    Idx i = pairs[k].charts[0], j = pairs[k].charts[1];
    td.s[k].resize(pairs[k].points.size());
    for (std::size_t t = 0; t < pairs[k].points.size(); ++t) {
      Idx u = pairs[k].points[t];
      td.s[k][t] = vg.element(g.compose(g.inverse(fam.of(nv, i, u)), fam.of(nv, j, u)));
    }
  }
  validate_transition_data(td);
  return td;
}

// --- equivalence ------------------------------------------------------------

struct DataEquivalence {
  bool equivalent = false;
  // r_i(u) realizing s'_ij(u) = r_i(u)^{-1} s_ij(u) r_j(u)
  std::optional<std::vector<std::vector<Idx>>> r;
  std::optional<gpd::GroupoidMorData> xi_iso;  // glue(b) -> glue(a)
};

namespace detail {

// check the full package of relations for a candidate r family
inline bool r_family_works(const TransitionData& a, const TransitionData& b,
                           const std::vector<std::vector<Idx>>& r) {
  const Nerve& nv = a.atlas.total();
  const FiniteGroup& h = a.h;
  const FiniteGroup& grp = a.atlas.group();
  auto r_of = [&](Idx c, Idx p) {
    const auto& pts = nv.chart_points(c);
    return r[c][std::lower_bound(pts.begin(), pts.end(), p) - pts.begin()];
  };
  // s_b = r_i^{-1} s_a r_j pointwise
  const auto& pairs = nv.simplices(1);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    Idx i = pairs[k].charts[0], j = pairs[k].charts[1];
    for (std::size_t t = 0; t < pairs[k].points.size(); ++t) {
      Idx u = pairs[k].points[t];
      if (b.s[k][t] != h.op(h.op(h.inv(r_of(i, u)), a.s[k][t]), r_of(j, u))) return false;
    }
  }
  // r is isometablic: r_i(ug) = phi^a_i(g)(r_i(u)) . r_i(u_i g)-consistent
  // and transforms the representations: phi^b_i(g) = I_{r_i(u_i g)}^{-1} phi^a_i(g)
  for (Idx c = 0; c < nv.chart_count(); ++c) {
    Idx ui = a.atlas.chart_basepoint(c);
    for (Idx ge = 0; ge < grp.size(); ++ge) {
      Idx tail = r_of(c, a.atlas.act(ui, ge));
      for (Idx p : nv.chart_points(c))
        if (r_of(c, a.atlas.act(p, ge)) != h.op(a.phi.at(c, ge)[r_of(c, p)], tail))
          return false;
      for (Idx x = 0; x < h.size(); ++x)
        if (b.phi.at(c, ge)[x] != h.conj(h.inv(tail), a.phi.at(c, ge)[x])) return false;
    }
  }
  return true;
}

}  // namespace detail

// Exhaustive search for an r family relating two systems over the same
// atlas with the same fiber group; emits and verifies the explicit
// isomorphism glue(b) -> glue(a).
inline DataEquivalence data_equivalent(const TransitionData& a, const TransitionData& b) {
  DataEquivalence out;
  if (!(a.atlas == b.atlas) || !(a.h == b.h)) return out;
  const Nerve& nv = a.atlas.total();
  const FiniteGroup& h = a.h;

  // unknowns: r_i on each chart point; enumerate per-chart on component
  // representatives at the identity slice plus anchor tails, derive the
  // rest from the isometablic law; prune with the s-relation as we go.
  // Desk-scale instances keep this within bounds.
  std::vector<std::vector<Idx>> r(nv.chart_count());
  for (Idx c = 0; c < nv.chart_count(); ++c) r[c].assign(nv.chart_points(c).size(), 0);

  // free slots: for each chart, for each component of the chart at the
  // identity slice, one h value; plus per g != e one anchor tail
  struct Slot {
    Idx chart;
    std::vector<std::size_t> positions;  // positions in the chart point list
  };
  std::vector<Slot> slots;
  const FiniteGroup& grp = a.atlas.group();
  for (Idx c = 0; c < nv.chart_count(); ++c) {
    std::size_t ci = nv.find_simplex({c});
    const site::Simplex& sx = nv.simplices(0)[ci];
    for (const auto& comp : sx.comps) {
      // identity-slice components only; others follow from the law
      bool id_slice = true;
      for (Idx p : comp)
        if (a.atlas.fiber_of(p) != grp.identity()) id_slice = false;
      if (!id_slice) continue;
      Slot s;
      s.chart = c;
      for (Idx p : comp) {
        const auto& pts = nv.chart_points(c);
        s.positions.push_back(std::lower_bound(pts.begin(), pts.end(), p) - pts.begin());
      }
      slots.push_back(std::move(s));
    }
    // anchor tails r_i(u_i g), g != e
    for (Idx ge = 0; ge < grp.size(); ++ge) {
      if (ge == grp.identity()) continue;
      Slot s;
      s.chart = c;
      Idx p = a.atlas.act(a.atlas.chart_basepoint(c), ge);
      const auto& pts = nv.chart_points(c);
      s.positions.push_back(std::lower_bound(pts.begin(), pts.end(), p) - pts.begin());
      slots.push_back(std::move(s));
    }
  }
  double space = 1;
  for (std::size_t t = 0; t < slots.size(); ++t) space *= double(h.size());
  if (space > double(1 << 24)) fail("SizeBoundExceeded", "data equivalence search too large");

  std::vector<std::size_t> at(slots.size(), 0);
  do {
    for (std::size_t t = 0; t < slots.size(); ++t)
      for (std::size_t pos : slots[t].positions) r[slots[t].chart][pos] = static_cast<Idx>(at[t]);
    // fill non-identity slices from the law
    bool fill_ok = true;
    for (Idx c = 0; c < nv.chart_count() && fill_ok; ++c) {
      Idx ui = a.atlas.chart_basepoint(c);
      const auto& pts = nv.chart_points(c);
      auto pos_of = [&](Idx p) {
        return static_cast<std::size_t>(std::lower_bound(pts.begin(), pts.end(), p) -
                                        pts.begin());
      };
      for (Idx p : pts) {
        if (a.atlas.fiber_of(p) == grp.identity()) continue;
        Idx ge = a.atlas.fiber_of(p);
        Idx rep = a.atlas.orbit_rep(p);
        bool anchor_slice = p == a.atlas.act(ui, ge);
        if (anchor_slice) continue;  // free slot already set
        Idx tail = r[c][pos_of(a.atlas.act(ui, ge))];
        r[c][pos_of(p)] = h.op(a.phi.at(c, ge)[r[c][pos_of(rep)]], tail);
      }
    }
    if (fill_ok && detail::r_family_works(a, b, r)) {
      out.equivalent = true;
      out.r = r;
      break;
    }
  } while (site::detail::next_odometer(at, h.size()));
  if (!out.equivalent) return out;

  // realize Xi : glue(b) -> glue(a), (u|x|v) -> (u | r_c(u) x r_c'(v)^{-1} | v)
  PBGGroupoid ga = glue(a), gb = glue(b);
  std::vector<Idx> chart = detail::chart_table(nv);
  gpd::GroupoidMorData md;
  md.object_map.resize(gb.g.object_count());
  for (Idx o = 0; o < gb.g.object_count(); ++o) md.object_map[o] = o;
  md.arrow_map.resize(gb.g.arrow_count());
  auto r_of = [&](Idx c, Idx p) {
    const auto& pts = nv.chart_points(c);
    return (*out.r)[c][std::lower_bound(pts.begin(), pts.end(), p) - pts.begin()];
  };
  for (Idx arw = 0; arw < gb.g.arrow_count(); ++arw) {
    Idx sp = nv.point_index(gb.g.objects()[gb.g.src(arw)]);
    Idx tp = nv.point_index(gb.g.objects()[gb.g.tgt(arw)]);
    const std::string& nm = gb.g.arrow(arw).name;
    std::size_t l = nm.find('|'), rr = nm.rfind('|');
    Idx x = h.index(nm.substr(l + 1, rr - l - 1));
    Idx twisted = h.op(h.op(r_of(chart[tp], tp), x), h.inv(r_of(chart[sp], sp)));
    md.arrow_map[arw] = ga.g.arrow_index(gpd::triv_arrow_name(
        nv.point_names()[tp], h.name(twisted), nv.point_names()[sp]));
  }
  gpd::GroupoidMor mor{&gb.g, &ga.g, md.object_map, md.arrow_map};
  if (!gpd::is_isomorphism(mor)) fail("SchemaError", "equivalence witness fails to realize");
  // G-equivariance of the realized isomorphism
  for (Idx arw = 0; arw < gb.g.arrow_count(); ++arw)
    for (Idx ge = 0; ge < a.atlas.group().size(); ++ge)
      if (md.arrow_map[gb.act_arrow(arw, ge)] != ga.act_arrow(md.arrow_map[arw], ge))
        fail("SchemaError", "equivalence witness is not equivariant");
  out.xi_iso = std::move(md);
  return out;
}

// Exhaustive search for a base-fixing equivariant isomorphism between two
// PBG-groupoids over the same atlas, through the complete vertex-and-legs
// parametrization of base-fixing isomorphisms of transitive groupoids.
// Returns nullopt when the search space exceeds the bound.
inline std::optional<bool> pbg_isomorphism_exists(const PBGGroupoid& p1, const PBGGroupoid& p2,
                                                  std::size_t bound = 200000) {
  if (!p1.g.is_transitive() || !p2.g.is_transitive())
    fail("NotTransitive", "isomorphism search needs transitive groupoids");
  if (p1.g.object_count() != p2.g.object_count() ||
      p1.g.arrow_count() != p2.g.arrow_count())
    return false;
  std::vector<Idx> omap(p1.g.object_count());
  for (Idx o = 0; o < p1.g.object_count(); ++o) {
    const std::string& nm = p1.g.objects()[o];
    omap[o] = p2.g.object_index(nm);
  }
  gpd::IsoFrame fr = gpd::make_iso_frame(p1.g, p2.g, omap);
  auto visos = gpd::group_isomorphisms(fr.v1.group, fr.v2.group);
  if (visos.empty()) return false;

  double space = double(visos.size());
  for (std::size_t o = 1; o < p1.g.object_count(); ++o) space *= double(fr.v2.group.size());
  if (space > double(bound)) return std::nullopt;

  std::vector<Idx> c(p1.g.object_count(), fr.v2.group.identity());
  const FiniteGroup& grp = p1.atlas.group();
  for (const auto& phi : visos) {
    std::vector<std::size_t> at(p1.g.object_count() - 1, 0);
    do {
      for (std::size_t o = 1; o < p1.g.object_count(); ++o) c[o] = static_cast<Idx>(at[o - 1]);
      gpd::GroupoidMorData md = gpd::realize_iso(p1.g, p2.g, fr, phi, c);
      gpd::GroupoidMor mor{&p1.g, &p2.g, md.object_map, md.arrow_map};
      if (!gpd::is_isomorphism(mor)) continue;
      bool equivariant = true;
      for (Idx a = 0; a < p1.g.arrow_count() && equivariant; ++a)
        for (Idx ge = 0; ge < grp.size(); ++ge)
          if (md.arrow_map[p1.act_arrow(a, ge)] != p2.act_arrow(md.arrow_map[a], ge)) {
            equivariant = false;
            break;
          }
      if (equivariant) return true;
    } while (site::detail::next_odometer(at, fr.v2.group.size()));
  }
  return false;
}

}  // namespace xmodkit::pbg

#endif  // XMODKIT_PBG_TRANSITION_HPP_
