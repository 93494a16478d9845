// Crossed modules of PBG-groupoids: equivariant bundles, the four
// compatibility conditions, and the quotient construction that the
// corpus instances are built from.

#ifndef XMODKIT_PBG_PBGXMOD_HPP_
#define XMODKIT_PBG_PBGXMOD_HPP_

#include "xmodkit/pbg/transition.hpp"
#include "xmodkit/xmod/xmod.hpp"

namespace xmodkit::pbg {

struct PBGXMod {
  PBGGroupoid omega;                               // vertex model del(H)
  gpd::GroupBundle f;                              // trivialized fibers H over P
  std::vector<std::vector<std::vector<Idx>>> bundle_act;  // [point][g][h] -> h
  std::vector<std::vector<Idx>> tau;               // (object, fiber elt) -> vertex arrow
  gpd::BundleAction rho;
};

struct PBGXModReport {
  bool valid = false;
  std::vector<gpd::GCondition> conditions;
  xmod::XModReport base;  // the underlying plain crossed module report
};

inline PBGXModReport validate_pbgxmod(const PBGXMod& x) {
  PBGXModReport rep;
  auto add = [&](std::string name, bool ok, std::string wit = "") {
    rep.conditions.push_back({std::move(name), ok, std::move(wit)});
  };
  const gpd::FiniteGroupoid& om = x.omega.g;
  const FiniteGroup& grp = x.omega.atlas.group();

  PBGReport pr = validate_pbg(x.omega);
  add("PBG groupoid axioms", pr.valid);

  // underlying crossed module of groupoids
  xmod::GroupoidXMod plain{x.f, om, x.tau, x.rho};
  rep.base = xmod::validate_xmod(plain);
  add("underlying crossed module", rep.base.valid);
  if (!pr.valid || !rep.base.valid) return rep;

  // bundle: G acts by group isomorphisms F_u -> F_{ug}, right-action law
  {
    bool ok = x.bundle_act.size() == om.object_count();
    for (Idx u = 0; ok && u < om.object_count(); ++u) {
      if (x.bundle_act[u].size() != grp.size()) ok = false;
      for (Idx ge = 0; ok && ge < grp.size(); ++ge) {
        const FiniteGroup& fu = x.f.fiber(u);
        Idx ug = x.omega.act_obj(u, ge);
        const FiniteGroup& fug = x.f.fiber(ug);
        const auto& map = x.bundle_act[u][ge];
        if (map.size() != fu.size()) {
          ok = false;
          break;
        }
        std::vector<bool> hit(fug.size(), false);
        for (Idx v = 0; v < fu.size(); ++v) {
          if (map[v] >= fug.size() || hit[map[v]]) {
            ok = false;
            break;
          }
          hit[map[v]] = true;
        }
        for (Idx v = 0; ok && v < fu.size(); ++v)
          for (Idx w = 0; w < fu.size(); ++w)
            if (map[fu.op(v, w)] != fug.op(map[v], map[w])) {
              ok = false;
              break;
            }
      }
    }
    // right action: acting by g then h equals acting by gh
    for (Idx u = 0; ok && u < om.object_count(); ++u) {
      for (Idx v = 0; v < x.f.fiber(u).size() && ok; ++v) {
        if (x.bundle_act[u][grp.identity()][v] != v) ok = false;
        for (Idx g1 = 0; g1 < grp.size() && ok; ++g1)
          for (Idx g2 = 0; g2 < grp.size(); ++g2) {
            Idx mid = x.omega.act_obj(u, g1);
            if (x.bundle_act[mid][g2][x.bundle_act[u][g1][v]] !=
                x.bundle_act[u][grp.op(g1, g2)][v]) {
              ok = false;
              break;
            }
          }
      }
    }
    add("bundle is a PBG group bundle", ok);
  }
  // tau equivariant: tau(f . g) = tau(f) . g
  {
    bool ok = true;
    for (Idx u = 0; u < om.object_count() && ok; ++u)
      for (Idx ge = 0; ge < grp.size(); ++ge) {
        Idx ug = x.omega.act_obj(u, ge);
        for (Idx v = 0; v < x.f.fiber(u).size(); ++v)
          if (x.tau[ug][x.bundle_act[u][ge][v]] != x.omega.act_arrow(x.tau[u][v], ge)) {
            ok = false;
            break;
          }
      }
    add("tau is a morphism of PBG objects", ok);
  }
  // condition 1: rho(xi g, f g) = rho(xi, f) g
  {
    bool ok = true;
    std::string wit;
    for (Idx a = 0; a < om.arrow_count() && ok; ++a)
      for (Idx ge = 0; ge < grp.size(); ++ge) {
        Idx ag = x.omega.act_arrow(a, ge);
        Idx su = om.src(a), tu = om.tgt(a);
        for (Idx v = 0; v < x.f.fiber(su).size(); ++v)
          if (x.rho.apply(ag, x.bundle_act[su][ge][v]) !=
              x.bundle_act[tu][ge][x.rho.apply(a, v)]) {
            ok = false;
            wit = om.arrow(a).name;
            break;
          }
      }
    add("rho(xi g, f g) = rho(xi, f) g", ok, wit);
  }
  rep.valid = true;
  for (const auto& c : rep.conditions) rep.valid = rep.valid && c.ok;
  return rep;
}

// Context for the obstruction layer: everything derived once.
struct PBGContext {
  PBGXMod x;
  TransitionData td;                  // classifying data of omega, vertex-model valued
  FiniteGroup h;                      // the bundle fiber
  FiniteGroup q;                      // vertex model group of omega (del(H))
  std::vector<Idx> del;               // h -> q
  algebra::Subgroup del_kernel;       // ker del inside h
  site::CoeffGroup coeff;             // (h, ker del)
  std::vector<std::vector<std::vector<Idx>>> phihat;  // lifted reps per chart per g
  std::vector<Idx> chart_of;          // total point -> least chart
};

// The corpus construction: fiber h, central phihat-invariant n, one
// global lifted representation family, and vertex-model transition data
// with trivial anchor transports (plain isometablic law).
inline PBGContext quotient_pair_pbgxmod(const PrincipalAtlas& atlas, const FiniteGroup& h,
                                        const algebra::Subgroup& n,
                                        const std::vector<std::vector<Idx>>& phihat_global,
                                        const std::vector<std::vector<Idx>>& s_pattern) {
  algebra::CenterSubgroup zh = algebra::center(h);
  for (Idx v : n.elements)
    if (!zh.sub.contains(v)) fail("NotCentral", "chosen subgroup is not central");
  const FiniteGroup& grp = atlas.group();
  if (phihat_global.size() != grp.size()) fail("DimensionMismatch", "phihat size");
  for (Idx ge = 0; ge < grp.size(); ++ge) {
    if (!algebra::is_automorphism_map(h, phihat_global[ge]))
      fail("SchemaError", "phihat value not an automorphism");
    for (Idx v : n.elements)
      if (!n.contains(phihat_global[ge][v]))
        fail("SchemaError", "phihat does not preserve the chosen subgroup");
  }
  for (Idx g1 = 0; g1 < grp.size(); ++g1)
    for (Idx g2 = 0; g2 < grp.size(); ++g2)
      for (Idx v = 0; v < h.size(); ++v)
        if (phihat_global[grp.op(g1, g2)][v] != phihat_global[g2][phihat_global[g1][v]])
          fail("SchemaError", "phihat is not a homomorphism into Aut(h)");
  algebra::QuotientGroup qg = algebra::quotient(h, n);

  PBGContext ctx;
  ctx.h = h;
  ctx.q = qg.group;
  ctx.del = qg.projection;
  for (Idx v = 0; v < h.size(); ++v)
    if (qg.projection[v] == qg.group.identity()) ctx.del_kernel.elements.push_back(v);
  ctx.coeff = site::CoeffGroup(h, ctx.del_kernel);
  ctx.phihat.assign(atlas.base().chart_count(), phihat_global);
  ctx.chart_of = detail::chart_table(atlas.total());

  // vertex-model transition data with the descended representations
  TransitionData td;
  td.atlas = atlas;
  td.h = qg.group;
  td.phi.phi.resize(atlas.base().chart_count());
  for (Idx c = 0; c < td.phi.phi.size(); ++c) {
    td.phi.phi[c].resize(grp.size());
    for (Idx ge = 0; ge < grp.size(); ++ge) {
      td.phi.phi[c][ge].resize(qg.group.size());
      for (Idx e = 0; e < qg.group.size(); ++e)
        td.phi.phi[c][ge][e] = qg.projection[phihat_global[ge][qg.coset_representative[e]]];
    }
  }
  td.s = s_pattern;
  validate_transition_data(td);
  ctx.td = td;

  PBGXMod x;
  x.omega = glue(td);
  x.f = gpd::GroupBundle(x.omega.g.object_count(), h);
  x.tau.resize(x.omega.g.object_count());
  for (Idx o = 0; o < x.omega.g.object_count(); ++o) {
    x.tau[o].resize(h.size());
    for (Idx v = 0; v < h.size(); ++v)
      x.tau[o][v] = x.omega.g.arrow_index(gpd::triv_arrow_name(
          x.omega.g.objects()[o], qg.group.name(qg.projection[v]), x.omega.g.objects()[o]));
  }
  x.rho.per_arrow.resize(x.omega.g.arrow_count());
  for (Idx a = 0; a < x.omega.g.arrow_count(); ++a) {
    const std::string& nm = x.omega.g.arrow(a).name;
    std::size_t l = nm.find('|'), r = nm.rfind('|');
    Idx qe = qg.group.index(nm.substr(l + 1, r - l - 1));
    Idx lift = qg.coset_representative[qe];
    x.rho.per_arrow[a].resize(h.size());
    for (Idx v = 0; v < h.size(); ++v) x.rho.per_arrow[a][v] = h.conj(lift, v);
  }
  x.bundle_act.resize(x.omega.g.object_count());
  for (Idx o = 0; o < x.omega.g.object_count(); ++o) {
    x.bundle_act[o].resize(grp.size());
    for (Idx ge = 0; ge < grp.size(); ++ge) x.bundle_act[o][ge] = phihat_global[ge];
  }
  ctx.x = std::move(x);
  return ctx;
}

// Trivial transition pattern (all identity values) sized for an atlas.
inline std::vector<std::vector<Idx>> trivial_pattern(const PrincipalAtlas& atlas,
                                                     const FiniteGroup& model) {
  const auto& pairs = atlas.total().simplices(1);
  std::vector<std::vector<Idx>> out(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k)
    out[k].assign(pairs[k].points.size(), model.identity());
  return out;
}

}  // namespace xmodkit::pbg

#endif  // XMODKIT_PBG_PBGXMOD_HPP_
