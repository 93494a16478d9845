// Crossed modules of finite groupoids: the two Peiffer-type conditions,
// kernel/image/cokernel data, the induced representation on the kernel,
// the coupling/pair predicates, and crossed modules from extensions with
// a chosen central normal subbundle.

#ifndef XMODKIT_XMOD_XMOD_HPP_
#define XMODKIT_XMOD_XMOD_HPP_

#include "xmodkit/gpd/ext.hpp"

namespace xmodkit::xmod {

using algebra::FiniteGroup;
using algebra::Idx;
using gpd::BundleAction;
using gpd::FiniteGroupoid;
using gpd::GCondition;
using gpd::GroupBundle;
using gpd::GroupoidQuotient;
using gpd::IsotropySubbundle;

struct GroupoidXMod {
  GroupBundle f;
  FiniteGroupoid omega;
  std::vector<std::vector<Idx>> tau;  // (object, fiber element) -> vertex arrow
  BundleAction rho;
};

struct XModReport {
  bool valid = false;
  std::vector<GCondition> conditions;
  std::vector<std::vector<Idx>> kernel;  // per object: fiber elements in ker tau
  IsotropySubbundle image;               // im tau inside the isotropy
  GroupoidQuotient cokernel;
  bool coupling = false;  // ker tau = ZF fiberwise
  bool pair = false;      // cokernel is the pair groupoid
  bool induced_well_defined = false;
};

inline XModReport validate_xmod(const GroupoidXMod& x) {
  XModReport rep;
  auto add = [&](std::string name, bool ok, std::string wit = "") {
    rep.conditions.push_back({std::move(name), ok, std::move(wit)});
  };
  const FiniteGroupoid& om = x.omega;

  gpd::GroupoidReport gr = gpd::validate_groupoid(om);
  add("groupoid axioms", gr.valid, gr.valid ? "" : gr.violations.front());
  gpd::RepresentationReport rr = gpd::validate_representation(om, x.f, x.rho);
  add("representation axioms", rr.valid);
  if (!gr.valid || !rr.valid) return rep;

  // tau: fiberwise homomorphism into isotropy
  bool tau_ok = x.tau.size() == om.object_count();
  std::string wit;
  for (Idx o = 0; tau_ok && o < om.object_count(); ++o) {
    const FiniteGroup& fo = x.f.fiber(o);
    if (x.tau[o].size() != fo.size()) {
      tau_ok = false;
      break;
    }
    for (Idx v = 0; v < fo.size() && tau_ok; ++v) {
      Idx a = x.tau[o][v];
      if (om.src(a) != o || om.tgt(a) != o) tau_ok = false;
    }
    if (tau_ok && x.tau[o][fo.identity()] != om.unit(o)) tau_ok = false;
    for (Idx v = 0; v < fo.size() && tau_ok; ++v)
      for (Idx w = 0; w < fo.size(); ++w)
        if (x.tau[o][fo.op(v, w)] != om.compose(x.tau[o][v], x.tau[o][w])) {
          tau_ok = false;
          wit = om.objects()[o];
          break;
        }
  }
  add("tau fiberwise hom into isotropy", tau_ok, wit);
  if (!tau_ok) return rep;

  // (i) tau(rho(xi, f)) = xi tau(f) xi^{-1}
  {
    bool ok = true;
    std::string w2;
    for (Idx a = 0; a < om.arrow_count() && ok; ++a)
      for (Idx v = 0; v < x.f.fiber(om.src(a)).size(); ++v)
        if (x.tau[om.tgt(a)][x.rho.apply(a, v)] != om.conj(a, x.tau[om.src(a)][v])) {
          ok = false;
          w2 = "(" + om.arrow(a).name + "," + x.f.fiber(om.src(a)).name(v) + ")";
          break;
        }
    add("tau(rho(xi,f)) = xi tau(f) xi^-1", ok, w2);
  }
  // (ii) rho(tau(f), f') = f f' f^{-1}
  {
    bool ok = true;
    std::string w2;
    for (Idx o = 0; o < om.object_count() && ok; ++o) {
      const FiniteGroup& fo = x.f.fiber(o);
      for (Idx v = 0; v < fo.size() && ok; ++v)
        for (Idx w = 0; w < fo.size(); ++w)
          if (x.rho.apply(x.tau[o][v], w) != fo.op(fo.op(v, w), fo.inv(v))) {
            ok = false;
            w2 = "(" + fo.name(v) + "," + fo.name(w) + ")@" + om.objects()[o];
            break;
          }
    }
    add("rho(tau(f), f') = f f' f^-1", ok, w2);
  }

  // kernel and image
  rep.kernel.resize(om.object_count());
  rep.image.arrows.resize(om.object_count());
  for (Idx o = 0; o < om.object_count(); ++o) {
    for (Idx v = 0; v < x.f.fiber(o).size(); ++v) {
      if (x.tau[o][v] == om.unit(o)) rep.kernel[o].push_back(v);
      rep.image.arrows[o].push_back(x.tau[o][v]);
    }
    std::sort(rep.image.arrows[o].begin(), rep.image.arrows[o].end());
    rep.image.arrows[o].erase(
        std::unique(rep.image.arrows[o].begin(), rep.image.arrows[o].end()),
        rep.image.arrows[o].end());
  }

  // derived checks: im tau normal; ker tau central in the fibers
  bool im_normal = gpd::is_normal_subbundle(om, rep.image);
  add("im tau normal in omega", im_normal);
  {
    bool ok = true;
    for (Idx o = 0; o < om.object_count() && ok; ++o) {
      algebra::CenterSubgroup z = algebra::center(x.f.fiber(o));
      for (Idx v : rep.kernel[o])
        if (!z.sub.contains(v)) ok = false;
    }
    add("ker tau inside ZF", ok);
    rep.coupling = ok;
    for (Idx o = 0; o < om.object_count() && rep.coupling; ++o)
      if (rep.kernel[o].size() != algebra::center(x.f.fiber(o)).sub.size())
        rep.coupling = false;
  }

  rep.valid = true;
  for (const auto& c : rep.conditions) rep.valid = rep.valid && c.ok;
  if (!rep.valid) return rep;

  rep.cokernel = gpd::quotient_by_normal_subbundle(om, rep.image);
  rep.pair = rep.cokernel.quotient.is_transitive();
  for (Idx o = 0; o < rep.cokernel.quotient.object_count() && rep.pair; ++o)
    if (rep.cokernel.quotient.arrows_between(o, o).size() != 1) rep.pair = false;

  // induced representation of the cokernel on ker tau: exhaust all class
  // representatives and demand they agree on kernel elements
  rep.induced_well_defined = true;
  for (Idx qa = 0; qa < rep.cokernel.quotient.arrow_count() && rep.induced_well_defined; ++qa) {
    Idx witness_arrow = UINT32_MAX;
    std::vector<Idx> action;
    for (Idx a = 0; a < om.arrow_count(); ++a) {
      if (rep.cokernel.arrow_class[a] != qa) continue;
      std::vector<Idx> this_action;
      for (Idx v : rep.kernel[om.src(a)]) this_action.push_back(x.rho.apply(a, v));
      if (witness_arrow == UINT32_MAX) {
        witness_arrow = a;
        action = this_action;
      } else if (action != this_action) {
        rep.induced_well_defined = false;
        break;
      }
      // kernel must be carried to kernel
      for (Idx img : this_action) {
        const auto& ker_t = rep.kernel[om.tgt(a)];
        if (!std::binary_search(ker_t.begin(), ker_t.end(), img))
          rep.induced_well_defined = false;
      }
    }
  }
  return rep;
}

// The crossed module induced by an extension and a central normal
// subbundle n of the kernel: <F, tau, total/N, rho>.
inline GroupoidXMod xmod_from_extension(const gpd::GroupoidExtension& ext,
                                        const std::vector<std::vector<Idx>>& n) {
  const FiniteGroupoid& om = ext.total;
  // n[x] lists fiber elements of kernel.fiber(x); must be central there
  IsotropySubbundle nb;
  nb.arrows.resize(om.object_count());
  for (Idx o = 0; o < om.object_count(); ++o) {
    algebra::CenterSubgroup z = algebra::center(ext.kernel.fiber(o));
    for (Idx v : n[o]) {
      if (!z.sub.contains(v)) fail("NotCentral", "subbundle leaves the fiber center");
      nb.arrows[o].push_back(ext.iota[o][v]);
    }
    std::sort(nb.arrows[o].begin(), nb.arrows[o].end());
  }
  if (!gpd::is_normal_subbundle(om, nb)) fail("NotNormal", "central subbundle not normal");
  GroupoidQuotient q = gpd::quotient_by_normal_subbundle(om, nb);

  GroupoidXMod out;
  out.f = ext.kernel;
  out.omega = q.quotient;
  out.tau.resize(om.object_count());
  for (Idx o = 0; o < om.object_count(); ++o) {
    out.tau[o].resize(ext.kernel.fiber(o).size());
    for (Idx v = 0; v < ext.kernel.fiber(o).size(); ++v)
      out.tau[o][v] = q.arrow_class[ext.iota[o][v]];
  }
  // rho(<xi>, f) = iota^{-1}(xi iota(f) xi^{-1}); exhaust representatives
  out.rho.per_arrow.resize(q.quotient.arrow_count());
  std::vector<std::vector<Idx>> iota_inv(om.object_count());
  for (Idx o = 0; o < om.object_count(); ++o) {
    iota_inv[o].assign(om.arrow_count(), UINT32_MAX);
    for (Idx v = 0; v < ext.kernel.fiber(o).size(); ++v) iota_inv[o][ext.iota[o][v]] = v;
  }
  for (Idx a = 0; a < om.arrow_count(); ++a) {
    Idx qa = q.arrow_class[a];
    std::vector<Idx> action(ext.kernel.fiber(om.src(a)).size());
    for (Idx v = 0; v < action.size(); ++v) {
      Idx img = iota_inv[om.tgt(a)][om.conj(a, ext.iota[om.src(a)][v])];
      if (img == UINT32_MAX) fail("NotNormal", "conjugation leaves the kernel bundle");
      action[v] = img;
    }
    if (out.rho.per_arrow[qa].empty())
      out.rho.per_arrow[qa] = action;
    else if (out.rho.per_arrow[qa] != action)
      fail("NotCentral", "representation not well defined on classes");
  }
  return out;
}

// The stock pair crossed module over a base: fiber group h, a central
// subgroup n, omega the trivialized groupoid with vertex h/n, tau the
// fiberwise quotient and rho conjugation through canonical preimages
// (well defined exactly because n is central).
inline GroupoidXMod quotient_pair_xmod(const std::vector<std::string>& base_points,
                                       const FiniteGroup& h, const algebra::Subgroup& n) {
  algebra::CenterSubgroup zh = algebra::center(h);
  for (Idx v : n.elements)
    if (!zh.sub.contains(v)) fail("NotCentral", "chosen subgroup is not central");
  algebra::QuotientGroup q = algebra::quotient(h, n);

  GroupoidXMod x;
  x.omega = gpd::trivialized_groupoid(base_points, q.group);
  x.f = GroupBundle(x.omega.object_count(), h);
  x.tau.resize(x.omega.object_count());
  for (Idx o = 0; o < x.omega.object_count(); ++o) {
    x.tau[o].resize(h.size());
    for (Idx v = 0; v < h.size(); ++v)
      x.tau[o][v] = x.omega.arrow_index(gpd::triv_arrow_name(
          x.omega.objects()[o], q.group.name(q.projection[v]), x.omega.objects()[o]));
  }
  x.rho.per_arrow.resize(x.omega.arrow_count());
  for (Idx a = 0; a < x.omega.arrow_count(); ++a) {
    const std::string& nm = x.omega.arrow(a).name;
    std::size_t l = nm.find('|'), r = nm.rfind('|');
    Idx qe = q.group.index(nm.substr(l + 1, r - l - 1));
    Idx lift = q.coset_representative[qe];
    x.rho.per_arrow[a].resize(h.size());
    for (Idx v = 0; v < h.size(); ++v) x.rho.per_arrow[a][v] = h.conj(lift, v);
  }
  return x;
}

}  // namespace xmodkit::xmod

#endif  // XMODKIT_XMOD_XMOD_HPP_
