// Transition cocycles for a pair crossed module over a nerve, lifts to
// the bundle fiber, the Cech lifting obstruction, operator extensions
// glued from cocycle lifts, their equivalence, and the H^1 torsor action.
//
// Locally constant (per overlap component) stands in for smooth
// throughout: transition values, lifts, and the correction families that
// realize equivalences are all constant per component. The coefficient
// group of every class is ker(tau) at the basepoint, which the crossed
// module axioms place inside ZH; for couplings it is exactly ZH.

#ifndef XMODKIT_XMOD_LIFTING_HPP_
#define XMODKIT_XMOD_LIFTING_HPP_

#include "xmodkit/site/cochain.hpp"
#include "xmodkit/xmod/xmod.hpp"

namespace xmodkit::xmod {

using site::CentralCochain;
using site::CoeffGroup;
using site::Nerve;

enum class Convention { paper, standard };

// Derived data tying a pair crossed module to a nerve over its base.
struct XModContext {
  GroupoidXMod x;
  std::shared_ptr<const Nerve> nerve;
  Idx base_object = 0;             // x0: the first nerve point as an object
  std::vector<Idx> object_of;      // nerve point -> omega object
  std::vector<Idx> chart_of;       // nerve point -> least chart containing it
  gpd::VertexGroup vertex;         // omega vertex group at x0
  FiniteGroup h;                   // F_{x0}, the model fiber
  std::vector<Idx> del;            // h element -> vertex.group element
  algebra::Subgroup del_image;     // inside vertex.group
  algebra::Subgroup del_kernel;    // inside h
  CoeffGroup coeff;                // (h, ker del)
  std::vector<Idx> tau_point;      // nerve point -> least omega arrow x0 -> point
};

inline XModContext make_context(GroupoidXMod x, std::shared_ptr<const Nerve> nerve) {
  XModContext ctx;
  ctx.x = std::move(x);
  ctx.nerve = std::move(nerve);
  if (ctx.x.omega.objects() != ctx.nerve->point_names())
    fail("SchemaError", "nerve points must match the groupoid objects");
  if (!ctx.x.omega.is_transitive()) fail("NotTransitive", "pair crossed module expected");

  ctx.object_of.resize(ctx.nerve->point_count());
  for (Idx p = 0; p < ctx.nerve->point_count(); ++p)
    ctx.object_of[p] = ctx.x.omega.object_index(ctx.nerve->point_names()[p]);
  ctx.chart_of.assign(ctx.nerve->point_count(), UINT32_MAX);
  for (Idx c = 0; c < ctx.nerve->chart_count(); ++c)
    for (Idx p : ctx.nerve->chart_points(c))
      if (ctx.chart_of[p] == UINT32_MAX) ctx.chart_of[p] = c;
  for (Idx p = 0; p < ctx.nerve->point_count(); ++p)
    if (ctx.chart_of[p] == UINT32_MAX) fail("SchemaError", "charts do not cover the base");

  ctx.base_object = ctx.object_of[0];
  ctx.vertex = gpd::vertex_group(ctx.x.omega, ctx.base_object);
  ctx.h = ctx.x.f.fiber(ctx.base_object);
  ctx.del.resize(ctx.h.size());
  for (Idx v = 0; v < ctx.h.size(); ++v)
    ctx.del[v] = ctx.vertex.element(ctx.x.tau[ctx.base_object][v]);
  {
    std::vector<Idx> img;
    for (Idx v = 0; v < ctx.h.size(); ++v) {
      img.push_back(ctx.del[v]);
      if (ctx.del[v] == ctx.vertex.group.identity()) ctx.del_kernel.elements.push_back(v);
    }
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    ctx.del_image.elements = std::move(img);
  }
  ctx.coeff = CoeffGroup(ctx.h, ctx.del_kernel);

  ctx.tau_point.resize(ctx.nerve->point_count());
  for (Idx p = 0; p < ctx.nerve->point_count(); ++p)
    ctx.tau_point[p] = ctx.x.omega.arrows_between(ctx.base_object, ctx.object_of[p]).front();
  return ctx;
}

// A canonical preimage of each del-image element, shared by lifts.
inline std::vector<Idx> del_preimage_table(const XModContext& ctx) {
  std::vector<Idx> pre(ctx.vertex.group.size(), UINT32_MAX);
  for (Idx v = 0; v < ctx.h.size(); ++v)
    if (pre[ctx.del[v]] == UINT32_MAX) pre[ctx.del[v]] = v;
  return pre;
}

// Transition functions s_ij with values in del(H) <= vertex group, plus
// lifts to H, both stored pointwise on each pairwise overlap.
struct TransitionSystem {
  // aligned with nerve.simplices(1)[k].points; values are vertex group
  // elements (s) and h elements (shat)
  std::vector<std::vector<Idx>> s;
  std::vector<std::vector<Idx>> shat;

  // s for an ordered chart pair at a point; identity when i == j
  Idx s_of(const XModContext& ctx, Idx i, Idx j, Idx point) const {
    if (i == j) return ctx.vertex.group.identity();
    std::size_t si = ctx.nerve->find_simplex({std::min(i, j), std::max(i, j)});
    if (si == Nerve::npos) fail("UnknownReference", "no overlap for transition value");
    const site::Simplex& sx = ctx.nerve->simplices(1)[si];
    auto it = std::lower_bound(sx.points.begin(), sx.points.end(), point);
    if (it == sx.points.end() || *it != point)
      fail("UnknownElement", "point outside the overlap");
    Idx val = s[si][static_cast<std::size_t>(it - sx.points.begin())];
    return i < j ? val : ctx.vertex.group.inv(val);
  }
  Idx shat_of(const XModContext& ctx, Idx i, Idx j, Idx point) const {
    if (i == j) return ctx.h.identity();
    std::size_t si = ctx.nerve->find_simplex({std::min(i, j), std::max(i, j)});
    if (si == Nerve::npos) fail("UnknownReference", "no overlap for lift value");
    const site::Simplex& sx = ctx.nerve->simplices(1)[si];
    auto it = std::lower_bound(sx.points.begin(), sx.points.end(), point);
    if (it == sx.points.end() || *it != point)
      fail("UnknownElement", "point outside the overlap");
    Idx val = shat[si][static_cast<std::size_t>(it - sx.points.begin())];
    return i < j ? val : ctx.h.inv(val);
  }
};

// Sections of omega compatible with s: sigma_i(m) = tau_m . s_{c i}(m),
// c the least chart of m. Returns the arrow x0 -> m read through chart i.
inline Idx section(const XModContext& ctx, const TransitionSystem& ts, Idx chart, Idx point) {
  Idx c = ctx.chart_of[point];
  Idx sval = ts.s_of(ctx, c, chart, point);
  return ctx.x.omega.compose(ctx.tau_point[point], ctx.vertex.arrow_of[sval]);
}

inline void validate_transition_system(const XModContext& ctx, const TransitionSystem& ts) {
  const Nerve& nv = *ctx.nerve;
  const auto& pairs = nv.simplices(1);
  if (ts.s.size() != pairs.size() || ts.shat.size() != pairs.size())
    fail("DimensionMismatch", "transition system shape");
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (ts.s[k].size() != pairs[k].points.size() || ts.shat[k].size() != pairs[k].points.size())
      fail("DimensionMismatch", "transition system pointwise shape");
    for (std::size_t t = 0; t < ts.s[k].size(); ++t) {
      if (!ctx.del_image.contains(ts.s[k][t]))
        fail("SchemaError", "transition value outside del(H)");
      if (ctx.del[ts.shat[k][t]] != ts.s[k][t])
        fail("LiftMismatch", "del(shat) != s at a point");
    }
    // locally constant per component
    for (const auto& comp : pairs[k].comps) {
      Idx first = ts.s[k][std::lower_bound(pairs[k].points.begin(), pairs[k].points.end(),
                                           comp.front()) - pairs[k].points.begin()];
      Idx firsth = ts.shat[k][std::lower_bound(pairs[k].points.begin(), pairs[k].points.end(),
                                               comp.front()) - pairs[k].points.begin()];
      for (Idx p : comp) {
        std::size_t at = std::lower_bound(pairs[k].points.begin(), pairs[k].points.end(), p) -
                         pairs[k].points.begin();
        if (ts.s[k][at] != first) fail("SchemaError", "s not locally constant");
        if (ts.shat[k][at] != firsth) fail("SchemaError", "shat not locally constant");
      }
    }
  }
  // cocycle identity s_jk s_ik^{-1} s_ij = 1 pointwise on triples
  const FiniteGroup& vg = ctx.vertex.group;
  for (const site::Simplex& tr : nv.simplices(2)) {
    Idx i = tr.charts[0], j = tr.charts[1], k = tr.charts[2];
    for (Idx p : tr.points) {
      Idx z = vg.op(vg.op(ts.s_of(ctx, j, k, p), vg.inv(ts.s_of(ctx, i, k, p))),
                    ts.s_of(ctx, i, j, p));
      if (z != vg.identity()) fail("NotACocycle", "transition functions fail the cocycle law");
    }
  }
}

// Builds a system from vertex-group values (one per pair overlap point),
// with the canonical least-preimage lift.
inline TransitionSystem make_system(const XModContext& ctx,
                                    const std::vector<std::vector<Idx>>& s_values) {
  TransitionSystem ts;
  ts.s = s_values;
  std::vector<Idx> pre = del_preimage_table(ctx);
  ts.shat.resize(ts.s.size());
  for (std::size_t k = 0; k < ts.s.size(); ++k) {
    ts.shat[k].resize(ts.s[k].size());
    for (std::size_t t = 0; t < ts.s[k].size(); ++t) {
      Idx p = pre[ts.s[k][t]];
      if (p == UINT32_MAX) fail("SchemaError", "transition value outside del(H)");
      ts.shat[k][t] = p;
    }
  }
  validate_transition_system(ctx, ts);
  return ts;
}

// Shift the lifts by a kernel-valued 1-cochain (per component).
inline TransitionSystem relift(const XModContext& ctx, const TransitionSystem& ts,
                               const CentralCochain& f) {
  if (f.degree() != 1 || !(f.coeff() == ctx.coeff))
    fail("DimensionMismatch", "relift expects a kernel-valued 1-cochain");
  TransitionSystem out = ts;
  const auto& pairs = ctx.nerve->simplices(1);
  for (std::size_t k = 0; k < pairs.size(); ++k)
    for (std::size_t t = 0; t < pairs[k].points.size(); ++t)
      out.shat[k][t] = ctx.h.op(ts.shat[k][t], f.value(pairs[k].charts, pairs[k].points[t]));
  validate_transition_system(ctx, out);
  return out;
}

struct LiftingObstruction {
  CentralCochain e;          // degree 2, coefficients ker del
  bool values_central = false;
  bool values_in_kernel = false;
  bool locally_constant = false;
  bool is_cocycle = false;
  bool conventions_agree = false;  // paper vs standard reading, pointwise
};

// e_ijk = shat_jk . shat_ik^{-1} . shat_ij (paper convention) or
// shat_ij . shat_jk . shat_ik^{-1} (standard alternation).
inline LiftingObstruction lifting_obstruction(const XModContext& ctx,
                                              const TransitionSystem& ts,
                                              Convention conv = Convention::paper) {
  validate_transition_system(ctx, ts);
  LiftingObstruction out;
  out.e = CentralCochain(ctx.nerve, ctx.coeff, 2);
  out.values_central = true;
  out.values_in_kernel = true;
  out.locally_constant = true;
  out.conventions_agree = true;

  const FiniteGroup& h = ctx.h;
  algebra::CenterSubgroup zh = algebra::center(h);
  const auto& triples = ctx.nerve->simplices(2);
  for (std::size_t si = 0; si < triples.size(); ++si) {
    const site::Simplex& tr = triples[si];
    Idx i = tr.charts[0], j = tr.charts[1], k = tr.charts[2];
    for (std::size_t c = 0; c < tr.comps.size(); ++c) {
      Idx ref = UINT32_MAX;
      for (Idx p : tr.comps[c]) {
        Idx sij = ts.shat_of(ctx, i, j, p), sjk = ts.shat_of(ctx, j, k, p),
            sik = ts.shat_of(ctx, i, k, p);
        Idx paper = h.op(h.op(sjk, h.inv(sik)), sij);
        Idx standard = h.op(h.op(sij, sjk), h.inv(sik));
        if (paper != standard) out.conventions_agree = false;
        Idx val = conv == Convention::paper ? paper : standard;
        if (!zh.sub.contains(val)) out.values_central = false;
        if (!ctx.del_kernel.contains(val)) out.values_in_kernel = false;
        if (ref == UINT32_MAX)
          ref = val;
        else if (ref != val)
          out.locally_constant = false;
      }
      if (out.values_in_kernel && ref != UINT32_MAX) out.e.set_slot(out.e.slot_of(si, c), ref);
    }
  }
  out.is_cocycle = site::is_cocycle(out.e);
  return out;
}

// --- operator extensions --------------------------------------------------

struct OperatorExtension {
  TransitionSystem system;              // the lifts are a cocycle
  gpd::FiniteGroupoid total;            // glued groupoid, objects = base points
  std::vector<Idx> mu;                  // total arrow -> omega arrow
  std::vector<std::vector<Idx>> iota;   // (object, fiber element) -> total arrow
};

inline bool lifts_are_cocycle(const XModContext& ctx, const TransitionSystem& ts) {
  const FiniteGroup& h = ctx.h;
  for (const site::Simplex& tr : ctx.nerve->simplices(2)) {
    Idx i = tr.charts[0], j = tr.charts[1], k = tr.charts[2];
    for (Idx p : tr.points) {
      Idx z = h.op(h.op(ts.shat_of(ctx, j, k, p), h.inv(ts.shat_of(ctx, i, k, p))),
                   ts.shat_of(ctx, i, j, p));
      if (z != h.identity()) return false;
    }
  }
  return true;
}

// Glue the operator extension from cocycle lifts. Arrows are canonical
// coordinates (m | h | m'): sigma_{c(m)}(m) . h . sigma_{c(m')}(m')^{-1}.
inline OperatorExtension glue_operator_extension(const XModContext& ctx,
                                                 const TransitionSystem& ts) {
  if (!lifts_are_cocycle(ctx, ts)) fail("ObstructionNonzero", "lifts do not form a cocycle");
  OperatorExtension out;
  out.system = ts;
  out.total = gpd::trivialized_groupoid(ctx.nerve->point_names(), ctx.h);

  const gpd::FiniteGroupoid& om = ctx.x.omega;
  out.mu.resize(out.total.arrow_count());
  for (Idx a = 0; a < out.total.arrow_count(); ++a) {
    // parse the canonical arrow (t | h | s): endpoints are objects, the
    // h-part is recovered through the arrow's name structure
    Idx sp = out.total.src(a), tp = out.total.tgt(a);
    // find h by matching against the trivialized name
    const std::string& nm = out.total.arrow(a).name;
    std::size_t l = nm.find('|'), r = nm.rfind('|');
    Idx hval = ctx.h.index(nm.substr(l + 1, r - l - 1));
    Idx left = section(ctx, ts, ctx.chart_of[tp], tp);
    Idx right = section(ctx, ts, ctx.chart_of[sp], sp);
    Idx mid = ctx.x.tau[ctx.base_object][hval];
    out.mu[a] = om.compose(om.compose(left, mid), om.inverse(right));
  }
  // iota: f in F_m goes to (m | psi_c(m)^{-1}(f) | m) with psi the
  // rho-chart of the bundle through the compatible sections
  out.iota.resize(out.total.object_count());
  for (Idx p = 0; p < ctx.nerve->point_count(); ++p) {
    Idx obj = ctx.object_of[p];
    Idx sec = section(ctx, ts, ctx.chart_of[p], p);
    const FiniteGroup& fm = ctx.x.f.fiber(obj);
    out.iota[obj].assign(fm.size(), UINT32_MAX);
    for (Idx hv = 0; hv < ctx.h.size(); ++hv) {
      Idx f = ctx.x.rho.apply(sec, hv);
      out.iota[obj][f] = out.total.arrow_index(gpd::triv_arrow_name(
          ctx.nerve->point_names()[p], ctx.h.name(hv), ctx.nerve->point_names()[p]));
    }
  }
  return out;
}

struct OpextReport {
  bool valid = false;
  std::vector<GCondition> conditions;
};

inline OpextReport validate_operator_extension(const XModContext& ctx,
                                               const OperatorExtension& o) {
  OpextReport rep;
  auto add = [&](std::string name, bool ok, std::string wit = "") {
    rep.conditions.push_back({std::move(name), ok, std::move(wit)});
  };
  const gpd::FiniteGroupoid& tot = o.total;
  const gpd::FiniteGroupoid& om = ctx.x.omega;

  add("total groupoid axioms", gpd::validate_groupoid(tot).valid);

  // mu is a functor onto omega over the identity base
  {
    bool ok = true;
    for (Idx a = 0; a < tot.arrow_count() && ok; ++a) {
      if (om.src(o.mu[a]) != ctx.object_of[tot.src(a)] ||
          om.tgt(o.mu[a]) != ctx.object_of[tot.tgt(a)])
        ok = false;
    }
    for (Idx a = 0; a < tot.arrow_count() && ok; ++a)
      for (Idx b = 0; b < tot.arrow_count(); ++b) {
        if (tot.src(a) != tot.tgt(b)) continue;
        if (o.mu[tot.compose(a, b)] != om.compose(o.mu[a], o.mu[b])) {
          ok = false;
          break;
        }
      }
    std::vector<bool> hit(om.arrow_count(), false);
    for (Idx a = 0; a < tot.arrow_count(); ++a) hit[o.mu[a]] = true;
    for (bool hb : hit) ok = ok && hb;
    add("mu surjective functor", ok);
  }
  // iota embeds the bundle as the gauge bundle of the total groupoid
  {
    bool ok = true;
    for (Idx obj = 0; obj < tot.object_count() && ok; ++obj) {
      const FiniteGroup& fm = ctx.x.f.fiber(obj);
      std::vector<bool> hit(tot.arrows_between(obj, obj).size(), false);
      if (o.iota[obj].size() != fm.size()) ok = false;
      for (Idx v = 0; v < fm.size() && ok; ++v) {
        Idx a = o.iota[obj][v];
        if (tot.src(a) != obj || tot.tgt(a) != obj) ok = false;
      }
      if (ok && o.iota[obj][fm.identity()] != tot.unit(obj)) ok = false;
      for (Idx v = 0; v < fm.size() && ok; ++v)
        for (Idx w = 0; w < fm.size(); ++w)
          if (o.iota[obj][fm.op(v, w)] != tot.compose(o.iota[obj][v], o.iota[obj][w])) {
            ok = false;
            break;
          }
      // onto the isotropy
      if (ok && fm.size() != tot.arrows_between(obj, obj).size()) ok = false;
    }
    add("iota iso onto the gauge bundle", ok);
  }
  // commuting square: mu(iota(f)) = tau(f)
  {
    bool ok = true;
    for (Idx obj = 0; obj < tot.object_count() && ok; ++obj)
      for (Idx v = 0; v < ctx.x.f.fiber(obj).size(); ++v)
        if (o.mu[o.iota[obj][v]] != ctx.x.tau[obj][v]) {
          ok = false;
          break;
        }
    add("mu o iota = tau", ok);
  }
  // iota(rho(mu(xi), f)) = xi iota(f) xi^{-1}
  {
    bool ok = true;
    std::string wit;
    for (Idx a = 0; a < tot.arrow_count() && ok; ++a) {
      Idx srco = tot.src(a), tgto = tot.tgt(a);
      for (Idx v = 0; v < ctx.x.f.fiber(srco).size(); ++v) {
        Idx lhs = o.iota[tgto][ctx.x.rho.apply(o.mu[a], v)];
        Idx rhs = tot.compose(tot.compose(a, o.iota[srco][v]), tot.inverse(a));
        if (lhs != rhs) {
          ok = false;
          wit = tot.arrow(a).name;
          break;
        }
      }
    }
    add("iota(rho(mu(xi),f)) = xi iota(f) xi^-1", ok, wit);
  }
  rep.valid = true;
  for (const auto& c : rep.conditions) rep.valid = rep.valid && c.ok;
  return rep;
}

// Obstruction class zero -> glue from corrected lifts; otherwise error.
inline OperatorExtension opext_from_vanishing(const XModContext& ctx,
                                              const TransitionSystem& ts) {
  LiftingObstruction obs = lifting_obstruction(ctx, ts);
  if (!obs.values_in_kernel) fail("SchemaError", "obstruction not kernel valued");
  CentralCochain zero(ctx.nerve, ctx.coeff, 2);
  site::ClassDecision dec = site::classes_equal(obs.e, zero);
  if (!dec.equal) fail("ObstructionNonzero", "lifting obstruction class is nonzero");
  // corrected lifts: shat' = shat . r^{-1} with delta r = e
  CentralCochain rinv = dec.witness->inverse();
  TransitionSystem corrected = relift(ctx, ts, rinv);
  return glue_operator_extension(ctx, corrected);
}

// Exhaustive existence oracle: search all locally-constant lift systems,
// gauge-fixing a spanning tree of the chart graph to the canonical lift.
inline bool opext_exists_by_search(const XModContext& ctx, const TransitionSystem& ts) {
  const auto& pairs = ctx.nerve->simplices(1);
  // spanning tree over the chart graph
  std::vector<bool> in_tree_pair(pairs.size(), false);
  {
    std::vector<bool> reached(ctx.nerve->chart_count(), false);
    reached[0] = true;
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        Idx i = pairs[k].charts[0], j = pairs[k].charts[1];
        if (reached[i] != reached[j]) {
          in_tree_pair[k] = true;
          reached[i] = reached[j] = true;
          grew = true;
        }
      }
    }
  }
  // free slots: per non-tree pair, per component, a kernel correction
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (in_tree_pair[k]) continue;
    for (std::size_t c = 0; c < pairs[k].comps.size(); ++c) slots.emplace_back(k, c);
  }
  const auto& ker = ctx.del_kernel.elements;
  std::vector<std::size_t> at(slots.size(), 0);
  do {
    TransitionSystem cand = ts;
    for (std::size_t t = 0; t < slots.size(); ++t) {
      auto [k, c] = slots[t];
      for (Idx p : pairs[k].comps[c]) {
        std::size_t idx = std::lower_bound(pairs[k].points.begin(), pairs[k].points.end(), p) -
                          pairs[k].points.begin();
        cand.shat[k][idx] = ctx.h.op(ts.shat[k][idx], ker[at[t]]);
      }
    }
    if (lifts_are_cocycle(ctx, cand)) return true;
  } while (site::detail::next_odometer(at, ker.size()));
  return false;
}

// All cocycle lift systems (no gauge fixing); used by the torsor census.
inline std::vector<TransitionSystem> all_cocycle_lifts(const XModContext& ctx,
                                                       const TransitionSystem& ts,
                                                       std::size_t cap = 1 << 22) {
  const auto& pairs = ctx.nerve->simplices(1);
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t k = 0; k < pairs.size(); ++k)
    for (std::size_t c = 0; c < pairs[k].comps.size(); ++c) slots.emplace_back(k, c);
  const auto& ker = ctx.del_kernel.elements;
  double space = 1;
  for (std::size_t t = 0; t < slots.size(); ++t) space *= double(ker.size());
  if (space > double(cap)) fail("SizeBoundExceeded", "lift census too large");

  std::vector<TransitionSystem> out;
  std::vector<std::size_t> at(slots.size(), 0);
  do {
    TransitionSystem cand = ts;
    for (std::size_t t = 0; t < slots.size(); ++t) {
      auto [k, c] = slots[t];
      for (Idx p : pairs[k].comps[c]) {
        std::size_t idx = std::lower_bound(pairs[k].points.begin(), pairs[k].points.end(), p) -
                          pairs[k].points.begin();
        cand.shat[k][idx] = ctx.h.op(ts.shat[k][idx], ker[at[t]]);
      }
    }
    if (lifts_are_cocycle(ctx, cand)) out.push_back(std::move(cand));
  } while (site::detail::next_odometer(at, ker.size()));
  return out;
}

// --- equivalence and the torsor action ------------------------------------

// The difference of two lift systems as a kernel-valued 1-cochain.
inline CentralCochain lift_difference(const XModContext& ctx, const TransitionSystem& a,
                                      const TransitionSystem& b) {
  CentralCochain f(ctx.nerve, ctx.coeff, 1);
  const auto& pairs = ctx.nerve->simplices(1);
  for (std::size_t k = 0; k < pairs.size(); ++k)
    for (std::size_t c = 0; c < pairs[k].comps.size(); ++c) {
      Idx p = pairs[k].comps[c].front();
      std::size_t idx = std::lower_bound(pairs[k].points.begin(), pairs[k].points.end(), p) -
                        pairs[k].points.begin();
      Idx val = ctx.h.op(ctx.h.inv(a.shat[k][idx]), b.shat[k][idx]);
      if (!ctx.del_kernel.contains(val))
        fail("DimensionMismatch", "systems do not lift the same transition functions");
      f.set_slot(f.slot_of(k, c), val);
    }
  return f;
}

struct EquivalenceDecision {
  bool equivalent = false;
  std::optional<CentralCochain> correction;   // r with delta r = difference
  std::optional<gpd::GroupoidMorData> kappa;  // realized isomorphism
};

// Two presented operator extensions are equivalent iff their lift systems
// differ by the coboundary of a locally-constant kernel-valued family;
// the witness r realizes an explicit isomorphism kappa with
// mu2 o kappa = mu1 and kappa o iota1 = iota2, which is verified.
inline EquivalenceDecision equivalent_opext(const XModContext& ctx, const OperatorExtension& o1,
                                            const OperatorExtension& o2) {
  EquivalenceDecision out;
  CentralCochain f = lift_difference(ctx, o1.system, o2.system);
  CentralCochain zero(ctx.nerve, ctx.coeff, 1);
  if (!site::is_cocycle(f)) fail("NotACocycle", "lift difference not a cocycle");
  auto witness = site::find_coboundary_witness_smith(f);
  if (!witness) {
    auto wit2 = site::find_coboundary_witness_enumerated(f);
    if (wit2) witness = wit2;
  }
  if (!witness) return out;
  out.equivalent = true;
  out.correction = *witness;

  // kappa (m | h | m') -> (m | r_{c(m)}(m) h r_{c(m')}(m')^{-1} | m')
  const gpd::FiniteGroupoid& tot = o1.total;
  gpd::GroupoidMorData md;
  md.object_map.resize(tot.object_count());
  for (Idx x2 = 0; x2 < tot.object_count(); ++x2) md.object_map[x2] = x2;
  md.arrow_map.resize(tot.arrow_count());
  for (Idx a = 0; a < tot.arrow_count(); ++a) {
    Idx sp = tot.src(a), tp = tot.tgt(a);
    const std::string& nm = tot.arrow(a).name;
    std::size_t l = nm.find('|'), r = nm.rfind('|');
    Idx hval = ctx.h.index(nm.substr(l + 1, r - l - 1));
    Idx rl = witness->value({ctx.chart_of[tp]}, tp);
    Idx rr = witness->value({ctx.chart_of[sp]}, sp);
    Idx twisted = ctx.h.op(ctx.h.op(rl, hval), ctx.h.inv(rr));
    md.arrow_map[a] = o2.total.arrow_index(gpd::triv_arrow_name(
        tot.objects()[tp], ctx.h.name(twisted), tot.objects()[sp]));
  }
  gpd::GroupoidMor mor{&o1.total, &o2.total, md.object_map, md.arrow_map};
  if (!gpd::is_isomorphism(mor)) fail("SchemaError", "equivalence witness failed to realize");
  for (Idx a = 0; a < tot.arrow_count(); ++a)
    if (o2.mu[md.arrow_map[a]] != o1.mu[a])
      fail("SchemaError", "realized kappa breaks mu compatibility");
  for (Idx obj = 0; obj < tot.object_count(); ++obj)
    for (Idx v = 0; v < ctx.x.f.fiber(obj).size(); ++v)
      if (md.arrow_map[o1.iota[obj][v]] != o2.iota[obj][v])
        fail("SchemaError", "realized kappa breaks iota compatibility");
  out.kappa = std::move(md);
  return out;
}

// Twist by a kernel-valued 1-cocycle and reglue.
inline OperatorExtension h1_action(const XModContext& ctx, const OperatorExtension& o,
                                   const CentralCochain& f) {
  if (f.degree() != 1 || !(f.coeff() == ctx.coeff))
    fail("DimensionMismatch", "action expects a kernel-valued 1-cochain");
  if (!site::is_cocycle(f)) fail("NotACocycle", "twist is not a cocycle");
  TransitionSystem twisted = relift(ctx, o.system, f);
  return glue_operator_extension(ctx, twisted);
}

// Number of equivalence classes of presented operator extensions.
inline std::size_t count_opext_classes(const XModContext& ctx, const TransitionSystem& ts) {
  auto lifts = all_cocycle_lifts(ctx, ts);
  std::vector<OperatorExtension> reps;
  for (const TransitionSystem& cand : lifts) {
    OperatorExtension o = glue_operator_extension(ctx, cand);
    bool fresh = true;
    for (const OperatorExtension& r : reps)
      if (equivalent_opext(ctx, r, o).equivalent) {
        fresh = false;
        break;
      }
    if (fresh) reps.push_back(std::move(o));
  }
  return reps.size();
}

}  // namespace xmodkit::xmod

#endif  // XMODKIT_XMOD_LIFTING_HPP_
