// The section-4.1 correspondence: a transitive groupoid extension over M
// gives the PBG-groupoid (Q x Q)/N over the principal bundle of its
// quotient, and quotienting by G recovers the extension.

#ifndef XMODKIT_PBG_FROMEXT_HPP_
#define XMODKIT_PBG_FROMEXT_HPP_

#include "xmodkit/pbg/transition.hpp"

namespace xmodkit::pbg {

struct PBGFromExtension {
  PBGGroupoid upsilon;
  // the Q-arrow pair representing each upsilon arrow, for the round trip
  std::vector<std::pair<Idx, Idx>> rep_pair;
  std::vector<Idx> q_points;  // arrows of the total groupoid out of x0
  algebra::FiniteGroup structure_group;  // G = vertex of the quotient at x0
};

inline PBGFromExtension pbg_from_groupoid_extension(const gpd::GroupoidExtension& ext) {
  const gpd::FiniteGroupoid& tot = ext.total;
  const gpd::FiniteGroupoid& quo = ext.quotient;
  if (!tot.is_transitive() || !quo.is_transitive())
    fail("NotTransitive", "the correspondence needs transitive groupoids");

  Idx x0 = 0;
  gpd::VertexGroup hv = gpd::vertex_group(tot, x0);
  Idx qx0 = ext.pi.object_map[x0];
  gpd::VertexGroup gv = gpd::vertex_group(quo, qx0);

  // N = kernel fiber at x0, as vertex arrows of the total groupoid
  std::vector<Idx> n_arrows;
  for (Idx v = 0; v < ext.kernel.fiber(x0).size(); ++v) n_arrows.push_back(ext.iota[x0][v]);
  std::sort(n_arrows.begin(), n_arrows.end());

  // Q = arrows out of x0; labels (m, g) with g read off through the
  // least transversal of the quotient
  std::vector<Idx> q_points = tot.arrows_from(x0);
  std::vector<Idx> quo_transversal = gpd::spanning_arrows(quo, qx0);
  auto label_of = [&](Idx q) {
    Idx m = tot.tgt(q);
    Idx pim = ext.pi.object_map[m];
    Idx g = gv.element(quo.compose(quo.inverse(quo_transversal[pim]), ext.pi.arrow_map[q]));
    return std::make_pair(m, g);
  };

  // objects of upsilon, named like atlas points "m|g"
  auto object_name = [&](std::pair<Idx, Idx> lbl) {
    return tot.objects()[lbl.first] + "@" + gv.group.name(lbl.second);
  };
  std::map<std::string, Idx> q_of_name;  // object name -> a representative q
  for (Idx q : q_points) q_of_name.emplace(object_name(label_of(q)), q);

  // arrows: classes of pairs (q2, q1) under the diagonal N action
  std::map<std::pair<Idx, Idx>, std::size_t> class_of;
  std::vector<std::pair<Idx, Idx>> reps;
  for (Idx q2 : q_points)
    for (Idx q1 : q_points) {
      if (class_of.count({q2, q1})) continue;
      std::size_t id = reps.size();
      std::pair<Idx, Idx> best{UINT32_MAX, UINT32_MAX};
      for (Idx n : n_arrows) {
        std::pair<Idx, Idx> member{tot.compose(q2, n), tot.compose(q1, n)};
        class_of[member] = id;
        if (member.second < best.second ||
            (member.second == best.second && member.first < best.first))
          best = member;
      }
      reps.push_back(best);
    }

  std::vector<std::string> objects;
  for (const auto& [name, q] : q_of_name) objects.push_back(name);
  std::vector<gpd::Arrow> arrows;
  gpd::FiniteGroupoid probe = gpd::FiniteGroupoid::from_parts(objects, {});
  auto arrow_name = [&](std::size_t cls) {
    return "(" + tot.arrow(reps[cls].first).name + "~" + tot.arrow(reps[cls].second).name + ")";
  };
  for (std::size_t cls = 0; cls < reps.size(); ++cls)
    arrows.push_back({arrow_name(cls),
                      probe.object_index(object_name(label_of(reps[cls].second))),
                      probe.object_index(object_name(label_of(reps[cls].first)))});
  gpd::FiniteGroupoid ups = gpd::FiniteGroupoid::from_parts(objects, arrows);

  // composition <q2,q1> o <q1', q0> with q1' = q1 n: result <q2, q0 n^{-1}>
  std::vector<Idx> arrow_of_class(reps.size());
  for (std::size_t cls = 0; cls < reps.size(); ++cls)
    arrow_of_class[cls] = ups.arrow_index(arrow_name(cls));
  for (std::size_t c1 = 0; c1 < reps.size(); ++c1)
    for (std::size_t c2 = 0; c2 < reps.size(); ++c2) {
      auto [a2, a1] = reps[c1];  // target leg
      auto [b2, b1] = reps[c2];  // source leg
      // composable iff <a1> = <b2>: find n with b2 n = a1
      bool aligned = false;
      Idx n_found = 0;
      for (Idx n : n_arrows)
        if (tot.compose(b2, n) == a1) {
          aligned = true;
          n_found = n;
          break;
        }
      if (!aligned) continue;
      std::size_t cres = class_of.at({a2, tot.compose(b1, n_found)});
      ups.set_compose(arrow_of_class[c1], arrow_of_class[c2], arrow_of_class[cres]);
    }
  for (Idx q : q_points) {
    std::size_t cls = class_of.at({q, q});
    ups.set_unit(ups.object_index(object_name(label_of(q))), arrow_of_class[cls]);
  }
  for (std::size_t cls = 0; cls < reps.size(); ++cls)
    ups.set_inverse(arrow_of_class[cls],
                    arrow_of_class[class_of.at({reps[cls].second, reps[cls].first})]);

  // atlas: one chart covering M, structure group G
  std::map<std::string, std::vector<std::string>> charts;
  charts["U"] = tot.objects();
  auto base_nerve = std::make_shared<Nerve>(tot.objects(), charts);
  // the atlas names points "m|g" with g the canonical G element names
  PrincipalAtlas atlas(base_nerve, gv.group);

  PBGFromExtension out;
  out.structure_group = gv.group;
  out.q_points = q_points;
  out.rep_pair = reps;
  out.upsilon.atlas = atlas;
  out.upsilon.g = ups;

  // G acts by right translation with any lift of g
  std::vector<Idx> lift_of(gv.group.size());
  for (Idx ge = 0; ge < gv.group.size(); ++ge) {
    bool found = false;
    for (Idx v = 0; v < hv.group.size() && !found; ++v) {
      Idx cand = hv.arrow_of[v];
      if (gv.element(ext.pi.arrow_map[cand]) == ge) {
        lift_of[ge] = cand;
        found = true;
      }
    }
    if (!found) fail("NotExact", "quotient vertex element without a lift");
  }
  out.upsilon.object_act.resize(ups.object_count());
  for (Idx o = 0; o < ups.object_count(); ++o) {
    out.upsilon.object_act[o].resize(gv.group.size());
    Idx q = q_of_name.at(ups.objects()[o]);
    for (Idx ge = 0; ge < gv.group.size(); ++ge)
      out.upsilon.object_act[o][ge] =
          ups.object_index(object_name(label_of(tot.compose(q, lift_of[ge]))));
  }
  out.upsilon.arrow_act.resize(ups.arrow_count());
  for (std::size_t cls = 0; cls < reps.size(); ++cls) {
    out.upsilon.arrow_act[arrow_of_class[cls]].resize(gv.group.size());
    for (Idx ge = 0; ge < gv.group.size(); ++ge) {
      std::pair<Idx, Idx> moved{tot.compose(reps[cls].first, lift_of[ge]),
                                tot.compose(reps[cls].second, lift_of[ge])};
      out.upsilon.arrow_act[arrow_of_class[cls]][ge] = arrow_of_class[class_of.at(moved)];
    }
  }
  return out;
}

// Quotient a PBG-groupoid by its structure group action.
inline gpd::GroupoidQuotient quotient_by_structure_group(const PBGGroupoid& p) {
  return gpd::quotient_by_group_action(p.g, p.atlas.group(), p.object_act, p.arrow_act);
}

// The explicit inverse of the correspondence on the constructed object:
// <q2, q1> . G -> q2 q1^{-1}. Returns the isomorphism as a morphism from
// the G-quotient of upsilon onto the original total groupoid.
inline gpd::GroupoidMorData roundtrip_isomorphism(const gpd::GroupoidExtension& ext,
                                                  const PBGFromExtension& pf,
                                                  const gpd::GroupoidQuotient& quot) {
  const gpd::FiniteGroupoid& tot = ext.total;
  gpd::GroupoidMorData md;
  md.object_map.assign(quot.quotient.object_count(), UINT32_MAX);
  md.arrow_map.assign(quot.quotient.arrow_count(), UINT32_MAX);
  for (Idx a = 0; a < pf.upsilon.g.arrow_count(); ++a) {
    // find the class representative's Q pair
    const std::string& nm = pf.upsilon.g.arrow(a).name;
    std::size_t cut = nm.find('~');
    Idx q2 = tot.arrow_index(nm.substr(1, cut - 1));
    Idx q1 = tot.arrow_index(nm.substr(cut + 1, nm.size() - cut - 2));
    Idx img = tot.compose(q2, tot.inverse(q1));
    Idx qa = quot.arrow_class[a];
    if (md.arrow_map[qa] == UINT32_MAX) md.arrow_map[qa] = img;
    else if (md.arrow_map[qa] != img)
      fail("SchemaError", "round trip map is not constant on classes");
    md.object_map[quot.quotient.src(qa)] = tot.src(img);
    md.object_map[quot.quotient.tgt(qa)] = tot.tgt(img);
  }
  gpd::GroupoidMor mor{&quot.quotient, &tot, md.object_map, md.arrow_map};
  if (!gpd::is_isomorphism(mor)) fail("SchemaError", "round trip failed to realize");
  return md;
}

}  // namespace xmodkit::pbg

#endif  // XMODKIT_PBG_FROMEXT_HPP_
