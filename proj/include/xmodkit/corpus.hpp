// Deterministic corpus generation: stratified families of pair crossed
// modules (plain and PBG) with transition systems, plus derivation laws
// for the Lie layer. Every instance is validated at generation time; the
// random stream is a fixed splitmix sequence, so a seed pins the corpus.

#ifndef XMODKIT_CORPUS_HPP_
#define XMODKIT_CORPUS_HPP_

#include "xmodkit/io/workspace.hpp"
#include "xmodkit/pbg/lift.hpp"

namespace xmodkit::corpus {

using algebra::FiniteGroup;
using algebra::Idx;

struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
};

struct Caps {
  std::size_t max_charts = 4;
  std::size_t max_group = 4;
  std::size_t max_fiber = 8;
  std::size_t max_points = 8;
};

struct XModInstance {
  std::string name;
  xmod::XModContext ctx;
  xmod::TransitionSystem ts;
  bool within_caps = true;
};

struct PBGInstance {
  std::string name;
  pbg::PBGContext ctx;
  bool within_caps = true;
};

struct LieInstance {
  std::string name;
  lie::DerivationLaw law;
};

struct Corpus {
  io::Workspace workspace;
  std::vector<XModInstance> xmods;
  std::vector<PBGInstance> pbgs;
  std::vector<LieInstance> lies;
};

namespace detail {

inline algebra::Subgroup named_subgroup(const FiniteGroup& g,
                                        const std::vector<std::string>& names) {
  algebra::Subgroup s;
  for (const auto& n : names) s.elements.push_back(g.index(n));
  std::sort(s.elements.begin(), s.elements.end());
  return s;
}

// a plain-law vertex-valued coboundary pattern from a random 0-cochain
inline std::vector<std::vector<Idx>> coboundary_pattern(const site::PrincipalAtlas& atlas,
                                                        const FiniteGroup& q,
                                                        const std::vector<std::vector<Idx>>& phi_q,
                                                        Rng& rng) {
  const site::Nerve& base = atlas.base();
  const FiniteGroup& grp = atlas.group();
  // one value per (chart, base component) at the identity slice; the
  // anchored chart value stays the identity so the r family is lawful
  std::vector<std::vector<Idx>> c(base.chart_count());
  for (Idx ch = 0; ch < base.chart_count(); ++ch) {
    std::size_t ci = base.find_simplex({ch});
    const auto& comps = base.simplices(0)[ci].comps;
    c[ch].resize(comps.size());
    for (std::size_t t = 0; t < comps.size(); ++t)
      c[ch][t] = static_cast<Idx>(rng.below(q.size()));
    // anchor component pinned to the identity
    Idx anchor_pt = base.chart_points(ch).front();
    for (std::size_t t = 0; t < comps.size(); ++t)
      if (std::binary_search(comps[t].begin(), comps[t].end(), anchor_pt))
        c[ch][t] = q.identity();
  }
  auto c_of = [&](Idx ch, Idx base_pt, Idx g) {
    std::size_t ci = base.find_simplex({ch});
    const auto& comps = base.simplices(0)[ci].comps;
    for (std::size_t t = 0; t < comps.size(); ++t)
      if (std::binary_search(comps[t].begin(), comps[t].end(), base_pt))
        return phi_q[g][c[ch][t]];
    fail("SchemaError", "point outside chart");
  };
  const auto& pairs = atlas.total().simplices(1);
  std::vector<std::vector<Idx>> out(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    Idx i = pairs[k].charts[0], j = pairs[k].charts[1];
    out[k].resize(pairs[k].points.size());
    for (std::size_t t = 0; t < pairs[k].points.size(); ++t) {
      Idx p = pairs[k].points[t];
      Idx m = atlas.base_of(p), g = atlas.fiber_of(p);
      out[k][t] = q.op(q.inv(c_of(i, m, g)), c_of(j, m, g));
    }
  }
  (void)grp;
  return out;
}

}  // namespace detail

inline Corpus generate(std::uint64_t seed, const Caps& caps = Caps()) {
  Corpus out;
  Rng rng(seed ^ 0xabcdef12345ULL);

  // --- shared documents ---------------------------------------------------
  struct GroupSpec {
    std::string name;
    FiniteGroup g;
  };
  std::vector<GroupSpec> groups{{"z2", algebra::cyclic_group(2)},
                                {"z3", algebra::cyclic_group(3)},
                                {"z4", algebra::cyclic_group(4)},
                                {"z6", algebra::cyclic_group(6)},
                                {"z8", algebra::cyclic_group(8)},
                                {"klein", algebra::klein_four()},
                                {"s3", algebra::symmetric3()},
                                {"d4", algebra::dihedral_group(4)},
                                {"triv", algebra::trivial_group()}};
  for (const auto& gs : groups) out.workspace.put(gs.name, io::group_to_json(gs.g));

  struct NerveSpec {
    std::string name;
    std::shared_ptr<const site::Nerve> n;
  };
  std::vector<NerveSpec> nerves{
      {"simplex2", std::make_shared<site::Nerve>(site::simplex_nerve(2))},
      {"simplex3", std::make_shared<site::Nerve>(site::simplex_nerve(3))},
      {"tetrahedron", std::make_shared<site::Nerve>(site::tetrahedron_nerve())},
      {"circle2", std::make_shared<site::Nerve>(site::circle_nerve(2))},
      {"circle3", std::make_shared<site::Nerve>(site::circle_nerve(3))},
      {"rp2", std::make_shared<site::Nerve>(site::projective_plane_nerve())}};
  for (const auto& ns : nerves) out.workspace.put(ns.name, io::nerve_to_json(*ns.n));

  // --- plain (trivial G) pair crossed modules -----------------------------
  struct FiberSpec {
    std::string group;
    std::vector<std::string> central;
    std::string tag;
  };
  std::vector<FiberSpec> fibers{
      {"z2", {"0", "1"}, "coupling"},         // del trivial: coupling pair
      {"z4", {"0", "2"}, "halved"},           // Z4 over Z2
      {"z4", {"0"}, "plain"},                 // trivial kernel
      {"z4", {"0", "1", "2", "3"}, "full"},   // coupling, trivial vertex
      {"z6", {"0", "3"}, "halved6"},
      {"klein", {"e", "a"}, "kleinhalf"},
      {"s3", {"e"}, "s3plain"},               // nonabelian, trivial kernel
      {"d4", {"r0", "r2"}, "d4center"}};

  for (const auto& ns : nerves) {
    for (const auto& fs : fibers) {
      FiniteGroup h = out.workspace.group(fs.group);
      algebra::Subgroup central = detail::named_subgroup(h, fs.central);
      std::string base_name = "xm_" + ns.name + "_" + fs.group + "_" + fs.tag;
      xmod::XModContext ctx;
      try {
        ctx = xmod::make_context(
            xmod::quotient_pair_xmod(ns.n->point_names(), h, central), ns.n);
      } catch (const Error&) {
        continue;
      }
      io::XModDoc xd{ns.name, fs.group, fs.central};
      out.workspace.put(base_name, io::xmod_doc_to_json(xd));
      bool within = ns.n->chart_count() <= caps.max_charts &&
                    h.size() <= caps.max_fiber &&
                    ns.n->point_count() <= caps.max_points;

      // transition systems: the trivial one and a random coboundary
      std::vector<std::pair<std::string, xmod::TransitionSystem>> systems;
      {
        std::vector<std::vector<Idx>> sv(ctx.nerve->simplices(1).size());
        for (std::size_t k = 0; k < sv.size(); ++k)
          sv[k].assign(ctx.nerve->simplices(1)[k].points.size(),
                       ctx.vertex.group.identity());
        systems.emplace_back("triv", xmod::make_system(ctx, sv));
      }
      {
        // coboundary of a random vertex-valued 0-cochain (per chart comp)
        const site::Nerve& nv = *ctx.nerve;
        std::vector<std::vector<Idx>> c0(nv.chart_count());
        for (Idx ch = 0; ch < nv.chart_count(); ++ch) {
          const auto& comps = nv.simplices(0)[nv.find_simplex({ch})].comps;
          c0[ch].resize(comps.size());
          for (auto& v : c0[ch])
            v = static_cast<Idx>(rng.below(ctx.vertex.group.size()));
        }
        auto c_of = [&](Idx ch, Idx p) {
          const auto& comps = nv.simplices(0)[nv.find_simplex({ch})].comps;
          for (std::size_t t = 0; t < comps.size(); ++t)
            if (std::binary_search(comps[t].begin(), comps[t].end(), p)) return c0[ch][t];
          fail("SchemaError", "point outside chart");
        };
        const auto& pairs = nv.simplices(1);
        std::vector<std::vector<Idx>> sv(pairs.size());
        for (std::size_t k = 0; k < pairs.size(); ++k) {
          Idx i = pairs[k].charts[0], j = pairs[k].charts[1];
          sv[k].resize(pairs[k].points.size());
          for (std::size_t t = 0; t < pairs[k].points.size(); ++t) {
            Idx p = pairs[k].points[t];
            sv[k][t] = ctx.vertex.group.op(ctx.vertex.group.inv(c_of(i, p)), c_of(j, p));
          }
        }
        systems.emplace_back("cob", xmod::make_system(ctx, sv));
      }
      // circle bases: a nontrivial cocycle twist when the vertex admits one
      if (ns.name == "circle2" || ns.name == "circle3" || ns.name == "rp2") {
        std::size_t pair_slots = 0;
        for (const auto& pr : ctx.nerve->simplices(1)) pair_slots += pr.comps.size();
        double search_space = 1;
        for (std::size_t t = 0; t < pair_slots; ++t)
          search_space *= double(ctx.vertex.group.size());
        if (ctx.vertex.group.is_abelian() && ctx.vertex.group.size() > 1 &&
            search_space <= double(1 << 18)) {
          site::CoeffGroup vc(ctx.vertex.group, algebra::full_subgroup(ctx.vertex.group));
          site::CentralCochain pat(ctx.nerve, vc, 1);
          site::CentralCochain zero(ctx.nerve, vc, 1);
          std::vector<std::size_t> at(pat.slots(), 0);
          bool found = false;
          do {
            for (std::size_t sl = 0; sl < pat.slots(); ++sl)
              pat.set_slot(sl, vc.sub.elements[at[sl]]);
            if (site::is_cocycle(pat) && !site::classes_equal(pat, zero).equal) {
              found = true;
              break;
            }
          } while (site::detail::next_odometer(at, vc.sub.elements.size()));
          if (found) {
            const auto& pairs = ctx.nerve->simplices(1);
            std::vector<std::vector<Idx>> sv(pairs.size());
            for (std::size_t k = 0; k < pairs.size(); ++k) {
              sv[k].resize(pairs[k].points.size());
              for (std::size_t t = 0; t < pairs[k].points.size(); ++t)
                sv[k][t] = pat.value(pairs[k].charts, pairs[k].points[t]);
            }
            systems.emplace_back("gen", xmod::make_system(ctx, sv));
          }
        }
      }
      for (auto& [tag, ts] : systems) {
        std::string name = base_name + "_" + tag;
        io::TransitionDoc td;
        td.xmod_ref = base_name;
        const auto& pairs = ctx.nerve->simplices(1);
        for (std::size_t k = 0; k < pairs.size(); ++k) {
          std::string key = ctx.nerve->chart_names()[pairs[k].charts[0]] + "|" +
                            ctx.nerve->chart_names()[pairs[k].charts[1]];
          for (std::size_t t = 0; t < pairs[k].points.size(); ++t)
            td.values[key][ctx.nerve->point_names()[pairs[k].points[t]]] =
                ctx.vertex.group.name(ts.s[k][t]);
        }
        out.workspace.put(name, io::transition_doc_to_json(td));
        out.xmods.push_back({name, ctx, ts, within});
      }
    }
  }

  // --- PBG instances --------------------------------------------------------
  struct ActionSpec {
    std::string group;
    std::string tag;
    // automorphism assignment per structure group element, or empty = trivial
    std::function<std::vector<std::vector<Idx>>(const FiniteGroup&, const FiniteGroup&)> make;
  };
  auto identity_action = [](const FiniteGroup& grp, const FiniteGroup& h) {
    std::vector<std::vector<Idx>> rep(grp.size());
    for (Idx g = 0; g < grp.size(); ++g) {
      rep[g].resize(h.size());
      for (Idx v = 0; v < h.size(); ++v) rep[g][v] = v;
    }
    return rep;
  };
  auto inversion_action = [&](const FiniteGroup& grp, const FiniteGroup& h) {
    // inversion through the sign character G -> Z/2 whose kernel is the
    // subgroup of squares; needs h abelian and |G| even
    std::vector<bool> square(grp.size(), false);
    for (Idx g = 0; g < grp.size(); ++g) square[grp.op(g, g)] = true;
    std::size_t count = 0;
    for (bool b : square) count += b ? 1 : 0;
    auto rep = identity_action(grp, h);
    if (count * 2 != grp.size()) return rep;  // no sign character
    for (Idx g = 0; g < grp.size(); ++g)
      if (!square[g])
        for (Idx v = 0; v < h.size(); ++v) rep[g][v] = h.inv(v);
    return rep;
  };
  std::vector<ActionSpec> actions{{"triv", "plain", identity_action},
                                  {"z2", "id", identity_action},
                                  {"z2", "inv", inversion_action},
                                  {"z3", "id", identity_action},
                                  {"z4", "inv", inversion_action}};
  std::vector<FiberSpec> pbg_fibers{{"z4", {"0", "2"}, "z4half"},
                                    {"z4", {"0", "1", "2", "3"}, "z4full"},
                                    {"z2", {"0", "1"}, "z2full"},
                                    {"z8", {"0", "4"}, "z8half"},
                                    {"z8", {"0", "2", "4", "6"}, "z8quarter"}};
  std::vector<std::string> pbg_bases{"simplex2", "simplex3", "circle2", "tetrahedron"};

  for (const auto& bname : pbg_bases) {
    auto base = std::find_if(nerves.begin(), nerves.end(),
                             [&](const NerveSpec& n) { return n.name == bname; })
                    ->n;
    for (const auto& as : actions) {
      FiniteGroup grp = out.workspace.group(as.group);
      site::PrincipalAtlas atlas(base, grp);
      for (const auto& fs : pbg_fibers) {
        FiniteGroup h = out.workspace.group(fs.group);
        if (!h.is_abelian() && as.tag == "inv") continue;
        algebra::Subgroup central = detail::named_subgroup(h, fs.central);
        auto phihat = as.make(grp, h);
        algebra::QuotientGroup q = algebra::quotient(h, central);
        std::vector<std::vector<Idx>> phi_q(grp.size());
        for (Idx g = 0; g < grp.size(); ++g) {
          phi_q[g].resize(q.group.size());
          for (Idx e = 0; e < q.group.size(); ++e)
            phi_q[g][e] = q.projection[phihat[g][q.coset_representative[e]]];
        }
        for (int pat = 0; pat < 2; ++pat) {
          std::vector<std::vector<Idx>> pattern;
          std::string pat_tag = pat == 0 ? "triv" : "cob";
          if (pat == 0) {
            const auto& pairs = atlas.total().simplices(1);
            pattern.resize(pairs.size());
            for (std::size_t k = 0; k < pairs.size(); ++k)
              pattern[k].assign(pairs[k].points.size(), q.group.identity());
          } else {
            pattern = detail::coboundary_pattern(atlas, q.group, phi_q, rng);
          }
          std::string name =
              "pbg_" + bname + "_" + as.group + as.tag + "_" + fs.tag + "_" + pat_tag;
          pbg::PBGContext ctx;
          try {
            ctx = pbg::quotient_pair_pbgxmod(atlas, h, central, phihat, pattern);
          } catch (const Error&) {
            continue;
          }
          bool within = base->chart_count() <= caps.max_charts &&
                        grp.size() <= caps.max_group && h.size() <= caps.max_fiber &&
                        atlas.total().point_count() <= caps.max_points;
          io::PBGDoc pd;
          pd.nerve_ref = bname;
          pd.group_ref = as.group;
          pd.fiber_ref = fs.group;
          pd.central = fs.central;
          for (Idx g = 0; g < grp.size(); ++g)
            for (Idx v = 0; v < h.size(); ++v)
              if (phihat[g][v] != v) pd.phihat[grp.name(g)][h.name(v)] = h.name(phihat[g][v]);
          const auto& pairs = atlas.total().simplices(1);
          for (std::size_t k = 0; k < pairs.size(); ++k) {
            std::string key = atlas.base().chart_names()[pairs[k].charts[0]] + "|" +
                              atlas.base().chart_names()[pairs[k].charts[1]];
            for (std::size_t t = 0; t < pairs[k].points.size(); ++t)
              if (pattern[k][t] != q.group.identity())
                pd.pattern[key][atlas.total().point_names()[pairs[k].points[t]]] =
                    q.group.name(pattern[k][t]);
          }
          out.workspace.put(name, io::pbg_doc_to_json(pd));
          out.pbgs.push_back({name, std::move(ctx), within});
        }
      }
    }
  }
  // the nonzero-obstruction stratum: projective plane with trivial G
  {
    auto rp2 = std::find_if(nerves.begin(), nerves.end(),
                            [](const NerveSpec& n) { return n.name == "rp2"; })
                   ->n;
    site::PrincipalAtlas atlas(rp2, algebra::trivial_group());
    FiniteGroup z4 = out.workspace.group("z4");
    algebra::Subgroup central = detail::named_subgroup(z4, {"0", "2"});
    algebra::QuotientGroup q = algebra::quotient(z4, central);
    site::CoeffGroup vc(q.group, algebra::full_subgroup(q.group));
    site::CentralCochain pat(atlas.total_ptr(), vc, 1);
    site::CentralCochain zero(atlas.total_ptr(), vc, 1);
    std::vector<std::size_t> at(pat.slots(), 0);
    bool found = false;
    do {
      for (std::size_t sl = 0; sl < pat.slots(); ++sl)
        pat.set_slot(sl, vc.sub.elements[at[sl]]);
      if (site::is_cocycle(pat) && !site::classes_equal(pat, zero).equal) {
        found = true;
        break;
      }
    } while (site::detail::next_odometer(at, vc.sub.elements.size()));
    if (found) {
      const auto& pairs = atlas.total().simplices(1);
      std::vector<std::vector<Idx>> pattern(pairs.size());
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        pattern[k].resize(pairs[k].points.size());
        for (std::size_t t = 0; t < pairs[k].points.size(); ++t)
          pattern[k][t] = pat.value(pairs[k].charts, pairs[k].points[t]);
      }
      auto phihat = identity_action(algebra::trivial_group(), z4);
      pbg::PBGContext ctx =
          pbg::quotient_pair_pbgxmod(atlas, z4, central, phihat, pattern);
      out.pbgs.push_back({"pbg_rp2_obstructed", std::move(ctx), false});
    }
  }

  // --- Lie derivation laws ----------------------------------------------------
  struct AlgSpec {
    std::string name;
    lie::LieAlgebra a;
  };
  std::vector<AlgSpec> ks{{"ab1", lie::abelian(1)},
                          {"ab2", lie::abelian(2)},
                          {"h3", lie::heisenberg3()},
                          {"sl2", lie::sl2()},
                          {"aff2", lie::affine2()}};
  std::vector<AlgSpec> gs{{"ab1", lie::abelian(1)},
                          {"ab2", lie::abelian(2)},
                          {"ab3", lie::abelian(3)},
                          {"sl2", lie::sl2()}};
  for (const auto& alg : ks) out.workspace.put("lie_" + alg.name, io::lie_algebra_to_json(alg.a));
  out.workspace.put("lie_ab3", io::lie_algebra_to_json(lie::abelian(3)));

  auto rand_vec = [&](std::size_t n) {
    lie::Vec v(n);
    for (auto& x : v)
      x = num::Rational(static_cast<std::int64_t>(rng.below(9)) - 4,
                        static_cast<std::int64_t>(rng.below(3)) + 1);
    return v;
  };
  int law_count = 0;
  for (const auto& kspec : ks) {
    lie::DerivationAlgebra dk = lie::derivation_algebra(kspec.a);
    for (const auto& gspec : gs) {
      bool abelian_g = true;
      for (std::size_t i = 0; i < gspec.a.dim() && abelian_g; ++i)
        for (std::size_t j = 0; j < gspec.a.dim(); ++j) {
          lie::Vec b = gspec.a.bracket(gspec.a.unit(i), gspec.a.unit(j));
          for (const auto& x : b)
            if (!x.is_zero()) abelian_g = false;
        }
      std::vector<num::Matrix> xis;
      xis.push_back(num::Matrix(dk.out.dim(), gspec.a.dim()));
      if (abelian_g && dk.out.dim() > 0) {
        for (int d = 0; d < 3; ++d) {
          num::Matrix xi(dk.out.dim(), gspec.a.dim());
          std::size_t dir = rng.below(dk.out.dim());
          for (std::size_t c = 0; c < gspec.a.dim(); ++c)
            xi.at(dir, c) = num::Rational(static_cast<std::int64_t>(rng.below(5)) - 2);
          xis.push_back(xi);
        }
      }
      int variant = 0;
      for (const num::Matrix& xi : xis) {
        lie::Coupling c;
        try {
          c = lie::make_coupling(gspec.a, kspec.a, xi);
        } catch (const Error&) {
          continue;
        }
        for (int off = 0; off < 3; ++off) {
          std::vector<lie::Vec> offsets;
          for (std::size_t i = 0; i < gspec.a.dim(); ++i)
            offsets.push_back(rand_vec(kspec.a.dim()));
          lie::DerivationLaw law = lie::law_with_offsets(c, offsets);
          std::string name = "law_" + kspec.name + "_" + gspec.name + "_" +
                             std::to_string(variant) + "_" + std::to_string(off);
          out.lies.push_back({name, std::move(law)});
          ++law_count;
        }
        // coupling documents for the CLI (first variant only)
        if (variant == 0) {
          io::CouplingDoc cd;
          cd.gbar_ref = "lie_" + gspec.name;
          cd.k_ref = "lie_" + kspec.name;
          cd.xi.resize(xi.rows());
          for (std::size_t r = 0; r < xi.rows(); ++r)
            for (std::size_t cc = 0; cc < xi.cols(); ++cc)
              cd.xi[r].push_back(xi.at(r, cc).str());
          out.workspace.put("cpl_" + kspec.name + "_" + gspec.name,
                            io::coupling_doc_to_json(cd));
        }
        ++variant;
      }
    }
  }
  (void)law_count;
  return out;
}

}  // namespace xmodkit::corpus

#endif  // XMODKIT_CORPUS_HPP_
