// Acceptance suite: every criterion runs exactly (no tolerances) against
// the pinned seed-0 corpus and prints one pass/fail line. Exit status is
// the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

#include "xmodkit/corpus.hpp"
#include "xmodkit/lie/obstruction.hpp"
#include "xmodkit/pbg/fromext.hpp"

using namespace xmodkit;
using algebra::Idx;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, const std::function<bool(std::string&)>& run) {
  std::string detail;
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = run(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("criterion %d [%s]: %s (%.1fs)%s%s\n", number, name.c_str(),
              ok ? "PASS" : "FAIL", secs, detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

corpus::Corpus the_corpus = corpus::generate(0);

// random kernel-valued relift corrections, deterministic
corpus::Rng relift_rng(1234);

}  // namespace

int main() {
  // 1. equivariant obstruction class vanishes iff an operator extension
  //    exists by exhaustive search, over the capped pinned corpus
  criterion(1, "PBG obstruction iff extension", [&](std::string& detail) {
    std::size_t checked = 0, census_checked = 0, nonzero = 0;
    for (const auto& inst : the_corpus.pbgs) {
      if (!inst.within_caps && inst.name != "pbg_rp2_obstructed") continue;
      pbg::EquivariantLift lift = pbg::canonical_lift(inst.ctx);
      bool class_zero = pbg::obstruction_class_zero(inst.ctx, lift);
      if (!class_zero) ++nonzero;
      // exhaustive search over the full lift space when feasible
      try {
        bool exists = !pbg::all_gluable_lifts(inst.ctx, lift, 1 << 16).empty();
        if (exists != class_zero) {
          detail = "disagreement at " + inst.name;
          return false;
        }
        ++census_checked;
      } catch (const Error&) {
        // full census too large; the gauge-reduced search is the verdict
      }
      // the obstruction cochain verifications must all hold
      pbg::EquivariantObstruction obs = pbg::equivariant_obstruction(inst.ctx, lift);
      if (!obs.values_in_kernel || !obs.equivariant || !obs.locally_constant ||
          !obs.delta_zero || !obs.pair_central || !obs.pair_equivariant) {
        detail = "obstruction checks failed at " + inst.name;
        return false;
      }
      if (class_zero) {
        pbg::PBGOperatorExtension o = pbg::operator_extension(inst.ctx, lift);
        if (!pbg::validate_pbg_operator_extension(inst.ctx, o).valid) {
          detail = "extension invalid at " + inst.name;
          return false;
        }
      }
      ++checked;
    }
    detail = std::to_string(checked) + " instances, " + std::to_string(census_checked) +
             " with full census, " + std::to_string(nonzero) + " obstructed";
    return checked >= 50 && nonzero >= 1;
  });

  // 2. section-1 analogue with trivial G, plus 20-relift class invariance
  criterion(2, "plain obstruction iff extension + invariance", [&](std::string& detail) {
    std::size_t checked = 0, nonzero = 0;
    for (const auto& inst : the_corpus.xmods) {
      xmod::LiftingObstruction obs = xmod::lifting_obstruction(inst.ctx, inst.ts);
      if (!obs.values_central || !obs.values_in_kernel || !obs.locally_constant ||
          !obs.is_cocycle || !obs.conventions_agree) {
        detail = "obstruction checks failed at " + inst.name;
        return false;
      }
      site::CentralCochain zero(inst.ctx.nerve, inst.ctx.coeff, 2);
      bool class_zero = site::classes_equal(obs.e, zero).equal;
      bool exists = xmod::opext_exists_by_search(inst.ctx, inst.ts);
      if (class_zero != exists) {
        detail = "disagreement at " + inst.name;
        return false;
      }
      if (!class_zero) ++nonzero;
      // invariance under 20 random re-lifts
      for (int trial = 0; trial < 20; ++trial) {
        site::CentralCochain f(inst.ctx.nerve, inst.ctx.coeff, 1);
        for (std::size_t sl = 0; sl < f.slots(); ++sl)
          f.set_slot(sl, inst.ctx.coeff.sub.elements[relift_rng.below(
                             inst.ctx.coeff.sub.elements.size())]);
        xmod::TransitionSystem other = xmod::relift(inst.ctx, inst.ts, f);
        xmod::LiftingObstruction obs2 = xmod::lifting_obstruction(inst.ctx, other);
        if (!site::classes_equal(obs.e, obs2.e).equal) {
          detail = "relift moved the class at " + inst.name;
          return false;
        }
      }
      ++checked;
    }
    detail = std::to_string(checked) + " systems, " + std::to_string(nonzero) + " obstructed";
    return checked >= 50 && nonzero >= 1;
  });

  // 3. gluing soundness on every corpus transition data
  criterion(3, "gluing soundness", [&](std::string& detail) {
    std::size_t checked = 0;
    for (const auto& inst : the_corpus.pbgs) {
      pbg::PBGGroupoid p = pbg::glue(inst.ctx.td);
      pbg::PBGReport rep = pbg::validate_pbg(p);
      if (!rep.valid) {
        detail = "axioms failed at " + inst.name;
        return false;
      }
      std::size_t points = inst.ctx.td.atlas.total().point_count();
      if (p.g.arrow_count() != points * points * inst.ctx.td.h.size()) {
        detail = "arrow count off at " + inst.name;
        return false;
      }
      ++checked;
    }
    detail = std::to_string(checked) + " glued groupoids";
    return checked > 0;
  });

  // 4. equivalent data give the verified isomorphism; inequivalent pairs
  //    admit no equivariant isomorphism at all (or are excluded by size)
  criterion(4, "equivalence iff isomorphism", [&](std::string& detail) {
    std::size_t equivalent_pairs = 0, inequivalent_pairs = 0, excluded = 0;
    // pair up corpus instances sharing base/action/fiber: triv vs cob
    for (const auto& a : the_corpus.pbgs) {
      if (a.name.size() < 5 || a.name.substr(a.name.size() - 5) != "_triv") continue;
      std::string counterpart = a.name.substr(0, a.name.size() - 5) + "_cob";
      for (const auto& b : the_corpus.pbgs) {
        if (b.name != counterpart) continue;
        if (!(a.ctx.td.atlas == b.ctx.td.atlas)) continue;
        try {
          pbg::DataEquivalence eq = pbg::data_equivalent(a.ctx.td, b.ctx.td);
          if (eq.equivalent) {
            if (!eq.xi_iso) {
              detail = "missing Xi at " + a.name;
              return false;
            }
            ++equivalent_pairs;
          }
        } catch (const Error&) {
          ++excluded;
        }
      }
    }
    // genuinely inequivalent: identity vs inversion action over circle2
    for (const auto& a : the_corpus.pbgs) {
      if (a.name.find("_z2id_") == std::string::npos || !a.within_caps) continue;
      std::string counterpart = a.name;
      counterpart.replace(counterpart.find("_z2id_"), 6, "_z2inv_");
      for (const auto& b : the_corpus.pbgs) {
        if (b.name != counterpart) continue;
        if (!(a.ctx.td.h == b.ctx.td.h)) continue;
        bool same_phi = true;
        for (Idx c = 0; c < a.ctx.td.phi.phi.size() && same_phi; ++c)
          for (Idx g = 0; g < a.ctx.td.atlas.group().size(); ++g)
            if (a.ctx.td.phi.at(c, g) != b.ctx.td.phi.at(c, g)) same_phi = false;
        if (same_phi) continue;  // inversion degenerated to the identity
        try {
          pbg::DataEquivalence eq = pbg::data_equivalent(a.ctx.td, b.ctx.td);
          if (eq.equivalent) continue;  // not an inequivalent pair after all
          auto iso = pbg::pbg_isomorphism_exists(pbg::glue(a.ctx.td), pbg::glue(b.ctx.td));
          if (!iso.has_value()) {
            ++excluded;  // logged size note
            continue;
          }
          if (*iso) {
            detail = "inequivalent data glued isomorphically: " + a.name;
            return false;
          }
          ++inequivalent_pairs;
        } catch (const Error&) {
          ++excluded;
        }
      }
    }
    detail = std::to_string(equivalent_pairs) + " equivalent, " +
             std::to_string(inequivalent_pairs) + " inequivalent confirmed, " +
             std::to_string(excluded) + " size-excluded";
    return equivalent_pairs >= 10 && inequivalent_pairs >= 1;
  });

  // 5. torsor: class count equals |H^1_G| with trivial stabilizers
  criterion(5, "H^1 torsor on operator extensions", [&](std::string& detail) {
    std::size_t checked = 0, nontrivial = 0;
    for (const auto& inst : the_corpus.pbgs) {
      if (!inst.within_caps) continue;
      // keep the census small: kernel of order <= 2 and few slots
      if (inst.ctx.del_kernel.size() > 2) continue;
      auto slots = pbg::correction_slots(inst.ctx);
      double space = 1;
      for (std::size_t t = 0; t < slots.size(); ++t)
        space *= double(inst.ctx.del_kernel.size());
      if (space > 4096) continue;
      pbg::EquivariantLift lift = pbg::canonical_lift(inst.ctx);
      if (!pbg::obstruction_class_zero(inst.ctx, lift)) continue;
      pbg::TorsorCensus census = pbg::torsor_census(inst.ctx, lift);
      if (census.coboundary_twists == 0 ||
          census.cocycle_twists % census.coboundary_twists != 0) {
        detail = "twist counts inconsistent at " + inst.name;
        return false;
      }
      std::size_t h1 = census.cocycle_twists / census.coboundary_twists;
      if (h1 > 4) continue;
      if (census.classes != h1) {
        detail = "class count " + std::to_string(census.classes) + " != |H1| " +
                 std::to_string(h1) + " at " + inst.name;
        return false;
      }
      if (h1 > 1) ++nontrivial;
      ++checked;
    }
    detail = std::to_string(checked) + " zero-obstruction instances, " +
             std::to_string(nontrivial) + " with |H1| > 1";
    return checked >= 5 && nontrivial >= 1;
  });

  // 6. the Cech engine, enumeration against rank counting
  criterion(6, "Cech engine frozen values", [&](std::string& detail) {
    auto tetra = std::make_shared<site::Nerve>(site::tetrahedron_nerve());
    auto tri = std::make_shared<site::Nerve>(site::simplex_nerve(3));
    site::CoeffGroup z2 = site::CoeffGroup::whole(algebra::cyclic_group(2));
    std::uint64_t a1 = site::h_group_order_enumerated(tetra, z2, 2);
    std::uint64_t a2 = site::h_group_order_smith(*tetra, z2, 2);
    std::uint64_t b1 = site::h_group_order_enumerated(tri, z2, 2);
    std::uint64_t b2 = site::h_group_order_smith(*tri, z2, 2);
    detail = "tetrahedron |H2| = " + std::to_string(a1) + "/" + std::to_string(a2) +
             ", triangle |H2| = " + std::to_string(b1) + "/" + std::to_string(b2);
    return a1 == 2 && a2 == 2 && b1 == 1 && b2 == 1;
  });

  // 7. the Lie layer: construction principle, obstruction identities, and
  //    agreement with the extension-existence linear solve
  criterion(7, "Lie construction and obstruction", [&](std::string& detail) {
    std::size_t laws = 0, jacobi_ok = 0, agreements = 0;
    corpus::Rng rng(77);
    for (const auto& inst : the_corpus.lies) {
      ++laws;
      lie::CouplingConstruction cc = lie::construct_from_coupling(inst.law);
      // the constructor has verified Jacobi on all basis triples
      lie::LieXModReport xr = lie::validate_liexmod(cc.xmod);
      if (!xr.valid || !lie::induced_coupling_matches(cc, inst.law.coupling)) {
        detail = "construction failed at " + inst.name;
        return false;
      }
      ++jacobi_ok;
      lie::ObstructionResult obs = lie::coupling_obstruction(inst.law);
      if (!obs.zk_valued || !obs.closed) {
        detail = "obstruction identities failed at " + inst.name;
        return false;
      }
      bool zero = lie::obstruction_class_zero(obs);
      bool exists = lie::extension_exists(inst.law).exists;
      if (zero != exists) {
        detail = "disagreement at " + inst.name;
        return false;
      }
      ++agreements;
    }
    // 20 lift re-choices per coupling: vary both nabla and Lambda
    std::size_t invariances = 0;
    for (std::size_t i = 0; i < the_corpus.lies.size(); i += 7) {
      const auto& inst = the_corpus.lies[i];
      lie::ObstructionResult base = lie::coupling_obstruction(inst.law);
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<lie::Vec> offs;
        for (std::size_t t = 0; t < inst.law.coupling.gbar.dim(); ++t) {
          lie::Vec v(inst.law.coupling.k.dim());
          for (auto& x : v)
            x = num::Rational(static_cast<std::int64_t>(rng.below(7)) - 3,
                              static_cast<std::int64_t>(rng.below(2)) + 1);
          offs.push_back(v);
        }
        lie::DerivationLaw other = lie::law_with_offsets(inst.law.coupling, offs);
        lie::ObstructionResult obs2 = lie::coupling_obstruction(other);
        if (!lie::obstruction_classes_equal(base, obs2)) {
          detail = "class moved under relift at " + inst.name;
          return false;
        }
      }
      ++invariances;
    }
    detail = std::to_string(laws) + " laws, " + std::to_string(agreements) +
             " solver agreements, " + std::to_string(invariances) +
             " couplings relifted 20x";
    return laws >= 100 && jacobi_ok == laws && agreements == laws;
  });

  // 8. Chevalley-Eilenberg sanity dimensions
  criterion(8, "CE dimensions", [&](std::string& detail) {
    lie::LieModule sl2m = lie::LieModule::trivial(lie::sl2(), 1);
    lie::LieModule abm = lie::LieModule::trivial(lie::abelian(2), 1);
    std::size_t h1 = lie::ce_cohomology_dim(sl2m, 1);
    std::size_t h2 = lie::ce_cohomology_dim(sl2m, 2);
    std::size_t h3 = lie::ce_cohomology_dim(sl2m, 3);
    std::size_t ab2 = lie::ce_cohomology_dim(abm, 2);
    detail = "sl2: " + std::to_string(h1) + "," + std::to_string(h2) + "," +
             std::to_string(h3) + "; abelian2 H2 = " + std::to_string(ab2);
    return h1 == 0 && h2 == 0 && h3 == 1 && ab2 == 1;
  });

  // 9. round trips: extension -> PBG -> quotient, and glue -> extract -> glue
  criterion(9, "round-trip correspondences", [&](std::string& detail) {
    // extensions built over small bases from the corpus fiber pool
    std::size_t ext_trips = 0;
    for (const auto& spec :
         std::vector<std::pair<std::string, std::size_t>>{{"z4", 2}, {"z2", 2}, {"s3", 2},
                                                          {"z4", 3}, {"klein", 2}}) {
      algebra::FiniteGroup h = the_corpus.workspace.group(spec.first);
      std::vector<std::string> pts;
      for (std::size_t i = 0; i < spec.second; ++i) pts.push_back("m" + std::to_string(i));
      gpd::FiniteGroupoid total = gpd::trivialized_groupoid(pts, h);
      std::vector<gpd::VertexGroup> vs;
      for (Idx o = 0; o < total.object_count(); ++o)
        vs.push_back(gpd::vertex_group(total, o));
      // quotient by a central subbundle: the center itself
      gpd::IsotropySubbundle nb;
      nb.arrows.resize(total.object_count());
      algebra::CenterSubgroup z = algebra::center(h);
      for (Idx o = 0; o < total.object_count(); ++o) {
        for (Idx e : z.sub.elements) {
          std::string nm = gpd::triv_arrow_name(total.objects()[o], h.name(e),
                                                total.objects()[o]);
          nb.arrows[o].push_back(total.arrow_index(nm));
        }
        std::sort(nb.arrows[o].begin(), nb.arrows[o].end());
      }
      gpd::GroupoidQuotient q = gpd::quotient_by_normal_subbundle(total, nb);
      gpd::GroupoidExtension ext;
      ext.total = total;
      ext.quotient = q.quotient;
      // kernel bundle: the center as a group
      algebra::FiniteGroup zk = [&] {
        std::vector<std::string> names;
        for (Idx e : z.sub.elements) names.push_back(h.name(e));
        std::vector<std::vector<std::string>> table(names.size(),
                                                    std::vector<std::string>(names.size()));
        for (std::size_t i2 = 0; i2 < names.size(); ++i2)
          for (std::size_t j2 = 0; j2 < names.size(); ++j2)
            table[i2][j2] = h.name(h.op(z.sub.elements[i2], z.sub.elements[j2]));
        return algebra::FiniteGroup(names, table, h.name(h.identity()));
      }();
      ext.kernel = gpd::GroupBundle(total.object_count(), zk);
      ext.iota.resize(total.object_count());
      for (Idx o = 0; o < total.object_count(); ++o) {
        ext.iota[o].resize(zk.size());
        for (Idx e = 0; e < zk.size(); ++e) {
          std::string nm = gpd::triv_arrow_name(total.objects()[o], zk.name(e),
                                                total.objects()[o]);
          ext.iota[o][e] = total.arrow_index(nm);
        }
      }
      ext.pi.object_map = q.object_class;
      ext.pi.arrow_map = q.arrow_class;
      if (!gpd::validate_extension(ext).valid) {
        detail = "corpus extension invalid for " + spec.first;
        return false;
      }
      pbg::PBGFromExtension pf = pbg::pbg_from_groupoid_extension(ext);
      if (!pbg::validate_pbg(pf.upsilon).valid) {
        detail = "upsilon invalid for " + spec.first;
        return false;
      }
      gpd::GroupoidQuotient back = pbg::quotient_by_structure_group(pf.upsilon);
      gpd::GroupoidMorData iso = pbg::roundtrip_isomorphism(ext, pf, back);
      gpd::GroupoidMor mor{&back.quotient, &ext.total, iso.object_map, iso.arrow_map};
      if (!gpd::is_isomorphism(mor)) {
        detail = "round trip failed for " + spec.first;
        return false;
      }
      ++ext_trips;
    }
    // glue -> extract -> equivalence (hence isomorphism via Xi)
    std::size_t glue_trips = 0;
    for (const auto& inst : the_corpus.pbgs) {
      if (!inst.within_caps) continue;
      if (inst.ctx.td.atlas.total().point_count() > 6) continue;
      if (inst.ctx.td.h.size() > 4) continue;
      pbg::PBGGroupoid p = pbg::glue(inst.ctx.td);
      pbg::SectionFamily fam = pbg::canonical_sections(p, inst.ctx.td);
      pbg::TransitionData td2 = pbg::extract_transition_data(p, fam);
      // relabel the extracted vertex-group values back to the model
      pbg::TransitionData td2m = td2;
      td2m.h = inst.ctx.td.h;
      for (std::size_t k = 0; k < td2m.s.size(); ++k)
        for (std::size_t t = 0; t < td2m.s[k].size(); ++t) {
          const std::string& nm = td2.h.name(td2.s[k][t]);
          std::size_t l = nm.find('|'), r = nm.rfind('|');
          td2m.s[k][t] = inst.ctx.td.h.index(nm.substr(l + 1, r - l - 1));
        }
      td2m.phi.phi.resize(td2.phi.phi.size());
      for (std::size_t c = 0; c < td2.phi.phi.size(); ++c) {
        td2m.phi.phi[c].resize(td2.phi.phi[c].size());
        for (std::size_t g = 0; g < td2.phi.phi[c].size(); ++g) {
          td2m.phi.phi[c][g].resize(inst.ctx.td.h.size());
          for (Idx v = 0; v < inst.ctx.td.h.size(); ++v) {
            // conjugate the permutation through the vertex relabeling
            const std::string vn = gpd::triv_arrow_name(
                p.atlas.total().point_names()[p.atlas.basepoint()], inst.ctx.td.h.name(v),
                p.atlas.total().point_names()[p.atlas.basepoint()]);
            Idx img = td2.phi.phi[c][g][td2.h.index(vn)];
            const std::string& inm = td2.h.name(img);
            std::size_t l = inm.find('|'), r = inm.rfind('|');
            td2m.phi.phi[c][g][v] = inst.ctx.td.h.index(inm.substr(l + 1, r - l - 1));
          }
        }
      }
      pbg::validate_transition_data(td2m);
      pbg::DataEquivalence eq = pbg::data_equivalent(inst.ctx.td, td2m);
      if (!eq.equivalent || !eq.xi_iso) {
        detail = "glue/extract trip failed at " + inst.name;
        return false;
      }
      ++glue_trips;
      if (glue_trips >= 12) break;  // runtime budget; instances are uniform
    }
    detail = std::to_string(ext_trips) + " extension trips, " + std::to_string(glue_trips) +
             " glue/extract trips";
    return ext_trips >= 5 && glue_trips >= 10;
  });

  std::printf("%d criteria failed\n", failures);
  return failures;
}
