#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "xmodkit/corpus.hpp"
#include "xmodkit/io/report.hpp"
#include "xmodkit/io/workspace.hpp"

using namespace xmodkit;
using io::json;

TEST_CASE("documents round-trip to equal values") {
  // groups
  for (const auto& g : {algebra::cyclic_group(4), algebra::symmetric3(),
                        algebra::dihedral_group(4)}) {
    json j = io::group_to_json(g);
    CHECK(io::group_from_json(j) == g);
    CHECK(io::group_to_json(io::group_from_json(j)) == j);
  }
  // nerves (structure compared through re-serialization)
  for (const auto& n : {site::tetrahedron_nerve(), site::circle_nerve(2),
                        site::projective_plane_nerve()}) {
    json j = io::nerve_to_json(n);
    CHECK(io::nerve_to_json(io::nerve_from_json(j)) == j);
  }
  // Lie algebras
  for (const auto& a : {lie::sl2(), lie::heisenberg3(), lie::gl2()}) {
    json j = io::lie_algebra_to_json(a);
    CHECK(io::lie_algebra_from_json(j) == a);
  }
}

TEST_CASE("builtin shorthands load") {
  json j{{"type", "group"}, {"builtin", "cyclic"}, {"n", 6}};
  CHECK(io::group_from_json(j).size() == 6);
  json nj{{"type", "nerve"}, {"builtin", "tetrahedron"}};
  CHECK(io::nerve_from_json(nj).chart_count() == 4);
  json lj{{"type", "lie_algebra"}, {"builtin", "sl2"}};
  CHECK(io::lie_algebra_from_json(lj).dim() == 3);
}

TEST_CASE("schema errors carry locations") {
  json j{{"type", "group"}, {"elements", json::array({"a"})}};
  CHECK_THROWS_AS(io::group_from_json(j), Error);
  json bad{{"type", "wrong"}};
  CHECK_THROWS_AS(io::group_from_json(bad), Error);
}

TEST_CASE("workspace save, load, resolve") {
  corpus::Corpus c = corpus::generate(7);
  std::string dir = "io_test_ws";
  c.workspace.save(dir);
  io::Workspace ws = io::Workspace::load(dir);
  CHECK(ws.all().size() == c.workspace.all().size());
  for (const auto& [name, doc] : c.workspace.all()) CHECK(ws.doc(name) == doc);
  CHECK_THROWS_AS(ws.doc("missing-thing"), Error);

  // resolution through references
  xmod::XModContext ctx = ws.xmod_context("xm_tetrahedron_z4_halved");
  CHECK(ctx.h.size() == 4);
  xmod::TransitionSystem ts = ws.transition_system(ctx, "xm_tetrahedron_z4_halved_triv");
  CHECK(xmod::lifts_are_cocycle(ctx, ts));
  std::filesystem::remove_all(dir);
}

TEST_CASE("corpus is deterministic in its documents") {
  corpus::Corpus a = corpus::generate(3);
  corpus::Corpus b = corpus::generate(3);
  REQUIRE(a.workspace.all().size() == b.workspace.all().size());
  for (const auto& [name, doc] : a.workspace.all()) {
    CHECK(b.workspace.has(name));
    CHECK(b.workspace.doc(name) == doc);
    CHECK(io::content_hash(b.workspace.doc(name)) == io::content_hash(doc));
  }
  corpus::Corpus other = corpus::generate(4);
  bool all_equal = other.workspace.all().size() == a.workspace.all().size();
  if (all_equal)
    for (const auto& [name, doc] : a.workspace.all())
      if (!other.workspace.has(name) || other.workspace.doc(name) != doc) all_equal = false;
  CHECK_FALSE(all_equal);  // different seed shifts the random strata
}

TEST_CASE("corpus stratification") {
  corpus::Corpus c = corpus::generate(0);
  // strata present: trivial-kernel, coupling, pair, zero and nonzero classes
  bool trivial_kernel = false, coupling = false;
  for (const auto& inst : c.xmods) {
    xmod::XModReport r = xmod::validate_xmod(inst.ctx.x);
    REQUIRE(r.valid);
    REQUIRE(r.pair);
    if (r.coupling) coupling = true;
    bool tk = true;
    for (const auto& k : r.kernel)
      if (k.size() != 1) tk = false;
    if (tk) trivial_kernel = true;
  }
  CHECK(trivial_kernel);
  CHECK(coupling);
  bool nonzero = false;
  for (const auto& inst : c.pbgs)
    if (inst.name == "pbg_rp2_obstructed") nonzero = true;
  CHECK(nonzero);
  // caps-conformant PBG instances are plentiful
  std::size_t within = 0;
  for (const auto& inst : c.pbgs)
    if (inst.within_caps) ++within;
  CHECK(within >= 50);
  CHECK(c.lies.size() >= 100);
}

TEST_CASE("reports are deterministic and render consistently") {
  io::Report r;
  r.verb = "demo";
  json j{{"type", "group"}, {"builtin", "cyclic"}, {"n", 2}};
  r.input("g", j);
  r.verdict("check", true, "fine");
  r.work["steps"] = 3;
  io::Report r2 = r;
  CHECK(r.to_json() == r2.to_json());
  CHECK(r.to_json().dump() == r2.to_json().dump());
  CHECK(r.to_text() == r2.to_text());
  // verdicts agree between renderings
  CHECK(r.to_text().find("pass  check") != std::string::npos);
  CHECK(r.to_json()["verdicts"][0]["pass"] == true);
  CHECK(r.all_pass());
  r.verdict("bad", false);
  CHECK_FALSE(r.all_pass());
}
