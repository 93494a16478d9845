#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "helpers.hpp"
#include "xmodkit/site/atlas.hpp"
#include "xmodkit/site/cochain.hpp"
#include "xmodkit/site/nerve.hpp"

using namespace xmodkit;
using namespace xmodkit::site;
using algebra::cyclic_group;
using algebra::klein_four;
using algebra::Idx;

namespace {

std::shared_ptr<const Nerve> tetra() {
  return std::make_shared<Nerve>(tetrahedron_nerve());
}

CoeffGroup z2() { return CoeffGroup::whole(cyclic_group(2)); }

}  // namespace

TEST_CASE("nerve derives overlaps and faces") {
  auto n = tetra();
  CHECK(n->chart_count() == 4);
  CHECK(n->simplices(1).size() == 6);
  CHECK(n->simplices(2).size() == 4);
  CHECK(n->simplices(3).empty());  // quadruple intersection empty

  Nerve tri = simplex_nerve(3);
  CHECK(tri.simplices(1).size() == 3);
  CHECK(tri.simplices(2).size() == 1);
}

TEST_CASE("component markings split overlaps and refine triples") {
  Nerve circ = circle_nerve(2);
  std::size_t si = circ.find_simplex({0, 1});
  REQUIRE(si != Nerve::npos);
  CHECK(circ.simplices(1)[si].comps.size() == 2);

  // chart self-partition refines pair components
  std::map<std::string, std::vector<std::string>> charts{
      {"A", {"p", "q"}}, {"B", {"p", "q"}}};
  std::map<std::pair<std::string, std::string>, std::vector<std::vector<std::string>>> marks{
      {{"A", "A"}, {{"p"}, {"q"}}}};
  Nerve n({"p", "q"}, charts, marks);
  CHECK(n.simplices(0)[0].comps.size() == 2);
  CHECK(n.simplices(1)[0].comps.size() == 2);
}

TEST_CASE("coboundary unfolds the definition on a triangle") {
  auto tri = std::make_shared<Nerve>(simplex_nerve(3));
  CoeffGroup z4 = CoeffGroup::whole(cyclic_group(4));
  CentralCochain r(tri, z4, 1);
  auto g = [&](const char* name) { return z4.ambient.index(name); };
  r.set_value({0, 1}, 0, g("1"));
  r.set_value({0, 2}, 0, g("3"));
  r.set_value({1, 2}, 0, g("2"));
  CentralCochain d = coboundary(r);
  // delta(r)_{012} = r_12 - r_02 + r_01 = 2 - 3 + 1 = 0
  CHECK(d.value({0, 1, 2}, 0) == g("0"));
}

TEST_CASE("delta after delta is zero on random cochains") {
  testutil::Rng rng(7);
  for (auto nerve : {tetra(), std::make_shared<const Nerve>(projective_plane_nerve()),
                     std::make_shared<const Nerve>(circle_nerve(3))}) {
    for (int trial = 0; trial < 100; ++trial) {
      auto c = testutil::random_cochain(nerve, z2(), 0, rng);
      CHECK(coboundary(coboundary(c)).is_identity());
      auto c1 = testutil::random_cochain(nerve, CoeffGroup::whole(cyclic_group(4)), 1, rng);
      CHECK(coboundary(coboundary(c1)).is_identity());
    }
  }
}

TEST_CASE("tetrahedron cohomology orders, both routes") {
  auto n = tetra();
  CHECK(h_group_order_enumerated(n, z2(), 2) == 2);
  CHECK(h_group_order_smith(*n, z2(), 2) == 2);
  CHECK(h_group_order_enumerated(n, z2(), 1) == 1);
  CHECK(h_group_order_smith(*n, z2(), 1) == 1);

  // image of delta^1 over Z/2 has size 2^3
  CentralCochain r(n, z2(), 1);
  std::set<std::vector<Idx>> images;
  std::vector<std::size_t> at(r.slots(), 0);
  do {
    for (std::size_t i = 0; i < at.size(); ++i) r.set_slot(i, z2().sub.elements[at[i]]);
    CentralCochain d = coboundary(r);
    std::vector<Idx> key;
    for (std::size_t s = 0; s < d.slots(); ++s) key.push_back(d.slot_value(s));
    images.insert(key);
  } while (site::detail::next_odometer(at, 2));
  CHECK(images.size() == 8);

  // larger coefficients agree across routes
  CoeffGroup z4 = CoeffGroup::whole(cyclic_group(4));
  CHECK(h_group_order_enumerated(n, z4, 2) == h_group_order_smith(*n, z4, 2));
  CoeffGroup v4 = CoeffGroup::whole(klein_four());
  CHECK(h_group_order_enumerated(n, v4, 2) == h_group_order_smith(*n, v4, 2));
  CHECK(h_group_order_smith(*n, v4, 2) == 4);
}

TEST_CASE("triangle nerve has trivial H^2; single chart trivial everywhere") {
  auto tri = std::make_shared<Nerve>(simplex_nerve(3));
  CHECK(h_group_order_enumerated(tri, z2(), 2) == 1);
  CHECK(h_group_order_smith(*tri, z2(), 2) == 1);

  auto single = std::make_shared<Nerve>(simplex_nerve(1));
  for (std::size_t d = 1; d <= 3; ++d) CHECK(h_group_order(single, z2(), d) == 1);
}

TEST_CASE("circle and projective plane cohomology") {
  auto circ2 = std::make_shared<Nerve>(circle_nerve(2));
  CHECK(h_group_order_enumerated(circ2, z2(), 1) == 2);
  CHECK(h_group_order_smith(*circ2, z2(), 1) == 2);
  auto circ3 = std::make_shared<Nerve>(circle_nerve(3));
  CHECK(h_group_order_smith(*circ3, z2(), 1) == 2);
  CHECK(h_group_order_smith(*circ3, z2(), 2) == 1);

  auto rp2 = std::make_shared<Nerve>(projective_plane_nerve());
  CHECK(h_group_order_smith(*rp2, z2(), 1) == 2);
  CHECK(h_group_order_smith(*rp2, z2(), 2) == 2);
  CHECK(h_group_order_enumerated(rp2, z2(), 2) == 2);
  // the integral pattern behind the Bockstein: H^2(RP^2, Z/4) = Z/2
  CHECK(h_group_order_smith(*rp2, CoeffGroup::whole(cyclic_group(4)), 2) == 2);
}

TEST_CASE("classes_equal: generator vs zero and coboundary shifts") {
  auto n = tetra();
  CentralCochain zero(n, z2(), 2);
  CentralCochain gen = zero;
  gen.set_value({0, 1, 2}, gen.nerve().point_index("p012"), z2().ambient.index("1"));
  REQUIRE(is_cocycle(gen));

  CHECK(classes_equal(zero, zero).equal);
  CHECK_FALSE(classes_equal(gen, zero).equal);
  CHECK_FALSE(classes_equal(gen, zero, /*force_enumeration=*/true).equal);

  testutil::Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    CentralCochain r = testutil::random_cochain(n, z2(), 1, rng);
    CentralCochain shifted = gen * coboundary(r);
    ClassDecision d = classes_equal(gen, shifted);
    CHECK(d.equal);
    REQUIRE(d.witness.has_value());
    CHECK(coboundary(*d.witness) == gen * shifted.inverse());
  }
}

TEST_CASE("coboundary witness routes agree; non-cocycles rejected") {
  auto rp2 = std::make_shared<Nerve>(projective_plane_nerve());
  testutil::Rng rng(99);
  CoeffGroup cg = z2();
  for (int trial = 0; trial < 5; ++trial) {
    CentralCochain r = testutil::random_cochain(rp2, cg, 1, rng);
    CentralCochain a = coboundary(r);
    CentralCochain zero(rp2, cg, 2);
    CHECK(find_coboundary_witness_smith(a).has_value());
    CHECK(find_coboundary_witness_enumerated(a).has_value());
    CHECK(classes_equal(a, zero).equal);
  }
  CentralCochain bad(rp2, cg, 2);
  bad.set_value({0, 1, 2}, bad.nerve().point_index("f0"), cg.ambient.index("1"));
  if (!is_cocycle(bad)) CHECK_THROWS_AS(classes_equal(bad, bad), xmodkit::Error);
}

TEST_CASE("classes_equal is an equivalence on sampled cocycles") {
  auto n = tetra();
  testutil::Rng rng(5);
  std::vector<CentralCochain> sample;
  CentralCochain zero(n, z2(), 2);
  CentralCochain gen = zero;
  gen.set_value({0, 1, 2}, gen.nerve().point_index("p012"), z2().ambient.index("1"));
  for (int i = 0; i < 4; ++i) {
    CentralCochain r = testutil::random_cochain(n, z2(), 1, rng);
    sample.push_back((i % 2 ? gen : zero) * coboundary(r));
  }
  for (const auto& a : sample) CHECK(classes_equal(a, a).equal);
  for (const auto& a : sample)
    for (const auto& b : sample) CHECK(classes_equal(a, b).equal == classes_equal(b, a).equal);
  for (const auto& a : sample)
    for (const auto& b : sample)
      for (const auto& c : sample)
        if (classes_equal(a, b).equal && classes_equal(b, c).equal)
          CHECK(classes_equal(a, c).equal);
}

TEST_CASE("principal atlas: product points, free action, components") {
  auto base = std::make_shared<Nerve>(circle_nerve(2));
  PrincipalAtlas atlas(base, cyclic_group(2));
  CHECK(atlas.total().point_count() == base->point_count() * 2);
  CHECK(atlas.total().chart_count() == base->chart_count());

  const auto& g = atlas.group();
  for (Idx p = 0; p < atlas.total().point_count(); ++p) {
    CHECK(atlas.act(p, g.identity()) == p);
    for (Idx x = 0; x < g.size(); ++x)
      if (x != g.identity()) CHECK(atlas.act(p, x) != p);  // free
    CHECK(atlas.act(atlas.orbit_rep(p), atlas.rep_translation(p)) == p);
  }

  // P_01 has (2 base components) x |G| = 4 components
  std::size_t si = atlas.total().find_simplex({0, 1});
  REQUIRE(si != Nerve::npos);
  CHECK(atlas.total().simplices(1)[si].comps.size() == 4);

  CHECK(atlas.basepoint() == atlas.chart_basepoint(0));
  CHECK(atlas.fiber_of(atlas.pair_anchor(0, 1)) == g.identity());
}
