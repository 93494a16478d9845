#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "xmodkit/gpd/bundle.hpp"
#include "xmodkit/gpd/ext.hpp"
#include "xmodkit/gpd/groupoid.hpp"

using namespace xmodkit;
using namespace xmodkit::gpd;
using algebra::cyclic_group;
using algebra::symmetric3;
using algebra::Idx;

namespace {

// disjoint union of two pair groupoids, built by hand
FiniteGroupoid two_islands() {
  std::vector<std::string> objects{"l.x", "l.y", "r.x", "r.y"};
  std::vector<Arrow> arrows;
  FiniteGroupoid probe = FiniteGroupoid::from_parts(objects, {});
  for (const char* side : {"l", "r"})
    for (const char* t : {".x", ".y"})
      for (const char* s : {".x", ".y"}) {
        std::string sn = std::string(side) + s, tn = std::string(side) + t;
        arrows.push_back({pair_arrow_name(tn, sn), probe.object_index(sn),
                          probe.object_index(tn)});
      }
  FiniteGroupoid h = FiniteGroupoid::from_parts(objects, arrows);
  for (const char* side : {"l", "r"}) {
    for (const char* t : {".x", ".y"})
      for (const char* m : {".x", ".y"})
        for (const char* s : {".x", ".y"}) {
          std::string sn = std::string(side) + s, mn = std::string(side) + m,
                      tn = std::string(side) + t;
          h.set_compose(h.arrow_index(pair_arrow_name(tn, mn)),
                        h.arrow_index(pair_arrow_name(mn, sn)),
                        h.arrow_index(pair_arrow_name(tn, sn)));
        }
    for (const char* t : {".x", ".y"}) {
      std::string tn = std::string(side) + t;
      h.set_unit(h.object_index(tn), h.arrow_index(pair_arrow_name(tn, tn)));
    }
    for (const char* t : {".x", ".y"})
      for (const char* s : {".x", ".y"}) {
        std::string sn = std::string(side) + s, tn = std::string(side) + t;
        h.set_inverse(h.arrow_index(pair_arrow_name(tn, sn)),
                      h.arrow_index(pair_arrow_name(sn, tn)));
      }
  }
  return h;
}

}  // namespace

TEST_CASE("pair groupoid over three points") {
  FiniteGroupoid g = pair_groupoid({"x", "y", "z"});
  GroupoidReport r = validate_groupoid(g);
  CHECK(r.valid);
  CHECK(r.transitive);
  for (const auto& iso : r.isotropy) CHECK(iso.size() == 1);  // trivial vertex groups
  CHECK(g.arrow_count() == 9);
}

TEST_CASE("disjoint union of pair groupoids is valid but not transitive") {
  FiniteGroupoid u = two_islands();
  GroupoidReport r = validate_groupoid(u);
  CHECK(r.valid);
  CHECK_FALSE(r.transitive);
}

TEST_CASE("trivialized groupoid with S3 vertex") {
  FiniteGroupoid g = trivialized_groupoid({"p", "q"}, symmetric3());
  GroupoidReport r = validate_groupoid(g);
  CHECK(r.valid);
  CHECK(r.transitive);
  CHECK(g.arrow_count() == 2 * 2 * 6);  // |P|^2 |H|
  VertexGroup v = vertex_group(g, g.object_index("p"));
  CHECK(v.group.size() == 6);
  CHECK_FALSE(v.group.is_abelian());
}

TEST_CASE("broken composition is reported") {
  FiniteGroupoid g = pair_groupoid({"x", "y"});
  Idx a = g.arrow_index(pair_arrow_name("x", "y"));
  Idx b = g.arrow_index(pair_arrow_name("y", "x"));
  g.set_compose(a, b, a);  // should be (x<-x)
  GroupoidReport r = validate_groupoid(g);
  CHECK_FALSE(r.valid);
  CHECK_FALSE(r.violations.empty());
}

TEST_CASE("representations: trivial, conjugation, corrupted") {
  FiniteGroupoid g = trivialized_groupoid({"p", "q"}, cyclic_group(4));
  {
    GroupBundle f(g.object_count(), algebra::trivial_group());
    BundleAction rho;
    rho.per_arrow.assign(g.arrow_count(), {0});
    RepresentationReport r = validate_representation(g, f, rho);
    CHECK(r.valid);
  }
  {
    std::vector<VertexGroup> vs;
    for (Idx x = 0; x < g.object_count(); ++x) vs.push_back(vertex_group(g, x));
    std::vector<algebra::FiniteGroup> fibers;
    for (const auto& v : vs) fibers.push_back(v.group);
    GroupBundle f(std::move(fibers));
    BundleAction rho = conjugation_action(g, vs);
    RepresentationReport r = validate_representation(g, f, rho);
    CHECK(r.valid);

    BundleAction bad = rho;
    std::swap(bad.per_arrow[0][0], bad.per_arrow[0][1]);
    RepresentationReport rb = validate_representation(g, f, bad);
    CHECK_FALSE(rb.valid);
    bool witnessed = false;
    for (const auto& c : rb.conditions)
      if (!c.ok && !c.witness.empty()) witnessed = true;
    CHECK(witnessed);
  }
}

TEST_CASE("quotient by normal subbundle: full, trivial, Z4 to Z2") {
  FiniteGroupoid g = trivialized_groupoid({"p", "q"}, cyclic_group(4));
  std::vector<VertexGroup> vs;
  for (Idx x = 0; x < g.object_count(); ++x) vs.push_back(vertex_group(g, x));

  // N = IOmega: quotient is the pair groupoid
  {
    IsotropySubbundle n;
    n.arrows.resize(g.object_count());
    for (Idx x = 0; x < g.object_count(); ++x) {
      n.arrows[x] = g.arrows_between(x, x);
      std::sort(n.arrows[x].begin(), n.arrows[x].end());
    }
    GroupoidQuotient q = quotient_by_normal_subbundle(g, n);
    CHECK(validate_groupoid(q.quotient).valid);
    CHECK(q.quotient.arrow_count() == 4);
    for (Idx x = 0; x < q.quotient.object_count(); ++x)
      CHECK(q.quotient.arrows_between(x, x).size() == 1);
  }
  // N trivial: isomorphic copy
  {
    IsotropySubbundle n;
    n.arrows.resize(g.object_count());
    for (Idx x = 0; x < g.object_count(); ++x) n.arrows[x] = {g.unit(x)};
    GroupoidQuotient q = quotient_by_normal_subbundle(g, n);
    CHECK(q.quotient.arrow_count() == g.arrow_count());
    CHECK(validate_groupoid(q.quotient).valid);
  }
  // N fiberwise {0, 2}: quotient vertex group Z2, kernel recovered
  {
    IsotropySubbundle n;
    n.arrows.resize(g.object_count());
    for (Idx x = 0; x < g.object_count(); ++x) {
      for (Idx e = 0; e < vs[x].group.size(); ++e)
        if (vs[x].group.element_order(e) <= 2) n.arrows[x].push_back(vs[x].arrow_of[e]);
      std::sort(n.arrows[x].begin(), n.arrows[x].end());
    }
    GroupoidQuotient q = quotient_by_normal_subbundle(g, n);
    CHECK(validate_groupoid(q.quotient).valid);
    VertexGroup v = vertex_group(q.quotient, 0);
    CHECK(v.group.size() == 2);
    for (Idx x = 0; x < g.object_count(); ++x) {
      std::vector<Idx> ker;
      for (Idx a : g.arrows_between(x, x))
        if (q.arrow_class[a] == q.arrow_class[g.unit(x)]) ker.push_back(a);
      std::sort(ker.begin(), ker.end());
      CHECK(ker == n.arrows[x]);
    }
  }
  // non-normal subbundle rejected
  {
    FiniteGroupoid h = trivialized_groupoid({"p", "q"}, symmetric3());
    std::vector<VertexGroup> hv;
    for (Idx x = 0; x < h.object_count(); ++x) hv.push_back(vertex_group(h, x));
    IsotropySubbundle n;
    n.arrows.resize(h.object_count());
    for (Idx x = 0; x < h.object_count(); ++x) {
      std::string swap_name =
          triv_arrow_name(h.objects()[x], "(12)", h.objects()[x]);
      n.arrows[x] = {hv[x].arrow_of[hv[x].group.identity()],
                     hv[x].arrow_of[hv[x].group.index(swap_name)]};
      std::sort(n.arrows[x].begin(), n.arrows[x].end());
    }
    CHECK_THROWS_AS(quotient_by_normal_subbundle(h, n), Error);
  }
}

TEST_CASE("transitive arrow count identity") {
  for (std::size_t pts : {2, 3}) {
    std::vector<std::string> objs;
    for (std::size_t i = 0; i < pts; ++i) objs.push_back("o" + std::to_string(i));
    FiniteGroupoid g = trivialized_groupoid(objs, cyclic_group(3));
    CHECK(g.arrow_count() == pts * pts * 3);
  }
}

TEST_CASE("extension validator and exactness") {
  FiniteGroupoid total = trivialized_groupoid({"p", "q"}, cyclic_group(4));
  std::vector<VertexGroup> vs;
  for (Idx x = 0; x < total.object_count(); ++x) vs.push_back(vertex_group(total, x));

  IsotropySubbundle n;
  n.arrows.resize(total.object_count());
  for (Idx x = 0; x < total.object_count(); ++x) {
    for (Idx e = 0; e < vs[x].group.size(); ++e)
      if (vs[x].group.element_order(e) <= 2) n.arrows[x].push_back(vs[x].arrow_of[e]);
    std::sort(n.arrows[x].begin(), n.arrows[x].end());
  }
  GroupoidQuotient q = quotient_by_normal_subbundle(total, n);

  GroupoidExtension ext;
  ext.total = total;
  ext.quotient = q.quotient;
  std::vector<algebra::FiniteGroup> fibers(total.object_count(), cyclic_group(2));
  ext.kernel = GroupBundle(std::move(fibers));
  ext.iota.resize(total.object_count());
  algebra::FiniteGroup z2 = cyclic_group(2);
  for (Idx x = 0; x < total.object_count(); ++x) {
    ext.iota[x].resize(2);
    ext.iota[x][z2.index("0")] = vs[x].arrow_of[vs[x].group.identity()];
    std::string two = triv_arrow_name(total.objects()[x], "2", total.objects()[x]);
    ext.iota[x][z2.index("1")] = vs[x].arrow_of[vs[x].group.index(two)];
  }
  ext.pi.object_map = q.object_class;
  ext.pi.arrow_map = q.arrow_class;
  ExtensionReport r = validate_extension(ext);
  CHECK(r.valid);

  GroupoidExtension bad = ext;
  std::string one = triv_arrow_name(total.objects()[0], "1", total.objects()[0]);
  bad.iota[0][1] = vs[0].arrow_of[vs[0].group.index(one)];
  CHECK_FALSE(validate_extension(bad).valid);
}

TEST_CASE("group isomorphisms and realized groupoid isomorphisms") {
  auto isos = group_isomorphisms(cyclic_group(4), cyclic_group(4));
  CHECK(isos.size() == 2);
  CHECK(group_isomorphisms(cyclic_group(4), algebra::klein_four()).empty());

  FiniteGroupoid g1 = trivialized_groupoid({"p", "q", "r"}, cyclic_group(4));
  FiniteGroupoid g2 = g1;
  std::vector<Idx> omap(g1.object_count());
  for (Idx x = 0; x < g1.object_count(); ++x) omap[x] = x;
  IsoFrame fr = make_iso_frame(g1, g2, omap);
  auto visos = group_isomorphisms(fr.v1.group, fr.v2.group);
  REQUIRE_FALSE(visos.empty());
  testutil::Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Idx> c(g1.object_count());
    for (auto& x : c) x = static_cast<Idx>(rng.below(fr.v2.group.size()));
    c[0] = fr.v2.group.identity();
    GroupoidMorData md = realize_iso(g1, g2, fr, visos[rng.below(visos.size())], c);
    GroupoidMor m{&g1, &g2, md.object_map, md.arrow_map};
    CHECK(is_isomorphism(m));
  }
}

TEST_CASE("quotient by a group action") {
  // Z2 acts on the pair groupoid of 4 points by swapping halves
  FiniteGroupoid g = pair_groupoid({"a0", "a1", "b0", "b1"});
  algebra::FiniteGroup z2 = cyclic_group(2);
  auto flip = [&](const std::string& s) {
    std::string t = s;
    t[1] = s[1] == '0' ? '1' : '0';
    return t;
  };
  std::vector<std::vector<Idx>> oact(g.object_count(), std::vector<Idx>(2));
  for (Idx x = 0; x < g.object_count(); ++x) {
    oact[x][z2.index("0")] = x;
    oact[x][z2.index("1")] = g.object_index(flip(g.objects()[x]));
  }
  std::vector<std::vector<Idx>> aact(g.arrow_count(), std::vector<Idx>(2));
  for (Idx a = 0; a < g.arrow_count(); ++a) {
    aact[a][z2.index("0")] = a;
    aact[a][z2.index("1")] = g.arrow_index(
        pair_arrow_name(flip(g.objects()[g.tgt(a)]), flip(g.objects()[g.src(a)])));
  }
  GroupoidQuotient q = quotient_by_group_action(g, z2, oact, aact);
  CHECK(q.quotient.object_count() == 2);
  CHECK(validate_groupoid(q.quotient).valid);
  CHECK(q.quotient.arrow_count() == 8);  // (4x4)/2
}
