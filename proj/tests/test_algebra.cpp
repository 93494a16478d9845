#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "xmodkit/algebra/aut.hpp"
#include "xmodkit/algebra/group.hpp"
#include "xmodkit/algebra/hom.hpp"

using namespace xmodkit::algebra;

TEST_CASE("constructor rejects broken tables") {
  // non-associative magma on 3 elements
  std::vector<std::string> names{"a", "b", "e"};
  std::vector<std::vector<std::string>> table{
      {"b", "a", "a"}, {"a", "b", "b"}, {"a", "b", "e"}};
  CHECK_THROWS_AS(FiniteGroup(names, table, "e"), xmodkit::Error);

  // missing inverse: N with saturating addition is not a group
  std::vector<std::string> n2{"0", "1"};
  std::vector<std::vector<std::string>> t2{{"0", "1"}, {"1", "1"}};
  CHECK_THROWS_AS(FiniteGroup(n2, t2, "0"), xmodkit::Error);
}

TEST_CASE("element order is canonical") {
  FiniteGroup s3 = symmetric3();
  CHECK(std::is_sorted(s3.names().begin(), s3.names().end()));
  CHECK(s3.name(s3.identity()) == "e");
  CHECK(s3.size() == 6);
}

TEST_CASE("center: abelian, S3, D4") {
  CHECK(center(cyclic_group(4)).sub.size() == 4);  // abelian: everything
  CHECK(center(symmetric3()).sub.size() == 1);     // trivial

  FiniteGroup d4 = dihedral_group(4);
  CenterSubgroup z = center(d4);
  REQUIRE(z.sub.size() == 2);
  std::set<std::string> got;
  for (Idx i : z.sub.elements) got.insert(d4.name(i));
  CHECK(got == std::set<std::string>{"r0", "r2"});
}

TEST_CASE("center equals kernel of h -> I_h") {
  for (const FiniteGroup& g : {cyclic_group(6), symmetric3(), dihedral_group(4), klein_four()}) {
    CHECK(center(g).sub.elements == inner_kernel(g).elements);
  }
}

TEST_CASE("automorphism groups: Z4, trivial, S3, Klein four") {
  AutomorphismGroup a4 = automorphism_group(cyclic_group(4));
  CHECK(a4.autos.size() == 2);  // identity and inversion
  CHECK(a4.inner.size() == 1);  // abelian: Inn trivial

  CHECK(automorphism_group(trivial_group()).autos.size() == 1);

  AutomorphismGroup as3 = automorphism_group(symmetric3());
  CHECK(as3.autos.size() == 6);
  CHECK(as3.inner.size() == 6);  // complete group: Inn = Aut

  CHECK(automorphism_group(klein_four()).autos.size() == 6);  // GL(2,2)
}

TEST_CASE("automorphism bound guard") {
  CHECK_THROWS_AS(automorphism_group(direct_product(cyclic_group(4), cyclic_group(4))),
                  xmodkit::Error);
  CHECK_NOTHROW(automorphism_group(direct_product(cyclic_group(4), cyclic_group(4)), 16));
}

TEST_CASE("Inn is normal in Aut") {
  for (const FiniteGroup& g : {symmetric3(), dihedral_group(4)}) {
    AutomorphismGroup a = automorphism_group(g);
    Subgroup inn;
    for (std::size_t i : a.inner) inn.elements.push_back(static_cast<Idx>(i));
    std::sort(inn.elements.begin(), inn.elements.end());
    CHECK(is_subgroup(a.as_group, inn));
    CHECK(is_normal(a.as_group, inn));
  }
}

TEST_CASE("inner automorphisms compose: I_{h1 h2} = I_{h1} o I_{h2}") {
  FiniteGroup g = dihedral_group(4);
  for (Idx h1 = 0; h1 < g.size(); ++h1)
    for (Idx h2 = 0; h2 < g.size(); ++h2) {
      GroupHom lhs = inner_automorphism(g, g.op(h1, h2));
      GroupHom rhs = compose(inner_automorphism(g, h1), inner_automorphism(g, h2));
      CHECK(lhs.map == rhs.map);
    }
}

TEST_CASE("inner automorphism basics") {
  CHECK(inner_automorphism(cyclic_group(4), "1").map == identity_hom(cyclic_group(4)).map);
  FiniteGroup s3 = symmetric3();
  GroupHom conj12 = inner_automorphism(s3, "(12)");
  check_hom(conj12);
  CHECK(s3.name(conj12(s3.index("(13)"))) == "(23)");
  CHECK(inner_automorphism(s3, s3.name(s3.identity())).map == identity_hom(s3).map);
  CHECK_THROWS_AS(inner_automorphism(s3, "(14)"), xmodkit::Error);
}

TEST_CASE("quotient Z4 / {0,2} = Z2 with projection hom") {
  FiniteGroup z4 = cyclic_group(4);
  Subgroup n = generated_subgroup(z4, {z4.index("2")});
  QuotientGroup q = quotient(z4, n);
  CHECK(q.group.size() == 2);
  GroupHom pr = projection_hom(z4, q);
  check_hom(pr);
  CHECK(kernel(pr).elements == n.elements);
}

TEST_CASE("quotient rejects non-normal subgroups") {
  FiniteGroup s3 = symmetric3();
  Subgroup h = generated_subgroup(s3, {s3.index("(12)")});
  CHECK_THROWS_AS(quotient(s3, h), xmodkit::Error);
}

TEST_CASE("homs validate") {
  FiniteGroup z4 = cyclic_group(4), z2 = cyclic_group(2);
  GroupHom h{z4, z2, {}};
  h.map = {0, 1, 0, 1};  // mod 2
  check_hom(h);
  CHECK(kernel(h).size() == 2);
  CHECK(image(h).size() == 2);
  h.map = {0, 1, 1, 0};
  CHECK_THROWS_AS(check_hom(h), xmodkit::Error);
}

TEST_CASE("abelian decomposition") {
  FiniteGroup z6 = cyclic_group(6);
  auto d = decompose_abelian(z6, full_subgroup(z6));
  std::int64_t prod = 1;
  for (auto o : d.orders) prod *= o;
  CHECK(prod == 6);
  CHECK(d.coords.size() == 6);

  FiniteGroup v4 = klein_four();
  auto dv = decompose_abelian(v4, full_subgroup(v4));
  CHECK(dv.orders == std::vector<std::int64_t>{2, 2});

  FiniteGroup d4 = dihedral_group(4);
  auto dz = decompose_abelian(d4, center(d4).sub);
  CHECK(dz.orders == std::vector<std::int64_t>{2});
}
