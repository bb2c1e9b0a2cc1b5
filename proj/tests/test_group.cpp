#include "doctest.h"
#include "zassen/group.hpp"
#include "zassen/magnus.hpp"

using namespace zassen;

TEST_CASE("unipotent 3x3 over F_2 is dihedral of order 8") {
  const auto g = build_unipotent_group(2, 3);
  CHECK(g.order() == 8);
  const auto whole = Subgroup::whole(g);
  const auto comm = commutator_subgroup(g, whole, whole);
  CHECK(comm.order() == 2);
  CHECK(is_central(g, comm));
  std::size_t order4 = 0;
  for (Elem e = 0; e < g.order(); ++e) order4 += g.element_order(e) == 4;
  CHECK(order4 == 2);
}

TEST_CASE("lower central series of unipotent groups") {
  const auto g3 = build_unipotent_group(2, 3);
  std::vector<std::size_t> o3;
  for (const auto& s : lower_central_series(g3)) o3.push_back(s.order());
  CHECK(o3 == std::vector<std::size_t>{8, 2, 1});
  const auto g4 = build_unipotent_group(2, 4);
  std::vector<std::size_t> o4;
  for (const auto& s : lower_central_series(g4)) o4.push_back(s.order());
  CHECK(o4 == std::vector<std::size_t>{64, 8, 2, 1});
}

TEST_CASE("Zassenhaus filtration of Z/4 and the 3x3 unipotent group") {
  const auto c4 = build_cyclic_group(2, 4);
  const auto f = zassenhaus_recursive(c4);
  REQUIRE(f.length() == 3);
  CHECK(f.term(2).elements() == std::vector<Elem>{0, 2});
  CHECK(f.term(3).is_trivial());
  CHECK(f == zassenhaus_lazard(c4));

  const auto u = build_unipotent_group(2, 3);
  const auto fu = zassenhaus_recursive(u);
  CHECK(fu.orders() == std::vector<std::size_t>{8, 2, 1});
  CHECK(fu.term(2).order() == 2);
  CHECK(is_central(u, fu.term(2)));
  CHECK(filtration_well_formed(u, fu));
}

TEST_CASE("quotients and elementary sections") {
  const auto g = build_magnus_group(2, 2, 3).group;
  const auto f = zassenhaus_recursive(g);
  const auto q = quotient(g, f.term(2));
  CHECK(q.group.order() == 4);
  CHECK(is_homomorphism(g, q.group, q.projection));
  const auto sec = elementary_quotient_basis(g, f.term(2), f.term(3));
  CHECK(sec.dim() == 3);
  for (Elem e : f.term(2).elements()) {
    for (Elem h : f.term(2).elements())
      CHECK(sec.coordinates(g.mul(e, h)) == sec.coordinates(e) + sec.coordinates(h));
  }
  CHECK_THROWS_AS(elementary_quotient_basis(g, Subgroup::whole(g), f.term(3)), Error);
}

TEST_CASE("non-normal subgroup is rejected by quotient") {
  const auto g = build_unipotent_group(2, 3);
  const auto h = closure(g, {g.generators()[0]});
  CHECK_FALSE(is_normal(g, h));
  CHECK_THROWS_AS(quotient(g, h), Error);
}

TEST_CASE("labels are shortest words") {
  const auto c4 = build_cyclic_group(2, 4);
  CHECK(c4.label(0) == "1");
  CHECK(c4.label(1) == "x1");
  CHECK(c4.label(2) == "x1^2");
}
