#include "doctest.h"
#include "zassen/enumerate.hpp"
#include "zassen/verifier.hpp"

using namespace zassen;

namespace {

SystemPtr standard(Scalar p, std::size_t n) { return std::make_shared<const MultSystem>(MultSystem::standard(p, n)); }

std::size_t layer_of(const Filtration& f, Elem x) {
  std::size_t k = 1;
  while (f.term(k + 1).contains(x)) ++k;
  return k;
}

}  // namespace

TEST_CASE("enumeration small cases") {
  const auto triv = build_cyclic_group(2, 1);
  CHECK(enumerate_reps(triv, standard(2, 2), 2).size() == 1);
  CHECK(enumerate_reps(build_cyclic_group(2, 2), standard(2, 1), 1).size() == 2);
  CHECK(enumerate_reps(build_cyclic_group(2, 4), standard(2, 2), 2).size() == 8);
}

TEST_CASE("one representation of Z/4 is faithful") {
  const auto g = build_cyclic_group(2, 4);
  const auto rho = extend_from_generators(g, standard(2, 2), 2, {3});  // 1 + e12 + e23
  REQUIRE(is_homomorphism(g, rho));
  CHECK(kernel(g, rho).is_trivial());
}

TEST_CASE("intersections of kernels") {
  SUBCASE("Z/4, n = 2") {
    const auto g = build_cyclic_group(2, 4);
    const auto f = zassenhaus_recursive(g);
    const auto r = intersect_kernels(g, f.term(3), 2);
    CHECK(r.intersection.is_trivial());
    CHECK(r.standard_sufficed);
    CHECK(r.sufficient_dim == std::optional<std::size_t>(1));
  }
  SUBCASE("S/S_(4), n = 2") {
    const auto g = build_magnus_group(2, 2, 4).group;
    const auto f = zassenhaus_recursive(g);
    const auto r = intersect_kernels(g, f.term(3), 2);
    CHECK(r.intersection == f.term(3));
    CHECK(r.intersection.order() == 4);
  }
  SUBCASE("no early exit visits the whole catalog") {
    const auto g = build_cyclic_group(2, 4);
    const auto f = zassenhaus_recursive(g);
    IntersectionOptions o;
    o.early_exit = false;
    const auto r = intersect_kernels(g, f.term(3), 2, o);
    CHECK(r.systems_visited == 2);
    CHECK(r.intersection.is_trivial());
  }
  SUBCASE("a lower bound that is too big is caught") {
    const auto g = build_cyclic_group(2, 4);
    const auto f = zassenhaus_recursive(g);
    CHECK_THROWS_AS(intersect_kernels(g, f.term(2), 2), Error);
  }
}

TEST_CASE("representations vanish on the Zassenhaus terms") {
  const auto g = build_magnus_group(2, 2, 3).group;
  const auto f = zassenhaus_recursive(g);
  for (std::size_t n = 1; n <= 2; ++n)
    for (const auto& s : catalog({2, n, 1, true})) {
      auto sys = std::make_shared<const MultSystem>(s);
      for (const auto& r : enumerate_reps(g, sys, n)) CHECK(f.term(n + 1).subset_of(kernel(g, r)));
      if (n >= 2)
        for (const auto& rb : enumerate_reps(g, sys, n - 1)) CHECK(f.term(n).subset_of(kernel(g, rb)));
    }
}

TEST_CASE("separation on Z/4") {
  const auto g = build_cyclic_group(2, 4);
  const auto f = zassenhaus_recursive(g);
  Separator sep(g, f, {});
  CHECK(sep.separate(0, 2).outcome == SeparationOutcome::NotApplicable);

  const auto s1 = sep.separate(1, 2);
  REQUIRE(s1.outcome == SeparationOutcome::Separated);
  CHECK(s1.route == "character");
  CHECK(s1.rep->system->rank() == 2);
  CHECK(s1.rep->entry(1, 1, 2)[0] == 1);
  CHECK(s1.rep->entry(1, 2, 3)[0] == 0);

  const auto s2 = sep.separate(2, 2);
  REQUIRE(s2.outcome == SeparationOutcome::Separated);
  CHECK(s2.route == "massey");
  CHECK(s2.layer == 2);
  const auto c = s2.rep->coords(2);  // 1 + e13
  CHECK(s2.rep->entry(2, 1, 2)[0] == 0);
  CHECK(s2.rep->entry(2, 2, 3)[0] == 0);
  CHECK(s2.rep->entry(2, 1, 3)[0] == 1);
  CHECK(c.size() == 3);
}

TEST_CASE("separation of [x1,x2] in S/S_(4)") {
  const auto g = build_magnus_group(2, 2, 4).group;
  const auto f = zassenhaus_recursive(g);
  const Elem c = g.comm(g.generators()[0], g.generators()[1]);
  CHECK(layer_of(f, c) == 2);
  Separator sep(g, f, {});
  const auto s = sep.separate(c, 2);
  REQUIRE(s.outcome == SeparationOutcome::Separated);
  CHECK(s.rep->images[c] != 0);
  CHECK(is_homomorphism(g, *s.rep));
}

TEST_CASE("raise_rank pads and stays multiplicative") {
  const auto g = build_magnus_group(3, 2, 3).group;
  Cochain1 chi(3, g.order(), 1);
  const auto f = zassenhaus_recursive(g);
  const auto eq = elementary_quotient_basis(g, f.term(1), f.term(2));
  for (Elem x = 0; x < g.order(); ++x) chi.at(x, 0) = eq.coordinates(x)[1];
  const auto r1 = character_rep(g, chi);
  CHECK(is_homomorphism(g, r1));
  const auto r3 = raise_rank(r1, 3);
  CHECK(r3.system->rank() == 3);
  CHECK(r3.system->dim(1, 4) == 1);
  CHECK(is_homomorphism(g, r3));
  CHECK(kernel(g, r3) == kernel(g, r1));
}

TEST_CASE("hypothesis check") {
  const auto check = [](const GroupSpec& s, std::size_t n) {
    const auto b = build_group(s);
    return check_hypothesis(b, zassenhaus_recursive(b.group), n).status;
  };
  CHECK(check(GroupSpec::magnus(2, 2, 3), 3) == "holds");
  CHECK(check(GroupSpec::magnus(2, 2, 3), 4) == "fails");
  CHECK(check(GroupSpec::cyclic(2, 4), 4) == "holds");
  CHECK(check(GroupSpec::cyclic(2, 4), 5) == "fails");
  CHECK(check(GroupSpec::cyclic(3, 9), 9) == "holds");
  CHECK(check(GroupSpec::unipotent(2, 3), 2) == "holds");
  CHECK(check(GroupSpec::unipotent(2, 3), 3) == "fails");
  CHECK(check(GroupSpec::unipotent(2, 3), 1) == "holds");
}

TEST_CASE("theorem harness") {
  SUBCASE("Z/4") {
    const auto r = run_theorem_harness(build_group(GroupSpec::cyclic(2, 4)), {});
    CHECK(r.overall == Verdict::Established);
    CHECK(r.equivalence == "agree");
    CHECK(r.separations_succeeded == 3);
  }
  SUBCASE("S/S_(4)") {
    const auto r = run_theorem_harness(build_group(GroupSpec::magnus(2, 2, 4)), {});
    CHECK(r.overall == Verdict::Established);
    CHECK(r.intersection.size() == 4);
    CHECK(r.separations_succeeded == 124);
  }
  SUBCASE("p = 3") {
    const auto r = run_theorem_harness(build_group(GroupSpec::magnus(3, 2, 3)), {});
    CHECK(r.overall == Verdict::Established);
    CHECK(r.order == 27);
    CHECK(r.intersection.size() == 1);
  }
  SUBCASE("n = 1") {
    HarnessConfig cfg;
    cfg.n = 1;
    const auto r = run_theorem_harness(build_group(GroupSpec::unipotent(2, 4)), cfg);
    CHECK(r.overall == Verdict::Established);
    CHECK(r.pairing_layers.empty());
    CHECK(r.intersection.size() == 8);
  }
  CHECK(exit_code(Verdict::Established) == 0);
  CHECK(exit_code(Verdict::Inconclusive) == 2);
  CHECK(exit_code(Verdict::Falsified) == 1);
}
