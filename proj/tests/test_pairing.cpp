#include "doctest.h"
#include "zassen/magnus.hpp"
#include "zassen/pairing.hpp"

using namespace zassen;

namespace {

void check_routes_agree(const PairingContext& ctx) {
  for (const auto& a : ctx.right_basis())
    for (Elem s : ctx.normal_subgroup().elements())
      CHECK(pair_via_trg(ctx, s, a.cocycle) == pair_via_rep(ctx, s, a.witness));
}

void check_five_term(const PairingContext& ctx) {
  for (const auto& c : five_term_checks(ctx)) {
    INFO(c.name);
    CHECK(c.holds);
  }
  CHECK(kernel_equality_check(ctx).holds);
}

}  // namespace

TEST_CASE("Z/4 with N = G_(2)") {
  const auto g = build_cyclic_group(2, 4);
  const auto f = zassenhaus_recursive(g);
  PairingContext ctx(g, f, f.term(2), 2);
  CHECK(ctx.left_dim() == 1);
  REQUIRE(ctx.right_basis().size() == 1);
  CHECK(pair_via_trg(ctx, 2, ctx.right_basis()[0].cocycle) == 1);
  CHECK(pair_via_trg(ctx, 0, ctx.right_basis()[0].cocycle) == 0);
  check_routes_agree(ctx);
  check_five_term(ctx);
  CHECK(left_nondegenerate(ctx) == Verdict::Established);
  CHECK(right_nondegenerate(ctx) == Verdict::Established);
}

TEST_CASE("S/S_(4), p = 2, d = 2, N = G_(2)") {
  const auto g = build_magnus_group(2, 2, 4).group;
  const auto f = zassenhaus_recursive(g);
  PairingContext ctx(g, f, f.term(2), 2);
  CHECK(ctx.left_dim() == 3);
  CHECK(rref(pairing_matrix(ctx)).rank == 3);
  check_routes_agree(ctx);
  check_five_term(ctx);
  CHECK(right_nondegenerate(ctx) == Verdict::Established);
}

TEST_CASE("pairing is additive in sigma") {
  const auto g = build_magnus_group(2, 2, 4).group;
  const auto f = zassenhaus_recursive(g);
  PairingContext ctx(g, f, f.term(2), 2);
  const PrimeField fp(2);
  for (const auto& a : ctx.right_basis())
    for (Elem s : ctx.normal_subgroup().elements())
      for (Elem t : ctx.normal_subgroup().elements())
        CHECK(pair_via_trg(ctx, g.mul(s, t), a.cocycle) ==
              fp.add(pair_via_trg(ctx, s, a.cocycle), pair_via_trg(ctx, t, a.cocycle)));
}

TEST_CASE("p = 3 context") {
  const auto g = build_magnus_group(3, 2, 3).group;
  const auto f = zassenhaus_recursive(g);
  PairingContext ctx(g, f, f.term(2), 2);
  CHECK(ctx.left_dim() == 1);
  check_routes_agree(ctx);
  check_five_term(ctx);
  CHECK(left_nondegenerate(ctx) == Verdict::Established);
}

TEST_CASE("coker/ker pairing") {
  const auto mg = build_magnus_group(2, 2, 4);
  const auto& g = mg.group;
  const auto f = zassenhaus_recursive(g);
  PairingContext big(g, f, f.term(2), 2);
  {
    PairingContext small(g, f, f.term(3), 2);
    const auto r = coker_ker_pairing(small, big);
    CHECK(r.commutes);
    CHECK(r.coker_dim == 3);
    CHECK(r.ker_dim == 3);
    CHECK(r.nondegenerate);
  }
  {
    const Elem c = g.comm(g.generators()[0], g.generators()[1]);
    const auto rsub = normal_closure(g, {c});
    PairingContext small(g, f, rsub, 2);
    check_routes_agree(small);
    const auto r = coker_ker_pairing(small, big);
    CHECK(r.commutes);
    CHECK(r.coker_dim == 2);
    CHECK(r.ker_dim == 2);
    CHECK(r.nondegenerate);
  }
}
