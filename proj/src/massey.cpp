#include "zassen/massey.hpp"

#include <algorithm>
#include <memory>

#include "zassen/error.hpp"

namespace zassen {

DefiningSystem DefiningSystem::zero(const SystemPtr& sys, std::size_t group_order) {
  const std::size_t n = sys->rank();
  DefiningSystem m{sys, std::vector<std::vector<Cochain1>>(n + 2, std::vector<Cochain1>(n + 2))};
  for (const auto& s : sys->slots())
    if (!(s.i == 1 && s.j == n + 1)) m.a[s.i][s.j] = Cochain1(sys->p(), group_order, sys->dim(s.i, s.j));
  return m;
}

namespace {

// sum_{i<k<j} a_ik u a_kj
Cochain2 cup_sum(const DefiningSystem& m, std::size_t i, std::size_t j) {
  const auto& s = *m.system;
  Cochain2 out(s.p(), m.at(i, i + 1).order(), s.dim(i, j));
  for (std::size_t k = i + 1; k < j; ++k) out += cup(m.at(i, k), m.at(k, j), s.pairing(i, k, j));
  return out;
}

}  // namespace

std::optional<Violation> validate(const FiniteGroup& g, const DefiningSystem& m) {
  const auto& s = *m.system;
  const std::size_t n = s.rank();
  for (const auto& slot : s.slots()) {
    if (slot.i == 1 && slot.j == n + 1) continue;
    const auto& a = m.at(slot.i, slot.j);
    if (a.order() != g.order() || a.cod_dim() != s.dim(slot.i, slot.j))
      return Violation{slot.i, slot.j, "cochain shape does not match"};
    if (!a.value(0).is_zero()) return Violation{slot.i, slot.j, "cochain is not normalized"};
    const auto da = d1(g, a);
    if (slot.j == slot.i + 1) {
      if (!da.is_zero()) return Violation{slot.i, slot.j, "not a cocycle"};
    } else if (da != cup_sum(m, slot.i, slot.j)) {
      return Violation{slot.i, slot.j, "coboundary differs from the cup sum"};
    }
  }
  return std::nullopt;
}

Cochain2 massey_cocycle(const DefiningSystem& m) { return cup_sum(m, 1, m.system->rank() + 1); }

Cochain2 massey_value(const FiniteGroup& g, const DefiningSystem& m) {
  if (auto v = validate(g, m))
    throw Error(ErrorKind::Contract, "invalid defining system at (" + std::to_string(v->i) + "," +
                                         std::to_string(v->j) + "): " + v->what);
  auto c = massey_cocycle(m);
  require(is_cocycle(g, c), "Massey value is not a cocycle");
  return c;
}

DefiningSystem dwyer_to_system(const FiniteGroup& g, const Representation& rho_bar, bool check) {
  const auto& s = *rho_bar.system;
  const std::size_t n = s.rank();
  require(n >= 2 && rho_bar.level + 1 >= n, "need a representation into U(A)/Z(A) of rank >= 2");
  if (check && !is_homomorphism(g, truncate(rho_bar, n - 1)))
    throw Error(ErrorKind::NotHomomorphism, "not a homomorphism into U(A)/Z(A)");
  const PrimeField f(s.p());
  auto m = DefiningSystem::zero(rho_bar.system, g.order());
  for (Elem x = 0; x < g.order(); ++x) {
    const auto c = rho_bar.coords(x);
    for (const auto& slot : s.slots()) {
      if (slot.i == 1 && slot.j == n + 1) continue;
      for (std::size_t t = 0; t < s.dim(slot.i, slot.j); ++t)
        m.at(slot.i, slot.j).at(x, t) = f.neg(c[s.offset(slot.i, slot.j) + t]);
    }
  }
  return m;
}

Representation dwyer_to_rep(const FiniteGroup& g, const DefiningSystem& m) {
  const auto& s = *m.system;
  const std::size_t n = s.rank();
  const PrimeField f(s.p());
  Representation r{m.system, n - 1, std::vector<std::uint64_t>(g.order(), 0)};
  std::vector<Scalar> c(s.total_dim());
  for (Elem x = 0; x < g.order(); ++x) {
    std::fill(c.begin(), c.end(), 0);
    for (const auto& slot : s.slots()) {
      if (slot.i == 1 && slot.j == n + 1) continue;
      for (std::size_t t = 0; t < s.dim(slot.i, slot.j); ++t)
        c[s.offset(slot.i, slot.j) + t] = f.neg(m.at(slot.i, slot.j).at(x, t));
    }
    r.images[x] = s.encode(c);
  }
  if (!is_homomorphism(g, r)) throw Error(ErrorKind::NotHomomorphism, "defining system does not give a homomorphism");
  return r;
}

std::optional<Representation> lift_through_center(const FiniteGroup& g, const CoboundaryReducer& red,
                                                  const Representation& rho_bar) {
  const auto& s = *rho_bar.system;
  const std::size_t n = s.rank();
  const auto m = dwyer_to_system(g, rho_bar);
  const auto c = red.solve(massey_cocycle(m));
  if (!c) return std::nullopt;
  const PrimeField f(s.p());
  std::uint64_t base = 1;
  for (std::size_t k = 0; k < s.offset(1, n + 1); ++k) base *= s.p();
  Representation r{rho_bar.system, n, truncate(rho_bar, n - 1).images};
  for (Elem x = 0; x < g.order(); ++x) {
    std::uint64_t top = 0;
    for (std::size_t t = s.dim(1, n + 1); t-- > 0;) top = top * s.p() + f.neg(c->at(x, t));
    r.images[x] += base * top;
  }
  return r;
}

std::optional<DefiningSystem> complete_defining_system(const FiniteGroup& g, const CoboundaryReducer& red,
                                                       const SystemPtr& sys,
                                                       const std::vector<Cochain1>& superdiagonal) {
  const std::size_t n = sys->rank();
  require(superdiagonal.size() == n, "need one cochain per superdiagonal slot");
  auto m = DefiningSystem::zero(sys, g.order());
  for (std::size_t i = 1; i <= n; ++i) {
    require(superdiagonal[i - 1].cod_dim() == sys->dim(i, i + 1), "superdiagonal cochain has the wrong dimension");
    m.at(i, i + 1) = superdiagonal[i - 1];
  }
  for (std::size_t level = 2; level < n; ++level)
    for (std::size_t i = 1; i + level <= n + 1; ++i) {
      auto c = red.solve(cup_sum(m, i, i + level));
      if (!c) return std::nullopt;
      m.at(i, i + level) = std::move(*c);
    }
  if (validate(g, m)) return std::nullopt;
  return m;
}

DefiningSystem phi_sum_witness(const FiniteGroup& g, const DefiningSystem& w1, const DefiningSystem& w2) {
  const auto &s1 = *w1.system, &s2 = *w2.system;
  const std::size_t n = s1.rank();
  require(s2.rank() == n && s1.p() == s2.p(), "witnesses of different rank or characteristic");
  require(s1.dim(1, n + 1) == s2.dim(1, n + 1), "witnesses with different coefficient spaces");
  require(w1.at(1, 2).order() == g.order() && w2.at(1, 2).order() == g.order(), "witnesses on different groups");
  const Scalar p = s1.p();
  MultSystem::Dims dims(n + 2, std::vector<std::size_t>(n + 2, 0));
  auto is_top = [n](std::size_t i, std::size_t j) { return i == 1 && j == n + 1; };
  for (const auto& sl : s1.slots())
    dims[sl.i][sl.j] = is_top(sl.i, sl.j) ? s1.dim(sl.i, sl.j) : s1.dim(sl.i, sl.j) + s2.dim(sl.i, sl.j);
  auto sys = std::make_shared<const MultSystem>(p, n, dims, [&](std::size_t i, std::size_t j, std::size_t k) {
    BilinearMap nu(p, dims[i][j], dims[j][k], dims[i][k]);
    const auto &m1 = s1.pairing(i, j, k), &m2 = s2.pairing(i, j, k);
    const std::size_t oa = s1.dim(i, j), ob = s1.dim(j, k), oc = is_top(i, k) ? 0 : s1.dim(i, k);
    for (std::size_t a = 0; a < m1.dim_a(); ++a)
      for (std::size_t b = 0; b < m1.dim_b(); ++b)
        for (std::size_t c = 0; c < m1.dim_c(); ++c) nu.at(a, b, c) = m1.at(a, b, c);
    for (std::size_t a = 0; a < m2.dim_a(); ++a)
      for (std::size_t b = 0; b < m2.dim_b(); ++b)
        for (std::size_t c = 0; c < m2.dim_c(); ++c) nu.at(oa + a, ob + b, oc + c) = m2.at(a, b, c);
    return nu;
  });
  auto m = DefiningSystem::zero(sys, g.order());
  for (const auto& sl : s1.slots()) {
    if (is_top(sl.i, sl.j)) continue;
    auto& b = m.at(sl.i, sl.j);
    const std::size_t d1 = s1.dim(sl.i, sl.j);
    for (Elem x = 0; x < g.order(); ++x) {
      for (std::size_t t = 0; t < d1; ++t) b.at(x, t) = w1.at(sl.i, sl.j).at(x, t);
      for (std::size_t t = 0; t < s2.dim(sl.i, sl.j); ++t) b.at(x, d1 + t) = w2.at(sl.i, sl.j).at(x, t);
    }
  }
  auto sum = massey_value(g, w1);
  sum += massey_value(g, w2);
  require(massey_value(g, m) == sum, "sum witness does not add Massey values");
  return m;
}

PhiAccumulator::PhiAccumulator(const FiniteGroup& g, const CoboundaryReducer& red)
    : g_(&g), red_(&red), span_(g.p(), g.order() * g.order()) {}

bool PhiAccumulator::insert(const DefiningSystem& witness) {
  require(witness.system->dim(1, witness.system->rank() + 1) == 1, "accumulator takes F_p-valued Massey values");
  ++inserted_;
  auto c = massey_cocycle(witness);
  auto v = red_->remainder(c);
  if (span_.contains(v)) return false;
  massey_value(*g_, witness);
  span_.insert(v);
  entries_.push_back({std::move(v), std::move(c), witness});
  return true;
}

}  // namespace zassen
