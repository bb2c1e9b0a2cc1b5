#include "zassen/pairing.hpp"

#include <memory>

#include "zassen/error.hpp"

namespace zassen {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Established: return "established";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::Falsified: return "falsified";
  }
  return "?";
}

namespace {

// kernel of the map phi_basis -> H^2(target), as coefficient vectors
Subspace inflation_kernel(const std::vector<WitnessedClass>& basis, const CoboundaryReducer& red,
                          const std::vector<Elem>& projection, Scalar p) {
  const std::size_t n = red.group().order();
  FpMatrix m(p, n * n, basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto r = red.remainder(inflate(basis[k].cocycle, projection));
    for (std::size_t i = 0; i < n * n; ++i) m.at(i, k) = r[i];
  }
  return kernel_basis(m);
}

}  // namespace

PairingContext::PairingContext(const FiniteGroup& g, const Filtration& filtration, const Subgroup& n,
                               std::size_t rank, const PairingOptions& opts)
    : g_(&g), n_(n), rank_(rank) {
  require(rank >= 2, "pairing contexts need rank >= 2");
  if (!is_normal(g, n)) throw Error(ErrorKind::NotNormal, "N is not normal");
  require(n.subset_of(filtration.term(rank)), "N must lie in G_(n)");
  const Scalar p = g.p();
  const auto f = subgroup_intersection(g, n, filtration.term(rank + 1));
  e_ = std::make_unique<QuotientGroup>(quotient(g, f));
  const auto& e = e_->group;
  ext_ = std::make_unique<CentralExtension>(e, image_subgroup(e, e_->projection, n));
  const auto& qproj = ext_->quotient().projection;
  g_to_q_.resize(g.order());
  for (Elem x = 0; x < g.order(); ++x) g_to_q_[x] = qproj[e_->projection[x]];
  for (Elem b : ext_->basis().basis) {
    Elem pre = 0;
    while (e_->projection[pre] != b) ++pre;
    left_basis_.push_back(pre);
  }

  // witnessed Massey values on Q = G/N
  const auto& qg = q();
  const CoboundaryReducer& qred = ext_->q_reducer();
  PhiAccumulator acc(qg, qred);
  // the span lives in H^2(Q); once it is all of it nothing more can be witnessed
  std::optional<std::size_t> ceiling;
  try {
    ceiling = h2(qg).dim;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::TooLarge) throw;
  }
  auto full = [&] { return ceiling && acc.span().basis().size() == *ceiling; };
  visit_catalog({p, rank, opts.max_dim, true}, [&](const MultSystem& s) {
    if (full()) return false;
    ++systems_;
    auto sys = std::make_shared<const MultSystem>(s);
    bool trunc = false;
    for (const auto& rb : enumerate_reps(qg, sys, rank - 1, opts.enumeration, &trunc)) {
      ++reps_;
      acc.insert(dwyer_to_system(qg, rb, false));
      if (full()) break;
    }
    truncated_ = truncated_ || trunc;
    return true;
  });
  for (const auto& en : acc.basis_entries()) phi_basis_.push_back({en.cocycle, en.class_vector, en.witness});

  ker_e_ = inflation_kernel(phi_basis_, ext_->e_reducer(), qproj, p);
  const CoboundaryReducer gred(g);
  ker_g_ = inflation_kernel(phi_basis_, gred, g_to_q_, p);

  for (const auto& c : ker_e_.basis()) {
    Cochain2 z(p, qg.order(), 1);
    std::optional<DefiningSystem> w;
    for (std::size_t k = 0; k < phi_basis_.size(); ++k)
      for (Scalar t = 0; t < c[k]; ++t) {
        z += phi_basis_[k].cocycle;
        w = w ? phi_sum_witness(qg, *w, phi_basis_[k].witness) : phi_basis_[k].witness;
      }
    right_basis_.push_back({z, qred.remainder(z), std::move(*w)});
  }
}

FpVector PairingContext::left_coordinates(Elem sigma) const {
  require(n_.contains(sigma), "element is not in N");
  return ext_->basis().coordinates(e_->projection[sigma]);
}

Scalar pair_via_trg(const PairingContext& ctx, Elem sigma, const Cochain2& alpha) {
  const auto phi = ctx.extension().trg_inverse(alpha);
  return phi.dot(ctx.left_coordinates(sigma));
}

Representation lift_witness(const PairingContext& ctx, const DefiningSystem& witness) {
  const auto& ext = ctx.extension();
  const auto& e = ext.group();
  const auto rho_bar = pull_back(dwyer_to_rep(ctx.q(), witness), ext.quotient().projection);
  auto rho = lift_through_center(e, ext.e_reducer(), rho_bar);
  if (!rho) throw Error(ErrorKind::NotTransgressive, "witness does not lift to G/(N n G_(n+1))");
  // any other lift differs by a character of E, which has to vanish on N
  for (const auto& chi : ext.e_reducer().homomorphisms())
    for (Elem s : ext.kernel().elements())
      if (chi.at(s, 0) != 0) throw Error(ErrorKind::Contract, "lift-dependent pairing value");
  return std::move(*rho);
}

Scalar pair_with_lift(const PairingContext& ctx, Elem sigma, const Representation& lift) {
  require(ctx.normal_subgroup().contains(sigma), "element is not in N");
  const PrimeField f(lift.system->p());
  const std::size_t n = lift.system->rank();
  return f.neg(lift.entry(ctx.to_e().projection[sigma], 1, n + 1)[0]);
}

Scalar pair_via_rep(const PairingContext& ctx, Elem sigma, const DefiningSystem& witness) {
  return pair_with_lift(ctx, sigma, lift_witness(ctx, witness));
}

FpMatrix pairing_matrix(const PairingContext& ctx) {
  const auto& right = ctx.right_basis();
  FpMatrix m(ctx.group().p(), ctx.left_dim(), right.size());
  for (std::size_t k = 0; k < right.size(); ++k) {
    const auto phi = ctx.extension().trg_inverse(right[k].cocycle);
    for (std::size_t i = 0; i < ctx.left_dim(); ++i) m.at(i, k) = phi[i];
  }
  return m;
}

Verdict left_nondegenerate(const PairingContext& ctx) {
  return rref(pairing_matrix(ctx)).rank == ctx.left_dim() ? Verdict::Established : Verdict::Inconclusive;
}

Verdict right_nondegenerate(const PairingContext& ctx) {
  return rref(pairing_matrix(ctx)).rank == ctx.right_basis().size() ? Verdict::Established : Verdict::Falsified;
}

std::vector<SubspaceCheck> five_term_checks(const PairingContext& ctx) {
  const auto& ext = ctx.extension();
  const auto& e = ext.group();
  const auto& qg = ext.quotient().group;
  const auto& proj = ext.quotient().projection;
  const Scalar p = e.p();
  const std::size_t ne = e.order(), nq = qg.order(), dn = ext.basis().dim();
  auto as_vector = [p](const Cochain1& a) {
    FpVector v(p, a.order());
    for (Elem x = 0; x < a.order(); ++x) v[x] = a.at(x, 0);
    return v;
  };
  std::vector<SubspaceCheck> out;

  // H^1(Q) -> H^1(E) injective
  const auto hq = ext.q_reducer().homomorphisms();
  const auto he = ext.e_reducer().homomorphisms();
  Subspace inf1(p, ne);
  for (const auto& a : hq) inf1.insert(as_vector(inflate1(a, proj)));
  out.push_back({"inflation H1 injective", inf1.dim() == hq.size(), hq.size(), inf1.dim()});

  // image of inflation = kernel of restriction in H^1(E)
  Subspace ker_res(p, ne);
  {
    FpMatrix m(p, dn, he.size());
    for (std::size_t k = 0; k < he.size(); ++k) {
      const auto r = ext.restrict_to_kernel(he[k]);
      for (std::size_t i = 0; i < dn; ++i) m.at(i, k) = r[i];
    }
    const auto ker = kernel_basis(m);
    for (const auto& c : ker.basis()) {
      Cochain1 a(p, ne, 1);
      for (std::size_t k = 0; k < he.size(); ++k) a += he[k].scaled(c[k]);
      ker_res.insert(as_vector(a));
    }
  }
  out.push_back({"exact at H1(E)", inf1 == ker_res, inf1.dim(), ker_res.dim()});

  // image of restriction = kernel of transgression in Hom(N_E, F_p)
  Subspace im_res(p, dn);
  for (const auto& a : he) im_res.insert(ext.restrict_to_kernel(a));
  Subspace ker_trg(p, dn);
  {
    FpMatrix m(p, nq * nq, dn);
    for (std::size_t i = 0; i < dn; ++i) {
      const auto r = ext.q_reducer().remainder(ext.trg(FpVector::unit(p, dn, i)));
      for (std::size_t k = 0; k < nq * nq; ++k) m.at(k, i) = r[k];
    }
    ker_trg = kernel_basis(m);
  }
  out.push_back({"exact at Hom(N,F_p)", im_res == ker_trg, im_res.dim(), ker_trg.dim()});

  // image of transgression = kernel of inflation H^2(Q) -> H^2(E)
  const auto info = h2(qg);
  Subspace ker_inf(p, nq * nq);
  {
    FpMatrix m(p, ne * ne, info.cocycle_basis.size());
    for (std::size_t k = 0; k < info.cocycle_basis.size(); ++k) {
      const auto r = ext.e_reducer().remainder(inflate(info.cocycle_basis[k], proj));
      for (std::size_t i = 0; i < ne * ne; ++i) m.at(i, k) = r[i];
    }
    const auto ker = kernel_basis(m);
    for (const auto& c : ker.basis()) {
      Cochain2 z(p, nq, 1);
      for (std::size_t k = 0; k < info.cocycle_basis.size(); ++k) z += info.cocycle_basis[k].scaled(c[k]);
      ker_inf.insert(ext.q_reducer().remainder(z));
    }
  }
  out.push_back({"exact at H2(Q)", ext.trg_image() == ker_inf, ext.trg_image().dim(), ker_inf.dim()});
  return out;
}

SubspaceCheck kernel_equality_check(const PairingContext& ctx) {
  return {"kernel to H2(E) = kernel to H2(G)", ctx.kernel_to_e() == ctx.kernel_to_g(), ctx.kernel_to_e().dim(),
          ctx.kernel_to_g().dim()};
}

CokerKerResult coker_ker_pairing(const PairingContext& small, const PairingContext& big) {
  require(&small.group() == &big.group() && small.rank() == big.rank(), "contexts on different groups or ranks");
  require(small.normal_subgroup().subset_of(big.normal_subgroup()), "contexts are not nested");
  const auto& g = big.group();
  const Scalar p = g.p();
  const std::size_t l2 = big.left_dim();

  // alpha: left basis of the small context, in the big left coordinates
  Subspace im_alpha(p, l2);
  for (Elem r : small.left_basis()) im_alpha.insert(big.left_coordinates(r));
  std::vector<FpVector> full;
  for (std::size_t i = 0; i < l2; ++i) full.push_back(FpVector::unit(p, l2, i));
  const auto coker = quotient_basis(Subspace::span(p, l2, full), im_alpha);

  // beta: inflation along G/R -> G/G_(n)
  const auto& q1 = small.q();
  std::vector<Elem> q1_to_q2(q1.order(), 0);
  for (Elem x = 0; x < g.order(); ++x) q1_to_q2[small.to_q()[x]] = big.to_q()[x];
  const auto& right2 = big.right_basis();
  std::vector<Cochain2> beta;
  FpMatrix bm(p, q1.order() * q1.order(), right2.size());
  for (std::size_t k = 0; k < right2.size(); ++k) {
    beta.push_back(inflate(right2[k].cocycle, q1_to_q2));
    const auto r = small.extension().q_reducer().remainder(beta.back());
    for (std::size_t i = 0; i < r.dim(); ++i) bm.at(i, k) = r[i];
  }
  const auto ker_beta = kernel_basis(bm);

  CokerKerResult res;
  res.commutes = true;
  for (Elem r : small.left_basis())
    for (std::size_t k = 0; k < right2.size(); ++k) {
      try {
        if (pair_via_trg(big, r, right2[k].cocycle) != pair_via_trg(small, r, beta[k])) res.commutes = false;
      } catch (const Error&) {
        res.commutes = false;
      }
    }

  const auto m2 = pairing_matrix(big);
  res.coker_dim = coker.size();
  res.ker_dim = ker_beta.dim();
  res.matrix = FpMatrix(p, res.coker_dim, res.ker_dim);
  for (std::size_t i = 0; i < coker.size(); ++i)
    for (std::size_t j = 0; j < ker_beta.dim(); ++j) res.matrix.at(i, j) = coker[i].dot(m2 * ker_beta.basis()[j]);
  res.rank = rref(res.matrix).rank;
  res.nondegenerate = res.rank == res.coker_dim && res.rank == res.ker_dim;
  return res;
}

}  // namespace zassen
