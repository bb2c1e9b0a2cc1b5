#include "zassen/verifier.hpp"

#include <algorithm>
#include <chrono>

#include "zassen/error.hpp"

namespace zassen {

namespace {

std::size_t max_slot_dim(const MultSystem& s) {
  std::size_t m = 0;
  for (const auto& sl : s.slots()) m = std::max(m, s.dim(sl.i, sl.j));
  return m;
}

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace

KernelIntersection intersect_kernels(const FiniteGroup& g, const Subgroup& lower_bound, std::size_t n,
                                     const IntersectionOptions& opts) {
  require(n >= 1 && opts.max_dim >= 1, "rank and catalog bound must be positive");
  KernelIntersection res;
  std::vector<char> alive(g.order(), 1);
  std::size_t alive_count = g.order();
  bool done = alive_count == lower_bound.order();
  for (std::size_t dim = 1; dim <= opts.max_dim && !done; ++dim) {
    visit_catalog({g.p(), n, dim, true}, [&](const MultSystem& s) {
      if (dim > 1 && max_slot_dim(s) < dim) return true;  // already seen at a smaller bound
      const bool first = res.systems_visited == 0;
      ++res.systems_visited;
      auto sys = std::make_shared<const MultSystem>(s);
      bool trunc = false;
      const auto reps = enumerate_reps(g, sys, n, opts.enumeration, &trunc);
      res.truncated = res.truncated || trunc;
      bool shrank = false;
      for (const auto& r : reps) {
        ++res.reps;
        for (Elem x : lower_bound.elements())
          if (r.images[x] != 0) throw Error(ErrorKind::Contract, "representation is nontrivial on G_(n+1)");
        for (Elem x = 0; x < g.order(); ++x)
          if (alive[x] && r.images[x] != 0) {
            alive[x] = 0;
            --alive_count;
            shrank = true;
          }
      }
      if (shrank) res.systems_needed.push_back(s);
      done = alive_count == lower_bound.order();
      if (first) res.standard_sufficed = done;
      return !(done && opts.early_exit);
    });
    if (done) res.sufficient_dim = dim;
  }
  std::vector<Elem> elems;
  for (Elem x = 0; x < g.order(); ++x)
    if (alive[x]) elems.push_back(x);
  res.intersection = subgroup_from_elements(g, std::move(elems));
  return res;
}

Representation character_rep(const FiniteGroup& g, const Cochain1& f) {
  require(f.cod_dim() == 1 && f.order() == g.order(), "character must be scalar valued on G");
  auto sys = std::make_shared<const MultSystem>(MultSystem::standard(g.p(), 1));
  Representation r{sys, 1, std::vector<std::uint64_t>(g.order(), 0)};
  for (Elem x = 0; x < g.order(); ++x) r.images[x] = f.at(x, 0);
  return r;
}

Representation raise_rank(const Representation& r, std::size_t n) {
  require(r.system->rank() <= n, "cannot lower the rank");
  Representation out = r;
  while (out.system->rank() < n) {
    const auto emb = embed_lower_rank(*out.system);
    auto target = std::make_shared<const MultSystem>(emb.system);
    out = embed(out, emb, target);
  }
  return out;
}

const char* to_string(SeparationOutcome o) {
  switch (o) {
    case SeparationOutcome::NotApplicable: return "not-applicable";
    case SeparationOutcome::Separated: return "separated";
    case SeparationOutcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

Separator::Separator(const FiniteGroup& g, const Filtration& f, const PairingOptions& opts)
    : g_(&g), f_(&f), opts_(opts) {}

const PairingContext& Separator::context(std::size_t k, std::size_t max_dim) {
  auto& slot = contexts_[{k, max_dim}];
  if (!slot) {
    PairingOptions o = opts_;
    o.max_dim = max_dim;
    slot = std::make_unique<PairingContext>(*g_, *f_, f_->term(k), k, o);
    matrices_[{k, max_dim}] = pairing_matrix(*slot);
  }
  return *slot;
}

Separation Separator::separate(Elem sigma, std::size_t n) {
  const auto& g = *g_;
  const auto& f = *f_;
  Separation out;
  if (f.term(n + 1).contains(sigma)) return out;
  std::size_t k = 1;
  while (f.term(k + 1).contains(sigma)) ++k;
  out.layer = k;
  const PrimeField fp(g.p());

  std::optional<Representation> rho;
  if (k == 1) {
    out.route = "character";
    const auto eq = elementary_quotient_basis(g, f.term(1), f.term(2));
    const auto c = eq.coordinates(sigma);
    std::size_t i = 0;
    while (c[i] == 0) ++i;
    const Scalar scale = fp.inv(c[i]);
    Cochain1 chi(g.p(), g.order(), 1);
    for (Elem x = 0; x < g.order(); ++x) chi.at(x, 0) = fp.mul(eq.coordinates(x)[i], scale);
    rho = character_rep(g, chi);
  } else {
    out.route = "massey";
    for (std::size_t dim = 1; dim <= opts_.max_dim && !rho; ++dim) {
      out.max_dim = dim;
      const auto& ctx = context(k, dim);
      const auto& m = matrices_.at({k, dim});
      const auto coords = ctx.left_coordinates(sigma);
      for (std::size_t col = 0; col < m.cols() && !rho; ++col) {
        Scalar v = 0;
        for (std::size_t i = 0; i < m.rows(); ++i) v = fp.add(v, fp.mul(coords[i], m.at(i, col)));
        if (v == 0) continue;
        auto& cached = lifts_[{k, dim, col}];
        if (!cached) cached = pull_back(lift_witness(ctx, ctx.right_basis()[col].witness), ctx.to_e().projection);
        if (cached->entry(sigma, 1, k + 1)[0] != fp.neg(v))
          throw Error(ErrorKind::Contract, "corner entry disagrees with the pairing");
        rho = *cached;
      }
    }
    if (!rho) {
      out.outcome = SeparationOutcome::Inconclusive;
      return out;
    }
  }
  auto full = raise_rank(*rho, n);
  // validated once per distinct representation
  const bool seen = std::any_of(validated_.begin(), validated_.end(), [&](const Representation& r) {
    return r.images == full.images && *r.system == *full.system;
  });
  if (!seen) {
    if (!is_homomorphism(g, full)) throw Error(ErrorKind::Contract, "separating map is not a homomorphism");
    validated_.push_back(full);
  }
  if (full.images[sigma] == 0) throw Error(ErrorKind::Contract, "representation does not separate");
  if (out.max_dim == 0) out.max_dim = 1;
  out.outcome = SeparationOutcome::Separated;
  out.rep = std::move(full);
  return out;
}

PairingLayer analyse_context(const PairingContext& ctx) {
  PairingLayer L;
  L.k = ctx.rank();
  L.left_dim = ctx.left_dim();
  L.phi_dim = ctx.phi_basis().size();
  L.right_dim = ctx.right_basis().size();
  L.systems = ctx.systems_used();
  L.reps = ctx.reps_enumerated();
  L.truncated = ctx.truncated();
  L.matrix = pairing_matrix(ctx);
  L.rank = rref(L.matrix).rank;
  L.left = left_nondegenerate(ctx);
  L.right = right_nondegenerate(ctx);
  const auto& elems = ctx.normal_subgroup().elements();
  for (const auto& alpha : ctx.right_basis()) {
    L.pairs_compared += elems.size();
    std::optional<Representation> lift;
    try {
      lift = lift_witness(ctx, alpha.witness);
    } catch (const Error&) {
      continue;
    }
    // pair_via_trg with trg^-1(alpha) hoisted out of the loop
    const auto phi = ctx.extension().trg_inverse(alpha.cocycle);
    for (Elem sigma : elems)
      if (phi.dot(ctx.left_coordinates(sigma)) == pair_with_lift(ctx, sigma, *lift)) ++L.pairs_agreeing;
  }
  L.checks = five_term_checks(ctx);
  L.checks.push_back(kernel_equality_check(ctx));
  const bool checks_ok =
      std::all_of(L.checks.begin(), L.checks.end(), [](const SubspaceCheck& c) { return c.holds; });
  if (L.right == Verdict::Falsified || !checks_ok || L.pairs_agreeing != L.pairs_compared)
    L.verdict = Verdict::Falsified;
  else
    L.verdict = L.left;
  return L;
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Established: return 0;
    case Verdict::Inconclusive: return 2;
    case Verdict::Falsified: return 1;
  }
  return 1;
}

VerificationReport run_theorem_harness(const BuiltGroup& bg, const HarnessConfig& cfg) {
  require(cfg.n >= 1, "n must be at least 1");
  const Stopwatch total;
  const auto& g = bg.group;
  VerificationReport rep;
  rep.group_name = bg.spec.name();
  rep.group_digest = g.digest();
  rep.p = g.p();
  rep.order = g.order();
  rep.n = cfg.n;
  rep.max_dim = cfg.max_dim;
  rep.third_oracle = bg.third_oracle_name;

  Stopwatch sw;
  const auto f = zassenhaus_recursive(g);
  rep.filtrations_agree = f == zassenhaus_lazard(g) && f == bg.third_oracle;
  rep.filtration_orders = f.orders();
  if (!rep.filtrations_agree) rep.problems.push_back("filtration oracles disagree");
  rep.hypothesis = check_hypothesis(bg, f, cfg.n);
  rep.zassenhaus_term = f.term(cfg.n + 1).elements();
  rep.timings["filtration"] = sw.seconds();

  const PairingOptions popts{cfg.max_dim, cfg.enumeration};
  Separator sep(g, f, popts);

  sw = Stopwatch();
  bool all2 = true, trunc = false;
  for (std::size_t k = 1; k <= cfg.n; ++k) {
    IntersectionLayer L;
    L.k = k;
    const auto& lower = f.term(k + 1);
    L.expected_order = lower.order();
    L.result = intersect_kernels(g, lower, k, {cfg.max_dim, cfg.enumeration, true});
    trunc = trunc || L.result.truncated;
    bool all = true;
    for (Elem x : L.result.intersection.elements()) {
      if (lower.contains(x)) continue;
      if (sep.separate(x, k).outcome == SeparationOutcome::Separated)
        ++L.separated_beyond_catalog;
      else
        all = false;
    }
    L.verdict = all ? Verdict::Established : Verdict::Inconclusive;
    all2 = all2 && all;
    rep.kernel_layers.push_back(std::move(L));
  }
  rep.intersection = rep.kernel_layers.back().result.intersection.elements();
  rep.timings["intersection"] = sw.seconds();

  sw = Stopwatch();
  bool all1 = true, falsified = false;
  for (std::size_t k = 2; k <= cfg.n; ++k) {
    auto L = analyse_context(sep.context(k, cfg.max_dim));
    trunc = trunc || L.truncated;
    all1 = all1 && L.verdict == Verdict::Established;
    if (L.verdict == Verdict::Falsified) {
      falsified = true;
      rep.problems.push_back("pairing checks failed at k = " + std::to_string(k));
    }
    rep.pairing_layers.push_back(std::move(L));
  }
  rep.timings["pairing"] = sw.seconds();

  sw = Stopwatch();
  bool all_separated = true;
  if (cfg.separate_all) {
    const auto& top = f.term(cfg.n + 1);
    for (Elem x = 0; x < g.order(); ++x) {
      if (top.contains(x)) continue;
      ++rep.separations_attempted;
      auto s = sep.separate(x, cfg.n);
      if (s.outcome == SeparationOutcome::Separated)
        ++rep.separations_succeeded;
      else
        all_separated = false;
      rep.witnesses.push_back({x, std::move(s)});
    }
  }
  rep.timings["separation"] = sw.seconds();

  if (all1 == all2)
    rep.equivalence = all1 ? "agree" : "undetermined";
  else
    rep.equivalence = trunc ? "undetermined" : "disagree";
  if (rep.equivalence == "disagree") rep.problems.push_back("the two statements disagree");

  const bool main_ok = rep.kernel_layers.back().verdict == Verdict::Established && all_separated;
  rep.main_theorem = main_ok ? Verdict::Established : Verdict::Inconclusive;
  if (!rep.filtrations_agree || falsified || rep.equivalence == "disagree")
    rep.overall = Verdict::Falsified;
  else if (main_ok && all1 && all2)
    rep.overall = Verdict::Established;
  else
    rep.overall = Verdict::Inconclusive;
  rep.timings["total"] = total.seconds();
  return rep;
}

}  // namespace zassen
