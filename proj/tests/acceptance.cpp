// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zassen/enumerate.hpp"
#include "zassen/io.hpp"
#include "zassen/magnus.hpp"
#include "zassen/massey.hpp"
#include "zassen/verifier.hpp"

using namespace zassen;

namespace {

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

// pinned limits
constexpr double kFiltrationSeconds = 60;
constexpr double kMainSeconds = 300;
constexpr double kP3Seconds = 120;
constexpr std::size_t kRandomInstances = 1000;
constexpr std::uint64_t kSeed = 0x2a55e7;
constexpr std::uint64_t kUOrderCap = 4096;
// share of the p=2, n=3, D=2 slice checked exactly unless --exhaustive
constexpr std::uint64_t kSampleOneIn = 256;

int failures = 0;
std::set<int> selected;

bool wanted(std::initializer_list<int> ids) {
  if (selected.empty()) return true;
  for (int i : ids)
    if (selected.count(i)) return true;
  return false;
}

std::map<int, std::string> lines;

void report(int id, bool ok, const std::string& what) {
  if (!wanted({id})) return;
  lines[id] = std::string(ok ? "PASS" : "FAIL") + "  criterion " + (id < 10 ? " " : "") + std::to_string(id) + "  " + what;
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SystemPtr share(MultSystem s) { return std::make_shared<const MultSystem>(std::move(s)); }

std::vector<GroupSpec> test_groups() {
  return {GroupSpec::magnus(2, 2, 2), GroupSpec::magnus(2, 2, 3), GroupSpec::magnus(2, 2, 4),
          GroupSpec::magnus(3, 2, 3), GroupSpec::cyclic(2, 4),    GroupSpec::unipotent(2, 3),
          GroupSpec::unipotent(2, 4)};
}

// ---------------------------------------------------------------- 1

void filtration_oracles() {
  const auto t = Clock::now();
  std::size_t agree = 0, total = 0;
  std::string orders;
  for (const auto& spec : test_groups()) {
    const auto bg = build_group(spec);
    const auto a = zassenhaus_recursive(bg.group);
    const auto b = zassenhaus_lazard(bg.group);
    const auto& c = bg.third_oracle;
    const std::size_t len = std::max({a.length(), b.length(), c.length()}) + 1;
    bool ok = true;
    for (std::size_t k = 1; k <= len; ++k) ok = ok && a.term(k) == b.term(k) && b.term(k) == c.term(k);
    agree += ok;
    ++total;
    orders += " " + spec.name() + "=" + std::to_string(bg.group.order());
  }
  const double s = since(t);
  report(1, agree == total && s < kFiltrationSeconds,
         fmt("three-way filtration equality on %zu/%zu groups (%s ) in %.2fs, limit %.0fs", agree, total,
             orders.c_str(), s, kFiltrationSeconds));
}

// ---------------------------------------------------------------- 2

UElement random_in_level(const SystemPtr& sys, std::size_t d, std::mt19937_64& rng) {
  std::vector<Scalar> c(sys->total_dim(), 0);
  const std::size_t from = d > sys->rank() ? sys->total_dim() : sys->level_prefix(d - 1);
  for (std::size_t t = from; t < c.size(); ++t) c[t] = static_cast<Scalar>(rng() % sys->p());
  return UElement(VElement(sys, std::move(c), std::min(d, sys->rank() + 1)));
}

struct ExactTally {
  std::size_t systems = 0, violations = 0;
};

// U(A)_(n+1) = 1 and Ubar(A)_(n) = 1
bool exact_filtration_ok(const MultSystem& s) {
  const std::size_t n = s.rank();
  if (!zassenhaus_recursive(u_group(s, n)).term(n + 1).is_trivial()) return false;
  if (n == 1) return true;  // Ubar is trivial
  return zassenhaus_recursive(u_group(s, n - 1)).term(n).is_trivial();
}

void filtration_of_u(bool exhaustive) {
  std::mt19937_64 rng(kSeed);
  std::size_t comm_bad = 0, pow_bad = 0;
  for (std::size_t i = 0; i < kRandomInstances; ++i) {
    const Scalar p = rng() % 2 ? 3 : 2;
    const std::size_t n = 1 + rng() % 3, D = 1 + rng() % 2;
    MultSystem::Dims dims(n + 2, std::vector<std::size_t>(n + 2, 0));
    for (std::size_t i2 = 1; i2 <= n; ++i2)
      for (std::size_t j = i2 + 1; j <= n + 1; ++j) dims[i2][j] = (i2 == 1 && j == n + 1) ? 1 : 1 + rng() % D;
    const auto sys = share(random_system(p, n, dims, rng));
    const std::size_t d = 1 + rng() % n, d2 = 1 + rng() % n, k = 1 + rng() % 2;
    const auto u = random_in_level(sys, d, rng), v = random_in_level(sys, d2, rng);
    if (u_comm(u, v).a().exact_level() < std::min(d + d2, n + 1)) ++comm_bad;
    std::uint64_t pk = 1;
    for (std::size_t e = 0; e < k; ++e) pk *= p;
    if (u_pow(u, pk).a().exact_level() < std::min<std::uint64_t>(d * pk, n + 1)) ++pow_bad;
  }

  const auto t = Clock::now();
  ExactTally tally;
  std::size_t in_scope = 0;
  std::uint64_t big_slice = 0, big_checked = 0;
  std::mt19937_64 pick(kSeed + 1);
  for (Scalar p : {2, 3})
    for (std::size_t n = 1; n <= 3; ++n)
      for (std::size_t D = 1; D <= 2; ++D) {
        CatalogOptions o{p, n, D, true};
        std::size_t cap = 0;
        for (std::uint64_t v = p; v <= kUOrderCap; v *= p) ++cap;
        o.max_total_dim = cap;
        const bool sampled = !exhaustive && p == 2 && n == 3 && D == 2;
        visit_catalog(o, [&](const MultSystem& s) {
          if (s.u_order() > kUOrderCap) return true;
          ++in_scope;
          if (sampled) {
            ++big_slice;
            if (pick() % kSampleOneIn != 0) return true;
            ++big_checked;
          }
          ++tally.systems;
          if (!exact_filtration_ok(s)) ++tally.violations;
          return true;
        });
      }
  const bool ok = comm_bad == 0 && pow_bad == 0 && tally.violations == 0;
  std::string coverage = exhaustive ? std::string("all of them")
                                    : fmt("all except p=2 n=3 D=2, where %llu of %llu were drawn (seeded, 1 in %llu)",
                                          (unsigned long long)big_checked, (unsigned long long)big_slice,
                                          (unsigned long long)kSampleOneIn);
  report(2, ok,
         fmt("%zu random instances: %zu commutator and %zu power violations; exact U_(n+1)=1, Ubar_(n)=1 on %zu of "
             "%zu systems with |U|<=%llu (%s): %zu violations, %.1fs",
             kRandomInstances, comm_bad, pow_bad, tally.systems, in_scope, (unsigned long long)kUOrderCap,
             coverage.c_str(), tally.violations, since(t)));
}

// ---------------------------------------------------------------- 3

bool operator==(const DefiningSystem& a, const DefiningSystem& b) {
  const std::size_t n = a.system->rank();
  for (const auto& s : a.system->slots())
    if (!(s.i == 1 && s.j == n + 1) && !(a.at(s.i, s.j) == b.at(s.i, s.j))) return false;
  return true;
}

struct DwyerTally {
  std::size_t pairs = 0, defining = 0, homs = 0, exceptions = 0;
};

// Enumerates defining systems by solving da_ij = sum_k a_ik u a_kj slot by slot,
// independently of the homomorphism enumerator, and matches them against it.
void dwyer_pair(const FiniteGroup& g, const CoboundaryReducer& red, const SystemPtr& sys, DwyerTally& tally) {
  const std::size_t n = sys->rank();
  const Scalar p = sys->p();
  const auto& gens = g.generators();
  std::vector<Slot> slots;
  for (const auto& s : sys->slots())
    if (!(s.i == 1 && s.j == n + 1)) slots.push_back(s);
  std::stable_sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) { return a.j - a.i < b.j - b.i; });

  std::vector<Cochain1> homs;
  {
    const auto basis = red.homomorphisms();
    std::vector<Scalar> coef(basis.size(), 0);
    for (;;) {
      Cochain1 h(p, g.order(), 1);
      for (std::size_t b = 0; b < basis.size(); ++b) h += basis[b].scaled(coef[b]);
      homs.push_back(h);
      std::size_t b = basis.size();
      while (b > 0 && ++coef[b - 1] == p) coef[--b] = 0;
      if (b == 0) break;
    }
  }

  const std::size_t bar_width = sys->level_prefix(n - 1);
  std::uint64_t bar_base = 1;
  for (std::size_t t = 0; t < bar_width; ++t) bar_base *= p;

  std::set<std::vector<std::uint64_t>> liftable;
  for (auto imgs : enumerate_homomorphisms(g, sys, n).generator_images) {
    for (auto& c : imgs) c %= bar_base;
    liftable.insert(imgs);
  }
  const auto bar = enumerate_homomorphisms(g, sys, n - 1);
  const std::set<std::vector<std::uint64_t>> bar_set(bar.generator_images.begin(), bar.generator_images.end());

  std::set<std::vector<std::uint64_t>> image;
  std::size_t defining = 0, exceptions = 0;
  auto m = DefiningSystem::zero(sys, g.order());
  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (idx == slots.size()) {
      ++defining;
      if (validate(g, m)) {
        ++exceptions;
        return;
      }
      try {
        const auto rho = dwyer_to_rep(g, m);
        std::vector<std::uint64_t> imgs;
        for (Elem x : gens) imgs.push_back(rho.images[x]);
        if (!image.insert(imgs).second) ++exceptions;  // not injective
        const bool zero = red.is_coboundary(massey_cocycle(m));
        if (zero != liftable.count(imgs) > 0) ++exceptions;
        if (!(dwyer_to_system(g, rho) == m)) ++exceptions;
      } catch (const Error&) {
        ++exceptions;
      }
      return;
    }
    const auto [i, j] = slots[idx];
    Cochain2 z(p, g.order(), 1);
    for (std::size_t k = i + 1; k < j; ++k) z += cup(m.at(i, k), m.at(k, j), sys->pairing(i, k, j));
    const auto c = red.solve(z);
    if (!c) return;
    for (const auto& h : homs) {
      m.at(i, j) = *c;
      m.at(i, j) += h;
      rec(idx + 1);
    }
    m.at(i, j) = Cochain1(p, g.order(), 1);
  };
  rec(0);
  if (image != bar_set || defining != bar_set.size()) ++exceptions;
  ++tally.pairs;
  tally.defining += defining;
  tally.homs += bar_set.size();
  tally.exceptions += exceptions;
}

void dwyer_correspondence() {
  const auto t = Clock::now();
  DwyerTally tally;
  std::string names;
  for (const auto& spec : test_groups()) {
    const auto bg = build_group(spec);
    if (bg.group.order() > 32) continue;
    names += " " + spec.name();
    const CoboundaryReducer red(bg.group);
    for (std::size_t n = 2; n <= 3; ++n)
      visit_catalog({spec.p, n, 1, true}, [&](const MultSystem& s) {
        dwyer_pair(bg.group, red, share(s), tally);
        return true;
      });
  }
  report(3, tally.exceptions == 0 && tally.defining == tally.homs,
         fmt("Dwyer correspondence on %zu (group, system) pairs over {%s }: %zu defining systems, %zu "
             "homomorphisms into U/Z, %zu exceptions (bijection, Massey class zero iff lift), %.1fs",
             tally.pairs, names.c_str(), tally.defining, tally.homs, tally.exceptions, since(t)));
}

// ---------------------------------------------------------------- 4, 8, 9

struct ContextSet {
  std::vector<std::string> names;
  std::size_t five_term_failures = 0, five_term_total = 0;
  std::size_t right_failures = 0;
};

void record_checks(ContextSet& cs, const std::string& name, const std::vector<SubspaceCheck>& checks) {
  cs.names.push_back(name);
  for (const auto& c : checks) {
    ++cs.five_term_total;
    if (!c.holds) ++cs.five_term_failures;
  }
}

void record_context(ContextSet& cs, const std::string& name, const PairingContext& ctx) {
  auto checks = five_term_checks(ctx);
  checks.push_back(kernel_equality_check(ctx));
  record_checks(cs, name, checks);
  if (right_nondegenerate(ctx) != Verdict::Established) ++cs.right_failures;
}

// every (sigma, alpha) with alpha running over the whole witnessed right span
std::pair<std::size_t, std::size_t> compare_routes(const PairingContext& ctx) {
  const auto& g = ctx.group();
  const auto& rb = ctx.right_basis();
  const Scalar p = g.p();
  std::size_t compared = 0, agreed = 0;
  std::vector<Scalar> coef(rb.size(), 0);
  for (;;) {
    std::size_t b = rb.size();
    while (b > 0 && ++coef[b - 1] == p) coef[--b] = 0;
    if (b == 0) break;
    std::optional<DefiningSystem> w;
    Cochain2 alpha;
    for (std::size_t i = 0; i < rb.size(); ++i)
      for (Scalar c = 0; c < coef[i]; ++c) {
        if (!w) {
          w = rb[i].witness;
          alpha = rb[i].cocycle;
        } else {
          w = phi_sum_witness(ctx.q(), *w, rb[i].witness);
          alpha += rb[i].cocycle;
        }
      }
    for (Elem s : ctx.normal_subgroup().elements()) {
      ++compared;
      agreed += pair_via_trg(ctx, s, alpha) == pair_via_rep(ctx, s, *w);
    }
  }
  return {compared, agreed};
}

struct HarnessRun {
  BuiltGroup group;
  VerificationReport report;
  double seconds = 0;
};

HarnessRun harness(const GroupSpec& spec, std::size_t n) {
  HarnessRun r{build_group(spec), {}, 0};
  const auto t = Clock::now();
  r.report = run_theorem_harness(r.group, {n, 1, {}, true});
  r.seconds = since(t);
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  bool exhaustive = false;
  app.add_flag("--exhaustive", exhaustive, "check every catalog system with |U| <= 4096 exactly (hours)");
  app.add_option("--only", selected, "criteria to run");
  CLI11_PARSE(app, argc, argv);

  if (wanted({1})) filtration_oracles();
  if (wanted({2})) filtration_of_u(exhaustive);
  if (wanted({3})) dwyer_correspondence();

  ContextSet contexts;

  // 4
  if (wanted({4, 8, 9})) {
    const auto z4 = build_cyclic_group(2, 4);
    const auto fz = zassenhaus_recursive(z4);
    PairingContext cz(z4, fz, fz.term(2), 2);
    const auto [c1, a1] = compare_routes(cz);
    record_context(contexts, "Z/4 N=G_(2)", cz);

    const auto s4 = build_magnus_group(2, 2, 4).group;
    const auto fs = zassenhaus_recursive(s4);
    PairingContext big(s4, fs, fs.term(2), 2);
    const auto [c2, a2] = compare_routes(big);
    record_context(contexts, "magnus(2,2,4) N=G_(2)", big);
    report(4, c1 == a1 && c2 == a2 && c1 > 0 && c2 > 0,
           fmt("transgression route = representation route: Z/4 %zu/%zu, magnus(2,2,4) %zu/%zu (sigma in N, alpha "
               "over the witnessed span)",
               a1, c1, a2, c2));

    // 8
    const std::size_t layer = fs.term(2).order() / fs.term(3).order();
    std::size_t layer_dim = 0;
    for (std::size_t q = layer; q > 1; q /= 2) ++layer_dim;
    const std::size_t rank = rref(pairing_matrix(big)).rank;
    PairingContext small3(s4, fs, fs.term(3), 2);
    const auto r3 = coker_ker_pairing(small3, big);
    record_context(contexts, "magnus(2,2,4) N=G_(3)", small3);
    const auto rc = normal_closure(s4, {s4.comm(s4.generators()[0], s4.generators()[1])});
    PairingContext smallc(s4, fs, rc, 2);
    const auto rcc = coker_ker_pairing(smallc, big);
    record_context(contexts, "magnus(2,2,4) N=<<[x1,x2]>>", smallc);
    const bool right_ok = right_nondegenerate(cz) == Verdict::Established &&
                          right_nondegenerate(big) == Verdict::Established &&
                          right_nondegenerate(small3) == Verdict::Established &&
                          right_nondegenerate(smallc) == Verdict::Established;
    report(8, rank == 3 && layer_dim == 3 && r3.commutes && rcc.commutes && right_ok,
           fmt("S-context rank %zu, dim G_(2)/G_(3) = %zu; coker/ker commutes for R=G_(3) (%zux%zu, rank %zu) "
               "and R=<<[x1,x2]>> (%zux%zu, rank %zu); right non-degeneracy on 4/4 spans: %s",
               rank, layer_dim, r3.coker_dim, r3.ker_dim, r3.rank, rcc.coker_dim, rcc.ker_dim, rcc.rank,
               right_ok ? "holds" : "FAILS"));
  }

  // 5
  if (wanted({5})) {
    std::size_t ok = 0, total = 0;
    for (const auto& spec : test_groups()) {
      const auto bg = build_group(spec);
      const auto f = zassenhaus_recursive(bg.group);
      const auto res = intersect_kernels(bg.group, f.term(2), 1);
      ok += res.intersection == f.term(2) && !res.truncated;
      ++total;
    }
    report(5, ok == total, fmt("n=1: kernel intersection over the rank-1 catalog equals G_(2) on %zu/%zu groups", ok,
                               total));
  }

  // 6
  std::optional<HarnessRun> main1;
  if (wanted({6, 9, 10})) {
    main1 = harness(GroupSpec::magnus(2, 2, 4), 2);
    const auto& r = main1->report;
    const auto f = zassenhaus_recursive(main1->group.group);
    const auto& layer = r.kernel_layers.back().result;
    const bool ok = r.intersection == f.term(3).elements() && r.intersection.size() == 4 &&
                    r.separations_attempted == 124 && r.separations_succeeded == 124 &&
                    r.overall == Verdict::Established && main1->seconds < kMainSeconds;
    report(6, ok,
           fmt("magnus(2,2,4) n=2: intersection order %zu (= G_(3): %s), separated %zu/%zu, verdict %s, %.3fs (limit "
               "%.0fs); standard system alone sufficed: %s, sufficient D = %zu",
               r.intersection.size(), r.intersection == f.term(3).elements() ? "yes" : "no", r.separations_succeeded,
               r.separations_attempted, to_string(r.overall), main1->seconds, kMainSeconds,
               layer.standard_sufficed ? "yes" : "no", layer.sufficient_dim.value_or(0)));
    for (const auto& pl : r.pairing_layers) {
      record_checks(contexts, fmt("magnus(2,2,4) harness k=%zu", pl.k), pl.checks);
      if (pl.right == Verdict::Falsified) ++contexts.right_failures;
    }
  }

  // 7
  if (wanted({7, 9})) {
    const auto run = harness(GroupSpec::magnus(3, 2, 3), 2);
    const auto& r = run.report;
    const bool ok = r.intersection.size() == 1 && r.zassenhaus_term.size() == 1 && r.overall == Verdict::Established &&
                    run.seconds < kP3Seconds;
    report(7, ok,
           fmt("magnus(3,2,3) n=2: intersection order %zu, G_(3) order %zu, separated %zu/%zu, verdict %s, %.3fs "
               "(limit %.0fs)",
               r.intersection.size(), r.zassenhaus_term.size(), r.separations_succeeded, r.separations_attempted,
               to_string(r.overall), run.seconds, kP3Seconds));
    for (const auto& pl : r.pairing_layers) {
      record_checks(contexts, fmt("magnus(3,2,3) harness k=%zu", pl.k), pl.checks);
      if (pl.right == Verdict::Falsified) ++contexts.right_failures;
    }
  }

  // 9
  report(9, contexts.five_term_failures == 0 && contexts.five_term_total > 0,
         fmt("five-term exactness and kernel equalities: %zu/%zu checks hold over %zu contexts",
             contexts.five_term_total - contexts.five_term_failures, contexts.five_term_total,
             contexts.names.size()));

  // 10
  if (wanted({10})) {
    const auto again = harness(GroupSpec::magnus(2, 2, 4), 2);
    const auto a = canonical_dump(to_json(main1->report, main1->group.group));
    const auto b = canonical_dump(to_json(again.report, again.group.group));
    report(10, a == b, fmt("two magnus(2,2,4) n=2 runs give %s reports (%zu bytes, timings excluded)",
                           a == b ? "byte-identical" : "DIFFERENT", a.size()));
  }

  for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
  std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
