#pragma once

// Intersections of kernels of representations into U(A), constructive
// separation of elements outside G_(n+1), and the full theorem harness.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "zassen/groupspec.hpp"
#include "zassen/pairing.hpp"

namespace zassen {

struct IntersectionOptions {
  std::size_t max_dim = 1;  // catalog bound D, escalated from 1
  EnumerationOptions enumeration;
  /// Stop as soon as the intersection equals the lower bound.
  bool early_exit = true;
};

struct KernelIntersection {
  Subgroup intersection;
  /// Smallest D at which the intersection reached the lower bound.
  std::optional<std::size_t> sufficient_dim;
  bool standard_sufficed = false;
  std::size_t systems_visited = 0;
  std::uint64_t reps = 0;
  /// Systems whose kernels shrank the running intersection, in visiting order.
  std::vector<MultSystem> systems_needed;
  bool truncated = false;
};

/// Intersection of ker(rho) over rho: G -> U(A), A running over the rank-n
/// catalog. Throws if some kernel misses `lower_bound` (it must contain G_(n+1)).
KernelIntersection intersect_kernels(const FiniteGroup& g, const Subgroup& lower_bound, std::size_t n,
                                     const IntersectionOptions& opts = {});

/// rho: G -> U(A) for the rank-1 system A_12 = F_p, rho(g) = 1 + f(g) e_12.
Representation character_rep(const FiniteGroup& g, const Cochain1& f);
/// Pads with A_{i,k+1} = F_p through repeated rank embeddings up to rank n.
Representation raise_rank(const Representation& r, std::size_t n);

enum class SeparationOutcome { NotApplicable, Separated, Inconclusive };
const char* to_string(SeparationOutcome o);

struct Separation {
  SeparationOutcome outcome = SeparationOutcome::NotApplicable;
  /// sigma in G_(layer) minus G_(layer+1)
  std::size_t layer = 0;
  /// "character" or "massey"
  std::string route;
  /// Catalog bound at which the witness was found (or the bound exhausted).
  std::size_t max_dim = 0;
  std::optional<Representation> rep;
};

class Separator {
 public:
  Separator(const FiniteGroup& g, const Filtration& f, const PairingOptions& opts);

  /// A rank-n representation with rho(sigma) != 1, for sigma outside G_(n+1).
  Separation separate(Elem sigma, std::size_t n);
  /// The context for N = G_(k) at catalog bound D, built on first use.
  const PairingContext& context(std::size_t k, std::size_t max_dim);

 private:
  const FiniteGroup* g_;
  const Filtration* f_;
  PairingOptions opts_;
  std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<PairingContext>> contexts_;
  std::map<std::pair<std::size_t, std::size_t>, FpMatrix> matrices_;
  // (k, D, column) -> lifted representation of G
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::optional<Representation>> lifts_;
  std::vector<Representation> validated_;
};

struct HarnessConfig {
  std::size_t n = 2;
  std::size_t max_dim = 1;
  EnumerationOptions enumeration;
  /// Run separate() on every element outside G_(n+1).
  bool separate_all = true;
};

struct PairingLayer {
  std::size_t k = 0;
  std::size_t left_dim = 0, phi_dim = 0, right_dim = 0, rank = 0;
  std::size_t systems = 0;
  std::uint64_t reps = 0;
  bool truncated = false;
  FpMatrix matrix;
  Verdict left = Verdict::Inconclusive, right = Verdict::Inconclusive;
  std::size_t pairs_compared = 0, pairs_agreeing = 0;  // trg route vs representation route
  std::vector<SubspaceCheck> checks;                   // five-term and kernel equality
  Verdict verdict = Verdict::Inconclusive;
};

struct IntersectionLayer {
  std::size_t k = 0;
  std::size_t expected_order = 0;  // |G_(k+1)|
  KernelIntersection result;
  /// Elements of the catalog intersection outside G_(k+1) that separate() handled.
  std::size_t separated_beyond_catalog = 0;
  Verdict verdict = Verdict::Inconclusive;
};

struct SeparationWitness {
  Elem element = 0;
  Separation separation;
};

struct VerificationReport {
  std::string group_name;
  std::uint64_t group_digest = 0;
  Scalar p = 2;
  std::size_t order = 0;
  std::size_t n = 0;
  std::size_t max_dim = 0;
  std::vector<std::size_t> filtration_orders;
  bool filtrations_agree = false;
  std::string third_oracle;
  HypothesisCheck hypothesis;
  std::vector<Elem> zassenhaus_term;  // G_(n+1)
  std::vector<Elem> intersection;     // over the rank-n catalog
  std::vector<IntersectionLayer> kernel_layers;   // k = 1..n
  std::vector<PairingLayer> pairing_layers;  // k = 2..n
  std::vector<SeparationWitness> witnesses;
  std::size_t separations_attempted = 0, separations_succeeded = 0;
  std::string equivalence;  // "agree", "undetermined" or "disagree"
  Verdict main_theorem = Verdict::Inconclusive;
  Verdict overall = Verdict::Inconclusive;
  std::vector<std::string> problems;
  std::map<std::string, double> timings;  // seconds
};

/// Checks of one pairing context: both pairing routes agree on every
/// (element of N, right basis class) pair, exactness and kernel equalities.
PairingLayer analyse_context(const PairingContext& ctx);

VerificationReport run_theorem_harness(const BuiltGroup& g, const HarnessConfig& cfg);

/// 0 established, 2 inconclusive, 1 falsified
int exit_code(Verdict v);

}  // namespace zassen
