#pragma once

// The pairing N/(N n G_(n+1)) x ker(Phi^n(G/N) -> H^2(G/(N n G_(n+1)))) -> F_p,
// computed through transgression and through lifted representations.

#include <cstddef>
#include <string>
#include <vector>

#include "zassen/cohomology.hpp"
#include "zassen/enumerate.hpp"
#include "zassen/massey.hpp"

namespace zassen {

enum class Verdict { Established, Inconclusive, Falsified };
const char* to_string(Verdict v);

struct PairingOptions {
  std::size_t max_dim = 1;  // catalog bound D
  EnumerationOptions enumeration;
};

struct WitnessedClass {
  Cochain2 cocycle;  // on G/N
  FpVector class_vector;
  DefiningSystem witness;
};

class PairingContext {
 public:
  /// Requires rank >= 2, N normal in G and N <= G_(rank).
  PairingContext(const FiniteGroup& g, const Filtration& filtration, const Subgroup& n, std::size_t rank,
                 const PairingOptions& opts = {});
  PairingContext(const PairingContext&) = delete;
  PairingContext& operator=(const PairingContext&) = delete;

  const FiniteGroup& group() const noexcept { return *g_; }
  const Subgroup& normal_subgroup() const noexcept { return n_; }
  std::size_t rank() const noexcept { return rank_; }
  /// G -> E = G/(N n G_(rank+1))
  const QuotientGroup& to_e() const noexcept { return *e_; }
  const CentralExtension& extension() const noexcept { return *ext_; }
  const FiniteGroup& q() const { return ext_->quotient().group; }
  /// G -> Q = G/N
  const std::vector<Elem>& to_q() const noexcept { return g_to_q_; }

  std::size_t left_dim() const { return ext_->basis().dim(); }
  /// Elements of N whose images form the basis of N/(N n G_(rank+1)).
  const std::vector<Elem>& left_basis() const noexcept { return left_basis_; }
  FpVector left_coordinates(Elem sigma) const;

  /// Basis of the witnessed span of Massey values on Q.
  const std::vector<WitnessedClass>& phi_basis() const noexcept { return phi_basis_; }
  /// Basis of its kernel under inflation to E, each with a witness.
  const std::vector<WitnessedClass>& right_basis() const noexcept { return right_basis_; }
  /// The same kernel computed with inflation to G (coefficients over phi_basis()).
  const Subspace& kernel_to_e() const noexcept { return ker_e_; }
  const Subspace& kernel_to_g() const noexcept { return ker_g_; }

  std::size_t systems_used() const noexcept { return systems_; }
  std::size_t reps_enumerated() const noexcept { return reps_; }
  bool truncated() const noexcept { return truncated_; }

 private:
  const FiniteGroup* g_;
  Subgroup n_;
  std::size_t rank_;
  std::unique_ptr<QuotientGroup> e_;
  std::unique_ptr<CentralExtension> ext_;
  std::vector<Elem> g_to_q_;
  std::vector<Elem> left_basis_;
  std::vector<WitnessedClass> phi_basis_, right_basis_;
  Subspace ker_e_, ker_g_;
  std::size_t systems_ = 0, reps_ = 0;
  bool truncated_ = false;
};

/// trg^{-1}(alpha) evaluated at the image of sigma in E.
Scalar pair_via_trg(const PairingContext& ctx, Elem sigma, const Cochain2& alpha);
/// The lift to E = G/(N n G_(n+1)) of the representation of the witness.
/// Throws if no lift exists or if lifts can disagree on N.
Representation lift_witness(const PairingContext& ctx, const DefiningSystem& witness);
/// -rho_{1,n+1}(sigma) for a lift rho from lift_witness().
Scalar pair_with_lift(const PairingContext& ctx, Elem sigma, const Representation& lift);
/// pair_with_lift(ctx, sigma, lift_witness(ctx, witness))
Scalar pair_via_rep(const PairingContext& ctx, Elem sigma, const DefiningSystem& witness);

/// Rows: left_basis(); columns: right_basis().
FpMatrix pairing_matrix(const PairingContext& ctx);
/// Row rank = left_dim; inconclusive otherwise (the right side is a witnessed under-approximation).
Verdict left_nondegenerate(const PairingContext& ctx);
/// Every nonzero witnessed class pairs nontrivially; failure is falsification.
Verdict right_nondegenerate(const PairingContext& ctx);

struct SubspaceCheck {
  std::string name;
  bool holds = false;
  std::size_t dim_left = 0, dim_right = 0;
};

/// Exactness of 0 -> H^1(Q) -> H^1(E) -> Hom(N_E, F_p) -> H^2(Q) -> H^2(E) at each inner term.
std::vector<SubspaceCheck> five_term_checks(const PairingContext& ctx);
/// Kernels of the witnessed span to H^2(E) and to H^2(G) agree.
SubspaceCheck kernel_equality_check(const PairingContext& ctx);

struct CokerKerResult {
  FpMatrix matrix;  // coker(alpha) basis x ker(beta) basis
  std::size_t coker_dim = 0, ker_dim = 0, rank = 0;
  bool commutes = false;     // <alpha(r), t>_2 = <r, beta(t)>_1 on all basis pairs
  bool nondegenerate = false;
};

/// `small` is the context for N = R (R <= G_(n)), `big` the one for N = G_(n),
/// on the same group and rank.
CokerKerResult coker_ker_pairing(const PairingContext& small, const PairingContext& big);

}  // namespace zassen
