#pragma once

// Defining systems, Massey values, the correspondence between defining
// systems and homomorphisms into U(A)/Z(A), lifting through the center, and
// the span of witnessed Massey values.

#include <optional>
#include <string>
#include <vector>

#include "zassen/cohomology.hpp"
#include "zassen/multsys.hpp"
#include "zassen/representation.hpp"

namespace zassen {

/// Cochains a_ij in C^1(G, A_ij) for (i,j) != (1,n+1).
struct DefiningSystem {
  SystemPtr system;
  std::vector<std::vector<Cochain1>> a;  // a[i][j], 1-based; a[1][n+1] unused

  static DefiningSystem zero(const SystemPtr& sys, std::size_t group_order);
  const Cochain1& at(std::size_t i, std::size_t j) const { return a[i][j]; }
  Cochain1& at(std::size_t i, std::size_t j) { return a[i][j]; }
};

struct Violation {
  std::size_t i = 0, j = 0;
  std::string what;
};

/// a_{i,i+1} cocycles and da_ij = sum_k a_ik u a_kj.
std::optional<Violation> validate(const FiniteGroup& g, const DefiningSystem& m);

/// sum_{k=2}^{n} a_1k u a_{k,n+1}, a 2-cocycle with values in A_{1,n+1}.
Cochain2 massey_cocycle(const DefiningSystem& m);
/// Same as massey_cocycle, after validating m and the cocycle condition.
Cochain2 massey_value(const FiniteGroup& g, const DefiningSystem& m);

/// a_ij = -rho_ij; the input must be a homomorphism into U(A)/Z(A), which is
/// checked unless the caller already knows it (e.g. from the enumerator).
DefiningSystem dwyer_to_system(const FiniteGroup& g, const Representation& rho_bar, bool check = true);
/// rho_ij = -a_ij; the result is checked to be multiplicative.
Representation dwyer_to_rep(const FiniteGroup& g, const DefiningSystem& m);

/// A homomorphism into U(A) over rho_bar, if the Massey value of its defining
/// system is a coboundary; the (1,n+1) entry is -c for the solution c of dc = value.
std::optional<Representation> lift_through_center(const FiniteGroup& g, const CoboundaryReducer& red,
                                                  const Representation& rho_bar);

/// Completes prescribed a_{i,i+1} level by level with particular solutions;
/// fails if some level has no solution for the choices made below it.
std::optional<DefiningSystem> complete_defining_system(const FiniteGroup& g, const CoboundaryReducer& red,
                                                       const SystemPtr& sys,
                                                       const std::vector<Cochain1>& superdiagonal);

/// Direct sum of the two systems away from (1,n+1), where both values are
/// added; its Massey value is the sum of the two.
DefiningSystem phi_sum_witness(const FiniteGroup& g, const DefiningSystem& w1, const DefiningSystem& w2);

/// Span of Massey values of witnessed defining systems (scalar coefficients).
class PhiAccumulator {
 public:
  struct Entry {
    FpVector class_vector;
    Cochain2 cocycle;
    DefiningSystem witness;
  };

  PhiAccumulator(const FiniteGroup& g, const CoboundaryReducer& red);

  /// Returns true if the span grew. Witnesses that grow the span are fully
  /// validated; the others only have their Massey cocycle reduced.
  bool insert(const DefiningSystem& witness);
  const Subspace& span() const noexcept { return span_; }
  /// Entries whose classes form a basis of span().
  const std::vector<Entry>& basis_entries() const noexcept { return entries_; }
  std::size_t inserted() const noexcept { return inserted_; }

 private:
  const FiniteGroup* g_;
  const CoboundaryReducer* red_;
  Subspace span_;
  std::vector<Entry> entries_;
  std::size_t inserted_ = 0;
};

}  // namespace zassen
