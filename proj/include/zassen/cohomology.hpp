#pragma once

// Normalized inhomogeneous cochains of degree 1 and 2 with trivial action on
// F_p^k, coboundaries, cup products, canonical class representatives,
// inflation and transgression.

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "zassen/group.hpp"
#include "zassen/linalg.hpp"
#include "zassen/multsys.hpp"

namespace zassen {

class Cochain1 {
 public:
  Cochain1() = default;
  Cochain1(Scalar p, std::size_t order, std::size_t cod_dim);

  Scalar p() const noexcept { return p_; }
  std::size_t order() const noexcept { return order_; }
  std::size_t cod_dim() const noexcept { return cod_; }
  Scalar at(Elem g, std::size_t t) const { return v_[g * cod_ + t]; }
  Scalar& at(Elem g, std::size_t t) { return v_[g * cod_ + t]; }
  FpVector value(Elem g) const;
  void set(Elem g, const FpVector& x);
  bool is_zero() const noexcept;
  Cochain1& operator+=(const Cochain1& o);
  Cochain1 scaled(Scalar c) const;
  Cochain1 operator-() const { return scaled(p_ - 1); }
  friend bool operator==(const Cochain1&, const Cochain1&) = default;

 private:
  Scalar p_ = 2;
  std::size_t order_ = 0, cod_ = 0;
  std::vector<Scalar> v_;
};

class Cochain2 {
 public:
  Cochain2() = default;
  Cochain2(Scalar p, std::size_t order, std::size_t cod_dim);

  Scalar p() const noexcept { return p_; }
  std::size_t order() const noexcept { return order_; }
  std::size_t cod_dim() const noexcept { return cod_; }
  Scalar at(Elem g, Elem h, std::size_t t) const { return v_[(g * order_ + h) * cod_ + t]; }
  Scalar& at(Elem g, Elem h, std::size_t t) { return v_[(g * order_ + h) * cod_ + t]; }
  FpVector value(Elem g, Elem h) const;
  bool is_zero() const noexcept;
  bool is_normalized() const;
  /// Component t as a vector of length order^2.
  FpVector component(std::size_t t) const;
  Cochain2& operator+=(const Cochain2& o);
  Cochain2& operator-=(const Cochain2& o);
  Cochain2 scaled(Scalar c) const;
  friend bool operator==(const Cochain2&, const Cochain2&) = default;

 private:
  Scalar p_ = 2;
  std::size_t order_ = 0, cod_ = 0;
  std::vector<Scalar> v_;
};

/// (da)(g,h) = a(g) + a(h) - a(gh)
Cochain2 d1(const FiniteGroup& g, const Cochain1& a);
/// (dc)(g,h,k) = c(h,k) - c(gh,k) + c(g,hk) - c(g,h), flattened (g,h,k,t).
std::vector<Scalar> d2(const FiniteGroup& g, const Cochain2& c);
bool is_cocycle(const FiniteGroup& g, const Cochain2& c);
/// (a u b)(g,h) = mu(a(g), b(h))
Cochain2 cup(const Cochain1& a, const Cochain1& b, const BilinearMap& mu);

/// Reduces 2-cochains modulo coboundaries to a canonical representative.
///
/// A spanning tree of the Cayley graph fixes a 1-cochain c0 with z - dc0 = 0
/// on tree edges; what is left is reduced against the (small) space of
/// coboundaries of tree-extended cochains. Two cocycles are cohomologous iff
/// their remainders agree.
class CoboundaryReducer {
 public:
  explicit CoboundaryReducer(const FiniteGroup& g);

  const FiniteGroup& group() const noexcept { return *g_; }
  /// Canonical remainder of a scalar 2-cochain (length order^2).
  FpVector remainder(const Cochain2& z, std::size_t component = 0) const;
  /// Concatenated remainders of all components.
  FpVector class_vector(const Cochain2& z) const;
  bool is_coboundary(const Cochain2& z) const;
  /// Some c with dc = z, if z is a coboundary.
  std::optional<Cochain1> solve(const Cochain2& z) const;
  /// Basis of Hom(G, F_p).
  std::vector<Cochain1> homomorphisms() const;

 private:
  Cochain1 extend(const std::vector<Scalar>& gen_values) const;  // scalar cochain
  FpVector tree_correction(const Cochain2& z, std::size_t component, Cochain1* c0) const;

  const FiniteGroup* g_;
  std::vector<std::size_t> slot_of_gen_;  // generator -> slot or npos (identity)
  std::size_t slots_ = 0;
  std::vector<FpVector> boundary_;  // d(extend(e_s)) per slot
  // reduced echelon basis of the span of boundary_, with the slot combination
  // producing each basis vector
  std::vector<FpVector> basis_, combo_;
  std::vector<std::size_t> pivots_;
  std::vector<FpVector> hom_combos_;
};

/// dim H^1(G, F_p)
std::size_t h1_dim(const FiniteGroup& g);

struct H2Info {
  std::size_t dim = 0;
  /// Span of canonical remainders of a cocycle basis.
  Subspace classes;
  std::vector<Cochain2> cocycle_basis;  // representatives of a basis of H^2
};

/// H^2(G, F_p) by linear algebra on all normalized 2-cochains; only for small G.
/// `full_d2` uses every cocycle condition, otherwise only those with a generator
/// in the first argument (which suffice).
H2Info h2(const FiniteGroup& g, bool full_d2 = false, std::size_t max_order = 128);

/// z(pi(g), pi(h))
Cochain2 inflate(const Cochain2& z, const std::vector<Elem>& projection);
Cochain1 inflate1(const Cochain1& a, const std::vector<Elem>& projection);
/// Zero outside H.
Cochain1 restrict1(const Cochain1& a, const Subgroup& h);

/// E with a central elementary abelian subgroup N, Q = E/N.
class CentralExtension {
 public:
  CentralExtension(const FiniteGroup& e, const Subgroup& n);

  const FiniteGroup& group() const noexcept { return *e_; }
  const Subgroup& kernel() const noexcept { return n_; }
  const QuotientGroup& quotient() const noexcept { return *q_; }
  const ElementaryQuotient& basis() const noexcept { return basis_; }
  const std::vector<Elem>& section() const noexcept { return section_; }
  const CoboundaryReducer& q_reducer() const noexcept { return *q_red_; }
  const CoboundaryReducer& e_reducer() const noexcept { return *e_red_; }

  /// phi in Hom(N, F_p) given by its values on basis().
  Scalar evaluate(const FpVector& phi, Elem n) const;
  /// c(q1,q2) = phi(s(q1 q2) (s(q1) s(q2))^-1), a cocycle on Q.
  Cochain2 trg(const FpVector& phi) const;
  /// Same with an arbitrary normalized section (for the independence check).
  Cochain2 trg_with_section(const FpVector& phi, const std::vector<Elem>& section) const;
  /// Unique phi with [trg(phi)] = [alpha]; throws NotTransgressive.
  FpVector trg_inverse(const Cochain2& alpha) const;
  /// Span of the classes trg(phi) inside the canonical remainders on Q.
  const Subspace& trg_image() const noexcept { return trg_image_; }
  bool inflation_vanishes(const Cochain2& alpha) const;
  /// Values of a homomorphism E -> F_p on basis().
  FpVector restrict_to_kernel(const Cochain1& a) const;

 private:
  const FiniteGroup* e_;
  Subgroup n_;
  std::unique_ptr<QuotientGroup> q_;
  ElementaryQuotient basis_;
  std::vector<Elem> section_;
  std::unique_ptr<CoboundaryReducer> q_red_, e_red_;
  Subspace trg_image_;
  FpMatrix trg_matrix_;  // columns: class of trg(e_i)
};

}  // namespace zassen
