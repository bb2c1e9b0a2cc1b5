#pragma once

// Rank-n multiplicative systems, the algebras V_{n,d} and the unipotent
// groups U_{n,d} built from them.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "zassen/group.hpp"
#include "zassen/linalg.hpp"

namespace zassen {

/// mu(e_a (x) f_b) = sum_c t[a][b][c] g_c
class BilinearMap {
 public:
  BilinearMap() = default;
  BilinearMap(Scalar p, std::size_t dim_a, std::size_t dim_b, std::size_t dim_c);
  BilinearMap(Scalar p, std::size_t dim_a, std::size_t dim_b, std::size_t dim_c, std::vector<Scalar> tensor);

  Scalar p() const noexcept { return p_; }
  std::size_t dim_a() const noexcept { return da_; }
  std::size_t dim_b() const noexcept { return db_; }
  std::size_t dim_c() const noexcept { return dc_; }
  Scalar at(std::size_t a, std::size_t b, std::size_t c) const { return t_[(a * db_ + b) * dc_ + c]; }
  Scalar& at(std::size_t a, std::size_t b, std::size_t c) { return t_[(a * db_ + b) * dc_ + c]; }
  const std::vector<Scalar>& tensor() const noexcept { return t_; }
  bool is_zero() const noexcept;

  FpVector apply(const FpVector& x, const FpVector& y) const;

  friend bool operator==(const BilinearMap&, const BilinearMap&) = default;

 private:
  Scalar p_ = 2;
  std::size_t da_ = 0, db_ = 0, dc_ = 0;
  std::vector<Scalar> t_;
};

/// Index pair (i,j), 1 <= i < j <= n+1.
struct Slot {
  std::size_t i = 0, j = 0;
  friend bool operator==(const Slot&, const Slot&) = default;
};

class MultSystem {
 public:
  using Dims = std::vector<std::vector<std::size_t>>;  // dims[i][j], 1-based, i < j

  /// Validates associativity on every quadruple i<j<k<l; throws InvalidSystem.
  /// `pairing(i,j,k)` defaults to the zero map when not supplied.
  MultSystem(Scalar p, std::size_t n, const Dims& dims,
             const std::function<BilinearMap(std::size_t, std::size_t, std::size_t)>& pairing = {});

  /// All A_ij = F_p with field multiplication; U(A) is the full unipotent group.
  static MultSystem standard(Scalar p, std::size_t n);
  /// Rank-n system of the given dims, all pairings zero.
  static MultSystem zero(Scalar p, std::size_t n, const Dims& dims);

  Scalar p() const noexcept { return p_; }
  std::size_t rank() const noexcept { return n_; }
  std::size_t dim(std::size_t i, std::size_t j) const { return dims_[i][j]; }
  const BilinearMap& pairing(std::size_t i, std::size_t j, std::size_t k) const;

  /// Coordinates are laid out by level j-i, then by i; each slot is a block.
  std::size_t total_dim() const noexcept { return total_; }
  std::size_t offset(std::size_t i, std::size_t j) const { return offset_[i][j]; }
  const std::vector<Slot>& slots() const noexcept { return slots_; }
  /// Number of coordinates with j - i <= level.
  std::size_t level_prefix(std::size_t level) const;
  /// Number of elements of U_{n,d}.
  std::uint64_t u_order(std::size_t d = 1) const;

  /// Structure constants of V(A): product coordinate c += coef * x[a] * y[b].
  struct Term {
    std::uint32_t a, b, c;
    Scalar coef;
  };
  const std::vector<Term>& terms() const noexcept { return terms_; }

  /// Mixed radix code of a coordinate vector (first coordinate least significant).
  std::uint64_t encode(std::span<const Scalar> coords) const;
  std::vector<Scalar> decode(std::uint64_t code) const;

  friend bool operator==(const MultSystem& a, const MultSystem& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.dims_ == b.dims_ && a.pairings_ == b.pairings_;
  }

 private:
  void layout();
  void check_associative() const;

  Scalar p_;
  std::size_t n_;
  Dims dims_;
  // pairings_[i][j][k]
  std::vector<std::vector<std::vector<BilinearMap>>> pairings_;
  std::vector<std::vector<std::size_t>> offset_;
  std::vector<Slot> slots_;
  std::vector<Term> terms_;
  std::size_t total_ = 0;
};

using SystemPtr = std::shared_ptr<const MultSystem>;

/// An element of V_{n,d}(A). `level` is a lower bound for the true level.
class VElement {
 public:
  VElement(SystemPtr sys, std::size_t level = 1);
  VElement(SystemPtr sys, std::vector<Scalar> coords, std::size_t level = 1);

  const MultSystem& system() const { return *sys_; }
  const SystemPtr& system_ptr() const { return sys_; }
  std::size_t level() const noexcept { return level_; }
  /// Exact level: the smallest j-i with a nonzero entry (n+1 for zero).
  std::size_t exact_level() const;
  VElement normalized() const;
  const std::vector<Scalar>& coords() const noexcept { return coords_; }
  FpVector entry(std::size_t i, std::size_t j) const;
  void set_entry(std::size_t i, std::size_t j, const FpVector& v);
  bool is_zero() const;

  friend bool operator==(const VElement& a, const VElement& b) { return a.coords_ == b.coords_; }

 private:
  SystemPtr sys_;
  std::size_t level_;
  std::vector<Scalar> coords_;
};

VElement v_add(const VElement& a, const VElement& b);
VElement v_neg(const VElement& a);
VElement v_mul(const VElement& a, const VElement& b);

/// The formal unit 1 + a.
class UElement {
 public:
  explicit UElement(VElement a) : a_(std::move(a)) {}
  static UElement one(SystemPtr sys) { return UElement(VElement(std::move(sys))); }

  const VElement& a() const noexcept { return a_; }
  const MultSystem& system() const { return a_.system(); }
  bool is_one() const { return a_.is_zero(); }
  std::uint64_t code() const { return a_.system().encode(a_.coords()); }

  friend bool operator==(const UElement& x, const UElement& y) { return x.a_ == y.a_; }

 private:
  VElement a_;
};

UElement u_mul(const UElement& u, const UElement& v);
UElement u_inv(const UElement& u);
/// u^-1 v^-1 u v
UElement u_comm(const UElement& u, const UElement& v);
UElement u_pow(const UElement& u, std::uint64_t k);

inline constexpr std::size_t kMaxEnumerationDim = 20;

/// All elements of U_{n,d}(A) in increasing code order.
std::vector<UElement> enumerate_U(const SystemPtr& sys, std::size_t d = 1,
                                  std::size_t max_total_dim = kMaxEnumerationDim);

/// U(A)/U_{n,L+1}(A) as a table group whose element indices are the codes of the
/// truncated coordinate vectors. L = n gives U(A), L = n-1 gives U(A)/Z(A).
FiniteGroup u_group(const MultSystem& sys, std::size_t max_level);

struct LowerRankEmbedding {
  MultSystem system;
  /// lower coordinate index -> coordinate index in `system`
  std::vector<std::size_t> coord_map;

  /// Pads r_{i,n+1} = 0. `target` must hold `system`.
  UElement inject(const UElement& u, const SystemPtr& target) const;
  std::uint64_t inject_code(const MultSystem& lower, std::uint64_t code) const;
};

/// Rank n system containing U of a rank n-1 system: A_{i,n+1} = F_p with zero pairings.
LowerRankEmbedding embed_lower_rank(const MultSystem& lower);

/// Random associative system of the given dims (pairings drawn uniformly from
/// the associative ones, level by level).
MultSystem random_system(Scalar p, std::size_t n, const MultSystem::Dims& dims, std::mt19937_64& rng);

struct CatalogOptions {
  Scalar p = 2;
  std::size_t rank = 2;
  std::size_t max_dim = 1;
  bool include_standard = true;
  /// Skip dimension vectors whose total dimension exceeds this.
  std::size_t max_total_dim = SIZE_MAX;
};

/// Streams the standard system, then every associative system with
/// dim A_{1,n+1} = 1 and other dims in [1, max_dim]. The visitor returns false
/// to stop. Returns the number of systems visited.
std::size_t visit_catalog(const CatalogOptions& opts, const std::function<bool(const MultSystem&)>& visit);

std::vector<MultSystem> catalog(const CatalogOptions& opts, std::size_t limit = SIZE_MAX);

}  // namespace zassen
