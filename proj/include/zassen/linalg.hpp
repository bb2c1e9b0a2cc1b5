#pragma once

// Exact linear algebra over the prime field F_p.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace zassen {

using Scalar = std::uint32_t;

bool is_prime(std::uint64_t n);

/// Arithmetic in F_p for a prime p < 2^16.
class PrimeField {
 public:
  explicit PrimeField(Scalar p);

  Scalar p() const noexcept { return p_; }
  Scalar add(Scalar a, Scalar b) const noexcept {
    Scalar s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Scalar sub(Scalar a, Scalar b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Scalar neg(Scalar a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Scalar mul(Scalar a, Scalar b) const noexcept { return static_cast<Scalar>((std::uint64_t{a} * b) % p_); }
  Scalar inv(Scalar a) const;
  Scalar from_int(std::int64_t v) const noexcept {
    auto r = v % static_cast<std::int64_t>(p_);
    return static_cast<Scalar>(r < 0 ? r + p_ : r);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  Scalar p_;
};

class FpVector {
 public:
  FpVector() = default;
  FpVector(Scalar p, std::size_t dim);
  FpVector(Scalar p, std::vector<Scalar> entries);
  FpVector(Scalar p, std::initializer_list<Scalar> entries) : FpVector(p, std::vector<Scalar>(entries)) {}

  static FpVector unit(Scalar p, std::size_t dim, std::size_t i);

  Scalar p() const noexcept { return p_; }
  std::size_t dim() const noexcept { return v_.size(); }
  Scalar operator[](std::size_t i) const { return v_[i]; }
  Scalar& operator[](std::size_t i) { return v_[i]; }
  std::span<const Scalar> entries() const noexcept { return v_; }
  std::span<Scalar> entries() noexcept { return v_; }
  bool is_zero() const noexcept;

  FpVector& operator+=(const FpVector& o);
  FpVector& operator-=(const FpVector& o);
  FpVector scaled(Scalar c) const;
  FpVector operator-() const;
  friend FpVector operator+(FpVector a, const FpVector& b) { return a += b; }
  friend FpVector operator-(FpVector a, const FpVector& b) { return a -= b; }
  Scalar dot(const FpVector& o) const;

  friend bool operator==(const FpVector&, const FpVector&) = default;
  friend auto operator<=>(const FpVector&, const FpVector&) = default;

 private:
  Scalar p_ = 2;
  std::vector<Scalar> v_;
};

/// Dense row-major matrix over F_p.
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(Scalar p, std::size_t rows, std::size_t cols);

  static FpMatrix identity(Scalar p, std::size_t n);
  static FpMatrix from_rows(Scalar p, const std::vector<std::vector<Scalar>>& rows);
  static FpMatrix from_row_vectors(Scalar p, std::size_t cols, const std::vector<FpVector>& rows);

  Scalar p() const noexcept { return p_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Scalar at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  FpVector row_vector(std::size_t r) const;

  FpVector operator*(const FpVector& x) const;
  FpMatrix operator*(const FpMatrix& o) const;
  FpMatrix transpose() const;

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

 private:
  Scalar p_ = 2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

struct RrefResult {
  FpMatrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
};

/// Reduced row echelon form. Uses a bit-packed kernel when p = 2.
RrefResult rref(const FpMatrix& m);

/// Some x with m*x = b, free variables set to zero; nullopt when inconsistent.
std::optional<FpVector> solve(const FpMatrix& m, const FpVector& b);

/// A subspace of F_p^ambient, stored by its reduced echelon basis so that equal
/// subspaces compare equal.
class Subspace {
 public:
  Subspace() = default;
  Subspace(Scalar p, std::size_t ambient_dim);

  static Subspace span(Scalar p, std::size_t ambient_dim, const std::vector<FpVector>& vectors);

  Scalar p() const noexcept { return p_; }
  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<FpVector>& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// v minus its projection along the pivot coordinates; zero iff v is contained.
  FpVector reduce(const FpVector& v) const;
  bool contains(const FpVector& v) const;
  bool contains(const Subspace& o) const;
  /// Coefficients of v in terms of basis(), if v lies in the subspace.
  std::optional<FpVector> coordinates(const FpVector& v) const;

  /// Adds v; returns true when the dimension grew.
  bool insert(const FpVector& v);

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  Scalar p_ = 2;
  std::size_t ambient_ = 0;
  std::vector<FpVector> basis_;
  std::vector<std::size_t> pivots_;
};

/// {x : m x = 0}
Subspace kernel_basis(const FpMatrix& m);
/// Column space of m.
Subspace image_basis(const FpMatrix& m);
Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersect(const Subspace& a, const Subspace& b);
bool contains(const Subspace& big, const Subspace& small);
/// Canonical representatives of a basis of big/small (small must lie in big).
std::vector<FpVector> quotient_basis(const Subspace& big, const Subspace& small);

}  // namespace zassen
