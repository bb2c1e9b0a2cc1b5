#pragma once

// Truncated free algebras, the Magnus groups S/S_(m) inside them, and a few
// other small p-groups (cyclic, unipotent matrices) used as test inputs.

#include <cstddef>
#include <optional>
#include <vector>

#include "zassen/group.hpp"
#include "zassen/linalg.hpp"

namespace zassen {

/// Coefficients over all words of length < m, words of length k stored at
/// offset(k) + (word read as a base-d number).
using Series = std::vector<Scalar>;

class TruncatedFreeAlgebra {
 public:
  TruncatedFreeAlgebra(Scalar p, std::size_t d, std::size_t m);

  Scalar p() const noexcept { return p_; }
  std::size_t num_gens() const noexcept { return d_; }
  std::size_t trunc_degree() const noexcept { return m_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t word_degree(std::size_t idx) const { return degree_[idx]; }
  std::size_t offset(std::size_t degree) const { return offset_[degree]; }

  Series one() const;
  /// x_i (0-based)
  Series generator(std::size_t i) const;
  Series add(const Series& a, const Series& b) const;
  Series mul(const Series& a, const Series& b) const;
  /// Smallest degree with a nonzero coefficient (m for zero).
  std::size_t valuation(const Series& a) const;

 private:
  Scalar p_;
  std::size_t d_, m_, dim_ = 0;
  std::vector<std::size_t> offset_, degree_;
  // concat_[a * dim + b] = index of the concatenated word, or dim when truncated
  std::vector<std::size_t> concat_;
};

struct MagnusGroup {
  TruncatedFreeAlgebra algebra;
  FiniteGroup group;
  std::vector<Series> series_of;  // element -> 1 + (higher terms)
};

/// Units generated by 1 + x_i in the algebra truncated at degree m.
MagnusGroup build_magnus_group(Scalar p, std::size_t d, std::size_t m);

/// terms[k-1] = elements congruent to 1 modulo degree k.
Filtration degree_filtration(const MagnusGroup& g);

/// Jennings dimension subgroups {g : g - 1 in I^k}, I the augmentation ideal of F_p[G].
Filtration dimension_subgroups(const FiniteGroup& g);

/// Z/order with generator x1.
FiniteGroup build_cyclic_group(Scalar p, std::size_t order);

/// Row-major size x size matrices over F_p.
using Matrix = std::vector<Scalar>;

/// Subgroup of the unitriangular matrices generated by `generators`
/// (default: the elementary matrices 1 + e_{i,i+1}).
FiniteGroup build_unipotent_group(Scalar p, std::size_t size,
                                  const std::optional<std::vector<Matrix>>& generators = std::nullopt);

}  // namespace zassen
