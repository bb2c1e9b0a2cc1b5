#pragma once

// Homomorphisms from a finite group into U(A) or U(A)/U_{n,L+1}(A), stored as
// the codes of the (truncated) coordinate vectors of all images.

#include <cstdint>
#include <vector>

#include "zassen/group.hpp"
#include "zassen/multsys.hpp"

namespace zassen {

struct Representation {
  SystemPtr system;
  /// Images are taken modulo U_{n,level+1}: level = n is U(A), level = n-1 is U(A)/Z(A).
  std::size_t level = 0;
  std::vector<std::uint64_t> images;  // indexed by group element

  bool into_full() const { return level == system->rank(); }
  std::vector<Scalar> coords(Elem g) const { return system->decode(images[g]); }
  /// Entry (i,j) of the image of g.
  FpVector entry(Elem g, std::size_t i, std::size_t j) const;
};

/// Multiplicativity on (element, generator) pairs, which implies it on every pair;
/// products are taken in U(A) truncated to `level`.
bool is_homomorphism(const FiniteGroup& g, const Representation& r);
Subgroup kernel(const FiniteGroup& g, const Representation& r);
/// The image of every element, extended from generator images along the BFS tree.
/// Does not check multiplicativity.
Representation extend_from_generators(const FiniteGroup& g, const SystemPtr& sys, std::size_t level,
                                      const std::vector<std::uint64_t>& generator_images);
/// Reduction modulo U_{n,level+1}.
Representation truncate(const Representation& r, std::size_t level);
/// Representation composed with a group homomorphism source -> g given by `map`.
Representation pull_back(const Representation& r, const std::vector<Elem>& map);
/// Composition with the embedding of a rank n-1 system into the rank n one.
Representation embed(const Representation& r, const LowerRankEmbedding& emb, const SystemPtr& target);

}  // namespace zassen
