#pragma once

// Exhaustive enumeration of homomorphisms G -> U(A)/U_{n,L+1}(A), lifting
// level by level through U(A)/U_{n,k+1}(A), k = 1..L.

#include <cstdint>
#include <functional>
#include <vector>

#include "zassen/group.hpp"
#include "zassen/multsys.hpp"
#include "zassen/representation.hpp"

namespace zassen {

struct EnumerationOptions {
  /// Cap on candidate generator tuples examined across all levels.
  std::uint64_t budget = 10'000'000;
  unsigned jobs = 1;
};

struct EnumerationResult {
  /// Generator image codes of each homomorphism, in deterministic order.
  std::vector<std::vector<std::uint64_t>> generator_images;
  std::uint64_t candidates = 0;
  bool truncated = false;
};

EnumerationResult enumerate_homomorphisms(const FiniteGroup& g, const SystemPtr& sys, std::size_t level,
                                          const EnumerationOptions& opts = {});

/// All homomorphisms as representations (images of every element).
std::vector<Representation> enumerate_reps(const FiniteGroup& g, const SystemPtr& sys, std::size_t level,
                                           const EnumerationOptions& opts = {}, bool* truncated = nullptr);

}  // namespace zassen
