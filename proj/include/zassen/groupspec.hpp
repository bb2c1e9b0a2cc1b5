#pragma once

// Named constructions of test groups and the hypothesis R <= S_(n) for a
// presentation G = S/R with S free pro-p on a minimal generating set.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "zassen/group.hpp"
#include "zassen/magnus.hpp"

namespace zassen {

enum class GroupKind { Magnus, Unipotent, Cyclic };

struct GroupSpec {
  GroupKind kind = GroupKind::Magnus;
  Scalar p = 2;
  std::size_t d = 0, m = 0;                     // magnus
  std::size_t size = 0;                         // matrix-unipotent
  std::optional<std::vector<Matrix>> matrices;  // matrix-unipotent; default 1 + e_{i,i+1}
  std::size_t order = 0;                        // cyclic

  static GroupSpec magnus(Scalar p, std::size_t d, std::size_t m);
  static GroupSpec unipotent(Scalar p, std::size_t size);
  static GroupSpec cyclic(Scalar p, std::size_t order);

  /// e.g. "magnus(2,2,4)"
  std::string name() const;
  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

const char* to_string(GroupKind k);

struct BuiltGroup {
  GroupSpec spec;
  FiniteGroup group;
  /// Degree filtration for Magnus groups, dimension subgroups otherwise.
  Filtration third_oracle;
  std::string third_oracle_name;
};

BuiltGroup build_group(const GroupSpec& spec);

struct HypothesisCheck {
  /// "holds", "fails" or "assumed"
  std::string status;
  /// "closed-form", "order-comparison" or "not-computable"
  std::string method;
  std::size_t free_rank = 0;
};

/// R <= S_(n) iff |G/G_(n)| = |S/S_(n)| for the minimal presentation; Magnus
/// and cyclic groups are also decided in closed form and the two must agree.
HypothesisCheck check_hypothesis(const BuiltGroup& g, const Filtration& f, std::size_t n);

}  // namespace zassen
