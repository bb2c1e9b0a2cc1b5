#pragma once

// Finite p-groups given by full multiplication tables, their subgroups,
// quotients, and the p-Zassenhaus filtration.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "zassen/error.hpp"
#include "zassen/linalg.hpp"

namespace zassen {

using Elem = std::uint32_t;

/// Largest group we materialize a table for (the table has order^2 entries).
inline constexpr std::size_t kMaxGroupOrder = 4096;

class FiniteGroup {
 public:
  FiniteGroup() = default;
  /// `table[a * order + b]` is the index of a*b. Index 0 must be the identity.
  FiniteGroup(Scalar p, std::vector<std::uint16_t> table, std::vector<Elem> generators,
              std::vector<std::string> generator_labels);

  Scalar p() const noexcept { return p_; }
  std::size_t order() const noexcept { return order_; }
  Elem id() const noexcept { return 0; }
  Elem mul(Elem a, Elem b) const { return table_[a * order_ + b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  Elem pow(Elem a, std::uint64_t k) const;
  /// a^-1 b^-1 a b
  Elem comm(Elem a, Elem b) const { return mul(mul(inv_[a], inv_[b]), mul(a, b)); }
  /// b^-1 a b
  Elem conj(Elem a, Elem b) const { return mul(mul(inv_[b], a), b); }
  std::size_t element_order(Elem a) const;

  const std::vector<Elem>& generators() const noexcept { return gens_; }
  const std::vector<std::string>& generator_labels() const noexcept { return labels_; }
  /// Shortest word in the generators (shortlex), e.g. "x1^2*x2"; "1" for the identity.
  std::string label(Elem a) const;
  /// BFS spanning tree over right multiplication by generators:
  /// element e != id is reached as parent(e) * generators()[parent_gen(e)].
  Elem tree_parent(Elem a) const { return tree_parent_[a]; }
  std::size_t tree_gen(Elem a) const { return tree_gen_[a]; }
  /// Elements in BFS order (identity first).
  const std::vector<Elem>& bfs_order() const noexcept { return bfs_order_; }

  const std::vector<std::uint16_t>& table() const noexcept { return table_; }
  /// FNV-1a over p, the order and the table; computed on each call.
  std::uint64_t digest() const noexcept;
  std::size_t log_order() const noexcept { return log_order_; }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.p_ == b.p_ && a.table_ == b.table_ && a.gens_ == b.gens_;
  }

 private:
  Scalar p_ = 2;
  std::size_t order_ = 0;
  std::size_t log_order_ = 0;
  std::vector<std::uint16_t> table_;
  std::vector<Elem> inv_;
  std::vector<Elem> gens_;
  std::vector<std::string> labels_;
  std::vector<Elem> tree_parent_;
  std::vector<std::uint32_t> tree_gen_;
  std::vector<Elem> bfs_order_;
};

/// Builds the group generated by `gens` inside some ambient multiplicative
/// structure. `T` needs equality and `Hash`.
template <class T, class Mul, class Hash = std::hash<T>>
std::pair<FiniteGroup, std::vector<T>> materialize_group(Scalar p, const T& one, const std::vector<T>& gens,
                                                         Mul mul, std::vector<std::string> labels,
                                                         std::size_t cap = kMaxGroupOrder) {
  std::vector<T> elems{one};
  std::unordered_map<T, Elem, Hash> index{{one, 0}};
  std::vector<Elem> right;  // right[e * ngens + i] = e * gens[i]
  const std::size_t ng = gens.size();
  for (std::size_t e = 0; e < elems.size(); ++e) {
    for (std::size_t i = 0; i < ng; ++i) {
      T prod = mul(elems[e], gens[i]);
      auto [it, fresh] = index.try_emplace(prod, static_cast<Elem>(elems.size()));
      if (fresh) {
        if (elems.size() >= cap) throw Error(ErrorKind::TooLarge, "group exceeds the order cap");
        elems.push_back(std::move(prod));
      }
      right.push_back(it->second);
    }
  }
  const std::size_t n = elems.size();
  // Express each element as a word along the BFS tree, then fill columns.
  std::vector<Elem> parent(n, 0);
  std::vector<std::size_t> pgen(n, 0);
  std::vector<bool> seen(n, false);
  std::vector<Elem> order{0};
  seen[0] = true;
  for (std::size_t k = 0; k < order.size(); ++k)
    for (std::size_t i = 0; i < ng; ++i) {
      Elem t = right[order[k] * ng + i];
      if (!seen[t]) {
        seen[t] = true;
        parent[t] = order[k];
        pgen[t] = i;
        order.push_back(t);
      }
    }
  std::vector<std::uint16_t> table(n * n);
  for (Elem a = 0; a < n; ++a) table[a * n] = static_cast<std::uint16_t>(a);
  for (std::size_t k = 1; k < order.size(); ++k) {
    const Elem b = order[k];
    for (Elem a = 0; a < n; ++a)
      table[a * n + b] = static_cast<std::uint16_t>(right[table[a * n + parent[b]] * ng + pgen[b]]);
  }
  std::vector<Elem> gen_idx;
  for (std::size_t i = 0; i < ng; ++i) gen_idx.push_back(right[i]);
  return {FiniteGroup(p, std::move(table), std::move(gen_idx), std::move(labels)), std::move(elems)};
}

/// A subgroup of a fixed parent group: sorted elements plus a generating set.
class Subgroup {
 public:
  Subgroup() = default;
  static Subgroup trivial(const FiniteGroup& g);
  static Subgroup whole(const FiniteGroup& g);

  std::size_t order() const noexcept { return elems_.size(); }
  bool contains(Elem e) const { return member_[e]; }
  const std::vector<Elem>& elements() const noexcept { return elems_; }
  const std::vector<Elem>& gens() const noexcept { return gens_; }
  std::size_t parent_order() const noexcept { return member_.size(); }
  bool is_trivial() const noexcept { return elems_.size() == 1; }
  bool subset_of(const Subgroup& o) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elems_ == b.elems_; }

 private:
  friend Subgroup closure(const FiniteGroup&, const std::vector<Elem>&);
  friend Subgroup subgroup_from_elements(const FiniteGroup&, std::vector<Elem>);
  std::vector<Elem> elems_;
  std::vector<char> member_;
  std::vector<Elem> gens_;
};

Subgroup closure(const FiniteGroup& g, const std::vector<Elem>& seeds);
Subgroup normal_closure(const FiniteGroup& g, const std::vector<Elem>& seeds);
/// Wraps an element set already known to be a subgroup (validated).
Subgroup subgroup_from_elements(const FiniteGroup& g, std::vector<Elem> elems);
/// Subgroup generated by all commutators [h,k], h in H, k in K.
Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& h, const Subgroup& k);
/// Subgroup generated by all h^k, h in H.
Subgroup power_subgroup(const FiniteGroup& g, const Subgroup& h, std::uint64_t k);
Subgroup subgroup_product(const FiniteGroup& g, const std::vector<Subgroup>& factors);
Subgroup subgroup_intersection(const FiniteGroup& g, const Subgroup& a, const Subgroup& b);
bool is_normal(const FiniteGroup& g, const Subgroup& h);
/// Every element of h commutes with every element of g.
bool is_central(const FiniteGroup& g, const Subgroup& h);
/// Image of a subgroup under a homomorphism given as an index map.
Subgroup image_subgroup(const FiniteGroup& target, const std::vector<Elem>& map, const Subgroup& h);
/// Preimage of a subgroup of the target under a homomorphism.
Subgroup preimage_subgroup(const FiniteGroup& source, const std::vector<Elem>& map, const Subgroup& h);

struct QuotientGroup {
  FiniteGroup group;
  std::vector<Elem> projection;  // parent element -> coset index
};

/// G/N; cosets are indexed by increasing minimal representative.
QuotientGroup quotient(const FiniteGroup& g, const Subgroup& n);

std::vector<Subgroup> lower_central_series(const FiniteGroup& g);

/// terms[k-1] = G_(k), ending with the trivial subgroup.
struct Filtration {
  std::vector<Subgroup> terms;

  /// G_(k) for k >= 1; the trivial group beyond the stored range.
  const Subgroup& term(std::size_t k) const;
  std::size_t length() const noexcept { return terms.size(); }
  std::vector<std::size_t> orders() const;
  friend bool operator==(const Filtration&, const Filtration&) = default;
};

/// G_(n) = G_(ceil(n/p))^p * prod_{i+j=n} [G_(i), G_(j)].
Filtration zassenhaus_recursive(const FiniteGroup& g);
/// G_(n) = prod_{i p^k >= n} (G_i)^{p^k} with G_i the lower central series.
Filtration zassenhaus_lazard(const FiniteGroup& g);
/// Checks the structural invariants: descending, normal, elementary abelian layers.
bool filtration_well_formed(const FiniteGroup& g, const Filtration& f);

/// An F_p basis of an elementary abelian section H/K with a coordinate map.
struct ElementaryQuotient {
  Scalar p = 2;
  std::vector<Elem> basis;
  std::vector<std::vector<Scalar>> coords_of;  // indexed by parent element; empty outside H

  std::size_t dim() const noexcept { return basis.size(); }
  FpVector coordinates(Elem e) const;
  bool in_section(Elem e) const { return !coords_of[e].empty(); }
};

ElementaryQuotient elementary_quotient_basis(const FiniteGroup& g, const Subgroup& h, const Subgroup& k);

/// Checks that `map` (indexed by source elements) is a homomorphism.
bool is_homomorphism(const FiniteGroup& source, const FiniteGroup& target, const std::vector<Elem>& map);

}  // namespace zassen
