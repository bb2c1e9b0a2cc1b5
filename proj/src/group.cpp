#include "zassen/group.hpp"

#include <algorithm>
#include <random>

namespace zassen {

namespace {

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

FiniteGroup::FiniteGroup(Scalar p, std::vector<std::uint16_t> table, std::vector<Elem> generators,
                         std::vector<std::string> generator_labels)
    : p_(p), table_(std::move(table)), gens_(std::move(generators)), labels_(std::move(generator_labels)) {
  require(is_prime(p), "group prime must be prime");
  std::size_t n = 0;
  while (n * n < table_.size()) ++n;
  require(n * n == table_.size() && n >= 1, "multiplication table is not square");
  if (n > kMaxGroupOrder) throw Error(ErrorKind::TooLarge, "group exceeds the order cap");
  order_ = n;
  for (auto g : gens_) require(g < n, "generator index out of range");
  if (labels_.empty())
    for (std::size_t i = 0; i < gens_.size(); ++i) labels_.push_back("x" + std::to_string(i + 1));
  require(labels_.size() == gens_.size(), "one label per generator");

  // identity and inverses, exactly
  for (Elem a = 0; a < n; ++a) {
    require(mul(0, a) == a && mul(a, 0) == a, "index 0 is not the identity");
    for (Elem b = 0; b < n; ++b) require(table_[a * n + b] < n, "table entry out of range");
  }
  // the inverse is the last power before the identity
  inv_.assign(n, 0);
  for (Elem a = 0; a < n; ++a) {
    Elem prev = 0, x = a;
    for (std::size_t k = 0; x != 0 && k < n; ++k) {
      prev = x;
      x = mul(x, a);
    }
    require(x == 0 && mul(prev, a) == 0 && mul(a, prev) == 0, "element without two-sided inverse");
    inv_[a] = prev;
  }
  // associativity, sampled deterministically
  std::mt19937_64 rng(0x5eedu + n);
  const std::size_t samples = std::min<std::size_t>(n * n * n, 2000);
  for (std::size_t s = 0; s < samples; ++s) {
    Elem a = rng() % n, b = rng() % n, c = rng() % n;
    require(mul(mul(a, b), c) == mul(a, mul(b, c)), "multiplication table is not associative");
  }
  // order is a power of p
  std::size_t m = n;
  while (m % p == 0) {
    m /= p;
    ++log_order_;
  }
  require(m == 1, "group order is not a power of p");

  // spanning tree; also checks that the generators generate
  tree_parent_.assign(n, 0);
  tree_gen_.assign(n, 0);
  std::vector<bool> seen(n, false);
  seen[0] = true;
  bfs_order_ = {0};
  for (std::size_t k = 0; k < bfs_order_.size(); ++k)
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      Elem t = mul(bfs_order_[k], gens_[i]);
      if (!seen[t]) {
        seen[t] = true;
        tree_parent_[t] = bfs_order_[k];
        tree_gen_[t] = static_cast<std::uint32_t>(i);
        bfs_order_.push_back(t);
      }
    }
  require(bfs_order_.size() == n, "generators do not generate the group");
}

std::uint64_t FiniteGroup::digest() const noexcept {
  std::uint64_t h = 14695981039346656037ull;
  h = fnv1a(h, p_);
  h = fnv1a(h, order_);
  for (auto x : table_) h = fnv1a(h, x);
  return h;
}

Elem FiniteGroup::pow(Elem a, std::uint64_t k) const {
  Elem result = 0, base = a;
  for (; k; k >>= 1) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
  }
  return result;
}

std::size_t FiniteGroup::element_order(Elem a) const {
  std::size_t k = 1;
  for (Elem x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

std::string FiniteGroup::label(Elem a) const {
  if (a == 0) return "1";
  std::vector<std::size_t> word;
  for (Elem e = a; e != 0; e = tree_parent_[e]) word.push_back(tree_gen_[e]);
  std::reverse(word.begin(), word.end());
  std::string out;
  for (std::size_t i = 0; i < word.size();) {
    std::size_t j = i;
    while (j < word.size() && word[j] == word[i]) ++j;
    if (!out.empty()) out += "*";
    out += labels_[word[i]];
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

// ---------------------------------------------------------------- Subgroup

Subgroup Subgroup::trivial(const FiniteGroup& g) { return closure(g, {}); }

Subgroup Subgroup::whole(const FiniteGroup& g) { return closure(g, g.generators()); }

bool Subgroup::subset_of(const Subgroup& o) const {
  return std::all_of(elems_.begin(), elems_.end(), [&](Elem e) { return o.contains(e); });
}

Subgroup closure(const FiniteGroup& g, const std::vector<Elem>& seeds) {
  Subgroup s;
  s.member_.assign(g.order(), 0);
  s.member_[0] = 1;
  s.elems_ = {0};
  for (Elem x : seeds) {
    if (s.member_[x]) continue;
    s.gens_.push_back(x);
    // grow: multiply every element (old and new) by every generator
    std::vector<Elem> frontier = s.elems_;
    for (std::size_t k = 0; k < frontier.size(); ++k)
      for (Elem gen : s.gens_) {
        Elem t = g.mul(frontier[k], gen);
        if (!s.member_[t]) {
          s.member_[t] = 1;
          s.elems_.push_back(t);
          frontier.push_back(t);
        }
      }
  }
  std::sort(s.elems_.begin(), s.elems_.end());
  return s;
}

Subgroup subgroup_from_elements(const FiniteGroup& g, std::vector<Elem> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  Subgroup s = closure(g, elems);
  require(s.elems_ == elems, "element set is not a subgroup");
  return s;
}

Subgroup normal_closure(const FiniteGroup& g, const std::vector<Elem>& seeds) {
  Subgroup h = closure(g, seeds);
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < h.gens().size() && !grew; ++i)
      for (Elem x : g.generators()) {
        Elem c = g.conj(h.gens()[i], x);
        if (!h.contains(c)) {
          auto gens = h.gens();
          gens.push_back(c);
          h = closure(g, gens);
          grew = true;
          break;
        }
      }
  }
  return h;
}

Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& h, const Subgroup& k) {
  std::vector<Elem> seeds;
  std::vector<char> seen(g.order(), 0);
  for (Elem a : h.elements())
    for (Elem b : k.elements()) {
      Elem c = g.comm(a, b);
      if (!seen[c]) {
        seen[c] = 1;
        seeds.push_back(c);
      }
    }
  return closure(g, seeds);
}

Subgroup power_subgroup(const FiniteGroup& g, const Subgroup& h, std::uint64_t k) {
  std::vector<Elem> seeds;
  for (Elem a : h.elements()) seeds.push_back(g.pow(a, k));
  return closure(g, seeds);
}

Subgroup subgroup_product(const FiniteGroup& g, const std::vector<Subgroup>& factors) {
  std::vector<Elem> seeds;
  for (const auto& f : factors) seeds.insert(seeds.end(), f.gens().begin(), f.gens().end());
  return closure(g, seeds);
}

Subgroup subgroup_intersection(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  std::vector<Elem> common;
  for (Elem e : a.elements())
    if (b.contains(e)) common.push_back(e);
  return subgroup_from_elements(g, std::move(common));
}

bool is_normal(const FiniteGroup& g, const Subgroup& h) {
  for (Elem a : h.gens())
    for (Elem x : g.generators())
      if (!h.contains(g.conj(a, x))) return false;
  return true;
}

bool is_central(const FiniteGroup& g, const Subgroup& h) {
  for (Elem a : h.gens())
    for (Elem x : g.generators())
      if (g.mul(a, x) != g.mul(x, a)) return false;
  return true;
}

Subgroup image_subgroup(const FiniteGroup& target, const std::vector<Elem>& map, const Subgroup& h) {
  std::vector<Elem> seeds;
  for (Elem a : h.gens()) seeds.push_back(map[a]);
  return closure(target, seeds);
}

Subgroup preimage_subgroup(const FiniteGroup& source, const std::vector<Elem>& map, const Subgroup& h) {
  std::vector<Elem> elems;
  for (Elem a = 0; a < source.order(); ++a)
    if (h.contains(map[a])) elems.push_back(a);
  return subgroup_from_elements(source, std::move(elems));
}

QuotientGroup quotient(const FiniteGroup& g, const Subgroup& n) {
  if (!is_normal(g, n)) throw Error(ErrorKind::NotNormal, "quotient by a non-normal subgroup");
  const std::size_t order = g.order();
  std::vector<Elem> proj(order, static_cast<Elem>(order));
  std::vector<Elem> reps;
  for (Elem a = 0; a < order; ++a) {
    if (proj[a] != order) continue;
    const Elem idx = static_cast<Elem>(reps.size());
    reps.push_back(a);
    for (Elem x : n.elements()) proj[g.mul(a, x)] = idx;
  }
  const std::size_t q = reps.size();
  std::vector<std::uint16_t> table(q * q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) table[i * q + j] = static_cast<std::uint16_t>(proj[g.mul(reps[i], reps[j])]);
  std::vector<Elem> gens;
  for (Elem x : g.generators()) gens.push_back(proj[x]);
  return {FiniteGroup(g.p(), std::move(table), std::move(gens), g.generator_labels()), std::move(proj)};
}

std::vector<Subgroup> lower_central_series(const FiniteGroup& g) {
  std::vector<Subgroup> series{Subgroup::whole(g)};
  const Subgroup whole = series.front();
  while (!series.back().is_trivial()) {
    Subgroup next = commutator_subgroup(g, series.back(), whole);
    if (next == series.back()) break;  // not nilpotent; cannot happen for p-groups
    series.push_back(std::move(next));
  }
  return series;
}

// ---------------------------------------------------------------- Filtration

const Subgroup& Filtration::term(std::size_t k) const {
  require(k >= 1 && !terms.empty(), "filtration terms are indexed from 1");
  return k <= terms.size() ? terms[k - 1] : terms.back();
}

std::vector<std::size_t> Filtration::orders() const {
  std::vector<std::size_t> out;
  for (const auto& t : terms) out.push_back(t.order());
  return out;
}

Filtration zassenhaus_recursive(const FiniteGroup& g) {
  Filtration f;
  f.terms.push_back(Subgroup::whole(g));
  const std::size_t p = g.p();
  for (std::size_t n = 2; !f.terms.back().is_trivial(); ++n) {
    std::vector<Subgroup> factors;
    factors.push_back(power_subgroup(g, f.term((n + p - 1) / p), p));
    for (std::size_t i = 1; i <= n / 2; ++i) factors.push_back(commutator_subgroup(g, f.term(i), f.term(n - i)));
    Subgroup next = subgroup_product(g, factors);
    require(is_normal(g, next), "Zassenhaus term is not normal");
    f.terms.push_back(std::move(next));
    require(n <= 4 * g.order() + 8, "Zassenhaus filtration did not terminate");
  }
  return f;
}

Filtration zassenhaus_lazard(const FiniteGroup& g) {
  const auto lcs = lower_central_series(g);
  const std::uint64_t p = g.p();
  Filtration f;
  for (std::size_t n = 1;; ++n) {
    std::vector<Subgroup> factors;
    for (std::size_t i = 1; i <= lcs.size(); ++i) {
      // smallest k with i p^k >= n; larger k give subgroups of this one
      std::uint64_t pk = 1;
      while (i * pk < n) pk *= p;
      factors.push_back(power_subgroup(g, lcs[i - 1], pk));
    }
    Subgroup term = subgroup_product(g, factors);
    const bool done = term.is_trivial();
    f.terms.push_back(std::move(term));
    if (done) break;
    require(n <= 4 * g.order() + 8, "Lazard filtration did not terminate");
  }
  return f;
}

bool filtration_well_formed(const FiniteGroup& g, const Filtration& f) {
  if (f.terms.empty() || f.terms.front().order() != g.order() || !f.terms.back().is_trivial()) return false;
  for (std::size_t k = 0; k < f.terms.size(); ++k) {
    if (!is_normal(g, f.terms[k])) return false;
    if (k + 1 == f.terms.size()) break;
    const auto& hi = f.terms[k];
    const auto& lo = f.terms[k + 1];
    if (!lo.subset_of(hi)) return false;
    for (Elem a : hi.gens()) {
      if (!lo.contains(g.pow(a, g.p()))) return false;
      for (Elem b : hi.gens())
        if (!lo.contains(g.comm(a, b))) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- sections

FpVector ElementaryQuotient::coordinates(Elem e) const {
  require(in_section(e), "element outside the section");
  return FpVector(p, coords_of[e]);
}

ElementaryQuotient elementary_quotient_basis(const FiniteGroup& g, const Subgroup& h, const Subgroup& k) {
  require(k.subset_of(h), "elementary_quotient_basis: K is not contained in H");
  for (Elem a : k.gens())
    for (Elem x : h.gens())
      if (!k.contains(g.conj(a, x))) throw Error(ErrorKind::NotNormal, "K is not normal in H");
  for (Elem a : h.gens()) {
    if (!k.contains(g.pow(a, g.p()))) throw Error(ErrorKind::NotElementary, "H/K has exponent > p");
    for (Elem b : h.gens())
      if (!k.contains(g.comm(a, b))) throw Error(ErrorKind::NotElementary, "H/K is not abelian");
  }
  ElementaryQuotient q;
  q.p = g.p();
  std::vector<Elem> span_gens = k.gens();
  Subgroup span = k;
  for (Elem a : h.elements()) {
    if (span.contains(a)) continue;
    q.basis.push_back(a);
    span_gens.push_back(a);
    span = closure(g, span_gens);
  }
  q.coords_of.assign(g.order(), {});
  const std::size_t r = q.basis.size();
  std::vector<Scalar> c(r, 0);
  // enumerate b_1^{c_1} ... b_r^{c_r} * K
  for (;;) {
    Elem prod = 0;
    for (std::size_t i = 0; i < r; ++i) prod = g.mul(prod, g.pow(q.basis[i], c[i]));
    for (Elem x : k.elements()) q.coords_of[g.mul(prod, x)] = c;
    std::size_t i = 0;
    while (i < r && ++c[i] == q.p) c[i++] = 0;
    if (i == r) break;
  }
  return q;
}

bool is_homomorphism(const FiniteGroup& source, const FiniteGroup& target, const std::vector<Elem>& map) {
  if (map.size() != source.order() || map[0] != target.id()) return false;
  for (Elem a = 0; a < source.order(); ++a)
    for (Elem x : source.generators())
      if (map[source.mul(a, x)] != target.mul(map[a], map[x])) return false;
  return true;
}

}  // namespace zassen
