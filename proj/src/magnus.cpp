#include "zassen/magnus.hpp"

#include <string>

#include "zassen/error.hpp"

namespace zassen {

namespace {

struct SeriesHash {
  std::size_t operator()(const std::vector<Scalar>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

std::vector<std::string> x_labels(std::size_t d) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= d; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

}  // namespace

TruncatedFreeAlgebra::TruncatedFreeAlgebra(Scalar p, std::size_t d, std::size_t m) : p_(p), d_(d), m_(m) {
  require(is_prime(p), "p must be prime");
  require(d >= 1 && m >= 1, "need d >= 1 and m >= 1");
  std::size_t width = 1;
  for (std::size_t k = 0; k < m; ++k) {
    offset_.push_back(dim_);
    for (std::size_t w = 0; w < width; ++w) degree_.push_back(k);
    dim_ += width;
    width *= d;
    require(dim_ <= 4096, "truncated algebra too large");
  }
  offset_.push_back(dim_);
  concat_.assign(dim_ * dim_, dim_);
  std::vector<std::size_t> pow_d{1};
  for (std::size_t k = 1; k < m; ++k) pow_d.push_back(pow_d.back() * d);
  for (std::size_t a = 0; a < dim_; ++a)
    for (std::size_t b = 0; b < dim_; ++b) {
      const std::size_t da = degree_[a], db = degree_[b];
      if (da + db >= m) continue;
      concat_[a * dim_ + b] = offset_[da + db] + (a - offset_[da]) * pow_d[db] + (b - offset_[db]);
    }
}

Series TruncatedFreeAlgebra::one() const {
  Series s(dim_, 0);
  s[0] = 1;
  return s;
}

Series TruncatedFreeAlgebra::generator(std::size_t i) const {
  require(i < d_ && m_ >= 2, "generator index out of range");
  Series s(dim_, 0);
  s[offset_[1] + i] = 1;
  return s;
}

Series TruncatedFreeAlgebra::add(const Series& a, const Series& b) const {
  const PrimeField f(p_);
  Series s(dim_);
  for (std::size_t k = 0; k < dim_; ++k) s[k] = f.add(a[k], b[k]);
  return s;
}

Series TruncatedFreeAlgebra::mul(const Series& a, const Series& b) const {
  const PrimeField f(p_);
  Series s(dim_, 0);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!a[i]) continue;
    const std::size_t* row = &concat_[i * dim_];
    for (std::size_t j = 0; j < dim_; ++j)
      if (b[j] && row[j] < dim_) s[row[j]] = f.add(s[row[j]], f.mul(a[i], b[j]));
  }
  return s;
}

std::size_t TruncatedFreeAlgebra::valuation(const Series& a) const {
  for (std::size_t k = 0; k < dim_; ++k)
    if (a[k]) return degree_[k];
  return m_;
}

MagnusGroup build_magnus_group(Scalar p, std::size_t d, std::size_t m) {
  TruncatedFreeAlgebra alg(p, d, m);
  std::vector<Series> gens;
  for (std::size_t i = 0; i < d; ++i) gens.push_back(m >= 2 ? alg.add(alg.one(), alg.generator(i)) : alg.one());
  auto mul = [&](const Series& a, const Series& b) { return alg.mul(a, b); };
  auto [group, elems] = materialize_group<Series, decltype(mul), SeriesHash>(p, alg.one(), gens, mul, x_labels(d));
  return {std::move(alg), std::move(group), std::move(elems)};
}

Filtration degree_filtration(const MagnusGroup& g) {
  const auto& alg = g.algebra;
  Filtration f;
  for (std::size_t k = 1;; ++k) {
    std::vector<Elem> elems;
    for (Elem e = 0; e < g.group.order(); ++e) {
      Series s = g.series_of[e];
      s[0] = 0;
      if (alg.valuation(s) >= k) elems.push_back(e);
    }
    f.terms.push_back(subgroup_from_elements(g.group, std::move(elems)));
    if (f.terms.back().is_trivial()) break;
  }
  return f;
}

Filtration dimension_subgroups(const FiniteGroup& g) {
  const std::size_t n = g.order();
  const Scalar p = g.p();
  const PrimeField f(p);
  auto minus_one = [&](Elem h) {
    FpVector v(p, n);
    v[h] = f.add(v[h], 1);
    v[0] = f.sub(v[0], 1);
    return v;
  };
  std::vector<FpVector> aug;
  for (Elem h = 1; h < n; ++h) aug.push_back(minus_one(h));
  Subspace power = Subspace::span(p, n, aug);
  Filtration out;
  for (;;) {
    std::vector<Elem> elems;
    for (Elem h = 0; h < n; ++h)
      if (h == 0 || power.contains(minus_one(h))) elems.push_back(h);
    out.terms.push_back(subgroup_from_elements(g, std::move(elems)));
    if (out.terms.back().is_trivial()) break;
    // I^{k+1} = span{ b * (h - 1) } over a basis b of I^k
    Subspace next(p, n);
    for (const auto& b : power.basis())
      for (Elem h = 1; h < n; ++h) {
        FpVector prod(p, n);
        for (Elem x = 0; x < n; ++x)
          if (b[x]) {
            const Elem xh = g.mul(x, h);
            prod[xh] = f.add(prod[xh], b[x]);
            prod[x] = f.sub(prod[x], b[x]);
          }
        next.insert(prod);
        if (next.dim() == power.dim()) break;
      }
    require(next.dim() < power.dim() || power.dim() == 0, "augmentation ideal is not nilpotent");
    power = std::move(next);
  }
  return out;
}

FiniteGroup build_cyclic_group(Scalar p, std::size_t order) {
  require(is_prime(p), "p must be prime");
  std::size_t t = order;
  while (t % p == 0) t /= p;
  require(t == 1 && order >= 1, "cyclic group order must be a power of p");
  if (order > kMaxGroupOrder) throw Error(ErrorKind::TooLarge, "cyclic group exceeds the order cap");
  std::vector<std::uint16_t> table(order * order);
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) table[a * order + b] = static_cast<std::uint16_t>((a + b) % order);
  std::vector<Elem> gens;
  if (order > 1) gens.push_back(1);
  return FiniteGroup(p, std::move(table), std::move(gens), order > 1 ? x_labels(1) : std::vector<std::string>{});
}

FiniteGroup build_unipotent_group(Scalar p, std::size_t size, const std::optional<std::vector<Matrix>>& generators) {
  require(is_prime(p) && size >= 1, "bad unipotent group parameters");
  const PrimeField f(p);
  Matrix one(size * size, 0);
  for (std::size_t i = 0; i < size; ++i) one[i * size + i] = 1;
  std::vector<Matrix> gens;
  if (generators) {
    for (const auto& m : *generators) {
      require(m.size() == size * size, "generator matrix has the wrong size");
      for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
          if (m[i * size + j] != (i == j ? 1u : 0u))
            throw Error(ErrorKind::Contract, "generator is not upper unitriangular");
        }
      for (auto x : m) require(x < p, "matrix entry not reduced mod p");
      gens.push_back(m);
    }
  } else {
    for (std::size_t i = 0; i + 1 < size; ++i) {
      Matrix m = one;
      m[i * size + i + 1] = 1;
      gens.push_back(m);
    }
  }
  auto mul = [&](const Matrix& a, const Matrix& b) {
    Matrix c(size * size, 0);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t k = i; k < size; ++k) {
        const Scalar x = a[i * size + k];
        if (!x) continue;
        for (std::size_t j = k; j < size; ++j) c[i * size + j] = f.add(c[i * size + j], f.mul(x, b[k * size + j]));
      }
    return c;
  };
  auto group = materialize_group<Matrix, decltype(mul), SeriesHash>(p, one, gens, mul, x_labels(gens.size()));
  return std::move(group.first);
}

}  // namespace zassen
