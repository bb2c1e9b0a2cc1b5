#include "zassen/linalg.hpp"

#include <algorithm>
#include <bit>

#include "zassen/error.hpp"

namespace zassen {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(Scalar p) : p_(p) {
  require(p < (1u << 16) && is_prime(p), "modulus must be a prime below 2^16");
}

Scalar PrimeField::inv(Scalar a) const {
  require(a % p_ != 0, "inverse of zero in F_p");
  // Fermat: a^(p-2)
  Scalar result = 1, base = a % p_;
  for (Scalar e = p_ - 2; e; e >>= 1) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
  }
  return result;
}

// ---------------------------------------------------------------- FpVector

FpVector::FpVector(Scalar p, std::size_t dim) : p_(p), v_(dim, 0) {}

FpVector::FpVector(Scalar p, std::vector<Scalar> entries) : p_(p), v_(std::move(entries)) {
  for (auto& x : v_) x %= p_;
}

FpVector FpVector::unit(Scalar p, std::size_t dim, std::size_t i) {
  FpVector v(p, dim);
  v.v_.at(i) = 1 % p;
  return v;
}

bool FpVector::is_zero() const noexcept {
  return std::all_of(v_.begin(), v_.end(), [](Scalar x) { return x == 0; });
}

FpVector& FpVector::operator+=(const FpVector& o) {
  require(p_ == o.p_ && dim() == o.dim(), "vector shape mismatch");
  for (std::size_t i = 0; i < v_.size(); ++i) {
    Scalar s = v_[i] + o.v_[i];
    v_[i] = s >= p_ ? s - p_ : s;
  }
  return *this;
}

FpVector& FpVector::operator-=(const FpVector& o) {
  require(p_ == o.p_ && dim() == o.dim(), "vector shape mismatch");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] = v_[i] >= o.v_[i] ? v_[i] - o.v_[i] : v_[i] + p_ - o.v_[i];
  return *this;
}

FpVector FpVector::scaled(Scalar c) const {
  FpVector r = *this;
  for (auto& x : r.v_) x = static_cast<Scalar>((std::uint64_t{x} * c) % p_);
  return r;
}

FpVector FpVector::operator-() const {
  FpVector r = *this;
  for (auto& x : r.v_) x = x == 0 ? 0 : p_ - x;
  return r;
}

Scalar FpVector::dot(const FpVector& o) const {
  require(p_ == o.p_ && dim() == o.dim(), "vector shape mismatch");
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < v_.size(); ++i) acc = (acc + std::uint64_t{v_[i]} * o.v_[i]) % p_;
  return static_cast<Scalar>(acc);
}

// ---------------------------------------------------------------- FpMatrix

FpMatrix::FpMatrix(Scalar p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FpMatrix FpMatrix::identity(Scalar p, std::size_t n) {
  FpMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FpMatrix FpMatrix::from_rows(Scalar p, const std::vector<std::vector<Scalar>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  FpMatrix m(p, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require(rows[r].size() == cols, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c] % p;
  }
  return m;
}

FpMatrix FpMatrix::from_row_vectors(Scalar p, std::size_t cols, const std::vector<FpVector>& rows) {
  FpMatrix m(p, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require(rows[r].dim() == cols && rows[r].p() == p, "row vector shape mismatch");
    std::copy(rows[r].entries().begin(), rows[r].entries().end(), m.row(r).begin());
  }
  return m;
}

FpVector FpMatrix::row_vector(std::size_t r) const {
  return FpVector(p_, std::vector<Scalar>(row(r).begin(), row(r).end()));
}

FpVector FpMatrix::operator*(const FpVector& x) const {
  require(x.dim() == cols_ && x.p() == p_, "matrix-vector shape mismatch");
  FpVector y(p_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    auto rr = row(r);
    for (std::size_t c = 0; c < cols_; ++c) acc += std::uint64_t{rr[c]} * x[c] % p_;
    y[r] = static_cast<Scalar>(acc % p_);
  }
  return y;
}

FpMatrix FpMatrix::operator*(const FpMatrix& o) const {
  require(cols_ == o.rows_ && p_ == o.p_, "matrix product shape mismatch");
  FpMatrix out(p_, rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      Scalar a = at(r, k);
      if (!a) continue;
      for (std::size_t c = 0; c < o.cols_; ++c)
        out.at(r, c) = static_cast<Scalar>((out.at(r, c) + std::uint64_t{a} * o.at(k, c)) % p_);
    }
  return out;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix t(p_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

// ---------------------------------------------------------------- rref

namespace {

RrefResult rref_gf2(const FpMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  const std::size_t words = (cols + 63) / 64;
  std::vector<std::uint64_t> bits(rows * words, 0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (m.at(r, c)) bits[r * words + c / 64] |= std::uint64_t{1} << (c % 64);

  auto row = [&](std::size_t r) { return bits.data() + r * words; };
  RrefResult res;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    std::size_t piv = rank;
    while (piv < rows && !(row(piv)[w] & mask)) ++piv;
    if (piv == rows) continue;
    if (piv != rank) std::swap_ranges(row(piv), row(piv) + words, row(rank));
    const std::uint64_t* pr = row(rank);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || !(row(r)[w] & mask)) continue;
      std::uint64_t* rr = row(r);
      for (std::size_t k = w; k < words; ++k) rr[k] ^= pr[k];
    }
    res.pivot_columns.push_back(c);
    ++rank;
  }
  res.rank = rank;
  res.reduced = FpMatrix(2, rows, cols);
  for (std::size_t r = 0; r < rank; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (row(r)[c / 64] >> (c % 64) & 1) res.reduced.at(r, c) = 1;
  return res;
}

}  // namespace

RrefResult rref(const FpMatrix& m) {
  if (m.p() == 2) return rref_gf2(m);
  const PrimeField f(m.p());
  RrefResult res;
  res.reduced = m;
  FpMatrix& a = res.reduced;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a.at(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank) std::swap_ranges(a.row(piv).begin(), a.row(piv).end(), a.row(rank).begin());
    const Scalar s = f.inv(a.at(rank, c));
    for (auto& x : a.row(rank)) x = f.mul(x, s);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      const Scalar factor = a.at(r, c);
      if (!factor) continue;
      auto rr = a.row(r);
      auto pr = a.row(rank);
      for (std::size_t k = c; k < cols; ++k) rr[k] = f.sub(rr[k], f.mul(factor, pr[k]));
    }
    res.pivot_columns.push_back(c);
    ++rank;
  }
  res.rank = rank;
  return res;
}

std::optional<FpVector> solve(const FpMatrix& m, const FpVector& b) {
  require(m.rows() == b.dim() && m.p() == b.p(), "solve: dimension mismatch");
  FpMatrix aug(m.p(), m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::copy(m.row(r).begin(), m.row(r).end(), aug.row(r).begin());
    aug.at(r, m.cols()) = b[r];
  }
  const auto red = rref(aug);
  if (!red.pivot_columns.empty() && red.pivot_columns.back() == m.cols()) return std::nullopt;
  FpVector x(m.p(), m.cols());
  for (std::size_t i = 0; i < red.rank; ++i) x[red.pivot_columns[i]] = red.reduced.at(i, m.cols());
  return x;
}

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(Scalar p, std::size_t ambient_dim) : p_(p), ambient_(ambient_dim) {}

Subspace Subspace::span(Scalar p, std::size_t ambient_dim, const std::vector<FpVector>& vectors) {
  Subspace s(p, ambient_dim);
  if (vectors.empty()) return s;
  const auto red = rref(FpMatrix::from_row_vectors(p, ambient_dim, vectors));
  for (std::size_t i = 0; i < red.rank; ++i) {
    s.basis_.push_back(red.reduced.row_vector(i));
    s.pivots_.push_back(red.pivot_columns[i]);
  }
  return s;
}

FpVector Subspace::reduce(const FpVector& v) const {
  require(v.p() == p_ && v.dim() == ambient_, "subspace: vector shape mismatch");
  FpVector r = v;
  const PrimeField f(p_);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Scalar c = r[pivots_[i]];
    if (!c) continue;
    const auto& b = basis_[i];
    for (std::size_t k = pivots_[i]; k < ambient_; ++k)
      if (b[k]) r[k] = f.sub(r[k], f.mul(c, b[k]));
  }
  return r;
}

bool Subspace::contains(const FpVector& v) const { return reduce(v).is_zero(); }

bool Subspace::contains(const Subspace& o) const {
  require(o.p_ == p_ && o.ambient_ == ambient_, "subspace: ambient mismatch");
  return std::all_of(o.basis_.begin(), o.basis_.end(), [&](const FpVector& v) { return contains(v); });
}

std::optional<FpVector> Subspace::coordinates(const FpVector& v) const {
  if (!contains(v)) return std::nullopt;
  FpVector c(p_, basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) c[i] = v[pivots_[i]];
  return c;
}

bool Subspace::insert(const FpVector& v) {
  FpVector r = reduce(v);
  std::size_t lead = 0;
  while (lead < ambient_ && r[lead] == 0) ++lead;
  if (lead == ambient_) return false;
  const PrimeField f(p_);
  r = r.scaled(f.inv(r[lead]));
  for (auto& b : basis_) {
    const Scalar c = b[lead];
    if (c) b -= r.scaled(c);
  }
  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, lead);
  basis_.insert(basis_.begin() + pos, std::move(r));
  return true;
}

Subspace kernel_basis(const FpMatrix& m) {
  const auto red = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : red.pivot_columns) is_pivot[c] = true;
  const PrimeField f(m.p());
  std::vector<FpVector> vecs;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    FpVector v(m.p(), m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < red.rank; ++i) v[red.pivot_columns[i]] = f.neg(red.reduced.at(i, free));
    vecs.push_back(std::move(v));
  }
  return Subspace::span(m.p(), m.cols(), vecs);
}

Subspace image_basis(const FpMatrix& m) {
  const auto t = m.transpose();
  std::vector<FpVector> cols;
  cols.reserve(t.rows());
  for (std::size_t r = 0; r < t.rows(); ++r) cols.push_back(t.row_vector(r));
  return Subspace::span(m.p(), m.rows(), cols);
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  require(a.p() == b.p() && a.ambient_dim() == b.ambient_dim(), "subspace_sum: ambient mismatch");
  std::vector<FpVector> all = a.basis();
  all.insert(all.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(a.p(), a.ambient_dim(), all);
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  require(a.p() == b.p() && a.ambient_dim() == b.ambient_dim(), "subspace_intersect: ambient mismatch");
  const std::size_t n = a.ambient_dim(), da = a.dim(), db = b.dim();
  if (da == 0 || db == 0) return Subspace(a.p(), n);
  // columns: a-basis then b-basis; kernel vectors (x, y) give sum x_i a_i = -sum y_j b_j
  FpMatrix m(a.p(), n, da + db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t r = 0; r < n; ++r) m.at(r, i) = a.basis()[i][r];
  for (std::size_t j = 0; j < db; ++j)
    for (std::size_t r = 0; r < n; ++r) m.at(r, da + j) = b.basis()[j][r];
  const auto ker = kernel_basis(m);
  std::vector<FpVector> vecs;
  for (const auto& k : ker.basis()) {
    FpVector v(a.p(), n);
    for (std::size_t i = 0; i < da; ++i)
      if (k[i]) v += a.basis()[i].scaled(k[i]);
    vecs.push_back(std::move(v));
  }
  return Subspace::span(a.p(), n, vecs);
}

bool contains(const Subspace& big, const Subspace& small) { return big.contains(small); }

std::vector<FpVector> quotient_basis(const Subspace& big, const Subspace& small) {
  require(big.contains(small), "quotient_basis: small is not a subspace of big");
  std::vector<FpVector> reduced;
  for (const auto& v : big.basis()) {
    auto r = small.reduce(v);
    if (!r.is_zero()) reduced.push_back(std::move(r));
  }
  return Subspace::span(big.p(), big.ambient_dim(), reduced).basis();
}

}  // namespace zassen
