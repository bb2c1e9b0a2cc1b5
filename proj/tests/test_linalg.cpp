#include <random>

#include "doctest.h"
#include "zassen/linalg.hpp"

using namespace zassen;

namespace {

FpMatrix random_matrix(Scalar p, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  FpMatrix m(p, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = static_cast<Scalar>(rng() % p);
  return m;
}

// every vector of F_p^n, by brute force
std::vector<FpVector> all_vectors(Scalar p, std::size_t n) {
  std::vector<FpVector> out;
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) total *= p;
  for (std::size_t code = 0; code < total; ++code) {
    FpVector v(p, n);
    std::size_t c = code;
    for (std::size_t k = 0; k < n; ++k, c /= p) v[k] = static_cast<Scalar>(c % p);
    out.push_back(v);
  }
  return out;
}

std::size_t count_pow(Scalar p, std::size_t dim) {
  std::size_t r = 1;
  for (std::size_t k = 0; k < dim; ++k) r *= p;
  return r;
}

}  // namespace

TEST_CASE("field arithmetic") {
  PrimeField f(7);
  for (Scalar a = 1; a < 7; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
  CHECK(f.from_int(-1) == 6);
  CHECK(f.sub(2, 5) == 4);
}

TEST_CASE("kernel size matches brute-force count") {
  std::mt19937_64 rng(11);
  for (Scalar p : {2u, 3u}) {
    const std::size_t n = p == 2 ? 8 : 5;
    const auto vs = all_vectors(p, n);
    for (int trial = 0; trial < 40; ++trial) {
      const auto m = random_matrix(p, 1 + rng() % 6, n, rng);
      std::size_t zeros = 0;
      for (const auto& v : vs) zeros += (m * v).is_zero();
      const auto ker = kernel_basis(m);
      CHECK(count_pow(p, ker.dim()) == zeros);
      CHECK(ker.dim() + rref(m).rank == n);
      for (const auto& b : ker.basis()) CHECK((m * b).is_zero());
    }
  }
}

TEST_CASE("solve returns a genuine solution or correctly reports none") {
  std::mt19937_64 rng(5);
  for (Scalar p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 60; ++trial) {
      const auto m = random_matrix(p, 1 + rng() % 6, 1 + rng() % 6, rng);
      FpVector b(p, m.rows());
      for (std::size_t i = 0; i < m.rows(); ++i) b[i] = static_cast<Scalar>(rng() % p);
      const auto x = solve(m, b);
      const auto img = image_basis(m);
      CHECK(x.has_value() == img.contains(b));
      if (x) CHECK(m * *x == b);
    }
  }
}

TEST_CASE("subspace sum and intersection dimensions") {
  std::mt19937_64 rng(3);
  for (Scalar p : {2u, 3u}) {
    const std::size_t n = p == 2 ? 7 : 4;
    const auto vs = all_vectors(p, n);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<FpVector> a, b;
      for (std::size_t k = 0; k < 1 + rng() % 4; ++k) a.push_back(random_matrix(p, 1, n, rng).row_vector(0));
      for (std::size_t k = 0; k < 1 + rng() % 4; ++k) b.push_back(random_matrix(p, 1, n, rng).row_vector(0));
      const auto A = Subspace::span(p, n, a), B = Subspace::span(p, n, b);
      const auto S = subspace_sum(A, B), I = subspace_intersect(A, B);
      CHECK(S.dim() + I.dim() == A.dim() + B.dim());
      std::size_t both = 0;
      for (const auto& v : vs) both += A.contains(v) && B.contains(v);
      CHECK(count_pow(p, I.dim()) == both);
      CHECK(contains(S, A));
      CHECK(contains(A, I));
      const auto q = quotient_basis(S, A);
      CHECK(q.size() == S.dim() - A.dim());
    }
  }
}

TEST_CASE("equal subspaces compare equal regardless of spanning set") {
  const Scalar p = 3;
  FpVector a(p, {1, 2, 0}), b(p, {0, 1, 1});
  const auto s1 = Subspace::span(p, 3, {a, b});
  const auto s2 = Subspace::span(p, 3, {a + b, a - b, b.scaled(2)});
  CHECK(s1 == s2);
  const auto c = s1.coordinates(a + b.scaled(2));
  REQUIRE(c.has_value());
}

TEST_CASE("matrix product and transpose") {
  std::mt19937_64 rng(9);
  const auto a = random_matrix(5, 3, 4, rng), b = random_matrix(5, 4, 2, rng);
  const auto ab = a * b;
  CHECK((b.transpose() * a.transpose()) == ab.transpose());
  CHECK((FpMatrix::identity(5, 3) * a) == a);
}
