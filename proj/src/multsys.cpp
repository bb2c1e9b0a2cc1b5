#include "zassen/multsys.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "zassen/error.hpp"

namespace zassen {

// ---------------------------------------------------------------- BilinearMap

BilinearMap::BilinearMap(Scalar p, std::size_t dim_a, std::size_t dim_b, std::size_t dim_c)
    : p_(p), da_(dim_a), db_(dim_b), dc_(dim_c), t_(dim_a * dim_b * dim_c, 0) {}

BilinearMap::BilinearMap(Scalar p, std::size_t dim_a, std::size_t dim_b, std::size_t dim_c,
                         std::vector<Scalar> tensor)
    : p_(p), da_(dim_a), db_(dim_b), dc_(dim_c), t_(std::move(tensor)) {
  require(t_.size() == da_ * db_ * dc_, "bilinear map tensor has the wrong size");
  for (auto& x : t_) require(x < p_, "tensor entry not reduced mod p");
}

bool BilinearMap::is_zero() const noexcept {
  return std::all_of(t_.begin(), t_.end(), [](Scalar x) { return x == 0; });
}

FpVector BilinearMap::apply(const FpVector& x, const FpVector& y) const {
  require(x.dim() == da_ && y.dim() == db_, "bilinear map argument shape mismatch");
  const PrimeField f(p_);
  FpVector out(p_, dc_);
  for (std::size_t a = 0; a < da_; ++a) {
    if (!x[a]) continue;
    for (std::size_t b = 0; b < db_; ++b) {
      const Scalar xy = f.mul(x[a], y[b]);
      if (!xy) continue;
      for (std::size_t c = 0; c < dc_; ++c) out[c] = f.add(out[c], f.mul(xy, at(a, b, c)));
    }
  }
  return out;
}

// ---------------------------------------------------------------- MultSystem

MultSystem::MultSystem(Scalar p, std::size_t n, const Dims& dims,
                       const std::function<BilinearMap(std::size_t, std::size_t, std::size_t)>& pairing)
    : p_(p), n_(n) {
  require(is_prime(p) && p < (1u << 16), "multiplicative system needs a prime p < 2^16");
  require(n >= 1 && n <= 12, "rank out of range");
  dims_.assign(n + 2, std::vector<std::size_t>(n + 2, 0));
  for (std::size_t i = 1; i <= n + 1; ++i)
    for (std::size_t j = i + 1; j <= n + 1; ++j) {
      require(i < dims.size() && j < dims[i].size(), "dims table too small");
      dims_[i][j] = dims[i][j];
    }
  pairings_.assign(n + 2, std::vector<std::vector<BilinearMap>>(n + 2, std::vector<BilinearMap>(n + 2)));
  for (std::size_t i = 1; i <= n + 1; ++i)
    for (std::size_t j = i + 1; j <= n + 1; ++j)
      for (std::size_t k = j + 1; k <= n + 1; ++k) {
        BilinearMap m = pairing ? pairing(i, j, k) : BilinearMap(p, dims_[i][j], dims_[j][k], dims_[i][k]);
        if (m.p() != p || m.dim_a() != dims_[i][j] || m.dim_b() != dims_[j][k] || m.dim_c() != dims_[i][k])
          throw Error(ErrorKind::InvalidSystem, "pairing shape does not match dims");
        pairings_[i][j][k] = std::move(m);
      }
  layout();
  check_associative();
}

MultSystem MultSystem::standard(Scalar p, std::size_t n) {
  Dims dims(n + 2, std::vector<std::size_t>(n + 2, 1));
  return MultSystem(p, n, dims, [p](std::size_t, std::size_t, std::size_t) {
    return BilinearMap(p, 1, 1, 1, {1 % p});
  });
}

MultSystem MultSystem::zero(Scalar p, std::size_t n, const Dims& dims) { return MultSystem(p, n, dims); }

const BilinearMap& MultSystem::pairing(std::size_t i, std::size_t j, std::size_t k) const {
  require(1 <= i && i < j && j < k && k <= n_ + 1, "pairing index out of range");
  return pairings_[i][j][k];
}

void MultSystem::layout() {
  offset_.assign(n_ + 2, std::vector<std::size_t>(n_ + 2, 0));
  total_ = 0;
  for (std::size_t level = 1; level <= n_; ++level)
    for (std::size_t i = 1; i + level <= n_ + 1; ++i) {
      const std::size_t j = i + level;
      slots_.push_back({i, j});
      offset_[i][j] = total_;
      total_ += dims_[i][j];
    }
  for (std::size_t i = 1; i <= n_ + 1; ++i)
    for (std::size_t j = i + 2; j <= n_ + 1; ++j)
      for (std::size_t k = i + 1; k < j; ++k) {
        const auto& mu = pairings_[i][k][j];
        for (std::size_t a = 0; a < mu.dim_a(); ++a)
          for (std::size_t b = 0; b < mu.dim_b(); ++b)
            for (std::size_t c = 0; c < mu.dim_c(); ++c)
              if (Scalar t = mu.at(a, b, c))
                terms_.push_back({static_cast<std::uint32_t>(offset_[i][k] + a),
                                  static_cast<std::uint32_t>(offset_[k][j] + b),
                                  static_cast<std::uint32_t>(offset_[i][j] + c), t});
      }
}

void MultSystem::check_associative() const {
  const PrimeField f(p_);
  for (std::size_t i = 1; i <= n_ + 1; ++i)
    for (std::size_t j = i + 1; j <= n_ + 1; ++j)
      for (std::size_t k = j + 1; k <= n_ + 1; ++k)
        for (std::size_t l = k + 1; l <= n_ + 1; ++l) {
          const auto &ijk = pairings_[i][j][k], &ikl = pairings_[i][k][l];
          const auto &jkl = pairings_[j][k][l], &ijl = pairings_[i][j][l];
          for (std::size_t a = 0; a < dims_[i][j]; ++a)
            for (std::size_t b = 0; b < dims_[j][k]; ++b)
              for (std::size_t c = 0; c < dims_[k][l]; ++c)
                for (std::size_t e = 0; e < dims_[i][l]; ++e) {
                  Scalar lhs = 0, rhs = 0;
                  for (std::size_t m = 0; m < dims_[i][k]; ++m) lhs = f.add(lhs, f.mul(ijk.at(a, b, m), ikl.at(m, c, e)));
                  for (std::size_t m = 0; m < dims_[j][l]; ++m) rhs = f.add(rhs, f.mul(jkl.at(b, c, m), ijl.at(a, m, e)));
                  if (lhs != rhs)
                    throw Error(ErrorKind::InvalidSystem, "pairings are not associative at (" + std::to_string(i) +
                                                              "," + std::to_string(j) + "," + std::to_string(k) +
                                                              "," + std::to_string(l) + ")");
                }
        }
}

std::size_t MultSystem::level_prefix(std::size_t level) const {
  if (level == 0) return 0;
  if (level >= n_) return total_;
  const std::size_t i = 1, j = 1 + level + 1;  // first slot of the next level
  return offset_[i][j];
}

std::uint64_t MultSystem::u_order(std::size_t d) const {
  const std::size_t free = total_ - level_prefix(d - 1);
  std::uint64_t o = 1;
  for (std::size_t k = 0; k < free; ++k) {
    require(o <= (std::uint64_t{1} << 62) / p_, "U order overflows");
    o *= p_;
  }
  return o;
}

std::uint64_t MultSystem::encode(std::span<const Scalar> coords) const {
  std::uint64_t code = 0;
  for (std::size_t k = coords.size(); k-- > 0;) code = code * p_ + coords[k];
  return code;
}

std::vector<Scalar> MultSystem::decode(std::uint64_t code) const {
  std::vector<Scalar> c(total_);
  for (auto& x : c) {
    x = static_cast<Scalar>(code % p_);
    code /= p_;
  }
  return c;
}

// ---------------------------------------------------------------- V and U

VElement::VElement(SystemPtr sys, std::size_t level)
    : sys_(std::move(sys)), level_(level), coords_(sys_->total_dim(), 0) {
  require(level >= 1, "level must be >= 1");
}

VElement::VElement(SystemPtr sys, std::vector<Scalar> coords, std::size_t level)
    : sys_(std::move(sys)), level_(level), coords_(std::move(coords)) {
  require(level >= 1 && coords_.size() == sys_->total_dim(), "coordinate vector has the wrong length");
  for (std::size_t k = 0; k < sys_->level_prefix(std::min(level - 1, sys_->rank())); ++k)
    require(coords_[k] == 0, "entry below the declared level is nonzero");
  for (auto x : coords_) require(x < sys_->p(), "coordinate not reduced mod p");
}

std::size_t VElement::exact_level() const {
  const auto& s = *sys_;
  for (std::size_t level = 1; level <= s.rank(); ++level)
    for (std::size_t k = s.level_prefix(level - 1); k < s.level_prefix(level); ++k)
      if (coords_[k]) return level;
  return s.rank() + 1;
}

VElement VElement::normalized() const {
  VElement v = *this;
  v.level_ = exact_level();
  return v;
}

FpVector VElement::entry(std::size_t i, std::size_t j) const {
  const auto off = sys_->offset(i, j);
  return FpVector(sys_->p(), std::vector<Scalar>(coords_.begin() + off, coords_.begin() + off + sys_->dim(i, j)));
}

void VElement::set_entry(std::size_t i, std::size_t j, const FpVector& v) {
  require(v.dim() == sys_->dim(i, j), "entry dimension mismatch");
  if (!v.is_zero()) require(j - i >= level_, "entry below the declared level");
  std::copy(v.entries().begin(), v.entries().end(), coords_.begin() + sys_->offset(i, j));
}

bool VElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](Scalar x) { return x == 0; });
}

namespace {

void same_system(const VElement& a, const VElement& b) {
  require(a.system_ptr() == b.system_ptr() || a.system() == b.system(), "elements of different systems");
}

}  // namespace

VElement v_add(const VElement& a, const VElement& b) {
  same_system(a, b);
  const PrimeField f(a.system().p());
  std::vector<Scalar> c(a.coords().size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = f.add(a.coords()[k], b.coords()[k]);
  return VElement(a.system_ptr(), std::move(c), std::min(a.level(), b.level()));
}

VElement v_neg(const VElement& a) {
  const PrimeField f(a.system().p());
  std::vector<Scalar> c(a.coords());
  for (auto& x : c) x = f.neg(x);
  return VElement(a.system_ptr(), std::move(c), a.level());
}

VElement v_mul(const VElement& a, const VElement& b) {
  same_system(a, b);
  const auto& s = a.system();
  const PrimeField f(s.p());
  std::vector<Scalar> c(a.coords().size(), 0);
  for (const auto& t : s.terms()) {
    const Scalar x = a.coords()[t.a], y = b.coords()[t.b];
    if (x && y) c[t.c] = f.add(c[t.c], f.mul(t.coef, f.mul(x, y)));
  }
  return VElement(a.system_ptr(), std::move(c), std::min(s.rank() + 1, a.level() + b.level()));
}

UElement u_mul(const UElement& u, const UElement& v) {
  return UElement(v_add(v_add(u.a(), v.a()), v_mul(u.a(), v.a())));
}

UElement u_inv(const UElement& u) {
  // (1+a)^-1 = 1 - a + a^2 - ...; a is nilpotent
  VElement sum(u.a().system_ptr(), u.a().level());
  VElement power = u.a();
  for (bool odd = true; !power.is_zero(); odd = !odd) {
    sum = v_add(sum, odd ? v_neg(power) : power);
    power = v_mul(power, u.a());
  }
  return UElement(sum);
}

UElement u_comm(const UElement& u, const UElement& v) { return u_mul(u_mul(u_inv(u), u_inv(v)), u_mul(u, v)); }

UElement u_pow(const UElement& u, std::uint64_t k) {
  UElement result = UElement::one(u.a().system_ptr());
  UElement base = u;
  for (; k; k >>= 1) {
    if (k & 1) result = u_mul(result, base);
    base = u_mul(base, base);
  }
  return result;
}

std::vector<UElement> enumerate_U(const SystemPtr& sys, std::size_t d, std::size_t max_total_dim) {
  require(d >= 1, "level must be >= 1");
  const std::size_t skip = sys->level_prefix(d - 1);
  const std::size_t free = sys->total_dim() - skip;
  if (sys->total_dim() > max_total_dim) throw Error(ErrorKind::TooLarge, "U(A) too large to enumerate");
  std::uint64_t stride = 1;
  for (std::size_t k = 0; k < skip; ++k) stride *= sys->p();
  const std::uint64_t count = sys->u_order(d);
  std::vector<UElement> out;
  out.reserve(count);
  (void)free;
  for (std::uint64_t t = 0; t < count; ++t)
    out.emplace_back(VElement(sys, sys->decode(t * stride), std::min(d, sys->rank() + 1)));
  return out;
}

FiniteGroup u_group(const MultSystem& sys, std::size_t max_level) {
  require(max_level >= 1 && max_level <= sys.rank(), "truncation level out of range");
  const std::size_t width = sys.level_prefix(max_level);
  std::uint64_t n = 1;
  for (std::size_t k = 0; k < width; ++k) {
    n *= sys.p();
    if (n > kMaxGroupOrder) throw Error(ErrorKind::TooLarge, "U(A) exceeds the group order cap");
  }
  // right multiplication by the coordinate units 1 + e_t, then every other
  // product through a BFS tree over those units
  std::vector<std::uint64_t> units;
  for (std::uint64_t u = 1, k = 0; k < width; ++k, u *= sys.p()) units.push_back(u);
  const std::size_t nu = units.size();
  std::vector<std::uint16_t> right(n * nu);
  if (sys.p() == 2) {
    // codes are bit masks: x*y = x ^ y ^ sum_{a in x} L_a(y)
    std::vector<std::vector<std::uint32_t>> lin(width, std::vector<std::uint32_t>(nu, 0));
    for (const auto& t : sys.terms())
      if (t.c < width) lin[t.a][t.b] ^= 1u << t.c;
    for (std::uint64_t x = 0; x < n; ++x)
      for (std::size_t u = 0; u < nu; ++u) {
        std::uint32_t z = static_cast<std::uint32_t>(x ^ units[u]);
        for (std::uint64_t bits = x; bits; bits &= bits - 1) z ^= lin[std::countr_zero(bits)][u];
        right[x * nu + u] = static_cast<std::uint16_t>(z);
      }
  } else {
    const PrimeField f(sys.p());
    std::vector<MultSystem::Term> terms;
    for (const auto& t : sys.terms())
      if (t.c < width) terms.push_back(t);
    std::vector<Scalar> z(width);
    for (std::uint64_t x = 0; x < n; ++x) {
      auto cx = sys.decode(x);
      cx.resize(width);
      for (std::size_t u = 0; u < nu; ++u) {
        z = cx;
        z[u] = f.add(z[u], 1);
        for (const auto& t : terms)
          if (t.b == u && cx[t.a]) z[t.c] = f.add(z[t.c], f.mul(t.coef, cx[t.a]));
        right[x * nu + u] = static_cast<std::uint16_t>(sys.encode(z));
      }
    }
  }
  std::vector<std::uint32_t> parent(n, 0), via(n, 0), order{0};
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  for (std::size_t q = 0; q < order.size(); ++q)
    for (std::size_t u = 0; u < nu; ++u) {
      const std::uint32_t y = right[order[q] * nu + u];
      if (seen[y]) continue;
      seen[y] = 1;
      parent[y] = order[q];
      via[y] = static_cast<std::uint32_t>(u);
      order.push_back(y);
    }
  require(order.size() == n, "coordinate units do not generate U(A)");
  std::vector<std::uint16_t> table(n * n);
  for (std::uint64_t x = 0; x < n; ++x) {
    std::uint16_t* row = &table[x * n];
    row[0] = static_cast<std::uint16_t>(x);
    for (std::size_t q = 1; q < n; ++q) {
      const std::uint32_t y = order[q];
      row[y] = right[row[parent[y]] * nu + via[y]];
    }
  }
  std::vector<Elem> gens;
  std::vector<std::string> labels;
  std::uint64_t unit = 1;
  for (const auto& s : sys.slots())
    for (std::size_t a = 0; a < sys.dim(s.i, s.j); ++a) {
      if (sys.offset(s.i, s.j) + a >= width) break;
      gens.push_back(static_cast<Elem>(unit));
      labels.push_back("e" + std::to_string(s.i) + std::to_string(s.j) + (sys.dim(s.i, s.j) > 1 ? "_" + std::to_string(a + 1) : ""));
      unit *= sys.p();
    }
  return FiniteGroup(sys.p(), std::move(table), std::move(gens), std::move(labels));
}

// ---------------------------------------------------------------- embedding

UElement LowerRankEmbedding::inject(const UElement& u, const SystemPtr& target) const {
  require(*target == system, "embedding target mismatch");
  std::vector<Scalar> c(system.total_dim(), 0);
  for (std::size_t k = 0; k < u.a().coords().size(); ++k) c[coord_map[k]] = u.a().coords()[k];
  return UElement(VElement(target, std::move(c), u.a().level()));
}

std::uint64_t LowerRankEmbedding::inject_code(const MultSystem& lower, std::uint64_t code) const {
  const auto lc = lower.decode(code);
  std::vector<Scalar> c(system.total_dim(), 0);
  for (std::size_t k = 0; k < lc.size(); ++k) c[coord_map[k]] = lc[k];
  return system.encode(c);
}

LowerRankEmbedding embed_lower_rank(const MultSystem& lower) {
  const std::size_t n = lower.rank() + 1;
  MultSystem::Dims dims(n + 2, std::vector<std::size_t>(n + 2, 0));
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) dims[i][j] = lower.dim(i, j);
    dims[i][n + 1] = 1;
  }
  MultSystem sys(lower.p(), n, dims, [&](std::size_t i, std::size_t j, std::size_t k) {
    if (k <= n) return lower.pairing(i, j, k);
    return BilinearMap(lower.p(), dims[i][j], dims[j][k], dims[i][k]);
  });
  std::vector<std::size_t> map(lower.total_dim());
  for (const auto& s : lower.slots())
    for (std::size_t a = 0; a < lower.dim(s.i, s.j); ++a) map[lower.offset(s.i, s.j) + a] = sys.offset(s.i, s.j) + a;
  return {std::move(sys), std::move(map)};
}

// ---------------------------------------------------------------- catalog

namespace {

using PairingTable = std::vector<std::vector<std::vector<BilinearMap>>>;

/// Associativity constraints that are linear in the pairings landing in slot
/// (i, i+s), given all pairings with shorter output span.
struct Stage {
  std::size_t i, s;
  std::vector<std::size_t> js;       // middle indices j
  std::vector<std::size_t> offsets;  // unknown offset of mu_{i,j,i+s}
  std::size_t unknowns = 0;
};

Stage make_stage(const MultSystem::Dims& dims, std::size_t i, std::size_t s) {
  Stage st{i, s, {}, {}, 0};
  const std::size_t t = i + s;
  for (std::size_t j = i + 1; j < t; ++j) {
    st.js.push_back(j);
    st.offsets.push_back(st.unknowns);
    st.unknowns += dims[i][j] * dims[j][t] * dims[i][t];
  }
  return st;
}

Subspace stage_solutions(Scalar p, const MultSystem::Dims& dims, const PairingTable& P, const Stage& st) {
  const PrimeField f(p);
  const std::size_t i = st.i, t = st.i + st.s, dt = dims[i][t];
  auto unknown = [&](std::size_t jpos, std::size_t a, std::size_t b, std::size_t c) {
    const std::size_t j = st.js[jpos];
    return st.offsets[jpos] + (a * dims[j][t] + b) * dt + c;
  };
  std::vector<FpVector> rows;
  for (std::size_t jp = 0; jp < st.js.size(); ++jp)
    for (std::size_t kp = jp + 1; kp < st.js.size(); ++kp) {
      const std::size_t j = st.js[jp], k = st.js[kp];
      const auto& ijk = P[i][j][k];
      const auto& jkt = P[j][k][t];
      for (std::size_t a = 0; a < dims[i][j]; ++a)
        for (std::size_t b = 0; b < dims[j][k]; ++b)
          for (std::size_t c = 0; c < dims[k][t]; ++c)
            for (std::size_t e = 0; e < dt; ++e) {
              FpVector row(p, st.unknowns);
              // mu_ikt(mu_ijk(a,b), c) - mu_ijt(a, mu_jkt(b,c)) = 0
              for (std::size_t m = 0; m < dims[i][k]; ++m) {
                const std::size_t u = unknown(kp, m, c, e);
                row[u] = f.add(row[u], ijk.at(a, b, m));
              }
              for (std::size_t m = 0; m < dims[j][t]; ++m) {
                const std::size_t u = unknown(jp, a, m, e);
                row[u] = f.sub(row[u], jkt.at(b, c, m));
              }
              if (!row.is_zero()) rows.push_back(std::move(row));
            }
    }
  if (rows.empty()) {
    std::vector<FpVector> all;
    for (std::size_t u = 0; u < st.unknowns; ++u) all.push_back(FpVector::unit(p, st.unknowns, u));
    return Subspace::span(p, st.unknowns, all);
  }
  return kernel_basis(FpMatrix::from_row_vectors(p, st.unknowns, rows));
}

void assign_stage(Scalar p, const MultSystem::Dims& dims, PairingTable& P, const Stage& st, const FpVector& x) {
  const std::size_t i = st.i, t = st.i + st.s;
  for (std::size_t jp = 0; jp < st.js.size(); ++jp) {
    const std::size_t j = st.js[jp];
    const std::size_t len = dims[i][j] * dims[j][t] * dims[i][t];
    std::vector<Scalar> tensor(x.entries().begin() + st.offsets[jp], x.entries().begin() + st.offsets[jp] + len);
    P[i][j][t] = BilinearMap(p, dims[i][j], dims[j][t], dims[i][t], std::move(tensor));
  }
}

std::vector<Stage> stages_for(const MultSystem::Dims& dims, std::size_t n) {
  std::vector<Stage> out;
  for (std::size_t s = 2; s <= n; ++s)
    for (std::size_t i = 1; i + s <= n + 1; ++i) out.push_back(make_stage(dims, i, s));
  return out;
}

PairingTable empty_pairings(std::size_t n) {
  return PairingTable(n + 2, std::vector<std::vector<BilinearMap>>(n + 2, std::vector<BilinearMap>(n + 2)));
}

MultSystem build(Scalar p, std::size_t n, const MultSystem::Dims& dims, const PairingTable& P) {
  return MultSystem(p, n, dims, [&](std::size_t i, std::size_t j, std::size_t k) { return P[i][j][k]; });
}

}  // namespace

MultSystem random_system(Scalar p, std::size_t n, const MultSystem::Dims& dims, std::mt19937_64& rng) {
  auto P = empty_pairings(n);
  for (const auto& st : stages_for(dims, n)) {
    const auto sol = stage_solutions(p, dims, P, st);
    FpVector x(p, st.unknowns);
    for (const auto& b : sol.basis()) x += b.scaled(static_cast<Scalar>(rng() % p));
    assign_stage(p, dims, P, st, x);
  }
  return build(p, n, dims, P);
}

std::size_t visit_catalog(const CatalogOptions& opts, const std::function<bool(const MultSystem&)>& visit) {
  require(opts.max_dim >= 1, "catalog max_dim must be >= 1");
  const Scalar p = opts.p;
  const std::size_t n = opts.rank;
  std::size_t visited = 0;
  bool stop = false;
  const MultSystem standard = MultSystem::standard(p, n);
  if (opts.include_standard) {
    ++visited;
    if (!visit(standard)) return visited;
  }

  std::vector<Slot> free_slots;
  for (std::size_t level = 1; level <= n; ++level)
    for (std::size_t i = 1; i + level <= n + 1; ++i)
      if (!(i == 1 && i + level == n + 1)) free_slots.push_back({i, i + level});

  MultSystem::Dims dims(n + 2, std::vector<std::size_t>(n + 2, 0));
  dims[1][n + 1] = 1;
  std::vector<std::size_t> odo(free_slots.size(), 1);
  for (;;) {
    std::size_t total = 1;
    for (std::size_t k = 0; k < free_slots.size(); ++k) {
      dims[free_slots[k].i][free_slots[k].j] = odo[k];
      total += odo[k];
    }
    if (total <= opts.max_total_dim) {
      const auto stages = stages_for(dims, n);
      auto P = empty_pairings(n);
      // depth-first over the solution space of each stage, in order
      std::function<void(std::size_t)> rec = [&](std::size_t depth) {
        if (stop) return;
        if (depth == stages.size()) {
          MultSystem sys = build(p, n, dims, P);
          if (opts.include_standard && sys == standard) return;
          ++visited;
          if (!visit(sys)) stop = true;
          return;
        }
        const auto& st = stages[depth];
        const auto sol = stage_solutions(p, dims, P, st);
        const std::size_t r = sol.dim();
        if (r * std::log2(static_cast<double>(p)) > 40) throw Error(ErrorKind::TooLarge, "catalog stage too large");
        std::vector<Scalar> coef(r, 0);
        for (;;) {
          FpVector x(p, st.unknowns);
          for (std::size_t b = 0; b < r; ++b)
            if (coef[b]) x += sol.basis()[b].scaled(coef[b]);
          assign_stage(p, dims, P, st, x);
          rec(depth + 1);
          if (stop) return;
          std::size_t b = r;
          while (b > 0 && ++coef[b - 1] == p) coef[--b] = 0;
          if (b == 0) break;
        }
      };
      rec(0);
    }
    if (stop) break;
    std::size_t k = free_slots.size();
    while (k > 0 && ++odo[k - 1] > opts.max_dim) odo[--k] = 1;
    if (k == 0) break;
  }
  return visited;
}

std::vector<MultSystem> catalog(const CatalogOptions& opts, std::size_t limit) {
  std::vector<MultSystem> out;
  if (limit == 0) return out;
  visit_catalog(opts, [&](const MultSystem& s) {
    out.push_back(s);
    return out.size() < limit;
  });
  return out;
}

}  // namespace zassen
