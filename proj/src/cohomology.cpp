#include "zassen/cohomology.hpp"

#include <algorithm>

#include "zassen/error.hpp"

namespace zassen {

// ---------------------------------------------------------------- cochains

Cochain1::Cochain1(Scalar p, std::size_t order, std::size_t cod_dim)
    : p_(p), order_(order), cod_(cod_dim), v_(order * cod_dim, 0) {}

FpVector Cochain1::value(Elem g) const {
  return FpVector(p_, std::vector<Scalar>(v_.begin() + g * cod_, v_.begin() + (g + 1) * cod_));
}

void Cochain1::set(Elem g, const FpVector& x) {
  require(x.dim() == cod_, "cochain value has the wrong dimension");
  require(g != 0 || x.is_zero(), "cochains are normalized");
  std::copy(x.entries().begin(), x.entries().end(), v_.begin() + g * cod_);
}

bool Cochain1::is_zero() const noexcept {
  return std::all_of(v_.begin(), v_.end(), [](Scalar x) { return x == 0; });
}

Cochain1& Cochain1::operator+=(const Cochain1& o) {
  require(o.order_ == order_ && o.cod_ == cod_, "cochain shape mismatch");
  const PrimeField f(p_);
  for (std::size_t k = 0; k < v_.size(); ++k) v_[k] = f.add(v_[k], o.v_[k]);
  return *this;
}

Cochain1 Cochain1::scaled(Scalar c) const {
  const PrimeField f(p_);
  Cochain1 r = *this;
  for (auto& x : r.v_) x = f.mul(x, c);
  return r;
}

Cochain2::Cochain2(Scalar p, std::size_t order, std::size_t cod_dim)
    : p_(p), order_(order), cod_(cod_dim), v_(order * order * cod_dim, 0) {}

FpVector Cochain2::value(Elem g, Elem h) const {
  const auto base = (g * order_ + h) * cod_;
  return FpVector(p_, std::vector<Scalar>(v_.begin() + base, v_.begin() + base + cod_));
}

bool Cochain2::is_zero() const noexcept {
  return std::all_of(v_.begin(), v_.end(), [](Scalar x) { return x == 0; });
}

bool Cochain2::is_normalized() const {
  for (Elem g = 0; g < order_; ++g)
    for (std::size_t t = 0; t < cod_; ++t)
      if (at(0, g, t) || at(g, 0, t)) return false;
  return true;
}

FpVector Cochain2::component(std::size_t t) const {
  FpVector out(p_, order_ * order_);
  for (std::size_t k = 0; k < order_ * order_; ++k) out[k] = v_[k * cod_ + t];
  return out;
}

Cochain2& Cochain2::operator+=(const Cochain2& o) {
  require(o.order_ == order_ && o.cod_ == cod_, "cochain shape mismatch");
  const PrimeField f(p_);
  for (std::size_t k = 0; k < v_.size(); ++k) v_[k] = f.add(v_[k], o.v_[k]);
  return *this;
}

Cochain2& Cochain2::operator-=(const Cochain2& o) {
  require(o.order_ == order_ && o.cod_ == cod_, "cochain shape mismatch");
  const PrimeField f(p_);
  for (std::size_t k = 0; k < v_.size(); ++k) v_[k] = f.sub(v_[k], o.v_[k]);
  return *this;
}

Cochain2 Cochain2::scaled(Scalar c) const {
  const PrimeField f(p_);
  Cochain2 r = *this;
  for (auto& x : r.v_) x = f.mul(x, c);
  return r;
}

Cochain2 d1(const FiniteGroup& g, const Cochain1& a) {
  require(a.order() == g.order(), "cochain is on a different group");
  const PrimeField f(a.p());
  Cochain2 out(a.p(), g.order(), a.cod_dim());
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem y = 0; y < g.order(); ++y) {
      const Elem xy = g.mul(x, y);
      for (std::size_t t = 0; t < a.cod_dim(); ++t) out.at(x, y, t) = f.sub(f.add(a.at(x, t), a.at(y, t)), a.at(xy, t));
    }
  return out;
}

std::vector<Scalar> d2(const FiniteGroup& g, const Cochain2& c) {
  require(c.order() == g.order(), "cochain is on a different group");
  const PrimeField f(c.p());
  const std::size_t n = g.order(), k = c.cod_dim();
  std::vector<Scalar> out(n * n * n * k);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z) {
        const Elem xy = g.mul(x, y), yz = g.mul(y, z);
        for (std::size_t t = 0; t < k; ++t)
          out[((x * n + y) * n + z) * k + t] =
              f.sub(f.add(f.sub(c.at(y, z, t), c.at(xy, z, t)), c.at(x, yz, t)), c.at(x, y, t));
      }
  return out;
}

bool is_cocycle(const FiniteGroup& g, const Cochain2& c) {
  const auto v = d2(g, c);
  return std::all_of(v.begin(), v.end(), [](Scalar x) { return x == 0; });
}

Cochain2 cup(const Cochain1& a, const Cochain1& b, const BilinearMap& mu) {
  require(a.order() == b.order(), "cup of cochains on different groups");
  require(mu.dim_a() == a.cod_dim() && mu.dim_b() == b.cod_dim(), "pairing does not match cochain values");
  const PrimeField f(a.p());
  const std::size_t n = a.order();
  Cochain2 out(a.p(), n, mu.dim_c());
  for (Elem x = 1; x < n; ++x)
    for (std::size_t i = 0; i < mu.dim_a(); ++i) {
      const Scalar ax = a.at(x, i);
      if (!ax) continue;
      for (Elem y = 1; y < n; ++y)
        for (std::size_t j = 0; j < mu.dim_b(); ++j) {
          const Scalar s = f.mul(ax, b.at(y, j));
          if (!s) continue;
          for (std::size_t t = 0; t < mu.dim_c(); ++t) out.at(x, y, t) = f.add(out.at(x, y, t), f.mul(s, mu.at(i, j, t)));
        }
    }
  return out;
}

// ---------------------------------------------------------------- reducer

CoboundaryReducer::CoboundaryReducer(const FiniteGroup& g) : g_(&g) {
  const auto& gens = g.generators();
  constexpr auto npos = static_cast<std::size_t>(-1);
  slot_of_gen_.assign(gens.size(), npos);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i] == g.id()) continue;
    for (std::size_t j = 0; j < i && slot_of_gen_[i] == npos; ++j)
      if (gens[j] == gens[i]) slot_of_gen_[i] = slot_of_gen_[j];
    if (slot_of_gen_[i] == npos) slot_of_gen_[i] = slots_++;
  }
  const Scalar p = g.p();
  const std::size_t nn = g.order() * g.order();
  for (std::size_t s = 0; s < slots_; ++s) {
    std::vector<Scalar> v(slots_, 0);
    v[s] = 1;
    boundary_.push_back(d1(g, extend(v)).component(0));
  }
  // rref of [boundary | unit] keeps track of which slot combination gives what
  FpMatrix aug(p, slots_, nn + slots_);
  for (std::size_t s = 0; s < slots_; ++s) {
    for (std::size_t k = 0; k < nn; ++k) aug.at(s, k) = boundary_[s][k];
    aug.at(s, nn + s) = 1;
  }
  const auto r = rref(aug);
  for (std::size_t row = 0; row < r.rank; ++row) {
    const auto full = r.reduced.row_vector(row);
    FpVector b(p, std::vector<Scalar>(full.entries().begin(), full.entries().begin() + nn));
    FpVector w(p, std::vector<Scalar>(full.entries().begin() + nn, full.entries().end()));
    if (r.pivot_columns[row] < nn) {
      basis_.push_back(std::move(b));
      combo_.push_back(std::move(w));
      pivots_.push_back(r.pivot_columns[row]);
    } else {
      hom_combos_.push_back(std::move(w));
    }
  }
}

Cochain1 CoboundaryReducer::extend(const std::vector<Scalar>& gen_values) const {
  const auto& g = *g_;
  const PrimeField f(g.p());
  Cochain1 c(g.p(), g.order(), 1);
  for (std::size_t k = 1; k < g.bfs_order().size(); ++k) {
    const Elem b = g.bfs_order()[k];
    const std::size_t s = slot_of_gen_[g.tree_gen(b)];
    c.at(b, 0) = f.add(c.at(g.tree_parent(b), 0), s == static_cast<std::size_t>(-1) ? 0 : gen_values[s]);
  }
  return c;
}

FpVector CoboundaryReducer::tree_correction(const Cochain2& z, std::size_t t, Cochain1* c0_out) const {
  const auto& g = *g_;
  require(z.order() == g.order(), "cochain is on a different group");
  const PrimeField f(g.p());
  const std::size_t n = g.order();
  Cochain1 c0(g.p(), n, 1);
  for (std::size_t k = 1; k < g.bfs_order().size(); ++k) {
    const Elem b = g.bfs_order()[k], a = g.tree_parent(b);
    if (a == g.id()) continue;  // generator elements keep 0
    const Elem x = g.generators()[g.tree_gen(b)];
    c0.at(b, 0) = f.sub(f.add(c0.at(a, 0), c0.at(x, 0)), z.at(a, x, t));
  }
  FpVector out(g.p(), n * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      out[x * n + y] = f.sub(z.at(x, y, t), f.sub(f.add(c0.at(x, 0), c0.at(y, 0)), c0.at(g.mul(x, y), 0)));
  if (c0_out) *c0_out = std::move(c0);
  return out;
}

FpVector CoboundaryReducer::remainder(const Cochain2& z, std::size_t component) const {
  FpVector r = tree_correction(z, component, nullptr);
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const Scalar c = r[pivots_[k]];
    if (c) r -= basis_[k].scaled(c);
  }
  return r;
}

FpVector CoboundaryReducer::class_vector(const Cochain2& z) const {
  const std::size_t nn = g_->order() * g_->order();
  FpVector out(g_->p(), nn * z.cod_dim());
  for (std::size_t t = 0; t < z.cod_dim(); ++t) {
    const auto r = remainder(z, t);
    std::copy(r.entries().begin(), r.entries().end(), out.entries().begin() + t * nn);
  }
  return out;
}

bool CoboundaryReducer::is_coboundary(const Cochain2& z) const {
  for (std::size_t t = 0; t < z.cod_dim(); ++t)
    if (!remainder(z, t).is_zero()) return false;
  return true;
}

std::optional<Cochain1> CoboundaryReducer::solve(const Cochain2& z) const {
  const auto& g = *g_;
  Cochain1 out(g.p(), g.order(), z.cod_dim());
  for (std::size_t t = 0; t < z.cod_dim(); ++t) {
    Cochain1 c0;
    FpVector r = tree_correction(z, t, &c0);
    FpVector w(g.p(), slots_);
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      const Scalar c = r[pivots_[k]];
      if (!c) continue;
      r -= basis_[k].scaled(c);
      w += combo_[k].scaled(c);
    }
    if (!r.is_zero()) return std::nullopt;
    c0 += extend(std::vector<Scalar>(w.entries().begin(), w.entries().end()));
    for (Elem e = 0; e < g.order(); ++e) out.at(e, t) = c0.at(e, 0);
  }
  return out;
}

std::vector<Cochain1> CoboundaryReducer::homomorphisms() const {
  std::vector<Cochain1> out;
  for (const auto& w : hom_combos_) out.push_back(extend(std::vector<Scalar>(w.entries().begin(), w.entries().end())));
  return out;
}

std::size_t h1_dim(const FiniteGroup& g) { return CoboundaryReducer(g).homomorphisms().size(); }

H2Info h2(const FiniteGroup& g, bool full_d2, std::size_t max_order) {
  const std::size_t n = g.order();
  if (n > max_order) throw Error(ErrorKind::TooLarge, "group too large for a full H^2 computation");
  const Scalar p = g.p();
  const PrimeField f(p);
  const std::size_t m = n - 1;  // normalized coordinates (g,h), g,h != 1
  auto var = [m](Elem x, Elem y) { return (x - 1) * m + (y - 1); };
  std::vector<Elem> firsts;
  if (full_d2) {
    for (Elem x = 1; x < n; ++x) firsts.push_back(x);
  } else {
    for (Elem x : g.generators())
      if (x != g.id() && std::find(firsts.begin(), firsts.end(), x) == firsts.end()) firsts.push_back(x);
  }
  FpMatrix rows(p, firsts.size() * m * m, m * m);
  std::size_t r = 0;
  for (Elem x : firsts)
    for (Elem y = 1; y < n; ++y)
      for (Elem z = 1; z < n; ++z, ++r) {
        // c(y,z) - c(xy,z) + c(x,yz) - c(x,y)
        auto add = [&](Elem a, Elem b, Scalar s) {
          if (a != 0 && b != 0) rows.at(r, var(a, b)) = f.add(rows.at(r, var(a, b)), s);
        };
        add(y, z, 1);
        add(g.mul(x, y), z, p - 1);
        add(x, g.mul(y, z), 1);
        add(x, y, p - 1);
      }
  const auto z2 = kernel_basis(rows);
  const CoboundaryReducer red(g);
  H2Info out;
  out.classes = Subspace(p, n * n);
  for (const auto& v : z2.basis()) {
    Cochain2 c(p, n, 1);
    for (Elem x = 1; x < n; ++x)
      for (Elem y = 1; y < n; ++y) c.at(x, y, 0) = v[var(x, y)];
    if (out.classes.insert(red.remainder(c))) out.cocycle_basis.push_back(std::move(c));
  }
  out.dim = out.classes.dim();
  return out;
}

Cochain2 inflate(const Cochain2& z, const std::vector<Elem>& projection) {
  const std::size_t n = projection.size();
  Cochain2 out(z.p(), n, z.cod_dim());
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (std::size_t t = 0; t < z.cod_dim(); ++t) out.at(x, y, t) = z.at(projection[x], projection[y], t);
  return out;
}

Cochain1 inflate1(const Cochain1& a, const std::vector<Elem>& projection) {
  Cochain1 out(a.p(), projection.size(), a.cod_dim());
  for (Elem x = 0; x < projection.size(); ++x)
    for (std::size_t t = 0; t < a.cod_dim(); ++t) out.at(x, t) = a.at(projection[x], t);
  return out;
}

Cochain1 restrict1(const Cochain1& a, const Subgroup& h) {
  Cochain1 out(a.p(), a.order(), a.cod_dim());
  for (Elem x : h.elements())
    for (std::size_t t = 0; t < a.cod_dim(); ++t) out.at(x, t) = a.at(x, t);
  return out;
}

// ---------------------------------------------------------------- extensions

CentralExtension::CentralExtension(const FiniteGroup& e, const Subgroup& n) : e_(&e), n_(n) {
  if (!is_central(e, n)) throw Error(ErrorKind::NotNormal, "extension kernel is not central");
  q_ = std::make_unique<QuotientGroup>(zassen::quotient(e, n));
  basis_ = elementary_quotient_basis(e, n, Subgroup::trivial(e));
  section_.assign(q_->group.order(), static_cast<Elem>(-1));
  for (Elem x = 0; x < e.order(); ++x)
    if (section_[q_->projection[x]] == static_cast<Elem>(-1)) section_[q_->projection[x]] = x;
  q_red_ = std::make_unique<CoboundaryReducer>(q_->group);
  e_red_ = std::make_unique<CoboundaryReducer>(e);
  const Scalar p = e.p();
  const std::size_t qq = q_->group.order() * q_->group.order();
  trg_matrix_ = FpMatrix(p, qq, basis_.dim());
  trg_image_ = Subspace(p, qq);
  for (std::size_t i = 0; i < basis_.dim(); ++i) {
    const auto cls = q_red_->remainder(trg(FpVector::unit(p, basis_.dim(), i)));
    for (std::size_t k = 0; k < qq; ++k) trg_matrix_.at(k, i) = cls[k];
    trg_image_.insert(cls);
  }
}

Scalar CentralExtension::evaluate(const FpVector& phi, Elem n) const { return phi.dot(basis_.coordinates(n)); }

Cochain2 CentralExtension::trg(const FpVector& phi) const { return trg_with_section(phi, section_); }

Cochain2 CentralExtension::trg_with_section(const FpVector& phi, const std::vector<Elem>& section) const {
  const auto& q = q_->group;
  const auto& e = *e_;
  require(phi.dim() == basis_.dim(), "character has the wrong dimension");
  require(section.size() == q.order() && section[0] == e.id(), "section must send 1 to 1");
  for (Elem x = 0; x < q.order(); ++x) require(q_->projection[section[x]] == x, "not a section");
  Cochain2 c(e.p(), q.order(), 1);
  for (Elem a = 0; a < q.order(); ++a)
    for (Elem b = 0; b < q.order(); ++b) {
      const Elem prod = e.mul(section[a], section[b]);
      const Elem k = e.mul(section[q.mul(a, b)], e.inv(prod));
      c.at(a, b, 0) = evaluate(phi, k);
    }
  return c;
}

FpVector CentralExtension::trg_inverse(const Cochain2& alpha) const {
  const auto sol = zassen::solve(trg_matrix_, q_red_->remainder(alpha));
  if (!sol) throw Error(ErrorKind::NotTransgressive, "class is not in the image of transgression");
  return *sol;
}

bool CentralExtension::inflation_vanishes(const Cochain2& alpha) const {
  return e_red_->is_coboundary(inflate(alpha, q_->projection));
}

FpVector CentralExtension::restrict_to_kernel(const Cochain1& a) const {
  require(a.cod_dim() == 1, "expected a scalar cochain");
  FpVector out(a.p(), basis_.dim());
  for (std::size_t i = 0; i < basis_.dim(); ++i) out[i] = a.at(basis_.basis[i], 0);
  return out;
}

}  // namespace zassen
