#include "zassen/representation.hpp"

#include "zassen/error.hpp"

namespace zassen {

namespace {

std::uint64_t truncation_modulus(const MultSystem& s, std::size_t level) {
  std::uint64_t m = 1;
  for (std::size_t k = 0; k < s.level_prefix(level); ++k) m *= s.p();
  return m;
}

std::uint64_t product_code(const SystemPtr& s, std::uint64_t a, std::uint64_t b, std::uint64_t modulus) {
  const UElement ua(VElement(s, s->decode(a))), ub(VElement(s, s->decode(b)));
  return u_mul(ua, ub).code() % modulus;
}

}  // namespace

FpVector Representation::entry(Elem g, std::size_t i, std::size_t j) const {
  const auto c = coords(g);
  const auto off = system->offset(i, j);
  return FpVector(system->p(), std::vector<Scalar>(c.begin() + off, c.begin() + off + system->dim(i, j)));
}

bool is_homomorphism(const FiniteGroup& g, const Representation& r) {
  if (r.images.size() != g.order() || r.images[0] != 0) return false;
  // r(xs) = r(x)r(s) for generators s and r(1) = 1 give r(xy) = r(x)r(y),
  // writing y as a positive word in the generators
  const auto mod = truncation_modulus(*r.system, r.level);
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem s : g.generators())
      if (product_code(r.system, r.images[x], r.images[s], mod) != r.images[g.mul(x, s)]) return false;
  return true;
}

Subgroup kernel(const FiniteGroup& g, const Representation& r) {
  std::vector<Elem> elems;
  for (Elem x = 0; x < g.order(); ++x)
    if (r.images[x] == 0) elems.push_back(x);
  return subgroup_from_elements(g, std::move(elems));
}

Representation extend_from_generators(const FiniteGroup& g, const SystemPtr& sys, std::size_t level,
                                      const std::vector<std::uint64_t>& generator_images) {
  require(generator_images.size() == g.generators().size(), "one image per generator");
  const auto mod = truncation_modulus(*sys, level);
  Representation r{sys, level, std::vector<std::uint64_t>(g.order(), 0)};
  for (std::size_t k = 1; k < g.bfs_order().size(); ++k) {
    const Elem b = g.bfs_order()[k];
    r.images[b] = product_code(sys, r.images[g.tree_parent(b)], generator_images[g.tree_gen(b)], mod);
  }
  return r;
}

Representation truncate(const Representation& r, std::size_t level) {
  require(level <= r.level, "cannot truncate to a finer level");
  const auto mod = truncation_modulus(*r.system, level);
  Representation out{r.system, level, r.images};
  for (auto& c : out.images) c %= mod;
  return out;
}

Representation pull_back(const Representation& r, const std::vector<Elem>& map) {
  Representation out{r.system, r.level, std::vector<std::uint64_t>(map.size())};
  for (std::size_t x = 0; x < map.size(); ++x) out.images[x] = r.images[map[x]];
  return out;
}

Representation embed(const Representation& r, const LowerRankEmbedding& emb, const SystemPtr& target) {
  require(r.into_full(), "only representations into U(A) embed");
  require(*target == emb.system, "embedding target mismatch");
  Representation out{target, target->rank(), r.images};
  for (auto& c : out.images) c = emb.inject_code(*r.system, c);
  return out;
}

}  // namespace zassen
