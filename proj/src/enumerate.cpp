#include "zassen/enumerate.hpp"

#include <atomic>
#include <thread>

#include "zassen/error.hpp"

namespace zassen {

namespace {

// images of all elements along the BFS tree, then every Cayley edge
bool extends_to_homomorphism(const FiniteGroup& g, const FiniteGroup& t, const std::vector<std::uint64_t>& gimg,
                             std::vector<Elem>& images) {
  images.assign(g.order(), 0);
  for (std::size_t k = 1; k < g.bfs_order().size(); ++k) {
    const Elem b = g.bfs_order()[k];
    images[b] = t.mul(images[g.tree_parent(b)], static_cast<Elem>(gimg[g.tree_gen(b)]));
  }
  const auto& gens = g.generators();
  for (Elem x = 0; x < g.order(); ++x)
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (t.mul(images[x], static_cast<Elem>(gimg[i])) != images[g.mul(x, gens[i])]) return false;
  return true;
}

}  // namespace

EnumerationResult enumerate_homomorphisms(const FiniteGroup& g, const SystemPtr& sys, std::size_t level,
                                          const EnumerationOptions& opts) {
  require(level >= 1 && level <= sys->rank(), "level out of range");
  const Scalar p = sys->p();
  const std::size_t ng = g.generators().size();
  std::vector<std::size_t> gen_order(ng);
  for (std::size_t i = 0; i < ng; ++i) gen_order[i] = g.element_order(g.generators()[i]);

  EnumerationResult res;
  res.generator_images.push_back(std::vector<std::uint64_t>(ng, 0));  // level 0: trivial
  std::uint64_t stride = 1;
  for (std::size_t lv = 1; lv <= level; ++lv) {
    const FiniteGroup t = u_group(*sys, lv);
    std::uint64_t width = 1;  // number of choices for the level-lv block
    for (std::size_t k = sys->level_prefix(lv - 1); k < sys->level_prefix(lv); ++k) width *= p;

    const auto& prev = res.generator_images;
    std::vector<std::vector<std::vector<std::uint64_t>>> found(prev.size());
    std::atomic<std::uint64_t> candidates{res.candidates};
    std::atomic<bool> over{false};
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      std::vector<Elem> images;
      for (std::size_t h; (h = next.fetch_add(1)) < prev.size();) {
        if (over) return;
        // per-generator choices with the right order
        std::vector<std::vector<std::uint64_t>> choices(ng);
        std::uint64_t combos = 1;
        for (std::size_t i = 0; i < ng; ++i) {
          for (std::uint64_t c = 0; c < width; ++c) {
            const std::uint64_t code = prev[h][i] + stride * c;
            if (t.pow(static_cast<Elem>(code), gen_order[i]) == t.id()) choices[i].push_back(code);
          }
          combos *= choices[i].size();
        }
        if (candidates.fetch_add(combos) + combos > opts.budget) {
          over = true;
          return;
        }
        if (combos == 0) continue;
        std::vector<std::size_t> idx(ng, 0);
        std::vector<std::uint64_t> gimg(ng);
        for (;;) {
          for (std::size_t i = 0; i < ng; ++i) gimg[i] = choices[i][idx[i]];
          if (extends_to_homomorphism(g, t, gimg, images)) found[h].push_back(gimg);
          std::size_t i = ng;
          while (i > 0 && ++idx[i - 1] == choices[i - 1].size()) idx[--i] = 0;
          if (i == 0) break;
        }
      }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(prev.size())));
    if (jobs == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }
    res.candidates = candidates;
    if (over) {
      res.truncated = true;
      res.generator_images.clear();
      return res;
    }
    std::vector<std::vector<std::uint64_t>> merged;
    for (auto& f : found)
      for (auto& v : f) merged.push_back(std::move(v));
    res.generator_images = std::move(merged);
    stride *= width;
  }
  return res;
}

std::vector<Representation> enumerate_reps(const FiniteGroup& g, const SystemPtr& sys, std::size_t level,
                                           const EnumerationOptions& opts, bool* truncated) {
  const auto res = enumerate_homomorphisms(g, sys, level, opts);
  if (truncated) *truncated = res.truncated;
  const FiniteGroup t = u_group(*sys, level);
  std::vector<Representation> out;
  std::vector<Elem> images;
  for (const auto& gimg : res.generator_images) {
    extends_to_homomorphism(g, t, gimg, images);
    out.push_back({sys, level, std::vector<std::uint64_t>(images.begin(), images.end())});
  }
  return out;
}

}  // namespace zassen
