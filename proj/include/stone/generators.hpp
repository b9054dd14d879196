#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "stone/constructions.hpp"
#include "stone/errors.hpp"
#include "stone/functor.hpp"
#include "stone/group.hpp"
#include "stone/groupoid.hpp"
#include "stone/tower.hpp"

namespace stone {

namespace detail {

/// Deterministic uniform pick in [0, n); avoids std::uniform_int_distribution,
/// whose output is implementation-defined.
inline std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t n) {
  return n == 0 ? 0 : rng() % n;
}

template <typename T>
void shuffle_vec(std::mt19937_64& rng, std::vector<T>& v) {
  for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng_below(rng, i)]);
}

}  // namespace detail

/// Small groups used for seeded random inputs.
inline const std::vector<FiniteGroup>& small_group_catalog() {
  static const std::vector<FiniteGroup> cat = [] {
    std::vector<FiniteGroup> c;
    c.push_back(trivial_group());
    for (int n = 2; n <= 12; ++n) c.push_back(cyclic_group(n));
    c.push_back(direct_product(cyclic_group(2), cyclic_group(2)));
    c.push_back(direct_product(cyclic_group(2), cyclic_group(4)));
    c.push_back(direct_product(cyclic_group(2), direct_product(cyclic_group(2), cyclic_group(2))));
    c.push_back(symmetric_group_3());
    c.push_back(dihedral_group(4));
    c.push_back(quaternion_group());
    c.push_back(direct_product(cyclic_group(3), cyclic_group(3)));
    c.push_back(dihedral_group(5));
    c.push_back(alternating_group_4());
    c.push_back(dihedral_group(6));
    return c;
  }();
  return cat;
}

// ---------------------------------------------------------------------------
// Built-in families

namespace detail {

inline void check_prime(int p) {
  if (p != 2 && p != 3 && p != 5 && p != 7)
    throw DomainError("parameter p: must be one of 2, 3, 5, 7, got " + std::to_string(p));
}

inline void check_depth(int depth) {
  if (depth < 1 || depth > 8)
    throw DomainError("parameter depth: must be between 1 and 8, got " + std::to_string(depth));
}

inline int checked_power(int p, int depth, int weight) {
  long long m = 1;
  for (int i = 0; i < depth * weight; ++i) {
    m *= p;
    if (m > 4096)
      throw DomainError("parameter depth: level size " + std::to_string(p) + "^" +
                        std::to_string(depth * weight) + " exceeds the supported bound 4096");
  }
  return static_cast<int>(m);
}

}  // namespace detail

/// BZ/p <- BZ/p^2 <- ... <- BZ/p^depth with mod-p^k reductions.
inline GroupoidTower cyclic_tower(int p, int depth) {
  detail::check_prime(p);
  detail::check_depth(depth);
  detail::checked_power(p, depth, 1);
  std::vector<FiniteGroupoid> levels;
  std::vector<TowerMap> trans;
  int order = 1;
  std::vector<int> orders;
  for (int k = 0; k < depth; ++k) {
    order *= p;
    orders.push_back(order);
    levels.push_back(one_object_groupoid(cyclic_group(order)));
  }
  for (int k = 0; k + 1 < depth; ++k) {
    TowerMap m;
    m.obj_map = {0};
    for (int e = 0; e < orders[k + 1]; ++e) m.mor_map.push_back(e % orders[k]);
    trans.push_back(std::move(m));
  }
  return make_groupoid_tower(levels, trans);
}

/// Translation groupoids of Z/p^k acting on itself (pair groupoids),
/// with reduction transitions.
inline GroupoidTower translation_tower(int p, int depth) {
  detail::check_prime(p);
  detail::check_depth(depth);
  detail::checked_power(p, depth, 2);
  std::vector<FiniteGroupoid> levels;
  std::vector<TowerMap> trans;
  std::vector<int> orders;
  int order = 1;
  for (int k = 0; k < depth; ++k) {
    order *= p;
    orders.push_back(order);
    levels.push_back(cyclic_translation_groupoid(order));
  }
  for (int k = 0; k + 1 < depth; ++k) {
    const int up = orders[k + 1], dn = orders[k];
    TowerMap m;
    for (int s = 0; s < up; ++s) m.obj_map.push_back(s % dn);
    for (int e = 0; e < up; ++e)
      for (int s = 0; s < up; ++s) m.mor_map.push_back((e % dn) * dn + (s % dn));
    trans.push_back(std::move(m));
  }
  return make_groupoid_tower(levels, trans);
}

/// Action groupoids of Z/p^k on Z/p through the mod-p quotient, with
/// reduction transitions. Stabilizers are Z/p^{k-1}.
inline GroupoidTower mod_action_tower(int p, int depth) {
  detail::check_prime(p);
  detail::check_depth(depth);
  detail::checked_power(p, depth, 1);
  std::vector<FiniteGroupoid> levels;
  std::vector<TowerMap> trans;
  std::vector<int> orders;
  int order = 1;
  for (int k = 0; k < depth; ++k) {
    order *= p;
    orders.push_back(order);
    auto grp = cyclic_group(order);
    std::vector<std::vector<int>> act(order, std::vector<int>(p));
    for (int e = 0; e < order; ++e)
      for (int s = 0; s < p; ++s) act[e][s] = (s + e) % p;
    levels.push_back(action_groupoid(grp, act));
  }
  for (int k = 0; k + 1 < depth; ++k) {
    const int up = orders[k + 1], dn = orders[k];
    TowerMap m;
    for (int s = 0; s < p; ++s) m.obj_map.push_back(s);
    for (int e = 0; e < up; ++e)
      for (int s = 0; s < p; ++s) m.mor_map.push_back((e % dn) * p + s);
    trans.push_back(std::move(m));
  }
  return make_groupoid_tower(levels, trans);
}

// ---------------------------------------------------------------------------
// Seeded random inputs

/// Disjoint union of action groupoids of random small groups on random
/// coset spaces. Axioms hold by construction; byte-for-byte reproducible
/// from the seed.
inline FiniteGroupoid random_groupoid(std::uint64_t seed, int max_components = 4,
                                      int max_morphisms = 24) {
  std::mt19937_64 rng(seed);
  const auto& cat = small_group_catalog();
  int components = 1 + static_cast<int>(detail::rng_below(rng, max_components));
  std::optional<FiniteGroupoid> acc;
  int budget = max_morphisms;
  for (int c = 0; c < components; ++c) {
    // pick a group and a coset space fitting the remaining budget
    const FiniteGroup* grp = nullptr;
    std::vector<int> sub;
    int points = 1;
    for (int attempt = 0; attempt < 16; ++attempt) {
      const auto& cand = cat[detail::rng_below(rng, cat.size())];
      auto subs = all_subgroups(cand);
      const auto& h = subs[detail::rng_below(rng, subs.size())];
      int pts = cand.order() / static_cast<int>(h.size());
      if (pts * cand.order() <= budget) {
        grp = &cand;
        sub = h;
        points = pts;
        break;
      }
    }
    if (!grp) {
      grp = &cat.front();  // trivial group on one point always fits
      sub = {0};
      points = 1;
    }
    auto cosets = right_cosets(*grp, sub);
    std::vector<int> coset_of(grp->order());
    for (size_t i = 0; i < cosets.size(); ++i)
      for (int m : cosets[i]) coset_of[m] = static_cast<int>(i);
    std::vector<std::vector<int>> act(grp->order(), std::vector<int>(points));
    for (int e = 0; e < grp->order(); ++e)
      for (int s = 0; s < points; ++s) act[e][s] = coset_of[grp->mul(cosets[s].front(), e)];
    auto piece = action_groupoid(*grp, act);
    budget -= piece.morphism_count();
    acc = acc ? disjoint_union(*acc, piece) : piece;
  }
  return *acc;
}

/// A random morphism subset containing every unit.
inline std::vector<int> random_unit_neighborhood(const FiniteGroupoid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<char> in(g.morphism_count(), 0);
  for (int x = 0; x < g.objects; ++x) in[g.unit[x]] = 1;
  for (int m = 0; m < g.morphism_count(); ++m)
    if (!in[m] && detail::rng_below(rng, 2) == 0) in[m] = 1;
  std::vector<int> out;
  for (int m = 0; m < g.morphism_count(); ++m)
    if (in[m]) out.push_back(m);
  return out;
}

/// A random connected groupoid with isotropy of bounded order.
inline FiniteGroupoid random_connected_groupoid(std::uint64_t seed, int max_iso_order = 24,
                                                int max_objects = 3) {
  std::mt19937_64 rng(seed);
  const auto& cat = small_group_catalog();
  const FiniteGroup* grp = &cat.front();
  for (int attempt = 0; attempt < 32; ++attempt) {
    const auto& cand = cat[detail::rng_below(rng, cat.size())];
    if (cand.order() <= max_iso_order) {
      grp = &cand;
      break;
    }
  }
  int k = 1 + static_cast<int>(detail::rng_below(rng, max_objects));
  return connected_groupoid(k, *grp);
}

/// A random valid functor between small groupoids, drawn from families
/// that are functorial by construction; covers equivalences and
/// non-equivalences of every failure mode.
inline GroupoidFunctor random_functor(std::uint64_t seed, int max_morphisms = 64) {
  std::mt19937_64 rng(seed);
  auto g = random_groupoid(rng(), 3, std::max(4, max_morphisms / 2));
  switch (detail::rng_below(rng, 7)) {
    case 0: {  // relabeling isomorphism
      std::vector<int> operm(g.objects), mperm(g.morphism_count());
      std::iota(operm.begin(), operm.end(), 0);
      std::iota(mperm.begin(), mperm.end(), 0);
      detail::shuffle_vec(rng, operm);
      detail::shuffle_vec(rng, mperm);
      GroupoidFunctor f;
      f.source = g;
      f.target = relabeled(g, operm, mperm);
      f.obj_map = operm;
      f.mor_map = mperm;
      return f;
    }
    case 1:  // skeleton inclusion
      return skeletal_replacement(g).inclusion;
    case 2: {  // quotient projection of the skeleton
      auto x = skeletal_replacement(g).skeleton;
      if (x.morphism_count() <= 24) {
        auto basis = normal_basis(x);
        return quotient(x, basis[detail::rng_below(rng, basis.size())]).projection;
      }
      return quotient(x, unit_subgroupoid(x)).projection;
    }
    case 3: {  // everything to the point
      GroupoidFunctor f;
      f.source = g;
      f.target = one_object_groupoid(trivial_group());
      f.obj_map.assign(g.objects, 0);
      f.mor_map.assign(g.morphism_count(), 0);
      return f;
    }
    case 4: {  // inclusion into a disjoint union
      auto h = random_groupoid(rng(), 2, std::max(2, max_morphisms / 4));
      GroupoidFunctor f;
      f.source = g;
      f.target = disjoint_union(g, h);
      f.obj_map.resize(g.objects);
      std::iota(f.obj_map.begin(), f.obj_map.end(), 0);
      f.mor_map.resize(g.morphism_count());
      std::iota(f.mor_map.begin(), f.mor_map.end(), 0);
      return f;
    }
    case 5: {  // cyclic reduction BZ/n -> BZ/m, m | n
      int n = 2 + static_cast<int>(detail::rng_below(rng, 10));
      std::vector<int> divisors;
      for (int m = 1; m <= n; ++m)
        if (n % m == 0) divisors.push_back(m);
      int m = divisors[detail::rng_below(rng, divisors.size())];
      GroupoidFunctor f;
      f.source = one_object_groupoid(cyclic_group(n));
      f.target = one_object_groupoid(cyclic_group(m));
      f.obj_map = {0};
      for (int e = 0; e < n; ++e) f.mor_map.push_back(e % m);
      return f;
    }
    default: {  // collapse of the skeleton at a random object
      auto x = skeletal_replacement(g).skeleton;
      return collapse(x, static_cast<int>(detail::rng_below(rng, x.objects)));
    }
  }
}

/// A random valid skeletal tower: disjoint unions of one-object cyclic
/// groupoids with reduction transitions; surjective and star-surjective
/// by construction.
inline GroupoidTower random_skeletal_tower(std::uint64_t seed, int max_levels = 4,
                                           int max_morphisms_per_level = 16) {
  std::mt19937_64 rng(seed);
  int nlevels = 2 + static_cast<int>(detail::rng_below(rng, std::max(1, max_levels - 1)));
  // component tree: per level, each component remembers its parent and order
  std::vector<std::vector<int>> parent(nlevels), order(nlevels);
  int k0 = 1 + static_cast<int>(detail::rng_below(rng, 2));
  for (int c = 0; c < k0; ++c) {
    parent[0].push_back(-1);
    order[0].push_back(1 + static_cast<int>(detail::rng_below(rng, 4)));
  }
  for (int n = 1; n < nlevels; ++n) {
    for (size_t pc = 0; pc < order[n - 1].size(); ++pc) {
      int children = 1;
      if (order[n - 1].size() + parent[n].size() < 4 && detail::rng_below(rng, 3) == 0)
        children = 2;
      for (int c = 0; c < children; ++c) {
        int factor = 1 + static_cast<int>(detail::rng_below(rng, 3));
        long long o = static_cast<long long>(order[n - 1][pc]) * factor;
        // keep the level within budget
        long long used = 0;
        for (int oo : order[n]) used += oo;
        if (used + o > max_morphisms_per_level) o = order[n - 1][pc];
        parent[n].push_back(static_cast<int>(pc));
        order[n].push_back(static_cast<int>(o));
      }
    }
  }
  std::vector<FiniteGroupoid> levels;
  std::vector<std::vector<int>> offsets(nlevels);
  for (int n = 0; n < nlevels; ++n) {
    std::optional<FiniteGroupoid> acc;
    int off = 0;
    for (int o : order[n]) {
      offsets[n].push_back(off);
      off += o;
      auto piece = one_object_groupoid(cyclic_group(o));
      acc = acc ? disjoint_union(*acc, piece) : piece;
    }
    levels.push_back(*acc);
  }
  std::vector<TowerMap> trans;
  for (int n = 0; n + 1 < nlevels; ++n) {
    TowerMap m;
    for (size_t c = 0; c < order[n + 1].size(); ++c) m.obj_map.push_back(parent[n + 1][c]);
    for (size_t c = 0; c < order[n + 1].size(); ++c) {
      int po = order[n][parent[n + 1][c]];
      int poff = offsets[n][parent[n + 1][c]];
      for (int e = 0; e < order[n + 1][c]; ++e) m.mor_map.push_back(poff + e % po);
    }
    trans.push_back(std::move(m));
  }
  return make_groupoid_tower(levels, trans);
}

// ---------------------------------------------------------------------------
// CLI-facing generator

struct GeneratorSpec {
  std::string kind;  // cyclic-tower | pair | action | translation-tower | random
  int p = 2;
  int depth = 3;
  int n = 3;
  std::uint64_t seed = 0;
  int components = 4;
};

struct GeneratedObject {
  std::optional<FiniteGroupoid> groupoid;
  std::optional<GroupoidTower> tower;
};

inline GeneratedObject generate(const GeneratorSpec& spec) {
  GeneratedObject out;
  if (spec.kind == "cyclic-tower") {
    out.tower = cyclic_tower(spec.p, spec.depth);
  } else if (spec.kind == "translation-tower") {
    out.tower = translation_tower(spec.p, spec.depth);
  } else if (spec.kind == "action") {
    out.tower = mod_action_tower(spec.p, spec.depth);
  } else if (spec.kind == "pair") {
    if (spec.n < 1 || spec.n > 64)
      throw DomainError("parameter n: must be between 1 and 64, got " + std::to_string(spec.n));
    out.groupoid = pair_groupoid(spec.n);
  } else if (spec.kind == "random") {
    if (spec.components < 1 || spec.components > 8)
      throw DomainError("parameter components: must be between 1 and 8, got " +
                        std::to_string(spec.components));
    out.groupoid = random_groupoid(spec.seed, spec.components, 24);
  } else {
    throw DomainError("parameter kind: unknown generator kind '" + spec.kind + "'");
  }
  return out;
}

}  // namespace stone
