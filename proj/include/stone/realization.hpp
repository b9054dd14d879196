#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "stone/constructions.hpp"
#include "stone/errors.hpp"
#include "stone/functor.hpp"
#include "stone/groupoid.hpp"
#include "stone/tower.hpp"

namespace stone {

/// A finite 1-type: a finite set of components with one finite group per
/// component. For a skeletal groupoid this is exactly (objects, isotropy).
struct PiFiniteOneType {
  int components = 0;
  std::vector<FiniteGroup> groups;
};

/// Level map of a tower of 1-types: a map on components together with a
/// group homomorphism per source component (local element indices).
struct OneTypeMap {
  std::vector<int> component_map;
  std::vector<std::vector<int>> group_maps;
};

/// Tower of finite 1-types with transition maps: the presentation format
/// for a sequential limit of finite homotopy 1-types.
struct AnimaPresentation {
  std::vector<PiFiniteOneType> levels;
  std::vector<OneTypeMap> transitions;
};

/// 1-type of a skeletal groupoid: components are its objects, the group
/// at x is the isotropy at x.
inline PiFiniteOneType realize_finite(const FiniteGroupoid& x) {
  if (!is_skeletal(x))
    throw DomainError("realize_finite: input groupoid is not skeletal; skeletonize first");
  PiFiniteOneType t;
  t.components = x.objects;
  for (int o = 0; o < x.objects; ++o) t.groups.push_back(isotropy(x, o));
  return t;
}

/// Level-wise realization of a skeletal tower, with the induced maps on
/// components and isotropy groups.
inline AnimaPresentation realize_tower(const GroupoidTower& t) {
  for (size_t n = 0; n < t.levels.size(); ++n) {
    if (!is_skeletal(t.levels[n]))
      throw DomainError("realize_tower: level " + std::to_string(n) +
                        " is not skeletal; skeletonize first");
  }
  for (size_t n = 0; n < t.transitions.size(); ++n) {
    auto fr = validate_functor(t.functor_at(static_cast<int>(n)));
    if (!fr.ok())
      throw DomainError("realize_tower: transition " + std::to_string(n) +
                        " is not a functor: " + fr.violations.front().detail);
  }
  AnimaPresentation pres;
  for (const auto& l : t.levels) pres.levels.push_back(realize_finite(l));
  for (size_t n = 0; n < t.transitions.size(); ++n) {
    const auto& up = t.levels[n + 1];
    const auto& tr = t.transitions[n];
    OneTypeMap m;
    m.component_map = tr.obj_map;
    for (int x = 0; x < up.objects; ++x) {
      const auto& gu = pres.levels[n + 1].groups[x];
      const auto& gd = pres.levels[n].groups[tr.obj_map[x]];
      std::map<int, int> local;
      for (size_t i = 0; i < gd.labels.size(); ++i) local[gd.labels[i]] = static_cast<int>(i);
      std::vector<int> gm;
      for (int lbl : gu.labels) {
        auto it = local.find(tr.mor_map[lbl]);
        if (it == local.end())
          throw DomainError("realize_tower: transition does not respect isotropy");
        gm.push_back(it->second);
      }
      m.group_maps.push_back(std::move(gm));
    }
    pres.transitions.push_back(std::move(m));
  }
  return pres;
}

// ---------------------------------------------------------------------------
// Limit commutation

struct CommutationWitness {
  std::string kind;  // "component-unreachable" | "isotropy-unreachable" | "not-homomorphism"
  int level = -1;
  int component = -1;  // object of the named level
  int element = -1;    // morphism of the named level, when applicable
};

struct CommutationResult {
  bool ok = true;
  std::optional<CommutationWitness> witness;
};

/// Finite-depth commutation of components and fundamental groups with the
/// limit: on a skeletal tower, every object of level d must be reached by
/// a thread from the top, and for every top object the composite map on
/// isotropy groups down to level d must be an isomorphism onto the level-d
/// isotropy along its thread. Fails with a witness otherwise.
inline CommutationResult limit_commutation_check(const GroupoidTower& t, int d) {
  if (d < 0 || d > t.depth())
    throw DomainError("limit_commutation_check: depth " + std::to_string(d) + " out of range");
  for (size_t n = 0; n < t.levels.size(); ++n)
    if (!is_skeletal(t.levels[n]))
      throw DomainError("limit_commutation_check: level " + std::to_string(n) +
                        " is not skeletal");
  CommutationResult res;
  const int top = t.depth();

  // composite object / morphism maps from the top to level d
  auto composite_to = [&](int lvl) {
    std::pair<std::vector<int>, std::vector<int>> maps;
    maps.first.resize(t.levels[top].objects);
    std::iota(maps.first.begin(), maps.first.end(), 0);
    maps.second.resize(t.levels[top].morphism_count());
    std::iota(maps.second.begin(), maps.second.end(), 0);
    for (int k = top - 1; k >= lvl; --k) {
      for (auto& v : maps.first) v = t.transitions[k].obj_map[v];
      for (auto& v : maps.second) v = t.transitions[k].mor_map[v];
    }
    return maps;
  };
  auto [obj_to_d, mor_to_d] = composite_to(d);

  // (a) components of level d reached by object threads
  std::vector<char> reached(t.levels[d].objects, 0);
  for (int x = 0; x < t.levels[top].objects; ++x) reached[obj_to_d[x]] = 1;
  for (int y = 0; y < t.levels[d].objects; ++y)
    if (!reached[y]) {
      res.ok = false;
      res.witness = CommutationWitness{"component-unreachable", d, y, -1};
      return res;
    }

  // (b) per component thread: composite isotropy map onto level-d isotropy
  for (int x = 0; x < t.levels[top].objects; ++x) {
    auto iso_top = isotropy(t.levels[top], x);
    auto iso_d = isotropy(t.levels[d], obj_to_d[x]);
    std::map<int, int> local_d;
    for (size_t i = 0; i < iso_d.labels.size(); ++i) local_d[iso_d.labels[i]] = static_cast<int>(i);
    std::vector<int> im(iso_top.order());
    for (int i = 0; i < iso_top.order(); ++i) {
      auto it = local_d.find(mor_to_d[iso_top.labels[i]]);
      if (it == local_d.end())
        throw DomainError("limit_commutation_check: transition does not respect isotropy");
      im[i] = it->second;
    }
    for (int i = 0; i < iso_top.order(); ++i)
      for (int j = 0; j < iso_top.order(); ++j)
        if (im[iso_top.mul(i, j)] != iso_d.mul(im[i], im[j])) {
          res.ok = false;
          res.witness = CommutationWitness{"not-homomorphism", d, obj_to_d[x],
                                           iso_d.labels[im[i]]};
          return res;
        }
    std::vector<char> hit(iso_d.order(), 0);
    for (int v : im) hit[v] = 1;
    for (int e = 0; e < iso_d.order(); ++e)
      if (!hit[e]) {
        res.ok = false;
        res.witness = CommutationWitness{"isotropy-unreachable", d, obj_to_d[x],
                                         iso_d.labels[e]};
        return res;
      }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Full pipeline

struct PipelineResult {
  AnimaPresentation presentation;
  // audit trail
  std::optional<std::vector<VanDantzigResult>> extraction;  // per level, when U was given
  std::optional<GroupoidTower> restricted_tower;
  TowerSkeletonResult skeleton;
  std::vector<WideSubgroupoid> kernels;             // at the top skeleton level
  std::vector<QuotientResult> level_quotients;      // top skeleton / kernel, per level
  GroupoidTower quotient_tower;
};

/// Runs the whole construction on a valid tower: optional subgroupoid
/// extraction against the image of U at each level, transition-compatible
/// skeletal replacement, the kernel basis, the quotient tower, and its
/// realization. Every intermediate object is kept for audit.
inline PipelineResult pipeline(const GroupoidTower& input,
                               const std::optional<std::vector<int>>& u = std::nullopt) {
  {
    auto rep = validate_tower(input);
    if (!rep.ok())
      throw DomainError("pipeline: stage input: tower is not valid: " +
                        rep.violations.front().detail);
  }
  PipelineResult res;
  GroupoidTower working = input;
  const int top = input.depth();

  if (u) {
    // push U down level by level along the transitions
    std::vector<std::vector<int>> level_u(top + 1);
    level_u[top] = *u;
    std::sort(level_u[top].begin(), level_u[top].end());
    level_u[top].erase(std::unique(level_u[top].begin(), level_u[top].end()),
                       level_u[top].end());
    for (int n = top - 1; n >= 0; --n) {
      std::set<int> img;
      for (int m : level_u[n + 1]) img.insert(input.transitions[n].mor_map[m]);
      level_u[n].assign(img.begin(), img.end());
    }
    std::vector<VanDantzigResult> stages;
    std::vector<std::vector<int>> kept(top + 1);
    for (int n = 0; n <= top; ++n) {
      VanDantzigResult r;
      try {
        r = van_dantzig(input.levels[n], level_u[n]);
      } catch (const DomainError& e) {
        throw DomainError(std::string("pipeline: stage extraction: ") + e.what());
      }
      kept[n] = r.subgroupoid.morphisms;
      stages.push_back(std::move(r));
    }
    // intersect downward so the transitions restrict
    for (int n = top - 1; n >= 0; --n) {
      std::set<int> img;
      for (int m : kept[n + 1]) img.insert(input.transitions[n].mor_map[m]);
      std::vector<int> inter;
      for (int m : kept[n])
        if (img.count(m)) inter.push_back(m);
      kept[n] = std::move(inter);
    }
    std::vector<FiniteGroupoid> levels;
    std::vector<TowerMap> trans;
    std::vector<std::map<int, int>> local(top + 1);
    for (int n = 0; n <= top; ++n) {
      for (size_t i = 0; i < kept[n].size(); ++i) local[n][kept[n][i]] = static_cast<int>(i);
      try {
        levels.push_back(restrict_to_morphisms(input.levels[n], kept[n]));
      } catch (const DomainError& e) {
        throw DomainError(std::string("pipeline: stage extraction: level ") +
                          std::to_string(n) + ": " + e.what());
      }
    }
    for (int n = 0; n < top; ++n) {
      TowerMap m;
      m.obj_map = input.transitions[n].obj_map;
      for (int mor : kept[n + 1])
        m.mor_map.push_back(local[n].at(input.transitions[n].mor_map[mor]));
      trans.push_back(std::move(m));
    }
    working = make_groupoid_tower(levels, trans);
    res.extraction = std::move(stages);
    res.restricted_tower = working;
  }

  try {
    res.skeleton = skeletal_replacement(working);
  } catch (const DomainError& e) {
    throw DomainError(std::string("pipeline: stage skeletalization: ") + e.what());
  }

  res.kernels = normal_basis(res.skeleton.tower);
  const auto& top_skel = res.skeleton.tower.levels[res.skeleton.tower.depth()];
  for (const auto& k : res.kernels) {
    try {
      res.level_quotients.push_back(quotient(top_skel, k));
    } catch (const DomainError& e) {
      throw DomainError(std::string("pipeline: stage quotient: ") + e.what());
    }
  }

  // quotient tower: level n is top/ker_n; transitions coarsen cosets
  {
    std::vector<FiniteGroupoid> levels;
    std::vector<TowerMap> trans;
    for (const auto& q : res.level_quotients) levels.push_back(q.quotient);
    for (int n = 0; n + 1 < static_cast<int>(levels.size()); ++n) {
      TowerMap m;
      m.obj_map.resize(levels[n + 1].objects);
      std::iota(m.obj_map.begin(), m.obj_map.end(), 0);
      // coset of ker_{n+1} -> coset of ker_n containing its representative
      m.mor_map.resize(levels[n + 1].morphism_count());
      const auto& fine = res.level_quotients[n + 1].projection.mor_map;
      const auto& coarse = res.level_quotients[n].projection.mor_map;
      std::vector<int> rep(levels[n + 1].morphism_count(), -1);
      for (int a = 0; a < top_skel.morphism_count(); ++a)
        if (rep[fine[a]] < 0) rep[fine[a]] = a;
      for (int c = 0; c < levels[n + 1].morphism_count(); ++c) m.mor_map[c] = coarse[rep[c]];
      trans.push_back(std::move(m));
    }
    res.quotient_tower = make_groupoid_tower(levels, trans);
  }

  try {
    res.presentation = realize_tower(res.quotient_tower);
  } catch (const DomainError& e) {
    throw DomainError(std::string("pipeline: stage realization: ") + e.what());
  }
  return res;
}

}  // namespace stone
