#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "stone/errors.hpp"
#include "stone/functor.hpp"
#include "stone/groupoid.hpp"

namespace stone {

/// Tower of finite sets L_0, ..., L_d with transition maps
/// t_n : L_{n+1} -> L_n. The finite surrogate of a light profinite set.
struct SetTower {
  std::vector<int> level_sizes;
  std::vector<std::vector<int>> transitions;  // transitions[n][e in L_{n+1}] in L_n

  int depth() const { return static_cast<int>(level_sizes.size()) - 1; }
};

inline SetTower make_set_tower(std::vector<int> level_sizes,
                               std::vector<std::vector<int>> transitions) {
  if (level_sizes.empty()) throw StructureError("set tower needs at least one level");
  if (transitions.size() + 1 != level_sizes.size())
    throw StructureError("set tower needs exactly one transition per adjacent level pair");
  for (size_t n = 0; n < transitions.size(); ++n) {
    if (static_cast<int>(transitions[n].size()) != level_sizes[n + 1])
      throw StructureError("transition " + std::to_string(n) + " has wrong domain size");
    for (int v : transitions[n])
      if (v < 0 || v >= level_sizes[n])
        throw StructureError("transition " + std::to_string(n) + " value out of range");
  }
  return SetTower{std::move(level_sizes), std::move(transitions)};
}

/// Object/morphism index maps of a tower transition (a functor between
/// adjacent levels, with the groupoids owned by the tower).
struct TowerMap {
  std::vector<int> obj_map;
  std::vector<int> mor_map;
};

/// Tower of finite groupoids G^(0), ..., G^(d) with transition functors
/// T_n : G^(n+1) -> G^(n). Validity additionally demands surjectivity on
/// objects and morphisms and star-surjectivity of every transition; this
/// is the finite encoding of openness of the source and target maps.
struct GroupoidTower {
  std::vector<FiniteGroupoid> levels;
  std::vector<TowerMap> transitions;

  int depth() const { return static_cast<int>(levels.size()) - 1; }

  GroupoidFunctor functor_at(int n) const {
    GroupoidFunctor f;
    f.source = levels[n + 1];
    f.target = levels[n];
    f.obj_map = transitions[n].obj_map;
    f.mor_map = transitions[n].mor_map;
    return f;
  }
};

inline GroupoidTower make_groupoid_tower(std::vector<FiniteGroupoid> levels,
                                         std::vector<TowerMap> transitions) {
  if (levels.empty()) throw StructureError("groupoid tower needs at least one level");
  if (transitions.size() + 1 != levels.size())
    throw StructureError("groupoid tower needs exactly one transition per adjacent level pair");
  for (size_t n = 0; n < transitions.size(); ++n) {
    if (static_cast<int>(transitions[n].obj_map.size()) != levels[n + 1].objects)
      throw StructureError("transition " + std::to_string(n) + " object map has wrong size");
    if (static_cast<int>(transitions[n].mor_map.size()) != levels[n + 1].morphism_count())
      throw StructureError("transition " + std::to_string(n) + " morphism map has wrong size");
    for (int v : transitions[n].obj_map)
      if (v < 0 || v >= levels[n].objects)
        throw StructureError("transition " + std::to_string(n) + " object image out of range");
    for (int v : transitions[n].mor_map)
      if (v < 0 || v >= levels[n].morphism_count())
        throw StructureError("transition " + std::to_string(n) + " morphism image out of range");
  }
  return GroupoidTower{std::move(levels), std::move(transitions)};
}

/// Checks level validity, functoriality of each transition, surjectivity
/// on objects and morphisms, and star-surjectivity, with witnesses.
inline ValidationReport validate_tower(const GroupoidTower& t) {
  ValidationReport rep;
  auto add = [&rep](std::string axiom, std::vector<int> witness, std::string detail) {
    rep.violations.push_back({std::move(axiom), std::move(witness), std::move(detail)});
  };
  for (size_t n = 0; n < t.levels.size(); ++n) {
    auto lr = validate_groupoid(t.levels[n]);
    for (auto& v : lr.violations)
      add("level-" + std::to_string(n) + "-" + v.axiom, v.witness,
          "level " + std::to_string(n) + ": " + v.detail);
  }
  for (size_t n = 0; n < t.transitions.size(); ++n) {
    auto fr = validate_functor(t.functor_at(static_cast<int>(n)));
    for (auto& v : fr.violations)
      add("transition-" + std::to_string(n) + "-" + v.axiom, v.witness,
          "transition " + std::to_string(n) + ": " + v.detail);
    const auto& up = t.levels[n + 1];
    const auto& dn = t.levels[n];
    const auto& tr = t.transitions[n];
    std::vector<char> obj_hit(dn.objects, 0), mor_hit(dn.morphism_count(), 0);
    for (int v : tr.obj_map) if (v >= 0 && v < dn.objects) obj_hit[v] = 1;
    for (int v : tr.mor_map) if (v >= 0 && v < dn.morphism_count()) mor_hit[v] = 1;
    for (int y = 0; y < dn.objects; ++y)
      if (!obj_hit[y])
        add("object-surjectivity", {static_cast<int>(n), y},
            "transition " + std::to_string(n) + ": object " + std::to_string(y) +
                " has no preimage");
    for (int h = 0; h < dn.morphism_count(); ++h)
      if (!mor_hit[h])
        add("morphism-surjectivity", {static_cast<int>(n), h},
            "transition " + std::to_string(n) + ": morphism " + std::to_string(h) +
                " has no preimage");
    // star-surjectivity: every h out of T(x) lifts to a morphism out of x
    std::vector<std::vector<int>> out(dn.objects);
    for (int h = 0; h < dn.morphism_count(); ++h) out[dn.src[h]].push_back(h);
    for (int x = 0; x < up.objects; ++x) {
      if (tr.obj_map[x] < 0 || tr.obj_map[x] >= dn.objects) continue;
      for (int h : out[tr.obj_map[x]]) {
        bool lifted = false;
        for (int g = 0; g < up.morphism_count() && !lifted; ++g)
          if (up.src[g] == x && tr.mor_map[g] == h) lifted = true;
        if (!lifted)
          add("star-surjectivity", {static_cast<int>(n), x, h},
              "transition " + std::to_string(n) + ": morphism " + std::to_string(h) +
                  " out of the image of object " + std::to_string(x) + " has no lift");
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Threads

/// Compatible families through levels 0..d that extend through the whole
/// tower, listed by ascending level-d entry. Each thread is the tuple
/// (e_0, ..., e_d) with t_n(e_{n+1}) = e_n. For surjective towers this is
/// in bijection with L_d; a missing element of L_d detects a
/// non-surjective transition above level d.
inline std::vector<std::vector<int>> threads_at_depth(const SetTower& t, int d) {
  if (d < 0 || d > t.depth())
    throw DomainError("threads_at_depth: depth " + std::to_string(d) + " out of range");
  // elements of L_d reachable from the top level
  std::vector<char> reach(t.level_sizes[t.depth()], 1);
  for (int n = t.depth() - 1; n >= d; --n) {
    std::vector<char> next(t.level_sizes[n], 0);
    for (int e = 0; e < t.level_sizes[n + 1]; ++e)
      if (reach[e]) next[t.transitions[n][e]] = 1;
    reach = std::move(next);
  }
  std::vector<std::vector<int>> threads;
  for (int e = 0; e < t.level_sizes[d]; ++e) {
    if (!reach[e]) continue;
    std::vector<int> th(d + 1);
    th[d] = e;
    for (int n = d - 1; n >= 0; --n) th[n] = t.transitions[n][th[n + 1]];
    threads.push_back(std::move(th));
  }
  return threads;
}

inline SetTower object_tower(const GroupoidTower& t) {
  std::vector<int> sizes;
  std::vector<std::vector<int>> trans;
  for (const auto& l : t.levels) sizes.push_back(l.objects);
  for (const auto& m : t.transitions) trans.push_back(m.obj_map);
  return make_set_tower(sizes, trans);
}

inline SetTower morphism_tower(const GroupoidTower& t) {
  std::vector<int> sizes;
  std::vector<std::vector<int>> trans;
  for (const auto& l : t.levels) sizes.push_back(l.morphism_count());
  for (const auto& m : t.transitions) trans.push_back(m.mor_map);
  return make_set_tower(sizes, trans);
}

/// Component sets of the levels with the induced transition maps.
inline SetTower pi0_tower(const GroupoidTower& t) {
  std::vector<ComponentPartition> parts;
  for (const auto& l : t.levels) parts.push_back(pi0(l));
  std::vector<int> sizes;
  for (const auto& p : parts) sizes.push_back(p.count());
  std::vector<std::vector<int>> trans;
  for (size_t n = 0; n < t.transitions.size(); ++n) {
    std::vector<int> m(parts[n + 1].count(), -1);
    for (int x = 0; x < t.levels[n + 1].objects; ++x)
      m[parts[n + 1].component_of[x]] = parts[n].component_of[t.transitions[n].obj_map[x]];
    trans.push_back(std::move(m));
  }
  return make_set_tower(sizes, trans);
}

// ---------------------------------------------------------------------------
// Sections

/// Per-level sections s_n : L_n -> L_{n+1} with t_n(s_n(e)) = e, picking
/// the least-index preimage. Fails naming the level if a transition is
/// not surjective.
inline std::vector<std::vector<int>> tower_section(const SetTower& t) {
  std::vector<std::vector<int>> sigma;
  for (int n = 0; n < t.depth(); ++n) {
    std::vector<int> s(t.level_sizes[n], -1);
    for (int e = t.level_sizes[n + 1] - 1; e >= 0; --e) s[t.transitions[n][e]] = e;
    for (int v = 0; v < t.level_sizes[n]; ++v)
      if (s[v] < 0)
        throw DomainError("tower_section: transition " + std::to_string(n) +
                          " is not surjective, element " + std::to_string(v) + " of level " +
                          std::to_string(n) + " has no preimage");
    sigma.push_back(std::move(s));
  }
  return sigma;
}

// ---------------------------------------------------------------------------
// Truncation

inline SetTower truncate(const SetTower& t, int d) {
  if (d < 0 || d > t.depth())
    throw DomainError("truncate: depth " + std::to_string(d) + " out of range");
  SetTower out;
  out.level_sizes.assign(t.level_sizes.begin(), t.level_sizes.begin() + d + 1);
  out.transitions.assign(t.transitions.begin(), t.transitions.begin() + d);
  return out;
}

inline GroupoidTower truncate(const GroupoidTower& t, int d) {
  if (d < 0 || d > t.depth())
    throw DomainError("truncate: depth " + std::to_string(d) + " out of range");
  GroupoidTower out;
  out.levels.assign(t.levels.begin(), t.levels.begin() + d + 1);
  out.transitions.assign(t.transitions.begin(), t.transitions.begin() + d);
  return out;
}

}  // namespace stone
