#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "stone/errors.hpp"
#include "stone/group.hpp"
#include "stone/groupoid.hpp"

namespace stone {

/// A functor between finite groupoids: an object map and a morphism map
/// commuting with src, tgt, unit, inv and comp.
struct GroupoidFunctor {
  FiniteGroupoid source;
  FiniteGroupoid target;
  std::vector<int> obj_map;
  std::vector<int> mor_map;
};

inline GroupoidFunctor identity_functor(const FiniteGroupoid& g) {
  GroupoidFunctor f;
  f.source = g;
  f.target = g;
  f.obj_map.resize(g.objects);
  std::iota(f.obj_map.begin(), f.obj_map.end(), 0);
  f.mor_map.resize(g.morphism_count());
  std::iota(f.mor_map.begin(), f.mor_map.end(), 0);
  return f;
}

inline ValidationReport validate_functor(const GroupoidFunctor& f) {
  ValidationReport rep;
  auto add = [&rep](std::string axiom, std::vector<int> witness, std::string detail) {
    rep.violations.push_back({std::move(axiom), std::move(witness), std::move(detail)});
  };
  const auto& s = f.source;
  const auto& t = f.target;
  if (static_cast<int>(f.obj_map.size()) != s.objects) {
    add("obj-map-size", {}, "object map size does not match source object count");
    return rep;
  }
  if (static_cast<int>(f.mor_map.size()) != s.morphism_count()) {
    add("mor-map-size", {}, "morphism map size does not match source morphism count");
    return rep;
  }
  for (int x = 0; x < s.objects; ++x)
    if (f.obj_map[x] < 0 || f.obj_map[x] >= t.objects) {
      add("obj-map-range", {x}, "object image out of range");
      return rep;
    }
  for (int a = 0; a < s.morphism_count(); ++a)
    if (f.mor_map[a] < 0 || f.mor_map[a] >= t.morphism_count()) {
      add("mor-map-range", {a}, "morphism image out of range");
      return rep;
    }
  for (int a = 0; a < s.morphism_count(); ++a) {
    int fa = f.mor_map[a];
    if (t.src[fa] != f.obj_map[s.src[a]]) add("src-compat", {a}, "src not preserved");
    if (t.tgt[fa] != f.obj_map[s.tgt[a]]) add("tgt-compat", {a}, "tgt not preserved");
    if (f.mor_map[s.inv[a]] != t.inv[fa]) add("inv-compat", {a}, "inv not preserved");
  }
  for (int x = 0; x < s.objects; ++x)
    if (f.mor_map[s.unit[x]] != t.unit[f.obj_map[x]])
      add("unit-compat", {x}, "unit not preserved");
  for (const auto& tr : s.comp) {
    if (s.tgt[tr[0]] != s.src[tr[1]]) continue;
    int lhs = f.mor_map[tr[2]];
    int rhs = t.compose(f.mor_map[tr[0]], f.mor_map[tr[1]]);
    if (lhs != rhs) add("comp-compat", {tr[0], tr[1]}, "composition not preserved");
  }
  return rep;
}

namespace detail {

inline std::map<std::pair<int, int>, std::vector<int>> hom_sets(const FiniteGroupoid& g) {
  std::map<std::pair<int, int>, std::vector<int>> h;
  for (int a = 0; a < g.morphism_count(); ++a) h[{g.src[a], g.tgt[a]}].push_back(a);
  return h;
}

}  // namespace detail

/// True iff for every object pair (x, x') the morphism map restricts to
/// a bijection Hom(x, x') -> Hom(Fx, Fx').
inline bool internal_fully_faithful(const GroupoidFunctor& f) {
  auto hs = detail::hom_sets(f.source);
  auto ht = detail::hom_sets(f.target);
  for (int x = 0; x < f.source.objects; ++x)
    for (int y = 0; y < f.source.objects; ++y) {
      const std::vector<int>* from = nullptr;
      if (auto it = hs.find({x, y}); it != hs.end()) from = &it->second;
      const std::vector<int>* to = nullptr;
      if (auto it = ht.find({f.obj_map[x], f.obj_map[y]}); it != ht.end()) to = &it->second;
      size_t nf = from ? from->size() : 0, nt = to ? to->size() : 0;
      if (nf != nt) return false;
      if (!from) continue;
      std::set<int> images;
      for (int a : *from) images.insert(f.mor_map[a]);
      if (images.size() != nf) return false;  // not injective
      for (int b : *to)
        if (!images.count(b)) return false;   // not surjective
    }
  return true;
}

/// True iff every target object receives a morphism whose source lies in
/// the image of the object map.
inline bool internal_essentially_surjective(const GroupoidFunctor& f) {
  std::vector<char> in_image(f.target.objects, 0);
  for (int x = 0; x < f.source.objects; ++x) in_image[f.obj_map[x]] = 1;
  std::vector<char> reached(f.target.objects, 0);
  for (int h = 0; h < f.target.morphism_count(); ++h)
    if (in_image[f.target.src[h]]) reached[f.target.tgt[h]] = 1;
  for (int y = 0; y < f.target.objects; ++y)
    if (!reached[y]) return false;
  return true;
}

/// The induced map on components; entry per source component.
inline std::vector<int> pi0_map(const GroupoidFunctor& f, const ComponentPartition& ps,
                                const ComponentPartition& pt) {
  std::vector<int> m(ps.count(), -1);
  for (int x = 0; x < f.source.objects; ++x) {
    int c = ps.component_of[x];
    int d = pt.component_of[f.obj_map[x]];
    m[c] = d;  // well-defined for a valid functor
  }
  return m;
}

/// Whitehead criterion for 1-types: bijective on components and an
/// isomorphism on the isotropy group at every source object.
inline bool whitehead_equivalence(const GroupoidFunctor& f) {
  auto ps = pi0(f.source);
  auto pt = pi0(f.target);
  if (ps.count() != pt.count()) return false;
  auto m = pi0_map(f, ps, pt);
  std::vector<char> hit(pt.count(), 0);
  for (int d : m) {
    if (d < 0 || hit[d]) return false;
    hit[d] = 1;
  }
  for (int x = 0; x < f.source.objects; ++x) {
    auto is = isotropy(f.source, x);
    auto it = isotropy(f.target, f.obj_map[x]);
    if (is.order() != it.order()) return false;
    std::set<int> images;
    std::set<int> loops(it.labels.begin(), it.labels.end());
    for (int lbl : is.labels) {
      int img = f.mor_map[lbl];
      if (!loops.count(img)) return false;
      images.insert(img);
    }
    if (static_cast<int>(images.size()) != it.order()) return false;
  }
  return true;
}

inline int default_oracle_bound() { return 64; }

/// Independent equivalence criterion: a bijection between component sets
/// matching isotropy groups up to isomorphism. Refuses (instead of ever
/// answering wrongly) above the size bound.
inline bool equivalence_oracle(const FiniteGroupoid& g, const FiniteGroupoid& h,
                               int bound = default_oracle_bound()) {
  if (g.morphism_count() > bound || h.morphism_count() > bound)
    throw DomainError("equivalence_oracle: morphism count exceeds bound " +
                      std::to_string(bound));
  auto pg = pi0(g);
  auto ph = pi0(h);
  if (pg.count() != ph.count()) return false;
  std::vector<FiniteGroup> gg, hh;
  for (int c = 0; c < pg.count(); ++c) gg.push_back(isotropy(g, pg.representative[c]));
  for (int c = 0; c < ph.count(); ++c) hh.push_back(isotropy(h, ph.representative[c]));
  std::vector<char> used(hh.size(), 0);
  // greedy matching is enough: "isomorphic" is an equivalence relation,
  // so any unmatched-compatible pairing extends to a full matching
  for (const auto& a : gg) {
    bool matched = false;
    for (size_t j = 0; j < hh.size(); ++j) {
      if (used[j]) continue;
      if (group_isomorphic(a, hh[j])) {
        used[j] = 1;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

}  // namespace stone
