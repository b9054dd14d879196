#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stone/errors.hpp"
#include "stone/functor.hpp"
#include "stone/groupoid.hpp"
#include "stone/tower.hpp"

namespace stone {

/// A wide subgroupoid of an ambient groupoid, stored as the sorted set of
/// its morphisms. Wideness means it contains every unit; it must also be
/// closed under composition and inversion.
struct WideSubgroupoid {
  std::vector<int> morphisms;  // sorted ascending

  bool contains(int g) const {
    return std::binary_search(morphisms.begin(), morphisms.end(), g);
  }
};

inline ValidationReport validate_wide(const FiniteGroupoid& g, const WideSubgroupoid& w) {
  ValidationReport rep;
  auto add = [&rep](std::string axiom, std::vector<int> witness, std::string detail) {
    rep.violations.push_back({std::move(axiom), std::move(witness), std::move(detail)});
  };
  for (int m : w.morphisms)
    if (m < 0 || m >= g.morphism_count()) {
      add("range", {m}, "morphism index out of range");
      return rep;
    }
  for (int x = 0; x < g.objects; ++x)
    if (!w.contains(g.unit[x]))
      add("wide", {x}, "unit of object " + std::to_string(x) + " missing");
  for (int m : w.morphisms)
    if (!w.contains(g.inv[m]))
      add("inverse-closed", {m}, "inverse of morphism " + std::to_string(m) + " missing");
  for (int a : w.morphisms)
    for (int b : w.morphisms) {
      if (g.tgt[a] != g.src[b]) continue;
      int p = g.compose(a, b);
      if (p >= 0 && !w.contains(p))
        add("composition-closed", {a, b},
            "composite of (" + std::to_string(a) + ", " + std::to_string(b) + ") escapes");
    }
  return rep;
}

/// True iff w is additionally closed under conjugation by every morphism
/// of the ambient groupoid; on failure returns a witness (g, r).
inline bool is_normal_wide(const FiniteGroupoid& g, const WideSubgroupoid& w,
                           std::pair<int, int>* witness = nullptr) {
  for (int r : w.morphisms) {
    if (g.src[r] != g.tgt[r]) continue;  // conjugation is defined on loops
    for (int a = 0; a < g.morphism_count(); ++a) {
      if (g.tgt[a] != g.tgt[r]) continue;
      int ar = g.compose(a, r);
      if (ar < 0) continue;
      int conj = g.compose(ar, g.inv[a]);
      if (conj >= 0 && !w.contains(conj)) {
        if (witness) *witness = {a, r};
        return false;
      }
    }
  }
  return true;
}

inline WideSubgroupoid unit_subgroupoid(const FiniteGroupoid& g) {
  WideSubgroupoid w;
  w.morphisms = g.unit;
  std::sort(w.morphisms.begin(), w.morphisms.end());
  return w;
}

/// Restriction of a groupoid to a morphism subset closed under the
/// structure maps, reindexed; kept[i] is the original index of morphism i.
inline FiniteGroupoid restrict_to_morphisms(const FiniteGroupoid& g,
                                            const std::vector<int>& kept_sorted,
                                            std::vector<int>* kept_out = nullptr) {
  std::map<int, int> local;
  for (size_t i = 0; i < kept_sorted.size(); ++i) local[kept_sorted[i]] = static_cast<int>(i);
  std::vector<int> src, tgt, unit(g.objects), inv;
  std::vector<std::array<int, 3>> comp;
  for (int m : kept_sorted) {
    src.push_back(g.src[m]);
    tgt.push_back(g.tgt[m]);
    auto it = local.find(g.inv[m]);
    if (it == local.end()) throw DomainError("restriction is not closed under inversion");
    inv.push_back(it->second);
  }
  for (int x = 0; x < g.objects; ++x) {
    auto it = local.find(g.unit[x]);
    if (it == local.end()) throw DomainError("restriction is not wide");
    unit[x] = it->second;
  }
  for (const auto& t : g.comp) {
    auto a = local.find(t[0]);
    auto b = local.find(t[1]);
    if (a == local.end() || b == local.end()) continue;
    auto c = local.find(t[2]);
    if (c == local.end()) throw DomainError("restriction is not closed under composition");
    comp.push_back({a->second, b->second, c->second});
  }
  if (kept_out) *kept_out = kept_sorted;
  return make_groupoid(g.objects, src, tgt, unit, inv, comp);
}

// ---------------------------------------------------------------------------
// Subgroupoid extraction inside a neighborhood of the units

/// Intermediate sets of the extraction, kept for auditing. Invariants:
/// F is symmetric, units ⊆ F ⊆ K = U, every composable pair from F lands
/// in W, B ⊆ F x F, M = p1(B), V = M ∪ M^{-1}, H1 = F \ V.
struct VanDantzigTrace {
  std::vector<int> input_u;
  std::vector<int> k;
  std::vector<std::pair<int, int>> w;  // composable pairs in K with product in K
  std::vector<int> f;
  std::vector<std::pair<int, int>> b;  // pairs in F x F whose product escapes F
  std::vector<int> m;
  std::vector<int> v;
  std::vector<int> h1;
};

struct VanDantzigResult {
  WideSubgroupoid subgroupoid;
  VanDantzigTrace trace;
};

/// Extracts a wide subgroupoid H with units ⊆ H1 ⊆ U from any
/// unit-containing morphism subset U:
///   K := U; grow F greedily from the units inside K ∩ K^{-1}, adding
///   morphisms in index order while all composable products from F stay
///   in K, then symmetrize F := F ∩ F^{-1}; B := composable pairs in F
///   whose product leaves F; M := p1(B); V := M ∪ M^{-1}; H1 := F \ V.
inline VanDantzigResult van_dantzig(const FiniteGroupoid& g, const std::vector<int>& u) {
  std::vector<int> input_u = u;
  std::sort(input_u.begin(), input_u.end());
  input_u.erase(std::unique(input_u.begin(), input_u.end()), input_u.end());
  for (int m : input_u)
    if (m < 0 || m >= g.morphism_count())
      throw DomainError("van_dantzig: morphism index " + std::to_string(m) + " out of range");
  std::vector<char> in_u(g.morphism_count(), 0);
  for (int m : input_u) in_u[m] = 1;
  for (int x = 0; x < g.objects; ++x)
    if (!in_u[g.unit[x]])
      throw DomainError("van_dantzig: neighborhood does not contain the unit at object " +
                        std::to_string(x));

  VanDantzigTrace tr;
  tr.input_u = input_u;
  tr.k = input_u;
  const auto& k_mask = in_u;

  // W: composable pairs within K whose product stays in K
  for (int a : tr.k)
    for (int b : tr.k) {
      if (g.tgt[a] != g.src[b]) continue;
      int p = g.compose(a, b);
      if (p >= 0 && k_mask[p]) tr.w.push_back({a, b});
    }

  // candidates: the symmetric part of K
  std::vector<int> ksym;
  for (int m : tr.k)
    if (k_mask[g.inv[m]]) ksym.push_back(m);

  std::vector<char> in_f(g.morphism_count(), 0);
  std::vector<int> f;
  for (int x = 0; x < g.objects; ++x)
    if (!in_f[g.unit[x]]) {
      in_f[g.unit[x]] = 1;
      f.push_back(g.unit[x]);
    }
  std::sort(f.begin(), f.end());
  auto products_stay_in_k = [&](int cand) {
    for (int a : f) {
      if (g.tgt[a] == g.src[cand]) {
        int p = g.compose(a, cand);
        if (p >= 0 && !k_mask[p]) return false;
      }
      if (g.tgt[cand] == g.src[a]) {
        int p = g.compose(cand, a);
        if (p >= 0 && !k_mask[p]) return false;
      }
    }
    if (g.tgt[cand] == g.src[cand]) {
      int p = g.compose(cand, cand);
      if (p >= 0 && !k_mask[p]) return false;
    }
    return true;
  };
  for (int cand : ksym) {
    if (in_f[cand]) continue;
    if (products_stay_in_k(cand)) {
      in_f[cand] = 1;
      f.insert(std::lower_bound(f.begin(), f.end(), cand), cand);
    }
  }
  // symmetrize
  {
    std::vector<int> fs;
    for (int m : f)
      if (in_f[g.inv[m]]) fs.push_back(m);
    for (int m : f) in_f[m] = 0;
    for (int m : fs) in_f[m] = 1;
    f = std::move(fs);
  }
  tr.f = f;

  // pairs whose product escapes F
  std::vector<char> in_m(g.morphism_count(), 0);
  for (int a : f)
    for (int b : f) {
      if (g.tgt[a] != g.src[b]) continue;
      int p = g.compose(a, b);
      if (p >= 0 && !in_f[p]) {
        tr.b.push_back({a, b});
        in_m[a] = 1;
      }
    }
  for (int a = 0; a < g.morphism_count(); ++a)
    if (in_m[a]) tr.m.push_back(a);
  std::vector<char> in_v = in_m;
  for (int a : tr.m) in_v[g.inv[a]] = 1;
  for (int a = 0; a < g.morphism_count(); ++a)
    if (in_v[a]) tr.v.push_back(a);
  for (int a : f)
    if (!in_v[a]) tr.h1.push_back(a);

  VanDantzigResult res;
  res.subgroupoid.morphisms = tr.h1;
  res.trace = std::move(tr);
  return res;
}

// ---------------------------------------------------------------------------
// Skeletal replacement

struct SkeletonResult {
  FiniteGroupoid skeleton;
  GroupoidFunctor inclusion;    // skeleton -> original
  std::vector<int> section;     // chosen object per component
};

namespace detail {

inline SkeletonResult skeleton_on_representatives(const FiniteGroupoid& g,
                                                  const std::vector<int>& reps) {
  std::vector<char> is_rep(g.objects, 0);
  for (int r : reps) is_rep[r] = 1;
  std::vector<int> kept;
  for (int a = 0; a < g.morphism_count(); ++a)
    if (is_rep[g.src[a]] && is_rep[g.tgt[a]]) kept.push_back(a);
  std::map<int, int> obj_local, mor_local;
  std::vector<int> objs = reps;
  std::sort(objs.begin(), objs.end());
  for (size_t i = 0; i < objs.size(); ++i) obj_local[objs[i]] = static_cast<int>(i);
  for (size_t i = 0; i < kept.size(); ++i) mor_local[kept[i]] = static_cast<int>(i);
  std::vector<int> src, tgt, unit(objs.size()), inv;
  std::vector<std::array<int, 3>> comp;
  for (int m : kept) {
    src.push_back(obj_local.at(g.src[m]));
    tgt.push_back(obj_local.at(g.tgt[m]));
    inv.push_back(mor_local.at(g.inv[m]));
  }
  for (size_t i = 0; i < objs.size(); ++i) unit[i] = mor_local.at(g.unit[objs[i]]);
  for (const auto& t : g.comp) {
    auto a = mor_local.find(t[0]);
    auto b = mor_local.find(t[1]);
    if (a == mor_local.end() || b == mor_local.end()) continue;
    comp.push_back({a->second, b->second, mor_local.at(t[2])});
  }
  SkeletonResult r;
  r.skeleton = make_groupoid(static_cast<int>(objs.size()), src, tgt, unit, inv, comp);
  r.inclusion.source = r.skeleton;
  // caller fills inclusion.target to avoid an extra copy when unwanted
  r.inclusion.obj_map = objs;
  r.inclusion.mor_map = kept;
  return r;
}

}  // namespace detail

/// Full subgroupoid on one least-index representative per component.
/// The inclusion is internally fully faithful and essentially surjective,
/// and the skeleton has no morphisms between distinct objects.
inline SkeletonResult skeletal_replacement(const FiniteGroupoid& g) {
  auto part = pi0(g);
  auto r = detail::skeleton_on_representatives(g, part.representative);
  r.inclusion.target = g;
  r.section = part.representative;
  return r;
}

struct TowerSkeletonResult {
  GroupoidTower tower;
  std::vector<GroupoidFunctor> inclusions;    // level-wise, skeleton -> original
  std::vector<std::vector<int>> sections;     // chosen object per component, per level
};

/// Level-wise skeletal replacement with transition-compatible sections:
/// the representative of a component is the least-index object of it
/// mapping to the representative chosen one level below.
inline TowerSkeletonResult skeletal_replacement(const GroupoidTower& t) {
  TowerSkeletonResult out;
  std::vector<std::vector<int>> reps(t.levels.size());
  std::vector<ComponentPartition> parts;
  for (const auto& l : t.levels) parts.push_back(pi0(l));
  reps[0] = parts[0].representative;
  for (int n = 0; n + 1 < static_cast<int>(t.levels.size()); ++n) {
    std::vector<char> is_rep_below(t.levels[n].objects, 0);
    for (int r : reps[n]) is_rep_below[r] = 1;
    const auto& p = parts[n + 1];
    std::vector<int> chosen(p.count(), -1);
    for (int x = 0; x < t.levels[n + 1].objects; ++x) {
      int c = p.component_of[x];
      if (chosen[c] >= 0) continue;
      if (is_rep_below[t.transitions[n].obj_map[x]]) chosen[c] = x;
    }
    for (int c = 0; c < p.count(); ++c)
      if (chosen[c] < 0)
        throw DomainError("skeletal_replacement: no transition-compatible section at level " +
                          std::to_string(n + 1) + ", component " + std::to_string(c));
    reps[n + 1] = chosen;
  }
  std::vector<FiniteGroupoid> levels;
  std::vector<SkeletonResult> skels;
  for (size_t n = 0; n < t.levels.size(); ++n) {
    auto s = detail::skeleton_on_representatives(t.levels[n], reps[n]);
    s.inclusion.target = t.levels[n];
    s.section = reps[n];
    levels.push_back(s.skeleton);
    skels.push_back(std::move(s));
  }
  std::vector<TowerMap> trans;
  for (size_t n = 0; n + 1 < t.levels.size(); ++n) {
    const auto& up = skels[n + 1];
    const auto& dn = skels[n];
    std::map<int, int> dn_obj, dn_mor;
    for (size_t i = 0; i < dn.inclusion.obj_map.size(); ++i)
      dn_obj[dn.inclusion.obj_map[i]] = static_cast<int>(i);
    for (size_t i = 0; i < dn.inclusion.mor_map.size(); ++i)
      dn_mor[dn.inclusion.mor_map[i]] = static_cast<int>(i);
    TowerMap m;
    for (int x : up.inclusion.obj_map) {
      auto it = dn_obj.find(t.transitions[n].obj_map[x]);
      if (it == dn_obj.end())
        throw DomainError("skeletal_replacement: section is not transition-compatible");
      m.obj_map.push_back(it->second);
    }
    for (int a : up.inclusion.mor_map) {
      auto it = dn_mor.find(t.transitions[n].mor_map[a]);
      if (it == dn_mor.end())
        throw DomainError("skeletal_replacement: skeleton morphism image escapes the skeleton");
      m.mor_map.push_back(it->second);
    }
    trans.push_back(std::move(m));
  }
  out.tower = make_groupoid_tower(levels, trans);
  for (auto& s : skels) {
    out.inclusions.push_back(std::move(s.inclusion));
    out.sections.push_back(std::move(s.section));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Normal core

/// Largest normal wide subgroupoid contained in a wide subgroupoid of a
/// skeletal groupoid: drop every loop some conjugate of which escapes.
/// Conjugation g r g^{-1} is defined when src(r) = tgt(r) = tgt(g).
inline WideSubgroupoid normal_core(const FiniteGroupoid& x, const WideSubgroupoid& h) {
  if (!is_skeletal(x)) throw DomainError("normal_core: input groupoid is not skeletal");
  auto wr = validate_wide(x, h);
  if (!wr.ok())
    throw DomainError("normal_core: subgroupoid is not wide in the ambient groupoid: " +
                      wr.violations.front().detail);
  std::vector<char> bad(x.morphism_count(), 0);
  for (int r : h.morphisms) {
    if (x.src[r] != x.tgt[r]) continue;
    for (int a = 0; a < x.morphism_count(); ++a) {
      if (x.tgt[a] != x.tgt[r]) continue;
      int ar = x.compose(a, r);
      if (ar < 0) continue;
      int conj = x.compose(ar, x.inv[a]);
      if (conj >= 0 && !h.contains(conj)) {
        bad[r] = 1;
        break;
      }
    }
  }
  WideSubgroupoid n;
  for (int r : h.morphisms)
    if (!bad[r]) n.morphisms.push_back(r);
  return n;
}

// ---------------------------------------------------------------------------
// Quotient by a normal wide subgroupoid

/// Coset partition of the morphisms of a skeletal groupoid by a normal
/// wide subgroupoid. Cosets are listed by ascending least member;
/// coset_of[g] is the coset index of morphism g.
struct CosetPartition {
  std::vector<int> coset_of;
  std::vector<std::vector<int>> cosets;
};

inline CosetPartition coset_partition(const FiniteGroupoid& x, const WideSubgroupoid& n) {
  CosetPartition p;
  p.coset_of.assign(x.morphism_count(), -1);
  for (int a = 0; a < x.morphism_count(); ++a) {
    if (p.coset_of[a] >= 0) continue;
    std::vector<int> c;
    for (int r : n.morphisms) {
      if (x.tgt[a] != x.src[r]) continue;
      int p2 = x.compose(a, r);
      if (p2 >= 0) c.push_back(p2);
    }
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    int id = static_cast<int>(p.cosets.size());
    for (int mcs : c) p.coset_of[mcs] = id;
    p.cosets.push_back(std::move(c));
  }
  return p;
}

struct QuotientResult {
  FiniteGroupoid quotient;
  GroupoidFunctor projection;  // original -> quotient, identity on objects
};

/// Quotient of a skeletal groupoid by a normal wide subgroupoid: the same
/// objects, loops at x become the cosets of N_x.
inline QuotientResult quotient(const FiniteGroupoid& x, const WideSubgroupoid& n) {
  if (!is_skeletal(x)) throw DomainError("quotient: input groupoid is not skeletal");
  auto wr = validate_wide(x, n);
  if (!wr.ok())
    throw DomainError("quotient: subgroupoid is not wide: " + wr.violations.front().detail);
  std::pair<int, int> wit;
  if (!is_normal_wide(x, n, &wit))
    throw DomainError("quotient: subgroupoid is not normal, conjugating morphism " +
                      std::to_string(wit.second) + " by " + std::to_string(wit.first) +
                      " escapes");
  auto part = coset_partition(x, n);
  const int nc = static_cast<int>(part.cosets.size());
  std::vector<int> src(nc), tgt(nc), unit(x.objects), inv(nc);
  std::vector<std::array<int, 3>> comp;
  for (int c = 0; c < nc; ++c) {
    int rep = part.cosets[c].front();
    src[c] = x.src[rep];
    tgt[c] = x.tgt[rep];
    inv[c] = part.coset_of[x.inv[rep]];
  }
  for (int o = 0; o < x.objects; ++o) unit[o] = part.coset_of[x.unit[o]];
  for (int a = 0; a < nc; ++a)
    for (int b = 0; b < nc; ++b) {
      if (tgt[a] != src[b]) continue;
      int p = x.compose(part.cosets[a].front(), part.cosets[b].front());
      if (p < 0) continue;
      comp.push_back({a, b, part.coset_of[p]});
    }
  QuotientResult r;
  r.quotient = make_groupoid(x.objects, src, tgt, unit, inv, comp);
  r.projection.source = x;
  r.projection.target = r.quotient;
  r.projection.obj_map.resize(x.objects);
  std::iota(r.projection.obj_map.begin(), r.projection.obj_map.end(), 0);
  r.projection.mor_map = part.coset_of;
  return r;
}

// ---------------------------------------------------------------------------
// Normal bases

/// All normal wide subgroupoids of a skeletal groupoid. Since morphisms
/// never cross objects, these are exactly the per-object choices of a
/// normal subgroup of each isotropy group. Ordered by size, then
/// lexicographically. Refuses above 24 morphisms (the lattice blows up);
/// use the kernel-basis overloads beyond that.
inline std::vector<WideSubgroupoid> normal_basis(const FiniteGroupoid& x) {
  if (!is_skeletal(x)) throw DomainError("normal_basis: input groupoid is not skeletal");
  if (x.morphism_count() > 24)
    throw DomainError("normal_basis: lattice enumeration is limited to 24 morphisms, got " +
                      std::to_string(x.morphism_count()));
  std::vector<std::vector<std::vector<int>>> per_object;  // object -> choices -> morphism ids
  for (int o = 0; o < x.objects; ++o) {
    auto iso = isotropy(x, o);
    std::vector<std::vector<int>> choices;
    for (const auto& sub : normal_subgroups(iso)) {
      std::vector<int> mor;
      for (int e : sub) mor.push_back(iso.labels[e]);
      std::sort(mor.begin(), mor.end());
      choices.push_back(std::move(mor));
    }
    per_object.push_back(std::move(choices));
  }
  std::vector<WideSubgroupoid> out;
  std::vector<size_t> pick(per_object.size(), 0);
  while (true) {
    WideSubgroupoid w;
    for (size_t o = 0; o < per_object.size(); ++o)
      for (int m : per_object[o][pick[o]]) w.morphisms.push_back(m);
    std::sort(w.morphisms.begin(), w.morphisms.end());
    out.push_back(std::move(w));
    size_t i = 0;
    for (; i < pick.size(); ++i) {
      if (++pick[i] < per_object[i].size()) break;
      pick[i] = 0;
    }
    if (i == pick.size()) break;
  }
  std::sort(out.begin(), out.end(), [](const WideSubgroupoid& a, const WideSubgroupoid& b) {
    if (a.morphisms.size() != b.morphisms.size()) return a.morphisms.size() < b.morphisms.size();
    return a.morphisms < b.morphisms;
  });
  return out;
}

/// Kernels of the given quotient functors out of x, each a normal wide
/// subgroupoid: the morphisms whose image is a unit.
inline std::vector<WideSubgroupoid> kernel_basis(const FiniteGroupoid& x,
                                                 const std::vector<GroupoidFunctor>& quotients) {
  std::vector<WideSubgroupoid> out;
  for (const auto& q : quotients) {
    std::vector<char> is_unit(q.target.morphism_count(), 0);
    for (int o = 0; o < q.target.objects; ++o) is_unit[q.target.unit[o]] = 1;
    WideSubgroupoid w;
    for (int a = 0; a < x.morphism_count(); ++a)
      if (is_unit[q.mor_map[a]]) w.morphisms.push_back(a);
    out.push_back(std::move(w));
  }
  return out;
}

/// Kernels, at the top level of a skeletal tower, of the composite
/// transitions to each level n = 0..depth. The last entry (n = depth) is
/// the unit subgroupoid; the kernels are nested decreasingly.
inline std::vector<WideSubgroupoid> normal_basis(const GroupoidTower& t) {
  for (const auto& l : t.levels)
    if (!is_skeletal(l)) throw DomainError("normal_basis: tower level is not skeletal");
  const int d = t.depth();
  const auto& top = t.levels[d];
  std::vector<WideSubgroupoid> out;
  for (int n = 0; n <= d; ++n) {
    // composite morphism map top -> level n
    std::vector<int> to_n(top.morphism_count());
    std::iota(to_n.begin(), to_n.end(), 0);
    for (int k = d - 1; k >= n; --k)
      for (auto& v : to_n) v = t.transitions[k].mor_map[v];
    std::vector<char> is_unit(t.levels[n].morphism_count(), 0);
    for (int o = 0; o < t.levels[n].objects; ++o) is_unit[t.levels[n].unit[o]] = 1;
    WideSubgroupoid w;
    for (int a = 0; a < top.morphism_count(); ++a)
      if (is_unit[to_n[a]]) w.morphisms.push_back(a);
    out.push_back(std::move(w));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Collapse maps

/// Retraction of a skeletal groupoid onto the isotropy group at x: loops
/// at x map to themselves, everything else to the identity. A section of
/// the inclusion of the one-object groupoid on isotropy(e, x).
inline GroupoidFunctor collapse(const FiniteGroupoid& e, int x) {
  if (!is_skeletal(e)) throw DomainError("collapse: input groupoid is not skeletal");
  if (x < 0 || x >= e.objects)
    throw DomainError("collapse: invalid object index " + std::to_string(x));
  auto iso = isotropy(e, x);
  std::map<int, int> local;
  for (size_t i = 0; i < iso.labels.size(); ++i) local[iso.labels[i]] = static_cast<int>(i);
  GroupoidFunctor f;
  f.source = e;
  f.target = one_object_groupoid(iso);
  f.obj_map.assign(e.objects, 0);
  f.mor_map.assign(e.morphism_count(), iso.identity);
  for (int a = 0; a < e.morphism_count(); ++a) {
    auto it = local.find(a);
    if (it != local.end()) f.mor_map[a] = it->second;
  }
  return f;
}

// ---------------------------------------------------------------------------
// Separating families

/// A family of functors to finite groupoids that separates points:
/// (a) for each 2-block partition of the objects, the functor to the
///     discrete 2-object groupoid (block of object 0 goes to object 0);
/// (b) for each object x, the collapse functor onto isotropy(e, x).
/// Any two distinct objects or morphisms are distinguished by a member.
inline std::vector<GroupoidFunctor> separating_family(const FiniteGroupoid& e) {
  if (!is_skeletal(e)) throw DomainError("separating_family: input groupoid is not skeletal");
  std::vector<GroupoidFunctor> fam;
  if (e.objects >= 2) {
    FiniteGroupoid two = make_groupoid(2, {0, 1}, {0, 1}, {0, 1}, {0, 1},
                                       {{0, 0, 0}, {1, 1, 1}});
    // subsets not containing object 0 enumerate the unordered partitions
    const int n = e.objects;
    for (unsigned long long bits = 1; bits < (1ULL << (n - 1)); ++bits) {
      GroupoidFunctor f;
      f.source = e;
      f.target = two;
      f.obj_map.assign(n, 0);
      for (int x = 1; x < n; ++x)
        if (bits & (1ULL << (x - 1))) f.obj_map[x] = 1;
      f.mor_map.resize(e.morphism_count());
      for (int a = 0; a < e.morphism_count(); ++a) f.mor_map[a] = f.obj_map[e.src[a]];
      fam.push_back(std::move(f));
    }
  }
  for (int x = 0; x < e.objects; ++x) fam.push_back(collapse(e, x));
  return fam;
}

// ---------------------------------------------------------------------------
// Reconstruction from a basis of normal quotients

struct ReconstructResult {
  bool objects_bijective = true;
  bool morphisms_injective = false;
  bool morphisms_surjective = false;
  // two morphisms not separated by any quotient
  std::optional<std::pair<int, int>> collision;
  // a compatible choice of cosets (index per basis member) hit by no morphism
  std::optional<std::vector<int>> unrealized;

  bool bijective() const { return objects_bijective && morphisms_injective && morphisms_surjective; }
};

/// Checks whether the canonical map into the limit of the quotients by
/// the basis members (ordered by reverse inclusion) is bijective.
/// Injectivity fails iff two morphisms lie in the same coset of every
/// member; surjectivity fails iff some family of cosets, compatible
/// along all inclusions between members, has empty intersection.
inline ReconstructResult reconstruct(const FiniteGroupoid& x,
                                     const std::vector<WideSubgroupoid>& basis) {
  if (!is_skeletal(x)) throw DomainError("reconstruct: input groupoid is not skeletal");
  for (const auto& n : basis) {
    auto wr = validate_wide(x, n);
    if (!wr.ok())
      throw DomainError("reconstruct: basis member is not wide: " + wr.violations.front().detail);
    std::pair<int, int> wit;
    if (!is_normal_wide(x, n, &wit))
      throw DomainError("reconstruct: basis member is not normal, conjugating morphism " +
                        std::to_string(wit.second) + " by " + std::to_string(wit.first) +
                        " escapes");
  }
  ReconstructResult res;
  const int nb = static_cast<int>(basis.size());
  std::vector<CosetPartition> parts;
  for (const auto& n : basis) parts.push_back(coset_partition(x, n));

  // injectivity: group morphisms by their tuple of coset indices
  {
    std::map<std::vector<int>, int> seen;
    res.morphisms_injective = true;
    for (int a = 0; a < x.morphism_count() && res.morphisms_injective; ++a) {
      std::vector<int> key(nb);
      for (int i = 0; i < nb; ++i) key[i] = parts[i].coset_of[a];
      auto [it, fresh] = seen.emplace(std::move(key), a);
      if (!fresh) {
        res.morphisms_injective = false;
        res.collision = {it->second, a};
      }
    }
  }

  // compatibility constraints run along inclusions between basis members
  std::vector<std::vector<char>> incl(nb, std::vector<char>(nb, 0));  // incl[i][j]: N_i ⊆ N_j
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j)
      if (i != j && std::includes(basis[j].morphisms.begin(), basis[j].morphisms.end(),
                                  basis[i].morphisms.begin(), basis[i].morphisms.end()))
        incl[i][j] = 1;

  // realized tuples
  std::set<std::vector<int>> realized;
  for (int a = 0; a < x.morphism_count(); ++a) {
    std::vector<int> key(nb);
    for (int i = 0; i < nb; ++i) key[i] = parts[i].coset_of[a];
    realized.insert(std::move(key));
  }

  // depth-first enumeration of compatible families, finest member first
  res.morphisms_surjective = true;
  std::vector<int> choice(nb, -1);
  std::vector<int> order(nb);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return basis[a].morphisms.size() < basis[b].morphisms.size();
  });
  auto consistent = [&](int i) {
    int rep_i = parts[i].cosets[choice[i]].front();
    for (int j = 0; j < nb; ++j) {
      if (j == i || choice[j] < 0) continue;
      if (incl[i][j] && parts[j].coset_of[rep_i] != choice[j]) return false;
      if (incl[j][i]) {
        int rep_j = parts[j].cosets[choice[j]].front();
        if (parts[i].coset_of[rep_j] != choice[i]) return false;
      }
    }
    return true;
  };
  auto dfs = [&](auto&& self, int pos) -> void {
    if (!res.morphisms_surjective) return;
    if (pos == nb) {
      if (!realized.count(choice)) {
        res.morphisms_surjective = false;
        res.unrealized = choice;
      }
      return;
    }
    int idx = order[pos];
    for (size_t c = 0; c < parts[idx].cosets.size(); ++c) {
      choice[idx] = static_cast<int>(c);
      if (consistent(idx)) self(self, pos + 1);
      if (!res.morphisms_surjective) break;
    }
    choice[idx] = -1;
  };
  dfs(dfs, 0);
  return res;
}

}  // namespace stone
