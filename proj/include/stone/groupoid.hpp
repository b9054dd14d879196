#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "stone/errors.hpp"
#include "stone/group.hpp"

namespace stone {

/// A finite groupoid as explicit tables. Objects are 0..objects-1,
/// morphisms 0..M-1. Composition comp(g, y), written gy, is defined
/// exactly when tgt(g) = src(y); then src(gy) = src(g), tgt(gy) = tgt(y).
/// Stored sparsely as triples (g, y, gy) sorted by (g, y).
///
/// Instances may violate the groupoid axioms (validate_groupoid reports
/// them); make_groupoid only enforces structural soundness: table sizes,
/// index ranges and uniqueness of composition keys.
struct FiniteGroupoid {
  int objects = 0;
  std::vector<int> src;
  std::vector<int> tgt;
  std::vector<int> unit;
  std::vector<int> inv;
  std::vector<std::array<int, 3>> comp;

  int morphism_count() const { return static_cast<int>(src.size()); }

  /// gy, or -1 when no (g, y) entry exists.
  int compose(int g, int y) const {
    auto it = std::lower_bound(comp.begin(), comp.end(), std::array<int, 3>{g, y, -1},
                               [](const auto& a, const auto& b) {
                                 return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
                               });
    if (it == comp.end() || (*it)[0] != g || (*it)[1] != y) return -1;
    return (*it)[2];
  }
};

inline FiniteGroupoid make_groupoid(int objects, std::vector<int> src, std::vector<int> tgt,
                                    std::vector<int> unit, std::vector<int> inv,
                                    std::vector<std::array<int, 3>> comp) {
  const int m = static_cast<int>(src.size());
  if (objects < 0) throw StructureError("object count is negative");
  if (static_cast<int>(tgt.size()) != m)
    throw StructureError("tgt table size " + std::to_string(tgt.size()) +
                         " does not match morphism count " + std::to_string(m));
  if (static_cast<int>(unit.size()) != objects)
    throw StructureError("unit table size " + std::to_string(unit.size()) +
                         " does not match object count " + std::to_string(objects));
  if (static_cast<int>(inv.size()) != m)
    throw StructureError("inv table size " + std::to_string(inv.size()) +
                         " does not match morphism count " + std::to_string(m));
  auto check_obj = [&](const char* table, int i, int v) {
    if (v < 0 || v >= objects)
      throw StructureError(std::string(table) + " table entry " + std::to_string(i) +
                           " is out of range: " + std::to_string(v));
  };
  auto check_mor = [&](const char* table, int i, int v) {
    if (v < 0 || v >= m)
      throw StructureError(std::string(table) + " table entry " + std::to_string(i) +
                           " is out of range: " + std::to_string(v));
  };
  for (int g = 0; g < m; ++g) {
    check_obj("src", g, src[g]);
    check_obj("tgt", g, tgt[g]);
    check_mor("inv", g, inv[g]);
  }
  for (int x = 0; x < objects; ++x) check_mor("unit", x, unit[x]);
  for (size_t i = 0; i < comp.size(); ++i) {
    check_mor("comp", static_cast<int>(i), comp[i][0]);
    check_mor("comp", static_cast<int>(i), comp[i][1]);
    check_mor("comp", static_cast<int>(i), comp[i][2]);
  }
  std::sort(comp.begin(), comp.end());
  for (size_t i = 1; i < comp.size(); ++i)
    if (comp[i][0] == comp[i - 1][0] && comp[i][1] == comp[i - 1][1])
      throw StructureError("comp table has duplicate pair (" + std::to_string(comp[i][0]) +
                           ", " + std::to_string(comp[i][1]) + ")");
  FiniteGroupoid g;
  g.objects = objects;
  g.src = std::move(src);
  g.tgt = std::move(tgt);
  g.unit = std::move(unit);
  g.inv = std::move(inv);
  g.comp = std::move(comp);
  return g;
}

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string axiom;
  std::vector<int> witness;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks every groupoid axiom table-wise and reports each violation
/// with a witness tuple. Empty report iff the tables form a groupoid.
inline ValidationReport validate_groupoid(const FiniteGroupoid& g) {
  ValidationReport rep;
  auto add = [&rep](std::string axiom, std::vector<int> witness, std::string detail) {
    rep.violations.push_back({std::move(axiom), std::move(witness), std::move(detail)});
  };
  const int m = g.morphism_count();
  for (int x = 0; x < g.objects; ++x) {
    int u = g.unit[x];
    if (g.src[u] != x || g.tgt[u] != x)
      add("unit-endpoints", {x, u},
          "unit of object " + std::to_string(x) + " is not a loop at it");
  }
  // composability of stored pairs and endpoint laws
  for (const auto& t : g.comp) {
    int a = t[0], y = t[1], p = t[2];
    if (g.tgt[a] != g.src[y])
      add("composability", {a, y},
          "comp(" + std::to_string(a) + ", " + std::to_string(y) + ") stored but tgt != src");
    else {
      if (g.src[p] != g.src[a] || g.tgt[p] != g.tgt[y])
        add("composite-endpoints", {a, y, p}, "endpoints of the composite are wrong");
    }
  }
  // totality: every composable pair must have an entry
  {
    std::vector<std::vector<int>> out(g.objects);
    for (int y = 0; y < m; ++y) out[g.src[y]].push_back(y);
    for (int a = 0; a < m; ++a)
      for (int y : out[g.tgt[a]])
        if (g.compose(a, y) < 0)
          add("comp-missing", {a, y},
              "composable pair (" + std::to_string(a) + ", " + std::to_string(y) +
                  ") has no comp entry");
  }
  // unit laws
  for (int a = 0; a < m; ++a) {
    int lu = g.unit[g.src[a]], ru = g.unit[g.tgt[a]];
    if (g.compose(lu, a) != a) add("left-unit", {a}, "comp(unit(src), g) != g");
    if (g.compose(a, ru) != a) add("right-unit", {a}, "comp(g, unit(tgt)) != g");
  }
  // inverse laws
  for (int a = 0; a < m; ++a) {
    int b = g.inv[a];
    if (g.compose(a, b) != g.unit[g.src[a]])
      add("right-inverse", {a}, "comp(g, inv(g)) != unit(src(g))");
    if (g.compose(b, a) != g.unit[g.tgt[a]])
      add("left-inverse", {a}, "comp(inv(g), g) != unit(tgt(g))");
  }
  // associativity over stored pairs
  for (const auto& t : g.comp) {
    int a = t[0], h = t[1], ah = t[2];
    if (g.tgt[a] != g.src[h]) continue;
    for (int k = 0; k < m; ++k) {
      if (g.src[k] != g.tgt[h]) continue;
      int hk = g.compose(h, k);
      if (hk < 0) continue;
      int left = g.compose(ah, k), right = g.compose(a, hk);
      if (left >= 0 && right >= 0 && left != right)
        add("associativity", {a, h, k}, "(gh)k != g(hk)");
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Homotopy invariants

struct ComponentPartition {
  std::vector<int> component_of;   // per object
  std::vector<int> representative; // least object index, ascending
  int count() const { return static_cast<int>(representative.size()); }
};

/// Connected components: transitive closure of src(g) ~ tgt(g).
/// Component ids are assigned by ascending representative.
inline ComponentPartition pi0(const FiniteGroupoid& g) {
  std::vector<int> parent(g.objects);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<int> stack;
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (int a = 0; a < g.morphism_count(); ++a) {
    int u = find(g.src[a]), v = find(g.tgt[a]);
    if (u != v) parent[std::max(u, v)] = std::min(u, v);
  }
  ComponentPartition p;
  p.component_of.assign(g.objects, -1);
  for (int x = 0; x < g.objects; ++x) {
    int r = find(x);
    if (r == x) {
      p.component_of[x] = static_cast<int>(p.representative.size());
      p.representative.push_back(x);
    }
  }
  for (int x = 0; x < g.objects; ++x) p.component_of[x] = p.component_of[find(x)];
  return p;
}

/// Loops at x, as a group under composition. Labels are morphism indices.
inline FiniteGroup isotropy(const FiniteGroupoid& g, int x) {
  if (x < 0 || x >= g.objects)
    throw DomainError("isotropy: invalid object index " + std::to_string(x));
  std::vector<int> loops;
  for (int a = 0; a < g.morphism_count(); ++a)
    if (g.src[a] == x && g.tgt[a] == x) loops.push_back(a);
  std::map<int, int> local;
  for (size_t i = 0; i < loops.size(); ++i) local[loops[i]] = static_cast<int>(i);
  FiniteGroup iso;
  const int n = static_cast<int>(loops.size());
  iso.labels = loops;
  iso.inverse.resize(n);
  iso.mult.assign(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    auto it = local.find(g.inv[loops[i]]);
    if (it == local.end()) throw DomainError("isotropy: loops not closed under inversion");
    iso.inverse[i] = it->second;
    for (int j = 0; j < n; ++j) {
      int p = g.compose(loops[i], loops[j]);
      auto jt = p < 0 ? local.end() : local.find(p);
      if (jt == local.end()) throw DomainError("isotropy: loops not closed under composition");
      iso.mult[i][j] = jt->second;
    }
  }
  iso.identity = local.at(g.unit[x]);
  return iso;
}

/// True iff no morphism connects distinct objects.
inline bool is_skeletal(const FiniteGroupoid& g) {
  for (int a = 0; a < g.morphism_count(); ++a)
    if (g.src[a] != g.tgt[a]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Basic constructions used throughout

/// One-object groupoid on a group: morphisms are the group elements.
inline FiniteGroupoid one_object_groupoid(const FiniteGroup& grp) {
  const int n = grp.order();
  std::vector<int> src(n, 0), tgt(n, 0), unit = {grp.identity}, inv(n);
  std::vector<std::array<int, 3>> comp;
  comp.reserve(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    inv[a] = grp.inv(a);
    for (int b = 0; b < n; ++b) comp.push_back({a, b, grp.mul(a, b)});
  }
  return make_groupoid(1, src, tgt, unit, inv, comp);
}

/// Pair groupoid on n objects: exactly one morphism (a,b) for each
/// ordered pair, indexed a*n+b.
inline FiniteGroupoid pair_groupoid(int n) {
  if (n <= 0) throw DomainError("pair_groupoid: need at least one object");
  std::vector<int> src, tgt, unit(n), inv;
  std::vector<std::array<int, 3>> comp;
  auto id = [n](int a, int b) { return a * n + b; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      src.push_back(a);
      tgt.push_back(b);
      inv.push_back(id(b, a));
    }
  for (int x = 0; x < n; ++x) unit[x] = id(x, x);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) comp.push_back({id(a, b), id(b, c), id(a, c)});
  return make_groupoid(n, src, tgt, unit, inv, comp);
}

/// Connected groupoid on k objects with the given isotropy group:
/// morphisms are triples (x, y, e), indexed (x*k + y)*|G| + e.
inline FiniteGroupoid connected_groupoid(int k, const FiniteGroup& grp) {
  if (k <= 0) throw DomainError("connected_groupoid: need at least one object");
  const int n = grp.order();
  auto id = [k, n](int x, int y, int e) { return (x * k + y) * n + e; };
  std::vector<int> src, tgt, unit(k), inv;
  std::vector<std::array<int, 3>> comp;
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y)
      for (int e = 0; e < n; ++e) {
        src.push_back(x);
        tgt.push_back(y);
        inv.push_back(id(y, x, grp.inv(e)));
      }
  for (int x = 0; x < k; ++x) unit[x] = id(x, x, grp.identity);
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y)
      for (int z = 0; z < k; ++z)
        for (int e = 0; e < n; ++e)
          for (int f = 0; f < n; ++f)
            comp.push_back({id(x, y, e), id(y, z, f), id(x, z, grp.mul(e, f))});
  return make_groupoid(k, src, tgt, unit, inv, comp);
}

/// Action groupoid of a group acting on {0..points-1}. The action table
/// must satisfy act[identity] = id and act[mul(a,b)] = act[b] ∘ act[a]
/// (apply a, then b). Morphism (e, s): s -> act[e][s], indexed e*points+s.
inline FiniteGroupoid action_groupoid(const FiniteGroup& grp,
                                      const std::vector<std::vector<int>>& act) {
  const int n = grp.order();
  const int pts = act.empty() ? 0 : static_cast<int>(act[0].size());
  if (static_cast<int>(act.size()) != n)
    throw DomainError("action_groupoid: action table size does not match group order");
  auto id = [pts](int e, int s) { return e * pts + s; };
  std::vector<int> src, tgt, unit(pts), inv;
  std::vector<std::array<int, 3>> comp;
  for (int e = 0; e < n; ++e)
    for (int s = 0; s < pts; ++s) {
      src.push_back(s);
      tgt.push_back(act[e][s]);
      inv.push_back(id(grp.inv(e), act[e][s]));
    }
  for (int s = 0; s < pts; ++s) unit[s] = id(grp.identity, s);
  for (int e = 0; e < n; ++e)
    for (int f = 0; f < n; ++f)
      for (int s = 0; s < pts; ++s)
        comp.push_back({id(e, s), id(f, act[e][s]), id(grp.mul(e, f), s)});
  return make_groupoid(pts, src, tgt, unit, inv, comp);
}

/// Translation action of a cyclic group on itself as a point set.
inline FiniteGroupoid cyclic_translation_groupoid(int n) {
  auto grp = cyclic_group(n);
  std::vector<std::vector<int>> act(n, std::vector<int>(n));
  for (int e = 0; e < n; ++e)
    for (int s = 0; s < n; ++s) act[e][s] = (s + e) % n;
  return action_groupoid(grp, act);
}

inline FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  const int mo = a.objects, mm = a.morphism_count();
  std::vector<int> src = a.src, tgt = a.tgt, unit = a.unit, inv = a.inv;
  std::vector<std::array<int, 3>> comp = a.comp;
  for (int x = 0; x < b.objects; ++x) unit.push_back(b.unit[x] + mm);
  for (int g = 0; g < b.morphism_count(); ++g) {
    src.push_back(b.src[g] + mo);
    tgt.push_back(b.tgt[g] + mo);
    inv.push_back(b.inv[g] + mm);
  }
  for (const auto& t : b.comp) comp.push_back({t[0] + mm, t[1] + mm, t[2] + mm});
  return make_groupoid(mo + b.objects, src, tgt, unit, inv, comp);
}

/// Relabels objects by obj_perm (new = obj_perm[old]) and morphisms by
/// mor_perm. Used to test invariance under reindexing.
inline FiniteGroupoid relabeled(const FiniteGroupoid& g, const std::vector<int>& obj_perm,
                                const std::vector<int>& mor_perm) {
  FiniteGroupoid r;
  r.objects = g.objects;
  const int m = g.morphism_count();
  r.src.resize(m);
  r.tgt.resize(m);
  r.unit.resize(g.objects);
  r.inv.resize(m);
  for (int a = 0; a < m; ++a) {
    r.src[mor_perm[a]] = obj_perm[g.src[a]];
    r.tgt[mor_perm[a]] = obj_perm[g.tgt[a]];
    r.inv[mor_perm[a]] = mor_perm[g.inv[a]];
  }
  for (int x = 0; x < g.objects; ++x) r.unit[obj_perm[x]] = mor_perm[g.unit[x]];
  for (const auto& t : g.comp) r.comp.push_back({mor_perm[t[0]], mor_perm[t[1]], mor_perm[t[2]]});
  std::sort(r.comp.begin(), r.comp.end());
  return r;
}

}  // namespace stone
