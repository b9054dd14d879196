#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "stone/errors.hpp"

namespace stone {

/// A finite group given by explicit tables. Elements are local indices
/// 0..order-1; `labels` carries external names for them (for isotropy
/// groups these are morphism indices of the ambient groupoid).
struct FiniteGroup {
  std::vector<int> labels;
  int identity = 0;
  std::vector<int> inverse;
  std::vector<std::vector<int>> mult;

  int order() const { return static_cast<int>(mult.size()); }
  int mul(int a, int b) const { return mult[a][b]; }
  int inv(int a) const { return inverse[a]; }
};

inline bool is_valid_group(const FiniteGroup& g) {
  const int n = g.order();
  if (n == 0) return false;
  if (static_cast<int>(g.labels.size()) != n) return false;
  if (static_cast<int>(g.inverse.size()) != n) return false;
  if (g.identity < 0 || g.identity >= n) return false;
  for (const auto& row : g.mult)
    if (static_cast<int>(row.size()) != n) return false;
  for (int a = 0; a < n; ++a) {
    if (g.inverse[a] < 0 || g.inverse[a] >= n) return false;
    for (int b = 0; b < n; ++b)
      if (g.mult[a][b] < 0 || g.mult[a][b] >= n) return false;
  }
  for (int a = 0; a < n; ++a) {
    if (g.mul(g.identity, a) != a || g.mul(a, g.identity) != a) return false;
    if (g.mul(a, g.inv(a)) != g.identity) return false;
    if (g.mul(g.inv(a), a) != g.identity) return false;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) return false;
  return true;
}

inline FiniteGroup trivial_group() {
  FiniteGroup g;
  g.labels = {0};
  g.identity = 0;
  g.inverse = {0};
  g.mult = {{0}};
  return g;
}

inline FiniteGroup cyclic_group(int n) {
  if (n <= 0) throw DomainError("cyclic_group: order must be positive");
  FiniteGroup g;
  g.labels.resize(n);
  std::iota(g.labels.begin(), g.labels.end(), 0);
  g.identity = 0;
  g.inverse.resize(n);
  g.mult.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    g.inverse[a] = (n - a) % n;
    for (int b = 0; b < n; ++b) g.mult[a][b] = (a + b) % n;
  }
  return g;
}

inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order(), nb = b.order();
  FiniteGroup g;
  const int n = na * nb;
  g.labels.resize(n);
  std::iota(g.labels.begin(), g.labels.end(), 0);
  g.inverse.resize(n);
  g.mult.assign(n, std::vector<int>(n));
  auto enc = [nb](int x, int y) { return x * nb + y; };
  g.identity = enc(a.identity, b.identity);
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < nb; ++y) {
      g.inverse[enc(x, y)] = enc(a.inv(x), b.inv(y));
      for (int u = 0; u < na; ++u)
        for (int v = 0; v < nb; ++v)
          g.mult[enc(x, y)][enc(u, v)] = enc(a.mul(x, u), b.mul(y, v));
    }
  return g;
}

/// Dihedral group of order 2n: indices 0..n-1 are rotations r^i,
/// n..2n-1 are reflections s r^i.
inline FiniteGroup dihedral_group(int n) {
  if (n < 1) throw DomainError("dihedral_group: n must be positive");
  FiniteGroup g;
  const int m = 2 * n;
  g.labels.resize(m);
  std::iota(g.labels.begin(), g.labels.end(), 0);
  g.identity = 0;
  g.inverse.resize(m);
  g.mult.assign(m, std::vector<int>(m));
  auto rot = [n](int i) { return ((i % n) + n) % n; };
  for (int i = 0; i < n; ++i) {
    g.inverse[i] = rot(-i);
    g.inverse[n + i] = n + i;
    for (int j = 0; j < n; ++j) {
      g.mult[i][j] = rot(i + j);            // r^i r^j
      g.mult[i][n + j] = n + rot(j - i);    // r^i (s r^j) = s r^{j-i}
      g.mult[n + i][j] = n + rot(i + j);    // (s r^i) r^j
      g.mult[n + i][n + j] = rot(j - i);    // (s r^i)(s r^j) = r^{j-i}
    }
  }
  return g;
}

/// Quaternion group of order 8: 1, -1, i, -i, j, -j, k, -k.
inline FiniteGroup quaternion_group() {
  // element = axis (0=1, 1=i, 2=j, 3=k) with a sign bit
  auto enc = [](int axis, int sign) { return axis * 2 + (sign < 0 ? 1 : 0); };
  FiniteGroup g;
  g.labels.resize(8);
  std::iota(g.labels.begin(), g.labels.end(), 0);
  g.identity = enc(0, +1);
  g.inverse.assign(8, 0);
  g.mult.assign(8, std::vector<int>(8));
  // axis multiplication table with result sign
  static const int ax[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sg[4][4] = {{+1, +1, +1, +1},
                               {+1, -1, +1, -1},
                               {+1, -1, -1, +1},
                               {+1, +1, -1, -1}};
  for (int a = 0; a < 4; ++a)
    for (int sa : {+1, -1})
      for (int b = 0; b < 4; ++b)
        for (int sb : {+1, -1})
          g.mult[enc(a, sa)][enc(b, sb)] = enc(ax[a][b], sa * sb * sg[a][b]);
  for (int e = 0; e < 8; ++e)
    for (int f = 0; f < 8; ++f)
      if (g.mult[e][f] == g.identity) g.inverse[e] = f;
  return g;
}

namespace detail {

inline std::vector<std::vector<int>> permutations_of(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> all;
  do {
    all.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return all;
}

inline bool permutation_even(const std::vector<int>& p) {
  int inversions = 0;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0;
}

/// Group of the given permutations under "apply a, then b".
inline FiniteGroup permutation_group(const std::vector<std::vector<int>>& perms) {
  const int n = static_cast<int>(perms.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < n; ++i) index[perms[i]] = i;
  FiniteGroup g;
  g.labels.resize(n);
  std::iota(g.labels.begin(), g.labels.end(), 0);
  g.inverse.resize(n);
  g.mult.assign(n, std::vector<int>(n));
  const int pts = static_cast<int>(perms[0].size());
  std::vector<int> idp(pts);
  std::iota(idp.begin(), idp.end(), 0);
  g.identity = index.at(idp);
  for (int a = 0; a < n; ++a) {
    std::vector<int> inv(pts);
    for (int x = 0; x < pts; ++x) inv[perms[a][x]] = x;
    g.inverse[a] = index.at(inv);
    for (int b = 0; b < n; ++b) {
      std::vector<int> c(pts);
      for (int x = 0; x < pts; ++x) c[x] = perms[b][perms[a][x]];
      g.mult[a][b] = index.at(c);
    }
  }
  return g;
}

}  // namespace detail

inline FiniteGroup symmetric_group_3() {
  return detail::permutation_group(detail::permutations_of(3));
}

inline FiniteGroup alternating_group_4() {
  std::vector<std::vector<int>> evens;
  for (const auto& p : detail::permutations_of(4))
    if (detail::permutation_even(p)) evens.push_back(p);
  return detail::permutation_group(evens);
}

inline int element_order(const FiniteGroup& g, int a) {
  int x = a, k = 1;
  while (x != g.identity) {
    x = g.mul(x, a);
    ++k;
  }
  return k;
}

/// Sorted multiset of element orders; cheap isomorphism invariant.
inline std::vector<int> element_orders(const FiniteGroup& g) {
  std::vector<int> v(g.order());
  for (int a = 0; a < g.order(); ++a) v[a] = element_order(g, a);
  std::sort(v.begin(), v.end());
  return v;
}

/// Closure of a subset under multiplication (contains the identity).
inline std::vector<int> subgroup_closure(const FiniteGroup& g, std::vector<int> seed) {
  std::vector<char> in(g.order(), 0);
  in[g.identity] = 1;
  std::vector<int> work = {g.identity};
  for (int s : seed)
    if (!in[s]) {
      in[s] = 1;
      work.push_back(s);
    }
  for (size_t i = 0; i < work.size(); ++i)
    for (size_t j = 0; j < work.size(); ++j) {
      int p = g.mul(work[i], work[j]);
      if (!in[p]) {
        in[p] = 1;
        work.push_back(p);
      }
    }
  std::vector<int> out;
  for (int a = 0; a < g.order(); ++a)
    if (in[a]) out.push_back(a);
  return out;
}

/// All subgroups, as sorted element lists, ordered by size then
/// lexicographically. Exponential in principle; meant for small groups.
inline std::vector<std::vector<int>> all_subgroups(const FiniteGroup& g) {
  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> queue;
  auto base = subgroup_closure(g, {});
  found.insert(base);
  queue.push_back(base);
  while (!queue.empty()) {
    auto h = queue.back();
    queue.pop_back();
    std::vector<char> in(g.order(), 0);
    for (int x : h) in[x] = 1;
    for (int a = 0; a < g.order(); ++a) {
      if (in[a]) continue;
      auto seed = h;
      seed.push_back(a);
      auto k = subgroup_closure(g, seed);
      if (found.insert(k).second) queue.push_back(k);
    }
  }
  std::vector<std::vector<int>> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

inline bool is_normal_subgroup(const FiniteGroup& g, const std::vector<int>& h) {
  std::vector<char> in(g.order(), 0);
  for (int x : h) in[x] = 1;
  for (int a = 0; a < g.order(); ++a)
    for (int x : h)
      if (!in[g.mul(g.mul(a, x), g.inv(a))]) return false;
  return true;
}

inline std::vector<std::vector<int>> normal_subgroups(const FiniteGroup& g) {
  std::vector<std::vector<int>> out;
  for (auto& h : all_subgroups(g))
    if (is_normal_subgroup(g, h)) out.push_back(h);
  return out;
}

/// The subgroup on the given (sorted) elements, reindexed, with labels
/// inherited from the parent.
inline FiniteGroup subgroup_as_group(const FiniteGroup& g, const std::vector<int>& elems) {
  const int n = static_cast<int>(elems.size());
  std::map<int, int> local;
  for (int i = 0; i < n; ++i) local[elems[i]] = i;
  FiniteGroup h;
  h.labels.resize(n);
  h.inverse.resize(n);
  h.mult.assign(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    h.labels[i] = g.labels[elems[i]];
    auto it = local.find(g.inv(elems[i]));
    if (it == local.end()) throw DomainError("subgroup_as_group: set not closed under inversion");
    h.inverse[i] = it->second;
    for (int j = 0; j < n; ++j) {
      auto jt = local.find(g.mul(elems[i], elems[j]));
      if (jt == local.end()) throw DomainError("subgroup_as_group: set not closed under multiplication");
      h.mult[i][j] = jt->second;
    }
  }
  h.identity = local.at(g.identity);
  return h;
}

/// Right cosets H a, listed by ascending least member.
inline std::vector<std::vector<int>> right_cosets(const FiniteGroup& g, const std::vector<int>& h) {
  std::vector<int> assigned(g.order(), -1);
  std::vector<std::vector<int>> cosets;
  for (int a = 0; a < g.order(); ++a) {
    if (assigned[a] >= 0) continue;
    std::vector<int> c;
    for (int x : h) c.push_back(g.mul(x, a));
    std::sort(c.begin(), c.end());
    for (int m : c) assigned[m] = static_cast<int>(cosets.size());
    cosets.push_back(std::move(c));
  }
  return cosets;
}

/// Greedy generating sequence: each entry strictly enlarges the closure.
inline std::vector<int> generating_sequence(const FiniteGroup& g) {
  std::vector<int> gens;
  auto have = subgroup_closure(g, {});
  while (static_cast<int>(have.size()) < g.order()) {
    std::vector<char> in(g.order(), 0);
    for (int x : have) in[x] = 1;
    int pick = -1;
    for (int a = 0; a < g.order(); ++a)
      if (!in[a]) {
        pick = a;
        break;
      }
    gens.push_back(pick);
    auto seed = have;
    seed.push_back(pick);
    have = subgroup_closure(g, seed);
  }
  return gens;
}

namespace detail {

/// Extend the map determined by images of the generating sequence to a
/// full homomorphism; empty result on conflict.
inline bool extend_hom(const FiniteGroup& a, const FiniteGroup& b,
                       const std::vector<int>& gens, const std::vector<int>& images,
                       std::vector<int>& map_out) {
  map_out.assign(a.order(), -1);
  map_out[a.identity] = b.identity;
  std::vector<int> known = {a.identity};
  for (size_t i = 0; i < gens.size(); ++i) {
    if (map_out[gens[i]] >= 0) {
      if (map_out[gens[i]] != images[i]) return false;
      continue;
    }
    map_out[gens[i]] = images[i];
    known.push_back(gens[i]);
  }
  for (size_t i = 0; i < known.size(); ++i)
    for (size_t j = 0; j < known.size(); ++j) {
      int x = known[i], y = known[j];
      int p = a.mul(x, y), q = b.mul(map_out[x], map_out[y]);
      if (map_out[p] < 0) {
        map_out[p] = q;
        known.push_back(p);
      } else if (map_out[p] != q) {
        return false;
      }
    }
  return static_cast<int>(known.size()) == a.order();
}

inline bool iso_search(const FiniteGroup& a, const FiniteGroup& b,
                       const std::vector<int>& gens, std::vector<int>& images, size_t k) {
  if (k == gens.size()) {
    std::vector<int> map;
    if (!extend_hom(a, b, gens, images, map)) return false;
    std::vector<char> hit(b.order(), 0);
    for (int v : map) {
      if (hit[v]) return false;
      hit[v] = 1;
    }
    return true;
  }
  const int want = element_order(a, gens[k]);
  for (int cand = 0; cand < b.order(); ++cand) {
    if (element_order(b, cand) != want) continue;
    images[k] = cand;
    // partial consistency: try extending with the prefix before recursing
    std::vector<int> map;
    std::vector<int> prefix_gens(gens.begin(), gens.begin() + k + 1);
    std::vector<int> prefix_imgs(images.begin(), images.begin() + k + 1);
    map.assign(a.order(), -1);
    bool consistent = true;
    {
      // run the closure on the prefix only; incompleteness is fine here
      map[a.identity] = b.identity;
      std::vector<int> known = {a.identity};
      for (size_t i = 0; i <= k; ++i) {
        if (map[prefix_gens[i]] >= 0) {
          if (map[prefix_gens[i]] != prefix_imgs[i]) {
            consistent = false;
            break;
          }
          continue;
        }
        map[prefix_gens[i]] = prefix_imgs[i];
        known.push_back(prefix_gens[i]);
      }
      for (size_t i = 0; consistent && i < known.size(); ++i)
        for (size_t j = 0; j < known.size(); ++j) {
          int p = a.mul(known[i], known[j]);
          int q = b.mul(map[known[i]], map[known[j]]);
          if (map[p] < 0) {
            map[p] = q;
            known.push_back(p);
          } else if (map[p] != q) {
            consistent = false;
            break;
          }
        }
    }
    if (!consistent) continue;
    if (iso_search(a, b, gens, images, k + 1)) return true;
  }
  return false;
}

}  // namespace detail

/// Exhaustive isomorphism test with pruning by element orders.
inline bool group_isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return false;
  if (element_orders(a) != element_orders(b)) return false;
  auto gens = generating_sequence(a);
  if (gens.empty()) return true;  // both trivial
  std::vector<int> images(gens.size(), -1);
  return detail::iso_search(a, b, gens, images, 0);
}

}  // namespace stone
