// Acceptance suite: one criterion per section, one pass/fail line each.
// Every bound and tolerance is pinned in code; the binary exits nonzero
// if any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "stone/constructions.hpp"
#include "stone/functor.hpp"
#include "stone/generators.hpp"
#include "stone/groupoid.hpp"
#include "stone/realization.hpp"
#include "stone/serialize.hpp"
#include "stone/tower.hpp"

#include "oracles.hpp"

using namespace stone;

namespace {

struct Failure {
  std::string message;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw Failure{message};
}

// --------------------------------------------------------------------------
// shared helpers

void check_extraction(const FiniteGroupoid& g, const std::vector<int>& u,
                      const VanDantzigResult& res) {
  const auto& tr = res.trace;
  auto in = [](const std::vector<int>& v, int m) {
    return std::binary_search(v.begin(), v.end(), m);
  };
  std::vector<int> su = u;
  std::sort(su.begin(), su.end());
  su.erase(std::unique(su.begin(), su.end()), su.end());
  require(tr.k == su, "K != U");
  for (int x = 0; x < g.objects; ++x) {
    require(in(tr.f, g.unit[x]), "unit missing from F");
    require(res.subgroupoid.contains(g.unit[x]), "unit missing from H1");
  }
  for (int m : tr.f) {
    require(in(tr.k, m), "F escapes K");
    require(in(tr.f, g.inv[m]), "F is not symmetric");
  }
  for (int m : res.subgroupoid.morphisms) require(in(su, m), "H1 escapes U");
  // W, B, M, V, H1 laws
  std::set<std::pair<int, int>> w(tr.w.begin(), tr.w.end());
  std::set<std::pair<int, int>> w_expect;
  for (int a : tr.k)
    for (int b : tr.k) {
      if (g.tgt[a] != g.src[b]) continue;
      int p = g.compose(a, b);
      if (p >= 0 && in(tr.k, p)) w_expect.insert({a, b});
    }
  require(w == w_expect, "W law broken");
  for (int a : tr.f)
    for (int b : tr.f) {
      if (g.tgt[a] != g.src[b]) continue;
      require(w.count({a, b}) == 1, "composable pair from F misses W");
    }
  std::set<std::pair<int, int>> b_expect;
  for (int a : tr.f)
    for (int b : tr.f) {
      if (g.tgt[a] != g.src[b]) continue;
      int p = g.compose(a, b);
      if (p >= 0 && !in(tr.f, p)) b_expect.insert({a, b});
    }
  require(std::set<std::pair<int, int>>(tr.b.begin(), tr.b.end()) == b_expect, "B law broken");
  std::set<int> m_expect;
  for (const auto& pr : tr.b) m_expect.insert(pr.first);
  require(std::vector<int>(m_expect.begin(), m_expect.end()) == tr.m, "M law broken");
  std::set<int> v_expect = m_expect;
  for (int a : tr.m) v_expect.insert(g.inv[a]);
  require(std::vector<int>(v_expect.begin(), v_expect.end()) == tr.v, "V law broken");
  std::vector<int> h1_expect;
  for (int a : tr.f)
    if (!v_expect.count(a)) h1_expect.push_back(a);
  require(h1_expect == tr.h1 && res.subgroupoid.morphisms == tr.h1, "H1 law broken");
  require(validate_wide(g, res.subgroupoid).ok(), "H1 is not a wide subgroupoid");
}

std::vector<FiniteGroup> big_group_catalog() {
  auto cat = oracles::group_catalog(16);
  cat.push_back(stone::detail::permutation_group(stone::detail::permutations_of(4)));  // S4
  cat.push_back(dihedral_group(12));
  cat.push_back(cyclic_group(24));
  cat.push_back(direct_product(cyclic_group(2), alternating_group_4()));
  cat.push_back(direct_product(cyclic_group(3), quaternion_group()));
  cat.push_back(direct_product(cyclic_group(2), dihedral_group(6)));
  return cat;
}

std::string cli_path() { return STONE_GROUPOID_CLI_PATH; }
std::string golden_dir() { return STONE_GROUPOID_GOLDEN_DIR; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_shell(const std::string& cmd) {
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// --------------------------------------------------------------------------
// criteria

void criterion_van_dantzig(std::ostream& log) {
  int runs = 0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    auto g = random_groupoid(seed, 4, 24);
    auto u = random_unit_neighborhood(g, seed ^ 0xabcdef12345ULL);
    auto res = van_dantzig(g, u);
    check_extraction(g, u, res);
    ++runs;
  }
  log << runs << " extractions checked against all trace laws";
}

void criterion_concordance(std::ostream& log) {
  int runs = 0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    auto f = random_functor(seed, 64);
    bool ff = internal_fully_faithful(f);
    bool es = internal_essentially_surjective(f);
    bool wh = whitehead_equivalence(f);
    require((ff && es) == wh,
            "criteria disagree at seed " + std::to_string(seed));
    if (wh)
      require(equivalence_oracle(f.source, f.target, 256),
              "oracle disagrees at seed " + std::to_string(seed));
    ++runs;
  }
  log << runs << " functors, zero discrepancies";
}

void criterion_skeleton(std::ostream& log) {
  std::vector<FiniteGroupoid> inputs = oracles::all_groupoids_up_to(3, 9);
  size_t exhaustive = inputs.size();
  for (std::uint64_t seed = 1; seed <= 200; ++seed) inputs.push_back(random_groupoid(seed, 4, 24));
  for (int p : {2, 3}) {
    for (const auto& l : translation_tower(p, 2).levels) inputs.push_back(l);
    for (const auto& l : mod_action_tower(p, 3).levels) inputs.push_back(l);
    for (const auto& l : cyclic_tower(p, 3).levels) inputs.push_back(l);
  }
  inputs.push_back(pair_groupoid(4));
  for (const auto& g : inputs) {
    auto res = skeletal_replacement(g);
    require(is_skeletal(res.skeleton), "skeleton is not skeletal");
    require(validate_functor(res.inclusion).ok(), "inclusion is not a functor");
    require(internal_fully_faithful(res.inclusion), "inclusion not fully faithful");
    require(internal_essentially_surjective(res.inclusion),
            "inclusion not essentially surjective");
  }
  log << inputs.size() << " inputs (" << exhaustive
      << " exhaustive with <= 3 objects, <= 9 morphisms)";
}

void criterion_normal_core(std::ostream& log) {
  std::vector<FiniteGroupoid> family;
  for (const auto& grp : big_group_catalog())
    if (grp.order() <= 24) family.push_back(one_object_groupoid(grp));
  for (const auto& x : oracles::skeletal_groupoids_up_to(12, 3)) family.push_back(x);
  for (std::uint64_t seed = 1; seed <= 40; ++seed)
    family.push_back(skeletal_replacement(random_groupoid(seed, 4, 24)).skeleton);
  long long checked = 0;
  for (const auto& x : family) {
    if (x.morphism_count() > 24) continue;
    for (const auto& hm : oracles::all_wide(x)) {
      WideSubgroupoid h;
      h.morphisms = hm;
      auto core = normal_core(x, h);
      require(core.morphisms == oracles::largest_normal_wide_within(x, hm),
              "core does not match the lattice oracle");
      require(validate_wide(x, core).ok() && is_normal_wide(x, core),
              "core is not a normal wide subgroupoid");
      ++checked;
    }
  }
  log << checked << " (groupoid, wide subgroupoid) pairs";
}

void criterion_reconstruction(std::ostream& log) {
  long long checked = 0;
  for (const auto& x : oracles::skeletal_groupoids_up_to(16, 3)) {
    auto res = reconstruct(x, normal_basis(x));
    require(res.bijective(), "full-basis reconstruction failed");
    ++checked;
  }
  // towers of BZ/2^n up to depth 4: quotients by the kernels reproduce the levels
  for (int levels = 1; levels <= 5; ++levels) {
    auto t = cyclic_tower(2, levels);
    auto kernels = normal_basis(t);
    const auto& top = t.levels[t.depth()];
    require(reconstruct(top, kernels).bijective(), "tower kernel basis not bijective");
    for (int n = 0; n <= t.depth(); ++n) {
      auto q = quotient(top, kernels[n]);
      // comparison functor: coset -> image of its representative downstairs
      GroupoidFunctor f;
      f.source = q.quotient;
      f.target = t.levels[n];
      f.obj_map = {0};
      std::vector<int> to_n(top.morphism_count());
      std::iota(to_n.begin(), to_n.end(), 0);
      for (int k = t.depth() - 1; k >= n; --k)
        for (auto& v : to_n) v = t.transitions[k].mor_map[v];
      f.mor_map.resize(q.quotient.morphism_count());
      std::vector<int> rep(q.quotient.morphism_count(), -1);
      for (int a = 0; a < top.morphism_count(); ++a)
        if (rep[q.projection.mor_map[a]] < 0) rep[q.projection.mor_map[a]] = a;
      for (int c = 0; c < q.quotient.morphism_count(); ++c) f.mor_map[c] = to_n[rep[c]];
      require(validate_functor(f).ok(), "comparison map is not a functor");
      require(whitehead_equivalence(f), "quotient does not reproduce the level");
      require(equivalence_oracle(q.quotient, t.levels[n], 256),
              "oracle rejects the reproduced level");
      ++checked;
    }
  }
  log << checked << " reconstructions";
}

void criterion_separation(std::ostream& log) {
  auto family = oracles::skeletal_groupoids_up_to(12, 4);
  // the all-units groupoid on 12 objects exercises the partition half
  {
    std::optional<FiniteGroupoid> acc;
    for (int i = 0; i < 12; ++i) {
      auto piece = one_object_groupoid(trivial_group());
      acc = acc ? disjoint_union(*acc, piece) : piece;
    }
    family.push_back(*acc);
  }
  long long checked = 0;
  for (const auto& e : family) {
    auto fam = separating_family(e);
    for (int a = 0; a < e.objects; ++a)
      for (int b = a + 1; b < e.objects; ++b) {
        bool sep = false;
        for (const auto& f : fam)
          if (f.obj_map[a] != f.obj_map[b]) sep = true;
        require(sep, "objects not separated");
      }
    for (int a = 0; a < e.morphism_count(); ++a)
      for (int b = a + 1; b < e.morphism_count(); ++b) {
        bool sep = false;
        for (const auto& f : fam)
          if (f.mor_map[a] != f.mor_map[b]) sep = true;
        require(sep, "morphisms not separated");
      }
    ++checked;
  }
  log << checked << " skeletal groupoids, product map injective on each";
}

void criterion_limit_commutation(std::ostream& log) {
  int checked = 0;
  for (int p : {2, 3})
    for (int levels = 1; levels <= 5; ++levels) {
      auto t = cyclic_tower(p, levels);  // depth up to 4
      for (int d = 0; d <= t.depth(); ++d) {
        require(limit_commutation_check(t, d).ok, "cyclic tower failed");
        ++checked;
      }
    }
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    auto t = random_skeletal_tower(seed);
    require(validate_tower(t).ok(), "random tower invalid");
    for (int d = 0; d <= t.depth(); ++d) {
      require(limit_commutation_check(t, d).ok,
              "random tower failed at seed " + std::to_string(seed));
      ++checked;
    }
  }
  // the deliberately broken fixture: a trivial group transition
  {
    auto level = one_object_groupoid(cyclic_group(2));
    TowerMap id_map{{0}, {0, 1}};
    TowerMap crush{{0}, {0, 0}};
    auto t = make_groupoid_tower({level, level, level}, {id_map, crush});
    auto res = limit_commutation_check(t, 1);
    require(!res.ok, "broken tower not detected");
    require(res.witness && res.witness->kind == "isotropy-unreachable" &&
                res.witness->level == 1 && res.witness->element == 1,
            "wrong witness for the broken tower");
  }
  log << checked << " depth checks plus the broken fixture";
}

void criterion_fundamental_group(std::ostream& log) {
  std::vector<FiniteGroupoid> family;
  for (const auto& grp : big_group_catalog()) {
    if (grp.order() > 24) continue;
    family.push_back(connected_groupoid(1, grp));
    if (grp.order() <= 12) family.push_back(connected_groupoid(2, grp));
    if (grp.order() <= 6) family.push_back(connected_groupoid(3, grp));
  }
  for (std::uint64_t seed = 1; seed <= 40; ++seed)
    family.push_back(random_connected_groupoid(seed, 12, 2));
  require(family.size() >= 100, "family too small");
  for (const auto& g : family) {
    auto presented = oracles::presented_fundamental_group(g);
    require(presented.has_value(), "coset enumeration exceeded its bound");
    auto iso = isotropy(g, 0);
    require(presented->order() == iso.order(), "presented group has the wrong order");
    require(group_isomorphic(*presented, iso), "presented group not isomorphic to isotropy");
  }
  log << family.size() << " connected groupoids";
}

void criterion_end_to_end(std::ostream& log) {
  std::string dir = "/tmp/stone_acceptance";
  run_shell("mkdir -p " + dir);
  auto pipe_once = [&](const std::string& gen_args, const std::string& out) {
    return run_shell(cli_path() + " gen " + gen_args + " | " + cli_path() + " pipeline - > " +
                     out);
  };
  require(pipe_once("--kind cyclic-tower --p 2 --depth 3", dir + "/cyclic_a.json") == 0,
          "cyclic pipeline run failed");
  require(pipe_once("--kind cyclic-tower --p 2 --depth 3", dir + "/cyclic_b.json") == 0,
          "cyclic pipeline rerun failed");
  auto a = slurp(dir + "/cyclic_a.json");
  require(!a.empty() && a == slurp(dir + "/cyclic_b.json"),
          "cyclic pipeline output is not byte-identical across runs");
  require(a == slurp(golden_dir() + "/cyclic_p2_d3_pipeline.json"),
          "cyclic pipeline output does not match the golden file");
  auto pres = json::parse(a);
  require(pres["levels"].size() == 3, "wrong level count");
  const size_t want[3] = {2, 4, 8};
  for (int k = 0; k < 3; ++k) {
    require(pres["levels"][k]["components"] == 1, "wrong component count");
    require(pres["levels"][k]["groups"][0]["elements"].size() == want[k],
            "wrong group order at level " + std::to_string(k));
  }
  require(pipe_once("--kind translation-tower --p 2 --depth 3", dir + "/trans_a.json") == 0,
          "translation pipeline run failed");
  require(pipe_once("--kind translation-tower --p 2 --depth 3", dir + "/trans_b.json") == 0,
          "translation pipeline rerun failed");
  auto ta = slurp(dir + "/trans_a.json");
  require(!ta.empty() && ta == slurp(dir + "/trans_b.json"),
          "translation pipeline output is not byte-identical across runs");
  require(ta == slurp(golden_dir() + "/translation_p2_d3_pipeline.json"),
          "translation pipeline output does not match the golden file");
  auto tp = json::parse(ta);
  for (const auto& level : tp["levels"]) {
    require(level["components"] == 1, "translation tower is not a point");
    require(level["groups"][0]["elements"].size() == 1, "translation tower has loops");
  }
  log << "pipelines deterministic and matching the golden files";
}

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<void(std::ostream&)> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"van-dantzig-soundness", 10.0, criterion_van_dantzig},
      {"equivalence-concordance", 30.0, criterion_concordance},
      {"skeleton-correctness", 60.0, criterion_skeleton},
      {"normal-core-maximality", 60.0, criterion_normal_core},
      {"reconstruction", 30.0, criterion_reconstruction},
      {"separation", 30.0, criterion_separation},
      {"limit-commutation", 30.0, criterion_limit_commutation},
      {"fundamental-group-oracle", 60.0, criterion_fundamental_group},
      {"end-to-end-pipeline", 5.0, criterion_end_to_end},
  };
  int failures = 0;
  int index = 0;
  for (auto& c : criteria) {
    ++index;
    std::ostringstream log;
    auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string message;
    try {
      c.run(log);
    } catch (const Failure& f) {
      ok = false;
      message = f.message;
    } catch (const std::exception& e) {
      ok = false;
      message = std::string("exception: ") + e.what();
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.budget_seconds) {
      ok = false;
      message += (message.empty() ? "" : "; ");
      message += "exceeded the " + std::to_string(c.budget_seconds) + "s budget";
    }
    if (!ok) ++failures;
    std::printf("[%s] %d. %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", index, c.name.c_str(),
                seconds, ok ? (log.str().empty() ? "" : ": ") : ": ",
                ok ? log.str().c_str() : message.c_str());
  }
  return failures == 0 ? 0 : 1;
}
