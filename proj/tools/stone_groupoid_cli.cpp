// Command-line front end: every operation of the library behind one
// binary, reading and writing the JSON interchange documents.
//
// Exit codes: 0 success, 1 domain error (precondition violation, with
// stage and witness), 2 usage or format error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "stone/constructions.hpp"
#include "stone/errors.hpp"
#include "stone/functor.hpp"
#include "stone/generators.hpp"
#include "stone/groupoid.hpp"
#include "stone/realization.hpp"
#include "stone/serialize.hpp"
#include "stone/tower.hpp"

namespace {

using stone::json;

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw stone::StructureError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw stone::StructureError(what + ": invalid JSON: " + e.what());
  }
}

json load_document(const std::string& path) { return parse_json(read_all(path), path); }

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void write_trace(const std::string& path, const json& j) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw stone::StructureError("cannot open trace file: " + path);
  out << j.dump(2) << "\n";
}

stone::FiniteGroupoid load_valid_groupoid(const json& doc) {
  auto g = stone::groupoid_from_json(doc).groupoid;
  auto rep = stone::validate_groupoid(g);
  if (!rep.ok())
    throw stone::DomainError("input groupoid is not valid: " + rep.violations.front().detail);
  return g;
}

// Accepts a tower whose levels are valid groupoids and whose transitions
// are functors; surjectivity demands are left to the individual stages.
stone::GroupoidTower load_functorial_tower(const json& doc) {
  auto t = stone::tower_from_json(doc).tower;
  for (size_t n = 0; n < t.levels.size(); ++n) {
    auto rep = stone::validate_groupoid(t.levels[n]);
    if (!rep.ok())
      throw stone::DomainError("tower level " + std::to_string(n) +
                               " is not valid: " + rep.violations.front().detail);
  }
  for (size_t n = 0; n < t.transitions.size(); ++n) {
    auto rep = stone::validate_functor(t.functor_at(static_cast<int>(n)));
    if (!rep.ok())
      throw stone::DomainError("tower transition " + std::to_string(n) +
                               " is not a functor: " + rep.violations.front().detail);
  }
  return t;
}

stone::GroupoidTower as_tower(const json& doc) {
  if (stone::looks_like_tower(doc)) return load_functorial_tower(doc);
  stone::GroupoidTower t;
  t.levels.push_back(load_valid_groupoid(doc));
  return t;
}

int oracle_bound_from_env() {
  const char* v = std::getenv("STONE_GROUPOID_ORACLE_BOUND");
  if (!v || !*v) return stone::default_oracle_bound();
  char* end = nullptr;
  long b = std::strtol(v, &end, 10);
  if (!end || *end != '\0' || b <= 0)
    throw stone::StructureError(
        "STONE_GROUPOID_ORACLE_BOUND must be a positive integer, got '" + std::string(v) + "'");
  return static_cast<int>(b);
}

json functor_maps_json(const stone::GroupoidFunctor& f) {
  json j;
  j["obj_map"] = f.obj_map;
  j["mor_map"] = f.mor_map;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite groupoid towers: subgroupoid extraction, skeletalization, "
               "quotients, reconstruction and realization as towers of finite 1-types"};
  app.require_subcommand(1);

  std::string input = "-";
  std::string trace_path;
  std::string neighborhood_path, subgroupoid_path, normal_path, functor_path;
  int object_index = 0;
  int depth = 0;
  bool realize_pipeline = false;
  stone::GeneratorSpec gen_spec;

  auto add_input = [&input](CLI::App* sub) {
    sub->add_option("input", input, "input document path, or - for standard input");
  };
  auto add_trace = [&trace_path](CLI::App* sub) {
    sub->add_option("--trace", trace_path, "write the construction trace to this file");
  };

  auto* c_validate = app.add_subcommand("validate", "check every axiom, report violations");
  add_input(c_validate);
  auto* c_pi0 = app.add_subcommand("pi0", "connected components of a groupoid");
  add_input(c_pi0);
  auto* c_iso = app.add_subcommand("isotropy", "isotropy group at an object");
  c_iso->add_option("--object", object_index, "object index")->required();
  add_input(c_iso);
  auto* c_skel = app.add_subcommand("skeletonize", "skeletal replacement");
  add_input(c_skel);
  add_trace(c_skel);
  auto* c_vd = app.add_subcommand("vandantzig",
                                  "wide subgroupoid inside a neighborhood of the units");
  c_vd->add_option("--neighborhood", neighborhood_path, "subset document")->required();
  add_input(c_vd);
  add_trace(c_vd);
  auto* c_core = app.add_subcommand("core", "largest normal wide subgroupoid inside a wide one");
  c_core->add_option("--subgroupoid", subgroupoid_path, "subset document")->required();
  add_input(c_core);
  auto* c_quot = app.add_subcommand("quotient", "quotient by a normal wide subgroupoid");
  c_quot->add_option("--normal", normal_path, "subset document")->required();
  add_input(c_quot);
  add_trace(c_quot);
  auto* c_basis = app.add_subcommand("basis", "normal wide subgroupoids (or tower kernels)");
  add_input(c_basis);
  auto* c_collapse = app.add_subcommand("collapse", "retraction onto the isotropy at an object");
  c_collapse->add_option("--object", object_index, "object index")->required();
  add_input(c_collapse);
  auto* c_sep = app.add_subcommand("separate", "point-separating family of functors");
  add_input(c_sep);
  auto* c_rec = app.add_subcommand("reconstruct",
                                   "compare with the limit of the quotients by the basis");
  add_input(c_rec);
  auto* c_realize = app.add_subcommand("realize", "finite 1-type(s) of a skeletal input");
  c_realize->add_flag("--pipeline", realize_pipeline, "run the full construction first");
  add_input(c_realize);
  add_trace(c_realize);
  auto* c_pipe = app.add_subcommand("pipeline", "extraction, skeletalization, kernels, "
                                                "quotients and realization in one run");
  c_pipe->add_option("--neighborhood", neighborhood_path,
                     "optional subset document at the top level");
  add_input(c_pipe);
  add_trace(c_pipe);
  auto* c_check = app.add_subcommand("check-equiv", "equivalence criteria for a functor");
  c_check->add_option("--functor", functor_path, "functor document")->required();
  auto* c_gen = app.add_subcommand("gen", "generate a built-in groupoid or tower");
  c_gen->add_option("--kind", gen_spec.kind,
                    "cyclic-tower | pair | action | translation-tower | random")
      ->required();
  c_gen->add_option("--p", gen_spec.p, "prime, one of 2, 3, 5, 7");
  c_gen->add_option("--depth", gen_spec.depth, "number of tower levels (1..8)");
  c_gen->add_option("--n", gen_spec.n, "point count for kind=pair");
  c_gen->add_option("--seed", gen_spec.seed, "seed for kind=random");
  c_gen->add_option("--components", gen_spec.components, "component bound for kind=random");
  auto* c_threads = app.add_subcommand("threads", "compatible families through a tower");
  c_threads->add_option("--depth", depth, "level to thread through")->required();
  add_input(c_threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*c_validate) {
      auto doc = load_document(input);
      if (stone::looks_like_tower(doc)) {
        auto t = stone::tower_from_json(doc).tower;
        auto rep = stone::validate_tower(t);
        emit(stone::report_to_json(rep));
        return rep.ok() ? 0 : 1;
      }
      auto g = stone::groupoid_from_json(doc).groupoid;
      auto rep = stone::validate_groupoid(g);
      emit(stone::report_to_json(rep));
      return rep.ok() ? 0 : 1;
    }
    if (*c_pi0) {
      auto g = load_valid_groupoid(load_document(input));
      emit(stone::partition_to_json(stone::pi0(g)));
      return 0;
    }
    if (*c_iso) {
      auto g = load_valid_groupoid(load_document(input));
      emit(stone::group_to_json(stone::isotropy(g, object_index)));
      return 0;
    }
    if (*c_skel) {
      auto doc = load_document(input);
      if (stone::looks_like_tower(doc)) {
        auto t = load_functorial_tower(doc);
        auto res = stone::skeletal_replacement(t);
        emit(stone::tower_to_json(res.tower));
        json tr;
        tr["sections"] = res.sections;
        json inc = json::array();
        for (const auto& f : res.inclusions) inc.push_back(functor_maps_json(f));
        tr["inclusions"] = std::move(inc);
        write_trace(trace_path, tr);
        return 0;
      }
      auto g = load_valid_groupoid(doc);
      auto res = stone::skeletal_replacement(g);
      emit(stone::groupoid_to_json(res.skeleton));
      json tr;
      tr["section"] = res.section;
      tr["inclusion"] = functor_maps_json(res.inclusion);
      write_trace(trace_path, tr);
      return 0;
    }
    if (*c_vd) {
      auto g = load_valid_groupoid(load_document(input));
      auto u = stone::subset_from_json(load_document(neighborhood_path));
      auto res = stone::van_dantzig(g, u);
      emit(stone::subset_to_json(res.subgroupoid.morphisms));
      write_trace(trace_path, stone::trace_to_json(res.trace));
      return 0;
    }
    if (*c_core) {
      auto g = load_valid_groupoid(load_document(input));
      stone::WideSubgroupoid h;
      h.morphisms = stone::subset_from_json(load_document(subgroupoid_path));
      std::sort(h.morphisms.begin(), h.morphisms.end());
      auto n = stone::normal_core(g, h);
      emit(stone::subset_to_json(n.morphisms));
      return 0;
    }
    if (*c_quot) {
      auto g = load_valid_groupoid(load_document(input));
      stone::WideSubgroupoid n;
      n.morphisms = stone::subset_from_json(load_document(normal_path));
      std::sort(n.morphisms.begin(), n.morphisms.end());
      auto res = stone::quotient(g, n);
      emit(stone::groupoid_to_json(res.quotient));
      json tr;
      tr["projection"] = functor_maps_json(res.projection);
      write_trace(trace_path, tr);
      return 0;
    }
    if (*c_basis) {
      auto doc = load_document(input);
      std::vector<stone::WideSubgroupoid> basis;
      if (stone::looks_like_tower(doc))
        basis = stone::normal_basis(load_functorial_tower(doc));
      else
        basis = stone::normal_basis(load_valid_groupoid(doc));
      json j;
      json subs = json::array();
      for (const auto& w : basis) subs.push_back(w.morphisms);
      j["subgroupoids"] = std::move(subs);
      emit(j);
      return 0;
    }
    if (*c_collapse) {
      auto g = load_valid_groupoid(load_document(input));
      emit(stone::functor_to_json(stone::collapse(g, object_index)));
      return 0;
    }
    if (*c_sep) {
      auto g = load_valid_groupoid(load_document(input));
      auto fam = stone::separating_family(g);
      json j;
      json fs = json::array();
      for (const auto& f : fam) fs.push_back(stone::functor_to_json(f));
      j["family"] = std::move(fs);
      emit(j);
      return 0;
    }
    if (*c_rec) {
      auto doc = load_document(input);
      if (stone::looks_like_tower(doc)) {
        auto t = load_functorial_tower(doc);
        auto basis = stone::normal_basis(t);
        auto res = stone::reconstruct(t.levels[t.depth()], basis);
        emit(stone::reconstruct_to_json(res));
        return 0;
      }
      auto g = load_valid_groupoid(doc);
      auto res = stone::reconstruct(g, stone::normal_basis(g));
      emit(stone::reconstruct_to_json(res));
      return 0;
    }
    if (*c_realize) {
      auto doc = load_document(input);
      if (realize_pipeline) {
        auto t = as_tower(doc);
        auto res = stone::pipeline(t);
        emit(stone::presentation_to_json(res.presentation));
        write_trace(trace_path, stone::pipeline_to_json(res));
        return 0;
      }
      if (stone::looks_like_tower(doc)) {
        auto t = load_functorial_tower(doc);
        emit(stone::presentation_to_json(stone::realize_tower(t)));
        return 0;
      }
      auto g = load_valid_groupoid(doc);
      emit(stone::one_type_to_json(stone::realize_finite(g)));
      return 0;
    }
    if (*c_pipe) {
      auto t = as_tower(load_document(input));
      std::optional<std::vector<int>> u;
      if (!neighborhood_path.empty())
        u = stone::subset_from_json(load_document(neighborhood_path));
      auto res = stone::pipeline(t, u);
      emit(stone::presentation_to_json(res.presentation));
      write_trace(trace_path, stone::pipeline_to_json(res));
      return 0;
    }
    if (*c_check) {
      auto f = stone::functor_from_json(load_document(functor_path));
      {
        auto rep = stone::validate_groupoid(f.source);
        if (!rep.ok())
          throw stone::DomainError("functor source is not valid: " +
                                   rep.violations.front().detail);
        rep = stone::validate_groupoid(f.target);
        if (!rep.ok())
          throw stone::DomainError("functor target is not valid: " +
                                   rep.violations.front().detail);
        rep = stone::validate_functor(f);
        if (!rep.ok())
          throw stone::DomainError("not a functor: " + rep.violations.front().detail);
      }
      json j;
      bool ff = stone::internal_fully_faithful(f);
      bool es = stone::internal_essentially_surjective(f);
      j["fully_faithful"] = ff;
      j["essentially_surjective"] = es;
      j["whitehead"] = stone::whitehead_equivalence(f);
      j["equivalence"] = ff && es;
      try {
        j["oracle"] = stone::equivalence_oracle(f.source, f.target, oracle_bound_from_env());
      } catch (const stone::DomainError& e) {
        j["oracle"] = json();
        j["oracle_refused"] = e.what();
      }
      emit(j);
      return 0;
    }
    if (*c_gen) {
      auto out = stone::generate(gen_spec);
      if (out.tower)
        emit(stone::tower_to_json(*out.tower));
      else
        emit(stone::groupoid_to_json(*out.groupoid));
      return 0;
    }
    if (*c_threads) {
      auto t = load_functorial_tower(load_document(input));
      json j;
      j["depth"] = depth;
      j["objects"] = stone::threads_at_depth(stone::object_tower(t), depth);
      j["morphisms"] = stone::threads_at_depth(stone::morphism_tower(t), depth);
      emit(j);
      return 0;
    }
  } catch (const stone::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const stone::StructureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
