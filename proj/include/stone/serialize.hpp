#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stone/constructions.hpp"
#include "stone/errors.hpp"
#include "stone/functor.hpp"
#include "stone/generators.hpp"
#include "stone/groupoid.hpp"
#include "stone/realization.hpp"
#include "stone/tower.hpp"

namespace stone {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

namespace detail {

inline void require_version(const json& j, const char* what) {
  if (!j.contains("version") || !j["version"].is_number_integer())
    throw StructureError(std::string(what) + ": missing integer 'version' field");
  if (j["version"].get<int>() != kFormatVersion)
    throw StructureError(std::string(what) + ": unsupported format version " +
                         j["version"].dump());
}

inline std::vector<int> int_array(const json& j, const char* field, const char* what) {
  if (!j.contains(field) || !j[field].is_array())
    throw StructureError(std::string(what) + ": missing array '" + field + "'");
  std::vector<int> out;
  for (const auto& v : j[field]) {
    if (!v.is_number_integer())
      throw StructureError(std::string(what) + ": '" + field + "' has a non-integer entry");
    out.push_back(v.get<int>());
  }
  return out;
}

inline int int_field(const json& j, const char* field, const char* what) {
  if (!j.contains(field) || !j[field].is_number_integer())
    throw StructureError(std::string(what) + ": missing integer '" + field + "'");
  return j[field].get<int>();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Groupoid documents

struct GroupoidDocument {
  FiniteGroupoid groupoid;
  json names;  // optional passthrough, null when absent
};

inline json groupoid_to_json(const FiniteGroupoid& g, const json& names = json()) {
  json j;
  j["version"] = kFormatVersion;
  j["objects"] = g.objects;
  j["src"] = g.src;
  j["tgt"] = g.tgt;
  j["unit"] = g.unit;
  j["inv"] = g.inv;
  json comp = json::array();
  for (const auto& t : g.comp) comp.push_back(json::array({t[0], t[1], t[2]}));
  j["comp"] = std::move(comp);
  if (!names.is_null()) j["names"] = names;
  return j;
}

inline GroupoidDocument groupoid_from_json(const json& j) {
  if (!j.is_object()) throw StructureError("groupoid document: not a JSON object");
  detail::require_version(j, "groupoid document");
  GroupoidDocument doc;
  int objects = detail::int_field(j, "objects", "groupoid document");
  auto src = detail::int_array(j, "src", "groupoid document");
  auto tgt = detail::int_array(j, "tgt", "groupoid document");
  auto unit = detail::int_array(j, "unit", "groupoid document");
  auto inv = detail::int_array(j, "inv", "groupoid document");
  if (!j.contains("comp") || !j["comp"].is_array())
    throw StructureError("groupoid document: missing array 'comp'");
  std::vector<std::array<int, 3>> comp;
  for (const auto& t : j["comp"]) {
    if (!t.is_array() || t.size() != 3)
      throw StructureError("groupoid document: comp entries must be triples");
    comp.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
  }
  doc.groupoid = make_groupoid(objects, src, tgt, unit, inv, comp);
  if (j.contains("names")) doc.names = j["names"];
  return doc;
}

// ---------------------------------------------------------------------------
// Tower documents

struct TowerDocument {
  GroupoidTower tower;
  std::vector<json> names;  // per level
};

inline json tower_to_json(const GroupoidTower& t, const std::vector<json>& names = {}) {
  json j;
  j["version"] = kFormatVersion;
  json levels = json::array();
  for (size_t n = 0; n < t.levels.size(); ++n)
    levels.push_back(groupoid_to_json(t.levels[n], n < names.size() ? names[n] : json()));
  j["levels"] = std::move(levels);
  json trans = json::array();
  for (const auto& m : t.transitions) {
    json e;
    e["objects"] = m.obj_map;
    e["morphisms"] = m.mor_map;
    trans.push_back(std::move(e));
  }
  j["transitions"] = std::move(trans);
  return j;
}

inline TowerDocument tower_from_json(const json& j) {
  if (!j.is_object()) throw StructureError("tower document: not a JSON object");
  detail::require_version(j, "tower document");
  if (!j.contains("levels") || !j["levels"].is_array() || j["levels"].empty())
    throw StructureError("tower document: missing non-empty array 'levels'");
  if (!j.contains("transitions") || !j["transitions"].is_array())
    throw StructureError("tower document: missing array 'transitions'");
  TowerDocument doc;
  std::vector<FiniteGroupoid> levels;
  for (const auto& l : j["levels"]) {
    auto g = groupoid_from_json(l);
    levels.push_back(std::move(g.groupoid));
    doc.names.push_back(std::move(g.names));
  }
  std::vector<TowerMap> trans;
  for (const auto& e : j["transitions"]) {
    TowerMap m;
    m.obj_map = detail::int_array(e, "objects", "tower transition");
    m.mor_map = detail::int_array(e, "morphisms", "tower transition");
    trans.push_back(std::move(m));
  }
  doc.tower = make_groupoid_tower(levels, trans);
  return doc;
}

inline bool looks_like_tower(const json& j) { return j.is_object() && j.contains("levels"); }

// ---------------------------------------------------------------------------
// Morphism subsets (neighborhoods, subgroupoids)

inline json subset_to_json(const std::vector<int>& morphisms) {
  json j;
  j["version"] = kFormatVersion;
  j["morphisms"] = morphisms;
  return j;
}

inline std::vector<int> subset_from_json(const json& j) {
  if (!j.is_object()) throw StructureError("subset document: not a JSON object");
  detail::require_version(j, "subset document");
  return detail::int_array(j, "morphisms", "subset document");
}

// ---------------------------------------------------------------------------
// Functors

inline json functor_to_json(const GroupoidFunctor& f) {
  json j;
  j["version"] = kFormatVersion;
  j["source"] = groupoid_to_json(f.source);
  j["target"] = groupoid_to_json(f.target);
  j["obj_map"] = f.obj_map;
  j["mor_map"] = f.mor_map;
  return j;
}

inline GroupoidFunctor functor_from_json(const json& j) {
  if (!j.is_object()) throw StructureError("functor document: not a JSON object");
  detail::require_version(j, "functor document");
  if (!j.contains("source") || !j.contains("target"))
    throw StructureError("functor document: missing 'source' or 'target'");
  GroupoidFunctor f;
  f.source = groupoid_from_json(j["source"]).groupoid;
  f.target = groupoid_from_json(j["target"]).groupoid;
  f.obj_map = detail::int_array(j, "obj_map", "functor document");
  f.mor_map = detail::int_array(j, "mor_map", "functor document");
  return f;
}

// ---------------------------------------------------------------------------
// Results

inline json group_to_json(const FiniteGroup& g) {
  json j;
  j["elements"] = g.labels;
  j["identity"] = g.identity;
  j["inverse"] = g.inverse;
  j["mult"] = g.mult;
  return j;
}

inline json report_to_json(const ValidationReport& r) {
  json j;
  j["valid"] = r.ok();
  json v = json::array();
  for (const auto& viol : r.violations) {
    json e;
    e["axiom"] = viol.axiom;
    e["witness"] = viol.witness;
    e["detail"] = viol.detail;
    v.push_back(std::move(e));
  }
  j["violations"] = std::move(v);
  return j;
}

inline json partition_to_json(const ComponentPartition& p) {
  json j;
  j["components"] = p.component_of;
  j["representatives"] = p.representative;
  return j;
}

inline json trace_to_json(const VanDantzigTrace& t) {
  json j;
  j["U"] = t.input_u;
  j["K"] = t.k;
  json w = json::array();
  for (auto& pr : t.w) w.push_back(json::array({pr.first, pr.second}));
  j["W"] = std::move(w);
  j["F"] = t.f;
  json b = json::array();
  for (auto& pr : t.b) b.push_back(json::array({pr.first, pr.second}));
  j["B"] = std::move(b);
  j["M"] = t.m;
  j["V"] = t.v;
  j["H1"] = t.h1;
  return j;
}

inline json one_type_to_json(const PiFiniteOneType& t) {
  json j;
  j["components"] = t.components;
  json g = json::array();
  for (const auto& grp : t.groups) g.push_back(group_to_json(grp));
  j["groups"] = std::move(g);
  return j;
}

inline json presentation_to_json(const AnimaPresentation& p) {
  json j;
  j["version"] = kFormatVersion;
  json levels = json::array();
  for (const auto& l : p.levels) levels.push_back(one_type_to_json(l));
  j["levels"] = std::move(levels);
  json trans = json::array();
  for (const auto& m : p.transitions) {
    json e;
    e["pi0"] = m.component_map;
    e["groups"] = m.group_maps;
    trans.push_back(std::move(e));
  }
  j["transitions"] = std::move(trans);
  return j;
}

inline json reconstruct_to_json(const ReconstructResult& r) {
  json j;
  j["objects_bijective"] = r.objects_bijective;
  j["morphisms_injective"] = r.morphisms_injective;
  j["morphisms_surjective"] = r.morphisms_surjective;
  j["bijective"] = r.bijective();
  j["collision"] = r.collision ? json::array({r.collision->first, r.collision->second})
                               : json();
  j["unrealized"] = r.unrealized ? json(*r.unrealized) : json();
  return j;
}

inline json commutation_to_json(const CommutationResult& r) {
  json j;
  j["ok"] = r.ok;
  if (r.witness) {
    json w;
    w["kind"] = r.witness->kind;
    w["level"] = r.witness->level;
    w["component"] = r.witness->component;
    w["element"] = r.witness->element;
    j["witness"] = std::move(w);
  } else {
    j["witness"] = json();
  }
  return j;
}

inline json skeleton_to_json(const TowerSkeletonResult& s) {
  json j;
  j["tower"] = tower_to_json(s.tower);
  j["sections"] = s.sections;
  json inc = json::array();
  for (const auto& f : s.inclusions) {
    json e;
    e["obj_map"] = f.obj_map;
    e["mor_map"] = f.mor_map;
    inc.push_back(std::move(e));
  }
  j["inclusions"] = std::move(inc);
  return j;
}

inline json pipeline_to_json(const PipelineResult& p) {
  json j;
  if (p.extraction) {
    json ex = json::array();
    for (const auto& r : *p.extraction) ex.push_back(trace_to_json(r.trace));
    j["extraction"] = std::move(ex);
  } else {
    j["extraction"] = json();
  }
  j["restricted_tower"] = p.restricted_tower ? tower_to_json(*p.restricted_tower) : json();
  j["skeleton"] = skeleton_to_json(p.skeleton);
  json ker = json::array();
  for (const auto& k : p.kernels) ker.push_back(k.morphisms);
  j["kernels"] = std::move(ker);
  j["quotient_tower"] = tower_to_json(p.quotient_tower);
  return j;
}

}  // namespace stone
