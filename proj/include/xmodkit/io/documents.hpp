// Document formats: one strict JSON schema per domain object, with
// deterministic serialization (sorted keys, canonical element order) so
// that reports and golden files are byte-stable. Rational scalars are
// strings "p/q". The full schema reference lives in docs/format.md.

#ifndef XMODKIT_IO_DOCUMENTS_HPP_
#define XMODKIT_IO_DOCUMENTS_HPP_

#include <string>

#include "json.hpp"
#include "xmodkit/lie/coupling.hpp"
#include "xmodkit/pbg/pbgxmod.hpp"
#include "xmodkit/xmod/lifting.hpp"

namespace xmodkit::io {

using nlohmann::json;

// FNV-1a over the canonical dump; stable across runs and platforms.
inline std::string content_hash(const json& j) {
  std::string s = j.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

inline void require_type(const json& j, const std::string& type) {
  if (!j.is_object() || !j.contains("type") || j.at("type") != type)
    fail("SchemaError", "expected a document of type '" + type + "'");
}

inline const json& field(const json& j, const std::string& key) {
  if (!j.contains(key)) fail("SchemaError", "missing field '" + key + "'");
  return j.at(key);
}

// --- groups ---------------------------------------------------------------

inline json group_to_json(const algebra::FiniteGroup& g) {
  json j;
  j["type"] = "group";
  j["elements"] = g.names();
  j["identity"] = g.name(g.identity());
  json table = json::array();
  for (algebra::Idx a = 0; a < g.size(); ++a) {
    json row = json::array();
    for (algebra::Idx b = 0; b < g.size(); ++b) row.push_back(g.name(g.op(a, b)));
    table.push_back(row);
  }
  j["table"] = table;
  return j;
}

inline algebra::FiniteGroup group_from_json(const json& j) {
  require_type(j, "group");
  if (j.contains("builtin")) {
    std::string b = field(j, "builtin");
    std::size_t n = j.value("n", 0);
    if (b == "cyclic") return algebra::cyclic_group(n);
    if (b == "dihedral") return algebra::dihedral_group(n);
    if (b == "symmetric3") return algebra::symmetric3();
    if (b == "klein_four") return algebra::klein_four();
    if (b == "trivial") return algebra::trivial_group();
    fail("SchemaError", "unknown builtin group '" + b + "'");
  }
  std::vector<std::string> elements = field(j, "elements").get<std::vector<std::string>>();
  std::vector<std::vector<std::string>> table =
      field(j, "table").get<std::vector<std::vector<std::string>>>();
  return algebra::FiniteGroup(elements, table, field(j, "identity").get<std::string>());
}

// --- nerves and atlases -----------------------------------------------------

inline json nerve_to_json(const site::Nerve& n) {
  json j;
  j["type"] = "nerve";
  j["points"] = n.point_names();
  json charts = json::object();
  for (algebra::Idx c = 0; c < n.chart_count(); ++c) {
    std::vector<std::string> pts;
    for (algebra::Idx p : n.chart_points(c)) pts.push_back(n.point_names()[p]);
    charts[n.chart_names()[c]] = pts;
  }
  j["charts"] = charts;
  json comps = json::array();
  for (const site::Simplex& s : n.simplices(1)) {
    if (s.comps.size() <= 1) continue;
    json entry;
    entry["charts"] = json::array(
        {n.chart_names()[s.charts[0]], n.chart_names()[s.charts[1]]});
    json parts = json::array();
    for (const auto& comp : s.comps) {
      std::vector<std::string> names;
      for (algebra::Idx p : comp) names.push_back(n.point_names()[p]);
      parts.push_back(names);
    }
    entry["parts"] = parts;
    comps.push_back(entry);
  }
  if (!comps.empty()) j["components"] = comps;
  return j;
}

inline site::Nerve nerve_from_json(const json& j) {
  require_type(j, "nerve");
  if (j.contains("builtin")) {
    std::string b = field(j, "builtin");
    std::size_t n = j.value("n", 0);
    if (b == "simplex") return site::simplex_nerve(n);
    if (b == "tetrahedron") return site::tetrahedron_nerve();
    if (b == "circle") return site::circle_nerve(n);
    if (b == "projective_plane") return site::projective_plane_nerve();
    fail("SchemaError", "unknown builtin nerve '" + b + "'");
  }
  std::vector<std::string> points = field(j, "points").get<std::vector<std::string>>();
  std::map<std::string, std::vector<std::string>> charts;
  for (auto it = field(j, "charts").begin(); it != field(j, "charts").end(); ++it)
    charts[it.key()] = it.value().get<std::vector<std::string>>();
  std::map<std::pair<std::string, std::string>, std::vector<std::vector<std::string>>> marks;
  if (j.contains("components"))
    for (const json& entry : j.at("components")) {
      auto cs = field(entry, "charts").get<std::vector<std::string>>();
      if (cs.size() != 2) fail("SchemaError", "component marking needs two charts");
      marks[{cs[0], cs[1]}] =
          field(entry, "parts").get<std::vector<std::vector<std::string>>>();
    }
  return site::Nerve(points, charts, marks);
}

// --- Lie algebras -------------------------------------------------------------

inline json lie_algebra_to_json(const lie::LieAlgebra& a) {
  json j;
  j["type"] = "lie_algebra";
  j["basis"] = a.basis();
  json brackets = json::array();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = i + 1; k < a.dim(); ++k) {
      lie::Vec v = a.bracket(a.unit(i), a.unit(k));
      json coeffs = json::object();
      for (std::size_t t = 0; t < a.dim(); ++t)
        if (!v[t].is_zero()) coeffs[a.basis()[t]] = v[t].str();
      if (!coeffs.empty())
        brackets.push_back(json::array({a.basis()[i], a.basis()[k], coeffs}));
    }
  j["bracket"] = brackets;
  return j;
}

inline lie::LieAlgebra lie_algebra_from_json(const json& j) {
  require_type(j, "lie_algebra");
  if (j.contains("builtin")) {
    std::string b = field(j, "builtin");
    if (b == "abelian") return lie::abelian(j.value("n", 0));
    if (b == "sl2") return lie::sl2();
    if (b == "heisenberg3") return lie::heisenberg3();
    if (b == "gl2") return lie::gl2();
    if (b == "affine2") return lie::affine2();
    fail("SchemaError", "unknown builtin Lie algebra '" + b + "'");
  }
  std::vector<std::string> basis = field(j, "basis").get<std::vector<std::string>>();
  auto index_of = [&](const std::string& name) {
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i] == name) return i;
    fail("UnknownElement", "basis name '" + name + "'");
  };
  std::size_t n = basis.size();
  std::vector<std::vector<lie::Vec>> brk(n, std::vector<lie::Vec>(n, lie::Vec(n)));
  for (const json& entry : field(j, "bracket")) {
    if (!entry.is_array() || entry.size() != 3) fail("SchemaError", "bracket entry shape");
    std::size_t i = index_of(entry[0].get<std::string>());
    std::size_t k = index_of(entry[1].get<std::string>());
    lie::Vec v(n);
    for (auto it = entry[2].begin(); it != entry[2].end(); ++it)
      v[index_of(it.key())] = num::Rational::parse(it.value().get<std::string>());
    brk[i][k] = v;
    for (auto& x : v) x = -x;
    brk[k][i] = v;
  }
  return lie::LieAlgebra(basis, brk);
}

// --- pair crossed modules (quotient presentation) -----------------------------

struct XModDoc {
  std::string nerve_ref;
  std::string fiber_ref;
  std::vector<std::string> central;  // element names of the central subgroup
};

inline json xmod_doc_to_json(const XModDoc& d) {
  json j;
  j["type"] = "xmod";
  j["base"] = d.nerve_ref;
  j["fiber"] = d.fiber_ref;
  j["central"] = d.central;
  return j;
}

inline XModDoc xmod_doc_from_json(const json& j) {
  require_type(j, "xmod");
  XModDoc d;
  d.nerve_ref = field(j, "base").get<std::string>();
  d.fiber_ref = field(j, "fiber").get<std::string>();
  d.central = field(j, "central").get<std::vector<std::string>>();
  return d;
}

// --- transition systems --------------------------------------------------------

struct TransitionDoc {
  std::string xmod_ref;
  // values keyed "Ui|Uj" -> point -> vertex element name
  std::map<std::string, std::map<std::string, std::string>> values;
};

inline json transition_doc_to_json(const TransitionDoc& d) {
  json j;
  j["type"] = "transition";
  j["xmod"] = d.xmod_ref;
  json vals = json::object();
  for (const auto& [pair_key, pts] : d.values) {
    json inner = json::object();
    for (const auto& [pt, val] : pts) inner[pt] = val;
    vals[pair_key] = inner;
  }
  j["values"] = vals;
  return j;
}

inline TransitionDoc transition_doc_from_json(const json& j) {
  require_type(j, "transition");
  TransitionDoc d;
  d.xmod_ref = field(j, "xmod").get<std::string>();
  for (auto it = field(j, "values").begin(); it != field(j, "values").end(); ++it)
    for (auto pt = it.value().begin(); pt != it.value().end(); ++pt)
      d.values[it.key()][pt.key()] = pt.value().get<std::string>();
  return d;
}

// --- PBG instances ---------------------------------------------------------------

struct PBGDoc {
  std::string nerve_ref;
  std::string group_ref;   // structure group G
  std::string fiber_ref;   // H
  std::vector<std::string> central;
  std::map<std::string, std::map<std::string, std::string>> phihat;  // g -> (h -> h')
  std::map<std::string, std::map<std::string, std::string>> pattern; // "Ui|Uj" -> point -> q name
};

inline json pbg_doc_to_json(const PBGDoc& d) {
  json j;
  j["type"] = "pbg_xmod";
  j["base"] = d.nerve_ref;
  j["group"] = d.group_ref;
  j["fiber"] = d.fiber_ref;
  j["central"] = d.central;
  json ph = json::object();
  for (const auto& [g, m] : d.phihat) {
    json inner = json::object();
    for (const auto& [a, b] : m) inner[a] = b;
    ph[g] = inner;
  }
  j["phihat"] = ph;
  json pat = json::object();
  for (const auto& [pair_key, pts] : d.pattern) {
    json inner = json::object();
    for (const auto& [pt, val] : pts) inner[pt] = val;
    pat[pair_key] = inner;
  }
  j["pattern"] = pat;
  return j;
}

inline PBGDoc pbg_doc_from_json(const json& j) {
  require_type(j, "pbg_xmod");
  PBGDoc d;
  d.nerve_ref = field(j, "base").get<std::string>();
  d.group_ref = field(j, "group").get<std::string>();
  d.fiber_ref = field(j, "fiber").get<std::string>();
  d.central = field(j, "central").get<std::vector<std::string>>();
  for (auto it = field(j, "phihat").begin(); it != field(j, "phihat").end(); ++it)
    for (auto e = it.value().begin(); e != it.value().end(); ++e)
      d.phihat[it.key()][e.key()] = e.value().get<std::string>();
  for (auto it = field(j, "pattern").begin(); it != field(j, "pattern").end(); ++it)
    for (auto e = it.value().begin(); e != it.value().end(); ++e)
      d.pattern[it.key()][e.key()] = e.value().get<std::string>();
  return d;
}

// --- couplings --------------------------------------------------------------------

struct CouplingDoc {
  std::string gbar_ref;
  std::string k_ref;
  std::vector<std::vector<std::string>> xi;  // OutDer coords x gbar dim, rationals
};

inline json coupling_doc_to_json(const CouplingDoc& d) {
  json j;
  j["type"] = "coupling";
  j["gbar"] = d.gbar_ref;
  j["k"] = d.k_ref;
  j["xi"] = d.xi;
  return j;
}

inline CouplingDoc coupling_doc_from_json(const json& j) {
  require_type(j, "coupling");
  CouplingDoc d;
  d.gbar_ref = field(j, "gbar").get<std::string>();
  d.k_ref = field(j, "k").get<std::string>();
  d.xi = field(j, "xi").get<std::vector<std::vector<std::string>>>();
  return d;
}

}  // namespace xmodkit::io

#endif  // XMODKIT_IO_DOCUMENTS_HPP_
