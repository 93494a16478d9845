// A workspace is a directory of JSON documents resolved by name; the
// resolvers below materialize domain objects from the reference graph.

#ifndef XMODKIT_IO_WORKSPACE_HPP_
#define XMODKIT_IO_WORKSPACE_HPP_

#include <filesystem>
#include <fstream>
#include <map>

#include "xmodkit/io/documents.hpp"

namespace xmodkit::io {

class Workspace {
 public:
  Workspace() = default;

  static Workspace load(const std::string& dir) {
    Workspace ws;
    ws.dir_ = dir;
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) fail("UnknownReference", "workspace '" + dir + "' not found");
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
      if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& p : files) {
      std::ifstream in(p);
      json j;
      try {
        in >> j;
      } catch (const std::exception& e) {
        fail("SchemaError", p.filename().string() + ": " + e.what());
      }
      ws.docs_[p.stem().string()] = std::move(j);
    }
    return ws;
  }

  void put(const std::string& name, json doc) { docs_[name] = std::move(doc); }

  bool has(const std::string& name) const { return docs_.count(name) > 0; }

  const json& doc(const std::string& name) const {
    auto it = docs_.find(name);
    if (it == docs_.end())
      fail("UnknownReference", "document '" + name + "' (workspace " + dir_ + ")");
    return it->second;
  }

  const std::map<std::string, json>& all() const { return docs_; }

  void save(const std::string& dir) const {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    for (const auto& [name, j] : docs_) {
      std::ofstream out(fs::path(dir) / (name + ".json"));
      out << j.dump(2) << "\n";
    }
  }

  // --- resolvers -----------------------------------------------------------

  algebra::FiniteGroup group(const std::string& name) const {
    return group_from_json(doc(name));
  }
  std::shared_ptr<const site::Nerve> nerve(const std::string& name) const {
    return std::make_shared<site::Nerve>(nerve_from_json(doc(name)));
  }
  lie::LieAlgebra lie_algebra(const std::string& name) const {
    return lie_algebra_from_json(doc(name));
  }

  xmod::XModContext xmod_context(const std::string& name) const {
    XModDoc d = xmod_doc_from_json(doc(name));
    algebra::FiniteGroup h = group(d.fiber_ref);
    algebra::Subgroup central;
    for (const auto& e : d.central) central.elements.push_back(h.index(e));
    std::sort(central.elements.begin(), central.elements.end());
    auto nv = nerve(d.nerve_ref);
    return xmod::make_context(xmod::quotient_pair_xmod(nv->point_names(), h, central), nv);
  }

  xmod::TransitionSystem transition_system(const xmod::XModContext& ctx,
                                           const std::string& name) const {
    TransitionDoc d = transition_doc_from_json(doc(name));
    const auto& pairs = ctx.nerve->simplices(1);
    std::vector<std::vector<algebra::Idx>> values(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      std::string key = ctx.nerve->chart_names()[pairs[k].charts[0]] + "|" +
                        ctx.nerve->chart_names()[pairs[k].charts[1]];
      auto it = d.values.find(key);
      values[k].resize(pairs[k].points.size(), ctx.vertex.group.identity());
      if (it == d.values.end()) continue;
      for (std::size_t t = 0; t < pairs[k].points.size(); ++t) {
        auto pt = it->second.find(ctx.nerve->point_names()[pairs[k].points[t]]);
        if (pt != it->second.end()) values[k][t] = ctx.vertex.group.index(pt->second);
      }
    }
    return xmod::make_system(ctx, values);
  }

  pbg::PBGContext pbg_context(const std::string& name) const {
    PBGDoc d = pbg_doc_from_json(doc(name));
    algebra::FiniteGroup h = group(d.fiber_ref);
    algebra::FiniteGroup g = group(d.group_ref);
    algebra::Subgroup central;
    for (const auto& e : d.central) central.elements.push_back(h.index(e));
    std::sort(central.elements.begin(), central.elements.end());
    site::PrincipalAtlas atlas(nerve(d.nerve_ref), g);

    std::vector<std::vector<algebra::Idx>> phihat(g.size());
    for (algebra::Idx ge = 0; ge < g.size(); ++ge) {
      phihat[ge].resize(h.size());
      for (algebra::Idx v = 0; v < h.size(); ++v) phihat[ge][v] = v;
    }
    for (const auto& [gname, m] : d.phihat) {
      algebra::Idx ge = g.index(gname);
      for (const auto& [a, b] : m) phihat[ge][h.index(a)] = h.index(b);
    }

    algebra::QuotientGroup q = algebra::quotient(h, central);
    const auto& pairs = atlas.total().simplices(1);
    std::vector<std::vector<algebra::Idx>> pattern(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      std::string key = atlas.base().chart_names()[pairs[k].charts[0]] + "|" +
                        atlas.base().chart_names()[pairs[k].charts[1]];
      pattern[k].assign(pairs[k].points.size(), q.group.identity());
      auto it = d.pattern.find(key);
      if (it == d.pattern.end()) continue;
      for (std::size_t t = 0; t < pairs[k].points.size(); ++t) {
        auto pt = it->second.find(atlas.total().point_names()[pairs[k].points[t]]);
        if (pt != it->second.end()) pattern[k][t] = q.group.index(pt->second);
      }
    }
    return pbg::quotient_pair_pbgxmod(atlas, h, central, phihat, pattern);
  }

  lie::Coupling coupling(const std::string& name) const {
    CouplingDoc d = coupling_doc_from_json(doc(name));
    lie::LieAlgebra gbar = lie_algebra(d.gbar_ref);
    lie::LieAlgebra k = lie_algebra(d.k_ref);
    lie::DerivationAlgebra dk = lie::derivation_algebra(k);
    num::Matrix xi(dk.out.dim(), gbar.dim());
    if (d.xi.size() != dk.out.dim()) fail("DimensionMismatch", "xi row count");
    for (std::size_t r = 0; r < d.xi.size(); ++r) {
      if (d.xi[r].size() != gbar.dim()) fail("DimensionMismatch", "xi column count");
      for (std::size_t c = 0; c < gbar.dim(); ++c)
        xi.at(r, c) = num::Rational::parse(d.xi[r][c]);
    }
    return lie::make_coupling(std::move(gbar), std::move(k), std::move(xi));
  }

 private:
  std::string dir_;
  std::map<std::string, json> docs_;
};

}  // namespace xmodkit::io

#endif  // XMODKIT_IO_WORKSPACE_HPP_
