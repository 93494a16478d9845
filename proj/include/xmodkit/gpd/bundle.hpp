// Group bundles over a finite base and representations of groupoids on
// them (Ehresmann-style: one fiber isomorphism per arrow, functorial).

#ifndef XMODKIT_GPD_BUNDLE_HPP_
#define XMODKIT_GPD_BUNDLE_HPP_

#include "xmodkit/gpd/groupoid.hpp"

namespace xmodkit::gpd {

class GroupBundle {
 public:
  GroupBundle() = default;

  // general form: one fiber per point
  explicit GroupBundle(std::vector<FiniteGroup> fibers) : fibers_(std::move(fibers)) {}

  // trivialized form: every fiber the model group
  GroupBundle(std::size_t base_size, FiniteGroup model)
      : fibers_(base_size, model), model_(std::move(model)), trivial_(true) {}

  std::size_t base_size() const { return fibers_.size(); }
  const FiniteGroup& fiber(Idx point) const { return fibers_[point]; }
  bool trivialized() const { return trivial_; }
  const FiniteGroup& model() const {
    if (!trivial_) fail("SchemaError", "bundle has no model fiber");
    return model_;
  }

  friend bool operator==(const GroupBundle& a, const GroupBundle& b) {
    return a.fibers_ == b.fibers_;
  }

 private:
  std::vector<FiniteGroup> fibers_;
  FiniteGroup model_;
  bool trivial_ = false;
};

struct GCondition {
  std::string name;
  bool ok = false;
  std::string witness;
};

// Action of a groupoid on a bundle: for each arrow, a map from the source
// fiber to the target fiber (element indices).
struct BundleAction {
  std::vector<std::vector<Idx>> per_arrow;

  Idx apply(Idx arrow, Idx fiber_element) const { return per_arrow[arrow][fiber_element]; }
};

struct RepresentationReport {
  bool valid = false;
  std::vector<GCondition> conditions;
};

// The four conditions of a groupoid representation, checked exhaustively.
inline RepresentationReport validate_representation(const FiniteGroupoid& g,
                                                    const GroupBundle& f,
                                                    const BundleAction& rho) {
  RepresentationReport rep;
  auto add = [&](std::string name, bool ok, std::string wit = "") {
    rep.conditions.push_back({std::move(name), ok, std::move(wit)});
  };
  if (f.base_size() != g.object_count() || rho.per_arrow.size() != g.arrow_count()) {
    add("shapes", false, "bundle/action sized to the groupoid");
    return rep;
  }

  // 1. typing: rho(xi): F_{s(xi)} -> F_{t(xi)} total with the right size
  {
    bool ok = true;
    std::string wit;
    for (Idx a = 0; a < g.arrow_count() && ok; ++a) {
      if (rho.per_arrow[a].size() != f.fiber(g.src(a)).size()) {
        ok = false;
        wit = g.arrow(a).name;
        break;
      }
      for (Idx e : rho.per_arrow[a])
        if (e >= f.fiber(g.tgt(a)).size()) {
          ok = false;
          wit = g.arrow(a).name;
          break;
        }
    }
    add("typing", ok, wit);
    if (!ok) return rep;
  }
  // 2. rho(eta, rho(xi, f)) = rho(eta xi, f)
  {
    bool ok = true;
    std::string wit;
    for (Idx e = 0; e < g.arrow_count() && ok; ++e)
      for (Idx x = 0; x < g.arrow_count() && ok; ++x) {
        if (g.src(e) != g.tgt(x)) continue;
        Idx comp = g.compose(e, x);
        for (Idx v = 0; v < f.fiber(g.src(x)).size(); ++v)
          if (rho.apply(e, rho.apply(x, v)) != rho.apply(comp, v)) {
            ok = false;
            wit = "(" + g.arrow(e).name + "," + g.arrow(x).name + ")";
            break;
          }
      }
    add("composition", ok, wit);
  }
  // 3. rho(1_x, f) = f
  {
    bool ok = true;
    std::string wit;
    for (Idx x = 0; x < g.object_count() && ok; ++x)
      for (Idx v = 0; v < f.fiber(x).size(); ++v)
        if (rho.apply(g.unit(x), v) != v) {
          ok = false;
          wit = g.objects()[x];
          break;
        }
    add("units", ok, wit);
  }
  // 4. each rho(xi) a group isomorphism
  {
    bool ok = true;
    std::string wit;
    for (Idx a = 0; a < g.arrow_count() && ok; ++a) {
      const FiniteGroup& fs = f.fiber(g.src(a));
      const FiniteGroup& ft = f.fiber(g.tgt(a));
      std::vector<bool> hit(ft.size(), false);
      for (Idx v = 0; v < fs.size(); ++v) {
        Idx img = rho.apply(a, v);
        if (hit[img]) {
          ok = false;
          wit = g.arrow(a).name;
          break;
        }
        hit[img] = true;
      }
      for (Idx v = 0; v < fs.size() && ok; ++v)
        for (Idx w = 0; w < fs.size(); ++w)
          if (rho.apply(a, fs.op(v, w)) != ft.op(rho.apply(a, v), rho.apply(a, w))) {
            ok = false;
            wit = g.arrow(a).name;
            break;
          }
    }
    add("fiber isomorphisms", ok, wit);
  }
  rep.valid = true;
  for (const auto& c : rep.conditions) rep.valid = rep.valid && c.ok;
  return rep;
}

// Conjugation action of a groupoid on its own isotropy arrows, expressed
// through per-object vertex groups.
inline BundleAction conjugation_action(const FiniteGroupoid& g,
                                       const std::vector<VertexGroup>& vertices) {
  BundleAction rho;
  rho.per_arrow.resize(g.arrow_count());
  for (Idx a = 0; a < g.arrow_count(); ++a) {
    const VertexGroup& vs = vertices[g.src(a)];
    const VertexGroup& vt = vertices[g.tgt(a)];
    rho.per_arrow[a].resize(vs.group.size());
    for (Idx e = 0; e < vs.group.size(); ++e)
      rho.per_arrow[a][e] = vt.element(g.conj(a, vs.arrow_of[e]));
  }
  return rho;
}

}  // namespace xmodkit::gpd

#endif  // XMODKIT_GPD_BUNDLE_HPP_
