// Principal atlases: the total space M x G of a (trivial) principal
// bundle over a finite cover, its induced cover, the free right action,
// and the canonical basepoint choices that every section, class
// representative and chart construction downstream depends on.

#ifndef XMODKIT_SITE_ATLAS_HPP_
#define XMODKIT_SITE_ATLAS_HPP_

#include <memory>

#include "xmodkit/site/nerve.hpp"

namespace xmodkit::site {

class PrincipalAtlas {
 public:
  PrincipalAtlas() = default;
  PrincipalAtlas(std::shared_ptr<const Nerve> base, algebra::FiniteGroup group)
      : base_(std::move(base)), group_(std::move(group)) {
    build_total();
  }

  const Nerve& base() const { return *base_; }
  std::shared_ptr<const Nerve> base_ptr() const { return base_; }
  const algebra::FiniteGroup& group() const { return group_; }
  const Nerve& total() const { return *total_; }
  std::shared_ptr<const Nerve> total_ptr() const { return total_; }

  static std::string point_name(const std::string& m, const std::string& g) {
    return m + "@" + g;
  }

  Idx point(Idx m, Idx g) const { return total_->point_index(point_name(base_->point_names()[m], group_.name(g))); }

  // p = (m, g) decomposition
  std::pair<Idx, Idx> split(Idx p) const { return split_[p]; }
  Idx base_of(Idx p) const { return split_[p].first; }
  Idx fiber_of(Idx p) const { return split_[p].second; }

  // free right action (m, g0) . g = (m, g0 g)
  Idx act(Idx p, Idx g) const {
    auto [m, g0] = split_[p];
    return point(m, group_.op(g0, g));
  }

  // orbit representative (m, e) and the g with rep . g = p
  Idx orbit_rep(Idx p) const { return point(split_[p].first, group_.identity()); }
  Idx rep_translation(Idx p) const { return split_[p].second; }

  // canonical basepoints: u_i = (first point of U_i, e); u0 = u of chart 0
  Idx chart_basepoint(Idx chart) const {
    return point(base_->chart_points(chart).front(), group_.identity());
  }
  Idx basepoint() const { return chart_basepoint(0); }

  // canonical anchor of the overlap {i, j}: first point, identity fiber
  Idx pair_anchor(Idx i, Idx j) const {
    std::size_t si = base_->find_simplex({std::min(i, j), std::max(i, j)});
    if (si == Nerve::npos) fail("UnknownReference", "no overlap for anchor");
    return point(base_->simplices(1)[si].points.front(), group_.identity());
  }

  friend bool operator==(const PrincipalAtlas& a, const PrincipalAtlas& b) {
    return a.base_->point_names() == b.base_->point_names() &&
           a.base_->chart_names() == b.base_->chart_names() && a.group_ == b.group_;
  }

 private:
  void build_total() {
    const Nerve& bn = *base_;
    std::vector<std::string> pts;
    for (const auto& m : bn.point_names())
      for (const auto& g : group_.names()) pts.push_back(point_name(m, g));

    std::map<std::string, std::vector<std::string>> charts;
    for (Idx c = 0; c < bn.chart_count(); ++c) {
      std::vector<std::string> cp;
      for (Idx m : bn.chart_points(c))
        for (const auto& g : group_.names())
          cp.push_back(point_name(bn.point_names()[m], g));
      charts[bn.chart_names()[c]] = std::move(cp);
    }

    // components of P_ij = components of U_ij x single fiber elements;
    // this is exactly where "locally constant" keeps the G-direction free
    std::map<std::pair<std::string, std::string>, std::vector<std::vector<std::string>>> marks;
    for (const Simplex& s : bn.simplices(1)) {
      std::vector<std::vector<std::string>> parts;
      for (const auto& comp : s.comps)
        for (const auto& g : group_.names()) {
          std::vector<std::string> part;
          for (Idx m : comp) part.push_back(point_name(bn.point_names()[m], g));
          parts.push_back(std::move(part));
        }
      marks[{bn.chart_names()[s.charts[0]], bn.chart_names()[s.charts[1]]}] = std::move(parts);
    }
    total_ = std::make_shared<Nerve>(pts, charts, marks);

    split_.resize(total_->point_count());
    for (Idx m = 0; m < bn.point_count(); ++m)
      for (Idx g = 0; g < group_.size(); ++g) {
        Idx p = total_->point_index(point_name(bn.point_names()[m], group_.name(g)));
        split_[p] = {m, g};
      }
  }

  std::shared_ptr<const Nerve> base_;
  algebra::FiniteGroup group_;
  std::shared_ptr<const Nerve> total_;
  std::vector<std::pair<Idx, Idx>> split_;
};

}  // namespace xmodkit::site

#endif  // XMODKIT_SITE_ATLAS_HPP_
