// Finite covers and their nerves: charts over a finite point set, all
// nonempty overlap simplices up to quadruples, and per-overlap connected
// components. Overlaps are always derived from the charts, never input.
//
// A cover models a space only through (a) which overlaps are nonempty and
// (b) how each overlap splits into components; "locally constant" data
// downstream means one value per component.

#ifndef XMODKIT_SITE_NERVE_HPP_
#define XMODKIT_SITE_NERVE_HPP_

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "xmodkit/algebra/group.hpp"

namespace xmodkit::site {

using algebra::Idx;

struct Simplex {
  std::vector<Idx> charts;              // sorted chart indices, size = degree+1
  std::vector<Idx> points;              // sorted intersection point indices
  std::vector<std::vector<Idx>> comps;  // partition of points into components
};

class Nerve {
 public:
  Nerve() = default;

  // `charts`: chart name -> point names. `pair_components`: optional
  // partitions of pairwise overlaps, keyed by the two chart names; a key
  // (c, c) partitions the chart c itself. Deeper overlaps refine
  // automatically. Unmarked overlaps are one component.
  Nerve(std::vector<std::string> point_names,
        const std::map<std::string, std::vector<std::string>>& charts,
        const std::map<std::pair<std::string, std::string>,
                       std::vector<std::vector<std::string>>>& pair_components = {}) {
    points_ = std::move(point_names);
    std::sort(points_.begin(), points_.end());
    if (std::adjacent_find(points_.begin(), points_.end()) != points_.end())
      fail("SchemaError", "duplicate base point");
    for (const auto& [cname, cpoints] : charts) {
      chart_names_.push_back(cname);
      std::vector<Idx> idxs;
      for (const auto& p : cpoints) idxs.push_back(point_index(p));
      std::sort(idxs.begin(), idxs.end());
      idxs.erase(std::unique(idxs.begin(), idxs.end()), idxs.end());
      if (idxs.empty()) fail("SchemaError", "empty chart '" + cname + "'");
      chart_points_.push_back(std::move(idxs));
    }
    if (chart_names_.empty()) fail("SchemaError", "cover needs at least one chart");

    // normalize pairwise component markings to chart indices
    std::map<std::pair<Idx, Idx>, std::vector<std::vector<Idx>>> marks;
    for (const auto& [key, partition] : pair_components) {
      Idx a = chart_index(key.first), b = chart_index(key.second);
      if (a > b) std::swap(a, b);
      std::vector<std::vector<Idx>> parts;
      for (const auto& part : partition) {
        std::vector<Idx> prt;
        for (const auto& p : part) prt.push_back(point_index(p));
        std::sort(prt.begin(), prt.end());
        parts.push_back(std::move(prt));
      }
      marks[{a, b}] = std::move(parts);
    }
    build_simplices(marks);
  }

  std::size_t point_count() const { return points_.size(); }
  std::size_t chart_count() const { return chart_names_.size(); }
  const std::vector<std::string>& point_names() const { return points_; }
  const std::vector<std::string>& chart_names() const { return chart_names_; }
  const std::vector<Idx>& chart_points(Idx c) const { return chart_points_[c]; }

  Idx point_index(const std::string& p) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), p);
    if (it == points_.end() || *it != p) fail("UnknownElement", "point '" + p + "'");
    return static_cast<Idx>(it - points_.begin());
  }
  Idx chart_index(const std::string& c) const {
    for (Idx i = 0; i < chart_names_.size(); ++i)
      if (chart_names_[i] == c) return i;
    fail("UnknownReference", "chart '" + c + "'");
  }

  // degree d simplices = (d+1)-fold overlaps; d ranges over 0..3
  const std::vector<Simplex>& simplices(std::size_t degree) const {
    if (degree > 3) fail("DimensionMismatch", "nerve tracks overlaps up to quadruples");
    return simplices_[degree];
  }

  // index of a simplex among its dimension, or npos
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t find_simplex(const std::vector<Idx>& charts) const {
    const auto& list = simplices_[charts.size() - 1];
    auto it = std::lower_bound(list.begin(), list.end(), charts,
                               [](const Simplex& s, const std::vector<Idx>& c) {
                                 return s.charts < c;
                               });
    if (it == list.end() || it->charts != charts) return npos;
    return static_cast<std::size_t>(it - list.begin());
  }

  // component id of `point` inside the overlap `charts`
  std::size_t component_of(const std::vector<Idx>& charts, Idx point) const {
    std::size_t si = find_simplex(charts);
    if (si == npos) fail("UnknownReference", "no such overlap");
    const Simplex& s = simplices_[charts.size() - 1][si];
    for (std::size_t k = 0; k < s.comps.size(); ++k)
      if (std::binary_search(s.comps[k].begin(), s.comps[k].end(), point)) return k;
    fail("UnknownElement", "point not in overlap");
  }

 private:
  void build_simplices(const std::map<std::pair<Idx, Idx>, std::vector<std::vector<Idx>>>& marks) {
    std::size_t n = chart_names_.size();
    for (Idx i = 0; i < n; ++i) {
      std::vector<std::vector<Idx>> comps{chart_points_[i]};
      auto it = marks.find({i, i});
      if (it != marks.end()) {
        comps.clear();
        for (const auto& part : it->second) {
          std::vector<Idx> got;
          for (Idx p : chart_points_[i])
            if (std::binary_search(part.begin(), part.end(), p)) got.push_back(p);
          if (!got.empty()) comps.push_back(std::move(got));
        }
        std::size_t covered = 0;
        for (const auto& cmp : comps) covered += cmp.size();
        if (covered != chart_points_[i].size())
          fail("SchemaError", "chart component marking does not cover the chart");
      }
      simplices_[0].push_back(Simplex{{i}, chart_points_[i], std::move(comps)});
    }

    auto intersect = [](const std::vector<Idx>& a, const std::vector<Idx>& b) {
      std::vector<Idx> out;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      return out;
    };

    for (std::size_t d = 1; d <= 3; ++d) {
      std::vector<Idx> pick(d + 1);
      auto rec = [&](auto&& self, std::size_t depth, Idx start) -> void {
        if (depth == d + 1) {
          std::vector<Idx> pts = chart_points_[pick[0]];
          for (std::size_t j = 1; j <= d; ++j) pts = intersect(pts, chart_points_[pick[j]]);
          if (pts.empty()) return;
          Simplex s;
          s.charts = pick;
          s.points = pts;
          s.comps = components_for(pick, pts, marks);
          simplices_[d].push_back(std::move(s));
          return;
        }
        for (Idx c = start; c < n; ++c) {
          pick[depth] = c;
          self(self, depth + 1, c + 1);
        }
      };
      rec(rec, 0, 0);
      // faces of every simplex must themselves be present; true by
      // construction since subsets of charts have superset intersections
    }
  }

  std::vector<std::vector<Idx>> components_for(
      const std::vector<Idx>& charts, const std::vector<Idx>& pts,
      const std::map<std::pair<Idx, Idx>, std::vector<std::vector<Idx>>>& marks) const {
    // common refinement of every marked partition among these charts,
    // including each member chart's own partition
    auto part_of = [&](Idx a, Idx b, Idx p) -> std::size_t {
      auto it = marks.find({a, b});
      if (it == marks.end()) return 0;
      for (std::size_t k = 0; k < it->second.size(); ++k)
        if (std::binary_search(it->second[k].begin(), it->second[k].end(), p)) return k;
      fail("SchemaError", "component marking does not cover an overlap point");
    };
    std::map<std::vector<std::size_t>, std::vector<Idx>> buckets;
    for (Idx p : pts) {
      std::vector<std::size_t> key;
      for (std::size_t a = 0; a < charts.size(); ++a)
        for (std::size_t b = a; b < charts.size(); ++b)
          key.push_back(part_of(charts[a], charts[b], p));
      buckets[key].push_back(p);
    }
    std::vector<std::vector<Idx>> comps;
    for (auto& [key, bucket] : buckets) comps.push_back(bucket);
    std::sort(comps.begin(), comps.end());
    return comps;
  }

  std::vector<std::string> points_;
  std::vector<std::string> chart_names_;
  std::vector<std::vector<Idx>> chart_points_;
  std::vector<Simplex> simplices_[4];
};

// --- stock nerves used across tests and the corpus ---------------------

// Full k-chart nerve on one shared point: every overlap nonempty, all
// cohomology trivial. With 3 charts this is the "triangle with a common
// triple point".
inline Nerve simplex_nerve(std::size_t k) {
  std::map<std::string, std::vector<std::string>> charts;
  for (std::size_t i = 0; i < k; ++i) charts["U" + std::to_string(i)] = {"m"};
  return Nerve({"m"}, charts);
}

// Boundary-of-a-tetrahedron pattern: 4 charts, all pairs and triples
// nonempty, the quadruple empty. Points are the four triples.
inline Nerve tetrahedron_nerve() {
  std::vector<std::string> pts{"p012", "p013", "p023", "p123"};
  std::map<std::string, std::vector<std::string>> charts;
  charts["U0"] = {"p012", "p013", "p023"};
  charts["U1"] = {"p012", "p013", "p123"};
  charts["U2"] = {"p012", "p023", "p123"};
  charts["U3"] = {"p013", "p023", "p123"};
  return Nerve(pts, charts);
}

// Circle pattern: `n` charts in a cycle, consecutive overlaps single
// points, one overlap split into two components when n == 2.
inline Nerve circle_nerve(std::size_t n) {
  if (n < 2) fail("SchemaError", "circle nerve needs >= 2 charts");
  std::vector<std::string> pts;
  std::map<std::string, std::vector<std::string>> charts;
  std::map<std::pair<std::string, std::string>, std::vector<std::vector<std::string>>> marks;
  if (n == 2) {
    pts = {"a", "b", "x0", "x1"};
    charts["U0"] = {"a", "x0", "b"};
    charts["U1"] = {"a", "x1", "b"};
    marks[{"U0", "U1"}] = {{"a"}, {"b"}};
    return Nerve(pts, charts, marks);
  }
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back("c" + std::to_string(i));          // interior of chart i
    pts.push_back("o" + std::to_string(i));          // overlap i,(i+1)
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::string prev = "o" + std::to_string((i + n - 1) % n);
    charts["U" + std::to_string(i)] = {prev, "c" + std::to_string(i), "o" + std::to_string(i)};
  }
  return Nerve(pts, charts);
}

// Minimal triangulation of the projective plane, presented as the vertex
// star cover: 6 charts, nerve = RP^2. The one finite pattern in the corpus
// whose Z/4-over-Z/2 lifting problem genuinely obstructs.
inline Nerve projective_plane_nerve() {
  // faces of the 6-vertex triangulation RP^2_6 (icosahedron antipodal
  // quotient); every edge lies in exactly two faces, Euler characteristic 1
  static const int faces[10][3] = {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5},
                                   {0, 1, 5}, {1, 2, 4}, {2, 3, 5}, {1, 3, 4},
                                   {2, 4, 5}, {1, 3, 5}};
  // charts = vertex stars, points = face tokens
  std::vector<std::string> pts;
  std::map<std::string, std::vector<std::string>> charts;
  for (int f = 0; f < 10; ++f) {
    std::string token = "f" + std::to_string(f);
    pts.push_back(token);
    for (int v : faces[f]) charts["U" + std::to_string(v)].push_back(token);
  }
  return Nerve(pts, charts);
}

}  // namespace xmodkit::site

#endif  // XMODKIT_SITE_NERVE_HPP_
