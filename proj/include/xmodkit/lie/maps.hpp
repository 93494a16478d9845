// Linear maps between Lie algebras, with optional bracket-preservation
// checking. A representation valued in Der(k) is a LieMap into the
// derivation algebra's coordinates.

#ifndef XMODKIT_LIE_MAPS_HPP_
#define XMODKIT_LIE_MAPS_HPP_

#include "xmodkit/lie/algebra.hpp"

namespace xmodkit::lie {

struct LieMap {
  LieAlgebra source;
  LieAlgebra target;
  Matrix matrix;  // target.dim x source.dim

  Vec operator()(const Vec& v) const { return matrix.apply(v); }
};

inline void check_shape(const LieMap& f) {
  if (f.matrix.rows() != f.target.dim() || f.matrix.cols() != f.source.dim())
    fail("DimensionMismatch", "LieMap matrix shape");
}

inline bool preserves_bracket(const LieMap& f) {
  check_shape(f);
  for (std::size_t i = 0; i < f.source.dim(); ++i)
    for (std::size_t j = 0; j < f.source.dim(); ++j) {
      Vec lhs = f(f.source.bracket(f.source.unit(i), f.source.unit(j)));
      Vec rhs = f.target.bracket(f(f.source.unit(i)), f(f.source.unit(j)));
      if (lhs != rhs) return false;
    }
  return true;
}

inline LieMap compose(const LieMap& f, const LieMap& g) {
  // f after g
  if (!(g.target == f.source)) fail("DimensionMismatch", "LieMap composition");
  return LieMap{g.source, f.target, f.matrix * g.matrix};
}

inline Subspace kernel(const LieMap& f) {
  check_shape(f);
  Subspace s;
  s.basis = num::nullspace(f.matrix);
  return s;
}

inline Subspace image(const LieMap& f) {
  check_shape(f);
  std::vector<Vec> cols;
  for (std::size_t c = 0; c < f.matrix.cols(); ++c) {
    Vec v(f.matrix.rows());
    for (std::size_t r = 0; r < f.matrix.rows(); ++r) v[r] = f.matrix.at(r, c);
    cols.push_back(std::move(v));
  }
  Matrix m(f.matrix.rows(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < f.matrix.rows(); ++r) m.at(r, c) = cols[c][r];
  num::Rref rr = num::rref(m);
  Subspace s;
  for (std::size_t p : rr.pivots) s.basis.push_back(cols[p]);
  return s;
}

}  // namespace xmodkit::lie

#endif  // XMODKIT_LIE_MAPS_HPP_
