// Finite-dimensional Lie algebras over exact rationals: structure
// constants, centers, ideals, quotients, derivation algebras and the
// inner/outer splitting ad(k) <= Der(k) -> OutDer(k).
//
// The base is a point throughout: Lie algebroids become Lie algebras,
// CDO[K] becomes Der(k), OutDO[K] becomes Der(k)/ad(k).

#ifndef XMODKIT_LIE_ALGEBRA_HPP_
#define XMODKIT_LIE_ALGEBRA_HPP_

#include <string>
#include <vector>

#include "xmodkit/num/matrix.hpp"

namespace xmodkit::lie {

using num::Matrix;
using num::Rational;
using num::Vec;

class LieAlgebra {
 public:
  LieAlgebra() = default;

  // brackets[i][j] = coordinates of [e_i, e_j]; antisymmetry and Jacobi
  // are checked on construction over all basis tuples.
  LieAlgebra(std::vector<std::string> basis, std::vector<std::vector<Vec>> brackets)
      : basis_(std::move(basis)), brk_(std::move(brackets)) {
    std::size_t n = basis_.size();
    if (brk_.size() != n) fail("DimensionMismatch", "bracket table rows");
    for (const auto& row : brk_) {
      if (row.size() != n) fail("DimensionMismatch", "bracket table cols");
      for (const auto& v : row)
        if (v.size() != n) fail("DimensionMismatch", "bracket value size");
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (brk_[i][j][k] != -brk_[j][i][k])
            fail("SchemaError", "bracket not antisymmetric at (" + basis_[i] + "," + basis_[j] + ")");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          Vec s = bracket(unit(i), brk_[j][k]);
          Vec t = bracket(brk_[i][j], unit(k));
          Vec u = bracket(unit(j), brk_[i][k]);
          // [x,[y,z]] = [[x,y],z] + [y,[x,z]]
          for (std::size_t c = 0; c < n; ++c)
            if (s[c] - t[c] - u[c] != Rational(0))
              fail("JacobiFailure", "Jacobi fails at (" + basis_[i] + "," + basis_[j] + "," +
                                        basis_[k] + ")");
        }
  }

  std::size_t dim() const { return basis_.size(); }
  const std::vector<std::string>& basis() const { return basis_; }

  Vec unit(std::size_t i) const {
    Vec v(dim());
    v[i] = 1;
    return v;
  }

  Vec bracket(const Vec& x, const Vec& y) const {
    std::size_t n = dim();
    if (x.size() != n || y.size() != n) fail("DimensionMismatch", "bracket arguments");
    Vec out(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (y[j].is_zero()) continue;
        Rational c = x[i] * y[j];
        for (std::size_t k = 0; k < n; ++k) out[k] += c * brk_[i][j][k];
      }
    }
    return out;
  }

  // matrix of ad_v = [v, .]
  Matrix ad_matrix(const Vec& v) const {
    std::size_t n = dim();
    Matrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      Vec col = bracket(v, unit(j));
      for (std::size_t i = 0; i < n; ++i) m.at(i, j) = col[i];
    }
    return m;
  }

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
    return a.basis_ == b.basis_ && a.brk_ == b.brk_;
  }

 private:
  std::vector<std::string> basis_;
  std::vector<std::vector<Vec>> brk_;
};

// --- subspaces ----------------------------------------------------------

// A subspace given by a basis of coordinate vectors in the ambient algebra.
struct Subspace {
  std::vector<Vec> basis;

  std::size_t dim() const { return basis.size(); }
  bool contains(const Vec& v) const {
    return num::coordinates_in_span(basis, v).has_value();
  }
};

inline Subspace center(const LieAlgebra& g) {
  // [z, e_i] = 0 for all i
  std::size_t n = g.dim();
  Matrix sys(n * n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Matrix ad = g.ad_matrix(g.unit(i));
    // [z, e_i] = -ad_{e_i}(z)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) sys.at(i * n + r, c) = ad.at(r, c);
  }
  Subspace out;
  out.basis = num::nullspace(sys);
  return out;
}

inline bool is_ideal(const LieAlgebra& g, const Subspace& s) {
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (const Vec& v : s.basis)
      if (!s.contains(g.bracket(g.unit(i), v))) return false;
  return true;
}

inline bool is_subalgebra(const LieAlgebra& g, const Subspace& s) {
  for (const Vec& a : s.basis)
    for (const Vec& b : s.basis)
      if (!s.contains(g.bracket(a, b))) return false;
  return true;
}

// Deterministic complement: extend span(s) by standard basis vectors in
// order; returns the indices chosen.
inline std::vector<std::size_t> complement_indices(const LieAlgebra& g, const Subspace& s) {
  std::vector<Vec> span = s.basis;
  std::vector<std::size_t> picked;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    Vec e = g.unit(i);
    if (!num::coordinates_in_span(span, e).has_value()) {
      span.push_back(e);
      picked.push_back(i);
    }
  }
  return picked;
}

struct QuotientAlgebra {
  LieAlgebra algebra;   // the quotient
  Matrix projection;    // ambient coords -> quotient coords
  Matrix section;       // quotient coords -> ambient coords (chosen complement)
};

// Quotient by an ideal; the quotient basis is the chosen complement,
// with names inherited and bracketed as classes.
inline QuotientAlgebra quotient(const LieAlgebra& g, const Subspace& ideal,
                                const std::string& suffix = "~") {
  if (!is_ideal(g, ideal)) fail("NotAnIdeal", "quotient by a non-ideal");
  std::vector<std::size_t> comp = complement_indices(g, ideal);
  std::size_t q = comp.size(), n = g.dim();

  // projection: solve v = sum(ideal basis) + sum(complement units)
  std::vector<Vec> full = ideal.basis;
  for (std::size_t i : comp) full.push_back(g.unit(i));
  Matrix proj(q, n);
  for (std::size_t col = 0; col < n; ++col) {
    auto coords = num::coordinates_in_span(full, g.unit(col));
    if (!coords) fail("DimensionMismatch", "ideal + complement does not span");
    for (std::size_t r = 0; r < q; ++r) proj.at(r, col) = (*coords)[ideal.dim() + r];
  }
  Matrix sect(n, q);
  for (std::size_t c = 0; c < q; ++c) sect.at(comp[c], c) = 1;

  std::vector<std::string> names;
  for (std::size_t i : comp) names.push_back(g.basis()[i] + suffix);
  std::vector<std::vector<Vec>> brk(q, std::vector<Vec>(q));
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j)
      brk[i][j] = proj.apply(g.bracket(g.unit(comp[i]), g.unit(comp[j])));

  QuotientAlgebra out;
  out.algebra = LieAlgebra(names, brk);
  out.projection = std::move(proj);
  out.section = std::move(sect);
  return out;
}

// --- derivations --------------------------------------------------------

// Der(k) realized both as concrete matrices and as a Lie algebra under
// commutator; ad(k) sits inside with a deterministic complement giving
// OutDer(k) = Der(k)/ad(k).
struct DerivationAlgebra {
  LieAlgebra base;                 // k
  std::vector<Matrix> der_basis;   // basis of Der(k)
  LieAlgebra der;                  // Der(k) with commutator bracket
  std::vector<Vec> ad_image;       // ad_{e_i} in Der coordinates, per k basis
  Subspace ad_span;                // span of ad(k) inside Der coords
  LieAlgebra out;                  // OutDer(k)
  Matrix out_projection;           // Der coords -> OutDer coords
  Matrix out_section;              // OutDer coords -> Der coords

  Vec der_coords(const Matrix& d) const {
    std::vector<Vec> flat;
    for (const Matrix& b : der_basis) flat.push_back(flatten(b));
    auto c = num::coordinates_in_span(flat, flatten(d));
    if (!c) fail("SchemaError", "matrix is not a derivation");
    return *c;
  }
  Matrix der_matrix(const Vec& coords) const {
    std::size_t n = base.dim();
    Matrix m(n, n);
    for (std::size_t t = 0; t < der_basis.size(); ++t)
      if (!coords[t].is_zero()) m = m + (coords[t] * der_basis[t]);
    return m;
  }

  static Vec flatten(const Matrix& m) {
    Vec v;
    v.reserve(m.rows() * m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) v.push_back(m.at(r, c));
    return v;
  }
};

inline bool is_derivation(const LieAlgebra& g, const Matrix& d) {
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = 0; j < g.dim(); ++j) {
      Vec lhs = d.apply(g.bracket(g.unit(i), g.unit(j)));
      Vec a = g.bracket(d.apply(g.unit(i)), g.unit(j));
      Vec b = g.bracket(g.unit(i), d.apply(g.unit(j)));
      for (std::size_t k = 0; k < g.dim(); ++k)
        if (lhs[k] != a[k] + b[k]) return false;
    }
  return true;
}

inline DerivationAlgebra derivation_algebra(const LieAlgebra& g) {
  std::size_t n = g.dim();
  // D[e_i,e_j] = [D e_i, e_j] + [e_i, D e_j]: linear in the n^2 entries of D
  Matrix sys(n * n * n, n * n);
  std::size_t row = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec bij = g.bracket(g.unit(i), g.unit(j));
      for (std::size_t k = 0; k < n; ++k, ++row) {
        // coefficient of D_{k', c}: D applied to [e_i,e_j] contributes at k
        for (std::size_t c = 0; c < n; ++c) sys.at(row, k * n + c) += bij[c];
        // -[D e_i, e_j]_k: D e_i = sum_r D_{r,i} e_r
        for (std::size_t r = 0; r < n; ++r) {
          Vec br = g.bracket(g.unit(r), g.unit(j));
          sys.at(row, r * n + i) -= br[k];
          Vec br2 = g.bracket(g.unit(i), g.unit(r));
          sys.at(row, r * n + j) -= br2[k];
        }
      }
    }
  DerivationAlgebra out;
  out.base = g;
  for (const Vec& v : num::nullspace(sys)) {
    Matrix d(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) d.at(r, c) = v[r * n + c];
    out.der_basis.push_back(std::move(d));
  }

  std::size_t m = out.der_basis.size();
  std::vector<Vec> flat;
  for (const Matrix& b : out.der_basis) flat.push_back(DerivationAlgebra::flatten(b));
  std::vector<std::string> names;
  for (std::size_t t = 0; t < m; ++t) names.push_back("D" + std::to_string(t));
  std::vector<std::vector<Vec>> brk(m, std::vector<Vec>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Matrix comm = out.der_basis[i] * out.der_basis[j] - out.der_basis[j] * out.der_basis[i];
      auto c = num::coordinates_in_span(flat, DerivationAlgebra::flatten(comm));
      if (!c) fail("SchemaError", "derivations not closed under commutator");
      brk[i][j] = *c;
    }
  out.der = LieAlgebra(names, brk);

  for (std::size_t i = 0; i < n; ++i)
    out.ad_image.push_back(out.der_coords(g.ad_matrix(g.unit(i))));
  {
    num::Matrix adm(m, n);
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t r = 0; r < m; ++r) adm.at(r, c) = out.ad_image[c][r];
    // independent basis of the ad image
    num::Rref rr = num::rref(adm);
    for (std::size_t p : rr.pivots) out.ad_span.basis.push_back(out.ad_image[p]);
  }
  QuotientAlgebra q = quotient(out.der, out.ad_span, "^");
  out.out = q.algebra;
  out.out_projection = q.projection;
  out.out_section = q.section;
  return out;
}

// --- builders -----------------------------------------------------------

inline LieAlgebra abelian(std::size_t n) {
  std::vector<std::string> basis;
  for (std::size_t i = 0; i < n; ++i) basis.push_back("t" + std::to_string(i));
  std::vector<std::vector<Vec>> brk(n, std::vector<Vec>(n, Vec(n)));
  return LieAlgebra(basis, brk);
}

inline LieAlgebra sl2() {
  // basis e, f, h: [h,e] = 2e, [h,f] = -2f, [e,f] = h
  std::vector<std::string> basis{"e", "f", "h"};
  std::vector<std::vector<Vec>> brk(3, std::vector<Vec>(3, Vec(3)));
  auto set = [&](std::size_t i, std::size_t j, Vec v) {
    brk[i][j] = v;
    for (auto& x : v) x = -x;
    brk[j][i] = v;
  };
  set(2, 0, {Rational(2), Rational(0), Rational(0)});   // [h,e] = 2e
  set(2, 1, {Rational(0), Rational(-2), Rational(0)});  // [h,f] = -2f
  set(0, 1, {Rational(0), Rational(0), Rational(1)});   // [e,f] = h
  return LieAlgebra(basis, brk);
}

inline LieAlgebra heisenberg3() {
  // [x,y] = z, z central
  std::vector<std::string> basis{"x", "y", "z"};
  std::vector<std::vector<Vec>> brk(3, std::vector<Vec>(3, Vec(3)));
  brk[0][1] = {Rational(0), Rational(0), Rational(1)};
  brk[1][0] = {Rational(0), Rational(0), Rational(-1)};
  return LieAlgebra(basis, brk);
}

inline LieAlgebra gl2() {
  // basis E11, E12, E21, E22 with commutator bracket
  auto unit = [](std::size_t r, std::size_t c) {
    Matrix m(2, 2);
    m.at(r, c) = 1;
    return m;
  };
  std::vector<Matrix> mats{unit(0, 0), unit(0, 1), unit(1, 0), unit(1, 1)};
  std::vector<std::string> basis{"E11", "E12", "E21", "E22"};
  std::vector<std::vector<Vec>> brk(4, std::vector<Vec>(4, Vec(4)));
  auto coords = [&](const Matrix& m) {
    return Vec{m.at(0, 0), m.at(0, 1), m.at(1, 0), m.at(1, 1)};
  };
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      brk[i][j] = coords(mats[i] * mats[j] - mats[j] * mats[i]);
  return LieAlgebra(basis, brk);
}

// Nonabelian 2-dim algebra: [a, b] = b.
inline LieAlgebra affine2() {
  std::vector<std::string> basis{"a", "b"};
  std::vector<std::vector<Vec>> brk(2, std::vector<Vec>(2, Vec(2)));
  brk[0][1] = {Rational(0), Rational(1)};
  brk[1][0] = {Rational(0), Rational(-1)};
  return LieAlgebra(basis, brk);
}

inline LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  std::size_t n = a.dim(), m = b.dim();
  std::vector<std::string> basis;
  for (const auto& s : a.basis()) basis.push_back("l." + s);
  for (const auto& s : b.basis()) basis.push_back("r." + s);
  std::vector<std::vector<Vec>> brk(n + m, std::vector<Vec>(n + m, Vec(n + m)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec v = a.bracket(a.unit(i), a.unit(j));
      for (std::size_t k = 0; k < n; ++k) brk[i][j][k] = v[k];
    }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Vec v = b.bracket(b.unit(i), b.unit(j));
      for (std::size_t k = 0; k < m; ++k) brk[n + i][n + j][n + k] = v[k];
    }
  return LieAlgebra(basis, brk);
}

}  // namespace xmodkit::lie

#endif  // XMODKIT_LIE_ALGEBRA_HPP_
