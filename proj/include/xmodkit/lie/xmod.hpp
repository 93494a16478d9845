// Crossed modules of Lie algebras: validation of the two Peiffer-type
// conditions, kernel/image/cokernel data, the induced representation on
// the kernel, and the two standard sources of crossed modules (adjoint
// quotients and extensions with a chosen central ideal).

#ifndef XMODKIT_LIE_XMOD_HPP_
#define XMODKIT_LIE_XMOD_HPP_

#include <optional>
#include <string>

#include "xmodkit/lie/ce.hpp"
#include "xmodkit/lie/maps.hpp"

namespace xmodkit::lie {

struct LieXMod {
  LieAlgebra k;
  LieAlgebra g;
  LieMap tau;              // k -> g
  LieMap rho;              // g -> Der(k), in derk.der coordinates
  DerivationAlgebra derk;  // Der(k) with ad and OutDer split

  Matrix rho_matrix_of(const Vec& x) const {
    return derk.der_matrix(rho.matrix.apply(x));
  }
};

inline LieXMod make_liexmod(LieAlgebra k, LieAlgebra g, Matrix tau, Matrix rho,
                            std::optional<DerivationAlgebra> derk = std::nullopt) {
  LieXMod x;
  x.k = std::move(k);
  x.g = std::move(g);
  x.derk = derk ? std::move(*derk) : derivation_algebra(x.k);
  x.tau = LieMap{x.k, x.g, std::move(tau)};
  x.rho = LieMap{x.g, x.derk.der, std::move(rho)};
  check_shape(x.tau);
  check_shape(x.rho);
  return x;
}

struct ConditionReport {
  std::string name;
  bool ok = false;
  std::string witness;  // offending basis tuple when !ok
};

struct LieXModReport {
  bool valid = false;
  std::vector<ConditionReport> conditions;
  Subspace kernel_tau;
  Subspace image_tau;
  QuotientAlgebra cokernel;
  LieModule induced;  // rho^{ker tau}: cokernel-module structure on ker tau
  bool is_coupling = false;  // ker tau = ZK
  bool induced_well_defined = false;
};

inline LieXModReport validate_liexmod(const LieXMod& x) {
  LieXModReport rep;
  auto add = [&](std::string name, bool ok, std::string witness = "") {
    rep.conditions.push_back({std::move(name), ok, std::move(witness)});
  };

  add("tau preserves brackets", preserves_bracket(x.tau));
  add("rho preserves brackets", preserves_bracket(x.rho));

  // (i) rho(tau(V))(W) = [V, W]
  {
    bool ok = true;
    std::string wit;
    for (std::size_t v = 0; v < x.k.dim() && ok; ++v) {
      Matrix op = x.rho_matrix_of(x.tau(x.k.unit(v)));
      for (std::size_t w = 0; w < x.k.dim() && ok; ++w)
        if (op.apply(x.k.unit(w)) != x.k.bracket(x.k.unit(v), x.k.unit(w))) {
          ok = false;
          wit = "(" + x.k.basis()[v] + "," + x.k.basis()[w] + ")";
        }
    }
    add("rho(tau(V))(W) = [V,W]", ok, wit);
  }
  // (ii) tau(rho(X)(V)) = [X, tau(V)]
  {
    bool ok = true;
    std::string wit;
    for (std::size_t a = 0; a < x.g.dim() && ok; ++a) {
      Matrix op = x.rho_matrix_of(x.g.unit(a));
      for (std::size_t v = 0; v < x.k.dim() && ok; ++v)
        if (x.tau(op.apply(x.k.unit(v))) != x.g.bracket(x.g.unit(a), x.tau(x.k.unit(v)))) {
          ok = false;
          wit = "(" + x.g.basis()[a] + "," + x.k.basis()[v] + ")";
        }
    }
    add("tau(rho(X)(V)) = [X,tau(V)]", ok, wit);
  }

  rep.kernel_tau = kernel(x.tau);
  rep.image_tau = image(x.tau);

  Subspace zk = center(x.k);
  {
    bool ok = true;
    for (const Vec& v : rep.kernel_tau.basis)
      if (!zk.contains(v)) ok = false;
    add("ker tau inside ZK", ok);
    rep.is_coupling = ok && rep.kernel_tau.dim() == zk.dim();
  }
  add("im tau is an ideal", is_ideal(x.g, rep.image_tau));

  rep.valid = true;
  for (const auto& c : rep.conditions) rep.valid = rep.valid && c.ok;
  if (!rep.valid) return rep;

  rep.cokernel = quotient(x.g, rep.image_tau);

  // induced representation of the cokernel on ker tau, with the section
  // independence exercised by shifting sections through tau
  std::size_t kd = rep.kernel_tau.dim();
  rep.induced.algebra = rep.cokernel.algebra;
  rep.induced.vdim = kd;
  rep.induced_well_defined = true;
  for (std::size_t q = 0; q < rep.cokernel.algebra.dim(); ++q) {
    Vec sect = rep.cokernel.section.apply(rep.cokernel.algebra.unit(q));
    Matrix op = x.rho_matrix_of(sect);
    Matrix m(kd, kd);
    for (std::size_t j = 0; j < kd; ++j) {
      Vec img = op.apply(rep.kernel_tau.basis[j]);
      auto coords = num::coordinates_in_span(rep.kernel_tau.basis, img);
      if (!coords) {
        rep.induced_well_defined = false;
        break;
      }
      for (std::size_t i = 0; i < kd; ++i) m.at(i, j) = (*coords)[i];
    }
    if (!rep.induced_well_defined) break;
    rep.induced.action.push_back(m);

    // shifted section: adding tau(V) must not change the action on ker tau
    for (std::size_t v = 0; v < x.k.dim(); ++v) {
      Vec shifted = sect;
      Vec tv = x.tau(x.k.unit(v));
      for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] += tv[i];
      Matrix op2 = x.rho_matrix_of(shifted);
      for (std::size_t j = 0; j < kd; ++j)
        if (op2.apply(rep.kernel_tau.basis[j]) != op.apply(rep.kernel_tau.basis[j]))
          rep.induced_well_defined = false;
    }
  }
  if (rep.induced_well_defined && kd > 0 && !rep.induced.is_representation())
    rep.induced_well_defined = false;
  return rep;
}

// --- adjoint quotient (section-3 skeleton) ------------------------------

// From an algebra and an ideal l: the coupling crossed module
// <L, tau, A/ZL, rho> with ZL the center of l, tau the class map and rho
// the bracket action.
inline LieXMod adjoint_quotient_xmod(const LieAlgebra& a, const Subspace& l) {
  if (!is_ideal(a, l)) fail("NotAnIdeal", "adjoint quotient needs an ideal");

  // L as an algebra on the ideal's basis
  std::size_t ld = l.dim();
  std::vector<std::string> lnames;
  for (std::size_t i = 0; i < ld; ++i) lnames.push_back("l" + std::to_string(i));
  std::vector<std::vector<Vec>> lbrk(ld, std::vector<Vec>(ld));
  for (std::size_t i = 0; i < ld; ++i)
    for (std::size_t j = 0; j < ld; ++j) {
      auto coords = num::coordinates_in_span(l.basis, a.bracket(l.basis[i], l.basis[j]));
      if (!coords) fail("NotAnIdeal", "ideal not closed under bracket");
      lbrk[i][j] = *coords;
    }
  LieAlgebra L(lnames, lbrk);

  // ZL = elements of l commuting with all of l (an ideal of a)
  Subspace zl_in_l = center(L);
  Subspace zl;
  for (const Vec& v : zl_in_l.basis) {
    Vec amb(a.dim());
    for (std::size_t i = 0; i < ld; ++i)
      for (std::size_t r = 0; r < a.dim(); ++r) amb[r] += v[i] * l.basis[i][r];
    zl.basis.push_back(amb);
  }
  QuotientAlgebra q = quotient(a, zl);

  // tau: L -> A/ZL
  Matrix tau(q.algebra.dim(), ld);
  for (std::size_t i = 0; i < ld; ++i) {
    Vec img = q.projection.apply(l.basis[i]);
    for (std::size_t r = 0; r < q.algebra.dim(); ++r) tau.at(r, i) = img[r];
  }

  // rho(<X>)(V) = [X, V], through the chosen section
  DerivationAlgebra derL = derivation_algebra(L);
  Matrix rho(derL.der.dim(), q.algebra.dim());
  for (std::size_t c = 0; c < q.algebra.dim(); ++c) {
    Vec sect = q.section.apply(q.algebra.unit(c));
    Matrix op(ld, ld);
    for (std::size_t j = 0; j < ld; ++j) {
      auto coords = num::coordinates_in_span(l.basis, a.bracket(sect, l.basis[j]));
      if (!coords) fail("NotAnIdeal", "bracket leaves the ideal");
      for (std::size_t i = 0; i < ld; ++i) op.at(i, j) = (*coords)[i];
    }
    Vec d = derL.der_coords(op);
    for (std::size_t r = 0; r < derL.der.dim(); ++r) rho.at(r, c) = d[r];
  }
  return make_liexmod(L, q.algebra, std::move(tau), std::move(rho), derL);
}

// --- crossed module from an extension with a central ideal --------------

struct LieExtension {
  LieAlgebra k;
  LieAlgebra a;
  LieAlgebra abar;
  LieMap iota;  // k -> a
  LieMap pi;    // a -> abar
};

inline void check_exact(const LieExtension& e) {
  check_shape(e.iota);
  check_shape(e.pi);
  if (!preserves_bracket(e.iota) || !preserves_bracket(e.pi))
    fail("NotExact", "extension maps must preserve brackets");
  if (kernel(e.iota).dim() != 0) fail("NotExact", "iota not injective");
  if (image(e.pi).dim() != e.abar.dim()) fail("NotExact", "pi not surjective");
  Subspace im = image(e.iota);
  Subspace ker = kernel(e.pi);
  if (im.dim() != ker.dim()) fail("NotExact", "im iota != ker pi");
  for (const Vec& v : im.basis)
    if (!ker.contains(v)) fail("NotExact", "im iota not inside ker pi");
}

// <K, tau^I, A/iota(I), rho^I> per the figure-3 construction.
inline LieXMod xmod_from_extension_with_ideal(const LieExtension& e, const Subspace& ideal_in_k) {
  check_exact(e);
  Subspace zk = center(e.k);
  for (const Vec& v : ideal_in_k.basis)
    if (!zk.contains(v)) fail("NotCentral", "ideal not inside ZK");

  // push the ideal into a and require invariance under the a-action
  Subspace ii;
  for (const Vec& v : ideal_in_k.basis) ii.basis.push_back(e.iota(v));
  for (std::size_t i = 0; i < e.a.dim(); ++i)
    for (const Vec& v : ii.basis)
      if (!ii.contains(e.a.bracket(e.a.unit(i), v)))
        fail("NotAnIdeal", "chosen ideal is not invariant under the ambient action");

  QuotientAlgebra q = ii.basis.empty()
                          ? QuotientAlgebra{e.a, Matrix::identity(e.a.dim()),
                                            Matrix::identity(e.a.dim())}
                          : quotient(e.a, ii);

  Matrix tau(q.algebra.dim(), e.k.dim());
  for (std::size_t i = 0; i < e.k.dim(); ++i) {
    Vec img = q.projection.apply(e.iota(e.k.unit(i)));
    for (std::size_t r = 0; r < q.algebra.dim(); ++r) tau.at(r, i) = img[r];
  }

  // rho^I(<X>)(V) = iota^{-1}[X, iota V]
  DerivationAlgebra derK = derivation_algebra(e.k);
  std::vector<Vec> iota_cols;
  for (std::size_t i = 0; i < e.k.dim(); ++i) iota_cols.push_back(e.iota(e.k.unit(i)));
  Matrix rho(derK.der.dim(), q.algebra.dim());
  for (std::size_t c = 0; c < q.algebra.dim(); ++c) {
    Vec sect = q.section.apply(q.algebra.unit(c));
    Matrix op(e.k.dim(), e.k.dim());
    for (std::size_t j = 0; j < e.k.dim(); ++j) {
      Vec br = e.a.bracket(sect, iota_cols[j]);
      auto coords = num::coordinates_in_span(iota_cols, br);
      if (!coords) fail("NotExact", "[A, iota(K)] escapes iota(K)");
      for (std::size_t i = 0; i < e.k.dim(); ++i) op.at(i, j) = (*coords)[i];
    }
    Vec d = derK.der_coords(op);
    for (std::size_t r = 0; r < derK.der.dim(); ++r) rho.at(r, c) = d[r];
  }
  return make_liexmod(e.k, q.algebra, std::move(tau), std::move(rho), derK);
}

}  // namespace xmodkit::lie

#endif  // XMODKIT_LIE_XMOD_HPP_
