// Couplings, Lie derivation laws, curvature, the central representation
// and the construction principle producing a coupling crossed module
// from a derivation law.

#ifndef XMODKIT_LIE_COUPLING_HPP_
#define XMODKIT_LIE_COUPLING_HPP_

#include "xmodkit/lie/ce.hpp"
#include "xmodkit/lie/xmod.hpp"

namespace xmodkit::lie {

struct Coupling {
  LieAlgebra gbar;
  LieAlgebra k;
  DerivationAlgebra derk;  // Der(k) with ad(k) and OutDer(k) split out
  Matrix xi;               // OutDer coords x gbar.dim
};

inline Coupling make_coupling(LieAlgebra gbar, LieAlgebra k, Matrix xi) {
  Coupling c;
  c.gbar = std::move(gbar);
  c.k = std::move(k);
  c.derk = derivation_algebra(c.k);
  c.xi = std::move(xi);
  LieMap m{c.gbar, c.derk.out, c.xi};
  check_shape(m);
  if (!preserves_bracket(m))
    fail("SchemaError", "coupling does not preserve brackets into OutDer");
  return c;
}

// The zero coupling always exists.
inline Coupling zero_coupling(LieAlgebra gbar, LieAlgebra k) {
  LieAlgebra kk = k;
  DerivationAlgebra d = derivation_algebra(kk);
  Matrix xi(d.out.dim(), gbar.dim());
  Coupling c;
  c.gbar = std::move(gbar);
  c.k = std::move(kk);
  c.derk = std::move(d);
  c.xi = std::move(xi);
  return c;
}

struct DerivationLaw {
  Coupling coupling;
  std::vector<Matrix> nabla;  // per gbar basis element, a derivation of k
};

inline void check_law(const DerivationLaw& law) {
  const Coupling& c = law.coupling;
  if (law.nabla.size() != c.gbar.dim()) fail("DimensionMismatch", "derivation law size");
  for (std::size_t i = 0; i < law.nabla.size(); ++i) {
    if (!is_derivation(c.k, law.nabla[i]))
      fail("SchemaError", "law value is not a derivation of k");
    Vec der = c.derk.der_coords(law.nabla[i]);
    Vec out = c.derk.out_projection.apply(der);
    for (std::size_t r = 0; r < out.size(); ++r)
      if (out[r] != c.xi.at(r, i)) fail("SchemaError", "law does not cover the coupling");
  }
}

// Deterministic lift: the fixed linear section OutDer -> Der applied to Xi.
inline DerivationLaw canonical_law(const Coupling& c) {
  DerivationLaw law;
  law.coupling = c;
  for (std::size_t i = 0; i < c.gbar.dim(); ++i) {
    Vec xcol(c.xi.rows());
    for (std::size_t r = 0; r < c.xi.rows(); ++r) xcol[r] = c.xi.at(r, i);
    law.nabla.push_back(c.derk.der_matrix(c.derk.out_section.apply(xcol)));
  }
  check_law(law);
  return law;
}

// Same coupling, lift shifted by ad(offsets[i]); offsets live in k.
inline DerivationLaw law_with_offsets(const Coupling& c, const std::vector<Vec>& offsets) {
  DerivationLaw law = canonical_law(c);
  if (offsets.size() != law.nabla.size()) fail("DimensionMismatch", "offset count");
  for (std::size_t i = 0; i < offsets.size(); ++i)
    law.nabla[i] = law.nabla[i] + c.k.ad_matrix(offsets[i]);
  check_law(law);
  return law;
}

inline Matrix nabla_of(const DerivationLaw& law, const Vec& x) {
  Matrix out(law.coupling.k.dim(), law.coupling.k.dim());
  for (std::size_t i = 0; i < law.nabla.size(); ++i)
    if (!x[i].is_zero()) out = out + (x[i] * law.nabla[i]);
  return out;
}

// Central representation: restriction of any law to ZK, in ZK coordinates.
// Independence of the lift is asserted by recomputation with a second law
// whenever ad(k) is nonzero.
inline LieModule central_representation(const Coupling& c) {
  Subspace zk = center(c.k);
  DerivationLaw law = canonical_law(c);
  auto restrict_to_zk = [&](const Matrix& op) {
    Matrix m(zk.dim(), zk.dim());
    for (std::size_t j = 0; j < zk.dim(); ++j) {
      Vec img = op.apply(zk.basis[j]);
      auto coords = num::coordinates_in_span(zk.basis, img);
      if (!coords) fail("SchemaError", "law does not preserve the center");
      for (std::size_t i = 0; i < zk.dim(); ++i) m.at(i, j) = (*coords)[i];
    }
    return m;
  };
  LieModule mod;
  mod.algebra = c.gbar;
  mod.vdim = zk.dim();
  for (std::size_t i = 0; i < c.gbar.dim(); ++i) mod.action.push_back(restrict_to_zk(law.nabla[i]));

  if (!c.derk.ad_span.basis.empty()) {
    std::vector<Vec> offsets(c.gbar.dim(), c.k.unit(0));
    DerivationLaw other = law_with_offsets(c, offsets);
    for (std::size_t i = 0; i < c.gbar.dim(); ++i)
      if (!(restrict_to_zk(other.nabla[i]) == mod.action[i]))
        fail("SchemaError", "central representation depends on the lift");
  }
  if (!mod.is_representation())
    fail("SchemaError", "central restriction is not a representation");
  return mod;
}

struct CurvatureReport {
  // R(X_a, X_b) for a < b, as derivations of k (paper sign:
  // nabla_{[X,Y]} - [nabla_X, nabla_Y])
  std::vector<std::vector<Matrix>> r;  // r[a][b], a < b
  bool values_in_ad = false;
  bool companion_rbar_matches = false;  // R_{nabla-bar} = ad o R_nabla
  bool companion_bianchi = false;       // nabla-bar(R_nabla) = 0
};

inline Matrix curvature_at(const DerivationLaw& law, std::size_t a, std::size_t b) {
  const LieAlgebra& g = law.coupling.gbar;
  Matrix comm = law.nabla[a] * law.nabla[b] - law.nabla[b] * law.nabla[a];
  return nabla_of(law, g.bracket(g.unit(a), g.unit(b))) - comm;
}

inline Matrix curvature_vec(const DerivationLaw& law, const Vec& x, const Vec& y) {
  const LieAlgebra& g = law.coupling.gbar;
  Matrix nx = nabla_of(law, x), ny = nabla_of(law, y);
  return nabla_of(law, g.bracket(x, y)) - (nx * ny - ny * nx);
}

inline CurvatureReport curvature(const DerivationLaw& law) {
  check_law(law);
  const Coupling& c = law.coupling;
  std::size_t n = c.gbar.dim();
  CurvatureReport rep;
  rep.r.assign(n, std::vector<Matrix>(n));
  rep.values_in_ad = true;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      rep.r[a][b] = curvature_at(law, a, b);
      if (!c.derk.ad_span.contains(c.derk.der_coords(rep.r[a][b]))) rep.values_in_ad = false;
    }

  // R_{nabla-bar}(X,Y)(ad_V) = [R_nabla(X,Y), ad_V] as operators on k
  rep.companion_rbar_matches = true;
  for (std::size_t a = 0; a < n && rep.companion_rbar_matches; ++a)
    for (std::size_t b = 0; b < n && rep.companion_rbar_matches; ++b)
      for (std::size_t v = 0; v < c.k.dim(); ++v) {
        Matrix adv = c.k.ad_matrix(c.k.unit(v));
        // nabla-bar_X(ad_V) = ad_{nabla_X V}; expand the curvature of
        // nabla-bar applied to ad_V directly
        const LieAlgebra& g = c.gbar;
        Vec bab = g.bracket(g.unit(a), g.unit(b));
        Matrix term1 = c.k.ad_matrix(nabla_of(law, bab).apply(c.k.unit(v)));
        Matrix term2 = c.k.ad_matrix(law.nabla[a].apply(law.nabla[b].apply(c.k.unit(v))));
        Matrix term3 = c.k.ad_matrix(law.nabla[b].apply(law.nabla[a].apply(c.k.unit(v))));
        Matrix lhs = term1 - (term2 - term3);
        Matrix rhs = rep.r[a][b] * adv - adv * rep.r[a][b];
        if (!(lhs == rhs)) rep.companion_rbar_matches = false;
      }

  // Bianchi: nabla-bar_X R(Y,Z) - ... - R([X,Y],Z) + R([X,Z],Y) - R([Y,Z],X) = 0
  rep.companion_bianchi = true;
  const LieAlgebra& g = c.gbar;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      for (std::size_t z = y + 1; z < n; ++z) {
        auto cov = [&](std::size_t i, std::size_t a, std::size_t b) {
          Matrix r = rep.r[a][b];
          return law.nabla[i] * r - r * law.nabla[i];
        };
        Matrix acc = cov(x, y, z) - cov(y, x, z) + cov(z, x, y);
        acc = acc - curvature_vec(law, g.bracket(g.unit(x), g.unit(y)), g.unit(z));
        acc = acc + curvature_vec(law, g.bracket(g.unit(x), g.unit(z)), g.unit(y));
        acc = acc - curvature_vec(law, g.bracket(g.unit(y), g.unit(z)), g.unit(x));
        if (!acc.is_zero()) rep.companion_bianchi = false;
      }
  return rep;
}

struct CouplingConstruction {
  LieAlgebra total;     // gbar + ad(k) with the construction bracket
  LieXMod xmod;         // <k, tau, total, rho>
  std::size_t gbar_dim = 0;
};

// The construction principle: the bracket
//   [X + ad_V, Y + ad_W] = [X,Y] + { ad_{nabla_X W} - ad_{nabla_Y V}
//                                    + ad_{[V,W]} - R(X,Y) }
// on gbar + ad(k), with tau(V) = 0 + ad_V and rho(X + ad_V) = nabla_X + ad_V.
inline CouplingConstruction construct_from_coupling(const DerivationLaw& law) {
  check_law(law);
  const Coupling& c = law.coupling;
  const DerivationAlgebra& dk = c.derk;
  std::size_t gn = c.gbar.dim();
  std::size_t an = dk.ad_span.dim();

  // preimages w_t of the ad(k) basis, deterministic
  std::vector<Vec> pre;
  {
    std::size_t n = c.k.dim();
    Matrix admap(dk.der.dim(), n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t r = 0; r < dk.der.dim(); ++r) admap.at(r, i) = dk.ad_image[i][r];
    for (std::size_t t = 0; t < an; ++t) {
      auto w = num::solve(admap, dk.ad_span.basis[t]);
      if (!w) fail("SchemaError", "ad basis without preimage");
      pre.push_back(*w);
    }
  }

  auto ad_coords = [&](const Vec& v_in_k) {
    Vec der(dk.der.dim());
    for (std::size_t i = 0; i < c.k.dim(); ++i)
      if (!v_in_k[i].is_zero())
        for (std::size_t r = 0; r < dk.der.dim(); ++r) der[r] += v_in_k[i] * dk.ad_image[i][r];
    auto coords = num::coordinates_in_span(dk.ad_span.basis, der);
    if (!coords) fail("SchemaError", "ad value outside ad span");
    return *coords;
  };

  std::vector<std::string> names;
  for (const auto& s : c.gbar.basis()) names.push_back("g." + s);
  for (std::size_t t = 0; t < an; ++t) names.push_back("ad." + std::to_string(t));

  std::size_t total = gn + an;
  std::vector<std::vector<Vec>> brk(total, std::vector<Vec>(total, Vec(total)));
  auto put = [&](std::size_t i, std::size_t j, const Vec& gpart, const Vec& apart) {
    Vec v(total);
    for (std::size_t t = 0; t < gn; ++t) v[t] = gpart[t];
    for (std::size_t t = 0; t < an; ++t) v[gn + t] = apart[t];
    brk[i][j] = v;
    for (auto& x : v) x = -x;
    brk[j][i] = v;
  };

  CurvatureReport rep = curvature(law);
  if (!rep.values_in_ad) fail("SchemaError", "curvature not in ad(k)");
  for (std::size_t a = 0; a < gn; ++a)
    for (std::size_t b = a + 1; b < gn; ++b) {
      Vec gpart = c.gbar.bracket(c.gbar.unit(a), c.gbar.unit(b));
      auto rc = num::coordinates_in_span(dk.ad_span.basis, dk.der_coords(rep.r[a][b]));
      Vec apart(an);
      for (std::size_t t = 0; t < an; ++t) apart[t] = -(*rc)[t];
      put(a, b, gpart, apart);
    }
  for (std::size_t a = 0; a < gn; ++a)
    for (std::size_t t = 0; t < an; ++t)
      put(a, gn + t, Vec(gn), ad_coords(law.nabla[a].apply(pre[t])));
  for (std::size_t s = 0; s < an; ++s)
    for (std::size_t t = s + 1; t < an; ++t)
      put(gn + s, gn + t, Vec(gn), ad_coords(c.k.bracket(pre[s], pre[t])));

  CouplingConstruction out;
  out.gbar_dim = gn;
  out.total = LieAlgebra(names, brk);  // throws JacobiFailure if the display is wrong

  // tau and rho
  Matrix tau(total, c.k.dim());
  for (std::size_t i = 0; i < c.k.dim(); ++i) {
    Vec coords = ad_coords(c.k.unit(i));
    for (std::size_t t = 0; t < an; ++t) tau.at(gn + t, i) = coords[t];
  }
  Matrix rho(dk.der.dim(), total);
  for (std::size_t a = 0; a < gn; ++a) {
    Vec d = dk.der_coords(law.nabla[a]);
    for (std::size_t r = 0; r < dk.der.dim(); ++r) rho.at(r, a) = d[r];
  }
  for (std::size_t t = 0; t < an; ++t)
    for (std::size_t r = 0; r < dk.der.dim(); ++r) rho.at(r, gn + t) = dk.ad_span.basis[t][r];

  out.xmod = make_liexmod(c.k, out.total, std::move(tau), std::move(rho), dk);
  return out;
}

// The coupling induced by a coupling construction must be the one we
// started from: project rho on the gbar part back to OutDer.
inline bool induced_coupling_matches(const CouplingConstruction& cc, const Coupling& c) {
  for (std::size_t a = 0; a < cc.gbar_dim; ++a) {
    Vec der(c.derk.der.dim());
    for (std::size_t r = 0; r < der.size(); ++r) der[r] = cc.xmod.rho.matrix.at(r, a);
    Vec out = c.derk.out_projection.apply(der);
    for (std::size_t r = 0; r < out.size(); ++r)
      if (out[r] != c.xi.at(r, a)) return false;
  }
  return true;
}

}  // namespace xmodkit::lie

#endif  // XMODKIT_LIE_COUPLING_HPP_
