// Chevalley-Eilenberg cochains with coefficients in a module, the
// standard differential, cohomology dimensions by exact rank counting,
// and class comparison by linear solve.

#ifndef XMODKIT_LIE_CE_HPP_
#define XMODKIT_LIE_CE_HPP_

#include <map>

#include "xmodkit/lie/maps.hpp"

namespace xmodkit::lie {

// A finite-dimensional module over a Lie algebra: action[i] is the
// operator of the i-th basis element.
struct LieModule {
  LieAlgebra algebra;
  std::size_t vdim = 0;
  std::vector<Matrix> action;

  static LieModule trivial(const LieAlgebra& g, std::size_t vdim) {
    LieModule m;
    m.algebra = g;
    m.vdim = vdim;
    m.action.assign(g.dim(), Matrix(vdim, vdim));
    return m;
  }

  Matrix act(const Vec& x) const {
    Matrix out(vdim, vdim);
    for (std::size_t i = 0; i < algebra.dim(); ++i)
      if (!x[i].is_zero()) out = out + (x[i] * action[i]);
    return out;
  }

  bool is_representation() const {
    for (std::size_t i = 0; i < algebra.dim(); ++i)
      for (std::size_t j = 0; j < algebra.dim(); ++j) {
        Matrix lhs = act(algebra.bracket(algebra.unit(i), algebra.unit(j)));
        Matrix rhs = action[i] * action[j] - action[j] * action[i];
        if (!(lhs == rhs)) return false;
      }
    return true;
  }
};

// Increasing index tuples enumerated in lexicographic order.
inline std::vector<std::vector<std::size_t>> tuples(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> t(k);
  for (std::size_t i = 0; i < k; ++i) t[i] = i;
  for (;;) {
    out.push_back(t);
    std::size_t i = k;
    while (i > 0 && t[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++t[i - 1];
    for (std::size_t j = i; j < k; ++j) t[j] = t[j - 1] + 1;
  }
  if (k == 0) out.assign(1, {});
  return out;
}

class CECochain {
 public:
  CECochain() = default;
  CECochain(LieModule module, std::size_t degree)
      : module_(std::move(module)), degree_(degree), tuples_(tuples(module_.algebra.dim(), degree)) {
    values_.assign(tuples_.size(), Vec(module_.vdim));
    for (std::size_t t = 0; t < tuples_.size(); ++t) rank_[tuples_[t]] = t;
  }

  const LieModule& module() const { return module_; }
  std::size_t degree() const { return degree_; }
  std::size_t tuple_count() const { return tuples_.size(); }
  const std::vector<std::size_t>& tuple(std::size_t t) const { return tuples_[t]; }

  const Vec& value_at(std::size_t t) const { return values_[t]; }
  void set_value_at(std::size_t t, Vec v) {
    if (v.size() != module_.vdim) fail("DimensionMismatch", "cochain value size");
    values_[t] = std::move(v);
  }

  // value on a basis tuple in any order; alternating sign, repeats give 0
  Vec value_on(std::vector<std::size_t> idx) const {
    int sign = 1;
    for (std::size_t i = 0; i + 1 < idx.size(); ++i)
      for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
        if (idx[j] > idx[j + 1]) {
          std::swap(idx[j], idx[j + 1]);
          sign = -sign;
        }
    for (std::size_t i = 0; i + 1 < idx.size(); ++i)
      if (idx[i] == idx[i + 1]) return Vec(module_.vdim);
    auto it = rank_.find(idx);
    if (it == rank_.end()) fail("DimensionMismatch", "tuple outside complex");
    Vec out = values_[it->second];
    if (sign < 0)
      for (auto& x : out) x = -x;
    return out;
  }

  // multilinear evaluation with one arbitrary vector in slot `slot`
  Vec value_with_vector(const Vec& v, std::size_t slot,
                        const std::vector<std::size_t>& rest) const {
    Vec out(module_.vdim);
    for (std::size_t i = 0; i < module_.algebra.dim(); ++i) {
      if (v[i].is_zero()) continue;
      std::vector<std::size_t> idx = rest;
      idx.insert(idx.begin() + static_cast<std::ptrdiff_t>(slot), i);
      Vec term = value_on(std::move(idx));
      for (std::size_t c = 0; c < out.size(); ++c) out[c] += v[i] * term[c];
    }
    return out;
  }

  friend CECochain operator-(const CECochain& a, const CECochain& b) {
    CECochain out = a;
    for (std::size_t t = 0; t < out.values_.size(); ++t)
      for (std::size_t c = 0; c < out.module_.vdim; ++c) out.values_[t][c] -= b.values_[t][c];
    return out;
  }

  bool is_zero() const {
    for (const Vec& v : values_)
      for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
  }

 private:
  LieModule module_;
  std::size_t degree_ = 0;
  std::vector<std::vector<std::size_t>> tuples_;
  std::map<std::vector<std::size_t>, std::size_t> rank_;
  std::vector<Vec> values_;
};

// Standard CE differential.
inline CECochain ce_differential(const CECochain& c) {
  const LieModule& mod = c.module();
  const LieAlgebra& g = mod.algebra;
  CECochain out(mod, c.degree() + 1);
  auto outs = tuples(g.dim(), c.degree() + 1);
  for (std::size_t t = 0; t < outs.size(); ++t) {
    const auto& idx = outs[t];
    Vec acc(mod.vdim);
    for (std::size_t j = 0; j < idx.size(); ++j) {
      std::vector<std::size_t> rest = idx;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
      Vec term = mod.action[idx[j]].apply(c.value_on(rest));
      int sign = (j % 2 == 0) ? 1 : -1;
      for (std::size_t k = 0; k < acc.size(); ++k)
        acc[k] += sign > 0 ? term[k] : -term[k];
    }
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        std::vector<std::size_t> rest = idx;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(b));
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(a));
        Vec br = g.bracket(g.unit(idx[a]), g.unit(idx[b]));
        Vec term = c.value_with_vector(br, 0, rest);
        int sign = ((a + b) % 2 == 0) ? 1 : -1;
        for (std::size_t k = 0; k < acc.size(); ++k)
          acc[k] += sign > 0 ? term[k] : -term[k];
      }
    out.set_value_at(t, std::move(acc));
  }
  return out;
}

// Matrix of d^k over the (tuple x module) bases.
inline Matrix ce_matrix(const LieModule& mod, std::size_t degree) {
  auto dom = tuples(mod.algebra.dim(), degree);
  auto cod = tuples(mod.algebra.dim(), degree + 1);
  Matrix m(cod.size() * mod.vdim, dom.size() * mod.vdim);
  for (std::size_t t = 0; t < dom.size(); ++t)
    for (std::size_t c = 0; c < mod.vdim; ++c) {
      CECochain basis(mod, degree);
      Vec v(mod.vdim);
      v[c] = 1;
      basis.set_value_at(t, v);
      CECochain d = ce_differential(basis);
      for (std::size_t tt = 0; tt < cod.size(); ++tt)
        for (std::size_t cc = 0; cc < mod.vdim; ++cc)
          m.at(tt * mod.vdim + cc, t * mod.vdim + c) = d.value_at(tt)[cc];
    }
  return m;
}

inline std::size_t ce_cohomology_dim(const LieModule& mod, std::size_t degree) {
  std::size_t n = mod.algebra.dim();
  auto dim_c = [&](std::size_t k) { return tuples(n, k).size() * mod.vdim; };
  std::size_t rank_up = degree < n ? num::rank(ce_matrix(mod, degree)) : 0;
  std::size_t rank_down = degree > 0 ? num::rank(ce_matrix(mod, degree - 1)) : 0;
  return dim_c(degree) - rank_up - rank_down;
}

// [a] == [b]: their difference must be a differential; returns the primitive.
inline std::optional<CECochain> ce_class_witness(const CECochain& a, const CECochain& b) {
  if (a.degree() != b.degree()) fail("DimensionMismatch", "CE class comparison");
  if (a.degree() == 0) fail("DimensionMismatch", "no degree -1 primitives");
  const LieModule& mod = a.module();
  CECochain diff = a - b;
  Matrix m = ce_matrix(mod, a.degree() - 1);
  Vec rhs;
  for (std::size_t t = 0; t < diff.tuple_count(); ++t)
    for (std::size_t c = 0; c < mod.vdim; ++c) rhs.push_back(diff.value_at(t)[c]);
  auto x = num::solve(m, rhs);
  if (!x) return std::nullopt;
  CECochain prim(mod, a.degree() - 1);
  auto dom = tuples(mod.algebra.dim(), a.degree() - 1);
  for (std::size_t t = 0; t < dom.size(); ++t) {
    Vec v(mod.vdim);
    for (std::size_t c = 0; c < mod.vdim; ++c) v[c] = (*x)[t * mod.vdim + c];
    prim.set_value_at(t, v);
  }
  return prim;
}

}  // namespace xmodkit::lie

#endif  // XMODKIT_LIE_CE_HPP_
