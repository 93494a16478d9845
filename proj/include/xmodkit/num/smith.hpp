// Smith normal form over the integers, with the unimodular transforms
// kept so that cochain equations over Z/m coefficients can be solved
// exactly and cohomology orders counted without enumeration.

#ifndef XMODKIT_NUM_SMITH_HPP_
#define XMODKIT_NUM_SMITH_HPP_

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <vector>

#include "xmodkit/num/rational.hpp"

namespace xmodkit::num {

struct IntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<std::int64_t> data;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  std::int64_t& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  std::int64_t at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
};

struct Smith {
  IntMatrix d;  // diagonal, d1 | d2 | ...
  IntMatrix u;  // row transform, u * a * v == d
  IntMatrix v;  // column transform
  std::vector<std::int64_t> diag() const {
    std::vector<std::int64_t> out;
    std::size_t n = std::min(d.rows, d.cols);
    for (std::size_t i = 0; i < n; ++i) out.push_back(d.at(i, i));
    return out;
  }
};

inline Smith smith_normal_form(IntMatrix a) {
  Smith s;
  s.u = IntMatrix::identity(a.rows);
  s.v = IntMatrix::identity(a.cols);

  auto row_add = [&](std::size_t dst, std::size_t src, std::int64_t f) {
    for (std::size_t c = 0; c < a.cols; ++c) a.at(dst, c) = checked_cast((__int128)a.at(dst, c) + (__int128)f * a.at(src, c));
    for (std::size_t c = 0; c < s.u.cols; ++c) s.u.at(dst, c) = checked_cast((__int128)s.u.at(dst, c) + (__int128)f * s.u.at(src, c));
  };
  auto col_add = [&](std::size_t dst, std::size_t src, std::int64_t f) {
    for (std::size_t r = 0; r < a.rows; ++r) a.at(r, dst) = checked_cast((__int128)a.at(r, dst) + (__int128)f * a.at(r, src));
    for (std::size_t r = 0; r < s.v.rows; ++r) s.v.at(r, dst) = checked_cast((__int128)s.v.at(r, dst) + (__int128)f * s.v.at(r, src));
  };
  auto row_swap = [&](std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < a.cols; ++c) std::swap(a.at(i, c), a.at(j, c));
    for (std::size_t c = 0; c < s.u.cols; ++c) std::swap(s.u.at(i, c), s.u.at(j, c));
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < a.rows; ++r) std::swap(a.at(r, i), a.at(r, j));
    for (std::size_t r = 0; r < s.v.rows; ++r) std::swap(s.v.at(r, i), s.v.at(r, j));
  };
  auto row_neg = [&](std::size_t i) {
    for (std::size_t c = 0; c < a.cols; ++c) a.at(i, c) = -a.at(i, c);
    for (std::size_t c = 0; c < s.u.cols; ++c) s.u.at(i, c) = -s.u.at(i, c);
  };

  std::size_t n = std::min(a.rows, a.cols);
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // pick minimal nonzero entry in the trailing block as pivot
      std::size_t pr = t, pc = t;
      std::int64_t best = 0;
      for (std::size_t r = t; r < a.rows; ++r)
        for (std::size_t c = t; c < a.cols; ++c) {
          std::int64_t v = std::abs(a.at(r, c));
          if (v != 0 && (best == 0 || v < best)) { best = v; pr = r; pc = c; }
        }
      if (best == 0) break;
      if (pr != t) row_swap(t, pr);
      if (pc != t) col_swap(t, pc);
      if (a.at(t, t) < 0) row_neg(t);

      bool clean = true;
      for (std::size_t r = t + 1; r < a.rows; ++r) {
        std::int64_t q = a.at(r, t) / a.at(t, t);
        if (q != 0) row_add(r, t, -q);
        if (a.at(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < a.cols; ++c) {
        std::int64_t q = a.at(t, c) / a.at(t, t);
        if (q != 0) col_add(c, t, -q);
        if (a.at(t, c) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility fix: fold any non-divisible entry into the pivot block
      bool fixed = true;
      for (std::size_t r = t + 1; r < a.rows && fixed; ++r)
        for (std::size_t c = t + 1; c < a.cols && fixed; ++c)
          if (a.at(r, c) % a.at(t, t) != 0) { row_add(t, r, 1); fixed = false; }
      if (fixed) break;
    }
  }
  s.d = std::move(a);
  return s;
}

// Solves B x == b (mod m) using a precomputed SNF of B. Returns a witness
// with entries reduced mod m, or nullopt when inconsistent.
inline std::optional<std::vector<std::int64_t>> solve_mod(const Smith& s,
                                                          const std::vector<std::int64_t>& b,
                                                          std::int64_t m) {
  std::size_t rows = s.d.rows, cols = s.d.cols;
  if (b.size() != rows) fail("DimensionMismatch", "solve_mod");
  auto mod = [&](__int128 x) {
    std::int64_t r = static_cast<std::int64_t>(x % m);
    return r < 0 ? r + m : r;
  };
  std::vector<std::int64_t> ub(rows, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    __int128 acc = 0;
    for (std::size_t c = 0; c < rows; ++c) acc += (__int128)s.u.at(r, c) * b[c];
    ub[r] = mod(acc);
  }
  std::vector<std::int64_t> z(cols, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    std::int64_t di = i < cols ? s.d.at(i, i) : 0;
    if (di == 0) {
      if (ub[i] % m != 0) return std::nullopt;
      continue;
    }
    std::int64_t g = std::gcd(di, m);
    if (ub[i] % g != 0) return std::nullopt;
    // solve di * z == ub[i] (mod m): z = (ub/g) * inv(di/g) mod (m/g)
    std::int64_t mg = m / g, dg = (di / g) % mg, target = (ub[i] / g) % mg;
    std::int64_t inv = 1;
    if (mg > 1) {
      // extended euclid for the inverse of dg mod mg
      std::int64_t r0 = mg, r1 = dg % mg, s0 = 0, s1 = 1;
      while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t r2 = r0 - q * r1; r0 = r1; r1 = r2;
        std::int64_t s2 = s0 - q * s1; s0 = s1; s1 = s2;
      }
      inv = ((s0 % mg) + mg) % mg;
    }
    z[i] = mod((__int128)target * inv);
  }
  std::vector<std::int64_t> x(cols, 0);
  for (std::size_t r = 0; r < cols; ++r) {
    __int128 acc = 0;
    for (std::size_t c = 0; c < cols; ++c) acc += (__int128)s.v.at(r, c) * z[c];
    x[r] = mod(acc);
  }
  return x;
}

// |image of (B mod m)| on Z/m coefficients, from the SNF diagonal.
inline std::uint64_t image_order_mod(const Smith& s, std::int64_t m) {
  std::uint64_t out = 1;
  for (std::int64_t d : s.diag()) {
    if (d == 0) continue;
    out *= static_cast<std::uint64_t>(m / std::gcd(d, m));
  }
  return out;
}

// |kernel of (B mod m)| = m^cols / |image|.
inline std::uint64_t kernel_order_mod(const Smith& s, std::int64_t m) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < s.d.cols; ++i) total *= static_cast<std::uint64_t>(m);
  return total / image_order_mod(s, m);
}

}  // namespace xmodkit::num

#endif  // XMODKIT_NUM_SMITH_HPP_
