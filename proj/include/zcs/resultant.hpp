#pragma once

#include <array>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "zcs/bigint.hpp"

namespace zcs {

using BigMatrix = std::vector<std::vector<BigInt>>;

/// Fraction-free (Bareiss) determinant.
inline BigInt determinant(BigMatrix m) {
  const size_t n = m.size();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

/// Integer polynomial helpers (ascending coefficients).
using IntPoly = std::vector<BigInt>;

inline int int_degree(const IntPoly& f) {
  int d = static_cast<int>(f.size()) - 1;
  while (d >= 0 && f[d] == 0) --d;
  return d;
}

inline IntPoly int_derivative(const IntPoly& f) {
  IntPoly d;
  for (size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<long>(i));
  return d;
}

inline BigInt resultant(const IntPoly& f, const IntPoly& g) {
  const int m = int_degree(f), n = int_degree(g);
  if (m < 0 || n < 0) return 0;
  const int size = m + n;
  if (size == 0) return 1;
  BigMatrix s(size, std::vector<BigInt>(size, 0));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) s[r][r + i] = f[m - i];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) s[n + r][r + i] = g[n - i];
  return determinant(std::move(s));
}

/// disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f).
inline BigInt poly_discriminant(const IntPoly& f) {
  const int n = int_degree(f);
  if (n < 1) return 0;
  BigInt r = resultant(f, int_derivative(f));
  BigInt d = r / f[n];
  if ((static_cast<long>(n) * (n - 1) / 2) % 2) d = -d;
  return d;
}

/// Ternary forms as coefficient maps keyed by exponent triples.
using Exponent3 = std::array<int, 3>;
using TernaryForm = std::map<Exponent3, BigInt>;

inline std::vector<Exponent3> monomials_of_degree(int d) {
  // Lexicographic with x > y > z.
  std::vector<Exponent3> out;
  for (int a = d; a >= 0; --a)
    for (int b = d - a; b >= 0; --b) out.push_back({a, b, d - a - b});
  return out;
}

inline TernaryForm partial(const TernaryForm& f, int var) {
  TernaryForm d;
  for (const auto& [e, c] : f) {
    if (e[var] == 0 || c == 0) continue;
    Exponent3 e2 = e;
    e2[var] -= 1;
    d[e2] += c * e[var];
  }
  return d;
}

namespace detail {

/// Coefficient expansion of the form obtained by substituting (x,y,z) -> g (x,y,z).
inline TernaryForm substitute_linear(const TernaryForm& f, const std::array<std::array<long, 3>, 3>& g) {
  TernaryForm out;
  for (const auto& [e, c] : f) {
    // product of linear forms: l_var = sum_j g[var][j] * x_j
    TernaryForm term{{{0, 0, 0}, c}};
    for (int var = 0; var < 3; ++var) {
      for (int k = 0; k < e[var]; ++k) {
        TernaryForm next;
        for (const auto& [te, tc] : term) {
          for (int j = 0; j < 3; ++j) {
            if (g[var][j] == 0) continue;
            Exponent3 ne = te;
            ne[j] += 1;
            next[ne] += tc * g[var][j];
          }
        }
        term = std::move(next);
      }
    }
    for (const auto& [te, tc] : term) out[te] += tc;
  }
  for (auto it = out.begin(); it != out.end();) it = (it->second == 0) ? out.erase(it) : std::next(it);
  return out;
}

/// Macaulay resultant of three ternary quadrics; nullopt when the extraneous
/// minor vanishes for this particular coordinate system.
inline std::optional<BigInt> macaulay_quadrics(const std::array<TernaryForm, 3>& q) {
  const auto mons = monomials_of_degree(4);
  std::map<Exponent3, size_t> col;
  for (size_t i = 0; i < mons.size(); ++i) col[mons[i]] = i;
  BigMatrix m(mons.size(), std::vector<BigInt>(mons.size(), 0));
  std::vector<size_t> nonreduced;
  for (size_t r = 0; r < mons.size(); ++r) {
    const auto& e = mons[r];
    int which = -1, count = 0;
    for (int i = 0; i < 3; ++i) {
      if (e[i] >= 2) {
        if (which < 0) which = i;
        ++count;
      }
    }
    if (count >= 2) nonreduced.push_back(r);
    Exponent3 shift = e;
    shift[which] -= 2;
    for (const auto& [qe, qc] : q[which]) {
      Exponent3 t{shift[0] + qe[0], shift[1] + qe[1], shift[2] + qe[2]};
      m[r][col.at(t)] += qc;
    }
  }
  BigMatrix minor(nonreduced.size(), std::vector<BigInt>(nonreduced.size()));
  for (size_t i = 0; i < nonreduced.size(); ++i)
    for (size_t j = 0; j < nonreduced.size(); ++j) minor[i][j] = m[nonreduced[i]][nonreduced[j]];
  BigInt denom = determinant(std::move(minor));
  if (denom == 0) return std::nullopt;
  BigInt num = determinant(std::move(m));
  return num / denom;
}

}  // namespace detail

/// Discriminant of a ternary cubic, normalized as Res(F_x, F_y, F_z) / 27.
///
/// The Macaulay quotient can degenerate in a given coordinate system, in which
/// case the form is moved by a unimodular substitution; the resultant of the
/// gradient is invariant under those.
inline BigInt ternary_cubic_discriminant(const TernaryForm& f) {
  std::mt19937 rng(12345);
  std::array<std::array<long, 3>, 3> g{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  for (int attempt = 0; attempt < 64; ++attempt) {
    TernaryForm h = attempt == 0 ? f : detail::substitute_linear(f, g);
    auto res = detail::macaulay_quadrics({partial(h, 0), partial(h, 1), partial(h, 2)});
    if (res) {
      if (*res % 27 != 0) fail(ErrorKind::SingularModel, "unexpected gradient resultant normalization");
      return *res / 27;
    }
    // random elementary unimodular matrix product
    std::uniform_int_distribution<int> pick(0, 2), val(-3, 3);
    for (int step = 0; step < 3; ++step) {
      int i = pick(rng), j = pick(rng);
      if (i == j) continue;
      long c = val(rng);
      for (int k = 0; k < 3; ++k) g[i][k] += c * g[j][k];
    }
  }
  fail(ErrorKind::SingularModel, "could not evaluate ternary cubic discriminant");
}

}  // namespace zcs
