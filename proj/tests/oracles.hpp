#pragma once
// Reference computations for the tests. The checks use only plain
// elimination and enumeration; the random generators may use the library.

#include "gradcon/algebra.hpp"
#include "gradcon/cohomology.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using gradcon::Integer;
using gradcon::IntMatrix;
using gradcon::Rational;

/// Rank over Q by plain Gaussian elimination.
inline std::size_t rank_q(const IntMatrix &m) {
  std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      a[r][c] = m(r, c);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < a.size(); ++c) {
    std::size_t p = rank;
    while (p < a.size() && sgn(a[p][c]) == 0)
      ++p;
    if (p == a.size())
      continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || sgn(a[r][c]) == 0)
        continue;
      Rational f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < m.cols(); ++k)
        a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// Determinant by Bareiss elimination.
inline Integer det(std::vector<std::vector<Integer>> a) {
  const std::size_t n = a.size();
  if (n == 0)
    return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a[k][k]) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(a[p][k]) == 0)
        ++p;
      if (p == n)
        return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

/// Invariant factors from determinantal divisors: d_k = gcd of k x k minors.
inline std::vector<Integer> invariant_factors(const IntMatrix &m) {
  const std::size_t r = m.rows(), c = m.cols();
  std::vector<Integer> divisors{1};
  for (std::size_t k = 1; k <= std::min(r, c); ++k) {
    Integer g = 0;
    std::vector<std::size_t> rows(k), cols(k);
    // iterate all k-subsets of rows and columns
    auto first = [](std::vector<std::size_t> &s) {
      for (std::size_t i = 0; i < s.size(); ++i)
        s[i] = i;
    };
    auto next = [](std::vector<std::size_t> &s, std::size_t n) {
      std::size_t k = s.size();
      for (std::size_t i = k; i-- > 0;)
        if (s[i] < n - k + i) {
          ++s[i];
          for (std::size_t j = i + 1; j < k; ++j)
            s[j] = s[j - 1] + 1;
          return true;
        }
      return false;
    };
    first(rows);
    do {
      first(cols);
      do {
        std::vector<std::vector<Integer>> sub(k, std::vector<Integer>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j)
            sub[i][j] = m(rows[i], cols[j]);
        Integer d = det(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      } while (next(cols, c));
    } while (next(rows, r));
    if (sgn(g) == 0)
      break;
    divisors.push_back(g);
  }
  std::vector<Integer> out;
  for (std::size_t k = 1; k < divisors.size(); ++k)
    out.push_back(divisors[k] / divisors[k - 1]);
  return out;
}

/// All supports as bitmasks over pairs, by testing every subset against
/// the triple rule directly (pair count <= 20).
inline std::set<std::uint64_t> brute_force_supports(const gradcon::AbelianGroup &g) {
  const std::size_t n = g.order(), m = g.pair_count();
  std::set<std::uint64_t> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    auto in = [&](std::size_t a, std::size_t b) { return (mask >> g.pair(a, b)) & 1u; };
    bool closed = true;
    for (std::size_t a = 0; a < n && closed; ++a)
      for (std::size_t b = 0; b < n && closed; ++b)
        for (std::size_t c = 0; c < n && closed; ++c) {
          const bool left = in(a, b) && in(g.mul(a, b), c);
          const bool right = in(b, c) && in(a, g.mul(b, c));
          if (left != right)
            closed = false;
        }
    if (closed)
      out.insert(mask);
  }
  return out;
}

inline std::uint64_t mask_of(const gradcon::Support &s) {
  std::uint64_t m = 0;
  for (std::size_t p : s.indices())
    m |= std::uint64_t{1} << p;
  return m;
}

/// Classes of {+-1}-valued contractions with support s modulo sign
/// coboundaries, by enumerating both sets.
inline std::size_t brute_sign_classes(const gradcon::Support &s) {
  const auto &g = *s.group();
  const auto cols = s.indices();
  const std::size_t k = cols.size(), n = g.order();
  std::set<std::uint64_t> valid;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
    std::map<std::size_t, Rational> v;
    for (std::size_t j = 0; j < k; ++j)
      v[cols[j]] = ((m >> j) & 1u) ? -1 : 1;
    // the triple rule on signs, written out without the library check
    auto val = [&](std::size_t a, std::size_t b) -> int {
      auto it = v.find(g.pair(a, b));
      return it == v.end() ? 0 : (sgn(it->second));
    };
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = 0; b < n && ok; ++b)
        for (std::size_t c = 0; c < n && ok; ++c)
          ok = val(a, g.mul(b, c)) * val(b, c) == val(g.mul(a, b), c) * val(a, b);
    if (ok)
      valid.insert(m);
  }
  std::set<std::uint64_t> coboundaries;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    std::uint64_t b = 0;
    for (std::size_t j = 0; j < k; ++j) {
      auto [x, y] = g.pairs().at(cols[j]);
      if (((m >> x) ^ (m >> y) ^ (m >> g.mul(x, y))) & 1u)
        b |= std::uint64_t{1} << j;
    }
    coboundaries.insert(b);
  }
  return valid.size() / coboundaries.size();
}

/// Jacobi identity on a dense copy of the structure constants.
inline bool jacobi_dense(const gradcon::GradedAlgebra &a) {
  const std::size_t n = a.dimension();
  std::vector<Rational> c(n * n * n);
  auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> Rational & { return c[(i * n + j) * n + k]; };
  for (const auto &[key, v] : a.structure())
    for (const auto &[k, x] : v) {
      at(key.first, key.second, k) = x;
      at(key.second, key.first, k) = -x;
    }
  std::vector<Rational> sum(n);
  auto add = [&](std::size_t x, std::size_t y, std::size_t z) {
    for (std::size_t l = 0; l < n; ++l) {
      const Rational &f = at(x, y, l);
      if (sgn(f) == 0)
        continue;
      for (std::size_t m = 0; m < n; ++m)
        sum[m] += f * at(l, z, m);
    }
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        std::fill(sum.begin(), sum.end(), Rational(0));
        add(i, j, k);
        add(j, k, i);
        add(k, i, j);
        for (const auto &x : sum)
          if (sgn(x) != 0)
            return false;
      }
  return true;
}

inline Rational random_rational(std::mt19937_64 &rng, bool allow_negative = true) {
  std::uniform_int_distribution<long> num(1, 9), den(1, 5), coin(0, 1);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  if (allow_negative && coin(rng))
    r = -r;
  return r;
}

inline std::vector<Rational> random_alpha(std::size_t n, std::mt19937_64 &rng, bool positive = false) {
  std::vector<Rational> a(n);
  for (auto &x : a)
    x = random_rational(rng, !positive);
  return a;
}

/// A random valid contraction with support s: values prod_i t_i^{w_i(p)}
/// for integer vectors w_i orthogonal to every surviving relator, so each
/// relator is satisfied by construction.
inline gradcon::Contraction random_contraction(const gradcon::Support &s, std::mt19937_64 &rng) {
  const gradcon::RelationComplex rc(s.group());
  const auto cols = s.indices();
  const auto rel = rc.surviving_relators(s, cols);
  IntMatrix r = IntMatrix::from_rows(rel, cols.size());
  gradcon::IntegerLattice w = rel.empty() ? gradcon::IntegerLattice::full(cols.size()) : gradcon::kernel(r);
  std::map<std::size_t, Rational> v;
  for (std::size_t j = 0; j < cols.size(); ++j)
    v[cols[j]] = 1;
  for (std::size_t i = 0; i < w.rank(); ++i) {
    const Rational t = random_rational(rng);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      long e = w.basis()(i, j).get_si();
      Rational f = 1;
      for (long q = 0; q < std::labs(e); ++q)
        f *= t;
      v[cols[j]] *= e >= 0 ? f : 1 / f;
    }
  }
  return gradcon::Contraction(s.group(), v);
}

} // namespace oracle
