#include "gradcon/orbit.hpp"

#include "gradcon/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace gradcon {

long Binomial::lhs_degree() const { return std::accumulate(lhs.begin(), lhs.end(), 0L); }
long Binomial::rhs_degree() const { return std::accumulate(rhs.begin(), rhs.end(), 0L); }

namespace {

Rational monomial_value(const std::vector<long> &e, const Contraction &c) {
  Rational v = 1, t;
  for (std::size_t p = 0; p < e.size(); ++p) {
    if (!e[p])
      continue;
    const Rational x = c.value(p);
    if (sgn(x) == 0)
      return 0;
    mpz_pow_ui(t.get_num_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(e[p]));
    mpz_pow_ui(t.get_den_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(e[p]));
    v *= t;
  }
  return v;
}

std::string monomial_text(const std::vector<long> &e, const AbelianGroup &group) {
  std::string out;
  for (std::size_t p = 0; p < e.size(); ++p) {
    if (!e[p])
      continue;
    if (!out.empty())
      out += '*';
    out += "x[" + group.pair_key(p) + "]";
    if (e[p] > 1)
      out += "^" + std::to_string(e[p]);
  }
  return out.empty() ? "1" : out;
}

Binomial split(const IntVector &u, const std::vector<std::size_t> &columns, std::size_t pairs) {
  Binomial b;
  b.lhs.assign(pairs, 0);
  b.rhs.assign(pairs, 0);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    const long x = u[j].get_si();
    (x > 0 ? b.lhs : b.rhs)[columns[j]] = std::labs(x);
  }
  return b;
}

// 0 in the convex hull of the given integer points (exact phase-one simplex,
// Bland's rule).
bool zero_in_hull(const std::vector<std::vector<Integer>> &points) {
  if (points.empty())
    return false;
  const std::size_t dim = points.front().size();
  const std::size_t n = points.size();
  const std::size_t m = dim + 1;
  const std::size_t width = n + m + 1;
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(width));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < n; ++j)
      t[i][j] = points[j][i];
  for (std::size_t j = 0; j < n; ++j)
    t[dim][j] = 1;
  t[dim][width - 1] = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (sgn(t[i][width - 1]) < 0)
      for (auto &x : t[i])
        x = -x;
    t[i][n + i] = 1;
  }
  std::vector<std::size_t> basis(m);
  std::iota(basis.begin(), basis.end(), n);
  std::vector<Rational> cost(width);
  for (std::size_t j = 0; j < width; ++j)
    if (j < n || j == width - 1)
      for (std::size_t i = 0; i < m; ++i)
        cost[j] -= t[i][j];

  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j)
      if (sgn(cost[j]) < 0) {
        enter = j;
        break;
      }
    if (enter == width)
      break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(t[i][enter]) <= 0)
        continue;
      Rational ratio = t[i][width - 1] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m)
      break; // cannot happen: the phase-one objective is bounded
    const Rational piv = t[leave][enter];
    for (auto &x : t[leave])
      x /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || sgn(t[i][enter]) == 0)
        continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j < width; ++j)
        t[i][j] -= f * t[leave][j];
    }
    const Rational f = cost[enter];
    for (std::size_t j = 0; j < width; ++j)
      cost[j] -= f * t[leave][j];
    basis[leave] = enter;
  }
  return sgn(cost[width - 1]) == 0;
}

// Every identity u in ker A_{S'} holds for the character given on T (subset
// of S') extended by zero: no u has exactly one side vanishing, and the
// character is trivial on ker A_T.
bool identities_hold_with_zeros(const RelationComplex &rc, const std::vector<std::size_t> &s_prime,
                                const std::map<std::size_t, Rational> &values_on_t) {
  const IntMatrix &a = rc.boundary().a;
  const std::size_t n = rc.group()->order();
  std::vector<std::size_t> t_cols, rest;
  for (std::size_t p : s_prime)
    (values_on_t.contains(p) ? t_cols : rest).push_back(p);

  // A weak violation is a nonnegative combination of columns outside T
  // lying in the span of the columns in T.
  if (!rest.empty()) {
    IntMatrix at(0, n);
    if (!t_cols.empty())
      at = rc.restricted_boundary(t_cols).transpose();
    const IntegerLattice normals = t_cols.empty() ? IntegerLattice::full(n) : kernel(at);
    std::vector<std::vector<Integer>> projected;
    for (std::size_t p : rest) {
      std::vector<Integer> v(normals.rank());
      for (std::size_t l = 0; l < normals.rank(); ++l)
        for (std::size_t x = 0; x < n; ++x)
          v[l] += normals.basis()(l, x) * a(x, p);
      projected.push_back(std::move(v));
    }
    if (zero_in_hull(projected))
      return false;
  }

  if (t_cols.empty())
    return true;
  const IntegerLattice l = rc.surviving_identity_lattice(t_cols);
  const Contraction chi(rc.group(), values_on_t);
  for (std::size_t i = 0; i < l.rank(); ++i) {
    Binomial b = split(l.basis_vector(i), t_cols, rc.group()->pair_count());
    if (monomial_value(b.lhs, chi) != monomial_value(b.rhs, chi))
      return false;
  }
  return true;
}

void require_valid(const Contraction &c) {
  auto check = check_contraction(c);
  if (!check.ok)
    throw ValidationError("invalid contraction: " + check.diagnostic);
}

} // namespace

Rational Binomial::evaluate(const Contraction &c) const {
  return lhs_coeff * monomial_value(lhs, c) - rhs_coeff * monomial_value(rhs, c);
}

std::string to_text(const Binomial &b, const AbelianGroup &group) {
  std::ostringstream os;
  if (b.lhs_coeff != 1)
    os << b.lhs_coeff.get_str() << " * ";
  os << monomial_text(b.lhs, group) << " - ";
  if (b.rhs_coeff != 1)
    os << b.rhs_coeff.get_str() << " * ";
  os << monomial_text(b.rhs, group);
  return os.str();
}

std::vector<Binomial> defining_equations(const AbelianGroup &group) {
  const std::size_t n = group.order();
  const std::size_t m = group.pair_count();
  std::set<std::pair<std::vector<long>, std::vector<long>>, std::greater<>> seen;
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t k = 0; k < n; ++k) {
        std::vector<long> x(m, 0), y(m, 0);
        ++x[group.pair(g, h)];
        ++x[group.pair(group.mul(g, h), k)];
        ++y[group.pair(h, k)];
        ++y[group.pair(g, group.mul(h, k))];
        if (x == y)
          continue;
        if (x < y)
          std::swap(x, y);
        seen.emplace(std::move(x), std::move(y));
      }
  std::vector<Binomial> out;
  for (const auto &[x, y] : seen)
    out.push_back(Binomial{x, y, 1, 1});
  return out;
}

std::vector<Binomial> surviving_identity_basis(const Support &s) {
  const auto columns = s.indices();
  const RelationComplex rc(s.group());
  const IntegerLattice l = rc.surviving_identity_lattice(columns);
  std::vector<Binomial> out;
  for (std::size_t i = 0; i < l.rank(); ++i)
    out.push_back(split(l.basis_vector(i), columns, s.group()->pair_count()));
  return out;
}

std::vector<Binomial> orbit_closure_ideal(const Contraction &c) {
  require_valid(c);
  auto out = surviving_identity_basis(c.support());
  for (auto &b : out) {
    // eps(r2) r1 - eps(r1) r2, divided by eps(r2)
    b.rhs_coeff = monomial_value(b.lhs, c) / monomial_value(b.rhs, c);
  }
  return out;
}

bool toric_membership(const Binomial &b, const Support &s) {
  if (!b.is_monic())
    throw DomainError("toric membership needs a monic binomial");
  const std::size_t m = s.group()->pair_count();
  if (b.lhs.size() != m || b.rhs.size() != m)
    throw DomainError("binomial has the wrong number of variables");
  for (std::size_t p = 0; p < m; ++p)
    if ((b.lhs[p] || b.rhs[p]) && !s.contains(p))
      throw DomainError("variable x[" + s.group()->pair_key(p) + "] lies outside the support");
  const auto columns = s.indices();
  IntVector d(columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    d[j] = b.lhs[columns[j]] - b.rhs[columns[j]];
  return contains(RelationComplex(s.group()).surviving_identity_lattice(columns), d);
}

bool zero_extension_holds(const Binomial &identity, const Contraction &c) {
  const Rational l = identity.lhs_coeff * monomial_value(identity.lhs, c);
  const Rational r = identity.rhs_coeff * monomial_value(identity.rhs, c);
  return l == r;
}

bool is_degeneration(const Contraction &c, const Support &second_support) {
  if (c.group()->spec() != second_support.group()->spec())
    throw DomainError("contraction and second support belong to different groups");
  const auto s_prime = second_support.indices();
  std::map<std::size_t, Rational> on_t;
  for (const auto &[p, v] : c.values())
    if (second_support.contains(p))
      on_t.emplace(p, v);
  return identities_hold_with_zeros(RelationComplex(c.group()), s_prime, on_t);
}

bool orbit_inclusion(const Contraction &candidate, const Contraction &base) {
  if (candidate.group()->spec() != base.group()->spec())
    throw DomainError("contractions belong to different groups");
  if (!candidate.support().is_subset_of(base.support()))
    return false;
  std::map<std::size_t, Rational> ratio;
  for (const auto &[p, v] : candidate.values())
    ratio.emplace(p, v / base.value(p));
  return identities_hold_with_zeros(RelationComplex(base.group()), base.support().indices(), ratio);
}

} // namespace gradcon
