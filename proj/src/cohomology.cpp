#include "gradcon/cohomology.hpp"

#include "gradcon/error.hpp"
#include "f2.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <sstream>
#include <thread>

namespace gradcon {

std::string to_string(FieldMode mode) {
  return mode == FieldMode::algebraically_closed ? "closed" : "real";
}

FieldMode parse_field_mode(std::string_view text) {
  if (text == "closed" || text == "algebraically_closed")
    return FieldMode::algebraically_closed;
  if (text == "real" || text == "real_closed")
    return FieldMode::real_closed;
  throw ParseError("unknown field mode '" + std::string(text) + "' (expected closed or real)");
}

// ---------------------------------------------------------------- Contraction

Contraction::Contraction(GroupPtr group, const std::map<std::size_t, Rational> &values)
    : support_(std::move(group)) {
  const std::size_t m = support_.group()->pair_count();
  for (const auto &[p, v] : values) {
    if (p >= m)
      throw DomainError("pair index " + std::to_string(p) + " out of range");
    if (sgn(v) == 0)
      continue;
    values_.emplace(p, v);
    support_.insert(p);
  }
}

Contraction Contraction::indicator(const Support &s) {
  std::map<std::size_t, Rational> v;
  for (std::size_t p : s.indices())
    v.emplace(p, Rational(1));
  return Contraction(s.group(), v);
}

Rational Contraction::value(std::size_t pair) const {
  auto it = values_.find(pair);
  return it == values_.end() ? Rational(0) : it->second;
}

Contraction Contraction::times_coboundary(const std::vector<Rational> &alpha) const {
  const Contraction d = coboundary(group(), alpha);
  std::map<std::size_t, Rational> out;
  for (const auto &[p, v] : values_)
    out.emplace(p, v * d.value(p));
  return Contraction(group(), out);
}

Contraction coboundary(GroupPtr group, const std::vector<Rational> &alpha) {
  if (alpha.size() != group->order())
    throw DomainError("alpha must have one value per group element");
  for (const auto &a : alpha)
    if (sgn(a) == 0)
      throw DomainError("alpha must be nonzero");
  std::map<std::size_t, Rational> out;
  for (std::size_t p = 0; p < group->pair_count(); ++p) {
    auto [g, h] = group->pairs().at(p);
    out.emplace(p, alpha[g] * alpha[h] / alpha[group->mul(g, h)]);
  }
  return Contraction(group, out);
}

// ----------------------------------------------------------------- validation

ContractionCheck check_contraction(const Contraction &c) {
  const auto &group = *c.group();
  const std::size_t n = group.order();
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t gh = group.mul(g, h), hk = group.mul(h, k);
        Rational lhs = c.value(g, hk) * c.value(h, k);
        Rational rhs = c.value(gh, k) * c.value(g, h);
        if (lhs == rhs)
          continue;
        ContractionCheck out;
        out.ok = false;
        out.triple = std::array<std::size_t, 3>{g, h, k};
        std::ostringstream os;
        os << "eps(g,hk) eps(h,k) = eps(gh,k) eps(g,h) fails at g=" << group.element_text(g)
           << " h=" << group.element_text(h) << " k=" << group.element_text(k) << ": " << lhs.get_str()
           << " != " << rhs.get_str();
        out.diagnostic = os.str();
        return out;
      }
  return {};
}

bool validate_contraction(const Contraction &c) { return check_contraction(c).ok; }

namespace {

void require_valid(const Contraction &c) {
  auto check = check_contraction(c);
  if (!check.ok)
    throw ValidationError("invalid contraction: " + check.diagnostic);
}

// prod_j values[j]^u[j]
Rational evaluate(const std::vector<Rational> &values, const IntVector &u) {
  mpz_class num = 1, den = 1, t;
  for (std::size_t j = 0; j < u.size(); ++j) {
    int s = sgn(u[j]);
    if (s == 0)
      continue;
    if (!u[j].fits_slong_p())
      throw DomainError("exponent too large");
    const auto e = static_cast<unsigned long>(std::abs(u[j].get_si()));
    const Rational &v = values[j];
    mpz_pow_ui(t.get_mpz_t(), v.get_num_mpz_t(), e);
    (s > 0 ? num : den) *= t;
    mpz_pow_ui(t.get_mpz_t(), v.get_den_mpz_t(), e);
    (s > 0 ? den : num) *= t;
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::vector<Rational> values_on(const Contraction &c, const std::vector<std::size_t> &columns) {
  std::vector<Rational> v;
  v.reserve(columns.size());
  for (std::size_t p : columns)
    v.push_back(c.value(p));
  return v;
}

// Row space of A_S mod 2, i.e. the image of the mod-2 coboundary on S.
detail::F2Span coboundary_span(const RelationComplex &rc, const std::vector<std::size_t> &columns) {
  detail::F2Span span(columns.size());
  const IntMatrix &a = rc.boundary().a;
  for (std::size_t x = 0; x < rc.group()->order(); ++x) {
    auto row = span.make_row();
    for (std::size_t j = 0; j < columns.size(); ++j)
      if (mpz_odd_p(a(x, columns[j]).get_mpz_t()))
        row[j >> 6] |= std::uint64_t{1} << (j & 63);
    span.insert(std::move(row));
  }
  return span;
}

bool all_identities_hold(const std::vector<Rational> &chi, const IntegerLattice &l, bool magnitude_only) {
  for (std::size_t i = 0; i < l.rank(); ++i) {
    Rational v = evaluate(chi, l.basis_vector(i));
    if (magnitude_only)
      v = abs(v);
    if (v != 1)
      return false;
  }
  return true;
}

H2Descriptor describe(const SupportInvariants &inv, FieldMode mode, const RelationComplex &rc) {
  H2Descriptor d;
  d.mode = mode;
  d.continuous_rank = inv.kernel_part.free_rank;
  if (mode == FieldMode::algebraically_closed) {
    d.torsion_dual = inv.kernel_part.torsion;
    return d;
  }
  // Hom(Z/t, R^x) = Z/gcd(t, 2)
  for (const auto &t : inv.kernel_part.torsion)
    if (mpz_even_p(t.get_mpz_t()))
      d.torsion_dual.emplace_back(2);
  d.kernel_sign_rank = inv.kernel_part.free_rank;

  const std::size_t k = inv.columns.size();
  detail::F2Span identities(k);
  for (std::size_t i = 0; i < inv.surviving_identities.rank(); ++i)
    identities.insert(detail::F2Span::reduce_mod2(inv.surviving_identities.basis_vector(i)));
  d.sign_rank = (k - identities.rank()) - coboundary_span(rc, inv.columns).rank();
  return d;
}

} // namespace

// ----------------------------------------------------------------- descriptor

H2Descriptor h2_descriptor(const SupportInvariants &inv, FieldMode mode) {
  return describe(inv, mode, RelationComplex(inv.support.group()));
}

Integer sign_class_count(const H2Descriptor &d) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, d.sign_rank + d.kernel_sign_rank + d.torsion_dual.size());
  return out;
}

// ---------------------------------------------------------------- equivalence

bool equivalent_via_normalization(const Contraction &a, const Contraction &b, FieldMode mode) {
  require_valid(a);
  require_valid(b);
  if (a.group()->spec() != b.group()->spec())
    throw DomainError("contractions belong to different groups");
  if (!(a.support() == b.support()))
    return false;
  const auto columns = a.support().indices();
  std::vector<Rational> chi;
  chi.reserve(columns.size());
  for (std::size_t p : columns)
    chi.push_back(b.value(p) / a.value(p));

  RelationComplex rc(a.group());
  const IntegerLattice l = rc.surviving_identity_lattice(columns);
  if (mode == FieldMode::algebraically_closed)
    return all_identities_hold(chi, l, false);

  if (!all_identities_hold(chi, l, true))
    return false;
  auto sign = detail::F2Span(columns.size()).make_row();
  for (std::size_t j = 0; j < chi.size(); ++j)
    if (sgn(chi[j]) < 0)
      sign[j >> 6] |= std::uint64_t{1} << (j & 63);
  return coboundary_span(rc, columns).contains(std::move(sign));
}

bool satisfies_surviving_identities(const Contraction &c) {
  const auto columns = c.support().indices();
  RelationComplex rc(c.group());
  return all_identities_hold(values_on(c, columns), rc.surviving_identity_lattice(columns), false);
}

// ------------------------------------------------------------ sign invariants

SignInvariants sign_invariants(const Contraction &c) {
  require_valid(c);
  const auto columns = c.support().indices();
  RelationComplex rc(c.group());
  const auto values = values_on(c, columns);
  if (!all_identities_hold(values, rc.surviving_identity_lattice(columns), false))
    throw DomainError("contraction violates a surviving higher-order identity");

  SignInvariants out;
  const std::size_t k = columns.size();
  if (k == 0)
    return out; // C_S = im A is free

  const IntMatrix &basis = rc.boundary_image().basis(); // r x N
  const std::size_t r = basis.rows();
  const IntMatrix as_rows = rc.restricted_boundary(columns).transpose(); // k x N

  // Columns of A_S in coordinates of the basis of im A.
  IntMatrix y(k, r);
  for (std::size_t j = 0; j < k; ++j) {
    auto coords = rc.boundary_image().coordinates(as_rows.row(j));
    if (!coords)
      throw DomainError("internal: column outside the boundary image");
    for (std::size_t i = 0; i < r; ++i)
      y(j, i) = (*coords)[i];
  }
  const SmithForm sf = snf(y);
  const IntMatrix v_inv = hnf_with_transform(sf.v).t;

  const HermiteTransform ht = hnf_with_transform(as_rows);
  const IntegerLattice image_s(as_rows);

  const std::size_t diag = std::min(k, r);
  for (std::size_t j = 0; j < diag; ++j) {
    const Integer &d = sf.d(j, j);
    if (sgn(d) == 0 || d == 1 || mpz_odd_p(d.get_mpz_t()))
      continue;
    // xi(c) = (d/2) f_j, f_j = row j of V^-1, mapped into Z[G]
    IntVector xi(basis.cols());
    for (std::size_t i = 0; i < r; ++i) {
      if (sgn(v_inv(j, i)) == 0)
        continue;
      for (std::size_t x = 0; x < basis.cols(); ++x)
        xi[x] += v_inv(j, i) * basis(i, x);
    }
    const Integer half = d / 2;
    IntVector square(xi.size());
    for (std::size_t x = 0; x < xi.size(); ++x) {
      xi[x] *= half;
      square[x] = 2 * xi[x];
    }
    // square = sum_p y_p A(:,p)
    auto coords = image_s.coordinates(square);
    if (!coords)
      throw DomainError("internal: xi(c)^2 outside the support image");
    IntVector yp(k);
    for (std::size_t i = 0; i < coords->size(); ++i)
      for (std::size_t p = 0; p < k; ++p)
        yp[p] += (*coords)[i] * ht.t(i, p);
    bool negative = false;
    for (std::size_t p = 0; p < k; ++p)
      if (sgn(values[p]) < 0 && mpz_odd_p(yp[p].get_mpz_t()))
        negative = !negative;
    out.section.push_back(std::move(xi));
    out.generator_orders.push_back(d);
    out.delta.push_back(negative ? -1 : 1);
  }
  return out;
}

// ------------------------------------------------------------- classification

ClassificationRow classify_support(const RelationComplex &complex, const Support &s, FieldMode mode) {
  const auto inv = complex.invariants(s);
  ClassificationRow row;
  row.support = s;
  row.n_prime = inv.n_prime;
  row.n_doubleprime = inv.n_doubleprime;
  row.kernel_part = inv.kernel_part;
  row.cokernel_part = inv.cokernel_part;
  row.descriptor = describe(inv, mode, complex);
  return row;
}

std::vector<ClassificationRow> classify_all(GroupPtr group, FieldMode mode, std::size_t threads,
                                            std::size_t max_order) {
  ImplicationSystem sys(group);
  const auto supports = enumerate_supports(sys, max_order);
  const RelationComplex complex(group);
  std::vector<ClassificationRow> rows(supports.size());
  threads = std::max<std::size_t>(1, std::min(threads, supports.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](std::size_t id) {
    try {
      for (std::size_t i = next++; i < supports.size(); i = next++)
        rows[i] = classify_support(complex, supports[i], mode);
    } catch (...) {
      errors[id] = std::current_exception();
      next = supports.size();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back(work, t);
  }
  for (const auto &e : errors)
    if (e)
      std::rethrow_exception(e);
  return rows;
}

} // namespace gradcon
