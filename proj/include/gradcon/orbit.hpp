#pragma once

#include "gradcon/cohomology.hpp"

#include <string>
#include <vector>

namespace gradcon {

/// lhs_coeff * x^lhs - rhs_coeff * x^rhs over the pair variables x[g|h].
struct Binomial {
  std::vector<long> lhs; // exponents, one per pair
  std::vector<long> rhs;
  Rational lhs_coeff = 1;
  Rational rhs_coeff = 1;

  bool is_monic() const { return lhs_coeff == 1 && rhs_coeff == 1; }
  bool is_zero() const { return lhs == rhs && lhs_coeff == rhs_coeff; }
  long lhs_degree() const;
  long rhs_degree() const;
  /// Value at a contraction (absent pairs are 0).
  Rational evaluate(const Contraction &c) const;

  friend bool operator==(const Binomial &, const Binomial &) = default;
};

/// Text form "x[g|h]*x[g|h]^2 - c * x[g|h]"; a coefficient 1 is omitted.
std::string to_text(const Binomial &b, const AbelianGroup &group);

/// x_{g,h} x_{gh,k} - x_{h,k} x_{g,hk} over all triples, without cancelling
/// common factors. Zero binomials are dropped and duplicates merged up to
/// sign; each is oriented with the lexicographically larger monomial first
/// and the list is sorted in decreasing order.
std::vector<Binomial> defining_equations(const AbelianGroup &group);

/// x^{u+} - x^{u-} for each Hermite basis vector u of the surviving identities.
std::vector<Binomial> surviving_identity_basis(const Support &s);

/// eps(r2) r1 - eps(r1) r2 for each basis identity r1 = r2, scaled so the
/// leading coefficient is 1. Throws ValidationError on invalid input.
std::vector<Binomial> orbit_closure_ideal(const Contraction &c);

/// Whether the monic binomial x^a - x^b lies in the lattice ideal of s.
/// Throws DomainError for non-monic input or variables outside s.
bool toric_membership(const Binomial &b, const Support &s);

/// Identity r1 = r2 at a contraction with zeros: holds iff both sides are
/// zero or both are equal nonzero values.
bool zero_extension_holds(const Binomial &identity, const Contraction &c);

/// Whether applying c to an algebra with the given second support yields a
/// degeneration, i.e. c satisfies every surviving identity of that support
/// under the zero-extension rule.
bool is_degeneration(const Contraction &c, const Support &second_support);

/// X(candidate) inside X(base): S(candidate) within S(base) and the ratio
/// candidate/base satisfies every surviving identity of S(base) under the
/// zero-extension rule.
bool orbit_inclusion(const Contraction &candidate, const Contraction &base);

} // namespace gradcon
