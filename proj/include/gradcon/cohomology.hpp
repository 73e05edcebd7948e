#pragma once

#include "gradcon/relations.hpp"

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gradcon {

using Rational = mpq_class;

enum class FieldMode { algebraically_closed, real_closed };

std::string to_string(FieldMode mode);
FieldMode parse_field_mode(std::string_view text);

/// Shape of the classifying group H^2_S(F^x) for one support.
struct H2Descriptor {
  FieldMode mode = FieldMode::algebraically_closed;
  /// Number of independent F^x parameters: free rank of K_S.
  std::size_t continuous_rank = 0;
  /// Torsion of Hom(K_S, F^x): the torsion factors of K_S over an
  /// algebraically closed field, a Z/2 for each even factor over a real
  /// closed one.
  std::vector<Integer> torsion_dual;
  /// F_2-dimension of Hom(I_S, {+-1}) / B^2_S({+-1}); always 0 in closed mode.
  std::size_t sign_rank = 0;
  /// Extra signs carried by the continuous parameters (real mode only).
  std::size_t kernel_sign_rank = 0;

  friend bool operator==(const H2Descriptor &, const H2Descriptor &) = default;
};

/// A generic graded contraction: exact nonzero rational values on its
/// support, zero elsewhere.
class Contraction {
public:
  Contraction() = default;
  /// Zero entries are dropped; the support is the set of remaining keys.
  Contraction(GroupPtr group, const std::map<std::size_t, Rational> &values);

  /// The indicator function of s (value 1 on s).
  static Contraction indicator(const Support &s);

  const GroupPtr &group() const { return support_.group(); }
  const Support &support() const { return support_; }
  const std::map<std::size_t, Rational> &values() const { return values_; }
  Rational value(std::size_t pair) const;
  Rational value(std::size_t g, std::size_t h) const { return value(group()->pair(g, h)); }

  /// Pointwise product with d(alpha), alpha given on every group element.
  Contraction times_coboundary(const std::vector<Rational> &alpha) const;

  friend bool operator==(const Contraction &a, const Contraction &b) { return a.values_ == b.values_; }

private:
  Support support_;
  std::map<std::size_t, Rational> values_;
};

/// d(alpha)(g, h) = alpha(g) alpha(h) / alpha(gh) on every pair.
Contraction coboundary(GroupPtr group, const std::vector<Rational> &alpha);

struct ContractionCheck {
  bool ok = true;
  std::optional<std::array<std::size_t, 3>> triple; // first violated (g, h, k)
  std::string diagnostic;
};

/// Checks symmetry and eps(g,hk) eps(h,k) = eps(k,gh) eps(g,h) for all triples.
ContractionCheck check_contraction(const Contraction &c);
bool validate_contraction(const Contraction &c);

H2Descriptor h2_descriptor(const SupportInvariants &inv, FieldMode mode);

/// Number of classes of {+-1}-valued contractions with this support up to
/// sign normalization, predicted by a real-mode descriptor.
Integer sign_class_count(const H2Descriptor &real_descriptor);

/// Whether b = a * d(alpha) for some alpha: G -> F^x. Throws ValidationError
/// on invalid inputs.
bool equivalent_via_normalization(const Contraction &a, const Contraction &b, FieldMode mode);

/// True iff c takes value 1 on every surviving higher-order identity.
bool satisfies_surviving_identities(const Contraction &c);

struct SignInvariants {
  /// Representatives xi(c) in Z[G] coordinates of the generators c of the
  /// 2-torsion of C_S, one per even invariant factor.
  std::vector<IntVector> section;
  /// Invariant factor of C_S each generator comes from.
  std::vector<Integer> generator_orders;
  /// delta(c) = sgn(eps(xi(c)^2)), +1 or -1.
  std::vector<int> delta;
};

/// Sign invariants of the first kind. Requires a valid contraction that
/// satisfies all surviving higher-order identities (DomainError otherwise).
SignInvariants sign_invariants(const Contraction &c);

struct ClassificationRow {
  Support support;
  std::size_t n_prime = 0;
  std::size_t n_doubleprime = 0;
  AbelianGroupStructure kernel_part;
  AbelianGroupStructure cokernel_part;
  H2Descriptor descriptor;
};

/// One row per support in enumeration order. Work is spread over the given
/// number of threads; the result does not depend on it.
std::vector<ClassificationRow> classify_all(GroupPtr group, FieldMode mode, std::size_t threads = 1,
                                            std::size_t max_order = kDefaultMaxOrder);

ClassificationRow classify_support(const RelationComplex &complex, const Support &s, FieldMode mode);

} // namespace gradcon
