#pragma once

#include "gradcon/cohomology.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gradcon {

/// Sparse vector over the basis: index -> nonzero coefficient.
using SparseVector = std::map<std::size_t, Rational>;

/// [x_i, x_j] for i < j; the diagonal is zero and [x_j, x_i] = -[x_i, x_j].
using StructureConstants = std::map<std::pair<std::size_t, std::size_t>, SparseVector>;

struct AlgebraCheck {
  bool ok = true;
  std::optional<std::array<std::size_t, 3>> triple; // offending basis indices
  std::string diagnostic;
};

/// A finite-dimensional G-graded Lie algebra with exact structure constants
/// on a homogeneous basis. Instances are always validated.
class GradedAlgebra {
public:
  /// Validates degree compatibility and the Jacobi identity; throws
  /// ValidationError naming the offending triple otherwise.
  GradedAlgebra(GroupPtr group, std::vector<std::size_t> degrees, StructureConstants structure);

  /// Checks without throwing. Zero coefficients are dropped first.
  static AlgebraCheck check(const AbelianGroup &group, const std::vector<std::size_t> &degrees,
                            const StructureConstants &structure);

  const GroupPtr &group() const { return group_; }
  std::size_t dimension() const { return degrees_.size(); }
  const std::vector<std::size_t> &degrees() const { return degrees_; }
  std::size_t degree(std::size_t i) const { return degrees_[i]; }
  const StructureConstants &structure() const { return structure_; }

  /// [x_i, x_j] for any i, j.
  SparseVector bracket(std::size_t i, std::size_t j) const;

  friend bool operator==(const GradedAlgebra &a, const GradedAlgebra &b) {
    return a.group_->spec() == b.group_->spec() && a.degrees_ == b.degrees_ && a.structure_ == b.structure_;
  }

private:
  GroupPtr group_;
  std::vector<std::size_t> degrees_;
  StructureConstants structure_;
};

/// Pairs {deg i, deg j} over all nonzero brackets.
Support second_support(const GradedAlgebra &a);

/// Scales each [x_i, x_j] by c(deg i, deg j). Throws ValidationError if the
/// result is not a Lie algebra, which cannot happen for a valid c.
GradedAlgebra apply_contraction(const GradedAlgebra &a, const Contraction &c);

/// Two-step nilpotent algebra on generators x_g (index g), y_g (index N + g)
/// with one central element per bracket of generators over each pair of s.
/// Central elements follow in pair order; for {g, h} with g != h the four
/// brackets [x_g,x_h], [x_g,y_h], [y_g,x_h], [y_g,y_h], for {g, g} only
/// [x_g,y_g]. Its second support is exactly s.
GradedAlgebra witness_algebra(const Support &s);

/// Structure constants after rescaling x -> alpha(g) x on degree g:
/// [x_i, x_j] picks up alpha(deg i) alpha(deg j) / alpha(deg i deg j).
/// alpha is indexed by group element; throws DomainError if a degree in use
/// has no value or a zero value.
GradedAlgebra apply_normalization(const GradedAlgebra &a, const std::map<std::size_t, Rational> &alpha);

} // namespace gradcon
