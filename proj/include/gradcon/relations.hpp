#pragma once

#include "gradcon/abelian.hpp"
#include "gradcon/lattice.hpp"
#include "gradcon/support.hpp"

#include <array>
#include <optional>
#include <vector>

namespace gradcon {

/// Exponent vector of {h,k}{g,hk}{g,h}^-1{gh,k}^-1 over the pair basis,
/// after cancellation.
struct RelatorVector {
  IntVector exponents;
  std::optional<std::array<std::size_t, 3>> triple; // originating (g, h, k)
  BitSet support;                                    // nonzero coordinates
};

/// The map {g,h} -> g + h - gh from the pair basis to Z[G]:
/// |G| rows indexed by elements, one column per pair.
struct Boundary2Matrix {
  IntMatrix a;
};

Boundary2Matrix boundary2(const AbelianGroup &group);

/// One relator per triple with zero vectors dropped and duplicates
/// (including negatives) merged; the first triple producing a vector is kept.
std::vector<RelatorVector> relators(const AbelianGroup &group);

/// ker of boundary2, i.e. the lattice of all higher-order identities.
IntegerLattice global_identity_lattice(const AbelianGroup &group);

/// Lattice generated by relators(group).
IntegerLattice relator_lattice(const AbelianGroup &group);

struct SupportInvariants {
  Support support;
  std::vector<std::size_t> columns;  // pair indices of the support, increasing; coordinates of Z^S
  std::size_t group_order = 0;       // N
  std::size_t n_prime = 0;           // rank of F_S / (<R_G> cap F_S)
  std::size_t n_doubleprime = 0;     // free rank of F_S / <R_S>
  AbelianGroupStructure kernel_part; // K_S = (<R_G> cap F_S) / <R_S>
  AbelianGroupStructure image_part;  // I_S = F_S / (<R_G> cap F_S)
  AbelianGroupStructure cokernel_part; // C_S = im d2 / d2(F_S)
  IntegerLattice surviving_identities; // L_S = ker A_S inside Z^S
  IntegerLattice surviving_relators;   // <R_S> inside Z^S
};

enum class IndependenceMode { independent, quasi_independent };

/// Group data shared across many support computations: boundary matrix,
/// relators with their supports and the column lattice of the boundary.
class RelationComplex {
public:
  explicit RelationComplex(GroupPtr group);

  const GroupPtr &group() const { return group_; }
  const Boundary2Matrix &boundary() const { return boundary_; }
  const std::vector<RelatorVector> &relator_list() const { return relators_; }
  /// im d2 as a full-rank sublattice of Z^N.
  const IntegerLattice &boundary_image() const { return image_; }

  /// Columns of the boundary restricted to the given pairs, as an N x |S| matrix.
  IntMatrix restricted_boundary(const std::vector<std::size_t> &columns) const;

  /// Relators supported inside s, restricted to the coordinates of s.
  std::vector<IntVector> surviving_relators(const Support &s, const std::vector<std::size_t> &columns) const;

  SupportInvariants invariants(const Support &s) const;

  /// L_S only (cheap path for sweeps that need no relator lattice).
  IntegerLattice surviving_identity_lattice(const std::vector<std::size_t> &columns) const;

  std::vector<std::size_t> independent_subset(const Support &s, IndependenceMode mode) const;

private:
  GroupPtr group_;
  Boundary2Matrix boundary_;
  std::vector<RelatorVector> relators_;
  IntegerLattice image_;
};

SupportInvariants support_invariants(const Support &s);
std::vector<std::size_t> independent_subset(const Support &s, IndependenceMode mode);

} // namespace gradcon
