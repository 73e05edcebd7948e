#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace gradcon {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector> &rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer &operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Integer &operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  void append_row(const IntVector &v);
  IntMatrix transpose() const;
  bool is_zero() const;

  friend IntMatrix operator*(const IntMatrix &a, const IntMatrix &b);
  friend bool operator==(const IntMatrix &a, const IntMatrix &b) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> a_;
};

/// Row-style Hermite normal form of the row lattice; zero rows removed.
/// Pivots are positive and entries above a pivot lie in [0, pivot).
IntMatrix hnf(const IntMatrix &m);

struct HermiteTransform {
  IntMatrix h;        // all rows of the echelon form, zero rows last
  IntMatrix t;        // unimodular, t * m == h
  std::size_t rank;   // number of nonzero rows of h
};
HermiteTransform hnf_with_transform(const IntMatrix &m);

/// U * m * V == D with D diagonal, d1 | d2 | ..., U and V unimodular.
struct SmithForm {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
};
SmithForm snf(const IntMatrix &m);

/// Nonzero diagonal entries of the Smith form, in divisibility order.
std::vector<Integer> smith_invariants(const IntMatrix &m);

/// Free rank plus torsion invariant factors (each >= 2, d1 | d2 | ...).
struct AbelianGroupStructure {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool is_free() const { return torsion.empty(); }
  std::string to_string() const;

  friend bool operator==(const AbelianGroupStructure &, const AbelianGroupStructure &) = default;
};

/// A sublattice of Z^k stored by its Hermite basis, so equal lattices
/// have identical representations.
class IntegerLattice {
public:
  IntegerLattice() = default;
  explicit IntegerLattice(std::size_t ambient_dim);
  /// Lattice spanned by the rows of generators.
  explicit IntegerLattice(const IntMatrix &generators);
  IntegerLattice(const std::vector<IntVector> &generators, std::size_t ambient_dim);

  static IntegerLattice full(std::size_t ambient_dim);

  std::size_t ambient_dim() const { return dim_; }
  std::size_t rank() const { return basis_.rows(); }
  const IntMatrix &basis() const { return basis_; }
  IntVector basis_vector(std::size_t i) const { return basis_.row(i); }

  /// Coefficients of v in the stored basis, or nullopt if v is not in the lattice.
  std::optional<IntVector> coordinates(const IntVector &v) const;

  friend bool operator==(const IntegerLattice &, const IntegerLattice &) = default;

private:
  std::size_t dim_ = 0;
  IntMatrix basis_;
};

/// {x in Z^cols : m x = 0}.
IntegerLattice kernel(const IntMatrix &m);

/// Structure of ambient / sub; throws DomainError unless sub is contained in ambient.
AbelianGroupStructure quotient_structure(const IntegerLattice &ambient, const IntegerLattice &sub);

IntegerLattice intersect(const IntegerLattice &a, const IntegerLattice &b);
bool contains(const IntegerLattice &l, const IntVector &v);
IntegerLattice saturate(const IntegerLattice &l);

/// Rank of the row space over Q.
std::size_t rank(const IntMatrix &m);

IntVector to_int_vector(std::initializer_list<long> values);

} // namespace gradcon
