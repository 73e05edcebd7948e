#include "gradcon/lattice.hpp"

#include "gradcon/error.hpp"

#include <algorithm>
#include <climits>
#include <sstream>
#include <utility>

namespace gradcon {

namespace {

// Elimination runs first on overflow-checked machine integers and is
// repeated with GMP integers only if an intermediate value overflows.
struct Overflow {};

struct Checked {
  long long v = 0;
  Checked() = default;
  Checked(long long x) : v(x) {}
};

inline bool is_zero(const Checked &a) { return a.v == 0; }
inline bool is_zero(const Integer &a) { return sgn(a) == 0; }
inline int sign_of(const Checked &a) { return (a.v > 0) - (a.v < 0); }
inline int sign_of(const Integer &a) { return sgn(a); }
inline bool abs_less(const Checked &a, const Checked &b) {
  unsigned long long x = a.v < 0 ? 0ull - static_cast<unsigned long long>(a.v) : static_cast<unsigned long long>(a.v);
  unsigned long long y = b.v < 0 ? 0ull - static_cast<unsigned long long>(b.v) : static_cast<unsigned long long>(b.v);
  return x < y;
}
inline bool abs_less(const Integer &a, const Integer &b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0; }

inline void negate(Checked &a) {
  if (a.v == LLONG_MIN)
    throw Overflow{};
  a.v = -a.v;
}
inline void negate(Integer &a) { mpz_neg(a.get_mpz_t(), a.get_mpz_t()); }

// x -= q * y
inline void submul(Checked &x, const Checked &q, const Checked &y) {
  long long p, r;
  if (__builtin_mul_overflow(q.v, y.v, &p) || __builtin_sub_overflow(x.v, p, &r))
    throw Overflow{};
  x.v = r;
}
inline void submul(Integer &x, const Integer &q, const Integer &y) {
  mpz_submul(x.get_mpz_t(), q.get_mpz_t(), y.get_mpz_t());
}
// x += y
inline void add_to(Checked &x, const Checked &y) {
  if (__builtin_add_overflow(x.v, y.v, &x.v))
    throw Overflow{};
}
inline void add_to(Integer &x, const Integer &y) { x += y; }

inline Checked floor_div(const Checked &a, const Checked &b) {
  if (b.v == -1 && a.v == LLONG_MIN)
    throw Overflow{};
  long long q = a.v / b.v;
  if ((a.v % b.v != 0) && ((a.v < 0) != (b.v < 0)))
    --q;
  return q;
}
inline Integer floor_div(const Integer &a, const Integer &b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
inline Checked trunc_div(const Checked &a, const Checked &b) {
  if (b.v == -1 && a.v == LLONG_MIN)
    throw Overflow{};
  return a.v / b.v;
}
inline Integer trunc_div(const Integer &a, const Integer &b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
inline bool divides(const Checked &d, const Checked &a) { return a.v % d.v == 0; }
inline bool divides(const Integer &d, const Integer &a) {
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

template <class Z> struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<Z> a;

  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  Z &operator()(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const Z &operator()(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = Z(1);
    return m;
  }
  void swap_rows(std::size_t i, std::size_t j) {
    if (i != j)
      for (std::size_t c = 0; c < cols; ++c)
        std::swap((*this)(i, c), (*this)(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i != j)
      for (std::size_t r = 0; r < rows; ++r)
        std::swap((*this)(r, i), (*this)(r, j));
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols; ++c)
      negate((*this)(i, c));
  }
  // row_i -= q * row_r over columns [from, cols)
  void row_submul(std::size_t i, const Z &q, std::size_t r, std::size_t from = 0) {
    for (std::size_t c = from; c < cols; ++c)
      if (!is_zero((*this)(r, c)))
        submul((*this)(i, c), q, (*this)(r, c));
  }
  void col_submul(std::size_t j, const Z &q, std::size_t t, std::size_t from = 0) {
    for (std::size_t r = from; r < rows; ++r)
      if (!is_zero((*this)(r, t)))
        submul((*this)(r, j), q, (*this)(r, t));
  }
  void row_add(std::size_t i, std::size_t r) {
    for (std::size_t c = 0; c < cols; ++c)
      add_to((*this)(i, c), (*this)(r, c));
  }
};

Mat<Checked> to_checked(const IntMatrix &m) {
  Mat<Checked> out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Integer &x = m(r, c);
      if (!x.fits_slong_p())
        throw Overflow{};
      out(r, c) = Checked(x.get_si());
    }
  return out;
}

Mat<Integer> to_big(const IntMatrix &m) {
  Mat<Integer> out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      out(r, c) = m(r, c);
  return out;
}

IntMatrix to_public(const Mat<Checked> &m) {
  IntMatrix out(m.rows, m.cols);
  for (std::size_t r = 0; r < m.rows; ++r)
    for (std::size_t c = 0; c < m.cols; ++c)
      out(r, c) = static_cast<long>(m(r, c).v);
  return out;
}

IntMatrix to_public(const Mat<Integer> &m) {
  IntMatrix out(m.rows, m.cols);
  for (std::size_t r = 0; r < m.rows; ++r)
    for (std::size_t c = 0; c < m.cols; ++c)
      out(r, c) = m(r, c);
  return out;
}

// Row echelon Hermite form in place; returns the rank. If t is given the
// same row operations are applied to it.
template <class Z> std::size_t hermite(Mat<Z> &a, Mat<Z> *t) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols && r < a.rows; ++c) {
    bool found = false;
    for (;;) {
      std::size_t piv = a.rows;
      for (std::size_t i = r; i < a.rows; ++i)
        if (!is_zero(a(i, c)) && (piv == a.rows || abs_less(a(i, c), a(piv, c))))
          piv = i;
      if (piv == a.rows)
        break;
      found = true;
      a.swap_rows(r, piv);
      if (t)
        t->swap_rows(r, piv);
      bool clean = true;
      for (std::size_t i = r + 1; i < a.rows; ++i) {
        if (is_zero(a(i, c)))
          continue;
        Z q = floor_div(a(i, c), a(r, c));
        a.row_submul(i, q, r, c);
        if (t)
          t->row_submul(i, q, r);
        if (!is_zero(a(i, c)))
          clean = false;
      }
      if (clean)
        break;
    }
    if (!found)
      continue;
    if (sign_of(a(r, c)) < 0) {
      a.negate_row(r);
      if (t)
        t->negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (is_zero(a(i, c)))
        continue;
      Z q = floor_div(a(i, c), a(r, c));
      if (is_zero(q))
        continue;
      a.row_submul(i, q, r, c);
      if (t)
        t->row_submul(i, q, r);
    }
    ++r;
  }
  return r;
}

// Smith form in place: u * a_in * v == a_out.
template <class Z> void smith(Mat<Z> &a, Mat<Z> *u, Mat<Z> *v) {
  const std::size_t n = std::min(a.rows, a.cols);
  for (std::size_t t = 0; t < n; ++t) {
    // smallest nonzero entry of the trailing block becomes the pivot
    std::size_t pi = a.rows, pj = a.cols;
    for (std::size_t i = t; i < a.rows; ++i)
      for (std::size_t j = t; j < a.cols; ++j)
        if (!is_zero(a(i, j)) && (pi == a.rows || abs_less(a(i, j), a(pi, pj))))
          pi = i, pj = j;
    if (pi == a.rows)
      return;
    a.swap_rows(t, pi);
    if (u)
      u->swap_rows(t, pi);
    a.swap_cols(t, pj);
    if (v)
      v->swap_cols(t, pj);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < a.rows; ++i) {
        if (is_zero(a(i, t)))
          continue;
        Z q = trunc_div(a(i, t), a(t, t));
        a.row_submul(i, q, t, t);
        if (u)
          u->row_submul(i, q, t);
        if (!is_zero(a(i, t)))
          dirty = true;
      }
      for (std::size_t j = t + 1; j < a.cols; ++j) {
        if (is_zero(a(t, j)))
          continue;
        Z q = trunc_div(a(t, j), a(t, t));
        a.col_submul(j, q, t, t);
        if (v)
          v->col_submul(j, q, t);
        if (!is_zero(a(t, j)))
          dirty = true;
      }
      if (dirty) {
        // move the smallest remainder in row t / column t onto the pivot
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < a.rows; ++i)
          if (!is_zero(a(i, t)) && abs_less(a(i, t), a(bi, bj)))
            bi = i, bj = t;
        for (std::size_t j = t + 1; j < a.cols; ++j)
          if (!is_zero(a(t, j)) && abs_less(a(t, j), a(bi, bj)))
            bi = t, bj = j;
        a.swap_rows(t, bi);
        if (u)
          u->swap_rows(t, bi);
        a.swap_cols(t, bj);
        if (v)
          v->swap_cols(t, bj);
        continue;
      }
      // divisibility chain: pull in a row whose entries the pivot does not divide
      std::size_t bad = a.rows;
      for (std::size_t i = t + 1; i < a.rows && bad == a.rows; ++i)
        for (std::size_t j = t + 1; j < a.cols; ++j)
          if (!divides(a(t, t), a(i, j))) {
            bad = i;
            break;
          }
      if (bad == a.rows)
        break;
      a.row_add(t, bad);
      if (u)
        u->row_add(t, bad);
    }
    if (sign_of(a(t, t)) < 0) {
      a.negate_row(t);
      if (u)
        u->negate_row(t);
    }
  }
}

template <class Z> IntMatrix hnf_rows(Mat<Z> a) {
  std::size_t r = hermite<Z>(a, nullptr);
  a.rows = r;
  a.a.resize(r * a.cols);
  return to_public(a);
}

template <class Z> HermiteTransform hnf_transform_impl(Mat<Z> a) {
  auto t = Mat<Z>::identity(a.rows);
  std::size_t r = hermite<Z>(a, &t);
  return {to_public(a), to_public(t), r};
}

template <class Z> SmithForm snf_impl(Mat<Z> a) {
  auto u = Mat<Z>::identity(a.rows);
  auto v = Mat<Z>::identity(a.cols);
  smith<Z>(a, &u, &v);
  return {to_public(u), to_public(a), to_public(v)};
}

template <class Z> std::vector<Integer> invariants_impl(Mat<Z> a) {
  // a Hermite pass first shrinks the matrix to its rank
  std::size_t r = hermite<Z>(a, nullptr);
  a.rows = r;
  a.a.resize(r * a.cols);
  smith<Z>(a, nullptr, nullptr);
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(a.rows, a.cols); ++i) {
    if (is_zero(a(i, i)))
      break;
    if constexpr (std::is_same_v<Z, Checked>)
      out.emplace_back(static_cast<long>(a(i, i).v));
    else
      out.push_back(a(i, i));
  }
  return out;
}

template <class Fn> auto fast_then_exact(const IntMatrix &m, Fn &&fn) {
  try {
    return fn(to_checked(m));
  } catch (const Overflow &) {
    return fn(to_big(m));
  }
}

} // namespace

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  a_.reserve(rows_ * cols_);
  for (const auto &r : rows) {
    if (r.size() != cols_)
      throw DomainError("ragged matrix literal");
    for (long x : r)
      a_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector> &rows, std::size_t cols) {
  IntMatrix m(0, cols);
  for (const auto &r : rows)
    m.append_row(r);
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(a_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   a_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void IntMatrix::append_row(const IntVector &v) {
  if (v.size() != cols_)
    throw DomainError("row length does not match matrix width");
  a_.insert(a_.end(), v.begin(), v.end());
  ++rows_;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      t(c, r) = (*this)(r, c);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Integer &x) { return sgn(x) == 0; });
}

IntMatrix operator*(const IntMatrix &a, const IntMatrix &b) {
  if (a.cols_ != b.rows_)
    throw DomainError("matrix dimensions do not agree");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer &x = a(i, k);
      if (sgn(x) == 0)
        continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        mpz_addmul(out(i, j).get_mpz_t(), x.get_mpz_t(), b(k, j).get_mpz_t());
    }
  return out;
}

IntMatrix hnf(const IntMatrix &m) {
  return fast_then_exact(m, [](auto a) { return hnf_rows(std::move(a)); });
}

HermiteTransform hnf_with_transform(const IntMatrix &m) {
  return fast_then_exact(m, [](auto a) { return hnf_transform_impl(std::move(a)); });
}

SmithForm snf(const IntMatrix &m) {
  return fast_then_exact(m, [](auto a) { return snf_impl(std::move(a)); });
}

std::vector<Integer> smith_invariants(const IntMatrix &m) {
  return fast_then_exact(m, [](auto a) { return invariants_impl(std::move(a)); });
}

std::size_t rank(const IntMatrix &m) { return hnf(m).rows(); }

std::string AbelianGroupStructure::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (free_rank) {
    os << "Z";
    if (free_rank > 1)
      os << "^" << free_rank;
    first = false;
  }
  for (const auto &d : torsion) {
    if (!first)
      os << " + ";
    os << "Z/" << d.get_str();
    first = false;
  }
  return first ? "0" : os.str();
}

IntegerLattice::IntegerLattice(std::size_t ambient_dim) : dim_(ambient_dim), basis_(0, ambient_dim) {}

IntegerLattice::IntegerLattice(const IntMatrix &generators)
    : dim_(generators.cols()), basis_(hnf(generators)) {}

IntegerLattice::IntegerLattice(const std::vector<IntVector> &generators, std::size_t ambient_dim)
    : IntegerLattice(IntMatrix::from_rows(generators, ambient_dim)) {}

IntegerLattice IntegerLattice::full(std::size_t ambient_dim) {
  return IntegerLattice(IntMatrix::identity(ambient_dim));
}

std::optional<IntVector> IntegerLattice::coordinates(const IntVector &v) const {
  if (v.size() != dim_)
    throw DomainError("vector dimension does not match the lattice");
  IntVector rest = v;
  IntVector coeff(basis_.rows());
  std::size_t col = 0;
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    while (sgn(basis_(i, col)) == 0) {
      if (sgn(rest[col]) != 0)
        return std::nullopt;
      ++col;
    }
    const Integer &pivot = basis_(i, col);
    if (!mpz_divisible_p(rest[col].get_mpz_t(), pivot.get_mpz_t()))
      return std::nullopt;
    mpz_divexact(coeff[i].get_mpz_t(), rest[col].get_mpz_t(), pivot.get_mpz_t());
    if (sgn(coeff[i]) != 0)
      for (std::size_t c = col; c < dim_; ++c)
        mpz_submul(rest[c].get_mpz_t(), coeff[i].get_mpz_t(), basis_(i, c).get_mpz_t());
    ++col;
  }
  for (std::size_t c = col; c < dim_; ++c)
    if (sgn(rest[c]) != 0)
      return std::nullopt;
  return coeff;
}

IntegerLattice kernel(const IntMatrix &m) {
  // rows of the transform that produce zero rows span the left kernel of m^T
  HermiteTransform ht = hnf_with_transform(m.transpose());
  IntMatrix gens(0, m.cols());
  for (std::size_t r = ht.rank; r < ht.t.rows(); ++r)
    gens.append_row(ht.t.row(r));
  return IntegerLattice(gens);
}

AbelianGroupStructure quotient_structure(const IntegerLattice &ambient, const IntegerLattice &sub) {
  if (ambient.ambient_dim() != sub.ambient_dim())
    throw DomainError("lattices live in different ambient spaces");
  IntMatrix coords(0, ambient.rank());
  for (std::size_t i = 0; i < sub.rank(); ++i) {
    auto c = ambient.coordinates(sub.basis_vector(i));
    if (!c)
      throw DomainError("sublattice is not contained in the ambient lattice");
    coords.append_row(*c);
  }
  AbelianGroupStructure out;
  auto inv = smith_invariants(coords);
  out.free_rank = ambient.rank() - inv.size();
  for (auto &d : inv)
    if (d != 1)
      out.torsion.push_back(std::move(d));
  return out;
}

IntegerLattice intersect(const IntegerLattice &a, const IntegerLattice &b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw DomainError("lattices live in different ambient spaces");
  const std::size_t k = a.ambient_dim();
  IntMatrix stacked(0, k);
  for (std::size_t i = 0; i < a.rank(); ++i)
    stacked.append_row(a.basis_vector(i));
  for (std::size_t i = 0; i < b.rank(); ++i)
    stacked.append_row(b.basis_vector(i));
  // (x, y) with x A + y B = 0 gives the common element x A
  IntegerLattice rel = kernel(stacked.transpose());
  IntMatrix gens(0, k);
  for (std::size_t i = 0; i < rel.rank(); ++i) {
    IntVector row(k);
    for (std::size_t j = 0; j < a.rank(); ++j) {
      const Integer &x = rel.basis()(i, j);
      if (sgn(x) == 0)
        continue;
      for (std::size_t c = 0; c < k; ++c)
        mpz_addmul(row[c].get_mpz_t(), x.get_mpz_t(), a.basis()(j, c).get_mpz_t());
    }
    gens.append_row(row);
  }
  return IntegerLattice(gens);
}

bool contains(const IntegerLattice &l, const IntVector &v) { return l.coordinates(v).has_value(); }

IntegerLattice saturate(const IntegerLattice &l) {
  if (l.rank() == 0)
    return l;
  IntegerLattice orth = kernel(l.basis());
  if (orth.rank() == 0)
    return IntegerLattice::full(l.ambient_dim());
  return kernel(orth.basis());
}

IntVector to_int_vector(std::initializer_list<long> values) {
  IntVector v;
  for (long x : values)
    v.emplace_back(x);
  return v;
}

} // namespace gradcon
