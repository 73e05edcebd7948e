#pragma once

#include "gradcon/lattice.hpp"

#include <cstdint>
#include <vector>

namespace gradcon::detail {

/// Incrementally reduced row space over F_2.
class F2Span {
public:
  using Row = std::vector<std::uint64_t>;

  explicit F2Span(std::size_t dim) : dim_(dim), words_((dim + 63) / 64) {}

  Row make_row() const { return Row(words_, 0); }

  static Row reduce_mod2(const IntVector &v) {
    Row r((v.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (mpz_odd_p(v[i].get_mpz_t()))
        r[i >> 6] |= std::uint64_t{1} << (i & 63);
    return r;
  }

  /// Reduces r against the stored rows; returns true if r was independent
  /// (and stores it).
  bool insert(Row r) {
    reduce(r);
    std::size_t p = pivot(r);
    if (p == dim_)
      return false;
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
  }

  bool contains(Row r) const {
    reduce(r);
    return pivot(r) == dim_;
  }

  std::size_t rank() const { return rows_.size(); }

private:
  void reduce(Row &r) const {
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if ((r[pivots_[i] >> 6] >> (pivots_[i] & 63)) & 1u)
        for (std::size_t w = 0; w < words_; ++w)
          r[w] ^= rows_[i][w];
  }
  std::size_t pivot(const Row &r) const {
    for (std::size_t w = 0; w < words_; ++w)
      if (r[w])
        return w * 64 + static_cast<std::size_t>(__builtin_ctzll(r[w]));
    return dim_;
  }

  std::size_t dim_;
  std::size_t words_;
  std::vector<Row> rows_;
  std::vector<std::size_t> pivots_;
};

} // namespace gradcon::detail
