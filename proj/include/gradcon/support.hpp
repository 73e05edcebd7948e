#pragma once

#include "gradcon/abelian.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

namespace gradcon {

/// Largest pair-set size a support bitset can hold.
inline constexpr std::size_t kMaxPairs = 4096;

/// Fixed-capacity bitset over [0, size). Only the first words() words are
/// ever touched, so small groups stay cheap.
class BitSet {
public:
  BitSet() = default;
  explicit BitSet(std::size_t size);

  std::size_t size() const { return size_; }
  std::size_t words() const { return (size_ + 63) / 64; }

  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void fill();
  /// Clears every bit at position >= i.
  void truncate(std::size_t i);

  std::size_t count() const;
  bool none() const;
  bool is_subset_of(const BitSet &other) const;
  /// True iff both sets agree on positions [0, i).
  bool same_prefix(const BitSet &other, std::size_t i) const;

  BitSet &operator&=(const BitSet &other);
  BitSet &operator|=(const BitSet &other);
  friend bool operator==(const BitSet &a, const BitSet &b);

  std::vector<std::size_t> indices() const;

private:
  std::size_t size_ = 0;
  std::array<std::uint64_t, kMaxPairs / 64> w_{};
};

/// A subset of the pair set of a group, stored as a bitset over PairIndex.
/// Whether it is a closed support depends on an ImplicationSystem.
class Support {
public:
  Support() = default;
  explicit Support(GroupPtr group);
  Support(GroupPtr group, BitSet bits);

  static Support empty(GroupPtr group) { return Support(std::move(group)); }
  static Support full(GroupPtr group);
  static Support from_indices(GroupPtr group, const std::vector<std::size_t> &pairs);

  const GroupPtr &group() const { return group_; }
  const BitSet &bits() const { return bits_; }

  bool contains(std::size_t pair) const { return bits_.test(pair); }
  void insert(std::size_t pair) { bits_.set(pair); }
  void erase(std::size_t pair) { bits_.reset(pair); }
  std::size_t size() const { return bits_.count(); }
  bool is_full() const { return bits_.count() == bits_.size(); }
  std::vector<std::size_t> indices() const { return bits_.indices(); }
  bool is_subset_of(const Support &other) const { return bits_.is_subset_of(other.bits_); }

  friend bool operator==(const Support &a, const Support &b) { return a.bits_ == b.bits_; }

private:
  GroupPtr group_;
  BitSet bits_;
};

Support intersection(const Support &a, const Support &b);

/// Horn implications {g,h} and {gh,k} => {h,k} and {g,hk}, one entry per
/// distinct (premise, conclusion) after dropping conclusions already in
/// the premise. Its closed sets are exactly the contraction supports.
class ImplicationSystem {
public:
  struct Implication {
    std::uint16_t premise[2];   // equal entries mean a one-element premise
    std::uint16_t conclusion[2];
    std::uint8_t conclusion_size;

    friend bool operator==(const Implication &, const Implication &) = default;
  };

  explicit ImplicationSystem(GroupPtr group);

  const GroupPtr &group() const { return group_; }
  const std::vector<Implication> &implications() const { return imps_; }

  /// Smallest closed superset, computed in place.
  void close_in_place(BitSet &bits) const;

private:
  GroupPtr group_;
  std::vector<Implication> imps_;
  // CSR index: implications having pair p in their premise
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> by_premise_;
};

ImplicationSystem build_implications(GroupPtr group);

Support close(const Support &s, const ImplicationSystem &sys);
bool is_support(const Support &s, const ImplicationSystem &sys);

/// Default bound on the group order accepted by the enumerators.
inline constexpr std::size_t kDefaultMaxOrder = 12;

/// Visits every closed support exactly once in lectic (Next Closure) order.
/// Throws DomainError when the group order exceeds max_order.
void for_each_support(const ImplicationSystem &sys, const std::function<void(const BitSet &)> &visit,
                      std::size_t max_order = kDefaultMaxOrder);

std::vector<Support> enumerate_supports(const ImplicationSystem &sys, std::size_t max_order = kDefaultMaxOrder);
std::size_t count_supports(const ImplicationSystem &sys, std::size_t max_order = kDefaultMaxOrder);

/// Inclusion-maximal supports not containing the given pair.
std::vector<Support> maximal_supports_avoiding(std::size_t pair, const ImplicationSystem &sys,
                                               std::size_t max_order = kDefaultMaxOrder);

/// Intersection of two supports; throws ValidationError if either is not closed.
Support meet(const Support &a, const Support &b, const ImplicationSystem &sys);

} // namespace gradcon
