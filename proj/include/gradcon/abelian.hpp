#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gradcon {

/// A finite abelian group Z_{k1} x ... x Z_{kr} in invariant-factor form,
/// k1 | k2 | ... | kr, every ki >= 2. The trivial group has no factors.
class GroupSpec {
public:
  GroupSpec() = default;

  /// Accepts any list of cyclic orders (each >= 2) and normalizes it to
  /// invariant factors, so {2, 3} and {6} produce the same spec.
  explicit GroupSpec(const std::vector<long> &cyclic_factors);

  const std::vector<long> &invariant_factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  std::size_t order() const;

  /// Canonical text, e.g. "Z2xZ4"; the trivial group prints as "1".
  std::string to_string() const;

  friend bool operator==(const GroupSpec &, const GroupSpec &) = default;

private:
  std::vector<long> factors_;
};

/// Parses "Z2", "Z2xZ4", "z6" ... (case-insensitive). "1" is the trivial group.
GroupSpec parse_group(std::string_view text);

struct Element {
  std::vector<long> residues;

  friend bool operator==(const Element &, const Element &) = default;
  friend auto operator<=>(const Element &, const Element &) = default;
};

/// Componentwise sum modulo the invariant factors.
Element mul(const Element &g, const Element &h, const GroupSpec &spec);

/// Unordered pair {first, second}; the constructor sorts so first <= second.
struct Pair {
  Element first;
  Element second;

  Pair(Element a, Element b);

  friend bool operator==(const Pair &, const Pair &) = default;
  friend auto operator<=>(const Pair &, const Pair &) = default;
};

/// Canonical enumeration of all unordered pairs of group elements,
/// lexicographic by (first, second) on element indices.
class PairIndex {
public:
  explicit PairIndex(std::size_t group_order);

  std::size_t size() const { return pairs_.size(); }
  std::size_t group_order() const { return order_; }

  /// Element indices of pair number p, first <= second.
  std::pair<std::size_t, std::size_t> at(std::size_t p) const { return pairs_[p]; }
  std::size_t index_of(std::size_t g, std::size_t h) const { return lookup_[g * order_ + h]; }

private:
  std::size_t order_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::vector<std::size_t> lookup_;
};

/// Immutable group context shared by supports, lattices and contractions.
/// Elements are numbered in lexicographic order of their residue tuples
/// (mixed radix, first factor most significant); the identity is 0.
class AbelianGroup {
public:
  static std::shared_ptr<const AbelianGroup> make(const GroupSpec &spec);

  const GroupSpec &spec() const { return spec_; }
  std::size_t order() const { return order_; }
  const PairIndex &pairs() const { return pairs_; }
  std::size_t pair_count() const { return pairs_.size(); }

  std::size_t mul(std::size_t g, std::size_t h) const { return table_[g * order_ + h]; }
  std::size_t inverse(std::size_t g) const { return inverse_[g]; }
  std::size_t identity() const { return 0; }

  Element element(std::size_t g) const;
  std::size_t index_of(const Element &e) const;

  /// Pair index of {g, h}.
  std::size_t pair(std::size_t g, std::size_t h) const { return pairs_.index_of(g, h); }
  Pair pair_elements(std::size_t p) const;
  std::size_t index_of(const Pair &p) const;

  /// Number of elements of order dividing 2, as an exponent: |G_[2]| = 2^r.
  std::size_t two_torsion_rank() const;

  /// "g" as comma-separated residues, e.g. "1,3".
  std::string element_text(std::size_t g) const;
  /// Parses element_text output.
  std::size_t parse_element(std::string_view text) const;
  /// Canonical pair key "g|h".
  std::string pair_key(std::size_t p) const;
  std::size_t parse_pair_key(std::string_view text) const;

private:
  explicit AbelianGroup(const GroupSpec &spec);

  GroupSpec spec_;
  std::size_t order_;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> inverse_;
  PairIndex pairs_;
};

using GroupPtr = std::shared_ptr<const AbelianGroup>;

} // namespace gradcon
