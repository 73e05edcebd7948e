#include "gradcon/support.hpp"

#include "gradcon/error.hpp"

#include <algorithm>
#include <string>

namespace gradcon {

BitSet::BitSet(std::size_t size) : size_(size) {
  if (size > kMaxPairs)
    throw DomainError("pair set of size " + std::to_string(size) + " exceeds the supported maximum of " +
                      std::to_string(kMaxPairs));
}

void BitSet::fill() {
  std::size_t n = words();
  for (std::size_t i = 0; i < n; ++i)
    w_[i] = ~std::uint64_t{0};
  if (size_ & 63)
    w_[n - 1] = (std::uint64_t{1} << (size_ & 63)) - 1;
}

void BitSet::truncate(std::size_t i) {
  std::size_t n = words();
  std::size_t word = i >> 6;
  if (word >= n)
    return;
  w_[word] &= (std::uint64_t{1} << (i & 63)) - 1;
  for (std::size_t j = word + 1; j < n; ++j)
    w_[j] = 0;
}

std::size_t BitSet::count() const {
  std::size_t c = 0;
  for (std::size_t i = 0, n = words(); i < n; ++i)
    c += static_cast<std::size_t>(std::popcount(w_[i]));
  return c;
}

bool BitSet::none() const {
  for (std::size_t i = 0, n = words(); i < n; ++i)
    if (w_[i])
      return false;
  return true;
}

bool BitSet::is_subset_of(const BitSet &other) const {
  for (std::size_t i = 0, n = words(); i < n; ++i)
    if (w_[i] & ~other.w_[i])
      return false;
  return true;
}

bool BitSet::same_prefix(const BitSet &other, std::size_t i) const {
  std::size_t word = i >> 6;
  for (std::size_t j = 0; j < word; ++j)
    if (w_[j] != other.w_[j])
      return false;
  if (i & 63) {
    std::uint64_t mask = (std::uint64_t{1} << (i & 63)) - 1;
    if ((w_[word] ^ other.w_[word]) & mask)
      return false;
  }
  return true;
}

BitSet &BitSet::operator&=(const BitSet &other) {
  for (std::size_t i = 0, n = words(); i < n; ++i)
    w_[i] &= other.w_[i];
  return *this;
}

BitSet &BitSet::operator|=(const BitSet &other) {
  for (std::size_t i = 0, n = words(); i < n; ++i)
    w_[i] |= other.w_[i];
  return *this;
}

bool operator==(const BitSet &a, const BitSet &b) {
  if (a.size_ != b.size_)
    return false;
  for (std::size_t i = 0, n = a.words(); i < n; ++i)
    if (a.w_[i] != b.w_[i])
      return false;
  return true;
}

std::vector<std::size_t> BitSet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0, n = words(); i < n; ++i) {
    std::uint64_t w = w_[i];
    while (w) {
      out.push_back(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

Support::Support(GroupPtr group) : group_(std::move(group)), bits_(group_->pair_count()) {}

Support::Support(GroupPtr group, BitSet bits) : group_(std::move(group)), bits_(bits) {
  if (bits_.size() != group_->pair_count())
    throw DomainError("bitset size does not match the pair set of the group");
}

Support Support::full(GroupPtr group) {
  Support s(std::move(group));
  s.bits_.fill();
  return s;
}

Support Support::from_indices(GroupPtr group, const std::vector<std::size_t> &pairs) {
  Support s(std::move(group));
  for (std::size_t p : pairs) {
    if (p >= s.bits_.size())
      throw DomainError("pair index " + std::to_string(p) + " out of range");
    s.insert(p);
  }
  return s;
}

Support intersection(const Support &a, const Support &b) {
  BitSet bits = a.bits();
  bits &= b.bits();
  return Support(a.group(), bits);
}

ImplicationSystem::ImplicationSystem(GroupPtr group) : group_(std::move(group)) {
  const AbelianGroup &G = *group_;
  const std::size_t n = G.order();
  const std::size_t m = G.pair_count();
  if (m > kMaxPairs)
    throw DomainError("group " + G.spec().to_string() + " is too large for support bitsets");

  std::vector<Implication> raw;
  raw.reserve(n * n * n);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t k = 0; k < n; ++k) {
        std::size_t gh = G.mul(g, h), hk = G.mul(h, k);
        auto p1 = static_cast<std::uint16_t>(G.pair(g, h));
        auto p2 = static_cast<std::uint16_t>(G.pair(gh, k));
        auto c1 = static_cast<std::uint16_t>(G.pair(h, k));
        auto c2 = static_cast<std::uint16_t>(G.pair(g, hk));
        Implication imp{};
        imp.premise[0] = std::min(p1, p2);
        imp.premise[1] = std::max(p1, p2);
        for (auto c : {c1, c2}) {
          if (c == p1 || c == p2)
            continue;
          if (imp.conclusion_size == 1 && imp.conclusion[0] == c)
            continue;
          imp.conclusion[imp.conclusion_size++] = c;
        }
        if (imp.conclusion_size == 0)
          continue;
        if (imp.conclusion_size == 2 && imp.conclusion[0] > imp.conclusion[1])
          std::swap(imp.conclusion[0], imp.conclusion[1]);
        raw.push_back(imp);
      }
  auto key = [](const Implication &x) {
    return std::tuple(x.premise[0], x.premise[1], x.conclusion_size, x.conclusion[0],
                      x.conclusion_size == 2 ? x.conclusion[1] : std::uint16_t{0});
  };
  std::sort(raw.begin(), raw.end(), [&](const auto &a, const auto &b) { return key(a) < key(b); });
  for (const auto &imp : raw)
    if (imps_.empty() || key(imps_.back()) != key(imp))
      imps_.push_back(imp);

  offsets_.assign(m + 1, 0);
  for (const auto &imp : imps_) {
    ++offsets_[imp.premise[0] + 1];
    if (imp.premise[1] != imp.premise[0])
      ++offsets_[imp.premise[1] + 1];
  }
  for (std::size_t p = 0; p < m; ++p)
    offsets_[p + 1] += offsets_[p];
  by_premise_.resize(offsets_[m]);
  std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::uint32_t i = 0; i < imps_.size(); ++i) {
    const auto &imp = imps_[i];
    by_premise_[fill[imp.premise[0]]++] = i;
    if (imp.premise[1] != imp.premise[0])
      by_premise_[fill[imp.premise[1]]++] = i;
  }
}

void ImplicationSystem::close_in_place(BitSet &bits) const {
  std::uint16_t stack[kMaxPairs];
  std::size_t top = 0;
  for (std::size_t p : bits.indices())
    stack[top++] = static_cast<std::uint16_t>(p);
  while (top) {
    std::uint16_t p = stack[--top];
    for (std::uint32_t e = offsets_[p]; e < offsets_[p + 1]; ++e) {
      const Implication &imp = imps_[by_premise_[e]];
      if (!bits.test(imp.premise[0]) || !bits.test(imp.premise[1]))
        continue;
      for (std::uint8_t c = 0; c < imp.conclusion_size; ++c)
        if (!bits.test(imp.conclusion[c])) {
          bits.set(imp.conclusion[c]);
          stack[top++] = imp.conclusion[c];
        }
    }
  }
}

ImplicationSystem build_implications(GroupPtr group) { return ImplicationSystem(std::move(group)); }

Support close(const Support &s, const ImplicationSystem &sys) {
  BitSet bits = s.bits();
  sys.close_in_place(bits);
  return Support(s.group(), bits);
}

bool is_support(const Support &s, const ImplicationSystem &sys) {
  BitSet bits = s.bits();
  sys.close_in_place(bits);
  return bits == s.bits();
}

void for_each_support(const ImplicationSystem &sys, const std::function<void(const BitSet &)> &visit,
                      std::size_t max_order) {
  const AbelianGroup &G = *sys.group();
  if (G.order() > max_order)
    throw DomainError("group order " + std::to_string(G.order()) + " exceeds the enumeration bound " +
                      std::to_string(max_order));
  const std::size_t m = G.pair_count();

  BitSet current(m);
  sys.close_in_place(current);
  visit(current);
  for (;;) {
    bool advanced = false;
    for (std::size_t i = m; i-- > 0;) {
      if (current.test(i)) {
        current.reset(i);
        continue;
      }
      BitSet candidate = current;
      candidate.truncate(i);
      candidate.set(i);
      sys.close_in_place(candidate);
      if (candidate.same_prefix(current, i)) {
        current = candidate;
        advanced = true;
        break;
      }
    }
    if (!advanced)
      return;
    visit(current);
  }
}

std::vector<Support> enumerate_supports(const ImplicationSystem &sys, std::size_t max_order) {
  std::vector<Support> out;
  for_each_support(sys, [&](const BitSet &bits) { out.emplace_back(sys.group(), bits); }, max_order);
  return out;
}

std::size_t count_supports(const ImplicationSystem &sys, std::size_t max_order) {
  std::size_t n = 0;
  for_each_support(sys, [&](const BitSet &) { ++n; }, max_order);
  return n;
}

std::vector<Support> maximal_supports_avoiding(std::size_t pair, const ImplicationSystem &sys,
                                               std::size_t max_order) {
  const std::size_t m = sys.group()->pair_count();
  if (pair >= m)
    throw DomainError("pair index " + std::to_string(pair) + " out of range");
  std::vector<Support> out;
  for_each_support(
      sys,
      [&](const BitSet &bits) {
        if (bits.test(pair))
          return;
        for (std::size_t q = 0; q < m; ++q) {
          if (q == pair || bits.test(q))
            continue;
          BitSet grown = bits;
          grown.set(q);
          sys.close_in_place(grown);
          if (!grown.test(pair))
            return; // a larger closed set still avoids the pair
        }
        out.emplace_back(sys.group(), bits);
      },
      max_order);
  return out;
}

Support meet(const Support &a, const Support &b, const ImplicationSystem &sys) {
  if (!is_support(a, sys) || !is_support(b, sys))
    throw ValidationError("meet requires closed supports");
  return intersection(a, b);
}

} // namespace gradcon
