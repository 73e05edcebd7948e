#include "gradcon/abelian.hpp"

#include "gradcon/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace gradcon {

namespace {

long parse_positive(std::string_view digits, std::string_view whole) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty())
    throw ParseError("malformed group string '" + std::string(whole) + "'");
  return value;
}

} // namespace

GroupSpec::GroupSpec(const std::vector<long> &cyclic_factors) {
  // prime -> exponents of the prime-power parts, one per cyclic factor
  std::map<long, std::vector<long>> primary;
  for (long k : cyclic_factors) {
    if (k < 2)
      throw DomainError("cyclic factor must be at least 2, got " + std::to_string(k));
    long n = k;
    for (long p = 2; p * p <= n; ++p) {
      long q = 1;
      while (n % p == 0) {
        n /= p;
        q *= p;
      }
      if (q > 1)
        primary[p].push_back(q);
    }
    if (n > 1)
      primary[n].push_back(n);
  }
  std::size_t len = 0;
  for (auto &[p, powers] : primary) {
    std::sort(powers.begin(), powers.end(), std::greater<>());
    len = std::max(len, powers.size());
  }
  // largest invariant factor collects the largest power of every prime
  std::vector<long> desc(len, 1);
  for (const auto &[p, powers] : primary)
    for (std::size_t i = 0; i < powers.size(); ++i)
      desc[i] *= powers[i];
  factors_.assign(desc.rbegin(), desc.rend());
}

std::size_t GroupSpec::order() const {
  std::size_t n = 1;
  for (long k : factors_)
    n *= static_cast<std::size_t>(k);
  return n;
}

std::string GroupSpec::to_string() const {
  if (factors_.empty())
    return "1";
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i)
      out += 'x';
    out += 'Z' + std::to_string(factors_[i]);
  }
  return out;
}

GroupSpec parse_group(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s.empty())
    throw ParseError("empty group string");
  if (s == "1" || s == "trivial")
    return GroupSpec{};

  std::vector<long> factors;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find('x', pos);
    std::string_view token(s.data() + pos, (next == std::string::npos ? s.size() : next) - pos);
    if (token.size() < 2 || token[0] != 'z')
      throw ParseError("malformed group string '" + std::string(text) + "'");
    token.remove_prefix(1);
    long power = 1;
    if (auto caret = token.find('^'); caret != std::string_view::npos) {
      power = parse_positive(token.substr(caret + 1), text);
      if (power < 1)
        throw ParseError("exponent must be positive in '" + std::string(text) + "'");
      token = token.substr(0, caret);
    }
    long k = parse_positive(token, text);
    if (k < 2)
      throw ParseError("cyclic factor must be at least 2 in '" + std::string(text) + "'");
    for (long i = 0; i < power; ++i)
      factors.push_back(k);
    if (next == std::string::npos)
      break;
    pos = next + 1;
  }
  return GroupSpec(factors);
}

Element mul(const Element &g, const Element &h, const GroupSpec &spec) {
  const auto &k = spec.invariant_factors();
  if (g.residues.size() != k.size() || h.residues.size() != k.size())
    throw DomainError("element dimension does not match the group");
  Element out;
  out.residues.resize(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    long v = (g.residues[i] + h.residues[i]) % k[i];
    out.residues[i] = v < 0 ? v + k[i] : v;
  }
  return out;
}

Pair::Pair(Element a, Element b) : first(std::move(a)), second(std::move(b)) {
  if (second < first)
    std::swap(first, second);
}

PairIndex::PairIndex(std::size_t group_order) : order_(group_order), lookup_(group_order * group_order) {
  for (std::size_t g = 0; g < order_; ++g)
    for (std::size_t h = g; h < order_; ++h) {
      lookup_[g * order_ + h] = lookup_[h * order_ + g] = pairs_.size();
      pairs_.emplace_back(g, h);
    }
}

std::shared_ptr<const AbelianGroup> AbelianGroup::make(const GroupSpec &spec) {
  return std::shared_ptr<const AbelianGroup>(new AbelianGroup(spec));
}

AbelianGroup::AbelianGroup(const GroupSpec &spec)
    : spec_(spec), order_(spec.order()), table_(order_ * order_), inverse_(order_), pairs_(order_) {
  std::vector<Element> elems;
  elems.reserve(order_);
  for (std::size_t g = 0; g < order_; ++g)
    elems.push_back(element(g));
  for (std::size_t g = 0; g < order_; ++g)
    for (std::size_t h = 0; h < order_; ++h) {
      std::size_t gh = index_of(gradcon::mul(elems[g], elems[h], spec_));
      table_[g * order_ + h] = gh;
      if (gh == 0)
        inverse_[g] = h;
    }
}

Element AbelianGroup::element(std::size_t g) const {
  const auto &k = spec_.invariant_factors();
  Element e;
  e.residues.resize(k.size());
  for (std::size_t i = k.size(); i-- > 0;) {
    e.residues[i] = static_cast<long>(g % static_cast<std::size_t>(k[i]));
    g /= static_cast<std::size_t>(k[i]);
  }
  return e;
}

std::size_t AbelianGroup::index_of(const Element &e) const {
  const auto &k = spec_.invariant_factors();
  if (e.residues.size() != k.size())
    throw DomainError("element dimension does not match the group");
  std::size_t g = 0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (e.residues[i] < 0 || e.residues[i] >= k[i])
      throw DomainError("residue out of range");
    g = g * static_cast<std::size_t>(k[i]) + static_cast<std::size_t>(e.residues[i]);
  }
  return g;
}

Pair AbelianGroup::pair_elements(std::size_t p) const {
  auto [g, h] = pairs_.at(p);
  return Pair(element(g), element(h));
}

std::size_t AbelianGroup::index_of(const Pair &p) const {
  return pair(index_of(p.first), index_of(p.second));
}

std::size_t AbelianGroup::two_torsion_rank() const {
  std::size_t r = 0;
  for (long k : spec_.invariant_factors())
    if (k % 2 == 0)
      ++r;
  return r;
}

std::string AbelianGroup::element_text(std::size_t g) const {
  Element e = element(g);
  std::string out;
  for (std::size_t i = 0; i < e.residues.size(); ++i) {
    if (i)
      out += ',';
    out += std::to_string(e.residues[i]);
  }
  return out.empty() ? "e" : out;
}

std::size_t AbelianGroup::parse_element(std::string_view text) const {
  Element e;
  if (text == "e" && spec_.rank() == 0)
    return 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(',', pos);
    auto token = text.substr(pos, (next == std::string_view::npos ? text.size() : next) - pos);
    long v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty())
      throw ParseError("malformed element '" + std::string(text) + "'");
    e.residues.push_back(v);
    if (next == std::string_view::npos)
      break;
    pos = next + 1;
  }
  try {
    return index_of(e);
  } catch (const DomainError &err) {
    throw ParseError("element '" + std::string(text) + "': " + err.what());
  }
}

std::string AbelianGroup::pair_key(std::size_t p) const {
  auto [g, h] = pairs_.at(p);
  return element_text(g) + "|" + element_text(h);
}

std::size_t AbelianGroup::parse_pair_key(std::string_view text) const {
  auto bar = text.find('|');
  if (bar == std::string_view::npos)
    throw ParseError("pair key '" + std::string(text) + "' must have the form g|h");
  return pair(parse_element(text.substr(0, bar)), parse_element(text.substr(bar + 1)));
}

} // namespace gradcon
