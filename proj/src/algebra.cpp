#include "gradcon/algebra.hpp"

#include "gradcon/error.hpp"

#include <sstream>

namespace gradcon {

namespace {

void add_scaled(SparseVector &acc, const SparseVector &v, const Rational &f) {
  for (const auto &[k, c] : v) {
    auto [it, fresh] = acc.try_emplace(k, 0);
    it->second += f * c;
    if (sgn(it->second) == 0)
      acc.erase(it);
  }
}

std::string vector_text(const SparseVector &v) {
  std::ostringstream os;
  bool first = true;
  for (const auto &[k, c] : v) {
    os << (first ? "" : " + ") << c.get_str() << "*x" << k;
    first = false;
  }
  return first ? "0" : os.str();
}

SparseVector bracket_in(const StructureConstants &s, std::size_t i, std::size_t j) {
  if (i == j)
    return {};
  auto it = s.find({std::min(i, j), std::max(i, j)});
  if (it == s.end())
    return {};
  if (i < j)
    return it->second;
  SparseVector out;
  for (const auto &[k, c] : it->second)
    out.emplace(k, -c);
  return out;
}

StructureConstants without_zeros(const StructureConstants &s) {
  StructureConstants out;
  for (const auto &[key, v] : s) {
    SparseVector w;
    for (const auto &[k, c] : v)
      if (sgn(c) != 0)
        w.emplace(k, c);
    if (!w.empty())
      out.emplace(key, std::move(w));
  }
  return out;
}

} // namespace

AlgebraCheck GradedAlgebra::check(const AbelianGroup &group, const std::vector<std::size_t> &degrees,
                                  const StructureConstants &raw) {
  const std::size_t n = degrees.size();
  const StructureConstants s = without_zeros(raw);
  AlgebraCheck out;
  auto fail = [&](std::array<std::size_t, 3> t, std::string msg) {
    out.ok = false;
    out.triple = t;
    out.diagnostic = std::move(msg);
    return out;
  };
  for (std::size_t d : degrees)
    if (d >= group.order())
      return fail({0, 0, 0}, "degree index " + std::to_string(d) + " is not a group element");
  for (const auto &[key, v] : s) {
    auto [i, j] = key;
    if (i >= j || j >= n)
      return fail({i, j, 0}, "bracket key (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") must satisfy i < j < dimension");
    for (const auto &[k, c] : v) {
      if (k >= n)
        return fail({i, j, k}, "basis index " + std::to_string(k) + " out of range");
      if (group.mul(degrees[i], degrees[j]) != degrees[k])
        return fail({i, j, k}, "degree violation: [x" + std::to_string(i) + ",x" + std::to_string(j) +
                                   "] has a component on x" + std::to_string(k) + " of degree " +
                                   group.element_text(degrees[k]) + ", expected " +
                                   group.element_text(group.mul(degrees[i], degrees[j])));
    }
  }
  // [[x_i,x_j],x_k] + [[x_j,x_k],x_i] + [[x_k,x_i],x_j] = 0 for i < j < k
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const SparseVector ij = bracket_in(s, i, j);
      for (std::size_t k = j + 1; k < n; ++k) {
        SparseVector sum;
        for (const auto &[l, c] : ij)
          add_scaled(sum, bracket_in(s, l, k), c);
        for (const auto &[l, c] : bracket_in(s, j, k))
          add_scaled(sum, bracket_in(s, l, i), c);
        for (const auto &[l, c] : bracket_in(s, k, i))
          add_scaled(sum, bracket_in(s, l, j), c);
        if (!sum.empty())
          return fail({i, j, k}, "Jacobi identity fails for (x" + std::to_string(i) + ", x" + std::to_string(j) +
                                     ", x" + std::to_string(k) + "): defect " + vector_text(sum));
      }
    }
  return out;
}

GradedAlgebra::GradedAlgebra(GroupPtr group, std::vector<std::size_t> degrees, StructureConstants structure)
    : group_(std::move(group)), degrees_(std::move(degrees)), structure_(without_zeros(structure)) {
  auto c = check(*group_, degrees_, structure_);
  if (!c.ok)
    throw ValidationError(c.diagnostic);
}

SparseVector GradedAlgebra::bracket(std::size_t i, std::size_t j) const { return bracket_in(structure_, i, j); }

Support second_support(const GradedAlgebra &a) {
  Support s(a.group());
  for (const auto &[key, v] : a.structure())
    if (!v.empty())
      s.insert(a.group()->pair(a.degree(key.first), a.degree(key.second)));
  return s;
}

GradedAlgebra apply_contraction(const GradedAlgebra &a, const Contraction &c) {
  if (a.group()->spec() != c.group()->spec())
    throw DomainError("algebra and contraction belong to different groups");
  StructureConstants out;
  for (const auto &[key, v] : a.structure()) {
    const Rational e = c.value(a.degree(key.first), a.degree(key.second));
    if (sgn(e) == 0)
      continue;
    SparseVector w;
    for (const auto &[k, x] : v)
      w.emplace(k, e * x);
    out.emplace(key, std::move(w));
  }
  return GradedAlgebra(a.group(), a.degrees(), std::move(out));
}

GradedAlgebra witness_algebra(const Support &s) {
  const GroupPtr &group = s.group();
  const std::size_t n = group->order();
  std::vector<std::size_t> degrees(2 * n);
  for (std::size_t g = 0; g < n; ++g)
    degrees[g] = degrees[n + g] = g;
  StructureConstants st;
  auto central = [&](std::size_t i, std::size_t j, std::size_t deg) {
    st[{i, j}].emplace(degrees.size(), Rational(1));
    degrees.push_back(deg);
  };
  for (std::size_t p : s.indices()) {
    auto [g, h] = group->pairs().at(p);
    const std::size_t gh = group->mul(g, h);
    if (g == h) {
      central(g, n + g, gh);
      continue;
    }
    central(g, h, gh);
    central(g, n + h, gh);
    central(std::min(n + g, h), std::max(n + g, h), gh);
    central(n + g, n + h, gh);
  }
  return GradedAlgebra(group, std::move(degrees), std::move(st));
}

GradedAlgebra apply_normalization(const GradedAlgebra &a, const std::map<std::size_t, Rational> &alpha) {
  auto at = [&](std::size_t g) -> const Rational & {
    auto it = alpha.find(g);
    if (it == alpha.end() || sgn(it->second) == 0)
      throw DomainError("normalization needs a nonzero value at degree " + a.group()->element_text(g));
    return it->second;
  };
  for (std::size_t d : a.degrees())
    at(d);
  StructureConstants out;
  for (const auto &[key, v] : a.structure()) {
    const std::size_t g = a.degree(key.first), h = a.degree(key.second);
    const Rational f = at(g) * at(h) / at(a.group()->mul(g, h));
    SparseVector w;
    for (const auto &[k, x] : v)
      w.emplace(k, f * x);
    out.emplace(key, std::move(w));
  }
  return GradedAlgebra(a.group(), a.degrees(), std::move(out));
}

} // namespace gradcon
