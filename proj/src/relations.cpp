#include "gradcon/relations.hpp"

#include "gradcon/error.hpp"

#include <algorithm>
#include <map>

namespace gradcon {

Boundary2Matrix boundary2(const AbelianGroup &group) {
  const std::size_t n = group.order();
  const std::size_t m = group.pair_count();
  IntMatrix a(n, m);
  for (std::size_t p = 0; p < m; ++p) {
    auto [g, h] = group.pairs().at(p);
    a(g, p) += 1;
    a(h, p) += 1;
    a(group.mul(g, h), p) -= 1;
  }
  return {std::move(a)};
}

std::vector<RelatorVector> relators(const AbelianGroup &group) {
  const std::size_t n = group.order();
  const std::size_t m = group.pair_count();
  std::vector<RelatorVector> out;
  std::map<std::vector<long>, std::size_t> seen;
  std::vector<long> v(m);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t k = 0; k < n; ++k) {
        std::fill(v.begin(), v.end(), 0);
        std::size_t gh = group.mul(g, h), hk = group.mul(h, k);
        ++v[group.pair(h, k)];
        ++v[group.pair(g, hk)];
        --v[group.pair(g, h)];
        --v[group.pair(gh, k)];
        if (std::all_of(v.begin(), v.end(), [](long x) { return x == 0; }))
          continue;
        std::vector<long> neg(m);
        std::transform(v.begin(), v.end(), neg.begin(), [](long x) { return -x; });
        if (seen.contains(v) || seen.contains(neg))
          continue;
        seen.emplace(v, out.size());
        RelatorVector r;
        r.exponents.reserve(m);
        r.support = BitSet(m);
        for (std::size_t p = 0; p < m; ++p) {
          r.exponents.emplace_back(v[p]);
          if (v[p])
            r.support.set(p);
        }
        r.triple = std::array<std::size_t, 3>{g, h, k};
        out.push_back(std::move(r));
      }
  return out;
}

IntegerLattice global_identity_lattice(const AbelianGroup &group) { return kernel(boundary2(group).a); }

IntegerLattice relator_lattice(const AbelianGroup &group) {
  IntMatrix gens(0, group.pair_count());
  for (const auto &r : relators(group))
    gens.append_row(r.exponents);
  return IntegerLattice(gens);
}

RelationComplex::RelationComplex(GroupPtr group)
    : group_(std::move(group)), boundary_(boundary2(*group_)), relators_(relators(*group_)),
      image_(boundary_.a.transpose()) {}

IntMatrix RelationComplex::restricted_boundary(const std::vector<std::size_t> &columns) const {
  const std::size_t n = group_->order();
  IntMatrix a(n, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t i = 0; i < n; ++i)
      a(i, j) = boundary_.a(i, columns[j]);
  return a;
}

std::vector<IntVector> RelationComplex::surviving_relators(const Support &s,
                                                           const std::vector<std::size_t> &columns) const {
  std::vector<IntVector> out;
  for (const auto &r : relators_) {
    if (!r.support.is_subset_of(s.bits()))
      continue;
    IntVector v(columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j)
      v[j] = r.exponents[columns[j]];
    out.push_back(std::move(v));
  }
  return out;
}

IntegerLattice RelationComplex::surviving_identity_lattice(const std::vector<std::size_t> &columns) const {
  if (columns.empty())
    return IntegerLattice(0);
  return kernel(restricted_boundary(columns));
}

SupportInvariants RelationComplex::invariants(const Support &s) const {
  if (s.group()->spec() != group_->spec())
    throw DomainError("support belongs to a different group");
  SupportInvariants inv;
  inv.support = s;
  inv.columns = s.indices();
  inv.group_order = group_->order();
  const std::size_t k = inv.columns.size();

  inv.surviving_identities = surviving_identity_lattice(inv.columns);
  inv.surviving_relators = IntegerLattice(surviving_relators(s, inv.columns), k);
  inv.n_prime = k - inv.surviving_identities.rank();
  inv.n_doubleprime = k - inv.surviving_relators.rank();
  inv.kernel_part = quotient_structure(inv.surviving_identities, inv.surviving_relators);
  inv.image_part = quotient_structure(IntegerLattice::full(k), inv.surviving_identities);

  IntMatrix cols(0, group_->order());
  if (k)
    cols = restricted_boundary(inv.columns).transpose();
  inv.cokernel_part = quotient_structure(image_, IntegerLattice(cols));
  return inv;
}

std::vector<std::size_t> RelationComplex::independent_subset(const Support &s, IndependenceMode mode) const {
  const auto columns = s.indices();
  const std::size_t k = columns.size();
  std::vector<std::size_t> chosen;
  if (mode == IndependenceMode::independent) {
    // images in F_S / L_S are the boundary columns
    IntMatrix rows(0, group_->order());
    for (std::size_t j = 0; j < k; ++j) {
      IntMatrix trial = rows;
      IntVector col(group_->order());
      for (std::size_t i = 0; i < group_->order(); ++i)
        col[i] = boundary_.a(i, columns[j]);
      trial.append_row(col);
      if (rank(trial) == trial.rows()) {
        rows = std::move(trial);
        chosen.push_back(columns[j]);
      }
    }
    return chosen;
  }
  // chosen unit vectors must stay independent modulo the surviving relators
  IntMatrix base = IntMatrix::from_rows(surviving_relators(s, columns), k);
  std::size_t base_rank = rank(base);
  for (std::size_t j = 0; j < k; ++j) {
    IntMatrix trial = base;
    IntVector e(k);
    e[j] = 1;
    trial.append_row(e);
    std::size_t r = rank(trial);
    if (r == base_rank + 1) {
      base = std::move(trial);
      base_rank = r;
      chosen.push_back(columns[j]);
    }
  }
  return chosen;
}

SupportInvariants support_invariants(const Support &s) { return RelationComplex(s.group()).invariants(s); }

std::vector<std::size_t> independent_subset(const Support &s, IndependenceMode mode) {
  return RelationComplex(s.group()).independent_subset(s, mode);
}

} // namespace gradcon
