#include "doctest.h"

#include "gradcon/error.hpp"
#include "gradcon/relations.hpp"
#include "oracles.hpp"

using namespace gradcon;

namespace {

std::vector<GroupPtr> groups_up_to(std::size_t order) {
  std::vector<GroupPtr> out;
  for (const char *spec : {"1", "Z2", "Z3", "Z4", "Z2^2", "Z5", "Z6", "Z7", "Z8", "Z2xZ4", "Z2^3"}) {
    auto g = AbelianGroup::make(parse_group(spec));
    if (g->order() <= order)
      out.push_back(g);
  }
  return out;
}

} // namespace

TEST_CASE("Z2 boundary matrix") {
  auto g = AbelianGroup::make(parse_group("Z2"));
  // columns {0,0}, {0,1}, {1,1}: g + h - gh
  CHECK(boundary2(*g).a == IntMatrix{{1, 1, -1}, {0, 0, 2}});
}

TEST_CASE("boundary columns sum to the pair size minus one") {
  for (const auto &g : groups_up_to(8)) {
    const auto a = boundary2(*g).a;
    for (std::size_t p = 0; p < g->pair_count(); ++p) {
      Integer s = 0;
      for (std::size_t x = 0; x < g->order(); ++x)
        s += a(x, p);
      CHECK(s == 1);
    }
  }
}

TEST_CASE("Z2 has the single relator e01 - e00") {
  auto g = AbelianGroup::make(parse_group("Z2"));
  auto r = relators(*g);
  REQUIRE(r.size() == 1);
  const auto &v = r[0].exponents;
  CHECK(((v == to_int_vector({-1, 1, 0})) || (v == to_int_vector({1, -1, 0}))));
  CHECK(r[0].support.indices() == std::vector<std::size_t>{0, 1});
}

TEST_CASE("relators are nonzero, pairwise distinct up to sign and killed by the boundary") {
  for (const auto &g : groups_up_to(6)) {
    auto rs = relators(*g);
    const auto a = boundary2(*g).a;
    std::set<IntVector> seen;
    for (const auto &r : rs) {
      CHECK_FALSE(std::all_of(r.exponents.begin(), r.exponents.end(), [](const Integer &x) { return sgn(x) == 0; }));
      IntVector neg;
      for (const auto &x : r.exponents)
        neg.push_back(-x);
      CHECK_FALSE(seen.contains(r.exponents));
      CHECK_FALSE(seen.contains(neg));
      seen.insert(r.exponents);
      for (std::size_t x = 0; x < g->order(); ++x) {
        Integer s = 0;
        for (std::size_t p = 0; p < g->pair_count(); ++p)
          s += a(x, p) * r.exponents[p];
        CHECK(sgn(s) == 0);
      }
    }
  }
}

TEST_CASE("relator quotient has rank |G|") {
  for (const auto &g : groups_up_to(8)) {
    IntMatrix gens(0, g->pair_count());
    for (const auto &r : relators(*g))
      gens.append_row(r.exponents);
    CAPTURE(g->spec().to_string());
    CHECK(g->pair_count() - oracle::rank_q(gens) == g->order());
    CHECK(g->pair_count() - relator_lattice(*g).rank() == g->order());
  }
}

TEST_CASE("relators generate the kernel of the boundary") {
  for (const auto &g : groups_up_to(6)) {
    CAPTURE(g->spec().to_string());
    CHECK(relator_lattice(*g) == global_identity_lattice(*g));
  }
}

TEST_CASE("Z2 support invariants") {
  auto g = AbelianGroup::make(parse_group("Z2"));
  RelationComplex rc(g);
  for (const auto &s : enumerate_supports(ImplicationSystem(g))) {
    auto inv = rc.invariants(s);
    CHECK(inv.kernel_part.is_trivial());
    CHECK(inv.n_prime == inv.n_doubleprime);
    CHECK(inv.n_prime == oracle::rank_q(rc.restricted_boundary(inv.columns)));
  }
  auto full = rc.invariants(Support::full(g));
  CHECK(full.n_prime == 2);
  CHECK(full.surviving_identities.rank() == 1);
  CHECK(full.surviving_identities.basis_vector(0) == to_int_vector({1, -1, 0}));
  CHECK(full.image_part.free_rank == 2);
  CHECK(full.cokernel_part.is_trivial());
}

TEST_CASE("invariants match independent rank computations") {
  for (const auto &g : groups_up_to(6)) {
    RelationComplex rc(g);
    for (const auto &s : enumerate_supports(ImplicationSystem(g))) {
      auto inv = rc.invariants(s);
      const std::size_t k = inv.columns.size();
      const std::size_t rank_a = k ? oracle::rank_q(rc.restricted_boundary(inv.columns)) : 0;
      const auto rel = rc.surviving_relators(s, inv.columns);
      const std::size_t rank_r = rel.empty() ? 0 : oracle::rank_q(IntMatrix::from_rows(rel, k));
      CHECK(inv.n_prime == rank_a);
      CHECK(inv.n_doubleprime == k - rank_r);
      CHECK(inv.n_doubleprime >= inv.n_prime);
      CHECK(inv.kernel_part.free_rank == inv.n_doubleprime - inv.n_prime);
      CHECK(inv.image_part.free_rank == inv.n_prime);
      CHECK(inv.image_part.is_free());
      CHECK(inv.cokernel_part.free_rank == g->order() - inv.n_prime);
      CHECK(inv.group_order == g->order());
    }
  }
}

TEST_CASE("cokernel of the full support is trivial") {
  for (const auto &g : groups_up_to(8))
    CHECK(support_invariants(Support::full(g)).cokernel_part.is_trivial());
}

TEST_CASE("independent subsets") {
  for (const char *spec : {"Z3", "Z2^2", "Z6"}) {
    auto g = AbelianGroup::make(parse_group(spec));
    RelationComplex rc(g);
    for (const auto &s : enumerate_supports(ImplicationSystem(g))) {
      auto inv = rc.invariants(s);
      auto ind = rc.independent_subset(s, IndependenceMode::independent);
      auto quasi = rc.independent_subset(s, IndependenceMode::quasi_independent);
      CHECK(ind.size() == inv.n_prime);
      CHECK(quasi.size() == inv.n_doubleprime);
      for (std::size_t p : ind)
        CHECK(s.contains(p));
      for (std::size_t p : quasi)
        CHECK(s.contains(p));
    }
  }
}

TEST_CASE("invariants reject a support of another group") {
  RelationComplex rc(AbelianGroup::make(parse_group("Z3")));
  CHECK_THROWS_AS(rc.invariants(Support::full(AbelianGroup::make(parse_group("Z2")))), DomainError);
}
