#include "doctest.h"

#include "gradcon/abelian.hpp"
#include "gradcon/error.hpp"

#include <numeric>
#include <set>

using namespace gradcon;

TEST_CASE("group strings normalize to invariant factors") {
  CHECK(parse_group("Z2").invariant_factors() == std::vector<long>{2});
  CHECK(parse_group("z2 x z4").invariant_factors() == std::vector<long>{2, 4});
  CHECK(parse_group("Z4xZ2").invariant_factors() == std::vector<long>{2, 4});
  CHECK(parse_group("Z2xZ3").invariant_factors() == std::vector<long>{6});
  CHECK(parse_group("Z6xZ4").invariant_factors() == std::vector<long>{2, 12});
  CHECK(parse_group("Z2^3").invariant_factors() == std::vector<long>{2, 2, 2});
  CHECK(parse_group("Z2^2xZ3").invariant_factors() == std::vector<long>{2, 6});
  CHECK(parse_group("1").order() == 1);
  CHECK(parse_group("trivial").rank() == 0);
  CHECK(parse_group("Z2xZ4").to_string() == "Z2xZ4");
  CHECK(parse_group("1").to_string() == "1");
  CHECK(parse_group("Z3xZ2") == parse_group("Z6"));
}

TEST_CASE("malformed group strings are rejected") {
  for (const char *bad : {"", "Q8", "Z", "Z0", "Z1", "Z2x", "Z2^", "Z-2", "S3", "Z2^0"}) {
    CAPTURE(std::string(bad));
    CHECK_THROWS(parse_group(bad));
  }
  CHECK_THROWS_AS(GroupSpec(std::vector<long>{1}), DomainError);
}

TEST_CASE("element indexing is mixed radix with the identity at 0") {
  auto g = AbelianGroup::make(parse_group("Z2xZ4"));
  CHECK(g->order() == 8);
  CHECK(g->identity() == 0);
  CHECK(g->element(0).residues == std::vector<long>{0, 0});
  CHECK(g->element(1).residues == std::vector<long>{0, 1});
  CHECK(g->element(4).residues == std::vector<long>{1, 0});
  for (std::size_t i = 0; i < g->order(); ++i)
    CHECK(g->index_of(g->element(i)) == i);
  CHECK_THROWS_AS(g->index_of(Element{{2, 0}}), DomainError);
  CHECK_THROWS_AS(g->index_of(Element{{0}}), DomainError);
}

TEST_CASE("multiplication table is an abelian group law") {
  for (const char *spec : {"1", "Z2", "Z6", "Z2xZ4", "Z2^3", "Z3xZ3"}) {
    auto g = AbelianGroup::make(parse_group(spec));
    const std::size_t n = g->order();
    for (std::size_t a = 0; a < n; ++a) {
      CHECK(g->mul(a, 0) == a);
      CHECK(g->mul(a, g->inverse(a)) == 0);
      std::set<std::size_t> row;
      for (std::size_t b = 0; b < n; ++b) {
        CHECK(g->mul(a, b) == g->mul(b, a));
        row.insert(g->mul(a, b));
        for (std::size_t c = 0; c < n; ++c)
          CHECK(g->mul(g->mul(a, b), c) == g->mul(a, g->mul(b, c)));
      }
      CHECK(row.size() == n);
    }
  }
}

TEST_CASE("pair index orders unordered pairs lexicographically") {
  auto g = AbelianGroup::make(parse_group("Z3"));
  REQUIRE(g->pair_count() == 6);
  const std::vector<std::pair<std::size_t, std::size_t>> expected{{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
  for (std::size_t p = 0; p < 6; ++p) {
    CHECK(g->pairs().at(p) == expected[p]);
    CHECK(g->pair(expected[p].first, expected[p].second) == p);
    CHECK(g->pair(expected[p].second, expected[p].first) == p);
  }
  for (const char *spec : {"1", "Z2", "Z5", "Z2xZ4"}) {
    auto h = AbelianGroup::make(parse_group(spec));
    CHECK(h->pair_count() == h->order() * (h->order() + 1) / 2);
  }
}

TEST_CASE("pair keys and element text round-trip") {
  auto g = AbelianGroup::make(parse_group("Z2xZ4"));
  CHECK(g->element_text(5) == "1,1");
  CHECK(g->pair_key(g->pair(5, 2)) == "0,2|1,1");
  for (std::size_t p = 0; p < g->pair_count(); ++p)
    CHECK(g->parse_pair_key(g->pair_key(p)) == p);
  CHECK(g->parse_pair_key("1,1|0,2") == g->pair(5, 2));
  CHECK_THROWS_AS(g->parse_pair_key("0,2"), ParseError);
  CHECK_THROWS_AS(g->parse_element("3,0"), ParseError);
  CHECK_THROWS_AS(g->parse_element("a"), ParseError);

  auto t = AbelianGroup::make(parse_group("1"));
  CHECK(t->element_text(0) == "e");
  CHECK(t->pair_key(0) == "e|e");
  CHECK(t->parse_pair_key("e|e") == 0);
}

TEST_CASE("Pair sorts its elements") {
  Pair a(Element{{1}}, Element{{0}});
  Pair b(Element{{0}}, Element{{1}});
  CHECK(a == b);
  auto g = AbelianGroup::make(parse_group("Z2"));
  CHECK(g->index_of(a) == 1);
  CHECK(g->pair_elements(1) == a);
}

TEST_CASE("2-torsion rank") {
  CHECK(AbelianGroup::make(parse_group("Z3"))->two_torsion_rank() == 0);
  CHECK(AbelianGroup::make(parse_group("Z8"))->two_torsion_rank() == 1);
  CHECK(AbelianGroup::make(parse_group("Z2xZ4"))->two_torsion_rank() == 2);
  CHECK(AbelianGroup::make(parse_group("Z2^3"))->two_torsion_rank() == 3);
  CHECK(AbelianGroup::make(parse_group("Z6"))->two_torsion_rank() == 1);
}
