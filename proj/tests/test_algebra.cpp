#include "doctest.h"

#include "gradcon/algebra.hpp"
#include "gradcon/error.hpp"
#include "oracles.hpp"

using namespace gradcon;

namespace {

GroupPtr grp(const char *spec) { return AbelianGroup::make(parse_group(spec)); }

// h = x0 (degree 0), e = x1, f = x2 (degree 1)
StructureConstants sl2_structure() {
  return {{{0, 1}, {{1, 2}}}, {{0, 2}, {{2, -2}}}, {{1, 2}, {{0, 1}}}};
}

GradedAlgebra sl2() { return GradedAlgebra(grp("Z2"), {0, 1, 1}, sl2_structure()); }

// gl_n with E_ij in degree j - i mod n, basis index i * n + j
GradedAlgebra gl(std::size_t n) {
  auto g = grp(("Z" + std::to_string(n)).c_str());
  std::vector<std::size_t> degrees(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      degrees[i * n + j] = (j + n - i) % n;
  StructureConstants sc;
  for (std::size_t a = 0; a < n * n; ++a)
    for (std::size_t b = a + 1; b < n * n; ++b) {
      const std::size_t i = a / n, j = a % n, k = b / n, l = b % n;
      SparseVector v;
      if (j == k)
        v[i * n + l] += 1;
      if (l == i)
        v[k * n + j] -= 1;
      std::erase_if(v, [](const auto &kv) { return sgn(kv.second) == 0; });
      if (!v.empty())
        sc[{a, b}] = v;
    }
  return GradedAlgebra(g, degrees, sc);
}

std::vector<Support> all_subsets(const GroupPtr &g) {
  std::vector<Support> out;
  const std::size_t m = g->pair_count();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    Support s(g);
    for (std::size_t p = 0; p < m; ++p)
      if ((mask >> p) & 1u)
        s.insert(p);
    out.push_back(s);
  }
  return out;
}

} // namespace

TEST_CASE("sl2 with its Z2 grading") {
  auto a = sl2();
  CHECK(a.dimension() == 3);
  CHECK(second_support(a).indices() == std::vector<std::size_t>{1, 2});
  CHECK(a.bracket(1, 0) == SparseVector{{1, -2}});
  CHECK(a.bracket(2, 2).empty());
  CHECK(oracle::jacobi_dense(a));
}

TEST_CASE("abelian algebra") {
  GradedAlgebra a(grp("Z3"), {0, 1, 2, 2}, {});
  CHECK(second_support(a).size() == 0);
}

TEST_CASE("validation failures") {
  auto sc = sl2_structure();
  sc[{1, 2}] = {{0, 3}}; // rescaling f keeps a Lie algebra
  CHECK(GradedAlgebra::check(*grp("Z2"), {0, 1, 1}, sc).ok);

  auto bad = sl2_structure();
  bad[{0, 1}] = {{1, 3}}; // [h,e] = 3e while [h,f] = -2f
  auto fail = GradedAlgebra::check(*grp("Z2"), {0, 1, 1}, bad);
  CHECK_FALSE(fail.ok);
  REQUIRE(fail.triple);
  CHECK(fail.diagnostic.find("Jacobi") != std::string::npos);
  CHECK_THROWS_AS(GradedAlgebra(grp("Z2"), {0, 1, 1}, bad), ValidationError);

  auto deg = sl2_structure();
  deg[{1, 2}] = {{1, 1}}; // [e,f] must have degree 0
  auto d = GradedAlgebra::check(*grp("Z2"), {0, 1, 1}, deg);
  CHECK_FALSE(d.ok);
  CHECK(d.diagnostic.find("degree") != std::string::npos);
}

TEST_CASE("gl_n with the Z_n grading") {
  for (std::size_t n : {2, 3}) {
    auto a = gl(n);
    CHECK(oracle::jacobi_dense(a));
    // the diagonal is abelian; every other pair of degrees brackets nontrivially
    auto s = second_support(a);
    CHECK_FALSE(s.contains(0));
    CHECK(s.size() == a.group()->pair_count() - 1);
  }
}

TEST_CASE("applying contractions to sl2") {
  auto a = sl2();
  auto g = a.group();
  CHECK(apply_contraction(a, Contraction::indicator(Support::full(g))) == a);
  auto abelian = apply_contraction(a, Contraction(g, {}));
  CHECK(abelian.structure().empty());
  // (e00, e11, e01) = (1, 0, 1)
  auto c = apply_contraction(a, Contraction(g, {{0, 1}, {1, 1}}));
  CHECK(second_support(c).indices() == std::vector<std::size_t>{1});
  CHECK(c.bracket(1, 2).empty());
  CHECK(c.bracket(0, 1) == SparseVector{{1, 2}});
}

TEST_CASE("witness algebras realize every subset") {
  for (const char *spec : {"Z2", "Z3"}) {
    auto g = grp(spec);
    for (const auto &s : all_subsets(g)) {
      auto w = witness_algebra(s);
      CHECK(second_support(w) == s);
      for (std::size_t i = 0; i < 2 * g->order(); ++i)
        for (std::size_t j = 0; j < 2 * g->order(); ++j)
          for (const auto &[k, x] : w.bracket(i, j))
            CHECK(k >= 2 * g->order()); // brackets land in the centre
    }
  }
  auto g = grp("Z2");
  CHECK(witness_algebra(Support(g)).dimension() == 4);
  CHECK(witness_algebra(Support::full(g)).dimension() == 4 + 1 + 4 + 1);
}

TEST_CASE("generic soundness on sampled contractions") {
  std::mt19937_64 rng(59);
  for (const char *spec : {"Z2", "Z3"}) {
    auto g = grp(spec);
    std::vector<GradedAlgebra> fixtures{witness_algebra(Support::full(g))};
    if (g->order() == 2) {
      fixtures.push_back(sl2());
      fixtures.push_back(gl(2));
    } else {
      fixtures.push_back(gl(3));
    }
    for (const auto &s : enumerate_supports(ImplicationSystem(g)))
      for (int t = 0; t < 3; ++t) {
        auto c = oracle::random_contraction(s, rng);
        for (const auto &a : fixtures) {
          auto b = apply_contraction(a, c);
          CHECK(oracle::jacobi_dense(b));
          CHECK(second_support(b).is_subset_of(s));
        }
      }
  }
}

TEST_CASE("normalization") {
  auto a = sl2();
  CHECK(apply_normalization(a, {{0, 1}, {1, 1}}) == a);
  CHECK_THROWS_AS(apply_normalization(a, {{0, 1}}), DomainError);
  CHECK_THROWS_AS(apply_normalization(a, {{0, 1}, {1, 0}}), DomainError);

  std::mt19937_64 rng(61);
  for (const char *spec : {"Z2", "Z3"}) {
    auto h = grp(spec);
    std::vector<GradedAlgebra> fixtures{witness_algebra(Support::full(h)), h->order() == 2 ? sl2() : gl(3)};
    for (const auto &s : enumerate_supports(ImplicationSystem(h)))
      for (const auto &fx : fixtures) {
        auto c = oracle::random_contraction(s, rng);
        auto alpha = oracle::random_alpha(h->order(), rng);
        std::map<std::size_t, Rational> amap;
        for (std::size_t x = 0; x < alpha.size(); ++x)
          amap[x] = alpha[x];
        CHECK(apply_contraction(fx, c.times_coboundary(alpha)) == apply_normalization(apply_contraction(fx, c), amap));
      }
  }
}

TEST_CASE("group homomorphisms leave structure constants unchanged") {
  auto a = gl(2);
  CHECK(apply_normalization(a, {{0, 1}, {1, -1}}) == a);
}
