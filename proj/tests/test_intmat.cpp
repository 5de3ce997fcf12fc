#include <doctest.h>

#include "oracles.hpp"
#include "realtheta/error.hpp"
#include "realtheta/intmat.hpp"

using namespace realtheta;

TEST_SUITE("intmat") {

TEST_CASE("rank mod 2 of small matrices") {
  CHECK(rank_mod2(IntMatrix{{0, 1}, {1, 0}}) == 2);
  CHECK(rank_mod2(IntMatrix{{2, 0}, {0, 2}}) == 0);
  CHECK(rank_mod2(IntMatrix{{1, 1, 0}, {1, 1, 0}, {0, 0, 1}}) == 2);
  CHECK(rank_mod2(IntMatrix{{-3, 5}, {5, 7}}) == 1);
}

TEST_CASE("rank mod 2 agrees with row-space enumeration for every symmetric 0/1 matrix, g <= 4") {
  for (int g = 1; g <= 4; ++g) {
    const int free = g * (g + 1) / 2;
    for (int code = 0; code < (1 << free); ++code) {
      oracle::IMat m(g, std::vector<long>(g, 0));
      IntMatrix a(g, g);
      int bit = 0;
      for (int i = 0; i < g; ++i)
        for (int j = i; j < g; ++j, ++bit) {
          const long v = (code >> bit) & 1;
          m[i][j] = m[j][i] = v;
          a(i, j) = a(j, i) = v;
        }
      REQUIRE(rank_mod2(a) == oracle::rank_mod2_bruteforce(m));
    }
  }
}

TEST_CASE("real type of a reflection matrix") {
  CHECK(real_type_of(SymIntMatrix(IntMatrix{{0, 1}, {1, 0}})) == RealType{2, 2, 1});
  CHECK(real_type_of(SymIntMatrix(IntMatrix::identity(3))) == RealType{3, 3, 0});
  CHECK(real_type_of(SymIntMatrix(IntMatrix::zero(2))) == RealType{2, 0, 1});
  CHECK(real_type_of(SymIntMatrix(IntMatrix{{4, 3}, {3, -2}})) == RealType{2, 2, 1});
}

TEST_CASE("symmetry is enforced") {
  CHECK_THROWS_AS(SymIntMatrix(IntMatrix{{0, 1}, {2, 0}}), Error);
}

TEST_CASE("admissible real types") {
  CHECK_FALSE(is_admissible_real_type({2, 1, 1}));
  CHECK_FALSE(is_admissible_real_type({3, 0, 0}));
  CHECK(is_admissible_real_type({4, 2, 1}));
  CHECK_FALSE(is_admissible_real_type({2, 3, 0}));
  CHECK(real_type_violation({2, 1, 1}).value() == "λ must be even when ε=1");
}

TEST_CASE("admissible topological types") {
  CHECK(is_admissible_topological_type({2, 3, 1}));
  CHECK_FALSE(is_admissible_topological_type({2, 2, 1}));
  CHECK(is_admissible_topological_type({2, 0, 0}));
  CHECK_FALSE(is_admissible_topological_type({2, 3, 0}));
}

TEST_CASE("topological to real type") {
  CHECK(topological_to_real({2, 1, 1}) == RealType{2, 2, 1});
  CHECK(topological_to_real({3, 0, 0}) == RealType{3, 2, 1});
  CHECK(topological_to_real({3, 4, 1}) == RealType{3, 0, 1});
  CHECK_THROWS_AS(topological_to_real({2, 2, 1}), Error);
}

TEST_CASE("topological candidates") {
  CHECK(real_to_topological_candidates({2, 2, 1}) == std::vector<TopologicalType>{{2, 0, 0}, {2, 1, 1}});
  CHECK(real_to_topological_candidates({3, 0, 1}) == std::vector<TopologicalType>{{3, 4, 1}});
  CHECK(real_to_topological_candidates({3, 3, 0}) == std::vector<TopologicalType>{{3, 1, 0}});
  CHECK_THROWS_AS(real_to_topological_candidates({2, 1, 1}), Error);
}

TEST_CASE("standard forms") {
  CHECK(standard_form({4, 2, 1}).matrix() == IntMatrix{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
  CHECK(standard_form({3, 2, 0}).matrix() == IntMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 0}});
  CHECK(standard_form({2, 0, 1}).matrix() == IntMatrix::zero(2));
  CHECK(standard_form({4, 4, 1}).matrix() ==
        IntMatrix{{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}});
}

TEST_CASE("exhaustive type properties for g <= 8") {
  for (int g = 1; g <= 8; ++g) {
    for (int lambda = 0; lambda <= g; ++lambda)
      for (int eps = 0; eps <= 1; ++eps) {
        const RealType t{g, lambda, eps};
        if (!is_admissible_real_type(t)) continue;
        CHECK(real_type_of(standard_form(t)) == t);
        const bool critical = lambda == 2 * (g / 2) && eps == 1;
        CHECK(is_critical(t) == critical);
        CHECK(real_to_topological_candidates(t).size() == (critical ? 2u : 1u));
      }
    for (int k = 0; k <= g + 1; ++k)
      for (int delta = 0; delta <= 1; ++delta) {
        const TopologicalType t{g, k, delta};
        if (is_admissible_topological_type(t)) CHECK(is_admissible_real_type(topological_to_real(t)));
      }
  }
}

TEST_CASE("determinant and unimodular inverse") {
  const IntMatrix a{{2, 3, 1}, {1, 2, 1}, {0, 0, 1}};
  CHECK(determinant(a) == 1);
  CHECK(a * unimodular_inverse(a) == IntMatrix::identity(3));
  CHECK(determinant(IntMatrix{{2, 0}, {0, 1}}) == 2);
  CHECK_THROWS_AS(unimodular_inverse(IntMatrix{{2, 0}, {0, 1}}), Error);
}

TEST_CASE("entries grow past 64 bits without loss") {
  IntMatrix a{{1, 3}, {0, 1}};
  IntMatrix p = IntMatrix::identity(2);
  for (int i = 0; i < 50; ++i) p = p * a;
  CHECK(p(0, 1) == 150);
  IntMatrix big{{3, 1}, {1, 0}};
  IntMatrix q = IntMatrix::identity(2);
  for (int i = 0; i < 60; ++i) q = q * big;
  CHECK(abs(determinant(q)) == 1);
  CHECK(q(0, 0) > Integer("1000000000000000000000000"));
}

}  // TEST_SUITE
