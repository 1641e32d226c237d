#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace tropk;
using testing::T;
using testing::Z;

TEST_CASE("integral transform of a small kernel", "[kernel]") {
  auto g = GroundSet::indexed(2);
  auto k = KernelMatrix::from_values(g, g, {{0, -1}, {Z, 2}});
  auto f = TropVector::from_values(g, {1, 0});
  CHECK(integrate(f, k) == TropVector::from_values(g, {1, 2}));
}

TEST_CASE("integrate and compose match direct loops", "[kernel][property]") {
  Rng rng(5);
  const ScalarDistribution d{-9, 9, 0.25, 0.05};
  for (int t = 0; t < 200; ++t) {
    auto a = GroundSet::indexed(1 + random_index(rng, 5), "a");
    auto b = GroundSet::indexed(1 + random_index(rng, 5), "b");
    auto c = GroundSet::indexed(1 + random_index(rng, 5), "c");
    auto k1 = random_matrix(rng, a, b, d);
    auto k2 = random_matrix(rng, b, c, d);
    auto f = random_vector(rng, a, d);
    REQUIRE(testing::values(integrate(f, k1)) == oracle::integrate(testing::values(f), testing::values(k1)));
    REQUIRE(testing::values(compose(k1, k2)) == oracle::product(testing::values(k1), testing::values(k2)));
    // (f k1) k2 = f (k1 k2)
    REQUIRE(integrate(integrate(f, k1), k2) == integrate(f, compose(k1, k2)));
  }
}

TEST_CASE("vector operations", "[vector]") {
  auto g = GroundSet::indexed(3);
  auto a = TropVector::from_values(g, {1, Z, T});
  auto b = TropVector::from_values(g, {0, 4, 2});
  CHECK(oplus(a, b) == TropVector::from_values(g, {1, 4, T}));
  CHECK(wedge(a, b) == TropVector::from_values(g, {0, Z, 2}));
  CHECK(scale(Scalar(2), b) == TropVector::from_values(g, {2, 6, 4}));
  CHECK(scale(Scalar::zero(), a).is_zero());
  CHECK(top_indicator(a) == TropVector::from_values(g, {Z, Z, T}));
  CHECK(leq(wedge(a, b), a));
  CHECK_FALSE(leq(a, b));
}

TEST_CASE("ground sets", "[vector]") {
  auto g = GroundSet::from_coordinates({-1, 0, 2.5});
  CHECK(g.label(0) == "-1");
  CHECK(g.label(2) == "2.5");
  CHECK(g.index_of("0") == 1);
  CHECK_FALSE(g.find("7").has_value());
  CHECK_THROWS_AS(GroundSet(std::vector<std::string>{"a", "a"}), DomainError);
  auto h = GroundSet::indexed(3);
  CHECK_THROWS_AS(oplus(TropVector::zero(g), TropVector::zero(h)), DomainError);
}

TEST_CASE("kernel shapes", "[kernel]") {
  auto g = GroundSet::indexed(2);
  auto h = GroundSet::indexed(3, "y");
  auto k = KernelMatrix::zero(g, h);
  CHECK(k.rows() == 2);
  CHECK(k.cols() == 3);
  CHECK(k.transpose().domain() == h);
  CHECK_THROWS_AS(compose(k, k), DomainError);
  CHECK_THROWS_AS(integrate(TropVector::zero(h), k), DomainError);
  auto id = KernelMatrix::identity(g);
  auto m = KernelMatrix::from_values(g, g, {{1, 2}, {3, 4}});
  CHECK(compose(id, m) == m);
  CHECK(compose(m, id) == m);
}
