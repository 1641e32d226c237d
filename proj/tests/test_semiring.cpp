#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace tropk;
using testing::T;
using testing::Z;

namespace {

std::vector<double> sample_values() {
  std::vector<double> v{Z, T};
  for (int i = -12; i <= 12; i += 3) v.push_back(i);
  return v;
}

}  // namespace

TEST_CASE("residual agrees with a grid search", "[semiring]") {
  for (double a : sample_values())
    for (double b : sample_values()) {
      INFO("a = " << a << ", b = " << b);
      CHECK(residual(Scalar(a), Scalar(b)).value() == oracle::residual_grid(a, b));
    }
}

TEST_CASE("zero absorbs top", "[semiring]") {
  CHECK(odot(Scalar::zero(), Scalar::top()).is_zero());
  CHECK(odot(Scalar::top(), Scalar(3)).is_top());
  CHECK(odot(Scalar(2), Scalar(-5)) == Scalar(-3));
}

TEST_CASE("laws on random triples", "[semiring][property]") {
  Rng rng(11);
  const ScalarDistribution d{-20, 20, 0.15, 0.1};
  for (Semiring ring : {Semiring::rmax_complete, Semiring::zmax_complete, Semiring::boolean}) {
    for (int t = 0; t < 2000; ++t) {
      auto a = random_scalar(rng, d, ring);
      auto b = random_scalar(rng, d, ring);
      auto c = random_scalar(rng, d, ring);
      REQUIRE(oplus(a, a) == a);
      REQUIRE(oplus(a, oplus(b, c)) == oplus(oplus(a, b), c));
      REQUIRE(odot(a, odot(b, c)) == odot(odot(a, b), c));
      REQUIRE(odot(a, oplus(b, c)) == oplus(odot(a, b), odot(a, c)));
      REQUIRE(odot(a, Scalar::one(ring)) == a);
      REQUIRE(oplus(a, Scalar::zero(ring)) == a);
      // Galois: a c <= b iff c <= a\b
      REQUIRE(leq(odot(a, c), b) == leq(c, residual(a, b)));
    }
  }
}

TEST_CASE("boolean semiring", "[semiring]") {
  const auto r = Semiring::boolean;
  CHECK(Scalar::top(r) == Scalar::one(r));
  CHECK(Scalar::one(r).is_top());
  CHECK(residual(Scalar::one(r), Scalar::zero(r)).is_zero());
  CHECK(residual(Scalar::zero(r), Scalar::zero(r)) == Scalar::one(r));
  CHECK_THROWS_AS(Scalar(1.0, r), DomainError);
}

TEST_CASE("scalar validation", "[semiring]") {
  CHECK_THROWS_AS(Scalar(0.5, Semiring::zmax_complete), DomainError);
  CHECK_THROWS_AS(Scalar(std::nan(""), Semiring::rmax_complete), DomainError);
  CHECK_THROWS_AS(oplus(Scalar(1), Scalar(1, Semiring::zmax_complete)), DomainError);
  CHECK(parse_semiring("zmax-complete") == Semiring::zmax_complete);
  CHECK_FALSE(parse_semiring("minplus").has_value());
}

TEST_CASE("infima of sets", "[semiring]") {
  std::vector<Scalar> v{Scalar(3), Scalar(-1), Scalar::top()};
  CHECK(inf_set(v, Semiring::rmax_complete) == Scalar(-1));
  CHECK(sup_set(v, Semiring::rmax_complete).is_top());
  CHECK(inf_set({}, Semiring::rmax_complete).is_top());
  CHECK(sup_set({}, Semiring::rmax_complete).is_zero());
}
