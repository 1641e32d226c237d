#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace tropk;
using testing::T;
using testing::Z;

namespace {

std::vector<double> coefficient_grid() {
  std::vector<double> g{T};
  for (int c = -6; c <= 6; ++c) g.push_back(c);
  return g;
}

TropVector small_vector(Rng& rng, const GroundSet& g, double top_p) {
  return random_vector(rng, g, {-1, 1, 0.25, top_p});
}

// Infimum closure of a span on two points: every finite infimum is the
// infimum of two elements.
std::set<oracle::Vec> pairwise_infima(const std::set<oracle::Vec>& span) {
  std::set<oracle::Vec> out;
  for (const auto& a : span)
    for (const auto& b : span) out.insert({std::min(a[0], b[0]), std::min(a[1], b[1])});
  return out;
}

std::set<oracle::Vec> wedge_enumeration(const std::vector<TropVector>& gens) {
  auto g = testing::values(gens);
  for (const auto& v : testing::values(gens)) g.push_back(oracle::top_part(v));
  return pairwise_infima(oracle::span_enumeration(g, coefficient_grid()));
}

}  // namespace

TEST_CASE("span membership agrees with coefficient enumeration", "[semimodule][property]") {
  Rng rng(21);
  const auto g = GroundSet::indexed(3);
  for (int t = 0; t < 40; ++t) {
    std::vector<TropVector> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(small_vector(rng, g, 0.0));
    SemimoduleSpec v(g, gens);
    auto members = oracle::span_enumeration(testing::values(gens), coefficient_grid());
    for (int p = 0; p < 40; ++p) {
      auto f = random_vector(rng, g, {-3, 3, 0.2, 0.0});
      INFO(to_string(f));
      REQUIRE(contains(v, f) == (members.count(testing::values(f)) > 0));
    }
    for (int p = 0; p < 10; ++p) {
      auto f = random_element(rng, v);
      REQUIRE(contains(v, f));
      auto res = membership(f, v);
      REQUIRE(res.reconstruction.has_value());
      REQUIRE(*res.reconstruction == f);
    }
  }
}

TEST_CASE("wedge membership agrees with infimum enumeration", "[semimodule][property]") {
  Rng rng(22);
  const auto g = GroundSet::indexed(2);
  for (int t = 0; t < 40; ++t) {
    std::vector<TropVector> gens;
    for (int i = 0; i < 2; ++i) gens.push_back(small_vector(rng, g, 0.1));
    SemimoduleSpec v(g, gens, Closure::wedge_closed);
    auto members = wedge_enumeration(gens);
    for (int p = 0; p < 40; ++p) {
      auto f = random_vector(rng, g, {-3, 3, 0.2, 0.1});
      INFO(to_string(gens[0]) << " " << to_string(gens[1]) << " f = " << to_string(f));
      REQUIRE(contains(v, f) == (members.count(testing::values(f)) > 0));
    }
  }
}

TEST_CASE("least unit elements are the infimum of normalised elements", "[semimodule][property]") {
  Rng rng(23);
  const auto g = GroundSet::indexed(2);
  int checked = 0;
  for (int t = 0; t < 60; ++t) {
    std::vector<TropVector> gens;
    for (int i = 0; i < 2; ++i) gens.push_back(small_vector(rng, g, 0.1));
    SemimoduleSpec v(g, gens, Closure::wedge_closed);
    if (!admissible(v).admissible) continue;
    auto members = wedge_enumeration(gens);
    for (std::size_t x : v.support_points()) {
      oracle::Vec inf{T, T};
      for (const auto& m : members)
        if (m[x] == 0.0) inf = {std::min(inf[0], m[0]), std::min(inf[1], m[1])};
      auto d = least_unit_element(v, x);
      REQUIRE(testing::values(d) == inf);
      REQUIRE(contains(v, d));
      ++checked;
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("admissibility", "[semimodule]") {
  const auto g = GroundSet::indexed(2);
  SECTION("top outside the support") {
    for (auto c : {Closure::wedge_closed, Closure::b_closed_span}) {
      SemimoduleSpec v(g, {TropVector::from_values(g, {T, 0})}, c);
      auto a = admissible(v);
      CHECK_FALSE(a.admissible);
      CHECK(a.point == 0u);
      CHECK(nondegenerate(v).support == std::vector<std::size_t>{1});
    }
  }
  SECTION("top covered by a normalised element") {
    SemimoduleSpec v(g, {TropVector::from_values(g, {T, 0}), TropVector::from_values(g, {0, Z})}, Closure::wedge_closed);
    CHECK(admissible(v).admissible);
    CHECK(nondegenerate(v).nondegenerate);
  }
  SECTION("finite generators are always admissible") {
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
      SemimoduleSpec v(GroundSet::indexed(4), {random_vector(rng, GroundSet::indexed(4), {-5, 5, 0.3, 0.0}),
                                               random_vector(rng, GroundSet::indexed(4), {-5, 5, 0.3, 0.0})},
                       Closure::wedge_closed);
      REQUIRE(admissible(v).admissible);
    }
  }
}

TEST_CASE("span projection is the largest element below", "[semimodule][property]") {
  Rng rng(24);
  const auto g = GroundSet::indexed(3);
  for (int t = 0; t < 30; ++t) {
    SemimoduleSpec v(g, {small_vector(rng, g, 0.0), small_vector(rng, g, 0.0)});
    auto members = oracle::span_enumeration(testing::values(v.generators()), coefficient_grid());
    auto f = random_vector(rng, g, {-3, 3, 0.1, 0.0});
    auto p = testing::values(span_projection(f, v));
    auto fv = testing::values(f);
    oracle::Vec best(3, Z);
    for (const auto& m : members) {
      bool below = true;
      for (int x = 0; x < 3; ++x) below = below && m[x] <= fv[x];
      if (below)
        for (int x = 0; x < 3; ++x) best[x] = std::max(best[x], m[x]);
    }
    REQUIRE(p == best);
  }
}

TEST_CASE("restriction to the support", "[semimodule]") {
  const auto g = GroundSet::indexed(3);
  SemimoduleSpec v(g, {TropVector::from_values(g, {0, Z, 2}), TropVector::from_values(g, {1, Z, Z})});
  auto r = restrict_to_support(v);
  CHECK(r.ground().labels() == std::vector<std::string>{"x0", "x2"});
  CHECK(r.generators()[0] == TropVector::from_values(r.ground(), {0, 2}));
  CHECK_THROWS_AS(least_unit_element(v, 1), DomainError);
}

TEST_CASE("full space contains everything", "[semimodule]") {
  Rng rng(25);
  auto v = full_kx(4);
  for (int t = 0; t < 50; ++t) REQUIRE(contains(v, random_vector(rng, v.ground(), {-9, 9, 0.2, 0.1})));
}

TEST_CASE("semiring mismatch is rejected", "[semimodule]") {
  const auto g = GroundSet::indexed(2);
  auto v = full_kx(2);
  CHECK_THROWS_AS(contains(v, TropVector::zero(g, Semiring::zmax_complete)), DomainError);
  CHECK_THROWS_AS(SemimoduleSpec(g, Semiring::rmax_complete, {TropVector::zero(g, Semiring::boolean)}), DomainError);
}
