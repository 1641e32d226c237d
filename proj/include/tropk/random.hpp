#pragma once

// Seeded generators for randomized probes and property checks. Everything
// draws integers so that max-plus arithmetic stays exact.

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "tropk/kernel_matrix.hpp"
#include "tropk/semimodule.hpp"

namespace tropk {

using Rng = std::mt19937_64;
inline constexpr std::string_view kRngName = "mt19937_64";

struct ScalarDistribution {
  int lo = -9;
  int hi = 9;
  double zero_probability = 0.0;
  double top_probability = 0.0;
};

inline Scalar random_scalar(Rng& rng, const ScalarDistribution& d, Semiring ring = Semiring::rmax_complete) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = u(rng);
  if (r < d.zero_probability) return Scalar::zero(ring);
  if (r < d.zero_probability + d.top_probability) return Scalar::top(ring);
  if (ring == Semiring::boolean) return Scalar::one(ring);
  std::uniform_int_distribution<int> v(d.lo, d.hi);
  return Scalar(static_cast<double>(v(rng)), ring);
}

inline TropVector random_vector(Rng& rng, const GroundSet& ground, const ScalarDistribution& d,
                                Semiring ring = Semiring::rmax_complete) {
  std::vector<Scalar> e;
  e.reserve(ground.size());
  for (std::size_t i = 0; i < ground.size(); ++i) e.push_back(random_scalar(rng, d, ring));
  return TropVector(ground, std::move(e));
}

inline KernelMatrix random_matrix(Rng& rng, const GroundSet& domain, const GroundSet& codomain,
                                  const ScalarDistribution& d, Semiring ring = Semiring::rmax_complete) {
  std::vector<Scalar> e;
  e.reserve(domain.size() * codomain.size());
  for (std::size_t i = 0; i < domain.size() * codomain.size(); ++i) e.push_back(random_scalar(rng, d, ring));
  return KernelMatrix(domain, codomain, std::move(e));
}

inline std::size_t random_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

/// A random element of V: a random combination of span generators, and for
/// wedge-closed V the infimum of up to three such combinations.
inline TropVector random_element(Rng& rng, const SemimoduleSpec& v) {
  const ScalarDistribution coeff{-6, 6, 0.3, 0.0};
  auto one_combination = [&] {
    const auto& gens = v.span_generators();
    std::vector<Scalar> c;
    for (std::size_t i = 0; i < gens.size(); ++i) c.push_back(random_scalar(rng, coeff, v.semiring()));
    return detail::combine(c, gens, v.ground(), v.semiring());
  };
  auto f = one_combination();
  if (v.closure() == Closure::wedge_closed) {
    const std::size_t extra = random_index(rng, 3);
    for (std::size_t k = 0; k < extra; ++k) f = wedge(f, one_combination());
  }
  return f;
}

inline std::vector<TropVector> random_elements(Rng& rng, const SemimoduleSpec& v, std::size_t count) {
  std::vector<TropVector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_element(rng, v));
  return out;
}

}  // namespace tropk
