#pragma once

/**
 * @file instances.hpp
 * @brief Named example instances: full spaces, chains, concave grids, the
 * two-generator window family, Lipschitz spaces and order indicators.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropk/operator.hpp"
#include "tropk/random.hpp"
#include "tropk/semimetric.hpp"
#include "tropk/semimodule.hpp"

namespace tropk {

inline GroundSet integer_chain(std::size_t n, int first = 1) {
  std::vector<double> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back(first + static_cast<double>(i));
  return GroundSet::from_coordinates(std::move(c));
}

/// K(X) on n points.
inline SemimoduleSpec full_kx(std::size_t n, Semiring ring = Semiring::rmax_complete) {
  if (n == 0) throw DomainError("full-KX: size must be positive");
  return full_space(GroundSet::indexed(n), ring);
}

/// Bounded maps on a finite set: the same space as K(X).
inline SemimoduleSpec bounded_kx(std::size_t n, Semiring ring = Semiring::rmax_complete) { return full_kx(n, ring); }

/// Nonincreasing functions on the chain 1 < ... < n, spanned by the steps
/// s_k = one on {x <= k}.
inline SemimoduleSpec nonincreasing_chain(std::size_t n, Semiring ring = Semiring::rmax_complete) {
  if (n == 0) throw DomainError("nonincreasing-chain: size must be positive");
  auto g = integer_chain(n);
  std::vector<TropVector> steps;
  for (std::size_t k = 0; k < n; ++k) {
    auto s = TropVector::zero(g, ring);
    for (std::size_t x = 0; x <= k; ++x) s.set(x, Scalar::one(ring));
    steps.push_back(std::move(s));
  }
  return SemimoduleSpec(g, ring, std::move(steps), Closure::b_closed_span);
}

/// Indicator semimetric of the order on the chain 1 < ... < n: one where
/// y < x (strict) or y <= x (non-strict), zero elsewhere.
inline KernelMatrix order_indicator(std::size_t n, bool strict) {
  if (n == 0) throw DomainError("order-indicator: size must be positive");
  auto g = integer_chain(n);
  auto m = KernelMatrix::zero(g, g);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (strict ? y < x : y <= x) m.set(x, y, Scalar::one());
  return m;
}

/// Least concave majorant (over the coordinates) of max(f, g). Points outside
/// the hull of the finite entries stay zero.
inline TropVector concave_oplus(const TropVector& f, const TropVector& g, const std::vector<double>& coords) {
  detail::require_compatible(f, g, "concave_oplus");
  if (coords.size() != f.size()) throw DomainError("concave_oplus: coordinate count mismatch");
  for (std::size_t i = 1; i < coords.size(); ++i)
    if (!(coords[i - 1] < coords[i])) throw DomainError("concave_oplus: coordinates must be strictly increasing");
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto m = oplus(f[i], g[i]);
    if (m.is_top()) throw DomainError("concave_oplus: values must be finite or zero");
    if (!m.is_zero()) pts.emplace_back(coords[i], m.value());
  }
  auto out = TropVector::zero(f.ground(), f.semiring());
  if (pts.empty()) return out;
  // Upper hull by monotone chain; pts are sorted by coordinate.
  std::vector<std::pair<double, double>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const double cross = (b.first - a.first) * (p.second - a.second) - (b.second - a.second) * (p.first - a.first);
      if (cross >= 0) hull.pop_back();
      else break;
    }
    hull.push_back(p);
  }
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const double c = coords[i];
    if (c < hull.front().first || c > hull.back().first) continue;
    if (hull.size() == 1) {
      out.set(i, Scalar(hull.front().second, f.semiring()));
      continue;
    }
    for (std::size_t j = 0; j + 1 < hull.size(); ++j) {
      const auto& l = hull[j];
      const auto& r = hull[j + 1];
      if (c > r.first) continue;
      out.set(i, Scalar(l.second + (c - l.first) / (r.first - l.first) * (r.second - l.second), f.semiring()));
      break;
    }
  }
  return out;
}

/// Grid for concave functions with the witness pair whose hull-sum differs
/// from the pointwise max at the middle point.
struct ConcaveGrid {
  GroundSet ground;
  std::vector<double> coords;
  TropVector f;
  TropVector g;
};

inline ConcaveGrid concave_grid(std::vector<double> coords = {0, 1, 2}) {
  if (coords.size() < 3) throw DomainError("concave-grid: needs at least three points");
  auto ground = GroundSet::from_coordinates(coords);
  const double lo = coords.front();
  const double hi = coords.back();
  std::vector<double> fv, gv;
  for (double c : coords) {
    fv.push_back(-5.0 * (c - lo));
    gv.push_back(-5.0 * (hi - c));
  }
  return {ground, coords, TropVector::from_values(ground, fv), TropVector::from_values(ground, gv)};
}

/// The span of f(x) = -x and the constant one on the integer window [-n, n],
/// with the functional tabulated on the two generators as phi(f) = zero,
/// phi(one) = one.
struct Example7Window {
  int n;
  SemimoduleSpec module;
  Functional functional;
  /// Values of a used for the probes a (x) f (+) one.
  std::vector<double> probe_schedule;
};

inline std::vector<double> example7_probe_schedule(int n) {
  std::vector<double> s{0, 10, 100, double(n), 10.0 * n, 100.0 * n};
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline Example7Window example7_window(int n) {
  if (n <= 0) throw DomainError("example7-window: n must be positive");
  std::vector<double> c;
  for (int x = -n; x <= n; ++x) c.push_back(x);
  auto g = GroundSet::from_coordinates(c);
  std::vector<double> fv;
  for (double x : c) fv.push_back(-x);
  SemimoduleSpec v(g, Semiring::rmax_complete,
                   {TropVector::from_values(g, fv), TropVector::filled(g, Scalar::one())}, Closure::b_closed_span);
  auto phi = Functional::tabulated(v, {Scalar::zero(), Scalar::one()});
  return {n, std::move(v), std::move(phi), example7_probe_schedule(n)};
}

/// Upper bound on k(x) for any integral kernel k of the window functional,
/// forced by the probes a (x) f (+) one with a up to `a_max` from the schedule:
/// inf over probes of residual(v_a(x), phi(v_a)).
inline Scalar example7_kernel_bound(const Example7Window& w, std::size_t x, double a_max) {
  Scalar bound = Scalar::top();
  for (double a : w.probe_schedule) {
    if (a > a_max) break;
    const std::vector<Scalar> c{Scalar(a), Scalar::one()};
    auto v = combination(w.module, c);
    bound = wedge(bound, residual(v[x], w.functional.on_coordinates(c)));
  }
  return bound;
}

/// Random finite metric on n points: shortest-path closure of random
/// symmetric weights in [1, 9].
inline std::vector<std::vector<double>> random_metric(Rng& rng, std::size_t n) {
  std::uniform_int_distribution<int> w(1, 9);
  std::vector<std::vector<double>> r(n, std::vector<double>(n, 0.0));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) r[x][y] = r[y][x] = w(rng);
  for (std::size_t z = 0; z < n; ++z)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) r[x][y] = std::min(r[x][y], r[x][z] + r[z][y]);
  return r;
}

/// Three collinear points at 0, 1, 2.
inline Semimetric collinear_metric() { return lipschitz_space(GroundSet::from_coordinates({0, 1, 2})); }

/// Random generators with entries in [-9, 9], zeros and occasional tops,
/// resampled until the wedge closure is admissible.
inline SemimoduleSpec random_admissible_wedge(Rng& rng, std::size_t n, std::size_t generators,
                                              Semiring ring = Semiring::rmax_complete) {
  const auto g = GroundSet::indexed(n);
  for (;;) {
    std::vector<TropVector> gens;
    for (std::size_t i = 0; i < generators; ++i) gens.push_back(random_vector(rng, g, {-9, 9, 0.25, 0.08}, ring));
    SemimoduleSpec v(g, ring, std::move(gens), Closure::wedge_closed);
    if (admissible(v).admissible) return v;
  }
}

/// Random b-closed span with finite or zero entries.
inline SemimoduleSpec random_span(Rng& rng, std::size_t n, std::size_t generators,
                                  Semiring ring = Semiring::rmax_complete) {
  const auto g = GroundSet::indexed(n);
  std::vector<TropVector> gens;
  for (std::size_t i = 0; i < generators; ++i) gens.push_back(random_vector(rng, g, {-9, 9, 0.25, 0.0}, ring));
  return SemimoduleSpec(g, ring, std::move(gens), Closure::b_closed_span);
}

struct InstanceDescriptor {
  std::string name;
  std::size_t size = 3;
  std::uint64_t seed = 0;
  std::vector<double> coordinates;
};

struct BuiltInstance {
  std::string name;
  std::optional<SemimoduleSpec> module;
  std::optional<Semimetric> semimetric;
  std::optional<KernelMatrix> matrix;
  std::optional<Functional> functional;
  std::vector<TropVector> vectors;
  std::vector<double> probe_schedule;
};

inline const std::vector<std::string>& instance_names() {
  static const std::vector<std::string> names{"full-KX",          "bounded-KX",
                                              "nonincreasing-chain", "concave-grid",
                                              "example7-window",  "metric-lipschitz",
                                              "order-indicator-strict", "order-indicator-nonstrict",
                                              "random-semimetric", "random-wedge"};
  return names;
}

/// Deterministic in the descriptor.
inline BuiltInstance build(const InstanceDescriptor& d) {
  if (d.size == 0) throw DomainError("instance size must be positive");
  BuiltInstance b;
  b.name = d.name;
  Rng rng(d.seed);
  if (d.name == "full-KX") {
    b.module = full_kx(d.size);
  } else if (d.name == "bounded-KX") {
    b.module = bounded_kx(d.size);
  } else if (d.name == "nonincreasing-chain") {
    b.module = nonincreasing_chain(d.size);
  } else if (d.name == "concave-grid") {
    auto cg = d.coordinates.empty() ? concave_grid() : concave_grid(d.coordinates);
    b.vectors = {cg.f, cg.g};
  } else if (d.name == "example7-window") {
    auto w = example7_window(static_cast<int>(d.size));
    b.module = w.module;
    b.functional = w.functional;
    b.probe_schedule = w.probe_schedule;
  } else if (d.name == "metric-lipschitz") {
    Semimetric s = !d.coordinates.empty() ? lipschitz_space(GroundSet::from_coordinates(d.coordinates))
                   : d.seed == 0         ? collinear_metric()
                                         : lipschitz_space(GroundSet::indexed(d.size), random_metric(rng, d.size));
    b.module = lip0_generators(s);
    b.semimetric = std::move(s);
  } else if (d.name == "order-indicator-strict" || d.name == "order-indicator-nonstrict") {
    b.matrix = order_indicator(d.size, d.name == "order-indicator-strict");
  } else if (d.name == "random-semimetric") {
    auto s = random_semimetric(rng, GroundSet::indexed(d.size));
    b.module = lip0_generators(s);
    b.semimetric = std::move(s);
  } else if (d.name == "random-wedge") {
    b.module = random_admissible_wedge(rng, d.size, d.size);
  } else {
    throw DomainError("unknown instance '" + d.name + "'");
  }
  return b;
}

}  // namespace tropk
