#pragma once

/**
 * @file semimodule.hpp
 * @brief Finitely generated functional semimodules V in K(X).
 *
 * A SemimoduleSpec is a ground set plus a finite list of generators and one
 * of two closure rules:
 *
 *  - b-closed span: all sups of scaled generators, sup_i c_i (x) g_i;
 *  - wedge-closed: the smallest set containing the generators that is closed
 *    under sups, scalar action and arbitrary pointwise infima.
 *
 * Over a complete semiring on a finite ground set the wedge closure is the
 * set of finite infima of span elements, once the span is extended by the
 * top indicators of generators that carry top entries (those indicators are
 * infima of c (x) g as c decreases). Both memberships are decided exactly by
 * residuation.
 */

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropk/vector.hpp"

namespace tropk {

enum class Closure { b_closed_span, wedge_closed };

inline std::string_view to_string(Closure c) noexcept {
  return c == Closure::b_closed_span ? "b-closed-span" : "wedge-closed";
}

inline std::optional<Closure> parse_closure(std::string_view s) noexcept {
  if (s == "b-closed-span") return Closure::b_closed_span;
  if (s == "wedge-closed") return Closure::wedge_closed;
  return std::nullopt;
}

class SemimoduleSpec {
 public:
  SemimoduleSpec(GroundSet ground, Semiring ring, std::vector<TropVector> generators,
                 Closure closure = Closure::b_closed_span)
      : ground_(std::move(ground)), ring_(ring), generators_(std::move(generators)), closure_(closure) {
    for (const auto& g : generators_) {
      if (!(g.ground() == ground_)) throw DomainError("semimodule generator lives on another ground set");
      if (g.semiring() != ring_) throw DomainError("semimodule generator from another semiring");
    }
    span_generators_ = generators_;
    if (closure_ == Closure::wedge_closed && !describe(ring_).top_is_invertible) {
      for (const auto& g : generators_) {
        auto t = top_indicator(g);
        if (!t.is_zero() && !(t == g)) span_generators_.push_back(std::move(t));
      }
    }
    support_.assign(ground_.size(), false);
    for (const auto& g : generators_)
      for (std::size_t x = 0; x < g.size(); ++x)
        if (g[x].is_invertible()) support_[x] = true;
  }

  /// Ring taken from the first generator.
  SemimoduleSpec(GroundSet ground, std::vector<TropVector> generators, Closure closure = Closure::b_closed_span)
      : SemimoduleSpec(ground, generators.empty() ? Semiring::rmax_complete : generators.front().semiring(),
                       std::move(generators), closure) {}

  const GroundSet& ground() const noexcept { return ground_; }
  Semiring semiring() const noexcept { return ring_; }
  Closure closure() const noexcept { return closure_; }
  const std::vector<TropVector>& generators() const noexcept { return generators_; }

  /// Generators of the span whose finite infima make up the wedge closure.
  /// Equal to generators() for b-closed spans.
  const std::vector<TropVector>& span_generators() const noexcept { return span_generators_; }

  /// Membership of x in X_V = { x : some element of V takes the value one at x }.
  bool in_support(std::size_t x) const { return support_.at(x); }

  std::vector<std::size_t> support_points() const {
    std::vector<std::size_t> pts;
    for (std::size_t x = 0; x < support_.size(); ++x)
      if (support_[x]) pts.push_back(x);
    return pts;
  }

  SemimoduleSpec with_closure(Closure c) const { return SemimoduleSpec(ground_, ring_, generators_, c); }

 private:
  GroundSet ground_;
  Semiring ring_;
  std::vector<TropVector> generators_;
  Closure closure_;
  std::vector<TropVector> span_generators_;
  std::vector<bool> support_;
};

inline Scalar delta_eval(std::size_t x, const TropVector& f) {
  if (x >= f.size()) throw DomainError("delta_eval: point index out of range");
  return f[x];
}

inline Scalar delta_eval(const std::string& x, const TropVector& f) { return f.at(x); }

namespace detail {
inline void require_on(const TropVector& f, const SemimoduleSpec& v, const char* op) {
  if (!(f.ground() == v.ground())) throw DomainError(std::string(op) + ": vector and semimodule have different ground sets");
  if (f.semiring() != v.semiring()) throw DomainError(std::string(op) + ": vector and semimodule use different semirings");
}

/// Largest coefficients c_i with c_i (x) g_i <= f.
inline std::vector<Scalar> residual_coefficients(const TropVector& f, const std::vector<TropVector>& gens) {
  std::vector<Scalar> c;
  c.reserve(gens.size());
  for (const auto& g : gens) {
    Scalar ci = Scalar::top(f.semiring());
    for (std::size_t x = 0; x < f.size(); ++x) ci = wedge(ci, residual(g[x], f[x]));
    c.push_back(ci);
  }
  return c;
}

inline TropVector combine(const std::vector<Scalar>& coeffs, const std::vector<TropVector>& gens, const GroundSet& ground,
                          Semiring ring) {
  auto acc = TropVector::zero(ground, ring);
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!coeffs[i].is_zero()) acc = oplus(acc, scale(coeffs[i], gens[i]));
  return acc;
}
}  // namespace detail

/// Largest element of the b-closed span of V's generators lying below f.
inline TropVector span_projection(const TropVector& f, const SemimoduleSpec& v) {
  detail::require_on(f, v, "span_projection");
  return detail::combine(detail::residual_coefficients(f, v.span_generators()), v.span_generators(), v.ground(),
                         v.semiring());
}

/// Linear combination sup_i c_i (x) g_i of V's generators.
inline TropVector combination(const SemimoduleSpec& v, const std::vector<Scalar>& coeffs) {
  if (coeffs.size() != v.generators().size()) throw DomainError("combination: coefficient count mismatch");
  return detail::combine(coeffs, v.generators(), v.ground(), v.semiring());
}

struct WedgeMembership {
  bool member = false;
  // For each point x, the largest span element equal to f at x; f is the
  // infimum of these when it is a member.
  std::vector<TropVector> dominators;
  std::optional<std::size_t> failing_point;
};

inline WedgeMembership wedge_membership(const TropVector& f, const SemimoduleSpec& v, double tolerance = 0.0) {
  detail::require_on(f, v, "wedge_membership");
  const auto& gens = v.span_generators();
  WedgeMembership out;
  out.member = true;
  for (std::size_t x = 0; x < f.size(); ++x) {
    std::vector<Scalar> c;
    c.reserve(gens.size());
    for (const auto& g : gens) c.push_back(residual(g[x], f[x]));
    auto h = detail::combine(c, gens, v.ground(), v.semiring());
    bool covers = true;
    for (std::size_t y = 0; y < f.size() && covers; ++y) {
      covers = leq(f[y], h[y]) || approx_equal(f[y], h[y], tolerance);
    }
    out.dominators.push_back(std::move(h));
    if (!covers && out.member) {
      out.member = false;
      out.failing_point = x;
    }
  }
  return out;
}

struct MembershipResult {
  bool member = false;
  /// Residuated coefficients (b-closed spans): the largest c with sup c_i g_i <= f.
  std::vector<Scalar> coefficients;
  /// sup_i c_i (x) g_i; equals f exactly when f is a member of a span.
  std::optional<TropVector> reconstruction;
  /// Per-point dominators (wedge-closed semimodules).
  std::vector<TropVector> dominators;
  std::optional<std::size_t> failing_point;
};

/// Decides f in V. Wedge-closed semimodules are routed to wedge_membership.
inline MembershipResult membership(const TropVector& f, const SemimoduleSpec& v, double tolerance = 0.0) {
  detail::require_on(f, v, "membership");
  MembershipResult out;
  if (v.closure() == Closure::wedge_closed) {
    auto w = wedge_membership(f, v, tolerance);
    out.member = w.member;
    out.dominators = std::move(w.dominators);
    out.failing_point = w.failing_point;
    return out;
  }
  out.coefficients = detail::residual_coefficients(f, v.generators());
  auto rec = detail::combine(out.coefficients, v.generators(), v.ground(), v.semiring());
  out.member = approx_equal(rec, f, tolerance);
  if (!out.member) {
    for (std::size_t x = 0; x < f.size(); ++x)
      if (!approx_equal(rec[x], f[x], tolerance)) {
        out.failing_point = x;
        break;
      }
  }
  out.reconstruction = std::move(rec);
  return out;
}

inline bool contains(const SemimoduleSpec& v, const TropVector& f, double tolerance = 0.0) {
  return membership(f, v, tolerance).member;
}

struct Nondegeneracy {
  bool nondegenerate = false;
  std::vector<std::size_t> support;  // X_V
};

inline Nondegeneracy nondegenerate(const SemimoduleSpec& v) {
  Nondegeneracy out;
  out.support = v.support_points();
  out.nondegenerate = out.support.size() == v.ground().size();
  return out;
}

struct Admissibility {
  bool admissible = true;
  std::optional<std::size_t> generator;  // offending element (index into span_generators)
  std::optional<std::size_t> point;
  std::string reason;
};

/// Least element of V taking the value one at x (the inf of all such
/// elements, computed over K(X)). Finite entries g(x) contribute
/// g(x)^-1 (x) g, top entries contribute the top indicator of g. For
/// wedge-closed V the result lies in V.
inline TropVector least_unit_element(const SemimoduleSpec& v, std::size_t x) {
  if (x >= v.ground().size()) throw DomainError("least_unit_element: point index out of range");
  if (!v.in_support(x)) throw DomainError("least_unit_element: point '" + v.ground().label(x) + "' lies outside X_V");
  const Semiring ring = v.semiring();
  auto d = TropVector::filled(v.ground(), Scalar::top(ring));
  for (const auto& g : v.span_generators()) {
    if (g[x].is_zero()) continue;
    d = wedge(d, g[x].is_invertible() ? scale(inverse(g[x]), g) : top_indicator(g));
  }
  if (!(d[x] == Scalar::one(ring)))
    throw IntegrityError("least_unit_element: value at '" + v.ground().label(x) + "' is " + to_string(d[x]));
  for (const auto& g : v.span_generators()) {
    if (!leq(scale(g[x], d), g))
      throw IntegrityError("least_unit_element: domination fails at '" + v.ground().label(x) + "'");
  }
  return d;
}

/// Checks admissibility: for every element f and point x with f(x) != 0
/// there is g in V with g(x) = 1 and f(x) (x) g <= f. Finite values are
/// handled by normalisation; only top entries need a search, and it is
/// enough to examine the (span) generators.
inline Admissibility admissible(const SemimoduleSpec& v) {
  Admissibility out;
  const auto& gens = v.span_generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& f = gens[i];
    for (std::size_t x = 0; x < f.size(); ++x) {
      if (f[x].is_zero() || f[x].is_invertible()) continue;
      bool found = false;
      if (v.in_support(x)) {
        if (v.closure() == Closure::wedge_closed) {
          found = leq(scale(f[x], least_unit_element(v, x)), f);
        } else {
          for (const auto& g : v.generators()) {
            if (!g[x].is_invertible()) continue;
            if (leq(scale(f[x], scale(inverse(g[x]), g)), f)) {
              found = true;
              break;
            }
          }
        }
      }
      if (!found) {
        out.admissible = false;
        out.generator = i;
        out.point = x;
        out.reason = v.in_support(x) ? "no normalised element fits under the top entries"
                                     : "top entry at a point outside X_V";
        return out;
      }
    }
  }
  return out;
}

/// Restriction of V to X_V (an embedding when V is admissible).
inline SemimoduleSpec restrict_to_support(const SemimoduleSpec& v) {
  auto pts = v.support_points();
  if (pts.empty()) throw DomainError("restrict_to_support: X_V is empty");
  std::vector<std::string> labels;
  std::vector<double> coords;
  for (auto x : pts) {
    labels.push_back(v.ground().label(x));
    if (v.ground().has_coordinates()) coords.push_back(v.ground().coordinates()[x]);
  }
  GroundSet sub(std::move(labels), std::move(coords));
  std::vector<TropVector> gens;
  for (const auto& g : v.generators()) {
    std::vector<Scalar> e;
    for (auto x : pts) e.push_back(g[x]);
    gens.emplace_back(sub, std::move(e));
  }
  return SemimoduleSpec(sub, v.semiring(), std::move(gens), v.closure());
}

/// The whole of K(X), spanned by the characteristic vectors.
inline SemimoduleSpec full_space(const GroundSet& ground, Semiring ring = Semiring::rmax_complete) {
  std::vector<TropVector> gens;
  for (std::size_t x = 0; x < ground.size(); ++x) gens.push_back(TropVector::unit(ground, x, ring));
  return SemimoduleSpec(ground, ring, std::move(gens), Closure::b_closed_span);
}

}  // namespace tropk
