#pragma once

/**
 * @file semiring.hpp
 * @brief Complete idempotent semirings of max-plus type.
 *
 * Every scalar is an extended real carried together with a tag naming the
 * semiring it lives in:
 *
 *   rmax-complete   R u {-inf, +inf}, oplus = max, odot = +
 *   zmax-complete   Z u {-inf, +inf}, same operations
 *   boolean         {-inf, 0}; -inf is false, 0 is true (and also top)
 *
 * The bottom -inf is the zero of oplus and absorbs odot, including
 * zero (x) top = zero. Top absorbs every other element under odot.
 */

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>

#include "tropk/errors.hpp"

namespace tropk {

enum class Semiring : std::uint8_t { rmax_complete, zmax_complete, boolean };

inline std::string_view to_string(Semiring s) noexcept {
  switch (s) {
    case Semiring::rmax_complete: return "rmax-complete";
    case Semiring::zmax_complete: return "zmax-complete";
    case Semiring::boolean: return "boolean";
  }
  return "unknown";
}

inline std::optional<Semiring> parse_semiring(std::string_view name) noexcept {
  if (name == "rmax-complete") return Semiring::rmax_complete;
  if (name == "zmax-complete") return Semiring::zmax_complete;
  if (name == "boolean") return Semiring::boolean;
  return std::nullopt;
}

struct SemiringDescriptor {
  Semiring name;
  // Every non-zero finite element has a multiplicative inverse.
  bool is_semifield_on_finite_part;
  bool has_top;
  // Top is itself invertible (only in the boolean semiring, where top = one).
  bool top_is_invertible;
};

constexpr SemiringDescriptor describe(Semiring s) noexcept {
  switch (s) {
    case Semiring::boolean: return {s, true, true, true};
    default: return {s, true, true, false};
  }
}

class Scalar {
 public:
  static constexpr double kBottom = -std::numeric_limits<double>::infinity();
  static constexpr double kTop = std::numeric_limits<double>::infinity();

  /// The zero of rmax-complete.
  constexpr Scalar() noexcept = default;

  explicit Scalar(double value, Semiring ring = Semiring::rmax_complete) : value_(value), ring_(ring) {
    if (std::isnan(value)) throw DomainError("scalar value is NaN");
    switch (ring) {
      case Semiring::zmax_complete:
        if (std::isfinite(value) && value != std::floor(value))
          throw DomainError("zmax-complete scalar must be an integer, got " + std::to_string(value));
        break;
      case Semiring::boolean:
        if (value != kBottom && value != 0.0)
          throw DomainError("boolean scalar must be -inf or 0, got " + std::to_string(value));
        break;
      case Semiring::rmax_complete: break;
    }
  }

  static constexpr Scalar zero(Semiring ring = Semiring::rmax_complete) noexcept { return {kBottom, ring, Unchecked{}}; }
  static constexpr Scalar one(Semiring ring = Semiring::rmax_complete) noexcept { return {0.0, ring, Unchecked{}}; }
  static constexpr Scalar top(Semiring ring = Semiring::rmax_complete) noexcept {
    return {ring == Semiring::boolean ? 0.0 : kTop, ring, Unchecked{}};
  }

  constexpr double value() const noexcept { return value_; }
  constexpr Semiring semiring() const noexcept { return ring_; }

  constexpr bool is_zero() const noexcept { return value_ == kBottom; }
  constexpr bool is_top() const noexcept { return ring_ == Semiring::boolean ? value_ == 0.0 : value_ == kTop; }
  constexpr bool is_invertible() const noexcept { return value_ != kBottom && value_ != kTop; }

  friend constexpr bool operator==(const Scalar&, const Scalar&) = default;

 private:
  struct Unchecked {};
  constexpr Scalar(double v, Semiring r, Unchecked) noexcept : value_(v), ring_(r) {}

  // Arithmetic results are produced through this path; inputs are already valid.
  friend Scalar make_unchecked(double v, Semiring r) noexcept;

  double value_ = kBottom;
  Semiring ring_ = Semiring::rmax_complete;
};

inline Scalar make_unchecked(double v, Semiring r) noexcept { return Scalar(v, r, Scalar::Unchecked{}); }

inline std::string to_string(const Scalar& s) {
  if (s.value() == Scalar::kBottom) return "-inf";
  if (s.value() == Scalar::kTop) return "+inf";
  std::ostringstream os;
  os.precision(17);
  os << s.value();
  return os.str();
}

namespace detail {
inline void require_same(const Scalar& a, const Scalar& b, const char* op) {
  if (a.semiring() != b.semiring()) {
    throw DomainError(std::string(op) + ": mixed semirings " + std::string(to_string(a.semiring())) + " and " +
                      std::string(to_string(b.semiring())));
  }
}
}  // namespace detail

inline Scalar oplus(const Scalar& a, const Scalar& b) {
  detail::require_same(a, b, "oplus");
  return a.value() >= b.value() ? a : b;
}

inline Scalar odot(const Scalar& a, const Scalar& b) {
  detail::require_same(a, b, "odot");
  if (a.is_zero() || b.is_zero()) return Scalar::zero(a.semiring());
  if (a.value() == Scalar::kTop || b.value() == Scalar::kTop) return Scalar::top(a.semiring());
  return make_unchecked(a.value() + b.value(), a.semiring());
}

/// Standard order: a <= b iff a (+) b = b.
inline bool leq(const Scalar& a, const Scalar& b) {
  detail::require_same(a, b, "leq");
  return a.value() <= b.value();
}

inline Scalar sup_set(std::span<const Scalar> values, Semiring ring) {
  Scalar acc = Scalar::zero(ring);
  for (const auto& v : values) acc = oplus(acc, v);
  return acc;
}

inline Scalar inf_set(std::span<const Scalar> values, Semiring ring) {
  if (!describe(ring).has_top && values.empty())
    throw DomainError("inf_set: empty infimum needs a top element");
  Scalar acc = Scalar::top(ring);
  for (const auto& v : values) {
    detail::require_same(acc, v, "inf_set");
    if (v.value() < acc.value()) acc = v;
  }
  return acc;
}

/// Pointwise minimum of two scalars (the binary case of inf_set).
inline Scalar wedge(const Scalar& a, const Scalar& b) {
  detail::require_same(a, b, "wedge");
  return a.value() <= b.value() ? a : b;
}

/// Largest c with a (x) c <= b.
inline Scalar residual(const Scalar& a, const Scalar& b) {
  detail::require_same(a, b, "residual");
  const Semiring ring = a.semiring();
  if (!describe(ring).has_top) throw UnsupportedError("residual needs a completed semiring");
  if (a.is_zero()) return Scalar::top(ring);
  if (b.value() == Scalar::kTop) return Scalar::top(ring);
  if (a.value() == Scalar::kTop) return Scalar::zero(ring);  // b < top here
  if (b.is_zero()) return Scalar::zero(ring);
  return make_unchecked(b.value() - a.value(), ring);
}

/// Multiplicative inverse of a finite scalar.
inline Scalar inverse(const Scalar& a) {
  if (!a.is_invertible()) throw DomainError("inverse: " + to_string(a) + " is not invertible");
  return make_unchecked(a.value() == 0.0 ? 0.0 : -a.value(), a.semiring());
}

/// Equality up to an absolute tolerance on finite values. Infinite values
/// must match exactly.
inline bool approx_equal(const Scalar& a, const Scalar& b, double tolerance) {
  if (a.semiring() != b.semiring()) return false;
  if (tolerance <= 0.0 || !a.is_invertible() || !b.is_invertible()) return a == b;
  return std::abs(a.value() - b.value()) <= tolerance;
}

}  // namespace tropk
