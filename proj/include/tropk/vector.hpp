#pragma once

/**
 * @file vector.hpp
 * @brief Finite ground sets and functions on them with values in a semiring.
 */

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tropk/semiring.hpp"

namespace tropk {

/// Ordered, nonempty set of distinct point labels, optionally with a numeric
/// coordinate per point. Copies share the same immutable storage.
class GroundSet {
 public:
  GroundSet() : GroundSet(std::vector<std::string>{"x0"}) {}

  explicit GroundSet(std::vector<std::string> labels, std::vector<double> coordinates = {}) {
    if (labels.empty()) throw DomainError("ground set must be nonempty");
    if (!coordinates.empty() && coordinates.size() != labels.size())
      throw DomainError("ground set: coordinate count does not match label count");
    auto impl = std::make_shared<Impl>();
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (!impl->index.emplace(labels[i], i).second) throw DomainError("ground set: duplicate label '" + labels[i] + "'");
    }
    impl->labels = std::move(labels);
    impl->coordinates = std::move(coordinates);
    impl_ = std::move(impl);
  }

  /// Points labelled by their coordinates, e.g. an integer grid.
  static GroundSet from_coordinates(std::vector<double> coordinates) {
    std::vector<std::string> labels;
    labels.reserve(coordinates.size());
    for (double c : coordinates) labels.push_back(to_string(Scalar(c)));
    return GroundSet(std::move(labels), std::move(coordinates));
  }

  /// Points "prefix0", "prefix1", ...
  static GroundSet indexed(std::size_t n, const std::string& prefix = "x") {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
    return GroundSet(std::move(labels));
  }

  std::size_t size() const noexcept { return impl_->labels.size(); }
  const std::vector<std::string>& labels() const noexcept { return impl_->labels; }
  const std::string& label(std::size_t i) const { return impl_->labels.at(i); }
  bool has_coordinates() const noexcept { return !impl_->coordinates.empty(); }
  const std::vector<double>& coordinates() const noexcept { return impl_->coordinates; }

  std::optional<std::size_t> find(const std::string& label) const {
    auto it = impl_->index.find(label);
    if (it == impl_->index.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(const std::string& label) const {
    if (auto i = find(label)) return *i;
    throw DomainError("unknown point '" + label + "'");
  }

  friend bool operator==(const GroundSet& a, const GroundSet& b) {
    return a.impl_ == b.impl_ || a.impl_->labels == b.impl_->labels;
  }

 private:
  struct Impl {
    std::vector<std::string> labels;
    std::vector<double> coordinates;
    std::unordered_map<std::string, std::size_t> index;
  };
  std::shared_ptr<const Impl> impl_;
};

/// An element of K(X): one scalar per point of a finite ground set.
class TropVector {
 public:
  TropVector(GroundSet ground, std::vector<Scalar> entries) : ground_(std::move(ground)), entries_(std::move(entries)) {
    if (entries_.size() != ground_.size())
      throw DomainError("vector has " + std::to_string(entries_.size()) + " entries for " +
                        std::to_string(ground_.size()) + " points");
    if (!entries_.empty()) ring_ = entries_.front().semiring();
    for (const auto& e : entries_) {
      if (e.semiring() != ring_) throw DomainError("vector entries mix semirings");
    }
  }

  static TropVector filled(const GroundSet& ground, Scalar value) {
    return TropVector(ground, std::vector<Scalar>(ground.size(), value));
  }
  static TropVector zero(const GroundSet& ground, Semiring ring = Semiring::rmax_complete) {
    return filled(ground, Scalar::zero(ring));
  }
  /// Characteristic vector: one at point i, zero elsewhere.
  static TropVector unit(const GroundSet& ground, std::size_t i, Semiring ring = Semiring::rmax_complete) {
    auto v = zero(ground, ring);
    v.entries_.at(i) = Scalar::one(ring);
    return v;
  }
  static TropVector from_values(const GroundSet& ground, std::span<const double> values,
                                Semiring ring = Semiring::rmax_complete) {
    std::vector<Scalar> e;
    e.reserve(values.size());
    for (double v : values) e.emplace_back(v, ring);
    return TropVector(ground, std::move(e));
  }
  static TropVector from_values(const GroundSet& ground, std::initializer_list<double> values,
                                Semiring ring = Semiring::rmax_complete) {
    return from_values(ground, std::span<const double>(values.begin(), values.size()), ring);
  }

  const GroundSet& ground() const noexcept { return ground_; }
  Semiring semiring() const noexcept { return ring_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::span<const Scalar> entries() const noexcept { return entries_; }

  const Scalar& operator[](std::size_t i) const { return entries_[i]; }
  const Scalar& at(const std::string& label) const { return entries_.at(ground_.index_of(label)); }
  void set(std::size_t i, Scalar value) {
    if (value.semiring() != ring_) throw DomainError("vector entry from another semiring");
    entries_.at(i) = value;
  }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Scalar& s) { return s.is_zero(); });
  }

  friend bool operator==(const TropVector& a, const TropVector& b) {
    return a.ground_ == b.ground_ && a.entries_ == b.entries_;
  }

 private:
  GroundSet ground_;
  std::vector<Scalar> entries_;
  Semiring ring_ = Semiring::rmax_complete;
};

namespace detail {
inline void require_compatible(const TropVector& a, const TropVector& b, const char* op) {
  if (!(a.ground() == b.ground())) throw DomainError(std::string(op) + ": vectors live on different ground sets");
  if (a.semiring() != b.semiring()) throw DomainError(std::string(op) + ": vectors from different semirings");
}

template <class F>
TropVector zip(const TropVector& a, const TropVector& b, const char* op, F&& f) {
  require_compatible(a, b, op);
  std::vector<Scalar> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(f(a[i], b[i]));
  return TropVector(a.ground(), std::move(out));
}
}  // namespace detail

inline TropVector oplus(const TropVector& a, const TropVector& b) {
  return detail::zip(a, b, "oplus", [](const Scalar& x, const Scalar& y) { return oplus(x, y); });
}

/// Pointwise infimum.
inline TropVector wedge(const TropVector& a, const TropVector& b) {
  return detail::zip(a, b, "wedge", [](const Scalar& x, const Scalar& y) { return wedge(x, y); });
}

inline TropVector scale(const Scalar& c, const TropVector& v) {
  std::vector<Scalar> out;
  out.reserve(v.size());
  for (const auto& e : v.entries()) out.push_back(odot(c, e));
  return TropVector(v.ground(), std::move(out));
}

/// Pointwise order.
inline bool leq(const TropVector& a, const TropVector& b) {
  detail::require_compatible(a, b, "leq");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!leq(a[i], b[i])) return false;
  return true;
}

inline bool approx_equal(const TropVector& a, const TropVector& b, double tolerance) {
  if (!(a.ground() == b.ground()) || a.semiring() != b.semiring()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!approx_equal(a[i], b[i], tolerance)) return false;
  return true;
}

/// Sup of a finite family; the zero vector for an empty family.
inline TropVector sup_family(std::span<const TropVector> family, const GroundSet& ground, Semiring ring) {
  auto acc = TropVector::zero(ground, ring);
  for (const auto& v : family) acc = oplus(acc, v);
  return acc;
}

/// Indicator of the top entries: top where v is top, zero elsewhere.
inline TropVector top_indicator(const TropVector& v) {
  std::vector<Scalar> out;
  out.reserve(v.size());
  for (const auto& e : v.entries()) out.push_back(e.is_top() ? e : Scalar::zero(v.semiring()));
  return TropVector(v.ground(), std::move(out));
}

inline std::string to_string(const TropVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + "]";
}

}  // namespace tropk
