#pragma once

/**
 * @file kernel_matrix.hpp
 * @brief Functions X x Y -> K, used both as integral kernels and as
 * semimetrics. Rows are indexed by the domain ground set X, columns by the
 * codomain ground set Y.
 */

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "tropk/vector.hpp"

namespace tropk {

class KernelMatrix {
 public:
  KernelMatrix(GroundSet domain, GroundSet codomain, std::vector<Scalar> entries)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), entries_(std::move(entries)) {
    if (entries_.size() != domain_.size() * codomain_.size())
      throw DomainError("kernel matrix: entry count does not match " + std::to_string(domain_.size()) + "x" +
                        std::to_string(codomain_.size()));
    ring_ = entries_.front().semiring();
    for (const auto& e : entries_)
      if (e.semiring() != ring_) throw DomainError("kernel matrix entries mix semirings");
  }

  static KernelMatrix filled(const GroundSet& domain, const GroundSet& codomain, Scalar value) {
    return KernelMatrix(domain, codomain, std::vector<Scalar>(domain.size() * codomain.size(), value));
  }
  static KernelMatrix zero(const GroundSet& domain, const GroundSet& codomain,
                           Semiring ring = Semiring::rmax_complete) {
    return filled(domain, codomain, Scalar::zero(ring));
  }
  static KernelMatrix identity(const GroundSet& ground, Semiring ring = Semiring::rmax_complete) {
    auto m = zero(ground, ground, ring);
    for (std::size_t i = 0; i < ground.size(); ++i) m.set(i, i, Scalar::one(ring));
    return m;
  }
  /// Matrix whose row x is rows[x].
  static KernelMatrix from_rows(const GroundSet& domain, std::span<const TropVector> rows) {
    if (rows.size() != domain.size()) throw DomainError("kernel matrix: row count does not match domain");
    const GroundSet& codomain = rows.front().ground();
    std::vector<Scalar> e;
    e.reserve(domain.size() * codomain.size());
    for (const auto& r : rows) {
      if (!(r.ground() == codomain)) throw DomainError("kernel matrix: rows on different ground sets");
      e.insert(e.end(), r.entries().begin(), r.entries().end());
    }
    return KernelMatrix(domain, codomain, std::move(e));
  }
  static KernelMatrix from_values(const GroundSet& domain, const GroundSet& codomain,
                                  std::initializer_list<std::initializer_list<double>> rows,
                                  Semiring ring = Semiring::rmax_complete) {
    std::vector<Scalar> e;
    for (const auto& r : rows)
      for (double v : r) e.emplace_back(v, ring);
    return KernelMatrix(domain, codomain, std::move(e));
  }

  const GroundSet& domain() const noexcept { return domain_; }
  const GroundSet& codomain() const noexcept { return codomain_; }
  Semiring semiring() const noexcept { return ring_; }
  std::size_t rows() const noexcept { return domain_.size(); }
  std::size_t cols() const noexcept { return codomain_.size(); }
  bool is_square() const noexcept { return domain_ == codomain_; }

  const Scalar& operator()(std::size_t x, std::size_t y) const { return entries_[x * cols() + y]; }
  void set(std::size_t x, std::size_t y, Scalar v) {
    if (v.semiring() != ring_) throw DomainError("kernel matrix entry from another semiring");
    entries_.at(x * cols() + y) = v;
  }
  std::span<const Scalar> entries() const noexcept { return entries_; }

  TropVector row(std::size_t x) const {
    return TropVector(codomain_, std::vector<Scalar>(entries_.begin() + static_cast<std::ptrdiff_t>(x * cols()),
                                                     entries_.begin() + static_cast<std::ptrdiff_t>((x + 1) * cols())));
  }
  TropVector column(std::size_t y) const {
    std::vector<Scalar> c;
    c.reserve(rows());
    for (std::size_t x = 0; x < rows(); ++x) c.push_back((*this)(x, y));
    return TropVector(domain_, std::move(c));
  }

  KernelMatrix transpose() const {
    auto t = zero(codomain_, domain_, ring_);
    for (std::size_t x = 0; x < rows(); ++x)
      for (std::size_t y = 0; y < cols(); ++y) t.set(y, x, (*this)(x, y));
    return t;
  }

  friend bool operator==(const KernelMatrix& a, const KernelMatrix& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.entries_ == b.entries_;
  }

 private:
  GroundSet domain_;
  GroundSet codomain_;
  std::vector<Scalar> entries_;
  Semiring ring_ = Semiring::rmax_complete;
};

/// Integral transform of f: (f k)(y) = sup_x f(x) (x) k(x, y).
inline TropVector integrate(const TropVector& f, const KernelMatrix& k) {
  if (!(f.ground() == k.domain())) throw DomainError("integrate: vector ground differs from kernel domain");
  if (f.semiring() != k.semiring()) throw DomainError("integrate: mixed semirings");
  std::vector<Scalar> out(k.cols(), Scalar::zero(k.semiring()));
  for (std::size_t x = 0; x < k.rows(); ++x) {
    if (f[x].is_zero()) continue;
    for (std::size_t y = 0; y < k.cols(); ++y) out[y] = oplus(out[y], odot(f[x], k(x, y)));
  }
  return TropVector(k.codomain(), std::move(out));
}

/// Tropical matrix product: first a, then b. (a b)(x, z) = sup_y a(x, y) (x) b(y, z).
inline KernelMatrix compose(const KernelMatrix& a, const KernelMatrix& b) {
  if (!(a.codomain() == b.domain())) throw DomainError("compose: codomain of the first kernel differs from domain of the second");
  if (a.semiring() != b.semiring()) throw DomainError("compose: mixed semirings");
  auto out = KernelMatrix::zero(a.domain(), b.codomain(), a.semiring());
  for (std::size_t x = 0; x < a.rows(); ++x) {
    for (std::size_t y = 0; y < a.cols(); ++y) {
      const Scalar& axy = a(x, y);
      if (axy.is_zero()) continue;
      for (std::size_t z = 0; z < b.cols(); ++z) out.set(x, z, oplus(out(x, z), odot(axy, b(y, z))));
    }
  }
  return out;
}

/// Entrywise sup.
inline KernelMatrix oplus(const KernelMatrix& a, const KernelMatrix& b) {
  if (!(a.domain() == b.domain()) || !(a.codomain() == b.codomain()))
    throw DomainError("oplus: kernels of different shapes");
  auto out = a;
  for (std::size_t x = 0; x < a.rows(); ++x)
    for (std::size_t y = 0; y < a.cols(); ++y) out.set(x, y, oplus(a(x, y), b(x, y)));
  return out;
}

/// Entrywise order.
inline bool leq(const KernelMatrix& a, const KernelMatrix& b) {
  if (!(a.domain() == b.domain()) || !(a.codomain() == b.codomain())) throw DomainError("leq: kernels of different shapes");
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    if (!leq(a.entries()[i], b.entries()[i])) return false;
  return true;
}

inline bool approx_equal(const KernelMatrix& a, const KernelMatrix& b, double tolerance) {
  if (!(a.domain() == b.domain()) || !(a.codomain() == b.codomain())) return false;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    if (!approx_equal(a.entries()[i], b.entries()[i], tolerance)) return false;
  return true;
}

}  // namespace tropk
