#pragma once

/**
 * @file operator.hpp
 * @brief b-linear operators between finite functional semimodules.
 *
 * An operator is stored either as an integral kernel k on X x Y, acting by
 * (Af)(y) = sup_x f(x) (x) k(x, y), or tabulated by its values on the
 * generators of a b-closed span. A tabulated operator also acts on abstract
 * coordinates c -> sup_i c_i (x) A(g_i), which stays meaningful when the
 * generators are not independent inside K(X).
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tropk/kernel_matrix.hpp"
#include "tropk/random.hpp"
#include "tropk/semimodule.hpp"

namespace tropk {

struct Consistency {
  bool consistent = true;
  std::optional<std::size_t> generator;   // offending generator index
  std::optional<std::size_t> coordinate;  // output coordinate of the violation
};

namespace detail {
// inf { c (x) w : c (x) b >= a } for a, b != zero.
inline Scalar cover_cost(const Scalar& a, const Scalar& b, const Scalar& w) {
  const Semiring ring = w.semiring();
  if (b.is_invertible()) {
    if (a.is_invertible()) return odot(make_unchecked(a.value() - b.value(), ring), w);
    return odot(Scalar::top(ring), w);
  }
  // b is top: any nonzero c works.
  return w.is_top() ? w : Scalar::zero(ring);
}
}  // namespace detail

namespace detail {
// Least value of sup_k b_k (x) A(g_k)(z) over all covers g_i <= sup_k b_k (x) g_k.
inline Scalar consistency_bound(const std::vector<TropVector>& gens, std::span<const TropVector> images, std::size_t i,
                                std::size_t z) {
  const Semiring ring = gens[i].semiring();
  Scalar bound = Scalar::zero(ring);
  for (std::size_t y = 0; y < gens[i].size(); ++y) {
    if (gens[i][y].is_zero()) continue;
    Scalar best = Scalar::top(ring);
    for (std::size_t k = 0; k < gens.size(); ++k) {
      if (gens[k][y].is_zero()) continue;
      best = wedge(best, cover_cost(gens[i][y], gens[k][y], images[k][z]));
    }
    bound = oplus(bound, best);
  }
  return bound;
}
}  // namespace detail

/// Decides whether values on the generators of a b-closed span extend to a
/// well-defined b-linear map. The extension exists iff A is monotone on
/// covers: whenever g_i <= sup_k b_k (x) g_k, A(g_i) <= sup_k b_k (x) A(g_k).
/// The least right-hand side over all covers is
///   max_{y in supp g_i} min_{k : g_k(y) != 0} cover_cost(g_i(y), g_k(y), A(g_k)).
inline Consistency check_consistency(const SemimoduleSpec& domain, std::span<const TropVector> images) {
  const auto& gens = domain.generators();
  if (images.size() != gens.size()) throw DomainError("tabulation: image count does not match generator count");
  Consistency out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t z = 0; z < images[i].size(); ++z) {
      if (!leq(images[i][z], detail::consistency_bound(gens, images, i, z))) {
        out.consistent = false;
        out.generator = i;
        out.coordinate = z;
        return out;
      }
    }
  }
  return out;
}

/// Lowers tabulated values onto their consistency bounds until the
/// tabulation is consistent. Gives up after max_rounds and returns zero
/// images, which are always consistent.
inline std::vector<TropVector> repair_tabulation(const SemimoduleSpec& domain, std::vector<TropVector> images,
                                                 std::size_t max_rounds = 64) {
  const auto& gens = domain.generators();
  for (std::size_t round = 0; round < max_rounds; ++round) {
    if (check_consistency(domain, images).consistent) return images;
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t z = 0; z < images[i].size(); ++z)
        images[i].set(z, wedge(images[i][z], detail::consistency_bound(gens, images, i, z)));
  }
  if (check_consistency(domain, images).consistent) return images;
  for (auto& im : images) im = TropVector::zero(im.ground(), im.semiring());
  return images;
}

class LinearOperator {
 public:
  enum class Form { integral, tabulated };

  static LinearOperator integral(KernelMatrix kernel) { return LinearOperator(std::move(kernel)); }

  static LinearOperator identity(const GroundSet& ground, Semiring ring = Semiring::rmax_complete) {
    return integral(KernelMatrix::identity(ground, ring));
  }

  static LinearOperator tabulated(SemimoduleSpec domain, GroundSet codomain, std::vector<TropVector> images) {
    if (domain.closure() != Closure::b_closed_span)
      throw UnsupportedError("tabulated operators need a b-closed span as domain");
    for (const auto& im : images) {
      if (!(im.ground() == codomain)) throw DomainError("tabulated image lives on another ground set");
      if (im.semiring() != domain.semiring()) throw DomainError("tabulated image from another semiring");
    }
    auto c = check_consistency(domain, images);
    return LinearOperator(Tabulated{std::move(domain), std::move(codomain), std::move(images), c});
  }

  Form form() const noexcept { return std::holds_alternative<KernelMatrix>(repr_) ? Form::integral : Form::tabulated; }

  const GroundSet& domain_ground() const {
    if (auto* k = std::get_if<KernelMatrix>(&repr_)) return k->domain();
    return std::get<Tabulated>(repr_).domain.ground();
  }
  const GroundSet& codomain_ground() const {
    if (auto* k = std::get_if<KernelMatrix>(&repr_)) return k->codomain();
    return std::get<Tabulated>(repr_).codomain;
  }
  Semiring semiring() const {
    if (auto* k = std::get_if<KernelMatrix>(&repr_)) return k->semiring();
    return std::get<Tabulated>(repr_).domain.semiring();
  }

  const KernelMatrix& kernel() const {
    if (auto* k = std::get_if<KernelMatrix>(&repr_)) return *k;
    throw DomainError("operator is tabulated, not integral");
  }
  const SemimoduleSpec& tabulated_domain() const { return tab("tabulated_domain").domain; }
  const std::vector<TropVector>& images() const { return tab("images").images; }
  /// Always consistent for integral operators.
  Consistency consistency() const {
    if (auto* t = std::get_if<Tabulated>(&repr_)) return t->consistency;
    return {};
  }

  TropVector apply(const TropVector& f) const {
    if (auto* k = std::get_if<KernelMatrix>(&repr_)) return integrate(f, *k);
    const auto& t = std::get<Tabulated>(repr_);
    auto m = membership(f, t.domain);
    if (!m.member) throw DomainError("apply: vector " + to_string(f) + " is not in the operator's domain");
    if (!t.consistency.consistent)
      throw IntegrityError("apply: tabulation is inconsistent at generator " + std::to_string(*t.consistency.generator));
    return combine_images(m.coefficients);
  }

  /// Value on the abstract combination sup_i c_i (x) g_i.
  TropVector apply_coordinates(std::span<const Scalar> coeffs) const {
    const auto& t = tab("apply_coordinates");
    if (coeffs.size() != t.images.size()) throw DomainError("apply_coordinates: coefficient count mismatch");
    return combine_images(coeffs);
  }

 private:
  struct Tabulated {
    SemimoduleSpec domain;
    GroundSet codomain;
    std::vector<TropVector> images;
    Consistency consistency;
  };

  explicit LinearOperator(KernelMatrix k) : repr_(std::move(k)) {}
  explicit LinearOperator(Tabulated t) : repr_(std::move(t)) {}

  const Tabulated& tab(const char* what) const {
    if (auto* t = std::get_if<Tabulated>(&repr_)) return *t;
    throw DomainError(std::string(what) + ": operator is integral, not tabulated");
  }

  TropVector combine_images(std::span<const Scalar> coeffs) const {
    const auto& t = std::get<Tabulated>(repr_);
    auto acc = TropVector::zero(t.codomain, t.domain.semiring());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (!coeffs[i].is_zero()) acc = oplus(acc, scale(coeffs[i], t.images[i]));
    return acc;
  }

  std::variant<KernelMatrix, Tabulated> repr_;
};

/// Applies `first`, then `second`.
inline LinearOperator compose(const LinearOperator& first, const LinearOperator& second) {
  if (!(first.codomain_ground() == second.domain_ground()))
    throw DomainError("compose: codomain of the first operator differs from domain of the second");
  if (first.form() == LinearOperator::Form::tabulated) {
    std::vector<TropVector> images;
    for (const auto& im : first.images()) images.push_back(second.apply(im));
    return LinearOperator::tabulated(first.tabulated_domain(), second.codomain_ground(), std::move(images));
  }
  if (second.form() == LinearOperator::Form::integral)
    return LinearOperator::integral(compose(first.kernel(), second.kernel()));
  std::vector<TropVector> rows;
  for (std::size_t x = 0; x < first.kernel().rows(); ++x) rows.push_back(second.apply(first.kernel().row(x)));
  return LinearOperator::integral(KernelMatrix::from_rows(first.domain_ground(), rows));
}

/// Pointwise sup of a nonempty family of integral operators.
inline LinearOperator sup_operators(std::span<const LinearOperator> family) {
  if (family.empty()) throw DomainError("sup_operators: empty family has no shape");
  KernelMatrix acc = family.front().kernel();
  for (std::size_t i = 1; i < family.size(); ++i) {
    const auto& k = family[i].kernel();
    if (!(k.domain() == acc.domain()) || !(k.codomain() == acc.codomain()))
      throw DomainError("sup_operators: operators with different domains or codomains");
    acc = oplus(acc, k);
  }
  return LinearOperator::integral(std::move(acc));
}

/// The ground set of K, seen as a one-point functional space.
inline const GroundSet& value_ground() {
  static const GroundSet g(std::vector<std::string>{"value"});
  return g;
}

/// A b-linear functional, stored as an operator into the one-point space.
class Functional {
 public:
  explicit Functional(LinearOperator op) : op_(std::move(op)) {
    if (op_.codomain_ground().size() != 1) throw DomainError("functional must take values in a one-point space");
  }

  /// phi(v) = sup_x v(x) (x) k(x).
  static Functional integral(const TropVector& kernel) {
    std::vector<TropVector> rows;
    for (std::size_t x = 0; x < kernel.size(); ++x)
      rows.push_back(TropVector(value_ground(), {kernel[x]}));
    return Functional(LinearOperator::integral(KernelMatrix::from_rows(kernel.ground(), rows)));
  }

  static Functional tabulated(SemimoduleSpec domain, const std::vector<Scalar>& values) {
    std::vector<TropVector> images;
    for (const auto& v : values) images.push_back(TropVector(value_ground(), {v}));
    return Functional(LinearOperator::tabulated(std::move(domain), value_ground(), std::move(images)));
  }

  static Functional delta(const GroundSet& ground, std::size_t x, Semiring ring = Semiring::rmax_complete) {
    return integral(TropVector::unit(ground, x, ring));
  }

  Scalar operator()(const TropVector& v) const { return op_.apply(v)[0]; }
  Scalar on_coordinates(std::span<const Scalar> c) const { return op_.apply_coordinates(c)[0]; }

  const LinearOperator& as_operator() const noexcept { return op_; }
  const GroundSet& domain_ground() const { return op_.domain_ground(); }
  Semiring semiring() const { return op_.semiring(); }
  bool is_integral_form() const { return op_.form() == LinearOperator::Form::integral; }

  /// Kernel vector of an integral-form functional.
  TropVector kernel_vector() const { return op_.kernel().column(0); }

 private:
  LinearOperator op_;
};

/// phi after B: v -> phi(B v).
inline Functional compose(const LinearOperator& b, const Functional& phi) {
  return Functional(compose(b, phi.as_operator()));
}

struct KernelOptions {
  std::size_t probes = 64;
  std::uint64_t seed = 0;
  /// When set, rows of the kernel must lie in this semimodule (operators V -> W
  /// with W a functional semimodule); rows are projected onto it if it is a span.
  std::optional<SemimoduleSpec> codomain;
  double tolerance = 0.0;
};

struct KernelResult {
  KernelMatrix kernel;
  bool verified = false;
  std::string failure;  // empty when verified
  std::optional<std::size_t> witness_generator;
  std::optional<TropVector> witness;
};

namespace detail {
inline bool same_generators(const SemimoduleSpec& a, const SemimoduleSpec& b) {
  return a.ground() == b.ground() && a.generators() == b.generators();
}
}  // namespace detail

/// Maximal integral kernel of A on V, followed by verification.
///
/// Wedge-closed V: row x is A(d_x) for x in X_V, where d_x is the least
/// element of V with value one at x; rows outside X_V are zero.
/// b-closed spans: k(x, y) = inf_i residual(g_i(x), A(g_i)(y)), the largest
/// kernel that does not overshoot A on any generator. Rows at points where
/// every generator vanishes are zero.
///
/// The candidate is then checked against A on the generators and on
/// `probes` random elements; a failing generator or probe is returned.
inline KernelResult max_kernel(const LinearOperator& a, const SemimoduleSpec& v, const KernelOptions& opt = {}) {
  if (!(a.domain_ground() == v.ground())) throw DomainError("max_kernel: operator domain differs from semimodule ground");
  const Semiring ring = v.semiring();
  const auto& gens = v.generators();
  const bool coordinates = a.form() == LinearOperator::Form::tabulated && detail::same_generators(a.tabulated_domain(), v);

  KernelResult out{KernelMatrix::zero(v.ground(), a.codomain_ground(), ring), false, {}, std::nullopt, std::nullopt};
  std::vector<TropVector> images;
  try {
    if (coordinates) {
      images = a.images();
    } else {
      for (const auto& g : gens) images.push_back(a.apply(g));
    }
    if (v.closure() == Closure::wedge_closed) {
      for (auto x : v.support_points()) {
        auto row = a.apply(least_unit_element(v, x));
        for (std::size_t y = 0; y < row.size(); ++y) out.kernel.set(x, y, row[y]);
      }
    } else {
      for (std::size_t x = 0; x < v.ground().size(); ++x) {
        bool all_zero = true;
        for (const auto& g : gens) all_zero = all_zero && g[x].is_zero();
        if (all_zero) continue;
        for (std::size_t y = 0; y < out.kernel.cols(); ++y) {
          Scalar k = Scalar::top(ring);
          for (std::size_t i = 0; i < gens.size(); ++i) k = wedge(k, residual(gens[i][x], images[i][y]));
          out.kernel.set(x, y, k);
        }
      }
    }
  } catch (const std::exception& e) {
    out.failure = std::string("kernel construction failed: ") + e.what();
    return out;
  }

  if (opt.codomain && opt.codomain->closure() == Closure::b_closed_span) {
    for (std::size_t x = 0; x < out.kernel.rows(); ++x) {
      auto row = out.kernel.row(x);
      if (row.is_zero()) continue;
      auto p = span_projection(row, *opt.codomain);
      for (std::size_t y = 0; y < p.size(); ++y) out.kernel.set(x, y, p[y]);
    }
  }

  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!approx_equal(integrate(gens[i], out.kernel), images[i], opt.tolerance)) {
      out.failure = "kernel does not reproduce the operator on generator " + std::to_string(i);
      out.witness_generator = i;
      out.witness = gens[i];
      return out;
    }
  }

  Rng rng(opt.seed);
  const ScalarDistribution coeff{-6, 6, 0.3, 0.0};
  for (std::size_t p = 0; p < opt.probes; ++p) {
    TropVector f = TropVector::zero(v.ground(), ring);
    TropVector expected = TropVector::zero(a.codomain_ground(), ring);
    try {
      if (coordinates) {
        std::vector<Scalar> c;
        for (std::size_t i = 0; i < gens.size(); ++i) c.push_back(random_scalar(rng, coeff, ring));
        f = combination(v, c);
        expected = a.apply_coordinates(c);
      } else {
        f = random_element(rng, v);
        expected = a.apply(f);
      }
    } catch (const std::exception& e) {
      out.failure = std::string("probe evaluation failed: ") + e.what();
      out.witness = f;
      return out;
    }
    if (!approx_equal(integrate(f, out.kernel), expected, opt.tolerance)) {
      out.failure = "kernel does not reproduce the operator on a probe";
      out.witness = f;
      return out;
    }
  }

  if (opt.codomain) {
    for (std::size_t x = 0; x < out.kernel.rows(); ++x) {
      auto row = out.kernel.row(x);
      if (!contains(*opt.codomain, row, opt.tolerance)) {
        out.failure = "kernel row '" + v.ground().label(x) + "' lies outside the codomain semimodule";
        out.witness = row;
        return out;
      }
    }
  }
  out.verified = true;
  return out;
}

inline bool is_integral(const LinearOperator& a, const SemimoduleSpec& v, const KernelOptions& opt = {}) {
  return max_kernel(a, v, opt).verified;
}

inline bool is_integral(const Functional& phi, const SemimoduleSpec& v, const KernelOptions& opt = {}) {
  return max_kernel(phi.as_operator(), v, opt).verified;
}

/// Maximal kernel of id : V -> V (rows constrained to V).
inline KernelResult identity_kernel(const SemimoduleSpec& v, KernelOptions opt = {}) {
  opt.codomain = v;
  return max_kernel(LinearOperator::identity(v.ground(), v.semiring()), v, opt);
}

/// apply(A, sup S) == sup apply(A, S) for the given family.
inline bool preserves_sup(const LinearOperator& a, std::span<const TropVector> family) {
  if (family.empty()) return true;
  auto lhs = a.apply(sup_family(family, family.front().ground(), family.front().semiring()));
  auto rhs = TropVector::zero(a.codomain_ground(), a.semiring());
  for (const auto& f : family) rhs = oplus(rhs, a.apply(f));
  return lhs == rhs;
}

}  // namespace tropk
