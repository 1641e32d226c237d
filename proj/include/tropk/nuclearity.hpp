#pragma once

/**
 * @file nuclearity.hpp
 * @brief One-dimensional operators, nuclear decompositions, delta-functionals
 * and the embedding i_Delta into functions on a family of functionals.
 */

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropk/operator.hpp"
#include "tropk/random.hpp"
#include "tropk/semimodule.hpp"

namespace tropk {

/// v -> phi(v) (x) w.
struct OneDimOperator {
  Functional functional;
  TropVector target;

  TropVector apply(const TropVector& v) const { return scale(functional(v), target); }
};

inline TropVector one_dim_apply(const OneDimOperator& t, const TropVector& v) { return t.apply(v); }

/// A finite sup of one-dimensional operators on a semimodule.
struct NuclearDecomposition {
  SemimoduleSpec domain;
  GroundSet codomain;
  std::vector<OneDimOperator> terms;

  TropVector apply(const TropVector& v) const {
    auto acc = TropVector::zero(codomain, domain.semiring());
    for (const auto& t : terms) acc = oplus(acc, t.apply(v));
    return acc;
  }
};

struct DecompositionCheck {
  bool verified = true;
  std::string failure;
  std::optional<TropVector> witness;
};

/// Compares the decomposition with A on the domain generators and on random
/// elements of the domain.
inline DecompositionCheck verify_decomposition(const NuclearDecomposition& t, const LinearOperator& a,
                                               std::size_t probes = 64, std::uint64_t seed = 0) {
  DecompositionCheck out;
  std::vector<TropVector> sample = t.domain.generators();
  Rng rng(seed);
  for (std::size_t p = 0; p < probes; ++p) sample.push_back(random_element(rng, t.domain));
  for (const auto& v : sample) {
    try {
      if (!(t.apply(v) == a.apply(v))) {
        out.verified = false;
        out.failure = "decomposition differs from the operator";
        out.witness = v;
        return out;
      }
    } catch (const std::exception& e) {
      out.verified = false;
      out.failure = std::string("evaluation failed: ") + e.what();
      out.witness = v;
      return out;
    }
  }
  return out;
}

/// B first, then the decomposition: each term phi (x) w becomes (phi o B) (x) w.
/// `domain` is the semimodule B is considered on.
inline NuclearDecomposition compose_nuclear(const LinearOperator& b, const SemimoduleSpec& domain,
                                            const NuclearDecomposition& t) {
  if (!(b.codomain_ground() == t.domain.ground()) || !(b.domain_ground() == domain.ground()))
    throw DomainError("compose_nuclear: shape mismatch");
  NuclearDecomposition out{domain, t.codomain, {}};
  for (const auto& term : t.terms) out.terms.push_back({compose(b, term.functional), term.target});
  return out;
}

/// The decomposition first, then B: each term phi (x) w becomes phi (x) B(w).
inline NuclearDecomposition compose_nuclear(const NuclearDecomposition& t, const LinearOperator& b) {
  if (!(t.codomain == b.domain_ground())) throw DomainError("compose_nuclear: shape mismatch");
  NuclearDecomposition out{t.domain, b.codomain_ground(), {}};
  for (const auto& term : t.terms) out.terms.push_back({term.functional, b.apply(term.target)});
  return out;
}

struct IdentityDecomposition {
  NuclearDecomposition decomposition;
  bool verified = false;
  /// Whether the terms delta_x (x) d_x (least elements with value one at x) work.
  bool canonical_verified = false;
  /// "least-unit-elements" or "kernel-rows".
  std::string construction;
  std::string failure;
  std::optional<std::size_t> point;
  std::optional<TropVector> witness;
};

/// Decomposes id : V -> V into terms delta_x (x) t_x with t_x in V.
///
/// The terms delta_x (x) d_x are tried first. When some d_x is not in V (a
/// span that is not closed under infima), the rows of the maximal kernel of
/// the identity with rows in V are used instead.
inline IdentityDecomposition nuclear_decompose_identity(const SemimoduleSpec& v, std::size_t probes = 64,
                                                        std::uint64_t seed = 0) {
  const auto id = LinearOperator::identity(v.ground(), v.semiring());
  IdentityDecomposition out{NuclearDecomposition{v, v.ground(), {}}, false, false, {}, {}, std::nullopt, std::nullopt};

  bool all_in_v = true;
  for (auto x : v.support_points()) {
    auto d = least_unit_element(v, x);
    if (!contains(v, d)) {
      all_in_v = false;
      out.point = x;
      out.witness = d;
      out.failure = "least element with value one at '" + v.ground().label(x) + "' is not in V";
      break;
    }
    out.decomposition.terms.push_back({Functional::delta(v.ground(), x, v.semiring()), std::move(d)});
  }
  if (all_in_v) {
    auto c = verify_decomposition(out.decomposition, id, probes, seed);
    out.canonical_verified = out.verified = c.verified;
    out.construction = "least-unit-elements";
    if (!c.verified) {
      out.failure = c.failure;
      out.witness = c.witness;
    }
    if (c.verified) return out;
  }

  KernelOptions opt;
  opt.probes = probes;
  opt.seed = seed;
  auto k = identity_kernel(v, opt);
  out.construction = "kernel-rows";
  out.decomposition.terms.clear();
  if (!k.verified) {
    out.verified = false;
    out.failure = k.failure;
    out.witness = k.witness;
    return out;
  }
  for (std::size_t x = 0; x < v.ground().size(); ++x) {
    auto row = k.kernel.row(x);
    if (row.is_zero()) continue;
    out.decomposition.terms.push_back({Functional::delta(v.ground(), x, v.semiring()), std::move(row)});
  }
  auto c = verify_decomposition(out.decomposition, id, probes, seed);
  out.verified = c.verified;
  if (c.verified) {
    out.failure.clear();
    out.point.reset();
    out.witness.reset();
  } else {
    out.failure = c.failure;
    out.witness = c.witness;
  }
  return out;
}

struct DeltaPair {
  Functional functional;
  TropVector witness;
};

struct DeltaFamily {
  std::vector<std::string> labels;
  std::vector<DeltaPair> members;
};

namespace detail {
inline Scalar functional_on_generator(const Functional& phi, const SemimoduleSpec& v, std::size_t i) {
  const auto& op = phi.as_operator();
  if (op.form() == LinearOperator::Form::tabulated && same_generators(op.tabulated_domain(), v))
    return op.images()[i][0];
  return phi(v.generators()[i]);
}
}  // namespace detail

/// Looks for a nonzero v in V with phi(w) (x) v <= w for every w in V.
/// The largest candidate is inf over generators g with phi(g) != 0 of
/// residual(phi(g), g), projected into V; it is returned when nonzero and
/// the inequality holds on generators and random probes.
inline std::optional<TropVector> delta_functional_check(const Functional& phi, const SemimoduleSpec& v,
                                                        std::size_t probes = 64, std::uint64_t seed = 0) {
  const Semiring ring = v.semiring();
  auto cand = TropVector::filled(v.ground(), Scalar::top(ring));
  bool constrained = false;
  try {
    for (std::size_t i = 0; i < v.generators().size(); ++i) {
      const Scalar a = detail::functional_on_generator(phi, v, i);
      if (a.is_zero()) continue;
      constrained = true;
      const auto& g = v.generators()[i];
      std::vector<Scalar> r;
      for (std::size_t x = 0; x < g.size(); ++x) r.push_back(residual(a, g[x]));
      cand = wedge(cand, TropVector(v.ground(), std::move(r)));
    }
    if (!constrained) return std::nullopt;
    auto w = span_projection(cand, v);
    if (w.is_zero()) return std::nullopt;
    std::vector<TropVector> sample = v.generators();
    Rng rng(seed);
    for (std::size_t p = 0; p < probes; ++p) sample.push_back(random_element(rng, v));
    for (const auto& s : sample)
      if (!leq(scale(phi(s), w), s)) return std::nullopt;
    return w;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

/// Pairs (delta_x, v_x) for the points x of X_V that admit a nonzero witness.
inline DeltaFamily canonical_delta_family(const SemimoduleSpec& v, std::size_t probes = 64, std::uint64_t seed = 0) {
  DeltaFamily fam;
  for (auto x : v.support_points()) {
    auto phi = Functional::delta(v.ground(), x, v.semiring());
    if (auto w = delta_functional_check(phi, v, probes, seed)) {
      fam.labels.push_back(v.ground().label(x));
      fam.members.push_back({std::move(phi), std::move(*w)});
    }
  }
  return fam;
}

/// The pairs of a decomposition of the identity form a delta family.
inline DeltaFamily delta_family_from(const NuclearDecomposition& t) {
  DeltaFamily fam;
  for (std::size_t j = 0; j < t.terms.size(); ++j) {
    fam.labels.push_back("phi" + std::to_string(j));
    fam.members.push_back({t.terms[j].functional, t.terms[j].target});
  }
  return fam;
}

struct DeltaEmbedding {
  GroundSet ground;
  SemimoduleSpec image;
};

/// (i_Delta(v))(phi_j) = phi_j(v).
inline TropVector i_delta_apply(const DeltaFamily& fam, const GroundSet& ground, const TropVector& v) {
  std::vector<Scalar> e;
  for (const auto& m : fam.members) e.push_back(m.functional(v));
  return TropVector(ground, std::move(e));
}

inline DeltaEmbedding i_delta_embed(const SemimoduleSpec& v, const DeltaFamily& fam) {
  if (fam.members.empty()) throw DomainError("i_delta_embed: empty family");
  GroundSet ground(fam.labels);
  std::vector<TropVector> gens;
  for (const auto& g : v.generators()) gens.push_back(i_delta_apply(fam, ground, g));
  return {ground, SemimoduleSpec(ground, v.semiring(), std::move(gens), v.closure())};
}

}  // namespace tropk
