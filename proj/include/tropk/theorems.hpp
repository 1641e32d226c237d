#pragma once

/**
 * @file theorems.hpp
 * @brief Executable checks of the kernel theorems on concrete instances.
 *
 * Each checker evaluates both sides of an equivalence (or the hypothesis and
 * conclusion of an implication) with the decision procedures of the library
 * and reports whether they agree on the given instance.
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropk/nuclearity.hpp"
#include "tropk/operator.hpp"
#include "tropk/semimetric.hpp"

namespace tropk {

enum class Verdict { holds, violated, precondition_failed };

inline std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::precondition_failed: return "precondition-failed";
  }
  return "?";
}

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
  std::optional<TropVector> vector;
  std::optional<KernelMatrix> matrix;
};

struct TheoremReport {
  std::string theorem;
  Verdict verdict = Verdict::holds;
  std::vector<Check> checks;

  bool passed() const noexcept { return verdict == Verdict::holds; }
  const Check* find(std::string_view name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  bool value(std::string_view name) const {
    auto* c = find(name);
    return c && c->passed;
  }
};

struct TheoremOptions {
  std::size_t probes = 64;
  std::uint64_t seed = 0;
  /// Random functionals / operators in the probe families.
  std::size_t family_size = 6;
};

namespace detail {
inline Check check_of(std::string name, bool passed, std::string detail = {}) {
  return Check{std::move(name), passed, std::move(detail), std::nullopt, std::nullopt};
}

inline KernelOptions kernel_options(const TheoremOptions& o) {
  KernelOptions k;
  k.probes = o.probes;
  k.seed = o.seed;
  return k;
}
}  // namespace detail

/// delta_x for every point, plus random consistent tabulated functionals
/// when V is a span.
inline std::vector<Functional> functional_probe_family(const SemimoduleSpec& v, const TheoremOptions& opt = {}) {
  std::vector<Functional> fam;
  for (std::size_t x = 0; x < v.ground().size(); ++x) fam.push_back(Functional::delta(v.ground(), x, v.semiring()));
  if (v.closure() != Closure::b_closed_span || v.generators().empty()) return fam;
  Rng rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
  for (std::size_t j = 0; j < opt.family_size; ++j) {
    std::vector<TropVector> images;
    for (std::size_t i = 0; i < v.generators().size(); ++i)
      images.push_back(TropVector(value_ground(), {random_scalar(rng, {-9, 9, 0.2, 0.0}, v.semiring())}));
    images = repair_tabulation(v, std::move(images));
    fam.emplace_back(LinearOperator::tabulated(v, value_ground(), std::move(images)));
  }
  return fam;
}

/// Check 1: on an admissible wedge-closed V every b-linear A is integral,
/// with kernel rows A(d_x).
inline TheoremReport check_theorem1(const SemimoduleSpec& v, const LinearOperator& a, const TheoremOptions& opt = {}) {
  TheoremReport r{"1", Verdict::holds, {}};
  auto adm = admissible(v);
  r.checks.push_back(detail::check_of("admissible", adm.admissible, adm.reason));
  r.checks.push_back(detail::check_of("wedge-closed", v.closure() == Closure::wedge_closed));
  if (!adm.admissible || v.closure() != Closure::wedge_closed) {
    r.verdict = Verdict::precondition_failed;
    if (adm.generator) r.checks[0].vector = v.span_generators()[*adm.generator];
    return r;
  }
  auto k = max_kernel(a, v, detail::kernel_options(opt));
  Check c = detail::check_of("integral", k.verified, k.failure);
  c.matrix = k.kernel;
  if (!k.verified) c.vector = k.witness;
  r.checks.push_back(std::move(c));
  bool off_support_zero = true;
  for (std::size_t x = 0; x < v.ground().size(); ++x)
    if (!v.in_support(x) && !k.kernel.row(x).is_zero()) off_support_zero = false;
  r.checks.push_back(detail::check_of("rows-vanish-off-support", off_support_zero));
  r.verdict = k.verified && off_support_zero ? Verdict::holds : Verdict::violated;
  return r;
}

/// Check 2: when every b-linear functional on V is integral, an operator
/// is integral iff it is b-nuclear.
inline TheoremReport check_theorem2(const SemimoduleSpec& v, const LinearOperator& a, const TheoremOptions& opt = {}) {
  TheoremReport r{"2", Verdict::holds, {}};
  const auto kopt = detail::kernel_options(opt);

  auto fam = functional_probe_family(v, opt);
  if (a.codomain_ground().size() == 1 && a.codomain_ground() == value_ground()) fam.emplace_back(a);
  bool pre = true;
  Check pc = detail::check_of("functionals-integral", true);
  for (std::size_t j = 0; j < fam.size() && pre; ++j) {
    auto k = max_kernel(fam[j].as_operator(), v, kopt);
    if (!k.verified) {
      pre = false;
      pc.passed = false;
      pc.detail = "probe functional " + std::to_string(j) + ": " + k.failure;
      pc.vector = k.witness;
    }
  }
  r.checks.push_back(std::move(pc));

  auto k = max_kernel(a, v, kopt);
  Check ic = detail::check_of("integral", k.verified, k.failure);
  if (k.verified) ic.matrix = k.kernel;
  else ic.vector = k.witness;
  r.checks.push_back(std::move(ic));

  // Route (a): A = sup_x delta_x (x) k(x).
  bool nuclear = false;
  std::string how;
  if (k.verified) {
    NuclearDecomposition t{v, a.codomain_ground(), {}};
    for (std::size_t x = 0; x < k.kernel.rows(); ++x)
      if (!k.kernel.row(x).is_zero()) t.terms.push_back({Functional::delta(v.ground(), x, v.semiring()), k.kernel.row(x)});
    if (verify_decomposition(t, a, opt.probes, opt.seed).verified) {
      nuclear = true;
      how = "kernel rows";
    }
  }
  // Route (b): A = A o id with id decomposed.
  std::string why_not;
  if (!nuclear) {
    auto id = nuclear_decompose_identity(v, opt.probes, opt.seed);
    if (!id.verified) {
      why_not = "identity: " + id.failure;
    } else {
      try {
        auto t = compose_nuclear(id.decomposition, a);
        auto c = verify_decomposition(t, a, opt.probes, opt.seed);
        nuclear = c.verified;
        if (nuclear) how = "decomposed identity";
        else why_not = c.failure;
      } catch (const std::exception& e) {
        why_not = e.what();
      }
    }
  }
  r.checks.push_back(detail::check_of("nuclear", nuclear, nuclear ? how : why_not));
  r.checks.push_back(detail::check_of("agree", k.verified == nuclear));
  if (!pre) r.verdict = Verdict::precondition_failed;
  else r.verdict = k.verified == nuclear ? Verdict::holds : Verdict::violated;
  return r;
}

/// Check 3: the kernel theorem holds on V iff every b-linear functional on
/// V is integral and V is b-nuclear.
inline TheoremReport check_theorem3(const SemimoduleSpec& v, const TheoremOptions& opt = {}) {
  TheoremReport r{"3", Verdict::holds, {}};
  auto kopt = detail::kernel_options(opt);
  auto id = identity_kernel(v, kopt);
  Check kc = detail::check_of("kernel-theorem", id.verified, id.failure);
  if (id.verified) kc.matrix = id.kernel;
  r.checks.push_back(std::move(kc));

  bool functionals = true;
  Check fc = detail::check_of("functionals-integral", true);
  auto fam = functional_probe_family(v, opt);
  for (std::size_t j = 0; j < fam.size() && functionals; ++j) {
    auto k = max_kernel(fam[j].as_operator(), v, kopt);
    if (!k.verified) {
      functionals = fc.passed = false;
      fc.detail = "probe functional " + std::to_string(j) + ": " + k.failure;
      fc.vector = k.witness;
    }
  }
  r.checks.push_back(std::move(fc));

  auto dec = nuclear_decompose_identity(v, opt.probes, opt.seed);
  Check nc = detail::check_of("nuclear", dec.verified, dec.verified ? dec.construction : dec.failure);
  if (!dec.verified) nc.vector = dec.witness;
  r.checks.push_back(std::move(nc));
  const bool agree = id.verified == (functionals && dec.verified);
  r.checks.push_back(detail::check_of("agree", agree));
  r.verdict = agree ? Verdict::holds : Verdict::violated;
  return r;
}

/// Check 3a: the kernel theorem holds on V iff id : V -> V is integral.
/// The left side is sampled over the identity, random integral operators and
/// random consistent tabulated operators out of V.
inline TheoremReport check_theorem3a(const SemimoduleSpec& v, const TheoremOptions& opt = {}) {
  TheoremReport r{"3a", Verdict::holds, {}};
  auto kopt = detail::kernel_options(opt);
  auto id = identity_kernel(v, kopt);
  Check ic = detail::check_of("identity-integral", id.verified, id.failure);
  if (id.verified) ic.matrix = id.kernel;
  r.checks.push_back(std::move(ic));

  Rng rng(opt.seed ^ 0x2545f4914f6cdd1dULL);
  const auto target = GroundSet::indexed(3, "w");
  std::vector<LinearOperator> ops;
  for (std::size_t j = 0; j < opt.family_size; ++j)
    ops.push_back(LinearOperator::integral(random_matrix(rng, v.ground(), target, {-9, 9, 0.3, 0.0}, v.semiring())));
  if (v.closure() == Closure::b_closed_span && !v.generators().empty()) {
    for (std::size_t j = 0; j < opt.family_size; ++j) {
      std::vector<TropVector> images;
      for (std::size_t i = 0; i < v.generators().size(); ++i)
        images.push_back(random_vector(rng, target, {-9, 9, 0.2, 0.0}, v.semiring()));
      ops.push_back(LinearOperator::tabulated(v, target, repair_tabulation(v, std::move(images))));
    }
  }
  bool all = id.verified;
  Check oc = detail::check_of("all-operators-integral", true);
  for (std::size_t j = 0; j < ops.size() && all; ++j) {
    auto k = max_kernel(ops[j], v, kopt);
    if (!k.verified) {
      all = false;
      oc.detail = "operator " + std::to_string(j) + ": " + k.failure;
      oc.vector = k.witness;
    }
  }
  oc.passed = all;
  if (!id.verified) oc.detail = "the identity is not integral";
  r.checks.push_back(std::move(oc));
  const bool agree = all == id.verified;
  r.checks.push_back(detail::check_of("agree", agree));
  r.verdict = agree ? Verdict::holds : Verdict::violated;
  return r;
}

/// Check 4: for nondegenerate V, id is integral iff V = lip(X, d) for a
/// semimetric d; d is then the maximal kernel of the identity. When `source`
/// is given, V is expected to be its lip span and the kernel must equal it.
inline TheoremReport check_theorem4(const SemimoduleSpec& v, const std::optional<Semimetric>& source = std::nullopt,
                                    const TheoremOptions& opt = {}) {
  TheoremReport r{"4", Verdict::holds, {}};
  auto nd = nondegenerate(v);
  r.checks.push_back(detail::check_of("nondegenerate", nd.nondegenerate));
  if (!nd.nondegenerate) {
    r.verdict = Verdict::precondition_failed;
    return r;
  }
  auto id = identity_kernel(v, detail::kernel_options(opt));
  Check ic = detail::check_of("identity-integral", id.verified, id.failure);
  ic.matrix = id.kernel;
  r.checks.push_back(std::move(ic));

  // The candidate lip structure: the projected kernel if verified, else the
  // raw residuated kernel.
  const KernelMatrix d = id.verified ? id.kernel : max_kernel(LinearOperator::identity(v.ground(), v.semiring()), v,
                                                              detail::kernel_options(opt)).kernel;
  auto sv = validate_semimetric(d);
  Check sc = detail::check_of("kernel-is-semimetric", sv.ok);
  if (!sv.ok) sc.detail = "d = d d fails at (" + v.ground().label(sv.witness->first) + ", " + v.ground().label(sv.witness->second) + ")";
  r.checks.push_back(std::move(sc));

  bool is_lip = sv.ok;
  if (is_lip) {
    Semimetric sm(d);
    auto lip = lip0_generators(sm);
    for (const auto& g : v.generators()) is_lip = is_lip && contains(lip, g);
    for (std::size_t x = 0; x < sm.size(); ++x) is_lip = is_lip && contains(v, sm.row(x));
  }
  r.checks.push_back(detail::check_of("V-equals-lip", is_lip));

  bool ok = id.verified == is_lip;
  if (source) {
    auto lip = lip0_generators(*source);
    bool same_space = true;
    for (const auto& g : v.generators()) same_space = same_space && contains(lip, g);
    for (std::size_t x = 0; x < source->size(); ++x) same_space = same_space && contains(v, source->row(x));
    r.checks.push_back(detail::check_of("V-equals-lip-of-source", same_space));
    const bool equal = id.verified && id.kernel == source->matrix();
    Check ec = detail::check_of("kernel-equals-source", equal);
    if (!equal) ec.matrix = source->matrix();
    r.checks.push_back(std::move(ec));
    ok = ok && same_space && (!source->reflexive() || equal);
  }
  if (v.closure() == Closure::wedge_closed && admissible(v).admissible && id.verified) {
    bool refl = true;
    for (auto x : v.support_points()) refl = refl && id.kernel(x, x) == Scalar::one(v.semiring());
    r.checks.push_back(detail::check_of("reflexive-on-support", refl));
    ok = ok && refl;
  }
  r.verdict = ok ? Verdict::holds : Verdict::violated;
  return r;
}

/// Check 5 (through the embedding i_Delta): id is b-nuclear on V iff
/// i_Delta is an embedding and the identity on i_Delta(V) is integral.
inline TheoremReport check_theorem5(const SemimoduleSpec& v, const TheoremOptions& opt = {}) {
  TheoremReport r{"5", Verdict::holds, {}};
  auto dec = nuclear_decompose_identity(v, opt.probes, opt.seed);
  Check nc = detail::check_of("nuclear", dec.verified, dec.verified ? dec.construction : dec.failure);
  if (!dec.verified) nc.vector = dec.witness;
  r.checks.push_back(std::move(nc));

  DeltaFamily fam = dec.verified ? delta_family_from(dec.decomposition) : canonical_delta_family(v, opt.probes, opt.seed);
  bool embedding = false;
  bool image_integral = false;
  if (!fam.members.empty()) {
    auto emb = i_delta_embed(v, fam);
    // Order embedding on a sample of V.
    std::vector<TropVector> sample = v.generators();
    Rng rng(opt.seed);
    for (std::size_t p = 0; p < std::min<std::size_t>(opt.probes, 24); ++p) sample.push_back(random_element(rng, v));
    std::vector<TropVector> images;
    for (const auto& s : sample) images.push_back(i_delta_apply(fam, emb.ground, s));
    embedding = true;
    for (std::size_t i = 0; i < sample.size() && embedding; ++i)
      for (std::size_t j = 0; j < sample.size() && embedding; ++j)
        if (leq(images[i], images[j]) != leq(sample[i], sample[j])) embedding = false;
    image_integral = identity_kernel(emb.image, detail::kernel_options(opt)).verified;
  }
  r.checks.push_back(detail::check_of("delta-family-size", !fam.members.empty(), std::to_string(fam.members.size())));
  r.checks.push_back(detail::check_of("i-delta-embedding", embedding));
  r.checks.push_back(detail::check_of("image-identity-integral", image_integral));
  const bool agree = dec.verified == (embedding && image_integral);
  r.checks.push_back(detail::check_of("agree", agree));
  r.verdict = agree ? Verdict::holds : Verdict::violated;
  return r;
}

}  // namespace tropk
