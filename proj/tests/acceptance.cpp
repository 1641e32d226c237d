// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Every criterion must also finish within 10 seconds.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "helpers.hpp"

using namespace tropk;
using testing::T;
using testing::Z;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

// 1
Outcome semiring_laws() {
  Rng rng(1001);
  const ScalarDistribution d{-50, 50, 0.1, 0.1};
  for (int t = 0; t < 10000; ++t) {
    auto a = random_scalar(rng, d);
    auto b = random_scalar(rng, d);
    auto c = random_scalar(rng, d);
    const std::string triple = to_string(a) + ", " + to_string(b) + ", " + to_string(c);
    if (!(oplus(a, a) == a)) return fail("idempotency at " + triple);
    if (!(oplus(a, oplus(b, c)) == oplus(oplus(a, b), c))) return fail("sum associativity at " + triple);
    if (!(odot(a, odot(b, c)) == odot(odot(a, b), c))) return fail("product associativity at " + triple);
    if (!(odot(a, oplus(b, c)) == oplus(odot(a, b), odot(a, c)))) return fail("left distributivity at " + triple);
    if (!(odot(oplus(b, c), a) == oplus(odot(b, a), odot(c, a)))) return fail("right distributivity at " + triple);
    if (leq(odot(a, c), b) != leq(c, residual(a, b))) return fail("residuation at " + triple);
    if (std::abs(a.value()) <= 30 && std::abs(b.value()) <= 30 &&
        residual(a, b).value() != oracle::residual_grid(a.value(), b.value()))
      return fail("residual differs from grid search at " + triple);
  }
  return {true, "10000 triples"};
}

// 2
Outcome closure_oracle() {
  Rng rng(1002);
  int cycles = 0;
  for (int t = 0; t < 500; ++t) {
    auto g = GroundSet::indexed(1 + random_index(rng, 6));
    auto m = random_matrix(rng, g, g, {-9, 9, 0.35, 0.0});
    auto want = oracle::star_lehmann(testing::values(m));
    auto s = star_closure(m);
    if (testing::values(s.matrix()) != want) return fail("closure differs from elimination oracle on trial " + std::to_string(t));
    if (!validate_semimetric(s.matrix()).ok) return fail("closure is not a semimetric on trial " + std::to_string(t));
    bool cycle = false;
    for (std::size_t u = 0; u < g.size(); ++u) cycle = cycle || want[u][u] == T;
    if (cycle) ++cycles;
    else if (want != oracle::star_paths(testing::values(m)))
      return fail("closure differs from path enumeration on trial " + std::to_string(t));
  }
  return {true, "500 matrices, " + std::to_string(cycles) + " with positive cycles"};
}

// 3
Outcome theorem1_reconstruction() {
  Rng rng(1003);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + random_index(rng, 5);
    auto v = random_admissible_wedge(rng, n, 1 + random_index(rng, 4));
    auto cod = GroundSet::indexed(1 + random_index(rng, 4), "y");
    auto k0 = random_matrix(rng, v.ground(), cod, {-9, 9, 0.25, 0.05});
    auto a = LinearOperator::integral(k0);
    KernelOptions opt;
    opt.probes = 64;
    opt.seed = static_cast<std::uint64_t>(t);
    auto res = max_kernel(a, v, opt);
    if (!res.verified) return fail("instance " + std::to_string(t) + ": " + res.failure);
    std::vector<TropVector> sample = v.generators();
    for (const auto& f : random_elements(rng, v, 64)) sample.push_back(f);
    for (const auto& f : sample)
      if (testing::values(integrate(f, res.kernel)) != oracle::integrate(testing::values(f), testing::values(k0)))
        return fail("instance " + std::to_string(t) + ": mismatch at " + to_string(f));
  }
  return {true, "200 instances, generators + 64 probes each"};
}

// 4
Outcome theorem4_round_trip() {
  Rng rng(1004);
  for (int t = 0; t < 200; ++t) {
    auto d = random_semimetric(rng, GroundSet::indexed(1 + random_index(rng, 6)));
    auto res = identity_kernel(lip0_generators(d));
    if (!res.verified) return fail("lip0 span " + std::to_string(t) + ": " + res.failure);
    if (!(res.kernel == d.matrix())) return fail("lip0 span " + std::to_string(t) + ": kernel differs from d");
  }
  int converse = 0, attempts = 0;
  while (converse < 200 && attempts < 20000) {
    ++attempts;
    auto v = random_span(rng, 2 + random_index(rng, 4), 1 + random_index(rng, 4));
    auto res = identity_kernel(v);
    if (!res.verified) continue;
    ++converse;
    if (!validate_semimetric(res.kernel).ok) return fail("extracted kernel is not a semimetric");
    std::vector<TropVector> rows;
    for (std::size_t x = 0; x < res.kernel.rows(); ++x) rows.push_back(res.kernel.row(x));
    SemimoduleSpec row_span(v.ground(), v.semiring(), rows);
    for (const auto& g : v.generators())
      if (!contains(row_span, g)) return fail("generator missing from the row span: " + to_string(g));
    for (const auto& r : rows)
      if (!contains(v, r)) return fail("kernel row outside V: " + to_string(r));
  }
  if (converse < 200) return fail("only " + std::to_string(converse) + " spans with integral identity found");
  return {true, "200 semimetrics, 200 spans with integral identity (" + std::to_string(attempts) + " sampled)"};
}

// 5
Outcome catalogue_consistency() {
  std::vector<std::pair<std::string, SemimoduleSpec>> cat;
  cat.emplace_back("full-KX", full_kx(4));
  for (std::uint64_t seed : {1, 2, 3}) {
    auto b = build({"metric-lipschitz", 4, seed, {}});
    cat.emplace_back("lip(seed " + std::to_string(seed) + ")", *b.module);
  }
  cat.emplace_back("nonincreasing-chain", nonincreasing_chain(4));
  TheoremOptions opt;
  for (const auto& [name, v] : cat) {
    auto dec = nuclear_decompose_identity(v);
    if (!dec.verified) return fail(name + ": identity decomposition failed: " + dec.failure);
    auto r2 = check_theorem2(v, LinearOperator::identity(v.ground()), opt);
    auto r3 = check_theorem3(v, opt);
    auto r5 = check_theorem5(v, opt);
    for (const auto* r : {&r2, &r3, &r5})
      if (!r->passed()) return fail(name + ": theorem " + r->theorem + " " + std::string(to_string(r->verdict)));
    const bool integral = r2.value("integral");
    if (integral != r2.value("nuclear") || integral != r3.value("kernel-theorem") || integral != r5.value("nuclear"))
      return fail(name + ": integral, nuclear and kernel-theorem disagree");
  }
  return {true, std::to_string(cat.size()) + " instances agree"};
}

// 6
Outcome example7() {
  double previous = T;
  std::string detail;
  for (int n : {5, 10, 50}) {
    auto w = example7_window(n);
    const std::size_t zero = static_cast<std::size_t>(n);
    if (is_integral(w.functional, w.module)) return fail("window " + std::to_string(n) + ": functional reported integral");
    auto bound = example7_kernel_bound(w, zero, w.probe_schedule.back()).value();
    auto candidate = max_kernel(w.functional.as_operator(), w.module).kernel(zero, 0).value();
    if (!(bound <= -n) || !(candidate <= -n))
      return fail("window " + std::to_string(n) + ": kernel value at 0 above -n");
    if (!(bound < previous)) return fail("bound at 0 does not decrease with n");
    previous = bound;
    detail += (detail.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) + ": " + to_string(Scalar(bound));
  }
  return {true, "bounds at 0 " + detail};
}

// 7
Outcome example6() {
  auto cg = concave_grid();
  auto h = concave_oplus(cg.f, cg.g, cg.coords);
  auto m = oplus(cg.f, cg.g);
  oracle::Vec mv = testing::values(m);
  if (oracle::concave_envelope(cg.coords, mv) != testing::values(h)) return fail("hull differs from chord oracle");
  if (!(h[1] == Scalar(0)) || !(m[1] == Scalar(-5))) return fail("middle values " + to_string(h[1]) + ", " + to_string(m[1]));
  return {true, "hull 0 > max -5 at the middle point"};
}

// 8
Outcome example9() {
  for (std::size_t n = 2; n <= 6; ++n) {
    if (!validate_semimetric(order_indicator(n, false)).ok) return fail("non-strict fails at size " + std::to_string(n));
    auto v = validate_semimetric(order_indicator(n, true));
    if (v.ok) return fail("strict passes at size " + std::to_string(n));
    const auto g = integer_chain(n);
    const double x = g.coordinates()[v.witness->first];
    const double y = g.coordinates()[v.witness->second];
    // the order is one at (x, y) but no point lies strictly between
    if (x - y != 1 || !v.expected->is_zero()) return fail("witness is not an adjacent pair at size " + std::to_string(n));
  }
  return {true, "sizes 2-6, strict witness (2, 1)"};
}

// 9
Outcome sup_linearity_ideal() {
  Rng rng(1009);
  const ScalarDistribution d{-9, 9, 0.25, 0.0};
  for (int t = 0; t < 200; ++t) {
    auto x = GroundSet::indexed(1 + random_index(rng, 6));
    auto y = GroundSet::indexed(1 + random_index(rng, 6), "y");
    std::vector<LinearOperator> fam;
    for (std::size_t i = 0, n = 1 + random_index(rng, 4); i < n; ++i)
      fam.push_back(LinearOperator::integral(random_matrix(rng, x, y, d)));
    auto f = random_vector(rng, x, {-9, 9, 0.2, 0.05});
    oracle::Vec want(y.size(), Z);
    for (const auto& a : fam) {
      auto img = oracle::integrate(testing::values(f), testing::values(a.kernel()));
      for (std::size_t j = 0; j < want.size(); ++j) want[j] = std::max(want[j], img[j]);
    }
    if (testing::values(sup_operators(fam).apply(f)) != want) return fail("sup of operators, trial " + std::to_string(t));
  }
  for (int t = 0; t < 200; ++t) {
    auto v = random_span(rng, 1 + random_index(rng, 6), 1 + random_index(rng, 4));
    auto a = LinearOperator::integral(random_matrix(rng, v.ground(), GroundSet::indexed(3, "y"), d));
    auto fs = random_elements(rng, v, 4);
    auto combo = TropVector::zero(v.ground());
    auto image = TropVector::zero(a.codomain_ground());
    for (const auto& f : fs) {
      auto c = random_scalar(rng, {-6, 6, 0.2, 0.0});
      combo = oplus(combo, scale(c, f));
      image = oplus(image, scale(c, a.apply(f)));
    }
    if (!(a.apply(combo) == image) || !preserves_sup(a, fs)) return fail("b-linearity, trial " + std::to_string(t));
  }
  for (int t = 0; t < 200; ++t) {
    auto dm = random_semimetric(rng, GroundSet::indexed(1 + random_index(rng, 6)));
    auto r = lower_ideal_check(lip0_generators(dm), dm, 16, rng);
    if (!r.ok) return fail("lower ideal, trial " + std::to_string(t) + ": " + r.reason);
  }
  return {true, "3 x 200 trials"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 semiring laws", semiring_laws},
      {"2 closure oracle", closure_oracle},
      {"3 wedge reconstruction", theorem1_reconstruction},
      {"4 semimetric round trip", theorem4_round_trip},
      {"5 catalogue consistency", catalogue_consistency},
      {"6 window unboundedness", example7},
      {"7 concave hull witness", example6},
      {"8 order indicators", example9},
      {"9 sup, linearity, lower ideal", sup_linearity_ideal},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && secs >= 10.0) o = fail("took " + std::to_string(secs) + " s");
    if (!o.pass) ++failures;
    std::printf("%s [%s] %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
  }
  return failures == 0 ? 0 : 1;
}
