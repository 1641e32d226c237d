#pragma once

/**
 * @file semimetric.hpp
 * @brief Semimetrics d = d (x) d, their Kleene closure, and the Lipschitz
 * semimodules Lip(X, d) and lip(X, d).
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tropk/kernel_matrix.hpp"
#include "tropk/random.hpp"
#include "tropk/semimodule.hpp"

namespace tropk {

struct SemimetricValidation {
  bool ok = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // first (x, y) in row-major order
  std::optional<Scalar> expected;  // (m (x) m)(x, y) at the witness
};

/// Checks m(x, y) = sup_z m(x, z) (x) m(z, y) for all x, y.
inline SemimetricValidation validate_semimetric(const KernelMatrix& m, double tolerance = 0.0) {
  if (!m.is_square()) throw DomainError("validate_semimetric: matrix is not square");
  const auto sq = compose(m, m);
  SemimetricValidation out;
  for (std::size_t x = 0; x < m.rows(); ++x)
    for (std::size_t y = 0; y < m.cols(); ++y)
      if (!approx_equal(m(x, y), sq(x, y), tolerance)) {
        out.ok = false;
        out.witness = {x, y};
        out.expected = sq(x, y);
        return out;
      }
  return out;
}

class Semimetric {
 public:
  explicit Semimetric(KernelMatrix m, double tolerance = 0.0) : m_(std::move(m)) {
    auto v = validate_semimetric(m_, tolerance);
    if (!v.ok) {
      auto [x, y] = *v.witness;
      throw DomainError("not a semimetric: d(" + m_.domain().label(x) + ", " + m_.domain().label(y) +
                        ") = " + to_string(m_(x, y)) + " but (d d)(x, y) = " + to_string(*v.expected));
    }
  }

  const KernelMatrix& matrix() const noexcept { return m_; }
  const GroundSet& ground() const noexcept { return m_.domain(); }
  Semiring semiring() const noexcept { return m_.semiring(); }
  std::size_t size() const noexcept { return m_.rows(); }
  const Scalar& operator()(std::size_t x, std::size_t y) const { return m_(x, y); }

  /// Row d_x = d(x, .).
  TropVector row(std::size_t x) const { return m_.row(x); }

  bool reflexive() const {
    for (std::size_t x = 0; x < size(); ++x)
      if (!(m_(x, x) == Scalar::one(semiring()))) return false;
    return true;
  }
  bool symmetric() const { return m_ == m_.transpose(); }

 private:
  KernelMatrix m_;
};

/// Least reflexive semimetric above m: sup_k (I (+) m)^k.
///
/// B = I (+) m is squared until the power reaches |X|. A node u lies on a
/// positive cycle iff B^|X|(u, u) > one; entry (i, j) diverges to top iff such
/// a node is reachable from i and reaches j. Otherwise the series has
/// stabilised by length |X| - 1.
inline Semimetric star_closure(const KernelMatrix& m) {
  if (!m.is_square()) throw DomainError("star_closure: matrix is not square");
  const Semiring ring = m.semiring();
  if (!describe(ring).has_top) throw UnsupportedError("star_closure needs a completed semiring");
  const std::size_t n = m.rows();
  auto p = oplus(KernelMatrix::identity(m.domain(), ring), m);
  for (std::size_t len = 1; len < n; len *= 2) p = compose(p, p);

  std::vector<bool> divergent(n, false);
  for (std::size_t u = 0; u < n; ++u) divergent[u] = p(u, u).value() > 0.0;
  auto out = p;
  for (std::size_t u = 0; u < n; ++u) {
    if (!divergent[u]) continue;
    for (std::size_t i = 0; i < n; ++i) {
      if (p(i, u).is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!p(u, j).is_zero()) out.set(i, j, Scalar::top(ring));
    }
  }
  return Semimetric(std::move(out));
}

/// f = f (x) d, i.e. f(x) = sup_y f(y) (x) d(y, x).
inline bool lip_membership(const TropVector& f, const Semimetric& d, double tolerance = 0.0) {
  return approx_equal(integrate(f, d.matrix()), f, tolerance);
}

/// f >= f (x) d pointwise.
inline bool Lip_membership(const TropVector& f, const Semimetric& d) { return leq(integrate(f, d.matrix()), f); }

/// f (x) d, the least element of Lip above f when d is reflexive.
inline TropVector lip_project(const TropVector& f, const Semimetric& d) { return integrate(f, d.matrix()); }

/// b-closed span of the rows d_x.
inline SemimoduleSpec lip0_generators(const Semimetric& d) {
  std::vector<TropVector> rows;
  for (std::size_t x = 0; x < d.size(); ++x) rows.push_back(d.row(x));
  return SemimoduleSpec(d.ground(), d.semiring(), std::move(rows), Closure::b_closed_span);
}

/// d = -r for a finite metric r given as a matrix of nonnegative distances.
inline Semimetric lipschitz_space(const GroundSet& points, const std::vector<std::vector<double>>& r) {
  const std::size_t n = points.size();
  if (r.size() != n) throw DomainError("lipschitz_space: distance matrix has wrong row count");
  for (const auto& row : r)
    if (row.size() != n) throw DomainError("lipschitz_space: distance matrix is not square");
  for (std::size_t x = 0; x < n; ++x) {
    if (r[x][x] != 0.0) throw DomainError("lipschitz_space: nonzero self-distance at '" + points.label(x) + "'");
    for (std::size_t y = 0; y < n; ++y) {
      if (!std::isfinite(r[x][y]) || r[x][y] < 0.0) throw DomainError("lipschitz_space: distances must be finite and nonnegative");
      if (r[x][y] != r[y][x]) throw DomainError("lipschitz_space: distance matrix is not symmetric");
      for (std::size_t z = 0; z < n; ++z)
        if (r[x][z] > r[x][y] + r[y][z])
          throw DomainError("lipschitz_space: triangle inequality fails at (" + points.label(x) + ", " +
                            points.label(y) + ", " + points.label(z) + ")");
    }
  }
  std::vector<Scalar> e;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) e.emplace_back(r[x][y] == 0.0 ? 0.0 : -r[x][y]);
  return Semimetric(KernelMatrix(points, points, std::move(e)));
}

/// Metric |c_x - c_y| on a ground set with coordinates.
inline Semimetric lipschitz_space(const GroundSet& points) {
  if (!points.has_coordinates()) throw DomainError("lipschitz_space: ground set has no coordinates");
  const auto& c = points.coordinates();
  std::vector<std::vector<double>> r(c.size(), std::vector<double>(c.size()));
  for (std::size_t x = 0; x < c.size(); ++x)
    for (std::size_t y = 0; y < c.size(); ++y) r[x][y] = std::abs(c[x] - c[y]);
  return lipschitz_space(points, r);
}

/// Direct form of lip(X, -r): f is identically zero, or everywhere finite with
/// |f(x) - f(y)| <= r(x, y).
inline bool is_lipschitz(const TropVector& f, const std::vector<std::vector<double>>& r) {
  if (f.is_zero()) return true;
  for (std::size_t x = 0; x < f.size(); ++x)
    if (!f[x].is_invertible()) return false;
  for (std::size_t x = 0; x < f.size(); ++x)
    for (std::size_t y = 0; y < f.size(); ++y)
      if (std::abs(f[x].value() - f[y].value()) > r[x][y]) return false;
  return true;
}

struct LowerIdealResult {
  bool ok = true;
  bool precondition = true;
  std::string reason;
  std::optional<TropVector> f;
  std::optional<TropVector> g;
};

/// Randomised check that every g in lip(X, d) below an element f of V lies
/// in V. V must be a b-closed span inside Lip(X, d) containing every row d_x.
inline LowerIdealResult lower_ideal_check(const SemimoduleSpec& v, const Semimetric& d, std::size_t trials, Rng& rng) {
  LowerIdealResult out;
  if (v.closure() != Closure::b_closed_span || !(v.ground() == d.ground())) {
    out.ok = out.precondition = false;
    out.reason = "V must be a b-closed span on the semimetric's ground set";
    return out;
  }
  for (std::size_t x = 0; x < d.size(); ++x)
    if (!contains(v, d.row(x))) {
      out.ok = out.precondition = false;
      out.reason = "row '" + d.ground().label(x) + "' of d is not in V";
      out.g = d.row(x);
      return out;
    }
  for (const auto& g : v.generators())
    if (!Lip_membership(g, d)) {
      out.ok = out.precondition = false;
      out.reason = "a generator of V is not in Lip(X, d)";
      out.f = g;
      return out;
    }
  const ScalarDistribution dist{-12, 6, 0.2, 0.0};
  for (std::size_t t = 0; t < trials; ++t) {
    auto f = random_element(rng, v);
    // f is in Lip, so (h ^ f) d <= f d <= f.
    auto g = t % 8 == 0 ? f : lip_project(wedge(random_vector(rng, v.ground(), dist, v.semiring()), f), d);
    if (!contains(v, g)) {
      out.ok = false;
      out.reason = "an element of lip below an element of V is missing from V";
      out.f = std::move(f);
      out.g = std::move(g);
      return out;
    }
  }
  return out;
}

/// Reflexive semimetric from the closure of a random matrix with entries in
/// [-9, 0] and a share of zeros.
inline Semimetric random_semimetric(Rng& rng, const GroundSet& ground, Semiring ring = Semiring::rmax_complete) {
  return star_closure(random_matrix(rng, ground, ground, ScalarDistribution{-9, 0, 0.3, 0.0}, ring));
}

/// Reads an undirected edge list, one "x y weight" triple per line ('#'
/// starts a comment). Returns m with m(x, y) = m(y, x) = -weight, one on the
/// diagonal and zero elsewhere; points are numbered in order of first
/// appearance.
inline KernelMatrix read_edge_list(std::istream& in) {
  std::vector<std::string> labels;
  std::vector<std::tuple<std::string, std::string, double>> edges;
  std::string line;
  std::size_t lineno = 0;
  auto note = [&](const std::string& s) {
    if (std::find(labels.begin(), labels.end(), s) == labels.end()) labels.push_back(s);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string x, y, extra;
    double w = 0;
    if (!(ls >> x)) continue;
    if (!(ls >> y >> w) || (ls >> extra))
      throw DomainError("edge list line " + std::to_string(lineno) + ": expected 'x y weight'");
    if (!std::isfinite(w)) throw DomainError("edge list line " + std::to_string(lineno) + ": weight must be finite");
    note(x);
    note(y);
    edges.emplace_back(x, y, w);
  }
  if (labels.empty()) throw DomainError("edge list is empty");
  GroundSet g(labels);
  auto m = KernelMatrix::identity(g);
  for (const auto& [x, y, w] : edges) {
    const Scalar v(w == 0.0 ? 0.0 : -w);
    m.set(g.index_of(x), g.index_of(y), v);
    m.set(g.index_of(y), g.index_of(x), v);
  }
  return m;
}

}  // namespace tropk
