#pragma once

/**
 * @file io.hpp
 * @brief JSON encoding of scalars, vectors, kernels, semimodules, operators
 * and theorem reports (nlohmann::json).
 *
 * Scalars are numbers, with "-inf" for zero and "+inf" for top. Kernels are
 * {"semiring", "domain", "codomain", "entries"}; semimodules are
 * {"semiring", "ground_set", "coordinates"?, "generators", "closure"}.
 */

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tropk/operator.hpp"
#include "tropk/theorems.hpp"

namespace tropk {

using json = nlohmann::ordered_json;

/// Malformed input file or document.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline json to_json(const Scalar& s) {
  if (s.value() == Scalar::kBottom) return "-inf";
  if (s.value() == Scalar::kTop) return "+inf";
  const double v = s.value();
  if (v == std::floor(v) && std::abs(v) < 9.0e15) return static_cast<std::int64_t>(v);
  return v;
}

inline Scalar scalar_from_json(const json& j, Semiring ring, const std::string& where = "scalar") {
  if (j.is_number()) return Scalar(j.get<double>(), ring);
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "-inf" || s == "zero") return Scalar::zero(ring);
    if (s == "+inf" || s == "inf" || s == "top") return Scalar::top(ring);
  }
  throw FormatError(where + ": expected a number, \"-inf\" or \"+inf\"");
}

inline json to_json(const TropVector& v) {
  json a = json::array();
  for (const auto& e : v.entries()) a.push_back(to_json(e));
  return a;
}

/// An array in ground-set order, or an object keyed by point labels
/// (missing labels are zero).
inline TropVector vector_from_json(const json& j, const GroundSet& ground, Semiring ring,
                                   const std::string& where = "vector") {
  std::vector<Scalar> e;
  if (j.is_array()) {
    if (j.size() != ground.size())
      throw FormatError(where + ": has " + std::to_string(j.size()) + " entries, ground set has " +
                        std::to_string(ground.size()));
    for (std::size_t i = 0; i < j.size(); ++i) e.push_back(scalar_from_json(j[i], ring, where + "[" + std::to_string(i) + "]"));
    return TropVector(ground, std::move(e));
  }
  if (j.is_object()) {
    auto v = TropVector::zero(ground, ring);
    for (const auto& [k, val] : j.items()) {
      auto idx = ground.find(k);
      if (!idx) throw FormatError(where + ": unknown point '" + k + "'");
      v.set(*idx, scalar_from_json(val, ring, where + "." + k));
    }
    return v;
  }
  throw FormatError(where + ": expected an array or an object");
}

inline json labels_json(const GroundSet& g) { return json(g.labels()); }

inline GroundSet ground_from_json(const json& labels, const json* coords, const std::string& where) {
  if (!labels.is_array() || labels.empty()) throw FormatError(where + ": expected a nonempty array of labels");
  std::vector<std::string> l;
  for (const auto& x : labels) {
    if (x.is_string()) l.push_back(x.get<std::string>());
    else if (x.is_number()) l.push_back(x.dump());
    else throw FormatError(where + ": labels must be strings or numbers");
  }
  std::vector<double> c;
  if (coords) {
    if (!coords->is_array()) throw FormatError(where + ": coordinates must be an array");
    for (const auto& x : *coords) {
      if (!x.is_number()) throw FormatError(where + ": coordinates must be numbers");
      c.push_back(x.get<double>());
    }
  }
  try {
    return GroundSet(std::move(l), std::move(c));
  } catch (const DomainError& e) {
    throw FormatError(where + ": " + e.what());
  }
}

inline Semiring semiring_from_json(const json& j) {
  if (!j.contains("semiring")) return Semiring::rmax_complete;
  if (!j["semiring"].is_string()) throw FormatError("semiring: expected a string");
  auto s = parse_semiring(j["semiring"].get<std::string>());
  if (!s) throw FormatError("semiring: unknown semiring '" + j["semiring"].get<std::string>() + "'");
  return *s;
}

inline const json& require_key(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(where + ": missing key \"" + key + "\"");
  return j[key];
}

inline json to_json(const KernelMatrix& m) {
  json rows = json::array();
  for (std::size_t x = 0; x < m.rows(); ++x) rows.push_back(to_json(m.row(x)));
  return json{{"semiring", std::string(to_string(m.semiring()))},
              {"domain", labels_json(m.domain())},
              {"codomain", labels_json(m.codomain())},
              {"entries", std::move(rows)}};
}

/// Accepts the kernel object, a wrapper with a "matrix" key, or a bare array
/// of rows on indexed points.
inline KernelMatrix kernel_from_json(const json& in, const std::string& where = "matrix") {
  const json& j = in.is_object() && !in.contains("entries") && in.contains("matrix") ? in["matrix"] : in;
  const json* entries = &j;
  Semiring ring = Semiring::rmax_complete;
  std::optional<GroundSet> dom, cod;
  if (j.is_object()) {
    ring = semiring_from_json(j);
    entries = &require_key(j, "entries", where);
    if (j.contains("domain")) dom = ground_from_json(j["domain"], nullptr, where + ".domain");
    if (j.contains("codomain")) cod = ground_from_json(j["codomain"], nullptr, where + ".codomain");
  }
  if (!entries->is_array() || entries->empty() || !(*entries)[0].is_array())
    throw FormatError(where + ": entries must be a nonempty array of rows");
  if (!dom) dom = GroundSet::indexed(entries->size());
  if (!cod) cod = dom->size() == (*entries)[0].size() ? *dom : GroundSet::indexed((*entries)[0].size());
  if (entries->size() != dom->size()) throw FormatError(where + ": row count does not match the domain");
  std::vector<TropVector> rows;
  for (std::size_t x = 0; x < entries->size(); ++x)
    rows.push_back(vector_from_json((*entries)[x], *cod, ring, where + ".entries[" + std::to_string(x) + "]"));
  return KernelMatrix::from_rows(*dom, rows);
}

inline json to_json(const SemimoduleSpec& v) {
  json j{{"semiring", std::string(to_string(v.semiring()))}, {"ground_set", labels_json(v.ground())}};
  if (v.ground().has_coordinates()) {
    json c = json::array();
    for (double x : v.ground().coordinates()) c.push_back(to_json(Scalar(x)));
    j["coordinates"] = std::move(c);
  }
  json gens = json::array();
  for (const auto& g : v.generators()) gens.push_back(to_json(g));
  j["generators"] = std::move(gens);
  j["closure"] = std::string(to_string(v.closure()));
  return j;
}

/// Accepts a semimodule object or a wrapper with a "module" key.
inline SemimoduleSpec module_from_json(const json& in, const std::string& where = "module") {
  const json& j = in.is_object() && in.contains("module") ? in["module"] : in;
  if (!j.is_object()) throw FormatError(where + ": expected an object");
  const Semiring ring = semiring_from_json(j);
  const json* coords = j.contains("coordinates") ? &j["coordinates"] : nullptr;
  auto ground = ground_from_json(require_key(j, "ground_set", where), coords, where + ".ground_set");
  const auto& gj = require_key(j, "generators", where);
  if (!gj.is_array()) throw FormatError(where + ".generators: expected an array");
  std::vector<TropVector> gens;
  for (std::size_t i = 0; i < gj.size(); ++i)
    gens.push_back(vector_from_json(gj[i], ground, ring, where + ".generators[" + std::to_string(i) + "]"));
  Closure c = Closure::b_closed_span;
  if (j.contains("closure")) {
    auto pc = j["closure"].is_string() ? parse_closure(j["closure"].get<std::string>()) : std::nullopt;
    if (!pc) throw FormatError(where + ".closure: expected \"b-closed-span\" or \"wedge-closed\"");
    c = *pc;
  }
  return SemimoduleSpec(std::move(ground), ring, std::move(gens), c);
}

inline json to_json(const LinearOperator& a) {
  if (a.form() == LinearOperator::Form::integral) return json{{"form", "integral"}, {"kernel", to_json(a.kernel())}};
  json images = json::array();
  for (const auto& im : a.images()) images.push_back(to_json(im));
  return json{{"form", "tabulated"}, {"codomain", labels_json(a.codomain_ground())}, {"images", std::move(images)}};
}

/// {"form": "integral", "kernel": ...} or {"form": "tabulated", "codomain"?,
/// "images": [...]}; tabulated operators live on `domain`. Without a
/// codomain the images are values of a functional.
inline LinearOperator operator_from_json(const json& j, const SemimoduleSpec& domain, const std::string& where = "operator") {
  const auto& form = require_key(j, "form", where);
  if (form == "integral") {
    auto k = kernel_from_json(require_key(j, "kernel", where), where + ".kernel");
    if (k.semiring() != domain.semiring()) throw DomainError(where + ": semiring differs from the module's");
    return LinearOperator::integral(KernelMatrix(domain.ground(), k.codomain(), {k.entries().begin(), k.entries().end()}));
  }
  if (form == "tabulated") {
    GroundSet cod = j.contains("codomain") ? ground_from_json(j["codomain"], nullptr, where + ".codomain") : value_ground();
    const auto& ij = require_key(j, "images", where);
    if (!ij.is_array()) throw FormatError(where + ".images: expected an array");
    std::vector<TropVector> images;
    for (std::size_t i = 0; i < ij.size(); ++i) {
      const json& e = ij[i].is_array() || ij[i].is_object() ? ij[i] : json::array({ij[i]});
      images.push_back(vector_from_json(e, cod, domain.semiring(), where + ".images[" + std::to_string(i) + "]"));
    }
    return LinearOperator::tabulated(domain, cod, std::move(images));
  }
  throw FormatError(where + ".form: expected \"integral\" or \"tabulated\"");
}

inline json to_json(const Check& c) {
  json j{{"name", c.name}, {"passed", c.passed}};
  if (!c.detail.empty()) j["detail"] = c.detail;
  if (c.vector) j["vector"] = to_json(*c.vector);
  if (c.matrix) j["matrix"] = to_json(*c.matrix);
  return j;
}

inline json to_json(const TheoremReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return json{{"theorem", r.theorem}, {"verdict", std::string(to_string(r.verdict))}, {"checks", std::move(checks)}};
}

/// Parses a document, reporting errors as "<name>:<line>:<column>: ...".
inline json parse_json(const std::string& text, const std::string& name) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw FormatError(name + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON (" + e.what() + ")");
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json read_json_file(const std::string& path) { return parse_json(read_text_file(path), path); }

}  // namespace tropk
