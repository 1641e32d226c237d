#pragma once

// Command-line front end. run() is kept separate from main() so the tests
// can drive it in-process.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tropk/tropk.hpp"

namespace tropk::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsage = 2 };

struct RunConfig {
  std::uint64_t seed = 0;
  std::size_t trials = 200;
  std::size_t probes = 64;
  double tolerance = 0.0;
  std::string output;
  bool timing = false;
};

inline std::uint64_t default_seed() {
  if (const char* s = std::getenv("TROPK_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw FormatError(std::string("TROPK_SEED: not an unsigned integer: '") + s + "'");
    }
  }
  return 0;
}

namespace detail {

inline json header(const std::string& command, const RunConfig& cfg) {
  return json{{"command", command}, {"rng", std::string(kRngName)}, {"seed", cfg.seed}};
}

inline SemimoduleSpec load_module(const std::string& path) { return module_from_json(read_json_file(path), path); }

inline KernelMatrix load_matrix(const std::string& matrix, const std::string& edges) {
  if (!matrix.empty() && !edges.empty()) throw FormatError("give either --matrix or --edges, not both");
  if (!matrix.empty()) return kernel_from_json(read_json_file(matrix), matrix);
  if (!edges.empty()) {
    std::istringstream in(read_text_file(edges));
    return read_edge_list(in);
  }
  throw FormatError("one of --matrix or --edges is required");
}

inline json numbers(const std::vector<double>& xs) {
  json a = json::array();
  for (double x : xs) a.push_back(to_json(Scalar(x)));
  return a;
}

inline json witness_pair(const KernelMatrix& m, std::size_t x, std::size_t y) {
  return json{{"x", m.domain().label(x)}, {"y", m.codomain().label(y)}};
}

inline int cmd_validate(const RunConfig& cfg, const std::string& matrix, const std::string& edges, json& rep) {
  auto m = load_matrix(matrix, edges);
  auto v = validate_semimetric(m, cfg.tolerance);
  rep["valid"] = v.ok;
  if (v.ok) {
    Semimetric d(m, cfg.tolerance);
    rep["reflexive"] = d.reflexive();
    rep["symmetric"] = d.symmetric();
    return kPass;
  }
  auto [x, y] = *v.witness;
  rep["witness"] = witness_pair(m, x, y);
  rep["witness"]["value"] = to_json(m(x, y));
  rep["witness"]["composed"] = to_json(*v.expected);
  return kCheckFailed;
}

inline int cmd_closure(const RunConfig&, const std::string& matrix, const std::string& edges, json& rep) {
  auto m = load_matrix(matrix, edges);
  auto d = star_closure(m);
  json div = json::array();
  for (std::size_t x = 0; x < d.size(); ++x)
    if (d(x, x).is_top() && !Scalar::one(d.semiring()).is_top()) div.push_back(d.ground().label(x));
  rep["closure"] = to_json(d.matrix());
  rep["reflexive"] = d.reflexive();
  rep["divergent_points"] = std::move(div);
  rep["valid"] = validate_semimetric(d.matrix()).ok;
  return rep["valid"].get<bool>() ? kPass : kCheckFailed;
}

inline int cmd_lip_project(const RunConfig& cfg, const std::string& matrix, const std::string& vector, json& rep) {
  auto m = kernel_from_json(read_json_file(matrix), matrix);
  auto v = validate_semimetric(m, cfg.tolerance);
  if (!v.ok) {
    rep["valid"] = false;
    rep["witness"] = witness_pair(m, v.witness->first, v.witness->second);
    return kCheckFailed;
  }
  Semimetric d(m, cfg.tolerance);
  auto f = vector_from_json(read_json_file(vector), d.ground(), d.semiring(), vector);
  auto p = lip_project(f, d);
  rep["input_in_lip"] = lip_membership(f, d, cfg.tolerance);
  rep["input_in_Lip"] = Lip_membership(f, d);
  rep["projection"] = to_json(p);
  const bool ok = lip_membership(p, d, cfg.tolerance);
  rep["projection_in_lip"] = ok;
  return ok ? kPass : kCheckFailed;
}

inline int cmd_membership(const RunConfig& cfg, const std::string& module, const std::string& vector, json& rep) {
  auto v = load_module(module);
  auto f = vector_from_json(read_json_file(vector), v.ground(), v.semiring(), vector);
  auto m = membership(f, v, cfg.tolerance);
  rep["closure"] = std::string(to_string(v.closure()));
  rep["member"] = m.member;
  if (v.closure() == Closure::b_closed_span) {
    json c = json::array();
    for (const auto& s : m.coefficients) c.push_back(to_json(s));
    rep["coefficients"] = std::move(c);
    rep["reconstruction"] = to_json(*m.reconstruction);
  }
  if (m.failing_point) rep["failing_point"] = v.ground().label(*m.failing_point);
  return m.member ? kPass : kCheckFailed;
}

inline int cmd_max_kernel(const RunConfig& cfg, const std::string& module, const std::string& op, bool identity,
                          json& rep) {
  auto v = load_module(module);
  KernelOptions opt;
  opt.probes = cfg.probes;
  opt.seed = cfg.seed;
  opt.tolerance = cfg.tolerance;
  KernelResult k = [&] {
    if (identity) return identity_kernel(v, opt);
    if (op.empty()) throw FormatError("one of --operator or --identity is required");
    auto a = operator_from_json(read_json_file(op), v, op);
    return max_kernel(a, v, opt);
  }();
  rep["verified"] = k.verified;
  rep["kernel"] = to_json(k.kernel);
  if (!k.verified) {
    rep["failure"] = k.failure;
    if (k.witness) rep["witness"] = to_json(*k.witness);
  }
  return k.verified ? kPass : kCheckFailed;
}

inline int cmd_decompose(const RunConfig& cfg, const std::string& module, json& rep) {
  auto v = load_module(module);
  auto d = nuclear_decompose_identity(v, cfg.probes, cfg.seed);
  rep["verified"] = d.verified;
  rep["construction"] = d.construction;
  rep["canonical_verified"] = d.canonical_verified;
  json terms = json::array();
  for (std::size_t j = 0; j < d.decomposition.terms.size(); ++j) {
    const auto& t = d.decomposition.terms[j];
    const auto& kv = t.functional.kernel_vector();
    std::string point;
    for (std::size_t x = 0; x < kv.size(); ++x)
      if (!kv[x].is_zero()) point = v.ground().label(x);
    terms.push_back(json{{"functional", "delta:" + point}, {"target", to_json(t.target)}});
  }
  rep["terms"] = std::move(terms);
  if (!d.verified) {
    rep["failure"] = d.failure;
    if (d.witness) rep["witness"] = to_json(*d.witness);
  }
  return d.verified ? kPass : kCheckFailed;
}

struct TheoremInput {
  std::string instance;
  std::size_t size = 3;
  std::string op;
};

inline int cmd_check_theorem(const RunConfig& cfg, const std::string& id, const TheoremInput& in, json& rep) {
  static const std::vector<std::string> ids{"1", "2", "3", "3a", "4", "5"};
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) throw FormatError("--id must be one of 1, 2, 3, 3a, 4, 5");
  const auto& names = instance_names();
  const bool builtin = std::find(names.begin(), names.end(), in.instance) != names.end();
  const bool random_family = builtin && in.instance.rfind("random-", 0) == 0;
  const std::size_t runs = random_family ? cfg.trials : 1;

  rep["theorem"] = id;
  rep["instance"] = in.instance;
  std::size_t held = 0;
  json failures = json::array();
  std::optional<json> first;
  for (std::size_t t = 0; t < runs; ++t) {
    const std::uint64_t seed = cfg.seed + t;
    std::optional<SemimoduleSpec> v;
    std::optional<Semimetric> source;
    std::optional<LinearOperator> op;
    if (builtin) {
      auto b = build(InstanceDescriptor{in.instance, in.size, seed, {}});
      if (!b.module) throw FormatError("instance '" + in.instance + "' has no semimodule");
      v = b.module;
      source = b.semimetric;
      if (b.functional) op = b.functional->as_operator();
    } else {
      auto j = read_json_file(in.instance);
      v = module_from_json(j, in.instance);
      if (j.contains("functional")) op = operator_from_json(j["functional"], *v, in.instance + ".functional");
      if (j.contains("operator")) op = operator_from_json(j["operator"], *v, in.instance + ".operator");
    }
    if (!in.op.empty()) op = operator_from_json(read_json_file(in.op), *v, in.op);

    TheoremOptions opt;
    opt.probes = cfg.probes;
    opt.seed = seed;
    TheoremReport r;
    if (id == "1") {
      if (!op) {
        Rng rng(seed);
        op = LinearOperator::integral(random_matrix(rng, v->ground(), GroundSet::indexed(3, "y"), {-9, 9, 0.3, 0.0}, v->semiring()));
      }
      r = check_theorem1(*v, *op, opt);
    } else if (id == "2") {
      r = check_theorem2(*v, op ? *op : LinearOperator::identity(v->ground(), v->semiring()), opt);
    } else if (id == "3") {
      r = check_theorem3(*v, opt);
    } else if (id == "3a") {
      r = check_theorem3a(*v, opt);
    } else if (id == "4") {
      r = check_theorem4(*v, source, opt);
    } else {
      r = check_theorem5(*v, opt);
    }
    auto rj = to_json(r);
    if (!first) first = rj;
    if (r.passed()) {
      ++held;
    } else if (failures.size() < 5) {
      rj["seed"] = seed;
      failures.push_back(std::move(rj));
    }
  }
  rep["instances_checked"] = runs;
  rep["instances_holding"] = held;
  rep["report"] = *first;
  if (!failures.empty()) rep["failures"] = std::move(failures);
  return held == runs ? kPass : kCheckFailed;
}

inline int cmd_demo_example7(const RunConfig& cfg, int window, json& rep) {
  auto w = example7_window(window);
  KernelOptions opt;
  opt.probes = cfg.probes;
  opt.seed = cfg.seed;
  auto k = max_kernel(w.functional.as_operator(), w.module, opt);
  const std::size_t origin = w.module.ground().index_of("0");
  rep["window"] = window;
  rep["probe_schedule"] = numbers(w.probe_schedule);
  rep["is_integral"] = k.verified;
  if (!k.verified) rep["failure"] = k.failure;
  if (k.witness_generator) rep["witness_generator"] = *k.witness_generator;
  rep["candidate_kernel_at_0"] = to_json(k.kernel(origin, 0));
  json bounds = json::array();
  bool decreasing = true;
  std::optional<Scalar> prev;
  for (double a : w.probe_schedule) {
    auto b = example7_kernel_bound(w, origin, a);
    if (prev && !(b.value() < prev->value())) decreasing = false;
    prev = b;
    bounds.push_back(json{{"a", to_json(Scalar(a))}, {"bound_at_0", to_json(b)}});
  }
  rep["kernel_upper_bounds"] = std::move(bounds);
  rep["bounds_decreasing"] = decreasing;
  const bool below = prev && prev->value() <= -window && k.kernel(origin, 0).value() <= -window;
  rep["bound_below_minus_n"] = below;
  return !k.verified && decreasing && below ? kPass : kCheckFailed;
}

inline int cmd_demo_concave(const RunConfig&, json& rep) {
  auto cg = concave_grid();
  auto h = concave_oplus(cg.f, cg.g, cg.coords);
  auto m = oplus(cg.f, cg.g);
  const std::size_t mid = cg.coords.size() / 2;
  rep["coordinates"] = numbers(cg.coords);
  rep["f"] = to_json(cg.f);
  rep["g"] = to_json(cg.g);
  rep["concave_oplus"] = to_json(h);
  rep["pointwise_max"] = to_json(m);
  rep["middle"] = json{{"concave_oplus", to_json(h[mid])}, {"pointwise_max", to_json(m[mid])}};
  const bool nonlinear = m[mid].value() < h[mid].value();
  rep["delta_middle_nonlinear"] = nonlinear;
  return nonlinear ? kPass : kCheckFailed;
}

inline int cmd_instance_build(const InstanceDescriptor& d, json& rep) {
  auto b = build(d);
  json j{{"name", b.name}};
  if (b.module) j["module"] = to_json(*b.module);
  if (b.semimetric) j["matrix"] = to_json(b.semimetric->matrix());
  if (b.matrix) j["matrix"] = to_json(*b.matrix);
  if (b.functional) j["functional"] = to_json(b.functional->as_operator());
  if (!b.vectors.empty()) {
    const auto& g = b.vectors.front().ground();
    j["ground_set"] = labels_json(g);
    j["coordinates"] = numbers(g.coordinates());
    json vs = json::array();
    for (const auto& v : b.vectors) vs.push_back(to_json(v));
    j["vectors"] = std::move(vs);
  }
  if (!b.probe_schedule.empty()) j["probe_schedule"] = numbers(b.probe_schedule);
  rep = std::move(j);
  return kPass;
}

}  // namespace detail

/// Runs one command. args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Idempotent kernel toolkit: closures, kernels, nuclear decompositions and theorem checks", "tropk"};
  app.require_subcommand(1);

  auto common = [&cfg](CLI::App* sub, bool randomized) {
    sub->add_option("--output", cfg.output, "Write the JSON report to this file");
    sub->add_option("--tolerance", cfg.tolerance, "Absolute tolerance on finite values (default exact)");
    sub->add_flag("--timing", cfg.timing, "Add elapsed time to the report");
    if (randomized) {
      sub->add_option("--seed", cfg.seed, "Seed for mt19937_64 (default $TROPK_SEED or 0)");
      sub->add_option("--trials", cfg.trials, "Instances per random family");
      sub->add_option("--probes", cfg.probes, "Random probes per verification");
    }
  };

  std::string matrix, edges, vector, module, op, id, demo_name, instance;
  bool identity = false;
  int window = 10;
  detail::TheoremInput tin;
  InstanceDescriptor desc;

  auto* validate = app.add_subcommand("validate-semimetric", "Check d = d (x) d");
  validate->add_option("--matrix", matrix, "Kernel JSON");
  validate->add_option("--edges", edges, "Edge list 'x y weight'");
  common(validate, false);

  auto* closure = app.add_subcommand("closure", "Least reflexive semimetric above a matrix");
  closure->add_option("--matrix", matrix, "Kernel JSON");
  closure->add_option("--edges", edges, "Edge list 'x y weight'");
  common(closure, false);

  auto* lip = app.add_subcommand("lip-project", "Project a vector onto lip(X, d)");
  lip->add_option("--matrix", matrix, "Semimetric JSON")->required();
  lip->add_option("--vector", vector, "Vector JSON")->required();
  common(lip, false);

  auto* mem = app.add_subcommand("membership", "Decide membership in a semimodule");
  mem->add_option("--module", module, "Semimodule JSON")->required();
  mem->add_option("--vector", vector, "Vector JSON")->required();
  common(mem, false);

  auto* mk = app.add_subcommand("max-kernel", "Maximal integral kernel of an operator");
  mk->add_option("--module", module, "Semimodule JSON")->required();
  mk->add_option("--operator", op, "Operator JSON");
  mk->add_flag("--identity", identity, "Use the identity V -> V");
  common(mk, true);

  auto* dec = app.add_subcommand("decompose", "Nuclear decomposition of the identity");
  dec->add_option("--module", module, "Semimodule JSON")->required();
  common(dec, true);

  auto* chk = app.add_subcommand("check-theorem", "Check a kernel theorem on an instance");
  chk->add_option("--id", id, "1, 2, 3, 3a, 4 or 5")->required();
  chk->add_option("--instance", tin.instance, "Instance file or built-in instance name")->required();
  chk->add_option("--size", tin.size, "Size for built-in instances");
  chk->add_option("--operator", tin.op, "Operator JSON (theorems 1 and 2)");
  common(chk, true);

  auto* demo = app.add_subcommand("demo", "Worked examples: example7, concave");
  demo->add_option("name", demo_name, "example7 or concave")->required()->check(CLI::IsMember({"example7", "concave"}));
  demo->add_option("--window", window, "Window half-width n for example7")->check(CLI::PositiveNumber);
  common(demo, true);

  auto* inst = app.add_subcommand("instance", "Instance files");
  inst->require_subcommand(1);
  auto* ib = inst->add_subcommand("build", "Build a named instance");
  ib->add_option("--name", desc.name, "Instance name")->required()->check(CLI::IsMember(instance_names()));
  ib->add_option("--size", desc.size, "Size parameter");
  ib->add_option("--coordinates", desc.coordinates, "Coordinates (concave-grid, metric-lipschitz)");
  ib->add_option("--out", cfg.output, "Output file");
  ib->add_option("--seed", desc.seed, "Seed for random instances");

  try {
    cfg.seed = default_seed();
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kPass : kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  json rep;
  int code = kPass;
  std::string command;
  try {
    auto* sub = app.get_subcommands().front();
    command = sub->get_name();
    if (sub == inst) {
      command = "instance build";
      code = detail::cmd_instance_build(desc, rep);
    } else {
      rep = detail::header(command, cfg);
      if (sub == validate) code = detail::cmd_validate(cfg, matrix, edges, rep);
      else if (sub == closure) code = detail::cmd_closure(cfg, matrix, edges, rep);
      else if (sub == lip) code = detail::cmd_lip_project(cfg, matrix, vector, rep);
      else if (sub == mem) code = detail::cmd_membership(cfg, module, vector, rep);
      else if (sub == mk) code = detail::cmd_max_kernel(cfg, module, op, identity, rep);
      else if (sub == dec) code = detail::cmd_decompose(cfg, module, rep);
      else if (sub == chk) code = detail::cmd_check_theorem(cfg, id, tin, rep);
      else if (demo_name == "example7") code = detail::cmd_demo_example7(cfg, window, rep);
      else code = detail::cmd_demo_concave(cfg, rep);
      rep["verdict"] = code == kPass ? "pass" : "fail";
    }
  } catch (const IntegrityError& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (cfg.timing)
    rep["elapsed_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  const std::string text = rep.dump(2) + "\n";
  if (cfg.output.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << cfg.output << "\n";
      return kUsage;
    }
    f << text;
  }
  return code;
}

}  // namespace tropk::cli
