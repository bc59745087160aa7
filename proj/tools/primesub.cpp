// Command-line front end: analyze, op, check, lattice, replay.
//
// Exit status: 0 success, 1 a check failed (or an internal inconsistency),
// 2 malformed input or an unsupported instance.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "primesub/harness/analyze.hpp"
#include "primesub/harness/runner.hpp"

using namespace primesub;
using namespace primesub::harness;

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

/// Inline JSON, or @path to read it from a file.
json json_arg(const std::string& text, const char* what) {
  if (text.empty()) throw InputError(std::string("missing --") + what);
  if (text[0] == '@') return read_json_file(text.substr(1));
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    throw FormatError(std::string("--") + what + " is not valid JSON: " + text);
  }
}

struct OpArgs {
  std::string name, module_file, ring;
  std::string sub, sub2, prime, ideal, ideal2, a, b, matrix, vector, kind;
};

template <EuclideanRing R>
json bezout_json(const R& ring, const Bezout<R>& e) {
  return {{"g", element_to_json(ring, e.g)}, {"u", element_to_json(ring, e.u)}, {"v", element_to_json(ring, e.v)}};
}

template <EuclideanRing R>
json factorization_json(const R& ring, const Factorization<ElementOf<R>>& f) {
  json fs = json::array();
  for (auto& [p, e] : f.factors) fs.push_back({{"factor", element_to_json(ring, p)}, {"exponent", e}});
  return {{"unit", element_to_json(ring, f.unit)}, {"factors", fs}};
}

IdealOp ideal_op_from_name(const std::string& s) {
  if (s == "product") return IdealOp::product;
  if (s == "sum") return IdealOp::sum;
  if (s == "intersection") return IdealOp::intersection;
  if (s == "radical") return IdealOp::radical_of_first;
  throw InputError("--kind must be product, sum, intersection or radical");
}

/// Operations that only need the ring; nullopt when `name` is not one of them.
template <EuclideanRing R>
std::optional<json> ring_op(const R& ring, const OpArgs& o) {
  auto elem = [&](const std::string& s, const char* what) { return element_from_json(ring, json_arg(s, what)); };
  auto mat = [&] {
    const json j = json_arg(o.matrix, "matrix");
    const std::size_t cols = j.is_array() && !j.empty() && j[0].is_array() ? j[0].size() : 0;
    return matrix_from_json(ring, j, cols);
  };
  const auto& n = o.name;
  if (n == "euclid") {
    const auto x = elem(o.a, "a"), y = elem(o.b, "b");
    if (ring.is_zero(x) && ring.is_zero(y)) throw InputError("euclid needs a nonzero argument");
    return bezout_json(ring, euclid(ring, x, y));
  }
  if (n == "factor") {
    const auto x = elem(o.a, "a");
    if (ring.is_zero(x)) throw InputError("cannot factor zero");
    return factorization_json(ring, factor(ring, x));
  }
  if (n == "is_prime_ideal") return json(is_prime_ideal(ring, ideal_from_json(ring, json_arg(o.ideal, "ideal"))));
  if (n == "ideal_ops") {
    const auto I = ideal_from_json(ring, json_arg(o.ideal, "ideal"));
    const auto J = o.ideal2.empty() ? I : ideal_from_json(ring, json_arg(o.ideal2, "ideal2"));
    return ideal_to_json(ring, ideal_ops(ring, ideal_op_from_name(o.kind), I, J));
  }
  if (n == "hnf") {
    const auto h = hermite_normal_form(mat());
    return json{{"H", matrix_to_json(h.H)}, {"T", matrix_to_json(h.T)}, {"pivot_cols", h.pivot_cols}};
  }
  if (n == "snf") {
    const auto s = smith_normal_form(mat());
    return json{{"U", matrix_to_json(s.U)}, {"S", matrix_to_json(s.S)}, {"V", matrix_to_json(s.V)}, {"rank", s.rank}};
  }
  if (n == "kernel") return matrix_to_json(kernel(mat()));
  if (n == "solve") {
    const auto x = solve_membership(mat(), vector_from_json(ring, json_arg(o.vector, "vector")));
    return x ? vector_to_json(ring, *x) : json(nullptr);
  }
  if (n == "determinant") return element_to_json(ring, determinant(mat()));
  return std::nullopt;
}

template <EuclideanRing R>
json certs_json(const R& ring, const std::vector<PrimeSubmoduleCert<R>>& cs) {
  json a = json::array();
  for (auto& c : cs) a.push_back({{"submodule", submodule_to_json(c.submodule)}, {"prime", prime_to_json(ring, c.witness_prime)}});
  return a;
}

template <EuclideanRing R>
json entries_json(const R& ring, const std::vector<PrimeSubmoduleEntry<R>>& es) {
  json a = json::array();
  for (auto& e : es) a.push_back({{"submodule", submodule_to_json(e.submodule)}, {"witnesses", primes_to_json(ring, e.witnesses)}});
  return a;
}

template <EuclideanRing R>
json module_op(const FPModule<R>& M, const OpArgs& o) {
  const R& ring = M.ring();
  if (auto r = ring_op(ring, o)) return *r;
  auto sub = [&](const std::string& s, const char* what) { return submodule_from_json(M, json_arg(s, what)); };
  auto prime = [&] { return prime_from_json(ring, json_arg(o.prime, "prime")); };
  auto id = [&] { return ideal_from_json(ring, json_arg(o.ideal, "ideal")); };
  const auto& n = o.name;

  if (n == "build" || n == "invariants") {
    json out = module_to_json(M);
    out.update(invariants_to_json(M));
    return out;
  }
  if (n == "submodule") return submodule_to_json(sub(o.sub, "sub"));
  if (n == "sum") return submodule_to_json(submodule_sum(sub(o.sub, "sub"), sub(o.sub2, "sub2")));
  if (n == "intersection") return submodule_to_json(submodule_intersection(sub(o.sub, "sub"), sub(o.sub2, "sub2")));
  if (n == "ideal_times") {
    if (o.sub.empty()) return submodule_to_json(ideal_times_module(id(), M));
    return submodule_to_json(ideal_times_submodule(id(), sub(o.sub, "sub")));
  }
  if (n == "colon") return ideal_to_json(ring, colon_ideal(sub(o.sub, "sub")));
  if (n == "annihilator") return ideal_to_json(ring, annihilator(M));
  if (n == "torsion") return submodule_to_json(torsion_submodule(M));
  if (n == "quotient") {
    const auto q = quotient_module(M, sub(o.sub, "sub"));
    json out = module_to_json(q.quotient);
    out.update(invariants_to_json(q.quotient));
    return out;
  }
  if (n == "length") {
    const auto lc = length_and_class(M);
    return {{"finite_length", lc.finite_length},
            {"length", lc.length ? json(*lc.length) : json(nullptr)},
            {"noetherian", lc.noetherian},
            {"artinian", lc.artinian}};
  }
  if (n == "supp_ring") {
    const auto s = supp_ring(M);
    return {{"cofinite", s.cofinite}, {"primes", primes_to_json(ring, s.primes)}, {"minimal", primes_to_json(ring, s.minimal)}};
  }
  if (n == "ass_ring") return primes_to_json(ring, ass_ring(M));
  if (n == "m_of_p") return submodule_to_json(m_of_p(M, prime()));
  if (n == "ass_p") return entries_json(ring, ass_p(M));
  if (n == "supp_p") {
    const auto s = supp_p(M);
    return {{"minimal_only", s.minimal_only}, {"entries", entries_json(ring, s.entries)}};
  }
  if (n == "is_prime_submodule") {
    const auto c = is_prime_submodule(sub(o.sub, "sub"));
    return c ? json{{"prime", true}, {"witness", prime_to_json(ring, c->witness_prime)}} : json{{"prime", false}};
  }
  if (n == "is_primary_submodule") {
    const auto c = is_primary_submodule(sub(o.sub, "sub"));
    return c ? json{{"primary", true}, {"associated_prime", prime_to_json(ring, c->associated_prime)}} : json{{"primary", false}};
  }
  if (n == "primary_decomposition_zero") {
    json d = json::array();
    for (auto& c : primary_decomposition_zero(M).components)
      d.push_back({{"submodule", submodule_to_json(c.submodule)}, {"prime", prime_to_json(ring, c.associated_prime)}});
    return d;
  }
  if (n == "m_radical") return submodule_to_json(m_radical(o.sub.empty() ? zero_submodule(M) : sub(o.sub, "sub")));
  if (n == "is_multiplication") return is_multiplication(M);
  if (n == "is_quasi_multiplication") return is_quasi_multiplication(M);
  if (n == "is_weak_multiplication") {
    const auto w = is_weak_multiplication(M, true);
    return {{"value", w.value}, {"exhaustive", w.exhaustive}};
  }
  if (n == "minimal_prime_submodules") return certs_json(ring, minimal_prime_submodules(M));
  if (n == "minimal_elements_of_spec") return certs_json(ring, minimal_elements_of_spec(M));
  if (n == "is_maximal_submodule") return is_maximal_submodule(sub(o.sub, "sub"));
  if (n == "localize") {
    const auto L = localize(M, prime());
    json f = json::array();
    for (auto& d : L.local_invariant_factors) f.push_back(element_to_json(ring, d));
    return {{"prime", prime_to_json(ring, L.base_prime)},
            {"local_invariant_factors", f},
            {"free_rank", L.free_rank},
            {"ass_ring", primes_to_json(ring, ass_ring_localized(L))},
            {"ass_p", submodules_to_json(ass_p_localized(L))}};
  }
  if (n == "classify") return analyze(M)["classification"];
  throw InputError("unknown operation \"" + n + "\"");
}

int run_op(const OpArgs& o) {
  json out;
  if (!o.module_file.empty()) {
    const AnyModule M = module_from_json(read_json_file(o.module_file));
    out = std::visit([&](const auto& m) { return module_op(m, o); }, M);
  } else {
    if (o.ring.empty()) throw InputError("op needs -m <module.json> or --ring");
    const auto result = std::visit([&](const auto& r) { return ring_op(r, o); }, ring_from_json(json_arg(o.ring, "ring")));
    if (!result) throw InputError("operation \"" + o.name + "\" needs a module (-m)");
    out = *result;
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

std::vector<std::string> split_ids(const std::string& s) {
  std::vector<std::string> ids;
  std::stringstream ss(s);
  for (std::string id; std::getline(ss, id, ',');)
    if (!id.empty()) ids.push_back(id);
  return ids;
}

int run_replay(const std::string& file) {
  const json payload = read_json_file(file);
  const Verdict v = replay(payload);
  std::cout << json{{"check", payload.at("check")}, {"applicable", v.applicable}, {"passed", v.passed}, {"detail", v.detail}}.dump(2)
            << "\n";
  return v.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prime submodules of finitely presented modules over Z and F_p[x]"};
  app.require_subcommand(1);

  std::string module_file;
  auto* analyze_cmd = app.add_subcommand("analyze", "Full JSON report for one module");
  analyze_cmd->add_option("-m,--module", module_file, "module JSON file")->required();

  OpArgs op;
  auto* op_cmd = app.add_subcommand("op", "Run a single library operation");
  op_cmd->add_option("name", op.name,
                     "operation name. Ring: euclid factor is_prime_ideal ideal_ops hnf snf kernel solve determinant. "
                     "Module: build invariants submodule sum intersection ideal_times colon annihilator torsion quotient "
                     "length supp_ring ass_ring m_of_p ass_p supp_p is_prime_submodule is_primary_submodule "
                     "primary_decomposition_zero m_radical is_multiplication is_quasi_multiplication "
                     "is_weak_multiplication minimal_prime_submodules minimal_elements_of_spec is_maximal_submodule "
                     "localize classify")
      ->required();
  op_cmd->add_option("-m,--module", op.module_file, "module JSON file");
  op_cmd->add_option("--ring", op.ring, "ring JSON for ring-only operations");
  op_cmd->add_option("--sub", op.sub, "submodule generators (JSON or @file)");
  op_cmd->add_option("--sub2", op.sub2, "second submodule");
  op_cmd->add_option("--prime", op.prime, "prime ideal, e.g. '{\"gen\":\"3\"}' or '{\"zero\":true}'");
  op_cmd->add_option("--ideal", op.ideal, "principal ideal");
  op_cmd->add_option("--ideal2", op.ideal2, "second principal ideal");
  op_cmd->add_option("--a", op.a, "ring element");
  op_cmd->add_option("--b", op.b, "ring element");
  op_cmd->add_option("--matrix", op.matrix, "matrix as JSON rows");
  op_cmd->add_option("--vector", op.vector, "row vector");
  op_cmd->add_option("--kind", op.kind, "ideal_ops kind: product|sum|intersection|radical");

  RunOptions run;
  bool all = false;
  std::string only, report_file, replay_file, implementation = "none";
  auto* check_cmd = app.add_subcommand("check", "Run the theorem and oracle checks on random modules");
  auto* all_flag = check_cmd->add_flag("--all", all, "run every check");
  check_cmd->add_option("--only", only, "comma separated check ids")->excludes(all_flag);
  check_cmd->add_option("--trials", run.config.trials)->capture_default_str();
  check_cmd->add_option("--seed", run.config.seed)->capture_default_str();
  check_cmd->add_option("--max-order", run.config.max_order)->capture_default_str();
  check_cmd->add_option("--max-rank", run.config.max_rank)->capture_default_str();
  check_cmd->add_option("--jobs", run.jobs, "worker threads")->capture_default_str();
  check_cmd->add_option("--implementation", implementation, "none or a mutation name")->capture_default_str();
  check_cmd->add_option("--out-dir", run.out_dir, "directory for failure files")->default_str("failures");
  check_cmd->add_option("--report", report_file, "also write the report here");
  check_cmd->add_option("--replay", replay_file, "re-run a failure file instead");
  run.out_dir = "failures";

  std::string dot_file;
  auto* lattice_cmd = app.add_subcommand("lattice", "Submodule lattice of a finite module as DOT");
  lattice_cmd->add_option("-m,--module", module_file, "module JSON file")->required();
  lattice_cmd->add_option("--dot", dot_file, "output file, - for stdout")->required();

  auto* replay_cmd = app.add_subcommand("replay", "Re-run the check recorded in a failure file");
  replay_cmd->add_option("file", replay_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*analyze_cmd) {
      std::cout << analyze(module_from_json(read_json_file(module_file))).dump(2) << "\n";
      return 0;
    }
    if (*op_cmd) return run_op(op);
    if (*replay_cmd) return run_replay(replay_file);
    if (*lattice_cmd) {
      const std::string dot = emit_lattice(module_from_json(read_json_file(module_file)));
      if (dot_file == "-") {
        std::cout << dot;
      } else {
        std::ofstream os(dot_file);
        if (!os) throw InputError("cannot write " + dot_file);
        os << dot;
      }
      return 0;
    }
    if (*check_cmd) {
      if (!replay_file.empty()) return run_replay(replay_file);
      run.mutation = mutation_from_name(implementation);
      if (all) {
        run.checks = all_check_ids();
      } else {
        run.checks = split_ids(only);
        if (run.checks.empty()) std::cerr << "warning: no checks selected, nothing to run\n";
      }
      const RunResult res = run_checks(run);
      const std::string text = report_json(run, res).dump(2) + "\n";
      std::cout << text;
      if (!report_file.empty()) std::ofstream(report_file) << text;
      constexpr std::size_t kListed = 20;
      for (std::size_t i = 0; i < res.failures.size() && i < kListed; ++i)
        std::cerr << "FAIL " << res.failures[i].check << " trial " << res.failures[i].trial << " -> " << run.out_dir << "/"
                  << res.failures[i].file_name() << "\n";
      if (res.failures.size() > kListed) std::cerr << "... and " << res.failures.size() - kListed << " more failures\n";
      return res.all_passed() ? 0 : 1;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedInstance& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 2;
  } catch (const SizeError& e) {
    std::cerr << "too large: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
