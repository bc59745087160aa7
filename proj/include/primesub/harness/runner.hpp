#pragma once

// Runs the selected checks over seeded trials, optionally on several
// threads, and aggregates them into a report that depends only on the
// configuration: results are stored by trial index and emitted sorted by
// (check id, trial).

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <thread>

#include "primesub/harness/checks.hpp"

namespace primesub::harness {

struct RunOptions {
  TrialConfig config;
  std::vector<std::string> checks;  // ids to run; empty runs nothing
  Mutation mutation = Mutation::none;
  std::size_t jobs = 1;
  std::string out_dir;  // failure files go here when non-empty
};

inline std::vector<std::string> all_check_ids() {
  std::vector<std::string> ids;
  for (auto& c : check_catalog()) ids.push_back(c.id);
  return ids;
}

struct Failure {
  std::string check;
  std::size_t trial = 0;
  json payload;  // self-contained: replayable without the configuration

  std::string file_name() const { return check + "__trial" + std::to_string(trial) + ".json"; }
};

struct CheckTally {
  std::string id;
  std::size_t applicable = 0, passed = 0, failed = 0;
  std::vector<std::size_t> failed_trials;
};

struct RunResult {
  std::vector<CheckTally> tallies;
  std::vector<Failure> failures;
  json exploration = json::array();
  std::map<std::string, std::size_t> kinds;
  std::size_t finite_instances = 0;
  std::size_t lattice_instances = 0;

  bool all_passed() const { return failures.empty(); }
  const CheckTally* tally(const std::string& id) const {
    for (auto& t : tallies)
      if (t.id == id) return &t;
    return nullptr;
  }
};

namespace detail {

struct TrialRecord {
  std::string kind;
  bool finite = false;
  bool lattice = false;
  json module;
  std::vector<Verdict> verdicts;  // parallel to RunOptions::checks
};

template <EuclideanRing R>
void evaluate(const FPModule<R>& M, const RunOptions& opt, std::uint64_t seed, TrialRecord& rec) {
  Context<R> ctx(M, opt.mutation, seed);
  for (auto& id : opt.checks) rec.verdicts.push_back(run_check(id, ctx));
  rec.finite = M.is_finite() && !M.is_zero();
  rec.lattice = rec.finite && ctx.lattice() != nullptr;
}

inline TrialRecord run_trial(const RunOptions& opt, std::size_t index) {
  TrialRecord rec;
  const auto inst = random_module(opt.config, index);
  rec.kind = kind_name(inst.kind);
  rec.module = any_module_to_json(inst.module);
  std::visit([&](const auto& M) { evaluate(M, opt, opt.config.seed + index, rec); }, inst.module);
  return rec;
}

/// Non-multiplication modules on which T2.9's conclusion is observed, not asserted.
inline std::vector<std::pair<std::string, AnyModule>> exploration_corpus() {
  IntegerRing Z;
  PolyRing F2(2);
  auto zdiag = [&](std::vector<long long> d) {
    std::vector<Integer> v;
    for (auto x : d) v.emplace_back(x);
    return AnyModule(FPModule<IntegerRing>::diagonal(Z, v));
  };
  return {
      {"Z/2 + Z/2", zdiag({2, 2})},
      {"Z + Z/2", zdiag({2, 0})},
      {"Z/2 + Z/4", zdiag({2, 4})},
      {"Z + Z", zdiag({0, 0})},
      {"Z/3 + Z/9", zdiag({3, 9})},
      {"F2[x]/(x) + F2[x]/(x)", AnyModule(FPModule<PolyRing>::diagonal(F2, {F2.monomial(1), F2.monomial(1)}))},
  };
}

template <EuclideanRing R>
json explore_t2_9(const std::string& name, const FPModule<R>& M) {
  std::vector<Submodule<R>> rads;
  for (auto& comp : primary_decomposition_zero(M).components) rads.push_back(m_radical_general(comp.submodule));
  rads = as_set(rads);
  const auto ap = as_set(submodules_of(ass_p(M)));
  const bool equal = rads == ap;
  return {{"module", name},
          {"presentation", module_to_json(M)},
          {"multiplication", is_multiplication(M)},
          {"radicals_of_components", submodules_to_json(rads)},
          {"ass_p", submodules_to_json(ap)},
          {"equal", equal},
          {"outcome", equal ? "conclusion holds" : "hypothesis necessary (expected)"}};
}

}  // namespace detail

inline void validate(const RunOptions& opt) {
  if (opt.config.trials < 1) throw InputError("trials must be at least 1");
  if (opt.config.max_order < 2 || opt.config.max_order > kOracleMaxOrder)
    throw InputError("max-order must lie in [2, " + std::to_string(kOracleMaxOrder) + "]");
  if (opt.config.max_rank < 1 || opt.config.max_rank > 6) throw InputError("max-rank must lie in [1, 6]");
  for (auto& id : opt.checks)
    if (!is_known_check(id)) throw InputError("unknown check \"" + id + "\"");
}

inline RunResult run_checks(const RunOptions& opt) {
  validate(opt);
  const std::size_t n = opt.config.trials;
  std::vector<detail::TrialRecord> records(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < n;) records[i] = detail::run_trial(opt, i);
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(opt.jobs, n));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  RunResult out;
  std::vector<std::string> ids = opt.checks;
  std::vector<std::size_t> order(ids.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return ids[a] < ids[b]; });
  for (auto k : order) {
    CheckTally t;
    t.id = ids[k];
    for (std::size_t i = 0; i < n; ++i) {
      const Verdict& v = records[i].verdicts[k];
      if (!v.applicable) continue;
      ++t.applicable;
      if (v.passed) {
        ++t.passed;
        continue;
      }
      ++t.failed;
      t.failed_trials.push_back(i);
      out.failures.push_back({ids[k], i,
                              {{"check", ids[k]},
                               {"trial", i},
                               {"seed", opt.config.seed + i},
                               {"implementation", mutation_name(opt.mutation)},
                               {"module", records[i].module},
                               {"detail", v.detail}}});
    }
    out.tallies.push_back(std::move(t));
  }
  for (auto& r : records) {
    ++out.kinds[r.kind];
    out.finite_instances += r.finite;
    out.lattice_instances += r.lattice;
  }
  if (std::find(ids.begin(), ids.end(), "T2.9") != ids.end())
    for (auto& [name, M] : detail::exploration_corpus())
      out.exploration.push_back(std::visit([&](const auto& m) { return detail::explore_t2_9(name, m); }, M));

  if (!opt.out_dir.empty() && !out.failures.empty()) {
    std::filesystem::create_directories(opt.out_dir);
    for (auto& f : out.failures) {
      std::ofstream os(std::filesystem::path(opt.out_dir) / f.file_name());
      os << f.payload.dump(2) << "\n";
    }
  }
  return out;
}

inline json report_json(const RunOptions& opt, const RunResult& res) {
  json checks = json::array();
  for (auto& t : res.tallies) {
    std::string statement;
    for (auto& c : check_catalog())
      if (c.id == t.id) statement = c.statement;
    checks.push_back({{"id", t.id},
                      {"statement", statement},
                      {"applicable", t.applicable},
                      {"passed", t.passed},
                      {"failed", t.failed},
                      {"failed_trials", t.failed_trials}});
  }
  json failures = json::array();
  for (auto& f : res.failures) failures.push_back({{"check", f.check}, {"trial", f.trial}, {"file", f.file_name()}});
  json kinds = json::object();
  for (auto& [k, v] : res.kinds) kinds[k] = v;
  return {{"config",
           {{"seed", opt.config.seed},
            {"trials", opt.config.trials},
            {"max_order", opt.config.max_order},
            {"max_rank", opt.config.max_rank},
            {"int_weight", opt.config.int_weight},
            {"poly_weight", opt.config.poly_weight},
            {"implementation", mutation_name(opt.mutation)}}},
          {"instances",
           {{"total", opt.config.trials},
            {"finite_nonzero", res.finite_instances},
            {"with_lattice", res.lattice_instances},
            {"by_kind", kinds}}},
          {"checks", checks},
          {"failures", failures},
          {"exploration", res.exploration},
          {"status", res.all_passed() ? "pass" : "fail"}};
}

/// Re-runs the check recorded in a failure file.
inline Verdict replay(const json& payload) {
  for (const char* key : {"check", "seed", "module"})
    if (!payload.contains(key)) throw FormatError(std::string("failure file is missing \"") + key + "\"");
  const auto id = payload.at("check").get<std::string>();
  if (!is_known_check(id)) throw FormatError("unknown check \"" + id + "\"");
  const auto mutation = mutation_from_name(payload.value("implementation", std::string("none")));
  const auto seed = payload.at("seed").get<std::uint64_t>();
  const AnyModule M = module_from_json(payload.at("module"));
  return std::visit(
      [&](const auto& m) {
        Context<typename std::decay_t<decltype(m)>::Ring> ctx(m, mutation, seed);
        return run_check(id, ctx);
      },
      M);
}

}  // namespace primesub::harness
