// Deterministic verification suite over the theorem registry.
#ifndef TRUNCOP_HARNESS_HPP
#define TRUNCOP_HARNESS_HPP

#include <chrono>
#include <ostream>
#include <set>
#include <sstream>

#include "truncop/trials.hpp"

namespace truncop {

struct SuiteConfig {
  std::uint64_t seed = 0;
  int trials = 4;  // per theorem and mode
  SuiteSizes sizes;
  std::vector<std::string> theorems;  // ids or groups; empty selects all
  bool timing = false;
};

struct TrialRecord {
  std::string id;
  std::string mode;
  int index = 0;
  ProblemSpec spec;
  TrialOutcome outcome;
};

struct TheoremSummary {
  std::string id;
  std::string group;
  int trials = 0;
  int passed = 0;
  int failed = 0;
  int errors = 0;
  std::map<std::string, double> max_residuals;
};

struct SuiteReport {
  std::uint64_t seed = 0;
  std::vector<TrialRecord> records;
  std::vector<TheoremSummary> summaries;
  QuadratureStats quadrature;
  bool coverage_ok = true;
  std::optional<double> wall_clock_s;

  bool all_passed() const {
    if (!coverage_ok) return false;
    for (const TheoremSummary& t : summaries)
      if (t.failed > 0 || t.errors > 0) return false;
    return true;
  }
};

/// Entries whose id or group matches a filter; unknown filters are rejected.
inline std::vector<const TheoremEntry*> select_theorems(const std::vector<std::string>& filters) {
  std::vector<const TheoremEntry*> out;
  const auto& all = theorem_registry();
  for (const std::string& f : filters) {
    const bool known = std::any_of(all.begin(), all.end(), [&](const TheoremEntry& e) { return e.id == f || e.group == f; });
    if (!known) throw Error(ErrorKind::InvalidInput, "unknown theorem id or group '" + f + "'");
  }
  for (const TheoremEntry& e : all) {
    const bool hit = filters.empty() || std::any_of(filters.begin(), filters.end(),
                                                    [&](const std::string& f) { return e.id == f || e.group == f; });
    if (hit) out.push_back(&e);
  }
  return out;
}

inline std::uint64_t trial_seed(std::uint64_t seed, std::size_t id_index, std::size_t mode_index, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(id_index), static_cast<std::uint32_t>(mode_index),
                    static_cast<std::uint32_t>(trial)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

inline std::size_t registry_index(const std::string& id) {
  const auto& all = theorem_registry();
  for (std::size_t j = 0; j < all.size(); ++j)
    if (all[j].id == id) return j;
  throw Error(ErrorKind::InvalidInput, "unknown theorem id '" + id + "'");
}

inline void accumulate(TheoremSummary& t, const TrialOutcome& o) {
  ++t.trials;
  if (!o.error.empty()) ++t.errors;
  else if (o.pass) ++t.passed;
  else ++t.failed;
  for (const auto& [k, v] : o.residuals) {
    double& m = t.max_residuals[k];
    if (std::isfinite(v)) m = std::max(m, v);
  }
}

/// Runs the selected theorems; each trial is a pure function of (seed, id, mode, index).
inline SuiteReport run_suite(const SuiteConfig& cfg) {
  if (cfg.trials < 1) throw Error(ErrorKind::InvalidRange, "trials per mode must be positive");
  const auto start = std::chrono::steady_clock::now();
  reset_quadrature_stats();
  SuiteReport report;
  report.seed = cfg.seed;
  for (const TheoremEntry* e : select_theorems(cfg.theorems)) {
    TheoremSummary summary{e->id, e->group};
    const std::size_t id_index = registry_index(e->id);
    for (std::size_t m = 0; m < e->modes.size(); ++m) {
      for (int t = 0; t < cfg.trials; ++t) {
        TrialRecord r{e->id, e->modes[m], t};
        const std::uint64_t seed = trial_seed(cfg.seed, id_index, m, t);
        try {
          r.spec = e->build(seed, e->modes[m], cfg.sizes);
          r.spec.operation = e->id;
          r.spec.mode = e->modes[m];
          r.outcome = run_trial(r.spec);
        } catch (const Error& err) {
          r.spec.operation = e->id;
          r.spec.mode = e->modes[m];
          r.spec.seed = seed;
          r.outcome.pass = false;
          r.outcome.error = err.what();
          r.outcome.details["error_kind"] = to_string(err.kind());
        }
        accumulate(summary, r.outcome);
        report.records.push_back(std::move(r));
      }
    }
    if (summary.trials == 0) report.coverage_ok = false;
    report.summaries.push_back(std::move(summary));
  }
  report.quadrature = quadrature_stats();
  if (cfg.timing)
    report.wall_clock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

inline json residuals_json(const std::map<std::string, double>& r) {
  json out = json::object();
  for (const auto& [k, v] : r) out[k] = std::isfinite(v) ? json(v) : json(nullptr);
  return out;
}

inline json to_json(const TrialRecord& r) {
  json j = make_report(r.id, r.outcome.pass, r.outcome.alpha, r.outcome.residuals);
  j["kind"] = "trial";
  j["mode"] = r.mode;
  j["trial"] = r.index;
  j["seed"] = r.spec.seed;
  j["details"] = r.outcome.details;
  if (!r.outcome.error.empty()) {
    j["error"] = r.outcome.error;
  }
  if (!r.outcome.pass) j["problem"] = to_json(r.spec);
  return j;
}

inline json to_json(const TheoremSummary& t) {
  return {{"kind", "summary"}, {"test", t.id},       {"group", t.group},   {"trials", t.trials},
          {"passed", t.passed}, {"failed", t.failed}, {"errors", t.errors}, {"max_residuals", residuals_json(t.max_residuals)},
          {"verdict", t.trials > 0 && t.failed == 0 && t.errors == 0}};
}

inline json suite_line(const SuiteReport& r) {
  int trials = 0, failed = 0, errors = 0;
  for (const TheoremSummary& t : r.summaries) {
    trials += t.trials;
    failed += t.failed;
    errors += t.errors;
  }
  json j = {{"kind", "suite"},
            {"schema", kSchemaVersion},
            {"seed", r.seed},
            {"theorems", r.summaries.size()},
            {"trials", trials},
            {"failed", failed},
            {"errors", errors},
            {"coverage_ok", r.coverage_ok},
            {"quadrature", {{"calls", r.quadrature.calls}, {"max_nodes", r.quadrature.max_nodes_used},
                            {"total_nodes", r.quadrature.total_nodes}}},
            {"verdict", r.all_passed()}};
  if (r.wall_clock_s) j["wall_clock_s"] = *r.wall_clock_s;
  return j;
}

/// JSON lines: one per trial, one per theorem, then the suite line.
inline void write_json_lines(std::ostream& os, const SuiteReport& r) {
  for (const TrialRecord& t : r.records) os << to_json(t).dump() << '\n';
  for (const TheoremSummary& t : r.summaries) os << to_json(t).dump() << '\n';
  os << suite_line(r).dump() << '\n';
}

inline void write_text(std::ostream& os, const SuiteReport& r) {
  for (const TheoremSummary& t : r.summaries) {
    double worst = 0.0;
    for (const auto& [k, v] : t.max_residuals) worst = std::max(worst, v);
    os << (t.failed == 0 && t.errors == 0 && t.trials > 0 ? "PASS " : "FAIL ") << t.id << "  trials=" << t.trials
       << " passed=" << t.passed << " failed=" << t.failed << " errors=" << t.errors << " max_residual=" << worst << '\n';
  }
  os << (r.all_passed() ? "suite PASS" : "suite FAIL") << " seed=" << r.seed << " coverage_ok=" << std::boolalpha
     << r.coverage_ok << '\n';
}

}  // namespace truncop

#endif  // TRUNCOP_HARNESS_HPP
