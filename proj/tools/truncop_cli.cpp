// Command-line front end: build-op, classify, product-test, clark, verify-suite.
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "truncop/truncop.hpp"

namespace {

using namespace truncop;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  double tol = kMembershipTol;
  std::size_t quad_cap = 65536;
  double quad_tol = 1e-12;
  std::uint64_t seed = 0;
  bool json_output = false;
};

/// Argument text, or the contents of the file when written as @path.
std::string read_arg(const std::string& text) {
  if (text.empty() || text[0] != '@') return text;
  std::ifstream in(text.substr(1));
  if (!in) throw UsageError("cannot read '" + text.substr(1) + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(read_arg(text));
  } catch (const json::exception& e) {
    throw UsageError("malformed " + what + " JSON: " + e.what());
  }
}

std::string format_complex(cplx z) {
  std::ostringstream os;
  os << std::setprecision(12);
  if (std::abs(z.imag()) <= 1e-14 * std::max(1.0, std::abs(z))) {
    os << (std::abs(z.real()) < 1e-15 ? 0.0 : z.real());
  } else {
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  }
  return os.str();
}

std::string format_matrix(const Matrix& m) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out += i ? ",[" : "[";
    for (Eigen::Index k = 0; k < m.cols(); ++k) out += (k ? "," : "") + format_complex(m(i, k));
    out += "]";
  }
  return out + "]";
}

std::string format_extended(const std::optional<ExtendedScalar>& a) {
  if (!a) return "none";
  return a->is_infinite() ? "inf" : format_complex(a->value());
}

// ---------------------------------------------------------------------------
// Operator construction shared by build-op and classify

struct OperatorArgs {
  std::string op;
  std::string u;
  std::string v;
  std::string symbol;
  std::string alpha;
  std::string c;
  std::string spec;
};

void add_operator_options(CLI::App* cmd, OperatorArgs& a) {
  cmd->add_option("--op", a.op, "tto | tho | sedlock | calculus | clark | shift | dee | conj-c | conj-u | identity");
  cmd->add_option("--u", a.u, "domain inner function: JSON, zN shorthand, or @file");
  cmd->add_option("--v", a.v, "codomain inner function (defaults to u; hat(u) for conj-u)");
  cmd->add_option("--symbol", a.symbol, "RationalSymbol JSON or @file");
  cmd->add_option("--alpha", a.alpha, "class parameter re,im or inf");
  cmd->add_option("--c", a.c, "additive constant re,im for sedlock");
  cmd->add_option("--spec", a.spec, "ProblemSpec JSON or @file supplying u, v, phi, alpha, c");
}

OperatorMatrix build_operator(const OperatorArgs& a) {
  ProblemSpec spec;
  if (!a.spec.empty()) spec = problem_spec_from_json(parse_json(a.spec, "problem spec"));
  std::string op = a.op;
  if (op.empty()) op = spec.mode;
  if (op.empty()) throw UsageError("--op is required");
  if (!a.u.empty()) spec.set_inner("u", inner_from_text(read_arg(a.u)));
  if (!a.v.empty()) spec.set_inner("v", inner_from_text(read_arg(a.v)));
  if (!a.symbol.empty()) spec.symbols.insert_or_assign("phi", symbol_from_text(read_arg(a.symbol)));
  if (!a.alpha.empty()) spec.params["alpha"] = extended_from_string(a.alpha);
  if (!a.c.empty()) spec.params["c"] = complex_from_string(a.c);
  if (!spec.inner.count("u")) throw UsageError("--u is required");
  const SpacePtr ku = spec.space("u");
  const SpacePtr kv = spec.inner.count("v") ? spec.space("v") : ku;
  auto need_symbol = [&]() -> const RationalSymbol& {
    if (!spec.symbols.count("phi")) throw UsageError("--symbol is required for --op " + op);
    return spec.symbol("phi");
  };
  auto need_alpha = [&]() -> ExtendedScalar {
    if (!spec.has_param("alpha")) throw UsageError("--alpha is required for --op " + op);
    return spec.xparam("alpha");
  };
  if (op == "tto") return tto_matrix(ku, kv, need_symbol());
  if (op == "tho") return tho_matrix(ku, kv, need_symbol());
  if (op == "sedlock") {
    const cplx c = spec.has_param("c") ? spec.param("c") : cplx(0.0, 0.0);
    return sedlock_op(project(ku, need_symbol()), need_alpha(), c);
  }
  if (op == "calculus") return functional_calculus(ku, need_alpha(), need_symbol());
  if (op == "clark") {
    const ExtendedScalar alpha = need_alpha();
    if (alpha.is_infinite()) throw UsageError("clark perturbation needs a finite alpha");
    return clark_perturbation(ku, alpha.value());
  }
  if (op == "shift") return shift(ku);
  if (op == "dee") return dee(ku);
  if (op == "conj-c") return conjugation_C_op(ku);
  if (op == "conj-u") return conjugation_U_op(ku, spec.inner.count("v") ? kv : hat_space(ku));
  if (op == "identity") return identity(ku);
  throw UsageError("unknown --op '" + op + "'");
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_build_op(const GlobalOptions& g, const OperatorArgs& a) {
  const OperatorMatrix op = build_operator(a);
  if (g.json_output) {
    std::cout << to_json(op).dump() << '\n';
  } else {
    std::cout << "domain degree " << op.domain()->size() << ", codomain degree " << op.codomain()->size()
              << (op.antilinear() ? ", antilinear" : "") << '\n'
              << format_matrix(op.matrix()) << '\n';
  }
  return kExitOk;
}

int cmd_classify(const GlobalOptions& g, const OperatorArgs& a, const std::string& operator_text) {
  const OperatorMatrix op = operator_text.empty() ? build_operator(a) : operator_from_json(parse_json(operator_text, "operator"));
  json out = {{"schema", kSchemaVersion}};
  const TtoMembership t = is_tto(op, g.tol);
  out["tto"] = {{"member", t.member}, {"displacement", t.displacement_residual}, {"rebuild", t.rebuild_residual}};
  if (t.member) out["tto"]["symbol"] = to_json(tto_symbol(t));
  const ThoMembership h = is_tho(op, g.tol);
  out["tho"] = {{"member", h.member}, {"displacement", h.displacement_residual}, {"rebuild", h.rebuild_residual}};
  if (h.member) out["tho"]["symbol"] = to_json(tho_symbol(h));
  if (t.member && same_space(*op.domain(), *op.codomain()) && !op.antilinear()) {
    const SedlockReport r = sedlock_class(op);
    out["sedlock"] = {{"membership", to_string(r.membership)},
                      {"alpha", r.membership == Membership::Finite || r.membership == Membership::Infinite ? to_json(r.alpha) : json(nullptr)},
                      {"commutator", r.commutator_residual}};
  }
  if (g.json_output) {
    std::cout << out.dump() << '\n';
  } else {
    std::cout << "TTO: " << (t.member ? "yes" : "no") << " (displacement " << t.displacement_residual << ")\n"
              << "THO: " << (h.member ? "yes" : "no") << " (displacement " << h.displacement_residual << ")\n";
    if (out.contains("sedlock"))
      std::cout << "class: " << out["sedlock"]["membership"].get<std::string>() << " alpha " << out["sedlock"]["alpha"].dump() << '\n';
  }
  return kExitOk;
}

json outcome_json(const std::string& id, const ProblemSpec& spec, const TrialOutcome& o) {
  TrialRecord r{id, spec.mode, 0, spec, o};
  json j = to_json(r);
  j.erase("kind");
  j.erase("trial");
  return j;
}

void print_outcome_text(const std::string& id, const ProblemSpec& spec, const TrialOutcome& o) {
  std::cout << (o.pass ? "PASS " : "FAIL ") << id << " mode=" << spec.mode << " alpha=" << format_extended(o.alpha) << '\n';
  for (const auto& [k, v] : o.residuals) std::cout << "  " << k << " = " << v << '\n';
  for (const auto& [k, v] : o.details.items()) std::cout << "  " << k << ": " << v.dump() << '\n';
  if (!o.error.empty()) std::cout << "  error: " << o.error << '\n';
}

/// Applies a theorem's criterion directly to two supplied operators.
TrialOutcome test_supplied(const std::string& id, const OperatorMatrix& x, const OperatorMatrix& y, double tol) {
  TrialOutcome out;
  if (id == "atto-product") {
    trials::record_verdict(out, atto_product_test(x, y, tol));
  } else if (id == "tho-product-toeplitz" || id == "tho-product-classes") {
    trials::record_verdict(out, tho_product_tto_test(x, y, tol));
  } else if (id == "mixed-product" || id == "mixed-product-classes") {
    trials::record_verdict(out, mixed_product_test(x, y, Order::AB, tol));
  } else if (id == "mixed-product-reversed") {
    trials::record_verdict(out, mixed_product_test(x, y, Order::BA, tol));
  } else if (id == "tho-zero-product") {
    trials::record_zero_report(out, zero_product_analysis(x, y, tol), "supplied");
  } else if (id == "atho-zero-product") {
    trials::record_zero_report(out, atho_zero_product_analysis(x, y, tol).report, "supplied");
  } else {
    throw UsageError("theorem '" + id + "' takes a --spec; supplied operators work for atto-product, tho-product-*, "
                     "mixed-product*, tho-zero-product and atho-zero-product");
  }
  return out;
}

struct ProductArgs {
  std::string theorem;
  std::string spec;
  std::string mode = "forward";
  std::string first;
  std::string second;
};

int cmd_product_test(const GlobalOptions& g, const ProductArgs& a) {
  if (a.theorem.empty()) throw UsageError("--theorem is required");
  const TheoremEntry& entry = find_theorem(a.theorem);
  ProblemSpec spec;
  TrialOutcome o;
  if (!a.first.empty() || !a.second.empty()) {
    if (a.first.empty() || a.second.empty()) throw UsageError("--first and --second go together");
    spec.operation = entry.id;
    spec.mode = "supplied";
    const OperatorMatrix x = operator_from_json(parse_json(a.first, "operator"));
    const OperatorMatrix y = operator_from_json(parse_json(a.second, "operator"));
    const ScopedQuadrature guard({1024, g.quad_cap, g.quad_tol, 0});
    o = test_supplied(entry.id, x, y, g.tol);
  } else {
    if (!a.spec.empty()) {
      spec = problem_spec_from_json(parse_json(a.spec, "problem spec"));
      if (spec.operation != entry.id) throw UsageError("problem spec operation '" + spec.operation + "' does not match --theorem");
    } else {
      if (std::find(entry.modes.begin(), entry.modes.end(), a.mode) == entry.modes.end())
        throw UsageError("theorem '" + entry.id + "' has no mode '" + a.mode + "'");
      SuiteSizes sizes;
      sizes.tol = g.tol;
      sizes.quad_cap = g.quad_cap;
      sizes.quad_tol = g.quad_tol;
      spec = entry.build(g.seed, a.mode, sizes);
      spec.operation = entry.id;
      spec.mode = a.mode;
    }
    o = run_trial(spec);
  }
  if (g.json_output) std::cout << outcome_json(entry.id, spec, o).dump() << '\n';
  else print_outcome_text(entry.id, spec, o);
  return o.pass ? kExitOk : kExitFailure;
}

int cmd_clark(const GlobalOptions& g, const std::string& u_text, const std::string& alpha_text) {
  if (u_text.empty() || alpha_text.empty()) throw UsageError("--u and --alpha are required");
  const InnerFunction u = inner_from_text(read_arg(u_text));
  const cplx alpha = complex_from_string(alpha_text);
  const ClarkData d = clark_points(u, alpha);
  if (g.json_output) {
    json points = json::array(), values = json::array();
    for (cplx z : d.points) points.push_back(complex_to_json(z));
    for (cplx z : d.u_values) values.push_back(complex_to_json(z));
    std::cout << json{{"alpha", complex_to_json(d.alpha)}, {"points", points}, {"weights", d.weights}, {"u_values", values}}.dump()
              << '\n';
  } else {
    std::cout << "alpha " << format_complex(d.alpha) << '\n';
    for (std::size_t j = 0; j < d.points.size(); ++j)
      std::cout << "  point " << format_complex(d.points[j]) << "  weight " << std::setprecision(12) << d.weights[j] << '\n';
  }
  return kExitOk;
}

struct SuiteArgs {
  std::vector<std::string> theorems;
  int trials = 4;
  int degree_max = 4;
  int symbol_degree_max = 3;
  bool timing = false;
  std::string replay;
};

/// Replays every failing trial (or bare ProblemSpec) in a JSON-lines file.
int replay_file(const GlobalOptions& g, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::string line;
  int replayed = 0, failed = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = parse_json(line, "replay line");
    json problem;
    if (j.contains("problem")) problem = j.at("problem");
    else if (j.value("schema", std::string()) == kSchemaVersion && j.contains("operation")) problem = j;
    else continue;
    const ProblemSpec spec = problem_spec_from_json(problem);
    const TrialOutcome o = run_trial(spec);
    ++replayed;
    if (!o.pass) ++failed;
    if (g.json_output) std::cout << outcome_json(spec.operation, spec, o).dump() << '\n';
    else print_outcome_text(spec.operation, spec, o);
  }
  if (!g.json_output) std::cout << "replayed " << replayed << " trials, " << failed << " failing\n";
  return failed == 0 ? kExitOk : kExitFailure;
}

int cmd_verify_suite(const GlobalOptions& g, const SuiteArgs& a) {
  if (!a.replay.empty()) return replay_file(g, a.replay);
  SuiteConfig cfg;
  cfg.seed = g.seed;
  cfg.trials = a.trials;
  cfg.theorems = a.theorems;
  cfg.timing = a.timing;
  cfg.sizes.degree_range = {1, a.degree_max};
  cfg.sizes.symbol_degree_range = {0, a.symbol_degree_max};
  cfg.sizes.tol = g.tol;
  cfg.sizes.quad_cap = g.quad_cap;
  cfg.sizes.quad_tol = g.quad_tol;
  const SuiteReport r = run_suite(cfg);
  if (g.json_output) write_json_lines(std::cout, r);
  else write_text(std::cout, r);
  return r.all_passed() ? kExitOk : kExitFailure;
}

bool is_usage_kind(ErrorKind k) {
  return k == ErrorKind::InvalidInput || k == ErrorKind::InvalidRange || k == ErrorKind::SpaceMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated Toeplitz and Hankel operators on model spaces"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--tol", g.tol, "verification tolerance")->capture_default_str();
  app.add_option("--quad-cap", g.quad_cap, "maximum quadrature nodes")->capture_default_str();
  app.add_option("--quad-tol", g.quad_tol, "quadrature convergence tolerance")->capture_default_str();
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_flag("--json", g.json_output, "machine-readable output");
  app.fallthrough();

  OperatorArgs build_args;
  CLI::App* build = app.add_subcommand("build-op", "emit an operator matrix");
  add_operator_options(build, build_args);

  OperatorArgs classify_args;
  std::string operator_text;
  CLI::App* classify = app.add_subcommand("classify", "TTO/THO membership and Sedlock class");
  add_operator_options(classify, classify_args);
  classify->add_option("--operator", operator_text, "Operator JSON or @file");

  ProductArgs product_args;
  CLI::App* product = app.add_subcommand("product-test", "run one theorem on a problem spec, a random instance, or two operators");
  product->add_option("--theorem", product_args.theorem, "theorem id");
  product->add_option("--spec", product_args.spec, "ProblemSpec JSON or @file");
  product->add_option("--mode", product_args.mode, "instance mode when --spec is omitted")->capture_default_str();
  product->add_option("--first", product_args.first, "first factor: Operator JSON or @file");
  product->add_option("--second", product_args.second, "second factor: Operator JSON or @file");

  std::string clark_u, clark_alpha;
  CLI::App* clark = app.add_subcommand("clark", "Clark points and weights");
  clark->add_option("--u", clark_u, "inner function");
  clark->add_option("--alpha", clark_alpha, "unimodular alpha as re,im");

  SuiteArgs suite_args;
  CLI::App* suite = app.add_subcommand("verify-suite", "run the theorem suite");
  suite->add_option("--theorem", suite_args.theorems, "theorem id or group (repeatable)");
  suite->add_option("--trials", suite_args.trials, "trials per theorem and mode")->capture_default_str();
  suite->add_option("--degree-max", suite_args.degree_max, "maximum Blaschke degree")->capture_default_str();
  suite->add_option("--symbol-degree-max", suite_args.symbol_degree_max, "maximum Laurent degree")->capture_default_str();
  suite->add_flag("--timing", suite_args.timing, "include wall-clock time (output no longer byte-stable)");
  suite->add_option("--replay", suite_args.replay, "replay failing trials from a JSON-lines report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::cout << std::setprecision(12);
  try {
    if (*build) return cmd_build_op(g, build_args);
    if (*classify) return cmd_classify(g, classify_args, operator_text);
    if (*product) return cmd_product_test(g, product_args);
    if (*clark) return cmd_clark(g, clark_u, clark_alpha);
    if (*suite) return cmd_verify_suite(g, suite_args);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_usage_kind(e.kind()) ? kExitUsage : kExitFailure;
  }
  return kExitUsage;
}
