// Acceptance run: one PASS/FAIL line per criterion, tolerances and sizes pinned below.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "truncop/truncop.hpp"

namespace {

using namespace truncop;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kSeed = 20240601;

struct Result {
  bool pass = true;
  std::ostringstream note;
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

/// Tally of registry trials for one theorem id.
struct Tally {
  std::string id;
  int trials = 0;
  int failed = 0;
  int errors = 0;
  std::map<std::string, int> failed_by_mode;
};

/// Runs `total` trials of a registry theorem, split evenly over its modes.
Tally run_registry(const std::string& id, int total, int degree_max, double tol,
                   const std::vector<std::string>& modes_override = {}) {
  const TheoremEntry& e = find_theorem(id);
  const std::vector<std::string>& modes = modes_override.empty() ? e.modes : modes_override;
  SuiteSizes sizes;
  sizes.degree_range = {1, degree_max};
  sizes.tol = tol;
  Tally t{id};
  const int per_mode = (total + static_cast<int>(modes.size()) - 1) / static_cast<int>(modes.size());
  for (const std::string& mode : modes) {
    const std::size_t mi = static_cast<std::size_t>(std::find(e.modes.begin(), e.modes.end(), mode) - e.modes.begin());
    for (int k = 0; k < per_mode; ++k) {
      ++t.trials;
      TrialOutcome o;
      try {
        ProblemSpec s = e.build(trial_seed(kSeed, registry_index(id), mi, k), mode, sizes);
        s.operation = id;
        s.mode = mode;
        o = run_trial(s);
      } catch (const Error& err) {
        o.pass = false;
        o.error = err.what();
      }
      if (!o.error.empty()) ++t.errors;
      else if (!o.pass) ++t.failed;
      if (!o.pass) ++t.failed_by_mode[mode];
    }
  }
  return t;
}

void absorb(Result& r, const Tally& t) {
  r.note << ' ' << t.id << '=' << (t.trials - t.failed - t.errors) << '/' << t.trials;
  if (t.failed + t.errors == 0) return;
  r.pass = false;
  r.note << '[';
  bool first = true;
  for (const auto& [mode, n] : t.failed_by_mode) {
    r.note << (first ? "" : ",") << mode << ':' << n;
    first = false;
  }
  if (t.errors > 0) r.note << ",errors:" << t.errors;
  r.note << ']';
}

void bound(Result& r, const std::string& name, double value, double tol) {
  if (!(value < tol)) {
    r.pass = false;
    r.note << ' ' << name << '=' << value << ">=" << tol;
  }
}

// 1. Kernels and conjugations: 200 instances, degree <= 8, residual < 1e-9, under 10 s.
Result criterion_1() {
  Result r;
  const auto t0 = Clock::now();
  for (const std::string id : {"kernel-core", "hat-kernels"}) absorb(r, run_registry(id, 200, 8, 1e-9));
  const double elapsed = seconds_since(t0);
  r.note << " seconds=" << elapsed;
  bound(r, "runtime", elapsed, 10.0);
  return r;
}

// 2. Displacement decompositions < 1e-9 and symbol rebuild < 1e-8 on 200 instances.
Result criterion_2() {
  Result r;
  for (const std::string id : {"atto-facts", "atho-facts"}) absorb(r, run_registry(id, 200, 6, 1e-9));
  return r;
}

// 3. Defect formulas and rank-one memberships (boundary points included) within 1e-8 on 100 instances.
Result criterion_3() {
  Result r;
  for (const std::string id : {"kernel-core", "atto-facts", "atho-facts"}) absorb(r, run_registry(id, 100, 6, 1e-8));
  return r;
}

// 4. Class round trip within 1e-8 on 200 trials, adjoint law and product closure on 100 pairs.
Result criterion_4() {
  Result r;
  absorb(r, run_registry("sedlock-classes", 200, 6, 1e-8));
  Rng g(kSeed + 4);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const SpacePtr k = ModelSpace::make(sample::blaschke(g, sample::integer(g, 2, 6), false));
    const cplx alpha = sample::disk_point(g, 0.9);
    const SedlockReport s = sedlock_class(sedlock_op(project(k, sample::laurent(g, 3)), alpha, sample::box(g)));
    if (s.membership != Membership::Finite) {
      r.pass = false;
      r.note << " round_trip_membership_lost";
      break;
    }
    worst = std::max(worst, std::abs(s.alpha.value() - alpha));
  }
  r.note << " max_alpha_error=" << worst;
  bound(r, "alpha_error", worst, 1e-8);
  int closure_failures = 0;
  for (int t = 0; t < 100; ++t) {
    const SpacePtr k = ModelSpace::make(sample::blaschke(g, sample::integer(g, 2, 6), false));
    const ExtendedScalar alpha(sample::disk_point(g, 0.9));
    const OperatorMatrix a = sedlock_op(project(k, sample::laurent(g, 2)), alpha, sample::box(g));
    const OperatorMatrix b = sedlock_op(project(k, sample::laurent(g, 2)), alpha, sample::box(g));
    const bool adjoint_ok = sedlock_class(a.adjoint()).contains(alpha.reciprocal_conjugate(), kClassTol);
    const bool closure_ok = is_tto(a * b).member && sedlock_class(a * b).contains(alpha, kClassTol);
    if (!adjoint_ok || !closure_ok) ++closure_failures;
  }
  r.note << " closure_failures=" << closure_failures << "/100";
  if (closure_failures > 0) r.pass = false;
  return r;
}

// 5. Clark regime on 50 instances: unitary to 1e-10, alignment and quadrature to 1e-8.
Result criterion_5() {
  Result r;
  Rng g(kSeed + 5);
  double unitary = 0.0, align = 0.0, quad = 0.0;
  for (int t = 0; t < 50; ++t) {
    const SpacePtr k = ModelSpace::make(sample::blaschke(g, sample::integer(g, 1, 8), false));
    const cplx alpha = sample::unimodular(g);
    const OperatorMatrix s = clark_perturbation(k, alpha);
    unitary = std::max(unitary, distance(s.adjoint() * s, identity(k)));
    const ClarkData c = clark_points(k, alpha);
    for (std::size_t j = 0; j < c.points.size(); ++j) align = std::max(align, eigenvector_alignment(k, c, j));
    const SpaceElement f = project(k, sample::laurent(g, 3));
    quad = std::max(quad, std::abs(clark_quadrature_defect(c, f)) / std::max(1.0, f.coords.squaredNorm()));
  }
  r.note << " unitary=" << unitary << " alignment=" << align << " quadrature=" << quad;
  bound(r, "unitary", unitary, 1e-10);
  bound(r, "alignment", align, 1e-8);
  bound(r, "quadrature", quad, 1e-8);
  return r;
}

// 6. Conjugation dictionary, transports and the involution D to 1e-9 on 100 instances.
Result criterion_6() {
  Result r;
  for (const std::string id : {"conjugation-dictionary", "membership-transport", "hat-class-transport", "involution-d"})
    absorb(r, run_registry(id, 100, 6, 1e-9));
  return r;
}

// 7. Unitarity conditions on 100 mixed instances, inverse chain on 20, zero products.
Result criterion_7() {
  Result r;
  absorb(r, run_registry("tho-unitary", 100, 6, 1e-9));
  absorb(r, run_registry("tho-inverse", 20, 6, 1e-9, {"forward"}));
  absorb(r, run_registry("tho-zero-product", 40, 6, 1e-9));
  Rng g(kSeed + 7);
  double worst_zero = 0.0, weakest_cross = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 20; ++t) {
    const SpacePtr k = ModelSpace::make(sample::blaschke(g, sample::integer(g, 2, 6), true));
    std::vector<bool> split(k->size());
    for (std::size_t j = 0; j < split.size(); ++j) split[j] = j % 2 == 0;
    const ZeroProductPair p = construct_zero_product(k, ExtendedScalar(sample::unimodular(g)), split, {1.0, 1.0});
    worst_zero = std::max(worst_zero, (p.b1 * p.b2).norm());
    const OperatorMatrix d = dee(k);
    const OperatorMatrix b1 = d * sedlock_op(project(k, sample::laurent(g, 2)), sample::disk_point(g, 0.9));
    const OperatorMatrix b2 = sedlock_op(project(k, sample::laurent(g, 2)), sample::disk_point(g, 0.9)) * d;
    weakest_cross = std::min(weakest_cross, (b1 * b2).norm());
  }
  r.note << " max_zero_product=" << worst_zero << " min_cross_product=" << weakest_cross;
  bound(r, "zero_product", worst_zero, 1e-9);
  if (!(weakest_cross > 1e-3)) {
    r.pass = false;
    r.note << " cross_product<=1e-3";
  }
  return r;
}

// 8. Product criteria: stated condition against direct membership, 200 trials each at degree <= 6,
//    plus the two rank-one identities for u = z^2, lambda = 0.3 to 1e-9.
Result criterion_8() {
  Result r;
  for (const std::string id :
       {"atho-product-hankel", "atho-product-toeplitz-chain", "tho-product-toeplitz", "tho-product-classes",
        "tho-product-symbols", "tho-product-calculus", "mixed-product", "mixed-product-classes", "mixed-product-reversed",
        "rank-one-products", "atho-product-atto", "atho-product-tto", "atho-gram", "atho-atto-product", "atto-atho-product"})
    absorb(r, run_registry(id, 200, 6, 1e-9));
  const RankOneProducts ex = rank_one_products(ModelSpace::make(monomial_inner(2)), 0.3);
  r.note << " example_hh=" << ex.hankel_hankel << " example_th=" << ex.toeplitz_hankel;
  bound(r, "example_hankel_hankel", ex.hankel_hankel, 1e-9);
  bound(r, "example_toeplitz_hankel", ex.toeplitz_hankel, 1e-9);
  return r;
}

/// Largest entry change when the adaptive node count used for `build` is doubled.
template <class Build>
double doubling_change(Build&& build) {
  reset_quadrature_stats();
  const Matrix adaptive = build().matrix();
  QuadratureOptions q = quadrature_options();
  q.fixed_nodes = 2 * quadrature_stats().max_nodes_used;
  const ScopedQuadrature guard(q);
  return (build().matrix() - adaptive).cwiseAbs().maxCoeff();
}

// 9. Node doubling changes entries by < 1e-11; the z^n coefficient oracle matches to 1e-11.
Result criterion_9() {
  Result r;
  Rng g(kSeed + 9);
  double doubling = 0.0;
  for (int t = 0; t < 40; ++t) {
    const SpacePtr ku = ModelSpace::make(sample::blaschke(g, sample::integer(g, 1, 6), false));
    const SpacePtr kv = ModelSpace::make(sample::blaschke(g, sample::integer(g, 1, 6), false));
    const RationalSymbol phi = sample::laurent(g, 4);
    doubling = std::max(doubling, doubling_change([&] { return tto_matrix(ku, kv, phi); }));
    doubling = std::max(doubling, doubling_change([&] { return tho_matrix(ku, kv, phi); }));
  }
  double oracle = 0.0;
  for (std::size_t n = 1; n <= 8; ++n) {
    const SpacePtr k = ModelSpace::make(monomial_inner(n));
    for (int t = 0; t < 5; ++t) {
      std::map<int, cplx> terms;
      for (int j = -12; j <= 12; ++j) terms[j] = sample::box(g);
      const RationalSymbol phi = RationalSymbol::laurent(terms);
      const Matrix a = tto_matrix(k, k, phi).matrix();
      const Matrix b = tho_matrix(k, k, phi).matrix();
      auto coeff = [&](int m) { return terms.count(m) ? terms.at(m) : cplx(0.0, 0.0); };
      for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
          oracle = std::max(oracle, std::abs(a(i, j) - coeff(static_cast<int>(i - j))));
          oracle = std::max(oracle, std::abs(b(i, j) - coeff(static_cast<int>(-i - j - 1))));
        }
    }
  }
  r.note << " doubling=" << doubling << " oracle=" << oracle;
  bound(r, "doubling", doubling, 1e-11);
  bound(r, "oracle", oracle, 1e-11);
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Result (*)()>> criteria = {
      {"kernel and conjugation core", criterion_1}, {"displacement structure", criterion_2},
      {"defects and rank-one identities", criterion_3}, {"class machinery", criterion_4},
      {"Clark regime", criterion_5}, {"conjugation dictionary", criterion_6},
      {"unitary, inverse and zero-product reports", criterion_7}, {"product criteria", criterion_8},
      {"numerical hygiene", criterion_9}};
  const auto start = Clock::now();
  int failed = 0;
  for (std::size_t j = 0; j < criteria.size(); ++j) {
    const auto t0 = Clock::now();
    Result r;
    try {
      r = criteria[j].second();
    } catch (const std::exception& e) {
      r.pass = false;
      r.note << " exception: " << e.what();
    }
    if (!r.pass) ++failed;
    std::printf("%s criterion %zu (%s):%s [%.1fs]\n", r.pass ? "PASS" : "FAIL", j + 1, criteria[j].first.c_str(),
                r.note.str().c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("acceptance: %zu passed, %d failed, %.1fs total\n", criteria.size() - static_cast<std::size_t>(failed), failed,
              seconds_since(start));
  return failed == 0 ? 0 : 1;
}
