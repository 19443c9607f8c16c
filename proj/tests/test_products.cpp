#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "truncop/truncop.hpp"

namespace {

using namespace truncop;

SpacePtr z_space(std::size_t n) { return ModelSpace::make(monomial_inner(n)); }

// ---------------------------------------------------------------------------
// Conjugation dictionary

TEST(Dictionary, EightIdentitiesOnRandomSpaces) {
  Rng g(101);
  for (int t = 0; t < 10; ++t) {
    const SpacePtr ku = ModelSpace::make(sample::blaschke(g, sample::integer(g, 1, 4), false));
    const SpacePtr kv = ModelSpace::make(sample::blaschke(g, sample::integer(g, 1, 4), false));
    const RationalSymbol phi = sample::laurent(g, 3);
    const double scale = std::max(1.0, tto_matrix(ku, kv, phi).norm() + tho_matrix(ku, kv, phi).norm());
    for (double r : equivalence_transforms(ku, kv, phi)) EXPECT_LT(r / scale, 1e-9);
    for (double r : hankel_to_toeplitz_residuals(ku, kv, phi)) EXPECT_LT(r / scale, 1e-9);
  }
}

TEST(Dictionary, MembershipIsTransported) {
  Rng g(102);
  const SpacePtr ku = ModelSpace::make(sample::blaschke(g, 3, false));
  const SpacePtr kv = ModelSpace::make(sample::blaschke(g, 3, false));
  for (const auto& [before, after] : membership_transports(tto_matrix(ku, kv, sample::laurent(g, 2)),
                                                            tho_matrix(ku, kv, sample::laurent(g, 2)))) {
    EXPECT_TRUE(before);
    EXPECT_TRUE(after);
  }
}

TEST(Dictionary, InvolutionIdentities) {
  Rng g(103);
  for (int t = 0; t < 10; ++t) {
    const SpacePtr k = ModelSpace::make(sample::blaschke(g, sample::integer(g, 1, 5), true));
    const InvolutionReport r = involution_checks(k, sample::laurent(g, 3), sample::disk_point(g, 0.9));
    EXPECT_LT(r.d_vs_tho, 1e-9);
    EXPECT_LT(r.d_squared, 1e-9);
    EXPECT_LT(r.d_selfadjoint, 1e-9);
    EXPECT_LT(r.d_left, 1e-8);
    EXPECT_LT(r.d_right, 1e-8);
    EXPECT_LT(r.d_shift, 1e-9);
  }
}

TEST(Dictionary, HatTransportOfClasses) {
  Rng g(104);
  for (int t = 0; t < 10; ++t) {
    const SpacePtr k = ModelSpace::make(sample::blaschke(g, sample::integer(g, 2, 5), false));
    const HatTransportReport r =
        hat_transport_checks(project(k, sample::laurent(g, 3)), ExtendedScalar(sample::disk_point(g, 0.9)), sample::box(g));
    EXPECT_TRUE(r.class_transported);
    EXPECT_LT(r.shift_residual, 1e-9);
    EXPECT_LT(r.symmetry_residual, 1e-9);
    for (double x : r.conjugation_residuals) EXPECT_LT(x, 1e-9);
  }
}

TEST(Dictionary, ProductChainMembershipsAgree) {
  Rng g(105);
  for (int t = 0; t < 6; ++t) {
    const SpacePtr ku = ModelSpace::make(sample::blaschke(g, 2, false));
    const SpacePtr kv = ModelSpace::make(sample::blaschke(g, 3, false));
    const SpacePtr kw = ModelSpace::make(sample::blaschke(g, 2, false));
    const RationalSymbol phi1 = sample::laurent(g, 2);
    const RationalSymbol phi2 = sample::laurent(g, 2);
    for (bool toeplitz : {false, true}) {
      const std::array<bool, 4> c = product_chain(ku, kv, kw, phi1, phi2, toeplitz);
      for (bool x : c) EXPECT_EQ(x, c[0]);
    }
  }
}

// ---------------------------------------------------------------------------
// Rank-one products

TEST(RankOne, SquareAtPointThree) {
  const RankOneProducts r = rank_one_products(z_space(2), 0.3);
  EXPECT_LT(r.hankel_hankel, 1e-12);
  EXPECT_LT(r.toeplitz_hankel, 1e-12);
  EXPECT_TRUE(r.b1d_class.contains(cplx(0.09, 0.0), 1e-8));
  EXPECT_TRUE(r.db2_class.contains(cplx(0.09, 0.0), 1e-8));
}

// For non-real lambda only the conj(u'(conj lambda)) scalar reproduces the product.
TEST(RankOne, ScalarConventionForComplexPoints) {
  Rng g(106);
  int distinguished = 0;
  for (int t = 0; t < 10; ++t) {
    const SpacePtr k = ModelSpace::make(sample::blaschke(g, sample::integer(g, 2, 5), true));
    const cplx lambda = sample::disk_point(g, 0.8);
    const RankOneProducts r = rank_one_products(k, lambda);
    EXPECT_LT(r.hankel_hankel, 1e-9);
    EXPECT_LT(r.toeplitz_hankel, 1e-9);
    const cplx ul = k->generator()(lambda);
    EXPECT_TRUE(r.b1d_class.contains(ul, 1e-7));
    EXPECT_TRUE(r.db2_class.contains(ul, 1e-7));
    if (r.hankel_hankel_alt > 1e-6) ++distinguished;
  }
  EXPECT_GE(distinguished, 5);
}

// ---------------------------------------------------------------------------
// Registry trials

struct KnownFinding {
  std::string id;
  std::string mode;  // empty matches every mode
};

// Cases where a stated criterion disagrees with direct computation; characterized separately below.
const std::vector<KnownFinding> kKnownFindings = {
    {"tho-unitary", "scaled"}, {"atho-unitary", "scaled"}, {"atho-atto-product", ""}, {"atto-atho-product", ""}};

bool is_known_finding(const std::string& id, const std::string& mode) {
  return std::any_of(kKnownFindings.begin(), kKnownFindings.end(),
                     [&](const KnownFinding& k) { return k.id == id && (k.mode.empty() || k.mode == mode); });
}

std::vector<std::pair<std::string, std::string>> registry_cases() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const TheoremEntry& e : theorem_registry())
    for (const std::string& m : e.modes) out.emplace_back(e.id, m);
  return out;
}

std::vector<TrialOutcome> run_cases(const std::string& id, const std::string& mode, int n, std::uint64_t salt = 0) {
  const TheoremEntry& e = find_theorem(id);
  const std::size_t mi = static_cast<std::size_t>(std::find(e.modes.begin(), e.modes.end(), mode) - e.modes.begin());
  std::vector<TrialOutcome> out;
  for (int t = 0; t < n; ++t) {
    ProblemSpec s = e.build(trial_seed(1000 + salt, registry_index(id), mi, t), mode, SuiteSizes{});
    s.operation = id;
    s.mode = mode;
    out.push_back(run_trial(s));
  }
  return out;
}

class RegistryTrial : public ::testing::TestWithParam<std::pair<std::string, std::string>> {};

TEST_P(RegistryTrial, PassesOnRandomInstances) {
  const auto& [id, mode] = GetParam();
  if (is_known_finding(id, mode)) GTEST_SKIP() << "characterized by KnownFinding tests";
  for (const TrialOutcome& o : run_cases(id, mode, 3)) {
    EXPECT_TRUE(o.error.empty()) << o.error;
    EXPECT_TRUE(o.pass) << o.details.dump();
  }
}

std::string case_name(const ::testing::TestParamInfo<std::pair<std::string, std::string>>& info) {
  std::string s = info.param.first + "_" + info.param.second;
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
  return s;
}

INSTANTIATE_TEST_SUITE_P(AllTheorems, RegistryTrial, ::testing::ValuesIn(registry_cases()), case_name);

TEST(KnownFinding, ScaledUnitaryHasScalarDefects) {
  for (const std::string id : {"tho-unitary", "atho-unitary"})
    for (const TrialOutcome& o : run_cases(id, "scaled", 4)) {
      EXPECT_TRUE(o.error.empty()) << o.error;
      EXPECT_EQ(o.details.at("conditions").get<std::string>(), "000110");
      EXPECT_FALSE(o.pass);
    }
}

TEST(KnownFinding, AsymmetricCriteriaAgreeAfterNormalization) {
  int literal_disagreements = 0;
  for (const std::string id : {"atho-atto-product", "atto-atho-product"})
    for (const std::string mode : {"forward", "converse"})
      for (const TrialOutcome& o : run_cases(id, mode, 6)) {
        ASSERT_TRUE(o.error.empty()) << o.error;
        const bool direct = o.details.at("direct").get<bool>();
        if (o.details.contains("normalized_condition")) EXPECT_EQ(o.details.at("normalized_condition").get<bool>(), direct);
        if (o.details.at("condition").get<bool>() != direct) ++literal_disagreements;
      }
  EXPECT_GT(literal_disagreements, 0);
}

// ---------------------------------------------------------------------------
// Harness

SuiteConfig small_config(std::vector<std::string> theorems) {
  SuiteConfig c;
  c.seed = 7;
  c.trials = 2;
  c.theorems = std::move(theorems);
  return c;
}

std::string dump(const SuiteReport& r) {
  std::ostringstream os;
  write_json_lines(os, r);
  return os.str();
}

TEST(Harness, DeterministicOutput) {
  const SuiteConfig c = small_config({"dictionary", "tho-inverse"});
  EXPECT_EQ(dump(run_suite(c)), dump(run_suite(c)));
}

TEST(Harness, GroupFilterSelectsGroup) {
  const SuiteReport r = run_suite(small_config({"dictionary"}));
  std::set<std::string> ids;
  for (const TheoremSummary& s : r.summaries) {
    EXPECT_EQ(s.group, "dictionary");
    EXPECT_EQ(s.failed + s.errors, 0) << s.id;
    ids.insert(s.id);
  }
  EXPECT_EQ(ids.size(), 6u);
  EXPECT_TRUE(r.coverage_ok);
  EXPECT_TRUE(r.all_passed());
  EXPECT_THROW(select_theorems({"no-such-theorem"}), Error);
}

TEST(Harness, QuadratureFaultsAreReportedPerTrial) {
  SuiteConfig c = small_config({"tho-inverse"});
  c.sizes.quad_tol = 1e-30;
  c.sizes.quad_cap = 64;
  const SuiteReport r = run_suite(c);
  EXPECT_FALSE(r.all_passed());
  int no_convergence = 0;
  for (const TrialRecord& t : r.records)
    if (t.outcome.details.value("error_kind", std::string()) == to_string(ErrorKind::NoConvergence)) ++no_convergence;
  EXPECT_GT(no_convergence, 0);
  const std::string lines = dump(r);
  EXPECT_NE(lines.find("\"problem\""), std::string::npos);
}

TEST(Harness, ReplayReproducesResiduals) {
  const SuiteReport r = run_suite(small_config({"products"}));
  for (const TrialRecord& t : r.records) {
    const ProblemSpec back = problem_spec_from_json(to_json(t.spec));
    const TrialOutcome o = run_trial(back);
    EXPECT_EQ(o.pass, t.outcome.pass) << t.id;
    for (const auto& [k, v] : t.outcome.residuals) {
      ASSERT_TRUE(o.residuals.count(k)) << t.id << " " << k;
      if (std::isfinite(v)) EXPECT_LE(std::abs(o.residuals.at(k) - v), 1e-14) << t.id << " " << k;
    }
  }
}

TEST(Harness, SuiteLineSchema) {
  const SuiteReport r = run_suite(small_config({"kernel-core"}));
  const json s = suite_line(r);
  EXPECT_EQ(s.at("kind"), "suite");
  EXPECT_EQ(s.at("schema"), kSchemaVersion);
  EXPECT_FALSE(s.contains("wall_clock_s"));
  EXPECT_EQ(s.at("trials").get<int>(), 2 * static_cast<int>(find_theorem("kernel-core").modes.size()));
}

}  // namespace
