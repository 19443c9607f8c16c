// One verification per theorem ID: builders draw a ProblemSpec, evaluators replay it.
#ifndef TRUNCOP_TRIALS_HPP
#define TRUNCOP_TRIALS_HPP

#include <functional>
#include <string>
#include <vector>

#include "truncop/instance.hpp"
#include "truncop/products.hpp"

namespace truncop {

struct TrialOutcome {
  bool pass = true;
  std::optional<ExtendedScalar> alpha;
  std::map<std::string, double> residuals;
  json details = json::object();
  std::string error;

  /// Records a residual that must stay below tol.
  void bound(const std::string& name, double value, double tol) {
    residuals[name] = value;
    if (!(value < tol)) pass = false;
  }
  void require(const std::string& name, bool ok) {
    details[name] = ok;
    if (!ok) pass = false;
  }
};

struct SuiteSizes {
  std::pair<int, int> degree_range{1, 4};
  std::pair<int, int> symbol_degree_range{0, 3};
  double tol = kMembershipTol;
  double quad_tol = 1e-12;
  std::size_t quad_cap = 65536;
};

using TrialBuilder = std::function<ProblemSpec(std::uint64_t seed, const std::string& mode, const SuiteSizes& sizes)>;
using TrialEvaluator = std::function<TrialOutcome(const ProblemSpec&)>;

struct TheoremEntry {
  std::string id;
  std::string group;
  std::string summary;
  std::vector<std::string> modes;
  TrialBuilder build;
  TrialEvaluator evaluate;
};

namespace trials {

using sample::AlphaRegime;

inline const std::vector<AlphaRegime> kAllRegimes = {AlphaRegime::Disk, AlphaRegime::Circle, AlphaRegime::Exterior,
                                                     AlphaRegime::Infinity, AlphaRegime::Zero};

inline ProblemSpec base(std::uint64_t seed, const std::string& mode, const SuiteSizes& sizes, int spaces, bool real_symmetric,
                        int min_degree = 1) {
  std::pair<int, int> degrees = sizes.degree_range;
  degrees.first = std::max(degrees.first, min_degree);
  degrees.second = std::max(degrees.second, degrees.first);
  InstanceConstraints c;
  c.spaces = spaces;
  c.real_symmetric = real_symmetric;
  ProblemSpec s = generate_instance(seed, degrees, sizes.symbol_degree_range, c);
  s.mode = mode;
  s.tol = sizes.tol;
  s.quad_tol = sizes.quad_tol;
  s.quad_cap = sizes.quad_cap;
  return s;
}

/// Independent stream for builder-specific draws.
inline Rng builder_rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x5eedu};
  return Rng(seq);
}

inline double rel(double residual, double scale) { return residual / std::max(1.0, scale); }

inline std::vector<cplx> value_list(const ProblemSpec& s, const std::string& prefix, std::size_t n) {
  std::vector<cplx> out;
  for (std::size_t j = 0; j < n; ++j) out.push_back(s.param(prefix + std::to_string(j)));
  return out;
}

inline void put_values(ProblemSpec& s, Rng& g, const std::string& prefix, std::size_t n, bool unimodular) {
  for (std::size_t j = 0; j < n; ++j) s.params[prefix + std::to_string(j)] = unimodular ? sample::unimodular(g) : sample::box(g);
}

inline json bits(const std::vector<bool>& b) {
  std::string out;
  for (bool x : b) out += x ? '1' : '0';
  return out;
}

// ---------------------------------------------------------------------------
// Kernels, conjugations, classes

inline TrialOutcome kernel_core(const ProblemSpec& s) {
  TrialOutcome out;
  const SpacePtr ku = s.space("u");
  const InnerFunction& u = ku->generator();
  const cplx lambda = s.param("lambda");
  const cplx eta = s.param("eta");
  const SpaceElement f = project(ku, s.symbol("phi"));
  const SpaceElement k = kernel(ku, lambda);
  const OperatorMatrix c = conjugation_C_op(ku);
  out.bound("reproducing", std::abs(k.coords.dot(f.coords) - f(lambda)), s.tol);
  out.bound("conjugate_kernel", (c.apply(k).coords - conj_kernel(ku, lambda).coords).norm(), s.tol);
  const SpaceElement kb = boundary_kernel(ku, eta);
  const SpaceElement ktb = c.apply(kb);
  out.bound("boundary_relation", (kb.coords - std::conj(u(eta)) * eta * ktb.coords).norm(), s.tol);
  const cplx z0 = 0.5 * lambda;
  out.bound("boundary_conjugate_values", std::abs(ktb(z0) - (u(z0) - u(eta)) / (z0 - eta)), s.tol);
  const OperatorMatrix sh = shift(ku);
  const OperatorMatrix id = identity(ku);
  out.bound("defect_left", distance(id - sh * sh.adjoint(), rank_one(k0(ku), k0(ku))), s.tol);
  out.bound("defect_right", distance(id - sh.adjoint() * sh, rank_one(k0_tilde(ku), k0_tilde(ku))), s.tol);
  out.bound("conjugation_involution", (c.apply(c.apply(f)).coords - f.coords).norm(), s.tol);
  return out;
}

inline TrialOutcome hat_kernels(const ProblemSpec& s) {
  TrialOutcome out;
  const SpacePtr ku = s.space("u");
  const SpacePtr kuh = hat_space(ku);
  const cplx lambda = s.param("lambda");
  const OperatorMatrix uop = conjugation_U_op(ku, kuh);
  out.bound("kernel", (uop.apply(kernel(ku, lambda)).coords - kernel(kuh, std::conj(lambda)).coords).norm(), s.tol);
  out.bound("conjugate_kernel",
            (uop.apply(conj_kernel(ku, lambda)).coords - conj_kernel(kuh, std::conj(lambda)).coords).norm(), s.tol);
  return out;
}

inline bool class_contains(const SedlockReport& r, const ExtendedScalar& alpha) { return r.contains(alpha, kClassTol); }

inline TrialOutcome sedlock_classes(const ProblemSpec& s) {
  TrialOutcome out;
  const SpacePtr ku = s.space("u");
  if (s.mode == "forward") {
    const ExtendedScalar alpha = s.xparam("alpha");
    const OperatorMatrix a = sedlock_op(project(ku, s.symbol("phi")), alpha, s.param("c"));
    const SedlockReport r = sedlock_class(a);
    out.alpha = r.alpha;
    out.residuals["commutator"] = r.commutator_residual;
    out.details["membership"] = to_string(r.membership);
    out.require("class_recovered", class_contains(r, alpha));
    out.require("adjoint_class", class_contains(sedlock_class(a.adjoint()), alpha.reciprocal_conjugate()));
    const OperatorMatrix b = sedlock_op(project(ku, s.symbol("psi")), alpha, s.param("c") * 0.5);
    const OperatorMatrix p = a * b;
    const TtoMembership mp = is_tto(p);
    out.residuals["product_rebuild"] = mp.rebuild_residual;
    out.require("product_is_tto", mp.member);
    out.require("product_class", class_contains(sedlock_class(p), alpha));
    const RationalSymbol psi = RationalSymbol::laurent({{0, cplx(1.0, 0.0)}, {1, cplx(0.5, -0.25)}});
    out.require("calculus_class", class_contains(sedlock_class(functional_calculus(ku, alpha, psi)), alpha));
    if (alpha.is_finite() && std::abs(std::abs(alpha.value()) - 1.0) < kUnitCircleTol) {
      const cplx al = alpha.value();
      const OperatorMatrix sa = clark_perturbation(ku, al);
      out.bound("clark_unitary", distance(sa.adjoint() * sa, identity(ku)), 1e-10);
      const ClarkData clark = clark_points(ku, al);
      double align = 0.0;
      for (std::size_t j = 0; j < clark.points.size(); ++j) align = std::max(align, eigenvector_alignment(ku, clark, j));
      out.bound("clark_alignment", align, 1e-8);
      const SpaceElement f = project(ku, s.symbol("phi"));
      out.bound("clark_quadrature", std::abs(clark_quadrature_defect(clark, f)) / std::max(1.0, f.coords.squaredNorm()), 1e-8);
    }
    return out;
  }
  const OperatorMatrix a = s.has_param("alpha_b") ? sedlock_op(project(ku, s.symbol("phi")), s.xparam("alpha"))
                                                   : tto_matrix(ku, ku, s.symbol("phi"));
  const OperatorMatrix b = s.has_param("alpha_b") ? sedlock_op(project(ku, s.symbol("psi")), s.xparam("alpha_b"))
                                                   : tto_matrix(ku, ku, s.symbol("psi"));
  const SedlockReport ra = sedlock_class(a);
  const SedlockReport rb = sedlock_class(b);
  cplx scalar;
  bool condition = is_scalar_operator(a, &scalar) || is_scalar_operator(b, &scalar);
  std::optional<ExtendedScalar> common;
  if (!condition) {
    common = detail::common_class(ra, rb);
    condition = common.has_value();
  }
  const OperatorMatrix p = a * b;
  const bool direct = is_tto(p).member;
  out.details["condition"] = condition;
  out.details["direct"] = direct;
  out.require("agree", condition == direct);
  if (common) {
    out.alpha = *common;
    out.require("product_class", class_contains(sedlock_class(p), *common));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Asymmetric Toeplitz and Hankel facts

inline TrialOutcome atto_facts(const ProblemSpec& s) {
  TrialOutcome out;
  const SpacePtr ku = s.space("u");
  const SpacePtr kv = s.space("v");
  const RationalSymbol u = ku->generator().symbol();
  const RationalSymbol v = kv->generator().symbol();
  const RationalSymbol z = RationalSymbol::z();
  const cplx lambda = s.param("lambda");
  const cplx eta = s.param("eta");
  const RationalSymbol h = RationalSymbol::laurent({{0, cplx(1.0, 0.0)}, {1, lambda}});
  const RationalSymbol g = z - cplx(0.5, 0.0);
  out.bound("zero_symbol", tto_matrix(ku, kv, v * h + (u * g).conj_on_circle()).norm(), s.tol);
  const OperatorMatrix a = tto_matrix(ku, kv, s.symbol("phi"));
  const TtoMembership m = is_tto(a);
  out.require("displacement_member", m.member);
  out.bound("displacement", m.displacement_residual, s.tol);
  out.bound("symbol_rebuild", m.rebuild_residual, kRebuildTol);
  const OperatorMatrix one = tto_matrix(ku, kv, RationalSymbol::constant(1.0));
  const cplx v0 = kv->generator()(0.0);
  const cplx u0 = ku->generator()(0.0);
  out.bound("anchor_codomain", distance(tto_matrix(ku, kv, 1.0 - std::conj(v0) * v), one), s.tol);
  out.bound("anchor_domain", distance(tto_matrix(ku, kv, (1.0 - std::conj(u0) * u).conj_on_circle()), one), s.tol);
  const OperatorMatrix t = tto_matrix(ku, ku, s.symbol("psi"));
  const OperatorMatrix cu = conjugation_C_op(ku);
  out.bound("c_symmetric", distance(cu * t * cu, t.adjoint()), s.tol);
  const RationalSymbol zl = z - lambda;
  out.bound("rank_one_left", distance(rank_one(conj_kernel(kv, lambda), kernel(ku, lambda)), tto_matrix(ku, kv, v / zl)), s.tol);
  out.bound("rank_one_right",
            distance(rank_one(kernel(kv, lambda), conj_kernel(ku, lambda)), tto_matrix(ku, kv, (u / zl).conj_on_circle())),
            s.tol);
  const SpaceElement kbv = boundary_kernel(kv, eta);
  const SpaceElement kbu = boundary_kernel(ku, eta);
  out.bound("rank_one_boundary",
            distance(rank_one(kbv, kbu), tto_matrix(ku, kv, kbv.symbol() + kbu.symbol().conj_on_circle() - cplx(1.0, 0.0))),
            s.tol);
  return out;
}

inline TrialOutcome atho_facts(const ProblemSpec& s) {
  TrialOutcome out;
  const SpacePtr ku = s.space("u");
  const SpacePtr kv = s.space("v");
  const RationalSymbol u = ku->generator().symbol();
  const RationalSymbol vh = kv->generator().symbol().hat();
  const cplx lambda = s.param("lambda");
  const cplx eta = s.param("eta");
  const RationalSymbol& phi = s.symbol("phi");
  out.bound("adjoint", distance(tho_matrix(ku, kv, phi).adjoint(), tho_matrix(kv, ku, phi.hat())), s.tol);
  const RationalSymbol h = RationalSymbol::laurent({{0, cplx(1.0, 0.0)}, {1, lambda}});
  const RationalSymbol g = RationalSymbol::z() - cplx(0.5, 0.0);
  out.bound("zero_symbol", tho_matrix(ku, kv, h + (u * vh * g).conj_on_circle()).norm(), s.tol);
  const ThoMembership m = is_tho(tho_matrix(ku, kv, phi));
  out.require("member", m.member);
  out.bound("displacement", m.displacement_residual, s.tol);
  out.bound("symbol_rebuild", m.rebuild_residual, kRebuildTol);
  const SpacePtr kuvh = ModelSpace::make(product(ku->generator(), hat(kv->generator())));
  out.require("symbol_space", same_space(*m.psi.space, *kuvh));
  const OperatorMatrix cu = conjugation_C_op(ku);
  const OperatorMatrix cv = conjugation_C_op(kv);
  const std::vector<OperatorMatrix> rank_ones = {
      rank_one(conj_kernel(kv, std::conj(lambda)), conj_kernel(ku, lambda)),
      rank_one(kernel(kv, std::conj(lambda)), kernel(ku, lambda)),
      rank_one(cv.apply(boundary_kernel(kv, std::conj(eta))), cu.apply(boundary_kernel(ku, eta))),
      rank_one(boundary_kernel(kv, std::conj(eta)), boundary_kernel(ku, eta))};
  const char* names[] = {"rank_one_conjugate", "rank_one_kernel", "rank_one_boundary_conjugate", "rank_one_boundary"};
  for (std::size_t j = 0; j < rank_ones.size(); ++j) {
    const ThoMembership r = is_tho(rank_ones[j]);
    out.require(names[j], r.member);
    out.residuals[std::string(names[j]) + "_rebuild"] = r.rebuild_residual;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conjugation dictionary

inline TrialOutcome conjugation_dictionary(const ProblemSpec& s) {
  TrialOutcome out;
  const auto r = equivalence_transforms(s.space("u"), s.space("v"), s.symbol("phi"));
  for (std::size_t j = 0; j < r.size(); ++j) out.bound("identity_" + std::to_string(j + 1), r[j], s.tol);
  return out;
}

inline TrialOutcome membership_transport(const ProblemSpec& s) {
  TrialOutcome out;
  const SpacePtr ku = s.space("u");
  const SpacePtr kv = s.space("v");
  const auto members = membership_transports(tto_matrix(ku, kv, s.symbol("phi")), tho_matrix(ku, kv, s.symbol("psi")));
  Rng g(s.seed);
  Matrix m(kv->size(), ku->size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) m(i, k) = sample::box(g);
  const OperatorMatrix generic(ku, kv, m);
  const auto others = membership_transports(generic, generic);
  json pairs = json::array();
  for (std::size_t j = 0; j < 6; ++j) {
    out.require("member_" + std::to_string(j + 1), members[j].first && members[j].second);
    out.require("generic_" + std::to_string(j + 1), others[j].first == others[j].second);
    pairs.push_back({others[j].first, others[j].second});
  }
  out.details["generic_pairs"] = pairs;
  return out;
}

inline TrialOutcome hat_class_transport(const ProblemSpec& s) {
  TrialOutcome out;
  const ExtendedScalar alpha = s.xparam("alpha");
  const HatTransportReport r = hat_transport_checks(project(s.space("u"), s.symbol("phi")), alpha, s.param("c"));
  out.alpha = alpha;
  out.require("class_transported", r.class_transported);
  out.bound("shift", r.shift_residual, s.tol);
  out.bound("c_symmetric_shift", r.symmetry_residual, s.tol);
  for (std::size_t j = 0; j < r.conjugation_residuals.size(); ++j)
    out.bound("conjugation_" + std::to_string(j + 1), r.conjugation_residuals[j], s.tol);
  return out;
}

inline TrialOutcome involution_d(const ProblemSpec& s) {
  TrialOutcome out;
  const InvolutionReport r = involution_checks(s.space("u"), s.symbol("phi"), s.param("alpha"));
  out.bound("d_is_tho", r.d_vs_tho, s.tol);
  out.bound("d_squared", r.d_squared, s.tol);
  out.bound("d_selfadjoint", r.d_selfadjoint, s.tol);
  out.bound("d_left", r.d_left, s.tol);
  out.bound("d_right", r.d_right, s.tol);
  out.bound("d_shift", r.d_shift, s.tol);
  const auto h = hankel_to_toeplitz_residuals(s.space("v"), s.space("u"), s.symbol("psi"));
  out.bound("hankel_left", h[0], s.tol);
  out.bound("hankel_right", h[1], s.tol);
  return out;
}

inline TrialOutcome product_chain_trial(const ProblemSpec& s, bool target_toeplitz) {
  TrialOutcome out;
  const SpacePtr ku = s.space("u");
  const SpacePtr kv = s.space("v");
  const SpacePtr kw = s.space("w");
  RationalSymbol phi1 = s.symbol("phi");
  RationalSymbol phi2 = s.symbol("psi");
  if (s.mode == "forward") {
    const cplx lambda = s.param("lambda");
    const OperatorMatrix b1 = target_toeplitz ? rank_one(conj_kernel(kw, lambda), conj_kernel(kv, std::conj(lambda)))
                                              : rank_one(kernel(kw, std::conj(lambda)), kernel(kv, lambda));
    const OperatorMatrix b2 = rank_one(kernel(kv, std::conj(lambda)), kernel(ku, lambda));
    phi1 = tho_symbol(is_tho(b1));
    phi2 = tho_symbol(is_tho(b2));
  }
  const auto chain = product_chain(ku, kv, kw, phi1, phi2, target_toeplitz);
  out.details["chain"] = bits({chain[0], chain[1], chain[2], chain[3]});
  bool equal = true;
  for (bool c : chain) equal = equal && (c == chain[0]);
  out.require("equivalent", equal);
  if (s.mode == "forward") out.require("forward_member", chain[0]);
  return out;
}

// ---------------------------------------------------------------------------
// Algebraic properties of THOs

/// A THO with a nonzero rank-one part, so that degenerate symbols do not give the zero operator.
inline OperatorMatrix generic_tho(const ProblemSpec& s, const SpacePtr& ku) {
  const cplx lambda = s.param("lambda");
  return tho_matrix(ku, ku, s.symbol("phi")) + rank_one(kernel(ku, std::conj(lambda)), kernel(ku, lambda));
}

inline OperatorMatrix unimodular_class_tho(const ProblemSpec& s, const SpacePtr& ku) {
  const ClarkData clark = clark_points(ku, s.param("alpha"));
  return spectral_operator(ku, clark, value_list(s, "value", ku->size()));
}

inline TrialOutcome tho_unitary(const ProblemSpec& s) {
  TrialOutcome out;
  const SpacePtr ku = s.space("u");
  OperatorMatrix b = s.mode == "converse" ? generic_tho(s, ku) : dee(ku) * unimodular_class_tho(s, ku);
  if (s.mode == "scaled") b = s.param("scale") * b;
  const UnitaryReport r = tho_unitary_report(b, s.tol);
  std::vector<bool> c(r.conditions.begin(), r.conditions.end());
  out.details["conditions"] = bits(c);
  out.residuals["isometry"] = r.isometry_residual;
  out.residuals["coisometry"] = r.coisometry_residual;
  if (r.klass.in_class()) out.alpha = r.klass.alpha;
  out.require("agree", r.agree);
  if (s.mode == "forward") out.require("unitary", r.conditions[2]);
  return out;
}

inline TrialOutcome atho_unitary(const ProblemSpec& s) {
  TrialOutcome out;
  const SpacePtr ku = s.space("u");
  const SpacePtr kuh = hat_space(ku);
  OperatorMatrix b = s.mode == "converse"
                         ? tho_matrix(ku, kuh, s.symbol("phi")) +
                               rank_one(kernel(kuh, std::conj(s.param("lambda"))), kernel(ku, s.param("lambda")))
                         : conjugation_U_op(ku, kuh) * conjugation_C_op(ku) * unimodular_class_tho(s, ku);
  if (s.mode == "scaled") b = s.param("scale") * b;
  const AsymmetricUnitaryReport r = tho_unitary_report_asymmetric(b, s.tol);
  std::vector<bool> c(r.report.conditions.begin(), r.report.conditions.end());
  out.details["conditions"] = bits(c);
  out.details["class_condition_cub"] = r.class_condition_cub;
  out.residuals["isometry"] = r.report.isometry_residual;
  out.residuals["coisometry"] = r.report.coisometry_residual;
  out.require("agree", r.report.agree);
  if (s.mode == "forward") out.require("unitary", r.report.conditions[2]);
  return out;
}

inline TrialOutcome tho_inverse(const ProblemSpec& s) {
  TrialOutcome out;
  const SpacePtr ku = s.space("u");
  const OperatorMatrix d = dee(ku);
  OperatorMatrix b = d;
  if (s.mode == "forward") {
    b = d * functional_calculus(ku, s.xparam("alpha"), s.symbol("calculus"));
  } else {
    const OperatorMatrix x = generic_tho(s, ku);
    b = d + (0.3 / x.norm()) * x;
  }
  const InverseClassReport r = tho_inverse_class(b);
  const OperatorMatrix db = d * b;
  const bool toeplitz_inverse = is_tto(OperatorMatrix(ku, ku, Matrix(db.matrix().inverse()))).member;
  out.details["inverse_is_tho"] = r.inverse_is_tho;
  out.details["toeplitz_inverse"] = toeplitz_inverse;
  out.details["chain"] = r.chain_holds;
  out.details["symbol_forms_checked"] = r.symbol_forms_checked;
  out.residuals["condition_number"] = r.condition_number;
  if (r.symbol_forms_checked) out.residuals["symbol_forms"] = r.symbol_residual;
  if (r.klass.in_class()) out.alpha = r.klass.alpha;
  bool agree = r.inverse_is_tho == toeplitz_inverse && r.inverse_is_tho == r.chain_holds;
  if (r.symbol_forms_checked) agree = agree && r.symbol_forms_hold == r.chain_holds;
  out.require("agree", agree);
  if (s.mode == "forward") out.require("forward_member", r.inverse_is_tho);
  return out;
}

inline std::vector<bool> split_of(const ProblemSpec& s, std::size_t n) {
  const auto mask = static_cast<std::uint64_t>(std::llround(s.param("split").real()));
  std::vector<bool> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = ((mask >> j) & 1u) != 0;
  return out;
}

inline void record_zero_report(TrialOutcome& out, const ZeroProductReport& r, const std::string& mode) {
  out.details["regime"] = r.regime;
  out.details["product_is_zero"] = r.product_is_zero;
  out.details["condition"] = r.condition_holds;
  out.residuals["product_norm"] = r.product_norm;
  out.residuals["vanishing"] = r.vanishing_residual;
  if (r.alpha) out.alpha = *r.alpha;
  out.require("agree", r.agree);
  if (mode == "forward") out.require("forward_zero", r.product_is_zero);
}

inline TrialOutcome tho_zero_product(const ProblemSpec& s) {
  TrialOutcome out;
  const SpacePtr ku = s.space("u");
  ZeroProductPair pair{identity(ku), identity(ku)};
  if (s.mode == "forward") {
    pair = construct_zero_product(ku, s.xparam("alpha"), split_of(s, ku->size()), {s.param("scale1"), s.param("scale2")});
  } else if (s.has_param("alpha_b")) {
    const OperatorMatrix d = dee(ku);
    pair = {d * sedlock_op(project(ku, s.symbol("phi")), s.xparam("alpha"), s.param("c")),
            sedlock_op(project(ku, s.symbol("psi")), s.xparam("alpha_b")) * d};
  } else {
    pair = {tho_matrix(ku, ku, s.symbol("phi")), tho_matrix(ku, ku, s.symbol("psi"))};
  }
  record_zero_report(out, zero_product_analysis(pair.b1, pair.b2, s.tol), s.mode);
  return out;
}

inline TrialOutcome atho_zero_product(const ProblemSpec& s) {
  TrialOutcome out;
  const SpacePtr ku = s.space("u");
  const SpacePtr kuh = hat_space(ku);
  ZeroProductPair pair{identity(ku), identity(ku)};
  if (s.mode == "forward") {
    pair = construct_atho_zero_product(ku, s.xparam("alpha"), split_of(s, ku->size()), {s.param("scale1"), s.param("scale2")});
  } else if (s.has_param("alpha_b")) {
    const OperatorMatrix cu = conjugation_C_op(ku);
    pair = {cu * sedlock_op(project(ku, s.symbol("phi")), s.xparam("alpha"), s.param("c")) * conjugation_U_op(kuh, ku),
            conjugation_U_op(ku, kuh) * sedlock_op(project(ku, s.symbol("psi")), s.xparam("alpha_b")) * cu};
  } else {
    pair = {tho_matrix(kuh, ku, s.symbol("phi")), tho_matrix(ku, kuh, s.symbol("psi"))};
  }
  const AsymmetricZeroProductReport r = atho_zero_product_analysis(pair.b1, pair.b2, s.tol);
  out.details["alternative_condition"] = r.alternative.condition_holds;
  record_zero_report(out, r.report, s.mode);
  return out;
}

// ---------------------------------------------------------------------------
// Products of THOs on K_u

/// B1 = X1 D, B2 = D X2 with X_i in the stated classes, or B1 = c D (case "scalar"), or generic THOs.
inline ZeroProductPair tho_factor_pair(const ProblemSpec& s, const SpacePtr& ku) {
  const OperatorMatrix d = dee(ku);
  if (s.mode == "forward" && s.has_param("scalar")) return {s.param("scalar") * d, tho_matrix(ku, ku, s.symbol("psi"))};
  if (s.has_param("alpha_b") || s.mode == "forward") {
    const ExtendedScalar a1 = s.xparam("alpha");
    const ExtendedScalar a2 = s.has_param("alpha_b") ? s.xparam("alpha_b") : a1;
    return {sedlock_op(project(ku, s.symbol("phi")), a1, s.param("c")) * d, d * sedlock_op(project(ku, s.symbol("psi")), a2)};
  }
  return {tho_matrix(ku, ku, s.symbol("phi")), tho_matrix(ku, ku, s.symbol("psi"))};
}

inline void record_verdict(TrialOutcome& out, const ProductVerdict& v) {
  out.details["condition"] = v.condition;
  out.details["direct"] = v.direct;
  out.details["case"] = v.case_label;
  if (v.normalized_condition) out.details["normalized_condition"] = *v.normalized_condition;
  if (v.alpha) out.alpha = *v.alpha;
  out.residuals["condition"] = v.lhs_residual;
  out.residuals["direct_rebuild"] = v.direct_residual;
  out.require("agree", v.agree());
}

inline TrialOutcome tho_product_toeplitz(const ProblemSpec& s, bool intertwining) {
  TrialOutcome out;
  const SpacePtr ku = s.space("u");
  const ZeroProductPair f = tho_factor_pair(s, ku);
  const ProductVerdict v = tho_product_tto_test(f.b1, f.b2, s.tol);
  record_verdict(out, v);
  if (intertwining && v.case_label == "class" && v.alpha && v.alpha->is_finite()) {
    const auto r = tho_intertwining_residuals(f.b1, f.b2, v.alpha->value());
    out.bound("intertwining_left", rel(r[0], f.b1.norm()), s.tol);
    out.bound("intertwining_right", rel(r[1], f.b2.norm()), s.tol);
  }
  if (v.case_label == "class") out.require("product_in_class", class_contains(sedlock_class(f.b1 * f.b2), *v.alpha));
  return out;
}

inline TrialOutcome tho_product_symbols(const ProblemSpec& s) {
  TrialOutcome out;
  const SpacePtr ku = s.space("u");
  const ZeroProductPair f = tho_factor_pair(s, ku);
  const ProductVerdict v = tho_product_tto_test(f.b1, f.b2, s.tol);
  const SedlockReport k1 = sedlock_class(f.b1 * dee(ku));
  const ExtendedScalar alpha = v.alpha ? *v.alpha : (k1.in_class() ? k1.alpha : s.xparam("alpha"));
  bool certified = false;
  try {
    const SymbolCertificate cert = tho_product_symbol_forms(f.b1, f.b2, alpha);
    certified = true;
    out.residuals["symbol_forms"] = cert.rebuild_residual;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoCertificate) throw;
    out.details["no_certificate"] = e.what();
  }
  out.alpha = alpha;
  out.details["case"] = v.case_label;
  out.details["certified"] = certified;
  out.details["direct"] = v.direct;
  out.require("agree", certified == v.direct);
  return out;
}

inline TrialOutcome tho_product_calculus(const ProblemSpec& s) {
  TrialOutcome out;
  const SpacePtr ku = s.space("u");
  const ExtendedScalar alpha = s.xparam("alpha");
  const RationalSymbol& psi1 = s.symbol("psi1");
  const RationalSymbol& psi2 = s.symbol("psi2");
  out.alpha = alpha;
  if (std::abs(std::abs(alpha.value()) - 1.0) < kUnitCircleTol) {
    const ClarkData clark = clark_points(ku, alpha.value());
    std::vector<cplx> v1, v2, v12;
    for (cplx z : clark.points) {
      v1.push_back(psi1(z));
      v2.push_back(psi2(z));
      v12.push_back(psi1(z) * psi2(z));
    }
    const OperatorMatrix d = dee(ku);
    const OperatorMatrix b1 = spectral_operator(ku, clark, v1) * d;
    const OperatorMatrix b2 = d * spectral_operator(ku, clark, v2);
    out.require("left_is_tho", is_tho(b1).member);
    out.require("right_is_tho", is_tho(b2).member);
    out.bound("product", distance(b1 * b2, spectral_operator(ku, clark, v12)), s.tol);
    out.bound("calculus_agrees", distance(spectral_operator(ku, clark, v1), functional_calculus(ku, alpha, psi1)), s.tol);
    return out;
  }
  const auto r = calculus_product_forms(ku, alpha.value(), psi1, psi2);
  out.bound("left_symbol", r[0], s.tol);
  out.bound("right_symbol", r[1], s.tol);
  out.bound("product_symbol", r[2], s.tol);
  return out;
}

inline TrialOutcome mixed_product(const ProblemSpec& s, Order order, bool intertwining) {
  TrialOutcome out;
  const SpacePtr ku = s.space("u");
  const OperatorMatrix d = dee(ku);
  OperatorMatrix a = tto_matrix(ku, ku, s.symbol("phi"));
  OperatorMatrix b = tho_matrix(ku, ku, s.symbol("psi"));
  if (s.mode == "forward" && s.has_param("scalar")) {
    a = s.param("scalar") * identity(ku);
  } else if (s.mode == "forward" || s.has_param("alpha_b")) {
    const ExtendedScalar a1 = s.xparam("alpha");
    const ExtendedScalar a2 = s.has_param("alpha_b") ? s.xparam("alpha_b") : a1;
    a = sedlock_op(project(ku, s.symbol("phi")), a1, s.param("c"));
    const OperatorMatrix x = sedlock_op(project(ku, s.symbol("psi")), a2);
    b = order == Order::AB ? x * d : d * x;
  }
  const ProductVerdict v = mixed_product_test(a, b, order, s.tol);
  record_verdict(out, v);
  if (intertwining && v.case_label == "class" && v.alpha && v.alpha->is_finite()) {
    const cplx al = v.alpha->value();
    const OperatorMatrix sa = clark_perturbation(ku, al);
    const OperatorMatrix sc = clark_perturbation(ku, std::conj(al)).adjoint();
    out.bound("commutes", rel(distance(a * sa, sa * a), a.norm()), s.tol);
    const double r = order == Order::AB ? distance(b * sc, sa * b) : distance(b * sa, sc * b);
    out.bound("intertwining", rel(r, b.norm()), s.tol);
  }
  return out;
}

inline TrialOutcome rank_one_products_trial(const ProblemSpec& s) {
  TrialOutcome out;
  const SpacePtr ku = s.space("u");
  const cplx lambda = s.param("lambda");
  const RankOneProducts r = rank_one_products(ku, lambda);
  const cplx ul = ku->generator()(lambda);
  out.alpha = ExtendedScalar(ul);
  out.bound("hankel_hankel", r.hankel_hankel, s.tol);
  out.residuals["hankel_hankel_unbarred"] = r.hankel_hankel_alt;
  out.bound("toeplitz_hankel", r.toeplitz_hankel, s.tol);
  out.require("left_class", class_contains(r.b1d_class, ul));
  out.require("right_class", class_contains(r.db2_class, ul));
  return out;
}

// ---------------------------------------------------------------------------
// Products of asymmetric THOs

inline TrialOutcome atho_product_atto(const ProblemSpec& s, bool same_outer) {
  TrialOutcome out;
  const SpacePtr ku = s.space("u");
  const SpacePtr kv = s.space("v");
  const SpacePtr kw = same_outer ? ku : s.space("w");
  OperatorMatrix b1 = tho_matrix(kv, kw, s.symbol("phi"));
  OperatorMatrix b2 = tho_matrix(ku, kv, s.symbol("psi"));
  if (s.mode == "forward") {
    const cplx lambda = s.param("lambda");
    b1 = rank_one(conj_kernel(kw, lambda), conj_kernel(kv, std::conj(lambda)));
    b2 = rank_one(kernel(kv, std::conj(lambda)), kernel(ku, lambda));
  }
  record_verdict(out, atho_product_tto_test(ku, kv, kw, tho_symbol(is_tho(b1)), tho_symbol(is_tho(b2)), s.tol));
  return out;
}

inline TrialOutcome atho_gram(const ProblemSpec& s) {
  TrialOutcome out;
  const SpacePtr ku = s.space("u");
  const SpacePtr kv = s.space("v");
  OperatorMatrix b = tho_matrix(kv, ku, s.symbol("phi"));
  if (s.mode == "forward") {
    const cplx eta = s.param("eta");
    b = rank_one(boundary_kernel(ku, std::conj(eta)), boundary_kernel(kv, eta));
  }
  const GramVerdict g = atho_gram_test(ku, kv, tho_symbol(is_tho(b)), s.tol);
  record_verdict(out, g.verdict);
  out.residuals["witness_asymmetry"] = g.witness_asymmetry;
  if (g.verdict.condition) out.bound("symmetric_witness", g.witness_asymmetry, s.tol);
  return out;
}

inline TrialOutcome atho_atto_product(const ProblemSpec& s) {
  TrialOutcome out;
  const SpacePtr ku = s.space("u");
  const SpacePtr kv = s.space("v");
  const SpacePtr kw = s.space("w");
  OperatorMatrix b = tho_matrix(kv, kw, s.symbol("phi"));
  OperatorMatrix a = tto_matrix(ku, kv, s.symbol("psi"));
  if (s.mode == "forward") {
    const cplx lambda = s.param("lambda");
    b = rank_one(kernel(kw, std::conj(lambda)), kernel(kv, lambda));
    a = rank_one(conj_kernel(kv, lambda), kernel(ku, lambda));
  }
  const TtoMembership m = is_tto(a);
  record_verdict(out, atho_atto_product_test(ku, kw, tho_symbol(is_tho(b)), m.psi1, m.psi2, s.tol));
  return out;
}

inline TrialOutcome atto_atho_product(const ProblemSpec& s) {
  TrialOutcome out;
  const SpacePtr ku = s.space("u");
  const SpacePtr kv = s.space("v");
  const SpacePtr kw = s.space("w");
  OperatorMatrix a = tto_matrix(kv, kw, s.symbol("phi"));
  OperatorMatrix b = tho_matrix(ku, kv, s.symbol("psi"));
  if (s.mode == "forward") {
    const cplx lambda = s.param("lambda");
    a = rank_one(kernel(kw, std::conj(lambda)), conj_kernel(kv, std::conj(lambda)));
    b = rank_one(kernel(kv, std::conj(lambda)), kernel(ku, lambda));
  }
  const TtoMembership m = is_tto(a);
  record_verdict(out, atto_atho_product_test(ku, tho_symbol(is_tho(b)), m.psi1, m.psi2, s.tol));
  return out;
}

// ---------------------------------------------------------------------------
// Builders

inline TrialBuilder plain(int spaces, bool real_symmetric, std::vector<AlphaRegime> regimes = {AlphaRegime::Disk}) {
  return [=](std::uint64_t seed, const std::string& mode, const SuiteSizes& sizes) {
    ProblemSpec s = base(seed, mode, sizes, spaces, real_symmetric);
    Rng g = builder_rng(seed);
    s.params["alpha"] = sample::alpha(g, regimes);
    return s;
  };
}

/// Forward: one class alpha. Converse: distinct classes alpha, alpha_b, or generic operators.
inline TrialBuilder class_pair(int spaces, bool real_symmetric, bool allow_scalar, int min_degree = 1) {
  return [=](std::uint64_t seed, const std::string& mode, const SuiteSizes& sizes) {
    ProblemSpec s = base(seed, mode, sizes, spaces, real_symmetric, min_degree);
    Rng g = builder_rng(seed);
    s.params["alpha"] = sample::alpha(g, kAllRegimes);
    if (mode == "forward") {
      if (allow_scalar && sample::coin(g, 0.2)) s.params["scalar"] = sample::box(g);
    } else if (sample::coin(g)) {
      ExtendedScalar b = sample::alpha(g, kAllRegimes);
      while (b.chordal_distance(s.xparam("alpha")) < 0.2) b = sample::alpha(g, kAllRegimes);
      s.params["alpha_b"] = b;
    }
    return s;
  };
}

/// Converse instances need degree >= 2: on a one-dimensional space every operator is Toeplitz.
inline TrialBuilder unitary_builder() {
  return [](std::uint64_t seed, const std::string& mode, const SuiteSizes& sizes) {
    ProblemSpec s = base(seed, mode, sizes, 1, true, mode == "converse" ? 2 : 1);
    Rng g = builder_rng(seed);
    s.params["alpha"] = sample::unimodular(g);
    put_values(s, g, "value", s.inner_at("u").degree(), true);
    s.params["scale"] = sample::coin(g) ? sample::uniform(g, 0.3, 0.9) : sample::uniform(g, 1.1, 2.0);
    return s;
  };
}

inline TrialBuilder asymmetric_unitary_builder() {
  return [](std::uint64_t seed, const std::string& mode, const SuiteSizes& sizes) {
    ProblemSpec s = base(seed, mode, sizes, 1, false, mode == "converse" ? 2 : 1);
    Rng g = builder_rng(seed);
    s.params["alpha"] = sample::unimodular(g);
    put_values(s, g, "value", s.inner_at("u").degree(), true);
    s.params["scale"] = sample::coin(g) ? sample::uniform(g, 0.3, 0.9) : sample::uniform(g, 1.1, 2.0);
    return s;
  };
}

inline TrialBuilder inverse_builder() {
  return [](std::uint64_t seed, const std::string& mode, const SuiteSizes& sizes) {
    ProblemSpec s = base(seed, mode, sizes, 1, true);
    Rng g = builder_rng(seed);
    s.params["alpha"] = sample::alpha(g, {AlphaRegime::Disk, AlphaRegime::Circle, AlphaRegime::Exterior});
    const cplx lead = std::polar(sample::uniform(g, 1.5, 2.5), sample::uniform(g, -kPi, kPi));
    s.symbols.insert_or_assign("calculus", RationalSymbol::laurent({{0, lead}, {1, sample::disk_point(g, 1.0)}}));
    return s;
  };
}

inline TrialBuilder zero_product_builder(bool real_symmetric) {
  return [=](std::uint64_t seed, const std::string& mode, const SuiteSizes& sizes) {
    ProblemSpec s = base(seed, mode, sizes, 1, real_symmetric);
    Rng g = builder_rng(seed);
    s.params["alpha"] = sample::alpha(g, kAllRegimes);
    const int n = static_cast<int>(s.inner_at("u").degree());
    const int full = (1 << n) - 1;
    s.params["split"] = static_cast<double>(n == 1 ? sample::integer(g, 0, 1) : sample::integer(g, 1, full - 1));
    s.params["scale1"] = sample::box(g) + 1.5;
    s.params["scale2"] = sample::box(g) - 1.5;
    if (mode == "converse" && sample::coin(g, 0.7)) {
      ExtendedScalar b = sample::alpha(g, kAllRegimes);
      while (b.chordal_distance(s.xparam("alpha")) < 0.2) b = sample::alpha(g, kAllRegimes);
      s.params["alpha_b"] = b;
    }
    return s;
  };
}

/// Factors outside the scalar-multiple-of-D case: symbols of degree at least one.
inline TrialBuilder non_scalar_pair() {
  return [](std::uint64_t seed, const std::string& mode, const SuiteSizes& sizes) {
    ProblemSpec s = class_pair(1, true, false, 2)(seed, mode, sizes);
    Rng g = builder_rng(seed ^ 0x9e3779b97f4a7c15ull);
    const int hi = std::max(1, sizes.symbol_degree_range.second);
    s.symbols.insert_or_assign("phi", sample::laurent(g, sample::integer(g, 1, hi)));
    s.symbols.insert_or_assign("psi", sample::laurent(g, sample::integer(g, 1, hi)));
    return s;
  };
}

inline TrialBuilder calculus_builder() {
  return [](std::uint64_t seed, const std::string& mode, const SuiteSizes& sizes) {
    ProblemSpec s = base(seed, mode, sizes, 1, true);
    Rng g = builder_rng(seed);
    s.params["alpha"] = sample::alpha(g, {AlphaRegime::Disk, AlphaRegime::Circle, AlphaRegime::Exterior, AlphaRegime::Zero});
    s.symbols.insert_or_assign("psi1", sample::polynomial(g, sample::integer(g, 0, 3)));
    s.symbols.insert_or_assign("psi2", sample::polynomial(g, sample::integer(g, 0, 3)));
    return s;
  };
}

inline TrialBuilder rank_one_builder() {
  return [](std::uint64_t seed, const std::string& mode, const SuiteSizes& sizes) {
    ProblemSpec s = base(seed, mode, sizes, 1, true);
    if (mode == "example") {
      s.set_inner("u", monomial_inner(2));
      s.params["lambda"] = 0.3;
    }
    return s;
  };
}

}  // namespace trials

// ---------------------------------------------------------------------------
// Registry

inline const std::vector<TheoremEntry>& theorem_registry() {
  using namespace trials;
  const std::vector<std::string> identity_mode = {"identity"};
  const std::vector<std::string> both = {"forward", "converse"};
  static const std::vector<TheoremEntry> entries = {
      {"kernel-core", "core", "reproducing kernels, conjugate kernels, boundary kernels and defect operators", identity_mode,
       plain(1, false), kernel_core},
      {"hat-kernels", "core", "U maps kernels of K_u to kernels of K_{hat u} at conj(lambda)", identity_mode, plain(1, false),
       hat_kernels},
      {"sedlock-classes", "core", "class recovery, adjoint law, same-class product closure, Clark regime", both,
       [](std::uint64_t seed, const std::string& mode, const SuiteSizes& sizes) {
         return class_pair(1, false, false)(seed, mode, sizes);
       },
       sedlock_classes},
      {"atto-facts", "core", "ATTO zero symbols, displacement, anchors, C-symmetry and rank-one ATTOs", identity_mode,
       plain(2, false), atto_facts},
      {"atto-product", "core", "ATTO product criterion", both,
       [](std::uint64_t seed, const std::string& mode, const SuiteSizes& sizes) {
         ProblemSpec s = class_pair(3, false, false)(seed, mode, sizes);
         if (mode == "forward") s.params["variant"] = static_cast<double>(builder_rng(seed)() % 2);
         return s;
       },
       [](const ProblemSpec& s) {
         TrialOutcome out;
         const SpacePtr ku = s.space("u");
         OperatorMatrix a = tto_matrix(s.space("v"), s.space("w"), s.symbol("phi"));
         OperatorMatrix b = tto_matrix(ku, s.space("v"), s.symbol("psi"));
         if (s.mode == "forward" && s.param("variant").real() > 0.5) {
           const cplx lambda = s.param("lambda");
           a = rank_one(conj_kernel(s.space("w"), lambda), kernel(s.space("v"), lambda));
           b = rank_one(conj_kernel(s.space("v"), lambda), kernel(ku, lambda));
         } else if (s.mode == "forward" || s.has_param("alpha_b")) {
           const ExtendedScalar a2 = s.has_param("alpha_b") ? s.xparam("alpha_b") : s.xparam("alpha");
           a = sedlock_op(project(ku, s.symbol("phi")), s.xparam("alpha"), s.param("c"));
           b = sedlock_op(project(ku, s.symbol("psi")), a2);
         }
         trials::record_verdict(out, atto_product_test(a, b, s.tol));
         return out;
       }},
      {"atho-facts", "core", "ATHO adjoints, zero symbols, symbol space, displacement and rank-one ATHOs", identity_mode,
       plain(2, false), atho_facts},
      {"conjugation-dictionary", "dictionary", "eight conjugation identities between ATTOs and ATHOs", identity_mode,
       plain(2, false), conjugation_dictionary},
      {"membership-transport", "dictionary", "six membership transports under C and U", identity_mode, plain(2, false),
       membership_transport},
      {"hat-class-transport", "dictionary", "U carries class alpha of K_{hat u} to class conj(alpha) of K_u", identity_mode,
       plain(1, false, kAllRegimes), hat_class_transport},
      {"involution-d", "dictionary", "D = C_u U = B_{conj u}, D^2 = I and its intertwining identities", identity_mode,
       plain(2, true), involution_d},
      {"atho-product-hankel", "dictionary", "four equivalent forms of an ATHO product in H(u, w)", both, plain(3, false),
       [](const ProblemSpec& s) { return product_chain_trial(s, false); }},
      {"atho-product-toeplitz-chain", "dictionary", "four equivalent forms of an ATHO product in T(u, w)", both,
       plain(3, false), [](const ProblemSpec& s) { return product_chain_trial(s, true); }},
      {"tho-unitary", "algebraic", "six unitarity conditions for a THO", {"forward", "converse", "scaled"},
       unitary_builder(), tho_unitary},
      {"atho-unitary", "algebraic", "unitarity conditions for an ATHO from K_u to K_{hat u}", {"forward", "converse", "scaled"},
       asymmetric_unitary_builder(), atho_unitary},
      {"tho-inverse", "algebraic", "inverse of a THO is a THO iff the class chain holds", both, inverse_builder(),
       tho_inverse},
      {"tho-zero-product", "algebraic", "B1 B2 = 0 iff a common class with vanishing spectral product", both,
       zero_product_builder(true), tho_zero_product},
      {"atho-zero-product", "algebraic", "zero products of ATHOs between K_u and K_{hat u}", both,
       zero_product_builder(false), atho_zero_product},
      {"tho-product-toeplitz", "products", "B1 B2 in T(u) through intertwining with S^alpha", both,
       class_pair(1, true, true), [](const ProblemSpec& s) { return tho_product_toeplitz(s, true); }},
      {"tho-product-classes", "products", "B1 B2 in T(u) iff B1 D and D B2 share a class", both, class_pair(1, true, true),
       [](const ProblemSpec& s) { return tho_product_toeplitz(s, false); }},
      {"tho-product-symbols", "products", "symbol congruences certifying B1 B2 in T(u)", both, non_scalar_pair(),
       tho_product_symbols},
      {"tho-product-calculus", "products", "factor and product symbols through the functional calculus", identity_mode,
       calculus_builder(), tho_product_calculus},
      {"mixed-product", "products", "A B in H(u) through commutation and intertwining", both, class_pair(1, true, true),
       [](const ProblemSpec& s) { return mixed_product(s, Order::AB, true); }},
      {"mixed-product-classes", "products", "A B in H(u) iff A and B D share a class", both, class_pair(1, true, true),
       [](const ProblemSpec& s) { return mixed_product(s, Order::AB, false); }},
      {"mixed-product-reversed", "products", "B A in H(u) iff A and D B share a class", both, class_pair(1, true, true),
       [](const ProblemSpec& s) { return mixed_product(s, Order::BA, false); }},
      {"rank-one-products", "products", "products of rank-one THOs and TTOs", {"identity", "example"}, rank_one_builder(),
       rank_one_products_trial},
      {"atho-product-atto", "asymmetric-products", "B1 B2 in T(u, w) for ATHOs", both, plain(3, false),
       [](const ProblemSpec& s) { return atho_product_atto(s, false); }},
      {"atho-product-tto", "asymmetric-products", "B1 B2 in T(u) for ATHOs through K_v", both, plain(2, false),
       [](const ProblemSpec& s) { return atho_product_atto(s, true); }},
      {"atho-gram", "asymmetric-products", "B B* in T(u) with a symmetric witness", both, plain(2, false), atho_gram},
      {"atho-atto-product", "asymmetric-products", "B A in H(u, w) for an ATHO B and an ATTO A", both, plain(3, false),
       atho_atto_product},
      {"atto-atho-product", "asymmetric-products", "A B in H(u, w) for an ATTO A and an ATHO B", both, plain(3, false),
       atto_atho_product},
  };
  return entries;
}

inline const TheoremEntry& find_theorem(const std::string& id) {
  for (const TheoremEntry& e : theorem_registry())
    if (e.id == id) return e;
  throw Error(ErrorKind::InvalidInput, "unknown theorem id '" + id + "'");
}

/// Replays a problem spec under its own quadrature settings; module errors are captured in the outcome.
inline TrialOutcome run_trial(const ProblemSpec& spec) {
  QuadratureOptions q = quadrature_options();
  q.tolerance = spec.quad_tol;
  q.max_nodes = spec.quad_cap;
  const ScopedQuadrature guard(q);
  try {
    TrialOutcome out = find_theorem(spec.operation).evaluate(spec);
    return out;
  } catch (const Error& e) {
    TrialOutcome out;
    out.pass = false;
    out.error = e.what();
    out.details["error_kind"] = to_string(e.kind());
    return out;
  } catch (const std::exception& e) {
    TrialOutcome out;
    out.pass = false;
    out.error = e.what();
    return out;
  }
}

}  // namespace truncop

#endif  // TRUNCOP_TRIALS_HPP
