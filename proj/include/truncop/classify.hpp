// Membership tests for T(u,v) and H(u,v), Sedlock class detection, and the THO structure reports.
#ifndef TRUNCOP_CLASSIFY_HPP
#define TRUNCOP_CLASSIFY_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/QR>

#include "truncop/calculus.hpp"

namespace truncop {

inline constexpr double kMembershipTol = 1e-9;
inline constexpr double kRebuildTol = 1e-8;
inline constexpr double kClassTol = 1e-6;

// ---------------------------------------------------------------------------
// Cross decomposition M = Phi (x) a + b (x) Psi

struct CrossDecomposition {
  bool success = false;
  SpaceElement left;   // Phi, in the codomain
  SpaceElement right;  // Psi, in the domain, gauge <Psi, a> = 0
  double residual_norm = 0.0;
};

inline CrossDecomposition cross_decompose(const OperatorMatrix& m, const SpaceElement& a, const SpaceElement& b,
                                          double tol = kMembershipTol) {
  if (m.antilinear()) throw Error(ErrorKind::InvalidInput, "cross decomposition needs a linear map");
  if (!same_space(*a.space, *m.domain()) || !same_space(*b.space, *m.codomain()))
    throw Error(ErrorKind::SpaceMismatch, "anchors must live in the domain and codomain");
  const double na = a.coords.squaredNorm();
  const double nb = b.coords.squaredNorm();
  if (std::sqrt(na) < 1e-12 || std::sqrt(nb) < 1e-12) throw Error(ErrorKind::ZeroAnchor, "anchor vanishes");

  const Matrix& mm = m.matrix();
  const Matrix pa = Matrix::Identity(mm.cols(), mm.cols()) - a.coords * a.coords.adjoint() / na;
  // Psi^H = b^H M P_{a perp} / |b|^2
  const Eigen::RowVectorXcd psi_h = b.coords.adjoint() * mm * pa / nb;
  const Matrix rest = mm - b.coords * psi_h;
  const Vector phi = rest * a.coords / na;

  CrossDecomposition out;
  out.left = {m.codomain(), phi};
  out.right = {m.domain(), psi_h.adjoint()};
  out.residual_norm = (rest - phi * a.coords.adjoint()).norm();
  out.success = within(out.residual_norm, mm.norm(), tol);
  return out;
}

/// For Hermitian M with a = b the witnesses may be rebalanced so that Phi = Psi.
/// Returns the common witness and the defect |(Phi - Psi) - r a| with r real.
inline std::pair<SpaceElement, double> symmetric_witness(const CrossDecomposition& d, const SpaceElement& a) {
  const Vector diff = d.left.coords - d.right.coords;
  const cplx r = a.coords.dot(diff) / a.coords.squaredNorm();
  const double defect = (diff - r * a.coords).norm() + std::abs(r.imag()) * a.coords.norm();
  const cplx c = -0.5 * r.real();
  return {{d.left.space, d.left.coords + c * a.coords}, defect};
}

// ---------------------------------------------------------------------------
// T(u,v) and H(u,v)

struct TtoMembership {
  bool member = false;
  SpaceElement psi1;  // in K_v
  SpaceElement psi2;  // in K_u; A = A_{psi1 + conj(psi2)}
  double displacement_residual = 0.0;
  double rebuild_residual = 0.0;
};

inline TtoMembership is_tto(const OperatorMatrix& a, double tol = kMembershipTol) {
  TtoMembership out;
  out.psi1 = zero_element(a.codomain());
  out.psi2 = zero_element(a.domain());
  if (a.antilinear()) {
    out.displacement_residual = out.rebuild_residual = std::numeric_limits<double>::infinity();
    return out;
  }
  const OperatorMatrix disp = a - shift(a.codomain()) * a * shift_adj(a.domain());
  const CrossDecomposition d = cross_decompose(disp, k0(a.domain()), k0(a.codomain()), tol);
  out.displacement_residual = d.residual_norm;
  out.psi1 = d.left;
  out.psi2 = d.right;
  if (!d.success) {
    out.rebuild_residual = std::numeric_limits<double>::infinity();
    return out;
  }
  out.rebuild_residual = distance(tto_from_elements(a.domain(), a.codomain(), d.left, d.right), a);
  out.member = within(out.rebuild_residual, a.norm(), kRebuildTol);
  return out;
}

inline RationalSymbol tto_symbol(const TtoMembership& m) { return m.psi1.symbol() + m.psi2.symbol().conj_on_circle(); }

struct ThoMembership {
  bool member = false;
  SpaceElement psi;  // in K_{u hat(v)}; B = B_{conj(psi)}
  double displacement_residual = 0.0;
  double rebuild_residual = 0.0;
};

inline RationalSymbol tho_symbol(const ThoMembership& m) { return m.psi.symbol().conj_on_circle(); }

/// Matrices of B^{u,v}_{conj f_k} for the orthonormal basis f_k of K_w, stacked as columns of vec(.).
inline Matrix tho_conj_basis_columns(const SpacePtr& domain, const SpacePtr& codomain, const SpacePtr& w) {
  const Eigen::Index nu = domain->size();
  const Eigen::Index nv = codomain->size();
  const Eigen::Index nw = w->size();
  const Matrix stacked = circle_mean(nv * nw, nu, [&](const std::vector<cplx>& nodes, Matrix& sum) {
    std::vector<cplx> mirrored(nodes.size());
    for (std::size_t m = 0; m < nodes.size(); ++m) mirrored[m] = std::conj(nodes[m]);
    const Matrix eu = domain->basis_matrix(nodes);
    const Matrix ev = codomain->basis_matrix(mirrored).conjugate();
    const Matrix fw = w->basis_matrix(nodes).conjugate();
    Matrix left(static_cast<Eigen::Index>(nodes.size()), nv * nw);
    for (Eigen::Index k = 0; k < nw; ++k)
      for (std::size_t m = 0; m < nodes.size(); ++m) {
        const auto r = static_cast<Eigen::Index>(m);
        left.block(r, k * nv, 1, nv) = (fw(r, k) * nodes[m]) * ev.row(r);
      }
    sum.noalias() += left.transpose() * eu;
  });
  Matrix columns(nv * nu, nw);
  for (Eigen::Index k = 0; k < nw; ++k) {
    const Matrix block = stacked.block(k * nv, 0, nv, nu);
    columns.col(k) = Eigen::Map<const Vector>(block.data(), nv * nu);
  }
  return columns;
}

inline ThoMembership is_tho(const OperatorMatrix& b, double tol = kMembershipTol) {
  const SpacePtr w = ModelSpace::make(product(b.domain()->generator(), hat(b.codomain()->generator())));
  ThoMembership out;
  out.psi = zero_element(w);
  if (b.antilinear()) {
    out.displacement_residual = out.rebuild_residual = std::numeric_limits<double>::infinity();
    return out;
  }
  const OperatorMatrix disp = b - shift_adj(b.codomain()) * b * shift_adj(b.domain());
  const CrossDecomposition d = cross_decompose(disp, k0(b.domain()), k0_tilde(b.codomain()), tol);
  out.displacement_residual = d.residual_norm;
  if (!d.success) {
    out.rebuild_residual = std::numeric_limits<double>::infinity();
    return out;
  }
  // B = sum_k conj(y_k) B_{conj f_k}; the kernel of psi -> B_{conj psi} is span{k_0^w}, so take the min-norm solution.
  const Matrix columns = tho_conj_basis_columns(b.domain(), b.codomain(), w);
  const Matrix bm = b.matrix();
  const Vector target = Eigen::Map<const Vector>(bm.data(), bm.size());
  const Vector x = columns.completeOrthogonalDecomposition().solve(target);
  out.psi = {w, x.conjugate()};
  const OperatorMatrix rebuilt = tho_from_conj_element(b.domain(), b.codomain(), out.psi);
  out.rebuild_residual = distance(rebuilt, b);
  out.member = within(out.rebuild_residual, b.norm(), kRebuildTol);
  return out;
}

inline bool symbol_is_zero_tto(const SpacePtr& u, const SpacePtr& v, const RationalSymbol& phi) {
  return tto_matrix(u, v, phi).norm() < kMembershipTol;
}

inline bool symbol_is_zero_tho(const SpacePtr& u, const SpacePtr& v, const RationalSymbol& phi) {
  return tho_matrix(u, v, phi).norm() < kMembershipTol;
}

// ---------------------------------------------------------------------------
// Sedlock classes

enum class Membership { None, All, Finite, Infinite };

inline const char* to_string(Membership m) {
  switch (m) {
    case Membership::None: return "none";
    case Membership::All: return "all";
    case Membership::Finite: return "finite";
    case Membership::Infinite: return "infinity";
  }
  return "unknown";
}

struct SedlockReport {
  Membership membership = Membership::None;
  ExtendedScalar alpha;
  double commutator_residual = 0.0;

  bool in_class() const { return membership != Membership::None; }
  /// True when A belongs to B_u^beta (always for scalar operators).
  bool contains(const ExtendedScalar& beta, double tol = kClassTol) const {
    if (membership == Membership::All) return true;
    if (membership == Membership::None) return false;
    return alpha.chordal_distance(beta) < tol;
  }
};

namespace detail {

struct AffineSolve {
  bool ok = false;
  ExtendedScalar alpha;
  double residual = 0.0;
};

// Best g in [A, S + g k0 (x) k~0] = C0 + g C1, mapped back through g = alpha / (1 - alpha conj(u(0))).
inline AffineSolve solve_commutator(const OperatorMatrix& a, double tol) {
  const SpacePtr& space = a.domain();
  const OperatorMatrix s = shift(space);
  const SpaceElement k = k0(space);
  const SpaceElement kt = k0_tilde(space);
  const Matrix c0 = (a * s - s * a).matrix();
  const Matrix c1 = (a.matrix() * k.coords) * kt.coords.adjoint() - k.coords * (a.matrix().adjoint() * kt.coords).adjoint();
  const double n1 = c1.squaredNorm();
  AffineSolve out;
  if (std::sqrt(n1) <= 1e-13 * std::max(1.0, a.norm())) {
    out.residual = c0.norm();
    out.alpha = cplx(0.0, 0.0);
    out.ok = within(out.residual, a.norm(), tol);
    return out;
  }
  const cplx t = -(c1.conjugate().cwiseProduct(c0)).sum() / n1;
  out.residual = (c0 + t * c1).norm();
  const cplx ubar0 = std::conj(space->generator()(cplx(0.0, 0.0)));
  const cplx denom = 1.0 + t * ubar0;
  if (std::abs(denom) <= 1e-14 * std::max(1.0, std::abs(t)))
    out.alpha = ExtendedScalar::infinity();
  else if (std::abs(t / denom) < 1e-12)
    out.alpha = cplx(0.0, 0.0);
  else
    out.alpha = t / denom;
  out.ok = within(out.residual, a.norm(), tol);
  return out;
}

}  // namespace detail

inline bool is_scalar_operator(const OperatorMatrix& a, cplx* value = nullptr, double tol = kMembershipTol) {
  if (!same_space(*a.domain(), *a.codomain()) || a.antilinear()) return false;
  const cplx c = a.matrix().trace() / static_cast<double>(a.matrix().rows());
  if (value) *value = c;
  return within(distance(a, c * identity(a.domain())), a.norm(), tol);
}

/// Residual of [A, S^alpha] (|alpha| <= 1) or [A*, S^{1/conj(alpha)}] (|alpha| > 1).
inline double class_commutator_residual(const OperatorMatrix& a, const ExtendedScalar& alpha) {
  const SpacePtr& space = a.domain();
  if (alpha.is_finite() && std::abs(alpha.value()) <= 1.0) {
    const OperatorMatrix s = clark_perturbation(space, alpha.value());
    return distance(a * s, s * a);
  }
  const OperatorMatrix s = clark_perturbation(space, alpha.reciprocal_conjugate().value());
  const OperatorMatrix as = a.adjoint();
  return distance(as * s, s * as);
}

inline SedlockReport sedlock_class(const OperatorMatrix& a, double tol = kMembershipTol) {
  if (!same_space(*a.domain(), *a.codomain()) || a.antilinear())
    throw Error(ErrorKind::SpaceMismatch, "Sedlock classes live on a single model space");
  SedlockReport out;
  if (is_scalar_operator(a, nullptr, tol)) {
    out.membership = Membership::All;
    return out;
  }
  const detail::AffineSolve direct = detail::solve_commutator(a, tol);
  if (direct.ok && direct.alpha.is_finite() && std::abs(direct.alpha.value()) <= 1.0 + 1e-8) {
    out.membership = Membership::Finite;
    out.alpha = direct.alpha;
    out.commutator_residual = direct.residual;
    return out;
  }
  const detail::AffineSolve dual = detail::solve_commutator(a.adjoint(), tol);
  if (dual.ok && dual.alpha.is_finite() && std::abs(dual.alpha.value()) <= 1.0 + 1e-8) {
    out.alpha = dual.alpha.reciprocal_conjugate();
    out.membership = out.alpha.is_infinite() ? Membership::Infinite : Membership::Finite;
    out.commutator_residual = dual.residual;
    return out;
  }
  out.commutator_residual = std::min(direct.residual, dual.residual);
  return out;
}

/// Least-squares (phi, c) with A = A_{phi + alpha conj(S C phi) + c}; min-norm in the coordinates of phi.
struct SedlockFit {
  SpaceElement phi;
  cplx c{0.0, 0.0};
  double residual = 0.0;
};

inline SedlockFit sedlock_fit(const OperatorMatrix& a, const ExtendedScalar& alpha) {
  const SpacePtr& space = a.domain();
  const Eigen::Index n = space->size();
  Matrix columns(n * n, n + 1);
  for (Eigen::Index k = 0; k < n; ++k) {
    Vector e = Vector::Zero(n);
    e(k) = 1.0;
    const Matrix m = sedlock_op({space, e}, alpha).matrix();
    columns.col(k) = Eigen::Map<const Vector>(m.data(), n * n);
  }
  const Matrix id = Matrix::Identity(n, n);
  columns.col(n) = Eigen::Map<const Vector>(id.data(), n * n);
  const Matrix am = a.matrix();
  const Vector target = Eigen::Map<const Vector>(am.data(), n * n);
  const Vector x = columns.completeOrthogonalDecomposition().solve(target);
  SedlockFit out;
  // the class-infinity generator conj(phi) is antilinear in phi
  out.phi = {space, alpha.is_infinite() ? Vector(x.head(n).conjugate()) : Vector(x.head(n))};
  out.c = x(n);
  out.residual = distance(sedlock_op(out.phi, alpha, out.c), a);
  return out;
}

/// The operator whose spectral data represents class alpha: S^alpha for |alpha| <= 1, else (S^{1/conj alpha})*.
inline OperatorMatrix class_generator(const SpacePtr& space, const ExtendedScalar& alpha) {
  if (alpha.is_finite() && std::abs(alpha.value()) <= 1.0) return clark_perturbation(space, alpha.value());
  return clark_perturbation(space, alpha.reciprocal_conjugate().value()).adjoint();
}

/// Eigenvalues of the class generator and the values of A on its eigenvectors.
struct ClassSpectrum {
  std::vector<cplx> points;
  std::vector<cplx> values;
  bool degenerate = false;
};

inline ClassSpectrum class_spectrum(const OperatorMatrix& a, const ExtendedScalar& alpha) {
  const OperatorMatrix t = class_generator(a.domain(), alpha);
  Eigen::ComplexEigenSolver<Matrix> solver(t.matrix());
  ClassSpectrum out;
  const Vector ev = solver.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    for (Eigen::Index j = i + 1; j < ev.size(); ++j)
      if (std::abs(ev(i) - ev(j)) < 1e-7) out.degenerate = true;
    const Vector v = solver.eigenvectors().col(i);
    out.points.push_back(ev(i));
    out.values.push_back(v.dot(a.matrix() * v) / v.squaredNorm());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Unitary THOs

struct UnitaryReport {
  // isometry, coisometry, unitary, B*B - I in T, BB* - I in T, class condition with |Phi| = 1
  std::array<bool, 6> conditions{};
  bool agree = false;
  SedlockReport klass;
  std::vector<cplx> clark_values;
  double isometry_residual = 0.0;
  double coisometry_residual = 0.0;
};

inline const std::array<const char*, 6>& unitary_condition_names() {
  static const std::array<const char*, 6> names = {"isometry", "coisometry", "unitary",
                                                   "BstarB_minus_I_in_T", "BBstar_minus_I_in_T", "class_unimodular"};
  return names;
}

namespace detail {

// Fills the class condition: X in B^alpha with |alpha| = 1 and X = Phi(S^alpha) with |Phi(zeta_j)| = 1.
inline bool unimodular_class_condition(const OperatorMatrix& x, UnitaryReport& out) {
  out.klass = sedlock_class(x);
  ExtendedScalar alpha;
  if (out.klass.membership == Membership::All) {
    alpha = cplx(1.0, 0.0);
  } else if (out.klass.membership == Membership::Finite && std::abs(out.klass.alpha.modulus() - 1.0) < 1e-8) {
    alpha = out.klass.alpha.value() / std::abs(out.klass.alpha.value());
  } else {
    return false;
  }
  const ClarkData clark = clark_points(x.domain(), alpha.value());
  const SpectralValues sv = spectral_values(x, clark);
  out.clark_values = sv.values;
  if (!within(sv.residual, x.norm(), kRebuildTol)) return false;
  for (cplx v : sv.values)
    if (std::abs(std::abs(v) - 1.0) > kRebuildTol) return false;
  return true;
}

inline void finish_unitary_report(UnitaryReport& out) {
  out.agree = true;
  for (bool c : out.conditions) out.agree = out.agree && (c == out.conditions[0]);
}

}  // namespace detail

inline UnitaryReport tho_unitary_report(const OperatorMatrix& b, double tol = kMembershipTol) {
  const SpacePtr& space = b.domain();
  if (!is_real_symmetric(space->generator())) throw Error(ErrorKind::NotRealSymmetric, "unitary report needs real-symmetric u");
  if (!same_space(*space, *b.codomain()) || !is_tho(b).member) throw Error(ErrorKind::NotTHO, "operator is not a THO on K_u");
  const OperatorMatrix id = identity(space);
  const OperatorMatrix bsb = b.adjoint() * b;
  const OperatorMatrix bbs = b * b.adjoint();
  UnitaryReport out;
  out.isometry_residual = distance(bsb, id);
  out.coisometry_residual = distance(bbs, id);
  out.conditions[0] = within(out.isometry_residual, 1.0, tol);
  out.conditions[1] = within(out.coisometry_residual, 1.0, tol);
  out.conditions[2] = out.conditions[0] && out.conditions[1];
  out.conditions[3] = is_tto(bsb - id).member;
  out.conditions[4] = is_tto(bbs - id).member;
  out.conditions[5] = detail::unimodular_class_condition(dee(space) * b, out);
  detail::finish_unitary_report(out);
  return out;
}

/// Asymmetric variant for B: K_u -> K_{hat u}; the class condition is tested on U B C_u and on C_u U B.
struct AsymmetricUnitaryReport {
  UnitaryReport report;  // conditions: isometry, coisometry, unitary (both), B*B - I in T(u), BB* - I in T(hat u), class
  bool class_condition_ubc = false;
  bool class_condition_cub = false;
};

inline AsymmetricUnitaryReport tho_unitary_report_asymmetric(const OperatorMatrix& b, double tol = kMembershipTol) {
  const SpacePtr& ku = b.domain();
  const SpacePtr& kuh = b.codomain();
  if (!same_function(hat(ku->generator()), kuh->generator()) || !is_tho(b).member)
    throw Error(ErrorKind::NotTHO, "operator is not a THO from K_u to K_{hat u}");
  AsymmetricUnitaryReport out;
  UnitaryReport& r = out.report;
  const OperatorMatrix bsb = b.adjoint() * b;
  const OperatorMatrix bbs = b * b.adjoint();
  r.isometry_residual = distance(bsb, identity(ku));
  r.coisometry_residual = distance(bbs, identity(kuh));
  r.conditions[0] = within(r.isometry_residual, 1.0, tol);
  r.conditions[1] = within(r.coisometry_residual, 1.0, tol);
  r.conditions[2] = r.conditions[0] && r.conditions[1];
  r.conditions[3] = is_tto(bsb - identity(ku)).member;
  r.conditions[4] = is_tto(bbs - identity(kuh)).member;
  const OperatorMatrix cu = conjugation_C_op(ku);
  const OperatorMatrix ubc = conjugation_U_op(kuh, ku) * b * cu;
  const OperatorMatrix cub = cu * conjugation_U_op(kuh, ku) * b;
  UnitaryReport scratch;
  out.class_condition_cub = detail::unimodular_class_condition(cub, scratch);
  out.class_condition_ubc = detail::unimodular_class_condition(ubc, r);
  r.conditions[5] = out.class_condition_ubc;
  detail::finish_unitary_report(r);
  return out;
}

// ---------------------------------------------------------------------------
// Inverses of THOs

struct InverseClassReport {
  bool inverse_is_tho = false;
  bool chain_holds = false;     // B in D B^alpha and B^{-1} in D B^{1/alpha}
  bool symbol_forms_hold = false;
  bool symbol_forms_checked = false;
  SedlockReport klass;          // class of D B
  SedlockReport inverse_klass;  // class of D B^{-1}
  double condition_number = 0.0;
  double symbol_residual = 0.0;
};

/// conj(u) phi + alpha conj(u S C phi) + conj(u) c.
inline RationalSymbol hankel_class_symbol(const SpaceElement& phi, cplx alpha, cplx c) {
  const SpacePtr& space = phi.space;
  const RationalSymbol u = space->generator().symbol();
  const RationalSymbol ubar = u.reciprocal();
  const SpaceElement scphi = shift(space).apply(conjugation_C_op(space).apply(phi));
  return ubar * phi.symbol() + alpha * (u * scphi.symbol()).conj_on_circle() + c * ubar;
}

/// B_{hankel_class_symbol(phi, alpha, c)}, assembled term by term to avoid compounding near-repeated poles.
inline OperatorMatrix hankel_class_operator(const SpaceElement& phi, cplx alpha, cplx c) {
  const SpacePtr& space = phi.space;
  const RationalSymbol u = space->generator().symbol();
  const RationalSymbol ubar = u.reciprocal();
  const SpaceElement scphi = shift(space).apply(conjugation_C_op(space).apply(phi));
  return tho_matrix(space, space, ubar * phi.symbol()) + tho_matrix(space, space, alpha * (u * scphi.symbol()).conj_on_circle()) +
         tho_matrix(space, space, c * ubar);
}

inline InverseClassReport tho_inverse_class(const OperatorMatrix& b) {
  const SpacePtr& space = b.domain();
  if (!is_real_symmetric(space->generator())) throw Error(ErrorKind::NotRealSymmetric, "inverse report needs real-symmetric u");
  if (!same_space(*space, *b.codomain()) || !is_tho(b).member) throw Error(ErrorKind::NotTHO, "operator is not a THO on K_u");
  Eigen::JacobiSVD<Matrix> svd(b.matrix());
  const Vector::RealScalar smin = svd.singularValues().minCoeff();
  InverseClassReport out;
  out.condition_number = smin > 0 ? svd.singularValues()(0) / smin : std::numeric_limits<double>::infinity();
  if (!(out.condition_number < 1e8)) throw Error(ErrorKind::Singular, "THO is numerically singular");

  const OperatorMatrix binv(space, space, Matrix(b.matrix().inverse()));
  out.inverse_is_tho = is_tho(binv).member;
  const OperatorMatrix d = dee(space);
  out.klass = sedlock_class(d * b);
  out.inverse_klass = sedlock_class(d * binv);
  if (out.klass.membership == Membership::All) {
    out.chain_holds = out.inverse_klass.membership == Membership::All;
  } else if (out.klass.in_class() && out.inverse_klass.in_class()) {
    out.chain_holds = out.inverse_klass.contains(out.klass.alpha.reciprocal(), kClassTol);
  }
  if (out.chain_holds && out.klass.membership == Membership::Finite && std::abs(out.klass.alpha.value()) > 1e-12) {
    const cplx alpha = out.klass.alpha.value();
    const SedlockFit f1 = sedlock_fit(d * b, alpha);
    const SedlockFit f2 = sedlock_fit(d * binv, 1.0 / alpha);
    const double r1 = distance(hankel_class_operator(f1.phi, alpha, f1.c), b);
    const double r2 = distance(hankel_class_operator(f2.phi, 1.0 / alpha, f2.c), binv);
    out.symbol_forms_checked = true;
    out.symbol_residual = std::max(r1 / std::max(1.0, b.norm()), r2 / std::max(1.0, binv.norm()));
    out.symbol_forms_hold = out.symbol_residual < kRebuildTol;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Zero products of THOs

struct ZeroProductReport {
  bool product_is_zero = false;  // direct evaluation
  bool condition_holds = false;  // class condition with the regime-specific vanishing test
  bool agree = false;
  std::optional<ExtendedScalar> alpha;
  std::string regime;  // "trivial", "unimodular", "disk", "exterior", "none"
  double product_norm = 0.0;
  double vanishing_residual = 0.0;
};

/// Class condition for X1 X2 = 0 with X1, X2 Toeplitz on K_u: a common class alpha and vanishing of the
/// product of their spectral values on the spectrum of the class generator.
inline void toeplitz_zero_condition(const OperatorMatrix& x1, const OperatorMatrix& x2, ZeroProductReport& out,
                                    double tol = kMembershipTol) {
  const SpacePtr& space = x1.domain();
  if (x1.norm() <= 1e-12 || x2.norm() <= 1e-12) {
    out.regime = "trivial";
    out.condition_holds = true;
    return;
  }
  const SedlockReport r1 = sedlock_class(x1);
  const SedlockReport r2 = sedlock_class(x2);
  std::optional<ExtendedScalar> alpha;
  if (r1.membership == Membership::All && r2.membership == Membership::All)
    alpha = ExtendedScalar(cplx(0.0, 0.0));
  else if (r1.membership == Membership::All && r2.in_class())
    alpha = r2.alpha;
  else if (r2.membership == Membership::All && r1.in_class())
    alpha = r1.alpha;
  else if (r1.in_class() && r2.in_class() && r1.alpha.chordal_distance(r2.alpha) < kClassTol)
    alpha = r1.alpha;
  if (!alpha) {
    out.regime = "none";
    out.condition_holds = false;
    return;
  }
  out.alpha = alpha;
  const double scale = std::max(1.0, x1.norm() * x2.norm());
  double worst = 0.0;
  if (alpha->is_finite() && std::abs(std::abs(alpha->value()) - 1.0) < 1e-8) {
    out.regime = "unimodular";
    const ClarkData clark = clark_points(space, alpha->value() / std::abs(alpha->value()));
    const SpectralValues s1 = spectral_values(x1, clark);
    const SpectralValues s2 = spectral_values(x2, clark);
    for (std::size_t j = 0; j < s1.values.size(); ++j) worst = std::max(worst, std::abs(s1.values[j] * s2.values[j]));
  } else {
    out.regime = alpha->is_finite() && std::abs(alpha->value()) < 1.0 ? "disk" : "exterior";
    const ClassSpectrum s1 = class_spectrum(x1, *alpha);
    const ClassSpectrum s2 = class_spectrum(x2, *alpha);
    if (s1.degenerate) {
      // Repeated zeros of u_alpha: divisibility reduces to the functional-calculus product itself.
      worst = (x1 * x2).norm();
    } else {
      // Both factors are functions of the same generator, so they share its eigenvectors.
      for (std::size_t j = 0; j < s1.values.size(); ++j) worst = std::max(worst, std::abs(s1.values[j] * s2.values[j]));
    }
  }
  out.vanishing_residual = worst;
  out.condition_holds = within(worst, scale, tol);
}

/// B1 B2 = 0 for THOs on K_u (u real symmetric), through D B1 and B2 D.
inline ZeroProductReport zero_product_analysis(const OperatorMatrix& b1, const OperatorMatrix& b2,
                                               double tol = kMembershipTol) {
  const SpacePtr& space = b1.domain();
  if (!is_real_symmetric(space->generator())) throw Error(ErrorKind::NotRealSymmetric, "zero products need real-symmetric u");
  if (!is_tho(b1).member || !is_tho(b2).member) throw Error(ErrorKind::NotTHO, "factors must be THOs");
  ZeroProductReport out;
  out.product_norm = (b1 * b2).norm();
  out.product_is_zero = within(out.product_norm, b1.norm() * b2.norm(), tol);
  const OperatorMatrix d = dee(space);
  toeplitz_zero_condition(d * b1, b2 * d, out, tol);
  out.agree = out.condition_holds == out.product_is_zero;
  return out;
}

/// B1: K_{hat u} -> K_u and B2: K_u -> K_{hat u}; classes read from C_u B1 U and U B2 C_u.
/// The alternative placement B1 U C_u and C_u U B2 is evaluated as well and recorded.
struct AsymmetricZeroProductReport {
  ZeroProductReport report;
  ZeroProductReport alternative;
};

inline AsymmetricZeroProductReport atho_zero_product_analysis(const OperatorMatrix& b1, const OperatorMatrix& b2,
                                                              double tol = kMembershipTol) {
  const SpacePtr& ku = b2.domain();
  const SpacePtr& kuh = b2.codomain();
  if (!same_space(*b1.domain(), *kuh) || !same_space(*b1.codomain(), *ku))
    throw Error(ErrorKind::SpaceMismatch, "expected B1: K_{hat u} -> K_u and B2: K_u -> K_{hat u}");
  if (!is_tho(b1).member || !is_tho(b2).member) throw Error(ErrorKind::NotTHO, "factors must be THOs");
  AsymmetricZeroProductReport out;
  const double pn = (b1 * b2).norm();
  const bool zero = within(pn, b1.norm() * b2.norm(), tol);
  const OperatorMatrix cu = conjugation_C_op(ku);
  const OperatorMatrix u_fwd = conjugation_U_op(ku, kuh);
  const OperatorMatrix u_back = conjugation_U_op(kuh, ku);
  for (ZeroProductReport* r : {&out.report, &out.alternative}) {
    r->product_norm = pn;
    r->product_is_zero = zero;
  }
  toeplitz_zero_condition(cu * b1 * u_fwd, u_back * b2 * cu, out.report, tol);
  toeplitz_zero_condition(b1 * u_fwd * cu, cu * u_back * b2, out.alternative, tol);
  out.report.agree = out.report.condition_holds == zero;
  out.alternative.agree = out.alternative.condition_holds == zero;
  return out;
}

struct ZeroProductPair {
  OperatorMatrix b1;
  OperatorMatrix b2;
};

/// Toeplitz pair X1 = Phi(T), X2 = Psi(T) with T the generator of class alpha and Phi Psi vanishing on its spectrum.
/// `split[j]` selects the spectral points annihilated by Phi; Psi annihilates the rest.
inline ZeroProductPair construct_toeplitz_zero_pair(const SpacePtr& space, const ExtendedScalar& alpha,
                                                    const std::vector<bool>& split, const std::vector<cplx>& scales) {
  const std::size_t n = space->dim();
  if (split.size() != n || scales.size() < 2) throw Error(ErrorKind::InvalidInput, "split needs one flag per point");
  if (alpha.is_finite() && std::abs(std::abs(alpha.value()) - 1.0) < kUnitCircleTol) {
    const ClarkData clark = clark_points(space, alpha.value());
    std::vector<cplx> phi(n), psi(n);
    for (std::size_t j = 0; j < n; ++j) {
      phi[j] = split[j] ? cplx(0.0, 0.0) : scales[0] * std::polar(1.0, 0.3 * static_cast<double>(j + 1));
      psi[j] = split[j] ? scales[1] * std::polar(1.0, -0.7 * static_cast<double>(j + 1)) : cplx(0.0, 0.0);
    }
    return {spectral_operator(space, clark, phi), spectral_operator(space, clark, psi)};
  }
  const OperatorMatrix t = class_generator(space, alpha);
  Eigen::ComplexEigenSolver<Matrix> solver(t.matrix());
  const Vector ev = solver.eigenvalues();
  const bool exterior = !(alpha.is_finite() && std::abs(alpha.value()) < 1.0);
  poly::Coeffs phi{scales[0]}, psi{scales[1]};
  for (std::size_t j = 0; j < n; ++j) {
    // In the exterior regime the calculus yields hat(Psi)((S^{1/conj alpha})*), so roots enter conjugated.
    const cplx root = exterior ? std::conj(ev(static_cast<Eigen::Index>(j))) : ev(static_cast<Eigen::Index>(j));
    if (split[j])
      phi = poly::mul(phi, poly::linear(root));
    else
      psi = poly::mul(psi, poly::linear(root));
  }
  return {functional_calculus(space, alpha, RationalSymbol(phi, {cplx(1.0, 0.0)})),
          functional_calculus(space, alpha, RationalSymbol(psi, {cplx(1.0, 0.0)}))};
}

/// B1 = D Phi(T), B2 = Psi(T) D on K_u for real-symmetric u.
inline ZeroProductPair construct_zero_product(const SpacePtr& space, const ExtendedScalar& alpha,
                                              const std::vector<bool>& split, const std::vector<cplx>& scales) {
  const OperatorMatrix d = dee(space);
  const ZeroProductPair x = construct_toeplitz_zero_pair(space, alpha, split, scales);
  return {d * x.b1, x.b2 * d};
}

/// B1 = C_u Phi(T) U: K_{hat u} -> K_u and B2 = U Psi(T) C_u: K_u -> K_{hat u}.
inline ZeroProductPair construct_atho_zero_product(const SpacePtr& space, const ExtendedScalar& alpha,
                                                   const std::vector<bool>& split, const std::vector<cplx>& scales) {
  const SpacePtr hat_space = ModelSpace::make(hat(space->generator()));
  const OperatorMatrix cu = conjugation_C_op(space);
  const ZeroProductPair x = construct_toeplitz_zero_pair(space, alpha, split, scales);
  return {cu * x.b1 * conjugation_U_op(hat_space, space), conjugation_U_op(space, hat_space) * x.b2 * cu};
}

}  // namespace truncop

#endif  // TRUNCOP_CLASSIFY_HPP
