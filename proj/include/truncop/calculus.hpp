// Sedlock-class members, functional calculus of S_u^alpha, and the involution D.
#ifndef TRUNCOP_CALCULUS_HPP
#define TRUNCOP_CALCULUS_HPP

#include "truncop/clark.hpp"

namespace truncop {

/// phi + alpha conj(S_u C_u phi) + c, or conj(phi) + c for alpha = infinity.
inline RationalSymbol sedlock_symbol(const SpaceElement& phi, const ExtendedScalar& alpha, cplx c = cplx(0.0, 0.0)) {
  const SpacePtr& space = phi.space;
  if (alpha.is_infinite()) return phi.symbol().conj_on_circle() + c;
  const SpaceElement scphi = shift(space).apply(conjugation_C_op(space).apply(phi));
  return phi.symbol() + alpha.value() * scphi.symbol().conj_on_circle() + c;
}

/// Assembled term by term, each term evaluated through the basis of K_u.
inline OperatorMatrix sedlock_op(const SpaceElement& phi, const ExtendedScalar& alpha, cplx c = cplx(0.0, 0.0)) {
  const SpacePtr& space = phi.space;
  const OperatorMatrix scalar = c * identity(space);
  if (alpha.is_infinite()) return tto_matrix_fn(space, space, [&](cplx z) { return std::conj(phi(z)); }) + scalar;
  const SpaceElement scphi = shift(space).apply(conjugation_C_op(space).apply(phi));
  return tto_matrix_fn(space, space, [&](cplx z) { return phi(z); }) +
         alpha.value() * tto_matrix_fn(space, space, [&](cplx z) { return std::conj(scphi(z)); }) + scalar;
}

inline void require_disk_analytic(const RationalSymbol& psi) {
  for (cplx p : psi.poles())
    if (std::abs(p) <= 1.0 + 1e-6) throw Error(ErrorKind::InvalidInput, "calculus symbol must be analytic on the closed disk");
}

/// Psi(S_u^alpha) for |alpha| <= 1, and the class-alpha operator A_{alpha conj(Psi)/(alpha - u)} for |alpha| > 1.
inline OperatorMatrix functional_calculus(const SpacePtr& space, const ExtendedScalar& alpha, const RationalSymbol& psi) {
  require_disk_analytic(psi);
  const RationalSymbol u = space->generator().symbol();
  RationalSymbol symbol = psi;
  if (alpha.is_infinite()) {
    symbol = psi.conj_on_circle();
  } else {
    const cplx a = alpha.value();
    const double modulus = std::abs(a);
    if (std::abs(modulus - 1.0) <= kUnitCircleTol) {
      const ClarkData clark = clark_points(space, a);
      std::vector<cplx> values;
      for (cplx zeta : clark.points) values.push_back(psi(zeta));
      return spectral_operator(space, clark, values);
    }
    if (modulus < 1.0) {
      // 1 - alpha/u = (u - alpha)/u on the circle.
      symbol = psi * u / (u - a);
    } else {
      symbol = a * psi.conj_on_circle() / (a - u);
    }
  }
  try {
    symbol.require_circle_safe();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::PoleOnCircle) throw Error(ErrorKind::SingularDenominator, "calculus denominator vanishes on the circle");
    throw;
  }
  return tto_matrix(space, space, symbol);
}

/// D = C_u U on K_u for real-symmetric u, checked against B^u_{conj u}.
inline OperatorMatrix dee(const SpacePtr& space) {
  if (!is_real_symmetric(space->generator())) throw Error(ErrorKind::NotRealSymmetric, "D needs a real-symmetric generator");
  return {space, space, space->cached("D", [&] {
            const OperatorMatrix d = conjugation_C_op(space) * conjugation_U_op(space, space);
            const OperatorMatrix b = tho_matrix(space, space, conj_inner_symbol(space->generator()));
            if (distance(d, b) > 1e-9) throw Error(ErrorKind::InvalidInput, "C_u U disagrees with B_{conj u}");
            return d.matrix();
          })};
}

}  // namespace truncop

#endif  // TRUNCOP_CALCULUS_HPP
