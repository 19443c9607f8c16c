// Matrices of the compressed shift, rank-one maps, and truncated Toeplitz/Hankel operators.
#ifndef TRUNCOP_OPERATORS_HPP
#define TRUNCOP_OPERATORS_HPP

#include <utility>

#include "truncop/modelspace.hpp"

namespace truncop {

/// A (linear or antilinear) map K_u -> K_v in Takenaka-Malmquist coordinates.
/// Composition is only defined when the inner spaces carry identical generator data.
class OperatorMatrix {
 public:
  OperatorMatrix(SpacePtr domain, SpacePtr codomain, Matrix matrix, bool antilinear = false)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), map_{std::move(matrix), antilinear} {
    if (map_.matrix.rows() != codomain_->size() || map_.matrix.cols() != domain_->size())
      throw Error(ErrorKind::SpaceMismatch, "matrix shape does not match the tagged spaces");
  }
  OperatorMatrix(SpacePtr domain, SpacePtr codomain, ConjugateLinearMap map)
      : OperatorMatrix(std::move(domain), std::move(codomain), std::move(map.matrix), map.conjugates_input) {}

  const SpacePtr& domain() const { return domain_; }
  const SpacePtr& codomain() const { return codomain_; }
  const Matrix& matrix() const { return map_.matrix; }
  bool antilinear() const { return map_.conjugates_input; }
  const ConjugateLinearMap& map() const { return map_; }

  SpaceElement apply(const SpaceElement& x) const {
    if (!same_space(*x.space, *domain_)) throw Error(ErrorKind::SpaceMismatch, "operand is not in the domain");
    return {codomain_, map_.apply(x.coords)};
  }

  /// Hilbert-space adjoint; for antilinear maps <Ax, y> = conj(<x, A*y>).
  OperatorMatrix adjoint() const {
    return {codomain_, domain_, antilinear() ? Matrix(matrix().transpose()) : Matrix(matrix().adjoint()), antilinear()};
  }

  double norm() const { return map_.matrix.norm(); }

  double spectral_norm() const {
    if (matrix().size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(matrix());
    return svd.singularValues()(0);
  }

  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (!same_space(*a.domain_, *b.codomain_))
      throw Error(ErrorKind::SpaceMismatch, "composition across different model spaces");
    return {b.domain_, a.codomain_, a.map_.compose(b.map_)};
  }
  friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
    a.require_compatible(b);
    return {a.domain_, a.codomain_, Matrix(a.matrix() + b.matrix()), a.antilinear()};
  }
  friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
    a.require_compatible(b);
    return {a.domain_, a.codomain_, Matrix(a.matrix() - b.matrix()), a.antilinear()};
  }
  friend OperatorMatrix operator*(cplx s, const OperatorMatrix& a) {
    return {a.domain_, a.codomain_, Matrix(s * a.matrix()), a.antilinear()};
  }

 private:
  void require_compatible(const OperatorMatrix& b) const {
    if (!same_space(*domain_, *b.domain_) || !same_space(*codomain_, *b.codomain_) || antilinear() != b.antilinear())
      throw Error(ErrorKind::SpaceMismatch, "adding operators with different spaces or linearity");
  }

  SpacePtr domain_;
  SpacePtr codomain_;
  ConjugateLinearMap map_;
};

inline OperatorMatrix identity(const SpacePtr& space) {
  return {space, space, Matrix::Identity(space->size(), space->size())};
}

inline OperatorMatrix zero_operator(const SpacePtr& domain, const SpacePtr& codomain) {
  return {domain, codomain, Matrix::Zero(codomain->size(), domain->size())};
}

/// Frobenius distance between two operators with the same tags.
inline double distance(const OperatorMatrix& a, const OperatorMatrix& b) { return (a - b).norm(); }

inline OperatorMatrix conjugation_C_op(const SpacePtr& space) { return {space, space, conjugation_C(space)}; }

inline OperatorMatrix conjugation_U_op(const SpacePtr& space, const SpacePtr& target) {
  return {space, target, conjugation_U(space, target)};
}

/// f (x) g : h -> f <h, g>.
inline OperatorMatrix rank_one(const SpaceElement& f, const SpaceElement& g) {
  if (!f.space || !g.space) throw Error(ErrorKind::SpaceMismatch, "rank-one factors need spaces");
  return {g.space, f.space, Matrix(f.coords * g.coords.adjoint())};
}

/// A^{u,v}_phi: entries <phi e_j^u, e_i^v>.
/// A^{u,v}_phi for a symbol given pointwise on the circle.
template <class F>
OperatorMatrix tto_matrix_fn(const SpacePtr& domain, const SpacePtr& codomain, F&& phi) {
  const Matrix m = circle_mean(codomain->size(), domain->size(), [&](const std::vector<cplx>& nodes, Matrix& sum) {
    const Matrix in = domain->basis_matrix(nodes);
    const Matrix out = codomain->basis_matrix(nodes);
    Vector w(static_cast<Eigen::Index>(nodes.size()));
    for (std::size_t k = 0; k < nodes.size(); ++k) w(static_cast<Eigen::Index>(k)) = phi(nodes[k]);
    sum.noalias() += out.adjoint() * w.asDiagonal() * in;
  });
  return {domain, codomain, m};
}

inline OperatorMatrix tto_matrix(const SpacePtr& domain, const SpacePtr& codomain, const RationalSymbol& phi) {
  phi.require_circle_safe();
  return tto_matrix_fn(domain, codomain, [&](cplx z) { return phi(z); });
}

/// B^{u,v}_phi = P_v J (I-P)(phi f). Since J maps K_v into conj(z H^2) the entries reduce to
/// <phi e_j^u, J e_i^v> = mean(phi e_j^u z conj(e_i^v(conj z))).
template <class F>
OperatorMatrix tho_matrix_fn(const SpacePtr& domain, const SpacePtr& codomain, F&& phi) {
  const Matrix m = circle_mean(codomain->size(), domain->size(), [&](const std::vector<cplx>& nodes, Matrix& sum) {
    const Matrix in = domain->basis_matrix(nodes);
    std::vector<cplx> mirrored(nodes.size());
    Vector w(static_cast<Eigen::Index>(nodes.size()));
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      mirrored[k] = std::conj(nodes[k]);
      w(static_cast<Eigen::Index>(k)) = phi(nodes[k]) * nodes[k];
    }
    const Matrix out = codomain->basis_matrix(mirrored);
    sum.noalias() += out.adjoint() * w.asDiagonal() * in;
  });
  return {domain, codomain, m};
}

inline OperatorMatrix tho_matrix(const SpacePtr& domain, const SpacePtr& codomain, const RationalSymbol& phi) {
  phi.require_circle_safe();
  return tho_matrix_fn(domain, codomain, [&](cplx z) { return phi(z); });
}

/// A^{u,v}_{f + conj g} with f in K_v and g in K_u, evaluated through the basis.
inline OperatorMatrix tto_from_elements(const SpacePtr& domain, const SpacePtr& codomain, const SpaceElement& f,
                                        const SpaceElement& g) {
  return tto_matrix_fn(domain, codomain, [&](cplx z) { return f(z) + std::conj(g(z)); });
}

/// B^{u,v}_{conj f}, evaluated through the basis.
inline OperatorMatrix tho_from_conj_element(const SpacePtr& domain, const SpacePtr& codomain, const SpaceElement& f) {
  return tho_matrix_fn(domain, codomain, [&](cplx z) { return std::conj(f(z)); });
}

/// S_u: compression of multiplication by z.
inline OperatorMatrix shift(const SpacePtr& space) {
  return {space, space, space->cached("S", [&] { return tto_matrix(space, space, RationalSymbol::z()).matrix(); })};
}
inline OperatorMatrix shift_adj(const SpacePtr& space) { return shift(space).adjoint(); }

/// (I - S S*, I - S* S), each checked against its rank-one kernel form.
inline std::pair<OperatorMatrix, OperatorMatrix> defects(const SpacePtr& space) {
  const OperatorMatrix s = shift(space);
  const OperatorMatrix id = identity(space);
  OperatorMatrix left = id - s * s.adjoint();
  OperatorMatrix right = id - s.adjoint() * s;
  const SpaceElement k = k0(space);
  const SpaceElement kt = k0_tilde(space);
  if (distance(left, rank_one(k, k)) > 1e-10 || distance(right, rank_one(kt, kt)) > 1e-10)
    throw Error(ErrorKind::InvalidInput, "defect operators disagree with their rank-one forms");
  return {std::move(left), std::move(right)};
}

/// S_u^alpha = S_u + alpha/(1 - alpha conj(u(0))) k_0 (x) k~_0.
inline OperatorMatrix clark_perturbation(const SpacePtr& space, cplx alpha) {
  const cplx u0 = space->generator()(cplx(0.0, 0.0));
  const cplx denom = 1.0 - alpha * std::conj(u0);
  if (std::abs(denom) < 1e-14) throw Error(ErrorKind::SingularDenominator, "1 - alpha conj(u(0)) vanishes");
  return shift(space) + (alpha / denom) * rank_one(k0(space), k0_tilde(space));
}

/// (B^{u,v}_phi)* against B^{v,u}_{phi^}.
inline bool adjoint_tho_check(const SpacePtr& domain, const SpacePtr& codomain, const RationalSymbol& phi,
                              double tol = 1e-9) {
  const OperatorMatrix lhs = tho_matrix(domain, codomain, phi).adjoint();
  const OperatorMatrix rhs = tho_matrix(codomain, domain, phi.hat());
  return distance(lhs, rhs) < tol;
}

/// ū realized on the circle as 1/u.
inline RationalSymbol conj_inner_symbol(const InnerFunction& u) { return u.symbol().reciprocal(); }

}  // namespace truncop

#endif  // TRUNCOP_OPERATORS_HPP
