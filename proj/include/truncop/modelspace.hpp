// The model space K_u in Takenaka-Malmquist coordinates: kernels, projection, conjugations.
#ifndef TRUNCOP_MODELSPACE_HPP
#define TRUNCOP_MODELSPACE_HPP

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "truncop/blaschke.hpp"
#include "truncop/quadrature.hpp"

namespace truncop {

class ModelSpace;
using SpacePtr = std::shared_ptr<const ModelSpace>;

/// K_u = H^2 minus uH^2 with the orthonormal basis
///   e_k(z) = sqrt(1-|a_k|^2)/(1 - conj(a_k) z) * prod_{j<k} (z - a_j)/(1 - conj(a_j) z).
/// The Gram matrix is certified against the identity once, at construction.
class ModelSpace {
 public:
  static SpacePtr make(const InnerFunction& u) { return SpacePtr(new ModelSpace(u)); }

  const InnerFunction& generator() const { return u_; }
  std::size_t dim() const { return u_.degree(); }
  Eigen::Index size() const { return static_cast<Eigen::Index>(u_.degree()); }

  /// Basis functions as rational symbols.
  const std::vector<RationalSymbol>& basis() const { return basis_; }

  double gram_error() const { return gram_error_; }

  /// (e_0(z), ..., e_{n-1}(z)).
  Vector basis_values(cplx z) const {
    Vector out(size());
    cplx prefix(1.0, 0.0);
    const auto& zs = u_.zeros();
    for (std::size_t k = 0; k < zs.size(); ++k) {
      const cplx den = 1.0 - std::conj(zs[k]) * z;
      out(static_cast<Eigen::Index>(k)) = scales_[k] * prefix / den;
      prefix *= (z - zs[k]) / den;
    }
    return out;
  }

  /// Row m holds basis_values(nodes[m]).
  Matrix basis_matrix(const std::vector<cplx>& nodes) const {
    const auto count = static_cast<Eigen::Index>(nodes.size());
    Matrix out(count, size());
    const Eigen::Map<const Eigen::ArrayXcd> z(nodes.data(), count);
    Eigen::ArrayXcd prefix = Eigen::ArrayXcd::Ones(count);
    const auto& zs = u_.zeros();
    for (std::size_t k = 0; k < zs.size(); ++k) {
      const Eigen::ArrayXcd den = 1.0 - std::conj(zs[k]) * z;
      out.col(static_cast<Eigen::Index>(k)) = (scales_[k] * prefix / den).matrix();
      prefix *= (z - zs[k]) / den;
    }
    return out;
  }

  /// Memoizes an operator matrix of this space under the active quadrature options.
  Matrix cached(const std::string& name, const std::function<Matrix()>& compute) const {
    const QuadratureOptions& q = quadrature_options();
    const CacheKey key{name, q.initial_nodes, q.max_nodes, q.tolerance, q.fixed_nodes};
    {
      const std::lock_guard<std::mutex> lock(cache_mutex_);
      const auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
    }
    Matrix m = compute();
    const std::lock_guard<std::mutex> lock(cache_mutex_);
    cache_.emplace(key, m);
    return m;
  }

  /// The function sum_k coords_k e_k as a rational symbol over prod (1 - conj(a_j) z).
  RationalSymbol to_symbol(const Vector& coords) const {
    poly::Coeffs num{cplx(0.0, 0.0)};
    for (std::size_t k = 0; k < dim(); ++k)
      num = poly::add(num, poly::scale(common_numerators_[k], coords(static_cast<Eigen::Index>(k))));
    return RationalSymbol(num, common_denominator_);
  }

  friend bool same_space(const ModelSpace& a, const ModelSpace& b) { return a.u_ == b.u_; }

 private:
  explicit ModelSpace(const InnerFunction& u) : u_(u) {
    const auto& zs = u_.zeros();
    const std::size_t n = zs.size();
    scales_.reserve(n);
    common_denominator_ = {cplx(1.0, 0.0)};
    for (const auto& a : zs) common_denominator_ = poly::mul(common_denominator_, {cplx(1.0, 0.0), -std::conj(a)});
    poly::Coeffs prefix{cplx(1.0, 0.0)};
    poly::Coeffs prefix_den{cplx(1.0, 0.0)};
    for (std::size_t k = 0; k < n; ++k) {
      const double s = std::sqrt(1.0 - std::norm(zs[k]));
      scales_.push_back(s);
      const poly::Coeffs own_den = poly::mul(prefix_den, {cplx(1.0, 0.0), -std::conj(zs[k])});
      basis_.emplace_back(poly::scale(prefix, s), own_den);
      poly::Coeffs tail{cplx(1.0, 0.0)};
      for (std::size_t j = k + 1; j < n; ++j) tail = poly::mul(tail, {cplx(1.0, 0.0), -std::conj(zs[j])});
      common_numerators_.push_back(poly::scale(poly::mul(prefix, tail), s));
      prefix = poly::mul(prefix, poly::linear(zs[k]));
      prefix_den = own_den;
    }
    const Eigen::Index dim = size();
    const Matrix gram = circle_mean(dim, dim, [&](const std::vector<cplx>& nodes, Matrix& sum) {
      const Matrix e = basis_matrix(nodes);
      sum += e.adjoint() * e;
    });
    gram_error_ = (gram - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (gram_error_ > 1e-10) throw Error(ErrorKind::InvalidInput, "Takenaka-Malmquist basis failed its Gram check");
  }

  using CacheKey = std::tuple<std::string, std::size_t, std::size_t, double, std::size_t>;

  InnerFunction u_;
  mutable std::mutex cache_mutex_;
  mutable std::map<CacheKey, Matrix> cache_;
  std::vector<double> scales_;
  std::vector<RationalSymbol> basis_;
  std::vector<poly::Coeffs> common_numerators_;
  poly::Coeffs common_denominator_;
  double gram_error_ = 0.0;
};

inline SpacePtr tm_basis(const InnerFunction& u) { return ModelSpace::make(u); }

/// An element of a model space in basis coordinates.
struct SpaceElement {
  SpacePtr space;
  Vector coords;

  cplx operator()(cplx z) const { return (space->basis_values(z).transpose() * coords)(0); }
  double norm() const { return coords.norm(); }
  RationalSymbol symbol() const {
    return space->to_symbol(coords).with_evaluator([s = space, c = coords](cplx z) { return (s->basis_values(z).transpose() * c)(0); });
  }

  friend SpaceElement operator+(const SpaceElement& a, const SpaceElement& b) {
    if (!same_space(*a.space, *b.space)) throw Error(ErrorKind::SpaceMismatch, "adding elements of different spaces");
    return {a.space, a.coords + b.coords};
  }
  friend SpaceElement operator-(const SpaceElement& a, const SpaceElement& b) {
    if (!same_space(*a.space, *b.space)) throw Error(ErrorKind::SpaceMismatch, "subtracting elements of different spaces");
    return {a.space, a.coords - b.coords};
  }
  friend SpaceElement operator*(cplx s, const SpaceElement& a) { return {a.space, s * a.coords}; }
};

inline SpaceElement zero_element(const SpacePtr& space) { return {space, Vector::Zero(space->size())}; }

/// <f, g> = (1/2pi) \int f conj(g) on the circle.
inline cplx inner_product(const RationalSymbol& f, const RationalSymbol& g) {
  f.require_circle_safe();
  g.require_circle_safe();
  return circle_mean_scalar([&](cplx z) { return f(z) * std::conj(g(z)); });
}

/// L^2 norm on the circle.
inline double l2_norm(const RationalSymbol& f) { return std::sqrt(std::max(0.0, inner_product(f, f).real())); }

/// Coordinates of P_u(phi), computed as <phi, e_k>.
inline SpaceElement project(const SpacePtr& space, const RationalSymbol& phi) {
  phi.require_circle_safe();
  const Matrix c = circle_mean(space->size(), 1, [&](const std::vector<cplx>& nodes, Matrix& sum) {
    for (const auto& z : nodes) sum.col(0) += phi(z) * space->basis_values(z).conjugate();
  });
  return {space, c.col(0)};
}

/// Reproducing kernel k_lambda(z) = (1 - conj(u(lambda)) u(z)) / (1 - conj(lambda) z).
inline SpaceElement kernel(const SpacePtr& space, cplx lambda) {
  if (!(std::abs(lambda) < 1.0)) throw Error(ErrorKind::InvalidInput, "kernel point must lie in the open disk");
  return {space, space->basis_values(lambda).conjugate()};
}

/// Boundary kernel at |eta| = 1, the continuous extension of the interior formula.
inline SpaceElement boundary_kernel(const SpacePtr& space, cplx eta) {
  if (std::abs(std::abs(eta) - 1.0) > 1e-12) throw Error(ErrorKind::InvalidInput, "boundary kernel point must be unimodular");
  return {space, space->basis_values(eta).conjugate()};
}

/// (u(z) - u(lambda)) / (z - lambda) as an exact rational symbol.
inline RationalSymbol conj_kernel_symbol(const InnerFunction& u, cplx lambda) {
  const RationalSymbol us = u.symbol();
  const cplx ul = u(lambda);
  const poly::Coeffs shifted = poly::sub(us.num(), poly::scale(us.den(), ul));
  const auto [quotient, remainder] = poly::divide_linear(shifted, lambda);
  (void)remainder;
  return RationalSymbol(quotient, us.den());
}

/// Pointwise value of the conjugate kernel, with the limit u'(lambda) at z = lambda.
inline cplx conj_kernel_at(const InnerFunction& u, cplx lambda, cplx z) {
  if (std::abs(z - lambda) < 1e-10) return derivative_at(u, lambda);
  return (u(z) - u(lambda)) / (z - lambda);
}

/// Conjugate kernel k~_lambda, valid for |lambda| <= 1.
inline SpaceElement conj_kernel(const SpacePtr& space, cplx lambda) {
  if (!(std::abs(lambda) < 1.0 + 1e-12)) throw Error(ErrorKind::InvalidInput, "kernel point must lie in the closed disk");
  return project(space, conj_kernel_symbol(space->generator(), lambda));
}

/// A (possibly antilinear) matrix map: x -> M x, or x -> M conj(x) when conjugates_input.
struct ConjugateLinearMap {
  Matrix matrix;
  bool conjugates_input = false;

  Vector apply(const Vector& x) const { return conjugates_input ? Vector(matrix * x.conjugate()) : Vector(matrix * x); }

  /// (this o other)
  ConjugateLinearMap compose(const ConjugateLinearMap& other) const {
    Matrix m = conjugates_input ? Matrix(matrix * other.matrix.conjugate()) : Matrix(matrix * other.matrix);
    return {std::move(m), conjugates_input != other.conjugates_input};
  }
};

/// C_u f = conj(z f) u on the circle; entries <C e_k, e_i> = mean(u conj(z e_k e_i)).
inline ConjugateLinearMap conjugation_C(const SpacePtr& space) {
  const InnerFunction& u = space->generator();
  Matrix m = space->cached("C", [&] {
    return circle_mean(space->size(), space->size(), [&](const std::vector<cplx>& nodes, Matrix& sum) {
      const Matrix e = space->basis_matrix(nodes);
      Vector w(static_cast<Eigen::Index>(nodes.size()));
      for (std::size_t k = 0; k < nodes.size(); ++k) w(static_cast<Eigen::Index>(k)) = u(nodes[k]) * std::conj(nodes[k]);
      sum.noalias() += e.adjoint() * w.asDiagonal() * e.conjugate();
    });
  });
  return {std::move(m), true};
}

/// U f(z) = conj(f(conj z)) from K_u into K_target, where target generates K_{u^}.
/// With target equal to hat(u) as stored data the matrix is exactly the identity.
inline ConjugateLinearMap conjugation_U(const SpacePtr& space, const SpacePtr& target) {
  const InnerFunction uh = hat(space->generator());
  if (!same_function(uh, target->generator()))
    throw Error(ErrorKind::SpaceMismatch, "U maps K_u onto K_{u^} only");
  if (uh == target->generator()) return {Matrix::Identity(space->size(), space->size()), true};
  const Matrix m = circle_mean(target->size(), space->size(), [&](const std::vector<cplx>& nodes, Matrix& sum) {
    std::vector<cplx> mirrored(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) mirrored[k] = std::conj(nodes[k]);
    sum.noalias() += target->basis_matrix(nodes).adjoint() * space->basis_matrix(mirrored).conjugate();
  });
  return {m, true};
}

inline ConjugateLinearMap conjugation_U(const SpacePtr& space) {
  return conjugation_U(space, ModelSpace::make(hat(space->generator())));
}

inline RationalSymbol flip_J(const RationalSymbol& phi) { return phi.flip(); }

inline SpaceElement k0(const SpacePtr& space) { return kernel(space, cplx(0.0, 0.0)); }
inline SpaceElement k0_tilde(const SpacePtr& space) { return conj_kernel(space, cplx(0.0, 0.0)); }

}  // namespace truncop

#endif  // TRUNCOP_MODELSPACE_HPP
