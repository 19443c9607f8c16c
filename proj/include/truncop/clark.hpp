// Clark points of a finite Blaschke product and the spectral calculus of the unitary S_u^alpha.
#ifndef TRUNCOP_CLARK_HPP
#define TRUNCOP_CLARK_HPP

#include <algorithm>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

#include "truncop/operators.hpp"

namespace truncop {

inline constexpr double kUnitCircleTol = 1e-12;

struct ClarkData {
  cplx alpha;
  std::vector<cplx> points;
  std::vector<double> weights;
  // Columns are unit eigenvectors of S_u^alpha in the order of `points`.
  Matrix eigenvectors;
  // Observed u(zeta_j) for each point, recorded rather than assumed.
  std::vector<cplx> u_values;
};

inline void require_unimodular(cplx alpha) {
  if (std::abs(std::abs(alpha) - 1.0) > kUnitCircleTol)
    throw Error(ErrorKind::InvalidInput, "Clark parameter must be unimodular");
}

inline ClarkData clark_points(const SpacePtr& space, cplx alpha) {
  require_unimodular(alpha);
  const OperatorMatrix s_alpha = clark_perturbation(space, alpha);
  Eigen::ComplexEigenSolver<Matrix> solver(s_alpha.matrix());
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::DegenerateSpectrum, "eigensolver failed");
  const Vector values = solver.eigenvalues();
  const Eigen::Index n = values.size();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::arg(values(a)) < std::arg(values(b));
  });
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (std::abs(values(i) - values(j)) < 1e-10)
        throw Error(ErrorKind::DegenerateSpectrum, "coincident Clark points");

  const InnerFunction& u = space->generator();
  ClarkData data;
  data.alpha = alpha;
  data.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    const cplx zeta = values(src) / std::abs(values(src));
    data.points.push_back(zeta);
    data.weights.push_back(1.0 / std::abs(derivative_at(u, zeta)));
    data.u_values.push_back(u(zeta));
    data.eigenvectors.col(k) = solver.eigenvectors().col(src).normalized();
  }
  return data;
}

inline ClarkData clark_points(const InnerFunction& u, cplx alpha) { return clark_points(ModelSpace::make(u), alpha); }

/// P_j = k_zeta (x) k_zeta / |k_zeta|^2 with |k_zeta|^2 = |u'(zeta)|.
inline OperatorMatrix spectral_projector(const SpacePtr& space, cplx zeta) {
  const SpaceElement k = boundary_kernel(space, zeta);
  return (1.0 / k.coords.squaredNorm()) * rank_one(k, k);
}

/// sum_j values[j] P_j.
inline OperatorMatrix spectral_operator(const SpacePtr& space, const ClarkData& clark, const std::vector<cplx>& values) {
  if (values.size() != clark.points.size()) throw Error(ErrorKind::InvalidInput, "one value per Clark point required");
  OperatorMatrix out = zero_operator(space, space);
  for (std::size_t j = 0; j < values.size(); ++j) out = out + values[j] * spectral_projector(space, clark.points[j]);
  return out;
}

/// Diagonal of A in the normalized boundary-kernel frame, and the off-diagonal remainder.
struct SpectralValues {
  std::vector<cplx> values;
  double residual = 0.0;
};

inline SpectralValues spectral_values(const OperatorMatrix& a, const ClarkData& clark) {
  const SpacePtr& space = a.domain();
  SpectralValues out;
  for (cplx zeta : clark.points) {
    const SpaceElement k = boundary_kernel(space, zeta);
    out.values.push_back(k.coords.dot(a.matrix() * k.coords) / k.coords.squaredNorm());
  }
  out.residual = distance(a, spectral_operator(space, clark, out.values));
  return out;
}

/// Cosine distance 1 - |<v, k>| / (|v||k|) between eigenvector j and the boundary kernel at zeta_j.
inline double eigenvector_alignment(const SpacePtr& space, const ClarkData& clark, std::size_t j) {
  const SpaceElement k = boundary_kernel(space, clark.points[j]);
  const Vector v = clark.eigenvectors.col(static_cast<Eigen::Index>(j));
  return 1.0 - std::abs(k.coords.dot(v)) / (k.coords.norm() * v.norm());
}

/// sum_j w_j |f(zeta_j)|^2 - |f|^2.
inline double clark_quadrature_defect(const ClarkData& clark, const SpaceElement& f) {
  double sum = 0.0;
  for (std::size_t j = 0; j < clark.points.size(); ++j) sum += clark.weights[j] * std::norm(f(clark.points[j]));
  return sum - f.coords.squaredNorm();
}

}  // namespace truncop

#endif  // TRUNCOP_CLARK_HPP
