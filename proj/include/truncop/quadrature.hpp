// Adaptive trapezoid rule on the unit circle for matrix-valued integrands.
#ifndef TRUNCOP_QUADRATURE_HPP
#define TRUNCOP_QUADRATURE_HPP

#include <limits>
#include <sstream>
#include <vector>

#include "truncop/core.hpp"

namespace truncop {

inline std::string format_double(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

/// Nodes exp(2 pi i (offset + k*stride) / count) for k = 0, 1, ...
inline std::vector<cplx> circle_nodes(std::size_t count, std::size_t offset = 0, std::size_t stride = 1) {
  std::vector<cplx> nodes;
  nodes.reserve(count / stride + 1);
  for (std::size_t k = offset; k < count; k += stride)
    nodes.push_back(std::polar(1.0, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(count)));
  return nodes;
}

/// Mean value (1/2pi) \int F(e^{it}) dt of a matrix-valued integrand.
///
/// `accumulate(nodes, sum)` must add sum_{z in nodes} F(z) into `sum`. The node count
/// starts at QuadratureOptions::initial_nodes and doubles (reusing the previous nodes)
/// until two successive means agree entrywise within the tolerance, relative to the largest entry when it exceeds one.
template <class Accumulate>
Matrix circle_mean(Eigen::Index rows, Eigen::Index cols, Accumulate&& accumulate) {
  const QuadratureOptions& opts = quadrature_options();
  auto& stats = detail::quadrature_stats_slot();
  ++stats.calls;
  Matrix sum = Matrix::Zero(rows, cols);
  if (opts.fixed_nodes > 0) {
    accumulate(circle_nodes(opts.fixed_nodes), sum);
    stats.total_nodes += opts.fixed_nodes;
    stats.max_nodes_used = std::max(stats.max_nodes_used, opts.fixed_nodes);
    return sum / static_cast<double>(opts.fixed_nodes);
  }
  std::size_t count = opts.initial_nodes;
  accumulate(circle_nodes(count), sum);
  stats.total_nodes += count;
  Matrix mean = sum / static_cast<double>(count);
  double change = std::numeric_limits<double>::infinity();
  double scale = 1.0;
  while (true) {
    if (2 * count > opts.max_nodes) {
      throw Error(ErrorKind::NoConvergence, "trapezoid rule did not converge within " + std::to_string(opts.max_nodes) +
                                                " nodes (last change " + format_double(change) + ", scale " +
                                                format_double(scale) + ")");
    }
    accumulate(circle_nodes(2 * count, 1, 2), sum);
    stats.total_nodes += count;
    count *= 2;
    Matrix next = sum / static_cast<double>(count);
    change = rows * cols == 0 ? 0.0 : (next - mean).cwiseAbs().maxCoeff();
    scale = rows * cols == 0 ? 1.0 : std::max(1.0, next.cwiseAbs().maxCoeff());
    mean = std::move(next);
    if (change < opts.tolerance * scale) break;
  }
  stats.max_nodes_used = std::max(stats.max_nodes_used, count);
  return mean;
}

/// Scalar mean value of f on the circle.
template <class F>
cplx circle_mean_scalar(F&& f) {
  const Matrix m = circle_mean(1, 1, [&](const std::vector<cplx>& nodes, Matrix& sum) {
    for (const auto& z : nodes) sum(0, 0) += f(z);
  });
  return m(0, 0);
}

}  // namespace truncop

#endif  // TRUNCOP_QUADRATURE_HPP
