// Dense complex polynomials stored by ascending powers.
#ifndef TRUNCOP_POLYNOMIAL_HPP
#define TRUNCOP_POLYNOMIAL_HPP

#include <algorithm>
#include <vector>

#include <Eigen/Eigenvalues>

#include "truncop/core.hpp"

namespace truncop::poly {

using Coeffs = std::vector<cplx>;

/// Drops exactly-zero top coefficients; the zero polynomial is {0}.
inline Coeffs trim(Coeffs p) {
  while (p.size() > 1 && p.back() == cplx(0.0, 0.0)) p.pop_back();
  if (p.empty()) p.push_back(cplx(0.0, 0.0));
  return p;
}

inline bool is_zero(const Coeffs& p) {
  return std::all_of(p.begin(), p.end(), [](cplx c) { return c == cplx(0.0, 0.0); });
}

inline std::size_t degree(const Coeffs& p) { return trim(p).size() - 1; }

inline cplx eval(const Coeffs& p, cplx z) {
  cplx acc(0.0, 0.0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
  return acc;
}

inline cplx eval_derivative(const Coeffs& p, cplx z) {
  cplx acc(0.0, 0.0);
  for (std::size_t k = p.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * p[k];
  return acc;
}

inline Coeffs add(const Coeffs& a, const Coeffs& b) {
  Coeffs r(std::max(a.size(), b.size()), cplx(0.0, 0.0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return trim(std::move(r));
}

inline Coeffs scale(const Coeffs& a, cplx s) {
  Coeffs r(a);
  for (auto& c : r) c *= s;
  return trim(std::move(r));
}

inline Coeffs sub(const Coeffs& a, const Coeffs& b) { return add(a, scale(b, -1.0)); }

inline Coeffs mul(const Coeffs& a, const Coeffs& b) {
  Coeffs r(a.size() + b.size() - 1, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == cplx(0.0, 0.0)) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return trim(std::move(r));
}

/// Multiplies by z^k.
inline Coeffs shift(const Coeffs& a, std::size_t k) {
  Coeffs r(k, cplx(0.0, 0.0));
  r.insert(r.end(), a.begin(), a.end());
  return trim(std::move(r));
}

/// Number of exactly-zero low-order coefficients (multiplicity of the root at 0).
inline std::size_t low_order_zeros(const Coeffs& a) {
  std::size_t k = 0;
  while (k + 1 < a.size() && a[k] == cplx(0.0, 0.0)) ++k;
  return k;
}

/// Divides by z^k; the caller guarantees the low coefficients vanish.
inline Coeffs unshift(const Coeffs& a, std::size_t k) {
  return trim(Coeffs(a.begin() + static_cast<std::ptrdiff_t>(std::min(k, a.size() - 1)), a.end()));
}

/// z^deg p(1/z): coefficients in reverse order.
inline Coeffs reversed(const Coeffs& a) {
  Coeffs r(a.rbegin(), a.rend());
  return r;
}

inline Coeffs conjugated(const Coeffs& a) {
  Coeffs r(a);
  for (auto& c : r) c = std::conj(c);
  return r;
}

/// Monic linear factor z - a.
inline Coeffs linear(cplx root) { return {-root, cplx(1.0, 0.0)}; }

/// Synthetic division by (z - root); the remainder is returned separately.
inline std::pair<Coeffs, cplx> divide_linear(const Coeffs& p, cplx root) {
  const Coeffs t = trim(p);
  if (t.size() == 1) return {Coeffs{cplx(0.0, 0.0)}, t[0]};
  Coeffs q(t.size() - 1, cplx(0.0, 0.0));
  cplx carry = t.back();
  for (std::size_t k = t.size() - 1; k-- > 0;) {
    q[k] = carry;
    carry = t[k] + carry * root;
  }
  return {trim(std::move(q)), carry};
}

/// Roots by eigenvalues of the companion matrix; roots at the origin are split off exactly.
inline std::vector<cplx> roots(const Coeffs& p) {
  Coeffs t = trim(p);
  std::vector<cplx> out;
  const std::size_t zeros = low_order_zeros(t);
  for (std::size_t i = 0; i < zeros; ++i) out.emplace_back(0.0, 0.0);
  t = unshift(t, zeros);
  const std::size_t n = t.size() - 1;
  if (n == 0) return out;
  if (n == 1) {
    out.push_back(-t[0] / t[1]);
    return out;
  }
  Matrix companion = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 1; i < n; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -t[i] / t[n];
  Eigen::ComplexEigenSolver<Matrix> solver(companion, false);
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) out.push_back(solver.eigenvalues()(i));
  return out;
}

/// Monic polynomial with the given roots.
inline Coeffs from_roots(const std::vector<cplx>& rs) {
  Coeffs p{cplx(1.0, 0.0)};
  for (const auto& r : rs) p = mul(p, linear(r));
  return p;
}

}  // namespace truncop::poly

#endif  // TRUNCOP_POLYNOMIAL_HPP
