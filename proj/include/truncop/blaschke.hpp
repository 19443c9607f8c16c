// Finite Blaschke products: construction, evaluation, derivative and the hat involution.
#ifndef TRUNCOP_BLASCHKE_HPP
#define TRUNCOP_BLASCHKE_HPP

#include <vector>

#include "truncop/rational.hpp"

namespace truncop {

inline constexpr double kZeroMargin = 1e-9;
inline constexpr double kUnimodularTol = 1e-12;

/// u(z) = c * prod_k (z - a_k) / (1 - conj(a_k) z). Repeated zeros encode multiplicity and
/// the stored order fixes the Takenaka-Malmquist coordinates of K_u.
class InnerFunction {
 public:
  InnerFunction(std::vector<cplx> zeros, cplx constant = cplx(1.0, 0.0))
      : zeros_(std::move(zeros)), constant_(constant) {
    if (zeros_.empty()) throw Error(ErrorKind::InvalidInput, "inner function must have at least one zero");
    for (const auto& a : zeros_) {
      if (!(std::abs(a) < 1.0 - kZeroMargin))
        throw Error(ErrorKind::ZeroOnOrOutsideCircle, "zero must lie strictly inside the unit disk");
    }
    if (!(std::abs(std::abs(constant_) - 1.0) <= kUnimodularTol))
      throw Error(ErrorKind::NotUnimodular, "constant must have modulus one");
    for (int k = 0; k < 16; ++k) {
      const cplx z = std::polar(1.0, 2.0 * kPi * (k + 0.25) / 16.0);
      if (std::abs(std::abs((*this)(z)) - 1.0) > 1e-10)
        throw Error(ErrorKind::NotUnimodular, "Blaschke product is not unimodular on the circle");
    }
  }

  const std::vector<cplx>& zeros() const { return zeros_; }
  cplx constant() const { return constant_; }
  std::size_t degree() const { return zeros_.size(); }

  cplx operator()(cplx z) const {
    cplx value = constant_;
    for (const auto& a : zeros_) {
      const cplx den = 1.0 - std::conj(a) * z;
      if (a != cplx(0.0, 0.0) && std::abs(z - 1.0 / std::conj(a)) < 1e-12)
        throw Error(ErrorKind::PoleHit, "evaluation at a pole of the Blaschke product");
      value *= (z - a) / den;
    }
    return value;
  }

  /// The same function as a rational symbol (numerator c*prod(z-a), denominator prod(1-conj(a)z)).
  RationalSymbol symbol() const {
    poly::Coeffs num{constant_};
    poly::Coeffs den{cplx(1.0, 0.0)};
    for (const auto& a : zeros_) {
      num = poly::mul(num, poly::linear(a));
      den = poly::mul(den, {cplx(1.0, 0.0), -std::conj(a)});
    }
    return RationalSymbol(num, den).with_evaluator([u = *this](cplx z) { return u(z); });
  }

  friend bool operator==(const InnerFunction& a, const InnerFunction& b) {
    return a.zeros_ == b.zeros_ && a.constant_ == b.constant_;
  }
  friend bool operator!=(const InnerFunction& a, const InnerFunction& b) { return !(a == b); }

 private:
  std::vector<cplx> zeros_;
  cplx constant_;
};

inline InnerFunction blaschke_new(std::vector<cplx> zeros, cplx constant = cplx(1.0, 0.0)) {
  return InnerFunction(std::move(zeros), constant);
}

/// u = c z^n.
inline InnerFunction monomial_inner(std::size_t n, cplx constant = cplx(1.0, 0.0)) {
  return InnerFunction(std::vector<cplx>(n, cplx(0.0, 0.0)), constant);
}

inline cplx evaluate(const InnerFunction& u, cplx z) { return u(z); }

inline cplx derivative_at(const InnerFunction& u, cplx z) {
  const auto& zs = u.zeros();
  bool near_zero = false;
  for (const auto& a : zs) near_zero = near_zero || std::abs(z - a) < 1e-8;
  if (!near_zero) {
    const cplx value = u(z);
    cplx log_derivative(0.0, 0.0);
    for (const auto& a : zs) log_derivative += 1.0 / (z - a) + std::conj(a) / (1.0 - std::conj(a) * z);
    return value * log_derivative;
  }
  // product rule: u' = c sum_k b_k' prod_{j != k} b_j
  cplx total(0.0, 0.0);
  for (std::size_t k = 0; k < zs.size(); ++k) {
    const cplx ak = zs[k];
    const cplx dk = 1.0 - std::conj(ak) * z;
    cplx term = (1.0 - std::norm(ak)) / (dk * dk);
    for (std::size_t j = 0; j < zs.size(); ++j) {
      if (j == k) continue;
      term *= (z - zs[j]) / (1.0 - std::conj(zs[j]) * z);
    }
    total += term;
  }
  return u.constant() * total;
}

/// u^(z) = conj(u(conj z)): conjugated zeros in the same order, conjugated constant.
inline InnerFunction hat(const InnerFunction& u) {
  std::vector<cplx> zs;
  zs.reserve(u.degree());
  for (const auto& a : u.zeros()) zs.push_back(std::conj(a));
  return InnerFunction(std::move(zs), std::conj(u.constant()));
}

/// Multiset equality of two zero lists within tol.
inline bool same_zero_multiset(const std::vector<cplx>& a, const std::vector<cplx>& b, double tol = 1e-12) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& x : a) {
    bool matched = false;
    for (std::size_t j = 0; j < b.size() && !matched; ++j) {
      if (!used[j] && std::abs(x - b[j]) <= tol) {
        used[j] = true;
        matched = true;
      }
    }
    if (!matched) return false;
  }
  return true;
}

/// True when u and v are the same function (possibly with differently ordered zeros).
inline bool same_function(const InnerFunction& u, const InnerFunction& v, double tol = 1e-12) {
  return std::abs(u.constant() - v.constant()) <= tol && same_zero_multiset(u.zeros(), v.zeros(), tol);
}

inline bool is_real_symmetric(const InnerFunction& u) { return same_function(u, hat(u)); }

/// The product u*v (zeros of u followed by zeros of v).
inline InnerFunction product(const InnerFunction& u, const InnerFunction& v) {
  std::vector<cplx> zs = u.zeros();
  zs.insert(zs.end(), v.zeros().begin(), v.zeros().end());
  return InnerFunction(std::move(zs), u.constant() * v.constant());
}

}  // namespace truncop

#endif  // TRUNCOP_BLASCHKE_HPP
