// Rational symbols on the unit circle with exact coefficient transforms.
#ifndef TRUNCOP_RATIONAL_HPP
#define TRUNCOP_RATIONAL_HPP

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "truncop/polynomial.hpp"

namespace truncop {

/// num(z)/den(z) with ascending coefficients. The denominator is monic in its top
/// coefficient and shares no power of z with the numerator. Laurent polynomials are
/// stored with a pure power of z in the denominator.
///
/// A symbol may also carry a pointwise evaluator equal to num/den (for example a factored
/// Blaschke product or a basis expansion). Values use the evaluator when present; the
/// coefficients still drive poles and exact transforms. Arithmetic propagates evaluators.
class RationalSymbol {
 public:
  using Evaluator = std::function<cplx(cplx)>;

  RationalSymbol() : num_{cplx(0.0, 0.0)}, den_{cplx(1.0, 0.0)} {}

  RationalSymbol(poly::Coeffs num, poly::Coeffs den) {
    num = poly::trim(std::move(num));
    den = poly::trim(std::move(den));
    if (poly::is_zero(den)) throw Error(ErrorKind::SingularDenominator, "zero denominator");
    if (poly::is_zero(num)) {
      num_ = {cplx(0.0, 0.0)};
      den_ = {cplx(1.0, 0.0)};
      return;
    }
    const std::size_t common = std::min(poly::low_order_zeros(num), poly::low_order_zeros(den));
    num = poly::unshift(num, common);
    den = poly::unshift(den, common);
    const cplx lead = den.back();
    num_ = poly::scale(num, 1.0 / lead);
    den_ = poly::scale(den, 1.0 / lead);
    den_.back() = cplx(1.0, 0.0);
  }

  static RationalSymbol constant(cplx c) { return RationalSymbol({c}, {cplx(1.0, 0.0)}); }

  /// c z^k for any integer k.
  static RationalSymbol monomial(int k, cplx c = cplx(1.0, 0.0)) {
    if (k >= 0) return RationalSymbol(poly::shift({c}, static_cast<std::size_t>(k)), {cplx(1.0, 0.0)});
    return RationalSymbol({c}, poly::shift({cplx(1.0, 0.0)}, static_cast<std::size_t>(-k)));
  }

  /// Sum of c_k z^k over the map entries.
  static RationalSymbol laurent(const std::map<int, cplx>& terms) {
    if (terms.empty()) return RationalSymbol();
    const int low = std::min(0, terms.begin()->first);
    poly::Coeffs num(static_cast<std::size_t>(std::max(0, terms.rbegin()->first) - low + 1), cplx(0.0, 0.0));
    for (const auto& [k, c] : terms) num[static_cast<std::size_t>(k - low)] += c;
    return RationalSymbol(num, poly::shift({cplx(1.0, 0.0)}, static_cast<std::size_t>(-low)));
  }

  /// The identity function z.
  static RationalSymbol z() { return monomial(1); }

  const poly::Coeffs& num() const { return num_; }
  const poly::Coeffs& den() const { return den_; }

  bool is_zero() const { return poly::is_zero(num_); }

  /// Attaches a pointwise evaluator that must agree with num/den.
  RationalSymbol with_evaluator(Evaluator f) const {
    RationalSymbol out = *this;
    out.eval_ = std::make_shared<const Evaluator>(std::move(f));
    return out;
  }
  bool has_evaluator() const { return eval_ != nullptr; }

  /// Value of num/den from the coefficients, ignoring any evaluator.
  cplx coefficient_value(cplx z) const {
    const cplx d = poly::eval(den_, z);
    if (std::abs(d) < 1e-300) throw Error(ErrorKind::PoleHit, "symbol evaluated at a pole");
    return poly::eval(num_, z) / d;
  }

  cplx operator()(cplx z) const { return eval_ ? (*eval_)(z) : coefficient_value(z); }

  /// Complex conjugate on the circle, using conj(z) = 1/z.
  RationalSymbol conj_on_circle() const {
    const std::size_t dn = num_.size() - 1;
    const std::size_t dd = den_.size() - 1;
    RationalSymbol out(poly::shift(poly::reversed(poly::conjugated(num_)), dd),
                       poly::shift(poly::reversed(poly::conjugated(den_)), dn));
    if (!eval_) return out;
    return out.with_evaluator([f = *this](cplx z) { return std::conj(f(1.0 / std::conj(z))); });
  }

  /// z -> conj(f(conj z)): conjugates every coefficient.
  RationalSymbol hat() const {
    RationalSymbol out(poly::conjugated(num_), poly::conjugated(den_));
    if (!eval_) return out;
    return out.with_evaluator([f = *this](cplx z) { return std::conj(f(std::conj(z))); });
  }

  /// The flip J f(z) = conj(z) f(conj(z)) on the circle.
  RationalSymbol flip() const {
    const std::size_t dn = num_.size() - 1;
    const std::size_t dd = den_.size() - 1;
    RationalSymbol out(poly::shift(poly::reversed(num_), dd), poly::shift(poly::reversed(den_), dn + 1));
    if (!eval_) return out;
    return out.with_evaluator([f = *this](cplx z) { return f(1.0 / z) / z; });
  }

  RationalSymbol reciprocal() const {
    if (is_zero()) throw Error(ErrorKind::SingularDenominator, "reciprocal of the zero symbol");
    RationalSymbol out(den_, num_);
    if (!eval_) return out;
    return out.with_evaluator([f = *this](cplx z) { return 1.0 / f(z); });
  }

  /// Denominator roots (including the origin for Laurent terms).
  std::vector<cplx> poles() const { return poly::roots(den_); }

  /// Smallest distance from a pole to the unit circle (+inf for polynomials in z).
  double pole_margin() const {
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& p : poles()) margin = std::min(margin, std::abs(std::abs(p) - 1.0));
    return margin;
  }

  /// Throws PoleOnCircle unless every pole stays outside the annulus 1 +- margin.
  const RationalSymbol& require_circle_safe(double margin = 1e-6) const {
    if (pole_margin() <= margin) throw Error(ErrorKind::PoleOnCircle, "symbol has a pole near the unit circle");
    return *this;
  }

  friend RationalSymbol operator+(const RationalSymbol& a, const RationalSymbol& b) {
    if (a.is_zero() && !a.eval_) return b;
    if (b.is_zero() && !b.eval_) return a;
    RationalSymbol out = a.den_ == b.den_ ? RationalSymbol(poly::add(a.num_, b.num_), a.den_)
                                          : RationalSymbol(poly::add(poly::mul(a.num_, b.den_), poly::mul(b.num_, a.den_)),
                                                           poly::mul(a.den_, b.den_));
    if (!a.eval_ && !b.eval_) return out;
    return out.with_evaluator([a, b](cplx z) { return a(z) + b(z); });
  }
  friend RationalSymbol operator*(const RationalSymbol& a, const RationalSymbol& b) {
    if (a.is_zero() || b.is_zero()) return RationalSymbol();
    RationalSymbol out(poly::mul(a.num_, b.num_), poly::mul(a.den_, b.den_));
    if (!a.eval_ && !b.eval_) return out;
    return out.with_evaluator([a, b](cplx z) { return a(z) * b(z); });
  }
  friend RationalSymbol operator*(cplx s, const RationalSymbol& a) {
    RationalSymbol out(poly::scale(a.num_, s), a.den_);
    if (!a.eval_ || out.is_zero()) return out;
    return out.with_evaluator([a, s](cplx z) { return s * a(z); });
  }
  friend RationalSymbol operator*(const RationalSymbol& a, cplx s) { return s * a; }
  friend RationalSymbol operator-(const RationalSymbol& a) { return cplx(-1.0, 0.0) * a; }
  friend RationalSymbol operator-(const RationalSymbol& a, const RationalSymbol& b) { return a + (-b); }
  friend RationalSymbol operator/(const RationalSymbol& a, const RationalSymbol& b) { return a * b.reciprocal(); }
  friend RationalSymbol operator+(const RationalSymbol& a, cplx c) { return a + constant(c); }
  friend RationalSymbol operator+(cplx c, const RationalSymbol& a) { return a + constant(c); }
  friend RationalSymbol operator-(cplx c, const RationalSymbol& a) { return constant(c) - a; }
  friend RationalSymbol operator-(const RationalSymbol& a, cplx c) { return a - constant(c); }

  friend bool operator==(const RationalSymbol& a, const RationalSymbol& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  poly::Coeffs num_;
  poly::Coeffs den_;
  std::shared_ptr<const Evaluator> eval_;
};

}  // namespace truncop

#endif  // TRUNCOP_RATIONAL_HPP
