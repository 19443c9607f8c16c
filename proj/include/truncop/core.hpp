// Basic numeric types, error kinds and quadrature settings shared by every module.
#ifndef TRUNCOP_CORE_HPP
#define TRUNCOP_CORE_HPP

#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace truncop {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline const cplx kI{0.0, 1.0};

enum class ErrorKind {
  ZeroOnOrOutsideCircle,
  NotUnimodular,
  PoleHit,
  PoleOnCircle,
  DegenerateSpectrum,
  NoConvergence,
  SpaceMismatch,
  SingularDenominator,
  NotRealSymmetric,
  NotTHO,
  NotTTO,
  Singular,
  ZeroAnchor,
  SymbolRecoveryFailed,
  SymbolNotInClass,
  NoCertificate,
  InvalidRange,
  InvalidInput,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroOnOrOutsideCircle: return "ZeroOnOrOutsideCircle";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::PoleOnCircle: return "PoleOnCircle";
    case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::SingularDenominator: return "SingularDenominator";
    case ErrorKind::NotRealSymmetric: return "NotRealSymmetric";
    case ErrorKind::NotTHO: return "NotTHO";
    case ErrorKind::NotTTO: return "NotTTO";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::ZeroAnchor: return "ZeroAnchor";
    case ErrorKind::SymbolRecoveryFailed: return "SymbolRecoveryFailed";
    case ErrorKind::SymbolNotInClass: return "SymbolNotInClass";
    case ErrorKind::NoCertificate: return "NoCertificate";
    case ErrorKind::InvalidRange: return "InvalidRange";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// A point of the Riemann sphere: either a finite complex number or infinity.
class ExtendedScalar {
 public:
  ExtendedScalar() = default;
  ExtendedScalar(cplx value) : value_(value) {}  // NOLINT(implicit)
  ExtendedScalar(double value) : value_(cplx(value, 0.0)) {}  // NOLINT(implicit)

  static ExtendedScalar infinity() {
    ExtendedScalar s;
    s.value_.reset();
    return s;
  }

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }

  cplx value() const {
    if (!value_) throw Error(ErrorKind::InvalidInput, "ExtendedScalar is infinite");
    return *value_;
  }

  /// Modulus, +inf for the point at infinity.
  double modulus() const {
    return value_ ? std::abs(*value_) : std::numeric_limits<double>::infinity();
  }

  /// 1/conj(alpha) on the sphere.
  ExtendedScalar reciprocal_conjugate() const {
    if (!value_) return ExtendedScalar(cplx(0.0, 0.0));
    if (std::abs(*value_) == 0.0) return infinity();
    return ExtendedScalar(1.0 / std::conj(*value_));
  }

  ExtendedScalar conjugate() const {
    if (!value_) return infinity();
    return ExtendedScalar(std::conj(*value_));
  }

  ExtendedScalar reciprocal() const {
    if (!value_) return ExtendedScalar(cplx(0.0, 0.0));
    if (std::abs(*value_) == 0.0) return infinity();
    return ExtendedScalar(1.0 / *value_);
  }

  /// Chordal distance on the sphere; well defined for infinity.
  double chordal_distance(const ExtendedScalar& other) const {
    auto proj = [](const ExtendedScalar& s) -> std::pair<cplx, double> {
      if (s.is_infinite()) return {cplx(0.0, 0.0), 1.0};
      const cplx z = s.value();
      const double d = 1.0 + std::norm(z);
      return {2.0 * z / d, (std::norm(z) - 1.0) / d};
    };
    const auto [a, ah] = proj(*this);
    const auto [b, bh] = proj(other);
    return std::sqrt(std::norm(a - b) + (ah - bh) * (ah - bh));
  }

 private:
  std::optional<cplx> value_{cplx(0.0, 0.0)};
};

/// Adaptive trapezoid settings on the unit circle.
struct QuadratureOptions {
  std::size_t initial_nodes = 1024;
  std::size_t max_nodes = 65536;
  double tolerance = 1e-12;
  /// When nonzero, use exactly this many nodes and skip the convergence loop.
  std::size_t fixed_nodes = 0;
};

/// Counters updated by every quadrature on the calling thread.
struct QuadratureStats {
  std::size_t calls = 0;
  std::size_t max_nodes_used = 0;
  std::size_t total_nodes = 0;
};

namespace detail {
inline QuadratureOptions& quadrature_options_slot() {
  thread_local QuadratureOptions options;
  return options;
}
inline QuadratureStats& quadrature_stats_slot() {
  thread_local QuadratureStats stats;
  return stats;
}
}  // namespace detail

inline const QuadratureOptions& quadrature_options() { return detail::quadrature_options_slot(); }
inline QuadratureStats quadrature_stats() { return detail::quadrature_stats_slot(); }
inline void reset_quadrature_stats() { detail::quadrature_stats_slot() = {}; }

/// Overrides the calling thread's quadrature options for the lifetime of the guard.
class ScopedQuadrature {
 public:
  explicit ScopedQuadrature(const QuadratureOptions& options)
      : saved_(detail::quadrature_options_slot()) {
    detail::quadrature_options_slot() = options;
  }
  ~ScopedQuadrature() { detail::quadrature_options_slot() = saved_; }
  ScopedQuadrature(const ScopedQuadrature&) = delete;
  ScopedQuadrature& operator=(const ScopedQuadrature&) = delete;

 private:
  QuadratureOptions saved_;
};

inline double frobenius(const Matrix& m) { return m.norm(); }

/// Residual test that is absolute for small operators and relative for large ones.
inline bool within(double residual, double scale, double tol) {
  return residual <= tol * std::max(1.0, scale);
}

}  // namespace truncop

#endif  // TRUNCOP_CORE_HPP
