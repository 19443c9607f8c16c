// Problem specifications and deterministic random instance generation.
#ifndef TRUNCOP_INSTANCE_HPP
#define TRUNCOP_INSTANCE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "truncop/io.hpp"

namespace truncop {

inline constexpr double kZeroModulusCap = 0.85;

/// A self-contained, replayable description of one verification.
struct ProblemSpec {
  std::string operation = "instance";
  std::string mode;
  std::uint64_t seed = 0;
  std::map<std::string, InnerFunction> inner;
  std::map<std::string, RationalSymbol> symbols;
  std::map<std::string, ExtendedScalar> params;
  double tol = 1e-9;
  double quad_tol = 1e-12;
  std::size_t quad_cap = 65536;

  const InnerFunction& inner_at(const std::string& key) const {
    const auto it = inner.find(key);
    if (it == inner.end()) throw Error(ErrorKind::InvalidInput, "problem spec lacks inner function '" + key + "'");
    return it->second;
  }
  SpacePtr space(const std::string& key) const { return ModelSpace::make(inner_at(key)); }
  const RationalSymbol& symbol(const std::string& key) const {
    const auto it = symbols.find(key);
    if (it == symbols.end()) throw Error(ErrorKind::InvalidInput, "problem spec lacks symbol '" + key + "'");
    return it->second;
  }
  const ExtendedScalar& xparam(const std::string& key) const {
    const auto it = params.find(key);
    if (it == params.end()) throw Error(ErrorKind::InvalidInput, "problem spec lacks parameter '" + key + "'");
    return it->second;
  }
  cplx param(const std::string& key) const {
    const ExtendedScalar& x = xparam(key);
    if (x.is_infinite()) throw Error(ErrorKind::InvalidInput, "parameter '" + key + "' must be finite");
    return x.value();
  }
  bool has_param(const std::string& key) const { return params.count(key) > 0; }

  void set_inner(const std::string& key, InnerFunction u) { inner.insert_or_assign(key, std::move(u)); }
};

inline json to_json(const ProblemSpec& s) {
  json inner = json::object();
  for (const auto& [k, u] : s.inner) inner[k] = to_json(u);
  json symbols = json::object();
  for (const auto& [k, phi] : s.symbols) symbols[k] = to_json(phi);
  json params = json::object();
  for (const auto& [k, p] : s.params) params[k] = to_json(p);
  return {{"schema", kSchemaVersion},
          {"operation", s.operation},
          {"mode", s.mode},
          {"seed", s.seed},
          {"inner", inner},
          {"symbols", symbols},
          {"params", params},
          {"tolerances", {{"verify", s.tol}, {"quadrature", s.quad_tol}, {"quad_cap", s.quad_cap}}}};
}

inline ProblemSpec problem_spec_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "problem spec must be a JSON object");
  if (j.value("schema", std::string()) != kSchemaVersion)
    throw Error(ErrorKind::InvalidInput, "problem spec schema must be \"v1\"");
  ProblemSpec s;
  s.operation = j.value("operation", std::string("instance"));
  s.mode = j.value("mode", std::string());
  s.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("inner"))
    for (const auto& [k, v] : j.at("inner").items()) s.set_inner(k, inner_from_json(v));
  if (j.contains("symbols"))
    for (const auto& [k, v] : j.at("symbols").items()) s.symbols.insert_or_assign(k, symbol_from_json(v));
  if (j.contains("params"))
    for (const auto& [k, v] : j.at("params").items()) s.params.insert_or_assign(k, extended_from_json(v));
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    s.tol = t.value("verify", s.tol);
    s.quad_tol = t.value("quadrature", s.quad_tol);
    s.quad_cap = t.value("quad_cap", s.quad_cap);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Random sampling

using Rng = std::mt19937_64;

namespace sample {

inline double uniform(Rng& g, double a, double b) { return std::uniform_real_distribution<double>(a, b)(g); }
inline int integer(Rng& g, int a, int b) { return std::uniform_int_distribution<int>(a, b)(g); }
inline bool coin(Rng& g, double p = 0.5) { return uniform(g, 0.0, 1.0) < p; }

inline cplx disk_point(Rng& g, double radius) {
  while (true) {
    const cplx z(uniform(g, -radius, radius), uniform(g, -radius, radius));
    if (std::abs(z) <= radius) return z;
  }
}

inline cplx unimodular(Rng& g) { return std::polar(1.0, uniform(g, -kPi, kPi)); }
inline cplx box(Rng& g) { return {uniform(g, -1.0, 1.0), uniform(g, -1.0, 1.0)}; }

/// Zeros in the disk of radius kZeroModulusCap; conjugate-closed with a real constant when real_symmetric.
inline InnerFunction blaschke(Rng& g, int degree, bool real_symmetric) {
  std::vector<cplx> zeros;
  if (real_symmetric) {
    for (int k = 0; k + 1 < degree; k += 2) {
      const cplx a = disk_point(g, kZeroModulusCap);
      zeros.push_back(a);
      zeros.push_back(std::conj(a));
    }
    if (degree % 2 == 1) zeros.push_back(uniform(g, -kZeroModulusCap, kZeroModulusCap));
    return blaschke_new(std::move(zeros), coin(g) ? 1.0 : -1.0);
  }
  for (int k = 0; k < degree; ++k) zeros.push_back(disk_point(g, kZeroModulusCap));
  return blaschke_new(std::move(zeros), unimodular(g));
}

/// Laurent polynomial sum_{|k| <= degree} c_k z^k with c_k in the unit box.
inline RationalSymbol laurent(Rng& g, int degree) {
  std::map<int, cplx> terms;
  for (int k = -degree; k <= degree; ++k) terms[k] = box(g);
  return RationalSymbol::laurent(terms);
}

/// Analytic polynomial sum_{0 <= k <= degree} c_k z^k with c_k in the unit box.
inline RationalSymbol polynomial(Rng& g, int degree) {
  std::map<int, cplx> terms;
  for (int k = 0; k <= degree; ++k) terms[k] = box(g);
  return RationalSymbol::laurent(terms);
}

enum class AlphaRegime { Disk, Circle, Exterior, Infinity, Zero };

inline ExtendedScalar alpha(Rng& g, AlphaRegime regime) {
  switch (regime) {
    case AlphaRegime::Disk: return disk_point(g, 0.9);
    case AlphaRegime::Circle: return unimodular(g);
    case AlphaRegime::Exterior: return std::polar(uniform(g, 1.2, 3.0), uniform(g, -kPi, kPi));
    case AlphaRegime::Infinity: return ExtendedScalar::infinity();
    case AlphaRegime::Zero: return cplx(0.0, 0.0);
  }
  return cplx(0.0, 0.0);
}

inline ExtendedScalar alpha(Rng& g, const std::vector<AlphaRegime>& allowed) {
  return alpha(g, allowed[static_cast<std::size_t>(integer(g, 0, static_cast<int>(allowed.size()) - 1))]);
}

}  // namespace sample

struct InstanceConstraints {
  bool real_symmetric = false;
  std::optional<ExtendedScalar> clark_alpha;
  int spaces = 1;  // how many of u, v, w to draw
};

/// Deterministic instance: inner functions u[, v, w], Laurent symbols phi and psi, and parameters
/// lambda (|lambda| <= 0.85), eta (unimodular), alpha (|alpha| <= 0.9 unless fixed) and c.
inline ProblemSpec generate_instance(std::uint64_t seed, std::pair<int, int> degree_range,
                                     std::pair<int, int> symbol_degree_range, const InstanceConstraints& constraints = {}) {
  if (degree_range.first < 1 || degree_range.second > 32 || degree_range.first > degree_range.second)
    throw Error(ErrorKind::InvalidRange, "degree range must lie within [1, 32]");
  if (symbol_degree_range.first < 0 || symbol_degree_range.first > symbol_degree_range.second)
    throw Error(ErrorKind::InvalidRange, "symbol degree range must be nonnegative and ordered");
  if (constraints.spaces < 1 || constraints.spaces > 3) throw Error(ErrorKind::InvalidRange, "between one and three spaces");
  Rng g(seed);
  ProblemSpec s;
  s.seed = seed;
  const char* names[] = {"u", "v", "w"};
  for (int k = 0; k < constraints.spaces; ++k) {
    const int n = sample::integer(g, degree_range.first, degree_range.second);
    s.set_inner(names[k], sample::blaschke(g, n, constraints.real_symmetric));
  }
  s.symbols.insert_or_assign("phi", sample::laurent(g, sample::integer(g, symbol_degree_range.first, symbol_degree_range.second)));
  s.symbols.insert_or_assign("psi", sample::laurent(g, sample::integer(g, symbol_degree_range.first, symbol_degree_range.second)));
  s.params["lambda"] = sample::disk_point(g, kZeroModulusCap);
  s.params["eta"] = sample::unimodular(g);
  s.params["alpha"] = constraints.clark_alpha ? *constraints.clark_alpha : sample::alpha(g, sample::AlphaRegime::Disk);
  s.params["c"] = sample::box(g);
  return s;
}

}  // namespace truncop

#endif  // TRUNCOP_INSTANCE_HPP
