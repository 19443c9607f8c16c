// JSON serialization of inner functions, symbols, scalars and operator matrices.
#ifndef TRUNCOP_IO_HPP
#define TRUNCOP_IO_HPP

#include <map>
#include <optional>
#include <string>

#include "json.hpp"
#include "truncop/operators.hpp"

namespace truncop {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "v1";

inline json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

/// Accepts [re, im] or a bare real number.
inline cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  throw Error(ErrorKind::InvalidInput, "expected a complex number [re, im], got " + j.dump());
}

/// Parses "re,im" or "re".
inline cplx complex_from_string(const std::string& text) {
  try {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return {std::stod(text), 0.0};
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::InvalidInput, "malformed complex number '" + text + "'");
  }
}

inline json coeffs_to_json(const poly::Coeffs& c) {
  json out = json::array();
  for (const cplx& z : c) out.push_back(complex_to_json(z));
  return out;
}

inline poly::Coeffs coeffs_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::InvalidInput, "expected a nonempty coefficient array");
  poly::Coeffs out;
  for (const json& z : j) out.push_back(complex_from_json(z));
  return out;
}

// ---------------------------------------------------------------------------

inline json to_json(const InnerFunction& u) {
  json zeros = json::array();
  for (const cplx& a : u.zeros()) zeros.push_back(complex_to_json(a));
  return {{"zeros", zeros}, {"constant", complex_to_json(u.constant())}};
}

/// Accepts the object form or the shorthand "zN" for z^N.
inline InnerFunction inner_from_json(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.size() >= 2 && s[0] == 'z' && s.find_first_not_of("0123456789", 1) == std::string::npos) {
      const int n = std::stoi(s.substr(1));
      if (n >= 1) return monomial_inner(static_cast<std::size_t>(n));
    }
    throw Error(ErrorKind::InvalidInput, "unknown inner function shorthand '" + s + "'");
  }
  if (!j.is_object() || !j.contains("zeros")) throw Error(ErrorKind::InvalidInput, "inner function needs a 'zeros' array");
  std::vector<cplx> zeros;
  for (const json& z : j.at("zeros")) zeros.push_back(complex_from_json(z));
  const cplx constant = j.contains("constant") ? complex_from_json(j.at("constant")) : cplx(1.0, 0.0);
  return blaschke_new(std::move(zeros), constant);
}

/// Parses JSON text, or the bare shorthand zN.
inline InnerFunction inner_from_text(const std::string& text) {
  if (!text.empty() && text[0] == 'z') return inner_from_json(json(text));
  try {
    return inner_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed inner function JSON: ") + e.what());
  }
}

inline json to_json(const RationalSymbol& phi) { return {{"num", coeffs_to_json(phi.num())}, {"den", coeffs_to_json(phi.den())}}; }

inline RationalSymbol symbol_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "symbol must be a JSON object");
  if (j.contains("laurent")) {
    std::map<int, cplx> terms;
    for (const auto& [key, value] : j.at("laurent").items()) {
      std::size_t used = 0;
      int k = 0;
      try {
        k = std::stoi(key, &used);
      } catch (const std::logic_error&) {
        used = 0;
      }
      if (used != key.size() || key.empty()) throw Error(ErrorKind::InvalidInput, "Laurent exponent '" + key + "' is not an integer");
      terms[k] += complex_from_json(value);
    }
    return RationalSymbol::laurent(terms);
  }
  if (j.contains("num")) {
    const poly::Coeffs den = j.contains("den") ? coeffs_from_json(j.at("den")) : poly::Coeffs{cplx(1.0, 0.0)};
    if (poly::is_zero(den)) throw Error(ErrorKind::SingularDenominator, "symbol denominator is zero");
    return RationalSymbol(coeffs_from_json(j.at("num")), den);
  }
  throw Error(ErrorKind::InvalidInput, "symbol needs 'num'/'den' or 'laurent'");
}

inline RationalSymbol symbol_from_text(const std::string& text) {
  try {
    return symbol_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed symbol JSON: ") + e.what());
  }
}

inline json to_json(const ExtendedScalar& a) {
  if (a.is_infinite()) return "inf";
  return complex_to_json(a.value());
}

inline ExtendedScalar extended_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return ExtendedScalar::infinity();
  return complex_from_json(j);
}

inline ExtendedScalar extended_from_string(const std::string& text) {
  if (text == "inf") return ExtendedScalar::infinity();
  return complex_from_string(text);
}

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

inline Matrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "matrix must be an array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = rows == 0 ? 0 : static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != cols) throw Error(ErrorKind::InvalidInput, "ragged matrix rows");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k]);
  }
  return m;
}

inline json to_json(const OperatorMatrix& op) {
  return {{"domain", to_json(op.domain()->generator())},
          {"codomain", to_json(op.codomain()->generator())},
          {"antilinear", op.antilinear()},
          {"matrix", matrix_to_json(op.matrix())}};
}

inline OperatorMatrix operator_from_json(const json& j) {
  if (!j.is_object() || !j.contains("domain") || !j.contains("matrix"))
    throw Error(ErrorKind::InvalidInput, "operator needs 'domain', 'codomain' and 'matrix'");
  const SpacePtr dom = ModelSpace::make(inner_from_json(j.at("domain")));
  const SpacePtr cod = ModelSpace::make(inner_from_json(j.contains("codomain") ? j.at("codomain") : j.at("domain")));
  const bool antilinear = j.value("antilinear", false);
  const Matrix m = matrix_from_json(j.at("matrix"));
  if (m.rows() != cod->size() || m.cols() != dom->size()) throw Error(ErrorKind::SpaceMismatch, "matrix shape does not match the spaces");
  return OperatorMatrix(dom, cod, m, antilinear);
}

/// Summary report of a single verification.
inline json make_report(const std::string& test, bool verdict, const std::optional<ExtendedScalar>& alpha,
                        const std::map<std::string, double>& residuals) {
  json r = json::object();
  for (const auto& [k, v] : residuals) r[k] = v;
  return {{"test", test}, {"verdict", verdict}, {"alpha", alpha ? to_json(*alpha) : json(nullptr)}, {"residuals", r}};
}

}  // namespace truncop

#endif  // TRUNCOP_IO_HPP
