#pragma once

// Certificate g = sum w_i h_i^2 + q f, its exact verifier, and the JSON
// document format.

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sosq/errors.hpp"
#include "sosq/poly.hpp"
#include "sosq/rational.hpp"

namespace sosq {

inline constexpr std::string_view kCertificateVersion = "sos-cert/1";

struct Certificate {
  Poly f;
  Poly g;
  std::vector<Rational> weights;
  std::vector<Poly> polys;
  Poly q;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct Verdict {
  bool valid = false;
  std::string clause;  // "lengths", "weights", "degrees" or "identity"; empty when valid
  std::string reason;
  Poly residual;  // g - sum w h^2 - q f, set for the identity clause

  explicit operator bool() const { return valid; }
};

inline Verdict verify(const Certificate& c) {
  if (c.weights.size() != c.polys.size())
    return {false, "lengths",
            std::to_string(c.weights.size()) + " weights but " + std::to_string(c.polys.size()) + " polynomials",
            {}};
  for (std::size_t i = 0; i < c.weights.size(); ++i)
    if (sgn(c.weights[i]) <= 0)
      return {false, "weights", "weight " + std::to_string(i) + " = " + to_string(c.weights[i]) + " is not positive",
              {}};
  if (c.f.is_zero() && !c.polys.empty()) return {false, "degrees", "modulus is zero", {}};
  for (std::size_t i = 0; i < c.polys.size(); ++i)
    if (!(c.polys[i].degree() < c.f.degree()))
      return {false, "degrees", "polynomial " + std::to_string(i) + " has degree >= deg f", {}};
  Poly residual = c.g - c.q * c.f;
  for (std::size_t i = 0; i < c.weights.size(); ++i) residual -= c.polys[i] * c.polys[i] * c.weights[i];
  if (!residual.is_zero()) return {false, "identity", "g - sum w h^2 - q f = " + residual.to_string(), residual};
  return {true, "", "", {}};
}

/// Largest bit size of a numerator or denominator in the certificate.
inline std::size_t max_coefficient_bits(const Certificate& c) {
  std::size_t m = 0;
  auto scan = [&m](const Poly& p) {
    for (const auto& v : p.coeffs()) m = std::max(m, bit_size(v));
  };
  for (const auto& w : c.weights) m = std::max(m, bit_size(w));
  for (const auto& h : c.polys) scan(h);
  scan(c.q);
  return m;
}

namespace detail {

using ojson = nlohmann::ordered_json;

inline ojson poly_json(const Poly& p) {
  ojson a = ojson::array();
  for (const auto& v : p.coeffs()) a.push_back(to_string(v));
  return a;
}

inline Rational rational_from_json(const ojson& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(0, 0, where + ": expected a rational string");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(0, 0, where + ": " + e.what());
  }
}

inline Poly poly_from_json(const ojson& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(0, 0, where + ": expected an array of rationals");
  std::vector<Rational> c;
  for (std::size_t i = 0; i < v.size(); ++i) c.push_back(rational_from_json(v[i], where + "[" + std::to_string(i) + "]"));
  return Poly(std::move(c));
}

inline const ojson& member(const ojson& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(0, 0, where + ": missing key '" + key + "'");
  return *it;
}

}  // namespace detail

/// JSON text with keys version, f, g, q, terms; polynomials are ascending
/// arrays of canonical "num/den" strings.
inline std::string serialize(const Certificate& c, int indent = 2) {
  detail::ojson doc;
  doc["version"] = std::string(kCertificateVersion);
  doc["f"] = detail::poly_json(c.f);
  doc["g"] = detail::poly_json(c.g);
  doc["q"] = detail::poly_json(c.q);
  doc["terms"] = detail::ojson::array();
  for (std::size_t i = 0; i < c.weights.size() && i < c.polys.size(); ++i) {
    detail::ojson t;
    t["omega"] = to_string(c.weights[i]);
    t["h"] = detail::poly_json(c.polys[i]);
    doc["terms"].push_back(std::move(t));
  }
  return doc.dump(indent) + "\n";
}

inline Certificate deserialize(std::string_view text) {
  detail::ojson doc;
  try {
    doc = detail::ojson::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
    const std::size_t nl = text.rfind('\n', offset == 0 ? 0 : offset - 1);
    const std::size_t col = nl == std::string_view::npos ? offset : offset - nl - 1;
    throw ParseError(line, col, "malformed JSON: " + std::string(e.what()));
  }
  if (!doc.is_object()) throw ParseError(0, 0, "certificate must be a JSON object");
  const auto& version = detail::member(doc, "version", "certificate");
  if (!version.is_string() || version.get<std::string>() != kCertificateVersion)
    throw ParseError(0, 0, "unsupported certificate version " + version.dump());
  Certificate c;
  c.f = detail::poly_from_json(detail::member(doc, "f", "certificate"), "f");
  c.g = detail::poly_from_json(detail::member(doc, "g", "certificate"), "g");
  c.q = detail::poly_from_json(detail::member(doc, "q", "certificate"), "q");
  const auto& terms = detail::member(doc, "terms", "certificate");
  if (!terms.is_array()) throw ParseError(0, 0, "terms: expected an array");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string where = "terms[" + std::to_string(i) + "]";
    if (!terms[i].is_object()) throw ParseError(0, 0, where + ": expected an object");
    c.weights.push_back(detail::rational_from_json(detail::member(terms[i], "omega", where), where + ".omega"));
    c.polys.push_back(detail::poly_from_json(detail::member(terms[i], "h", where), where + ".h"));
  }
  return c;
}

/// Human-readable rendering with descending powers.
inline std::string pretty(const Certificate& c) {
  std::ostringstream os;
  os << "f = " << c.f.to_string() << "\n";
  os << "g = " << c.g.to_string() << "\n";
  os << "q = " << c.q.to_string() << "\n";
  os << "g = ";
  for (std::size_t i = 0; i < c.weights.size(); ++i)
    os << (i ? " + " : "") << to_string(c.weights[i]) << "*(" << c.polys[i].to_string() << ")^2";
  if (c.weights.empty()) os << "0";
  os << " + (" << c.q.to_string() << ")*(" << c.f.to_string() << ")\n";
  return os.str();
}

}  // namespace sosq
