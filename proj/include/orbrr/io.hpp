#pragma once

// Text and JSON forms of the library's values, and the input grammars:
//   polynomial  1 - 2*t + 1/2*t^3 + t^-4
//   basket      5x1/2(1,1,1);1/3(1,2,2)

#include "orbrr/cy3.hpp"

#include "json.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace orbrr {

using Json = nlohmann::ordered_json;

/// Malformed user input (as opposed to a failed mathematical check).
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------- text

inline std::string render(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    const bool neg = c.sign() < 0;
    const Rational mag = neg ? -c : c;
    if (first) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    first = false;
    if (e == 0) {
      out += mag.to_string();
      continue;
    }
    if (mag != Rational(1)) out += mag.to_string() + "*";
    out += "t";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

inline std::string render(const DenomSpec& d) {
  if (d.empty()) return "1";
  std::string out;
  const auto& f = d.factors();
  for (std::size_t i = 0; i < f.size();) {
    std::size_t j = i;
    while (j < f.size() && f[j] == f[i]) ++j;
    if (!out.empty()) out += " ";
    out += f[i] == 1 ? "(1-t)" : "(1-t^" + std::to_string(f[i]) + ")";
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

inline std::string render(const RationalFn& f) {
  std::string num = render(f.num());
  if (f.den().empty() || f.is_zero()) return num;
  if (f.num().terms().size() > 1) num = "(" + num + ")";
  return num + " / " + render(f.den());
}

// ---------------------------------------------------------------- parsing

namespace detail {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}
  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip_ws();
    return i_ >= s_.size();
  }
  bool eat(char c) {
    skip_ws();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }
  Integer integer() {
    skip_ws();
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected digits");
    return Integer(std::string(s_.substr(start, i_ - start)), 10);
  }
  std::int64_t small_int() {
    bool neg = eat('-');
    if (!neg) eat('+');
    Integer v = integer();
    if (!v.fits_slong_p()) fail("integer out of range");
    return neg ? -v.get_si() : v.get_si();
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw InputError("cannot parse '" + std::string(s_) + "' at position " + std::to_string(i_) + ": " + why);
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace detail

/// Signed sum of monomials in t: [coef][*]t[^exp] or a bare coefficient;
/// coef is p or p/q, exp may be negative or parenthesised.
inline LaurentPoly parse_poly(std::string_view text) {
  detail::Cursor cur(text);
  if (cur.done()) throw InputError("empty polynomial");
  std::map<Exponent, Rational> terms;
  bool first = true;
  while (!cur.done()) {
    Rational sign(1);
    if (cur.eat('-')) sign = Rational(-1);
    else if (!cur.eat('+') && !first) cur.fail("expected + or -");
    first = false;
    Rational coef(1);
    bool have_coef = false;
    if (cur.at_digit()) {
      Integer p = cur.integer();
      Integer q(1);
      if (cur.eat('/')) q = cur.integer();
      if (q == 0) cur.fail("zero denominator");
      coef = Rational(p, q);
      have_coef = true;
    }
    Exponent e = 0;
    if (cur.eat('*') && cur.peek() != 't') cur.fail("expected t after *");
    if (cur.eat('t')) {
      e = 1;
      if (cur.eat('^')) {
        bool paren = cur.eat('(');
        e = cur.small_int();
        if (paren && !cur.eat(')')) cur.fail("expected )");
      }
    } else if (!have_coef) {
      cur.fail("expected a coefficient or t");
    }
    terms[e] += sign * coef;
  }
  return LaurentPoly::from_terms(terms);
}

inline std::vector<std::int64_t> parse_int_list(std::string_view text) {
  std::vector<std::int64_t> out;
  detail::Cursor cur(text);
  if (cur.done()) return out;
  do {
    out.push_back(cur.small_int());
  } while (cur.eat(','));
  if (!cur.done()) cur.fail("expected , or end of list");
  return out;
}

inline std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  std::stringstream ss{std::string(text)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    try {
      out.push_back(Rational::parse(item));
    } catch (const std::exception& e) {
      throw InputError(std::string("bad rational list '") + std::string(text) + "': " + e.what());
    }
  }
  return out;
}

/// Entries `[<mult>x]1/<r>(<a1>,...,<an>)` separated by `;`.
inline Basket parse_basket(std::string_view text) {
  Basket out;
  detail::Cursor cur(text);
  while (!cur.done()) {
    std::int64_t mult = 1;
    Integer first = cur.integer();
    if (cur.eat('x')) {
      if (!first.fits_slong_p() || first < 1) cur.fail("bad multiplicity");
      mult = first.get_si();
      first = cur.integer();
    }
    if (first != 1 || !cur.eat('/')) cur.fail("expected 1/<r>");
    std::int64_t r = cur.small_int();
    if (!cur.eat('(')) cur.fail("expected (");
    std::vector<std::int64_t> a;
    if (!cur.eat(')')) {
      do {
        a.push_back(cur.small_int());
      } while (cur.eat(','));
      if (!cur.eat(')')) cur.fail("expected )");
    }
    try {
      out.push_back({OrbifoldType(r, std::move(a)), mult});
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    if (!cur.eat(';') && !cur.done()) cur.fail("expected ;");
  }
  return out;
}

// ---------------------------------------------------------------- JSON

inline Json to_json(const Rational& q) { return q.to_string(); }

inline Rational rational_from_json(const Json& j) {
  try {
    if (j.is_number_integer()) return Rational(j.get<long>());
    return Rational::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw InputError(std::string("bad rational in JSON: ") + e.what());
  }
}

/// {"exponent": "p/q", ...} in ascending exponent order.
inline Json to_json(const LaurentPoly& p) {
  Json j = Json::object();
  for (const auto& [e, c] : p.terms()) j[std::to_string(e)] = c.to_string();
  return j;
}

inline LaurentPoly poly_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("polynomial JSON must be an object");
  std::map<Exponent, Rational> terms;
  for (const auto& [key, val] : j.items()) {
    std::size_t used = 0;
    long long e = 0;
    try {
      e = std::stoll(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != key.size() || key.empty()) throw InputError("bad exponent key '" + key + "'");
    terms[e] += rational_from_json(val);
  }
  return LaurentPoly::from_terms(terms);
}

inline Json to_json(const RationalFn& f) { return Json{{"num", to_json(f.num())}, {"den", f.den().factors()}}; }

inline RationalFn rational_fn_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den")) throw InputError("rational function JSON needs num and den");
  try {
    return RationalFn(poly_from_json(j.at("num")), DenomSpec(j.at("den").get<std::vector<std::int64_t>>()));
  } catch (const Json::exception& e) {
    throw InputError(e.what());
  }
}

inline Json to_json(const OrbifoldType& q) { return Json{{"r", q.r()}, {"a", q.a()}, {"type", q.str()}}; }

inline OrbifoldType orbifold_type_from_json(const Json& j) {
  try {
    return OrbifoldType(j.at("r").get<std::int64_t>(), j.at("a").get<std::vector<std::int64_t>>());
  } catch (const Json::exception& e) {
    throw InputError(e.what());
  }
}

/// Dense coefficient list of t^0..t^deg; integers where they fit.
inline Json dense_json(const LaurentPoly& p, Exponent deg) {
  Json a = Json::array();
  for (Exponent e = 0; e <= deg; ++e) {
    Rational c = p.coeff(e);
    if (c.is_integer() && c.numerator().fits_slong_p()) a.push_back(c.numerator().get_si());
    else a.push_back(c.to_string());
  }
  return a;
}

inline Json to_json(const OrbifoldPart& p) {
  return Json{{"source", to_json(p.source)},
              {"k", p.k},
              {"n", p.n},
              {"fn", to_json(p.fn)},
              {"numerator_degree", p.numerator_degree},
              {"text", render(p.fn)}};
}

inline OrbifoldPart orbifold_part_from_json(const Json& j) {
  try {
    return {orbifold_type_from_json(j.at("source")), j.at("k").get<std::int64_t>(), j.at("n").get<std::int64_t>(),
            rational_fn_from_json(j.at("fn")), j.at("numerator_degree").get<std::int64_t>()};
  } catch (const Json::exception& e) {
    throw InputError(e.what());
  }
}

inline Json to_json(const Decomposition& d) {
  Json parts = Json::array();
  for (const auto& wp : d.orbifold_parts) {
    Json p = to_json(wp.part);
    p["multiplicity"] = wp.multiplicity;
    parts.push_back(std::move(p));
  }
  Json j{{"k", d.k},
         {"n", d.n},
         {"c", d.c},
         {"initial", to_json(d.initial)},
         {"initial_numerator", d.c >= 0 ? dense_json(d.initial.num(), d.c) : Json::array()},
         {"initial_text", render(d.initial)},
         {"orbifold_parts", parts},
         {"degree", to_json(degree_from_decomposition(d))}};
  j["irregularity"] = d.irregularity ? to_json(*d.irregularity) : Json();
  j["warnings"] = d.warnings;
  return j;
}

inline Decomposition decomposition_from_json(const Json& j) {
  try {
    Decomposition d;
    d.k = j.at("k").get<std::int64_t>();
    d.n = j.at("n").get<std::int64_t>();
    d.c = j.at("c").get<std::int64_t>();
    d.initial = rational_fn_from_json(j.at("initial"));
    for (const auto& p : j.at("orbifold_parts")) d.orbifold_parts.push_back({orbifold_part_from_json(p), p.at("multiplicity").get<std::int64_t>()});
    if (j.contains("irregularity") && !j.at("irregularity").is_null()) d.irregularity = poly_from_json(j.at("irregularity"));
    if (j.contains("warnings")) d.warnings = j.at("warnings").get<std::vector<std::string>>();
    return d;
  } catch (const Json::exception& e) {
    throw InputError(e.what());
  }
}

inline bool operator==(const OrbifoldPart& a, const OrbifoldPart& b) {
  return a.source == b.source && a.k == b.k && a.n == b.n && a.numerator_degree == b.numerator_degree &&
         a.fn.num() == b.fn.num() && a.fn.den() == b.fn.den();
}

/// Structural equality (same representation, not just the same function).
inline bool same_structure(const Decomposition& a, const Decomposition& b) {
  if (a.k != b.k || a.n != b.n || a.c != b.c || a.warnings != b.warnings) return false;
  if (!(a.initial.num() == b.initial.num() && a.initial.den() == b.initial.den())) return false;
  if (a.irregularity.has_value() != b.irregularity.has_value()) return false;
  if (a.irregularity && !(*a.irregularity == *b.irregularity)) return false;
  if (a.orbifold_parts.size() != b.orbifold_parts.size()) return false;
  for (std::size_t i = 0; i < a.orbifold_parts.size(); ++i)
    if (!(a.orbifold_parts[i].part == b.orbifold_parts[i].part) ||
        a.orbifold_parts[i].multiplicity != b.orbifold_parts[i].multiplicity)
      return false;
  return true;
}

inline Json to_json(const SeriesWindow& w) {
  Json a = Json::array();
  for (const auto& c : w.coeffs) a.push_back(c.to_string());
  return Json{{"start", w.start}, {"coeffs", a}};
}

inline Json to_json(const SigmaVector& s) {
  Json a = Json::array();
  for (const auto& v : s.values) a.push_back(v.to_string());
  return Json{{"r", s.r}, {"sigma", a}};
}

inline Json to_json(const CheckFailure& f) {
  return Json{{"error", "check_failed"},
              {"check", f.check},
              {"message", f.what()},
              {"residual", to_json(f.residual)},
              {"residual_text", render(f.residual)}};
}

}  // namespace orbrr
