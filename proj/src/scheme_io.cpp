#include "lrcut/scheme_io.hpp"

#include <cstdint>
#include <cstdio>
#include <json.hpp>

#include "lrcut/error.hpp"

namespace lrcut {

using Json = nlohmann::ordered_json;

namespace {

Json element_json(const FieldElement& x) {
  Json a = Json::array();
  for (const auto& c : x.coordinate_strings()) a.push_back(c);
  return a;
}

Json vector_json(const FieldVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(element_json(x));
  return a;
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail("ParseError", std::string("missing field: ") + key);
  return j.at(key);
}

std::size_t dimension(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) fail("ParseError", std::string(key) + " must be a nonnegative integer");
  return static_cast<std::size_t>(v.get<long long>());
}

FieldElement parse_element(const FieldPtr& f, const Json& j) {
  if (!j.is_array()) fail("ParseError", "field element must be a list of coordinates");
  if (j.empty() || j.size() > static_cast<std::size_t>(f->degree()))
    fail("InvalidDimensions", "field element has the wrong number of coordinates");
  std::vector<Rational> c;
  for (const auto& e : j) {
    if (e.is_string()) {
      c.push_back(parse_rational(e.get<std::string>()));
    } else if (e.is_number_integer()) {
      c.emplace_back(Integer(std::to_string(e.get<long long>())));
    } else {
      fail("ParseError", "coordinates must be \"p/q\" strings");
    }
  }
  return FieldElement(f, c);
}

FieldVec parse_vector(const FieldPtr& f, const Json& j, std::size_t len, const char* what) {
  if (!j.is_array()) fail("ParseError", std::string(what) + " must be a list");
  if (j.size() != len) fail("InvalidDimensions", std::string(what) + " has the wrong length");
  FieldVec v;
  for (const auto& e : j) v.push_back(parse_element(f, e));
  return v;
}

FieldPtr parse_field(const Json& j) {
  const Json& mp = member(j, "minpoly");
  if (!mp.is_array() || mp.size() < 2) fail("BadParams", "minpoly must list at least two coefficients");
  std::vector<Integer> coeffs;
  for (const auto& c : mp) {
    if (c.is_number_integer()) {
      coeffs.emplace_back(std::to_string(c.get<long long>()));
    } else if (c.is_string()) {
      try {
        coeffs.emplace_back(c.get<std::string>());
      } catch (const std::invalid_argument&) {
        fail("ParseError", "bad minpoly coefficient");
      }
    } else {
      fail("ParseError", "minpoly coefficients must be integers");
    }
  }
  if (coeffs.back() != 1) fail("BadParams", "minimal polynomial must be monic");
  Rational hint(0);
  if (j.contains("root_hint")) {
    const Json& h = j.at("root_hint");
    if (!h.is_string()) fail("ParseError", "root_hint must be a decimal string");
    hint = parse_rational(h.get<std::string>());
  }
  return RealField::create(coeffs, hint);
}

}  // namespace

std::string decimal_string(const Rational& q0) {
  Rational q = q0;
  q.canonicalize();
  Integer den = q.get_den();
  unsigned long twos = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), Integer(2).get_mpz_t());
  unsigned long fives = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), Integer(5).get_mpz_t());
  unsigned long digits = den == 1 ? std::max(twos, fives) : 30;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  Rational scaled = q * scale;
  Integer n;
  // round half away from zero; exact whenever den divides 10^digits
  Rational half = sgn(scaled) < 0 ? Rational(-1, 2) : Rational(1, 2);
  Rational shifted = scaled + half;
  mpz_tdiv_q(n.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  if (den == 1 && scaled.get_den() == 1) n = scaled.get_num();
  bool neg = sgn(n) < 0;
  std::string s = Integer(abs(n)).get_str();
  if (digits == 0) return (neg ? "-" : "") + s;
  if (s.size() <= digits) s = std::string(digits + 1 - s.size(), '0') + s;
  std::string out = s.substr(0, s.size() - digits) + "." + s.substr(s.size() - digits);
  return (neg ? "-" : "") + out;
}

std::string serialize_scheme(const Scheme& s) {
  Json field = Json::object();
  Json mp = Json::array();
  for (const auto& c : s.field->minimal_polynomial()) {
    if (c.fits_slong_p())
      mp.push_back(c.get_si());
    else
      mp.push_back(c.get_str());
  }
  field["minpoly"] = mp;
  field["root_hint"] = decimal_string(s.field->root_hint());

  Json forms = Json::array();
  for (const auto& row : s.forms) forms.push_back(vector_json(row));

  Json j = Json::object();
  j["k"] = s.k;
  j["d"] = s.d;
  j["field"] = field;
  j["forms"] = forms;
  j["window"] = to_string(s.window);
  j["shift"] = Json{{"s1", vector_json(s.s1)}, {"s2", vector_json(s.s2)}};
  j["flags"] = Json{{"inexact", s.inexact}};
  return j.dump(2) + "\n";
}

namespace {

Scheme parse_json(const Json& j) {
  if (!j.is_object()) fail("ParseError", "scheme file must be a JSON object");
  Scheme s;
  s.k = dimension(j, "k");
  s.d = dimension(j, "d");
  if (s.d < 1 || s.k <= s.d) fail("InvalidDimensions", "need 1 <= d < k");
  s.field = parse_field(member(j, "field"));

  const Json& forms = member(j, "forms");
  if (!forms.is_array() || forms.size() != s.codim()) fail("InvalidDimensions", "forms must have k-d rows");
  for (const auto& row : forms) s.forms.push_back(parse_vector(s.field, row, s.d, "form"));

  std::string w = j.contains("window") ? j.at("window").get<std::string>() : "cubical";
  if (w == "cubical")
    s.window = WindowKind::Cubical;
  else if (w == "canonical")
    s.window = WindowKind::Canonical;
  else
    fail("ParseError", "window must be cubical or canonical");

  if (j.contains("shift")) {
    const Json& sh = j.at("shift");
    s.s1 = parse_vector(s.field, member(sh, "s1"), s.d, "s1");
    s.s2 = parse_vector(s.field, member(sh, "s2"), s.codim(), "s2");
  } else {
    assign_default_shift(s);
  }
  if (j.contains("flags") && j.at("flags").contains("inexact")) {
    const Json& f = j.at("flags").at("inexact");
    if (!f.is_boolean()) fail("ParseError", "flags.inexact must be a boolean");
    s.inexact = f.get<bool>();
  }
  s.validate_shape();
  return s;
}

}  // namespace

Scheme parse_scheme(const std::string& text) {
  try {
    return parse_json(Json::parse(text));
  } catch (const Json::exception& e) {
    fail("ParseError", std::string("invalid scheme file: ") + e.what());
  }
}

std::string scheme_hash(const Scheme& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : serialize_scheme(s)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace lrcut
