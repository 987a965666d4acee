#pragma once

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include "json.hpp"
#include "tenseig/tensor_core.hpp"

namespace tenseig::io {

using json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

struct MapInput {
  FieldTag field = FieldTag::rational_real;
  bool exact = true;  // field is rational-real: values kept as exact rationals
  std::optional<HomogeneousMap<Rational>> real;
  std::optional<HomogeneousMap<GaussRational>> complex;

  int dim() const { return real ? real->dim() : complex->dim(); }
  int degree() const { return real ? real->degree() : complex->degree(); }
};

struct FormInput {
  FieldTag field = FieldTag::rational_real;
  bool exact = true;
  Form<Rational> form;
};

using Input = std::variant<MapInput, FormInput>;

inline FieldTag parse_field(const std::string& s) {
  if (s == "rational-real") return FieldTag::rational_real;
  if (s == "float-real") return FieldTag::float_real;
  if (s == "float-complex") return FieldTag::float_complex;
  fail(ErrorCode::parse_error, "unknown field '" + s + "'");
}

namespace detail {

[[noreturn]] inline void schema_error(const std::string& where, const std::string& what) {
  fail(ErrorCode::parse_error, where + ": " + what);
}

inline void allowed_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) schema_error(where, "expected an object");
  for (const auto& [k, v] : obj.items()) {
    bool ok = false;
    for (const char* a : keys) ok = ok || k == a;
    if (!ok) schema_error(where, "unexpected key '" + k + "'");
  }
}

inline const json& required(const json& obj, const std::string& where, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(where, std::string("missing key '") + key + "'");
  return *it;
}

inline int positive_int(const json& obj, const std::string& where, const char* key, int min) {
  const json& v = required(obj, where, key);
  if (!v.is_number_integer() || v.get<long long>() < min || v.get<long long>() > 1000)
    schema_error(where + "." + key, "expected an integer >= " + std::to_string(min));
  return v.get<int>();
}

inline MultiIndex exponents(const json& v, const std::string& where, int n, int expected) {
  if (!v.is_array() || static_cast<int>(v.size()) != n)
    schema_error(where, "exponents must be an array of length " + std::to_string(n));
  std::vector<int> e;
  for (const auto& k : v) {
    if (!k.is_number_integer() || k.get<long long>() < 0 || k.get<long long>() > 1000)
      schema_error(where, "exponents must be nonnegative integers");
    e.push_back(k.get<int>());
  }
  MultiIndex mi(std::move(e));
  if (mi.degree() != expected)
    schema_error(where, "exponents sum to " + std::to_string(mi.degree()) + ", expected " + std::to_string(expected));
  return mi;
}

struct Scalar {
  GaussRational value;
  bool decimal = false;
  bool complex = false;
};

inline Rational number(const json& v, const std::string& where) {
  if (!v.is_string()) schema_error(where, "values must be strings such as \"3\", \"-0.25\" or \"1/3\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const Error& e) {
    schema_error(where, e.what());
  }
}

// "p/q" or decimal string; a complex value is a two-element array [re, im]
inline Scalar scalar(const json& v, const std::string& where) {
  Scalar s;
  if (v.is_array()) {
    if (v.size() != 2) schema_error(where, "complex values are [re, im]");
    s.value = GaussRational(number(v[0], where + "[0]"), number(v[1], where + "[1]"));
    s.complex = true;
    s.decimal = is_decimal_literal(v[0].get<std::string>()) || is_decimal_literal(v[1].get<std::string>());
    return s;
  }
  s.value = GaussRational(number(v, where));
  s.decimal = is_decimal_literal(v.get<std::string>());
  return s;
}

inline FieldTag resolve_field(const json& obj, const std::string& where, bool any_decimal, bool any_complex) {
  FieldTag f = any_complex ? FieldTag::float_complex : (any_decimal ? FieldTag::float_real : FieldTag::rational_real);
  if (auto it = obj.find("field"); it != obj.end()) {
    if (!it->is_string()) schema_error(where + ".field", "expected a string");
    try {
      f = parse_field(it->get<std::string>());
    } catch (const Error& e) {
      schema_error(where + ".field", e.what());
    }
    if (any_complex && f != FieldTag::float_complex) schema_error(where + ".field", "complex values need float-complex");
  }
  return f;
}

inline MapInput parse_map(const json& obj) {
  const std::string where = "map";
  allowed_keys(obj, where, {"n", "m", "field", "coeffs"});
  const int n = positive_int(obj, where, "n", 1);
  const int m = positive_int(obj, where, "m", 1);
  const json& coeffs = required(obj, where, "coeffs");
  if (!coeffs.is_array()) schema_error(where + ".coeffs", "expected an array");
  struct Row {
    int j;
    MultiIndex e;
    Scalar s;
  };
  std::vector<Row> rows;
  bool any_decimal = false, any_complex = false;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const std::string w = where + ".coeffs[" + std::to_string(i) + "]";
    const json& c = coeffs[i];
    allowed_keys(c, w, {"j", "exponents", "value"});
    const json& j = required(c, w, "j");
    if (!j.is_number_integer() || j.get<long long>() < 1 || j.get<long long>() > n)
      schema_error(w + ".j", "component index must be in 1.." + std::to_string(n));
    Row r{j.get<int>() - 1, exponents(required(c, w, "exponents"), w + ".exponents", n, m),
          scalar(required(c, w, "value"), w + ".value")};
    any_decimal = any_decimal || r.s.decimal;
    any_complex = any_complex || r.s.complex;
    rows.push_back(std::move(r));
  }
  MapInput out;
  out.field = resolve_field(obj, where, any_decimal, any_complex);
  out.exact = out.field == FieldTag::rational_real;
  try {
    if (out.field == FieldTag::float_complex) {
      std::vector<HomogeneousMap<GaussRational>::Entry> es;
      for (const auto& r : rows) es.push_back({r.j, r.e, r.s.value});
      out.complex = HomogeneousMap<GaussRational>::from_entries(n, m, es);
    } else {
      std::vector<HomogeneousMap<Rational>::Entry> es;
      for (const auto& r : rows) es.push_back({r.j, r.e, r.s.value.re});
      out.real = HomogeneousMap<Rational>::from_entries(n, m, es);
    }
  } catch (const Error& e) {
    schema_error(where, e.what());
  }
  return out;
}

inline FormInput parse_form(const json& obj) {
  const std::string where = "form";
  allowed_keys(obj, where, {"n", "degree", "field", "terms"});
  const int n = positive_int(obj, where, "n", 1);
  const int d = positive_int(obj, where, "degree", 2);
  const json& terms = required(obj, where, "terms");
  if (!terms.is_array()) schema_error(where + ".terms", "expected an array");
  MPoly<Rational> p(n);
  bool any_decimal = false;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string w = where + ".terms[" + std::to_string(i) + "]";
    allowed_keys(terms[i], w, {"exponents", "value"});
    const auto e = exponents(required(terms[i], w, "exponents"), w + ".exponents", n, d);
    const auto s = scalar(required(terms[i], w, "value"), w + ".value");
    if (s.complex) schema_error(w + ".value", "forms are real");
    any_decimal = any_decimal || s.decimal;
    p.add_term(e, s.value.re);
  }
  FormInput out{resolve_field(obj, where, any_decimal, false), true, Form<Rational>(n, d, std::move(p))};
  if (out.field == FieldTag::float_complex) schema_error(where + ".field", "forms are real");
  out.exact = out.field == FieldTag::rational_real;
  return out;
}

}  // namespace detail

/// Accepts a document {"map": ...} or {"form": ...}; other top-level keys are
/// ignored so that report documents embedding an input can be read back.
inline Input parse_json(const json& doc) {
  if (!doc.is_object()) fail(ErrorCode::parse_error, "document: expected an object");
  const bool has_map = doc.contains("map"), has_form = doc.contains("form");
  if (has_map == has_form) fail(ErrorCode::parse_error, "document: expected exactly one of 'map' or 'form'");
  if (has_map) return detail::parse_map(doc["map"]);
  return detail::parse_form(doc["form"]);
}

inline Input parse_input(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::parse_error, std::string("invalid JSON: ") + e.what());
  }
  return parse_json(doc);
}

inline Input read_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::invalid_argument, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_input(ss.str());
}

/// Floats in reports: 15 significant digits.
inline json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::strtod(format_double(x).c_str(), nullptr);
}

inline json number(cplx z) { return json::array({number(z.real()), number(z.imag())}); }

inline json vector(const Vec<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

inline json vector(const Vec<cplx>& v, bool real) {
  json a = json::array();
  for (const auto& z : v) a.push_back(real ? number(z.real()) : number(z));
  return a;
}

/// Coefficient values keep full precision so that a serialized map reads back unchanged.
template <class T>
json value(const T& x) {
  if constexpr (std::is_same_v<T, Rational>) return to_string(x);
  else if constexpr (std::is_same_v<T, GaussRational>) return json::array({to_string(x.re), to_string(x.im)});
  else if constexpr (std::is_same_v<T, double>) return format_double_roundtrip(x);
  else return json::array({format_double_roundtrip(x.real()), format_double_roundtrip(x.imag())});
}

template <class T>
json to_json(const HomogeneousMap<T>& Q, std::optional<FieldTag> field = std::nullopt) {
  FieldTag f = field.value_or(Q.field());
  if constexpr (std::is_same_v<T, GaussRational>) f = FieldTag::float_complex;
  json coeffs = json::array();
  for (int j = 0; j < Q.dim(); ++j)
    for (const auto& [e, c] : Q.component(j).terms())
      coeffs.push_back(json{{"j", j + 1}, {"exponents", e.exponents()}, {"value", value(c)}});
  return json{{"map", json{{"n", Q.dim()}, {"m", Q.degree()}, {"field", to_string(f)}, {"coeffs", coeffs}}}};
}

template <class T>
json to_json(const Form<T>& q, std::optional<FieldTag> field = std::nullopt) {
  json terms = json::array();
  for (const auto& [e, c] : q.poly().terms()) terms.push_back(json{{"exponents", e.exponents()}, {"value", value(c)}});
  return json{{"form", json{{"n", q.dim()},
                            {"degree", q.degree()},
                            {"field", to_string(field.value_or(field_tag_of<T>()))},
                            {"terms", terms}}}};
}

inline json to_json(const Input& in) {
  if (const auto* m = std::get_if<MapInput>(&in)) return m->real ? to_json(*m->real, m->field) : to_json(*m->complex);
  const auto& f = std::get<FormInput>(in);
  return to_json(f.form, f.field);
}

/// Deterministic rendering: insertion-ordered keys, two-space indent.
inline std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace tenseig::io
