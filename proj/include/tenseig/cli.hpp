#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tenseig/report.hpp"

namespace tenseig::cli {

enum class Format { text, json };

struct RunConfig {
  std::string command;  // count, solve, cubic3, sturm, degree, ode-ray, ode-infinity
  int n = 0, m = 0;     // count
  std::string input;    // file path
  std::string poly;     // sturm
  std::optional<std::pair<std::string, std::string>> range;
  std::vector<double> target;  // degree
  std::vector<double> line;    // ode ray
  double y0 = 1.0;
  std::uint64_t seed = 0;
  std::optional<int> restarts;
  std::optional<double> tol;
  Format format = Format::text;
  std::optional<FieldTag> field;
};

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 error, 2 degenerate or near-degenerate finding
  std::string out;
  std::string err;
};

namespace detail {

using io::json;

inline std::string join(const Vec<double>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i]);
  return s + ")";
}

inline std::string join(const Vec<cplx>& v, bool real) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += i ? ", " : "";
    if (real || v[i].imag() == 0.0) s += format_double(v[i].real());
    else s += format_double(v[i].real()) + (v[i].imag() < 0 ? "-" : "+") + format_double(std::abs(v[i].imag())) + "i";
  }
  return s + ")";
}

struct Output {
  json result;
  std::ostringstream text;
  int exit_code = 0;
};

inline io::Input load(const RunConfig& c) {
  if (c.input.empty()) fail(ErrorCode::invalid_argument, "missing input file");
  io::Input in = io::read_input(c.input);
  if (c.field) {
    if (auto* m = std::get_if<io::MapInput>(&in)) {
      if (*c.field != FieldTag::float_complex && m->complex)
        fail(ErrorCode::invalid_argument, "complex coefficients cannot be read as a real field");
      if (*c.field == FieldTag::float_complex && m->real) {
        m->complex = m->real->cast<GaussRational>();
        m->real.reset();
      }
      m->field = *c.field;
      m->exact = m->field == FieldTag::rational_real;
    } else {
      auto& f = std::get<io::FormInput>(in);
      if (*c.field == FieldTag::float_complex) fail(ErrorCode::invalid_argument, "forms are real");
      f.field = *c.field;
      f.exact = f.field == FieldTag::rational_real;
    }
  }
  return in;
}

// a form stands for its gradient map
inline io::MapInput as_map(const io::Input& in) {
  if (const auto* m = std::get_if<io::MapInput>(&in)) return *m;
  const auto& f = std::get<io::FormInput>(in);
  io::MapInput m;
  m.field = f.field;
  m.exact = f.exact;
  m.real = gradient_map(f.form);
  return m;
}

inline void print_lines(std::ostream& os, const std::vector<EigenLine>& lines) {
  for (const auto& l : lines) {
    os << "  " << (l.real ? "real    " : "complex ") << join(l.rep, l.real) << "  lambda "
       << (l.real ? format_double(l.lambda.real()) : join(Vec<cplx>{l.lambda}, false)) << "  class " << l.lambda_class
       << (l.simple ? "" : "  (not simple)") << "\n";
  }
}

inline void count(const RunConfig& c, Output& o) {
  const long long b = bezout_count(c.n, c.m);
  o.result = json{{"n", c.n}, {"m", c.m}, {"bezout_count", b}};
  o.text << b << "\n";
}

inline void solve(const RunConfig& c, const io::Input& in, Output& o) {
  const auto m = as_map(in);
  EigenOptions opt;
  opt.seed = c.seed;
  if (c.restarts) opt.restarts = *c.restarts;
  if (c.tol) opt.tol = *c.tol;
  EigenReport rep;
  switch (m.field) {
    case FieldTag::rational_real: rep = find_eigenlines(*m.real, opt); break;
    case FieldTag::float_real: rep = find_eigenlines(m.real->cast<double>(), opt); break;
    case FieldTag::float_complex: rep = find_eigenlines(m.complex->cast<cplx>(), opt); break;
  }
  o.result = io::to_json(rep);
  o.text << "status " << to_string(rep.status) << "\n"
         << "bezout count " << rep.bezout << "\n"
         << "distinct complex lines " << rep.complex_count << "\n"
         << "real lines " << rep.real_count << "\n";
  print_lines(o.text, rep.lines);
  if (rep.status == EigenStatus::degenerate || rep.status == EigenStatus::possibly_infinite) o.exit_code = 2;
  if (rep.status == EigenStatus::non_convergence) o.exit_code = 1;
}

inline void cubic(const RunConfig& c, const io::Input& in, Output& o) {
  const auto* f = std::get_if<io::FormInput>(&in);
  if (!f) fail(ErrorCode::not_cubic_r3, "cubic3 expects a form document");
  const auto rep = cubic3::analyze(f->form, c.seed, c.tol.value_or(1e-9));
  o.result = io::to_json(rep);
  const auto& k = rep.canonical;
  auto& t = o.text;
  t << "case " << cubic3::to_string(rep.classification.tag);
  if (rep.classification.subcase != cubic3::SemiAxialCase::none) t << "/" << cubic3::to_string(rep.classification.subcase);
  auto param = [&](const Rational& a) { return k.exact ? to_string(a) : format_double(to_double(a)); };
  t << "\n"
    << "alpha2 " << param(k.alpha2) << "  alpha3 " << param(k.alpha3) << "  beta2 " << param(k.beta2) << "  beta3 "
    << param(k.beta3) << "\n";
  if (rep.classification.quadric) t << "quadric " << io::to_json(*rep.classification.quadric)["form"].dump() << " = 0\n";
  if (rep.rho) t << "rho " << upoly::to_string(*rep.rho) << "\n";
  t << "real_line_count " << rep.real_line_count << "\n";
  print_lines(t, rep.eigenlines);
  t << "maxima " << rep.maxima_count << "  minima " << rep.minima_count << "  saddles " << rep.saddle_count
    << "  degenerate " << rep.degenerate_count << "\n";
  if (rep.ph_check) t << "index sum " << rep.ph_check->index_sum << (rep.ph_check->pass ? " (ok)" : " (MISMATCH)") << "\n";
  if (k.near_degenerate || rep.classification.near_degenerate) t << "warning: near a degenerate configuration\n";
  if (k.near_degenerate || rep.classification.near_degenerate || rep.classification.infinite() ||
      rep.classification.tag == cubic3::CubicCase::degenerate || rep.degenerate_count > 0)
    o.exit_code = 2;
}

inline void sturm(const RunConfig& c, Output& o) {
  const auto p = upoly::parse_poly(c.poly);
  std::optional<std::pair<Rational, Rational>> range;
  if (c.range) range = std::pair{parse_rational(c.range->first), parse_rational(c.range->second)};
  const auto rep = upoly::real_roots(p, range);
  o.result = json{{"poly", io::to_json(p)}};
  o.result["range"] = range ? json::array({to_string(range->first), to_string(range->second)}) : json(nullptr);
  o.result["roots"] = io::to_json(rep);
  o.text << rep.count << "\n";
  for (std::size_t i = 0; i < rep.intervals.size(); ++i)
    o.text << "  [" << to_string(rep.intervals[i].lo) << ", " << to_string(rep.intervals[i].hi) << "]  ~ "
           << format_double(rep.refined[i]) << "  multiplicity " << rep.multiplicities[i] << "\n";
  if (!rep.squarefree) o.exit_code = 2;
}

inline void degree(const RunConfig& c, const io::Input& in, Output& o) {
  const auto m = as_map(in);
  DegreeOptions opt;
  opt.seed = c.seed;
  if (c.restarts) opt.restarts = *c.restarts;
  const auto rep = m.complex ? brouwer_degree(real_representation(m.complex->cast<cplx>()), c.target, opt)
                             : brouwer_degree(m.real->cast<double>(), c.target, opt);
  o.result = io::to_json(rep);
  o.result["target"] = io::vector(c.target);
  o.text << "degree " << rep.degree << "\n";
  for (const auto& s : rep.solutions) o.text << "  " << join(s) << "\n";
}

inline void ray(const RunConfig& c, const io::Input& in, Output& o) {
  const auto m = as_map(in);
  if (m.complex) fail(ErrorCode::invalid_argument, "ray solutions need a real map");
  const auto r = ray_solution(m.real->cast<double>(), c.line, c.y0);
  o.result = io::to_json(r);
  o.text << "direction " << join(r.c) << "\n"
         << "alpha " << format_double(r.alpha) << "\n"
         << "phi(t) = y0 (1 - alpha (m-1) y0^(m-1) t)^(-1/(m-1)), y0 = " << format_double(r.y0) << ", m = " << r.m
         << "\n"
         << "blow-up time " << (r.blow_up_time ? format_double(*r.blow_up_time) : std::string("none")) << "\n";
}

inline void infinity(const RunConfig& c, const io::Input& in, Output& o) {
  const auto m = as_map(in);
  if (m.complex) fail(ErrorCode::invalid_argument, "points at infinity need a real map");
  const auto Q = m.real->cast<double>();
  const auto cert = unbounded_certificate(Q, c.seed);
  EigenOptions opt;
  opt.seed = c.seed;
  if (c.restarts) opt.restarts = *c.restarts;
  json points = json::array();
  o.text << "real lines of the leading form " << cert.real_lines << "\n";
  for (const auto& l : find_eigenlines(Q, opt).real_lines()) {
    const auto p = infinity_spectrum(Q, l);
    points.push_back(io::to_json(p));
    o.text << "  " << join(p.c) << "  alpha " << format_double(p.alpha) << "  spectrum " << join(p.spectrum, false)
           << "\n";
  }
  o.result = json{{"unbounded", io::to_json(cert)}, {"points", points}};
  if (cert.certificate)
    o.text << "unbounded solution along " << join(cert.certificate->c) << " (alpha " << format_double(cert.certificate->alpha)
           << ")\n";
  else
    o.text << "no idempotent direction" << (cert.all_real_nilpotent ? "; every real line is nilpotent" : "") << "\n";
}

inline json config_json(const RunConfig& c) {
  json j{{"seed", c.seed}};
  j["restarts"] = c.restarts ? json(*c.restarts) : json(nullptr);
  j["tol"] = c.tol ? io::number(*c.tol) : json(nullptr);
  j["field"] = c.field ? json(to_string(*c.field)) : json(nullptr);
  return j;
}

}  // namespace detail

/// Executes one command; never throws.
inline RunResult run(const RunConfig& c) {
  using detail::json;
  RunResult r;
  json doc{{"schema_version", io::schema_version}, {"command", c.command}, {"config", detail::config_json(c)}};
  detail::Output o;
  try {
    if (c.tol && !(*c.tol > 0)) fail(ErrorCode::invalid_argument, "--tol must be positive");
    if (c.command == "count") {
      detail::count(c, o);
    } else if (c.command == "sturm") {
      detail::sturm(c, o);
    } else {
      const auto in = detail::load(c);
      const json embedded = io::to_json(in);
      for (const auto& [k, v] : embedded.items()) doc[k] = v;
      if (c.command == "solve") detail::solve(c, in, o);
      else if (c.command == "cubic3") detail::cubic(c, in, o);
      else if (c.command == "degree") detail::degree(c, in, o);
      else if (c.command == "ode-ray") detail::ray(c, in, o);
      else if (c.command == "ode-infinity") detail::infinity(c, in, o);
      else fail(ErrorCode::invalid_argument, "unknown command '" + c.command + "'");
    }
    doc["status"] = o.exit_code == 0 ? "ok" : (o.exit_code == 2 ? "degenerate" : "failed");
    doc["result"] = o.result;
    r.exit_code = o.exit_code;
    r.out = c.format == Format::json ? io::dump(doc) : o.text.str();
  } catch (const Error& e) {
    r.exit_code = 1;
    r.err = std::string("error: ") + e.what() + "\n";
    if (c.format == Format::json) {
      doc["status"] = "error";
      doc["error"] = json{{"code", to_string(e.code())}, {"message", e.what()}};
      r.out = io::dump(doc);
    }
  } catch (const std::exception& e) {
    r.exit_code = 1;
    r.err = std::string("error: ") + e.what() + "\n";
  }
  return r;
}

}  // namespace tenseig::cli
