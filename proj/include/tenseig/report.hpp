#pragma once

#include "tenseig/cubic3.hpp"
#include "tenseig/degree.hpp"
#include "tenseig/eigenlines.hpp"
#include "tenseig/io.hpp"
#include "tenseig/odeflow.hpp"
#include "tenseig/sphere.hpp"
#include "tenseig/sturm.hpp"

namespace tenseig::io {

inline json to_json(const EigenLine& l) {
  json j{{"rep", vector(l.rep, l.real)}, {"real", l.real}};
  j["lambda"] = l.real ? number(l.lambda.real()) : number(l.lambda);
  j["lambda_class"] = l.lambda_class;
  j["simple"] = l.simple;
  j["residual"] = number(l.residual);
  return j;
}

inline json to_json(const EigenReport& r) {
  json lines = json::array();
  for (const auto& l : r.lines) lines.push_back(to_json(l));
  return json{{"status", to_string(r.status)},
              {"bezout_count", r.bezout},
              {"complex_count", r.complex_count},
              {"real_count", r.real_count},
              {"lines", lines}};
}

inline json to_json(const upoly::Poly& p) {
  json c = json::array();
  for (const auto& a : p.coeffs()) c.push_back(to_string(a));
  return json{{"coeffs", c}, {"text", upoly::to_string(p)}};
}

inline json to_json(const upoly::RootReport& r) {
  json iv = json::array();
  for (const auto& i : r.intervals) iv.push_back(json::array({to_string(i.lo), to_string(i.hi)}));
  json roots = json::array();
  for (double x : r.refined) roots.push_back(number(x));
  return json{{"count", r.count},
              {"squarefree", r.squarefree},
              {"intervals", iv},
              {"roots", roots},
              {"multiplicities", r.multiplicities}};
}

inline json to_json(const SphereIndex& s) {
  return json{{"alpha", number(s.alpha)}, {"shifted", vector(s.shifted)}, {"type", to_string(s.type)}, {"index", s.index}};
}

inline json to_json(const cubic3::CubicReport& r) {
  const auto& f = r.canonical;
  json basis = json::array();
  for (int k = 0; k < 3; ++k) basis.push_back(vector({f.basis(0, k), f.basis(1, k), f.basis(2, k)}));
  json canon{{"alpha2", to_string(f.alpha2)}, {"alpha3", to_string(f.alpha3)},
             {"beta2", to_string(f.beta2)},   {"beta3", to_string(f.beta3)},
             {"basis", basis},                {"scale", number(f.scale)},
             {"exact", f.exact},              {"near_degenerate", f.near_degenerate}};
  const auto& c = r.classification;
  json cls{{"tag", cubic3::to_string(c.tag)}, {"subcase", cubic3::to_string(c.subcase)}, {"swapped", c.swapped}};
  cls["expected_lines"] = c.expected_lines ? json(*c.expected_lines) : json(nullptr);
  cls["quadric"] = c.quadric ? json(to_json(*c.quadric)["form"]) : json(nullptr);
  cls["near_degenerate"] = c.near_degenerate;
  json lines = json::array();
  for (const auto& l : r.eigenlines) lines.push_back(to_json(l));
  json profile = json::array();
  for (const auto& p : r.critical_profile)
    profile.push_back(json{{"point", vector(p.point)}, {"type", to_string(p.type)}, {"index", p.index}});
  json out{{"canonical", canon}, {"classification", cls}};
  out["rho"] = r.rho ? to_json(*r.rho) : json(nullptr);
  out["rho_roots"] = r.rho_roots ? to_json(*r.rho_roots) : json(nullptr);
  out["real_line_count"] = r.real_line_count;
  out["eigenlines"] = lines;
  out["critical_profile"] = profile;
  out["maxima_count"] = r.maxima_count;
  out["minima_count"] = r.minima_count;
  out["saddle_count"] = r.saddle_count;
  out["degenerate_count"] = r.degenerate_count;
  out["ph_check"] = r.ph_check ? json{{"index_sum", r.ph_check->index_sum},
                                      {"expected", r.ph_check->expected},
                                      {"pass", r.ph_check->pass}}
                               : json(nullptr);
  return out;
}

inline json to_json(const DegreeReport& r) {
  json sols = json::array();
  for (const auto& s : r.solutions) sols.push_back(vector(s));
  return json{{"degree", r.degree},
              {"samples", r.samples},
              {"solutions_per_sample", r.solutions_per_sample},
              {"rho", number(r.rho)},
              {"radius", number(r.radius)},
              {"solutions", sols}};
}

inline json to_json(const RaySolution& r) {
  json out{{"c", vector(r.c)}, {"alpha", number(r.alpha)}, {"m", r.m}, {"y0", number(r.y0)}};
  out["blow_up_time"] = r.blow_up_time ? number(*r.blow_up_time) : json(nullptr);
  out["blow_up_time_exact"] = r.blow_up_time_exact ? json(to_string(*r.blow_up_time_exact)) : json(nullptr);
  return out;
}

inline json to_json(const UnboundedReport& r) {
  json out{{"status", to_string(r.status)}, {"real_lines", r.real_lines}, {"all_real_nilpotent", r.all_real_nilpotent}};
  out["certificate"] =
      r.certificate ? json{{"c", vector(r.certificate->c)}, {"alpha", number(r.certificate->alpha)}} : json(nullptr);
  return out;
}

inline json to_json(const InfinityPoint& p) {
  json sp = json::array();
  for (const auto& z : p.spectrum) sp.push_back(number(z));
  return json{{"c", vector(p.c)}, {"alpha", number(p.alpha)}, {"spectrum", sp}, {"radial_defect", number(p.radial_defect)}};
}

}  // namespace tenseig::io
