// tenseig: eigenlines of homogeneous polynomial maps from the command line.

#include <iostream>

#include "CLI11.hpp"
#include "tenseig/cli.hpp"

using tenseig::cli::Format;
using tenseig::cli::RunConfig;

int main(int argc, char** argv) {
  CLI::App app{"Eigenlines, sphere indices and ray solutions of homogeneous polynomial maps"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "tenseig 1.0");

  RunConfig cfg;
  std::string format = "text", field;
  double tol = 0;
  int restarts = 0;
  std::vector<std::string> range;
  app.add_option("--seed", cfg.seed, "Seed for every randomized step (default 0)");
  auto* o_restarts = app.add_option("--restarts", restarts, "Multistart budget")->check(CLI::NonNegativeNumber);
  auto* o_tol = app.add_option("--tol", tol, "Acceptance tolerance")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  auto* o_field = app.add_option("--field", field, "Override the field of the input")
                      ->check(CLI::IsMember({"rational-real", "float-real", "float-complex"}));

  auto* count = app.add_subcommand("count", "Number of eigenlines of a generic degree-m map on C^n");
  count->add_option("n", cfg.n)->required()->check(CLI::PositiveNumber);
  count->add_option("m", cfg.m)->required()->check(CLI::PositiveNumber);

  auto* solve = app.add_subcommand("solve", "All eigenlines of a map (a form stands for its gradient map)");
  solve->add_option("file", cfg.input)->required()->check(CLI::ExistingFile);

  auto* cubic = app.add_subcommand("cubic3", "Full analysis of a harmonic cubic form on R^3");
  cubic->add_option("file", cfg.input)->required()->check(CLI::ExistingFile);

  auto* sturm = app.add_subcommand("sturm", "Real roots of a rational polynomial, e.g. \"t^3-2*t+1/2\"");
  sturm->add_option("poly", cfg.poly)->required();
  sturm->add_option("--range", range, "Closed interval a b")->expected(2);

  auto* degree = app.add_subcommand("degree", "Brouwer degree of a map at a regular value");
  degree->add_option("file", cfg.input)->required()->check(CLI::ExistingFile);
  degree->add_option("--target", cfg.target, "Target point y")->required();

  auto* ode = app.add_subcommand("ode", "Dynamics of x' = Q(x)");
  ode->require_subcommand(1);
  auto* ray = ode->add_subcommand("ray", "Closed-form solution along a real eigenline");
  ray->add_option("file", cfg.input)->required()->check(CLI::ExistingFile);
  ray->add_option("--line", cfg.line, "Eigenline direction")->required();
  ray->add_option("--y0", cfg.y0, "Initial coordinate along the unit direction (default 1)");
  auto* inf = ode->add_subcommand("infinity", "Stationary points at infinity and unbounded solutions");
  inf->add_option("file", cfg.input)->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  for (auto* s : {count, solve, cubic, sturm, degree})
    if (s->parsed()) cfg.command = s->get_name();
  if (ray->parsed()) cfg.command = "ode-ray";
  if (inf->parsed()) cfg.command = "ode-infinity";
  if (o_restarts->count()) cfg.restarts = restarts;
  if (o_tol->count()) cfg.tol = tol;
  if (o_field->count()) cfg.field = tenseig::io::parse_field(field);
  if (!range.empty()) cfg.range = std::pair{range[0], range[1]};
  cfg.format = format == "json" ? Format::json : Format::text;

  const auto r = tenseig::cli::run(cfg);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
