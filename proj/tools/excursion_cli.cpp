// Command-line front end: tail bounds for the maximum of smooth stationary
// Gaussian fields on 2D/3D regions, plus the Monte Carlo validation harness.

#include <CLI11.hpp>

#include "excursion/cli_commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"excursion: tail bounds for maxima of stationary Gaussian fields"};
  app.require_subcommand(1);

  excursion::cli::RunConfig cfg;

  const auto add_model = [&cfg](CLI::App* sub) {
    auto* r = sub->add_option("--rho2", cfg.rho2, "rho''(0) of the radial covariance");
    auto* c = sub->add_option("--c", cfg.c, "c = sqrt(12 rho''(0) - 1)");
    r->excludes(c);
  };
  const auto add_grid = [&cfg](CLI::App* sub) {
    sub->add_option("--u", cfg.u_spec, "level grid MIN:MAX:COUNT (inclusive)");
  };
  const auto add_out = [&cfg](CLI::App* sub, bool with_svg) {
    sub->add_option("--out", cfg.out_path, "output CSV path (default: stdout)");
    if (with_svg) {
      sub->add_option("--svg", cfg.svg_path, "also write an SVG line chart");
      sub->add_flag("--log-scale", cfg.log_scale, "log-scale vertical axis");
    }
  };

  auto* geometry = app.add_subcommand("geometry", "print functionals of a geometry file");
  geometry->add_option("--geometry", cfg.geometry_path, "geometry JSON")->required();
  add_out(geometry, false);

  auto* bound2d = app.add_subcommand("bound2d", "EC / record / direct curves for a 2D region");
  bound2d->add_option("--geometry", cfg.geometry_path, "polygon or composite JSON");
  bound2d->add_option("--T", cfg.square_side, "use the square [0,T]^2 as geometry");
  add_model(bound2d);
  add_grid(bound2d);
  bound2d->add_option("--tol", cfg.tol, "direct-method quadrature tolerance");
  add_out(bound2d, true);

  auto* compare = app.add_subcommand("compare", "same curves, square-panel parameterization");
  compare->add_option("--geometry", cfg.geometry_path, "polygon or composite JSON");
  compare->add_option("--T", cfg.square_side, "square side");
  add_model(compare);
  add_grid(compare);
  compare->add_option("--tol", cfg.tol, "direct-method quadrature tolerance");
  add_out(compare, true);

  auto* bound3d = app.add_subcommand("bound3d", "record bound for a convex polyhedron");
  bound3d->add_option("--geometry", cfg.geometry_path, "polyhedron JSON")->required();
  add_model(bound3d);
  add_grid(bound3d);
  add_out(bound3d, true);

  auto* quadform = app.add_subcommand("quadform", "E|<Y,AY>+<b,Y>+c0| for Y ~ N(0, sigma)");
  quadform->add_option("--geometry", cfg.geometry_path, "problem JSON")->required();
  quadform->add_option("--tol", cfg.tol, "absolute tolerance");
  add_out(quadform, false);

  auto* simulate = app.add_subcommand("simulate", "empirical tail of the grid maximum");
  simulate->add_option("--geometry", cfg.geometry_path, "region JSON")->required();
  simulate->add_option("--rho2", cfg.rho2, "must match the shipped kernel (0.25)");
  add_grid(simulate);
  simulate->add_option("--n", cfg.n, "number of field samples");
  simulate->add_option("--seed", cfg.seed, "RNG seed");
  simulate->add_option("--step", cfg.step, "grid step");
  add_out(simulate, false);

  auto* swiss = app.add_subcommand("swiss-cheese", "truncation-minimized bound for the punctured square");
  swiss->add_option("--levels", cfg.levels, "Sierpinski construction depth");
  add_model(swiss);
  add_grid(swiss);
  add_out(swiss, false);

  CLI11_PARSE(app, argc, argv);
  cfg.command = app.get_subcommands().front()->get_name();
  return excursion::cli::run(cfg);
}
