#include "excursion/cli_commands.hpp"

#include <cmath>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <variant>

#include <json.hpp>

#include "excursion/bounds.hpp"
#include "excursion/csv.hpp"
#include "excursion/json_io.hpp"
#include "excursion/mc_oracle.hpp"
#include "excursion/quadform.hpp"
#include "excursion/svg.hpp"

namespace excursion::cli {

namespace {

void emit(const RunConfig& cfg, const csv::Table& table) {
  if (cfg.out_path.empty()) {
    std::cout << csv::to_string(table);
  } else {
    csv::write_file(cfg.out_path, table);
    std::cout << "wrote " << cfg.out_path << " (" << table.rows.size() << " rows)\n";
  }
}

Polygon2D square(double side) {
  if (!(side > 0.0)) throw std::invalid_argument("square side T must be positive");
  return Polygon2D({{0, 0}, {side, 0}, {side, side}, {0, side}});
}

GeometrySummary2D summary_2d_from(const Geometry& g) {
  if (const auto* poly = std::get_if<Polygon2D>(&g)) return polygon_summary(*poly);
  if (const auto* comp = std::get_if<CompositeRegion2D>(&g)) return composite_summary(*comp);
  throw std::invalid_argument("this command needs 2D geometry (polygon or composite)");
}

GeometrySummary2D geometry_2d(const RunConfig& cfg) {
  if (cfg.square_side > 0.0 && !cfg.geometry_path.empty()) {
    throw std::invalid_argument("give either --geometry or --T, not both");
  }
  if (cfg.square_side > 0.0) return polygon_summary(square(cfg.square_side));
  if (cfg.geometry_path.empty()) {
    throw std::invalid_argument("missing geometry: pass --geometry PATH or --T SIDE");
  }
  return summary_2d_from(load_geometry(cfg.geometry_path));
}

int run_geometry(const RunConfig& cfg) {
  if (cfg.geometry_path.empty()) throw std::invalid_argument("geometry: pass --geometry PATH");
  const Geometry g = load_geometry(cfg.geometry_path);
  csv::Table t;
  if (const auto* poly = std::get_if<Polyhedron3D>(&g)) {
    const GeometrySummary3D s = polyhedron_summary(*poly);
    t.header = {"volume", "surface_area", "caliper", "n_edges"};
    t.rows = {{s.volume, s.surface_area, s.caliper, static_cast<double>(s.edges.size())}};
    std::cout << "volume " << s.volume << ", area " << s.surface_area << ", caliper "
              << s.caliper << "\n";
  } else {
    const GeometrySummary2D s = summary_2d_from(g);
    t.header = {"area", "boundary_length", "components"};
    t.rows = {{s.area, s.boundary_length, static_cast<double>(s.components)}};
    std::cout << "area " << s.area << ", boundary " << s.boundary_length << ", components "
              << s.components << "\n";
  }
  if (!cfg.out_path.empty()) emit(cfg, t);
  return 0;
}

int run_bound_curves(const RunConfig& cfg) {
  const GeometrySummary2D g = geometry_2d(cfg);
  const FieldModel m = model_from_config(cfg);
  const UGrid grid = parse_ugrid(cfg.u_spec);
  if (grid.empty()) throw std::invalid_argument("u grid must not be empty");
  const BoundTable table = make_bound_table(grid, g, m, cfg.tol);

  csv::Table t;
  t.header = {"u", "p_ec", "p_record", "p_direct"};
  for (std::size_t i = 0; i < table.u.size(); ++i) {
    t.rows.push_back({table.u[i], table.pe[i], table.pr[i], table.pm[i]});
  }
  emit(cfg, t);

  const int cross = record_direct_crossover(table);
  if (cross == 0) {
    std::cout << "p_record <= p_direct over the whole grid\n";
  } else if (cross > 0) {
    std::cout << "p_record <= p_direct from u = " << table.u[static_cast<std::size_t>(cross)]
              << " on\n";
  } else {
    std::cout << "p_record <= p_direct: never on this grid\n";
  }

  if (!cfg.svg_path.empty()) {
    svg::ChartSpec spec;
    std::ostringstream title;
    title << "Tail bounds, rho''(0) = " << m.rho2();
    spec.title = title.str();
    spec.y_label = "P(max >= u)";
    spec.log_y = cfg.log_scale;
    svg::write_line_chart(cfg.svg_path, spec,
                          {{"EC approximation", table.u, table.pe},
                           {"record bound", table.u, table.pr},
                           {"direct bound", table.u, table.pm}});
    std::cout << "wrote " << cfg.svg_path << "\n";
  }
  return 0;
}

int run_bound3d(const RunConfig& cfg) {
  if (cfg.geometry_path.empty()) throw std::invalid_argument("bound3d: pass --geometry PATH");
  const Geometry g = load_geometry(cfg.geometry_path);
  const auto* poly = std::get_if<Polyhedron3D>(&g);
  if (!poly) throw std::invalid_argument("bound3d needs polyhedron geometry");
  const GeometrySummary3D s = polyhedron_summary(*poly);
  const FieldModel m = model_from_config(cfg);
  const UGrid grid = parse_ugrid(cfg.u_spec);

  csv::Table t;
  t.header = {"u", "p_record3d"};
  std::vector<double> ys;
  for (double u : grid) {
    const double v = p_record_3d(u, s, m);
    ys.push_back(v);
    t.rows.push_back({u, v});
  }
  emit(cfg, t);
  if (!cfg.svg_path.empty()) {
    svg::ChartSpec spec;
    spec.title = "3D record bound";
    spec.y_label = "P(max >= u)";
    spec.log_y = cfg.log_scale;
    svg::write_line_chart(cfg.svg_path, spec,
                          {{"record bound", {grid.begin(), grid.end()}, ys}});
    std::cout << "wrote " << cfg.svg_path << "\n";
  }
  return 0;
}

int run_quadform(const RunConfig& cfg) {
  if (cfg.geometry_path.empty()) {
    throw std::invalid_argument("quadform: pass --geometry PATH with the problem JSON");
  }
  const QuadFormProblem p = load_quadform(cfg.geometry_path);
  const double v = liwei_expectation(p, cfg.tol);
  csv::Table t;
  t.header = {"expectation", "tol"};
  t.rows = {{v, cfg.tol}};
  emit(cfg, t);
  std::cout << "E|<Y,AY>+<b,Y>+c0| = " << csv::format_double(v) << "\n";
  return 0;
}

int run_simulate(const RunConfig& cfg) {
  if (cfg.geometry_path.empty()) throw std::invalid_argument("simulate: pass --geometry PATH");
  const Geometry g = load_geometry(cfg.geometry_path);
  const UGrid grid = parse_ugrid(cfg.u_spec);
  const KernelSpec kernel = KernelSpec::squared_exponential();
  if (cfg.rho2 && *cfg.rho2 != kernel.rho2()) {
    throw std::invalid_argument("simulate: the shipped kernel has rho''(0) = 0.25; "
                                "drop --rho2 or pass 0.25");
  }

  TailEstimate est;
  if (const auto* poly = std::get_if<Polygon2D>(&g)) {
    est = simulate_tail_2d(*poly, kernel, cfg.step, grid, cfg.n, cfg.seed);
  } else if (const auto* comp = std::get_if<CompositeRegion2D>(&g)) {
    est = simulate_tail_2d(*comp, kernel, cfg.step, grid, cfg.n, cfg.seed);
  } else {
    est = simulate_tail_3d(std::get<Polyhedron3D>(g), kernel, cfg.step, grid, cfg.n, cfg.seed);
  }

  csv::Table t;
  t.header = {"u", "p_hat", "ci_half_width", "n", "step", "seed"};
  for (std::size_t i = 0; i < est.u.size(); ++i) {
    t.rows.push_back({est.u[i], est.p_hat[i], est.half_width[i],
                      static_cast<double>(est.n_samples), est.grid_step,
                      static_cast<double>(est.seed)});
  }
  emit(cfg, t);
  if (est.jitter_used > 0.0) {
    std::cout << "covariance factorization needed jitter " << est.jitter_used << "\n";
  }
  std::cout << "validity vs record bound: " << (est.valid ? "PASS" : "FAIL") << "\n";
  return est.valid ? 0 : 2;
}

int run_swiss_cheese(const RunConfig& cfg) {
  if (cfg.levels < 1) throw std::invalid_argument("swiss-cheese: --levels must be >= 1");
  const FieldModel m = model_from_config(cfg);
  const std::vector<Disk> disks = sierpinski_disks(cfg.levels);
  const UGrid grid = parse_ugrid(cfg.u_spec);
  csv::Table t;
  t.header = {"u", "bound", "n_disks"};
  for (double u : grid) {
    const SwissCheeseBound b = swiss_cheese_bound(u, disks, m);
    t.rows.push_back({u, b.value, static_cast<double>(b.n_disks)});
  }
  emit(cfg, t);
  return 0;
}

}  // namespace

UGrid parse_ugrid(const std::string& spec) {
  std::istringstream in(spec);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(in, part, ':')) parts.push_back(part);
  if (parts.size() != 3) {
    throw std::invalid_argument("u grid spec must be MIN:MAX:COUNT, got '" + spec + "'");
  }
  try {
    const double lo = std::stod(parts[0]);
    const double hi = std::stod(parts[1]);
    const int count = std::stoi(parts[2]);
    return UGrid::linspace(lo, hi, count);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("u grid spec must be numeric MIN:MAX:COUNT, got '" + spec + "'");
  }
}

FieldModel model_from_config(const RunConfig& cfg) {
  if (cfg.rho2 && cfg.c) throw std::invalid_argument("give exactly one of --rho2 and --c");
  if (cfg.rho2) return FieldModel::from_rho2(*cfg.rho2);
  if (cfg.c) return FieldModel::from_c(*cfg.c);
  throw std::invalid_argument("missing field model: pass --rho2 X or --c X");
}

int run(const RunConfig& cfg) {
  try {
    if (cfg.command == "geometry") return run_geometry(cfg);
    if (cfg.command == "bound2d" || cfg.command == "compare") return run_bound_curves(cfg);
    if (cfg.command == "bound3d") return run_bound3d(cfg);
    if (cfg.command == "quadform") return run_quadform(cfg);
    if (cfg.command == "simulate") return run_simulate(cfg);
    if (cfg.command == "swiss-cheese") return run_swiss_cheese(cfg);
    throw std::invalid_argument("unknown command '" + cfg.command + "'");
  } catch (const std::exception& e) {
    const nlohmann::json err = {{"error", e.what()}, {"command", cfg.command}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
}

}  // namespace excursion::cli
