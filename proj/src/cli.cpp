#include "deform/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "deform/error.hpp"
#include "deform/generate.hpp"
#include "deform/io.hpp"

namespace deform::cli {

namespace {

using io::Json;
namespace fs = std::filesystem;

struct Globals {
  std::uint64_t seed = 0;
  std::optional<double> tol;
};

std::pair<int, int> parse_pair(const std::string& s) {
  int a = 0, b = 0;
  char comma = 0;
  std::istringstream in(s);
  if (!(in >> a >> comma >> b) || comma != ',' || !in.eof()) throw Error(ErrorCode::Parse, "expected i,j but got \"" + s + "\"");
  return {a, b};
}

Point2 parse_point(const std::string& s) {
  double x = 0, y = 0;
  char comma = 0;
  std::istringstream in(s);
  if (!(in >> x >> comma >> y) || comma != ',') throw Error(ErrorCode::Parse, "expected x,y but got \"" + s + "\"");
  return {x, y};
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    io::write_text(out, text);
  }
}

template <class T>
T realization_as(const std::string& path, const char* what) {
  io::Realization r = io::realization_from_json(io::read_json(path));
  if (!std::holds_alternative<T>(r)) throw Error(ErrorCode::WrongSurfaceKind, path + " is not a " + what + " realization");
  return std::get<T>(std::move(r));
}

SolverOptions solver_options(const Globals& g) {
  SolverOptions o;
  if (g.tol) o.gradient_tol = *g.tol;
  return o;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::SolverFailure:
    case ErrorCode::Infeasible:
    case ErrorCode::IterationLimit: return 3;
    case ErrorCode::InconclusiveSweep: return 4;
    default: return 2;
  }
}

Json complex_summary(const TriComplex& t) {
  Json j;
  j["surface"] = to_string(t.kind());
  j["vertices"] = t.vertex_count();
  j["edges"] = t.edge_count();
  j["faces"] = t.face_count();
  j["euler_characteristic"] = t.euler_characteristic();
  j["boundary_vertices"] = t.boundary_vertices().size();
  j["interior_edges"] = t.interior_edges().size();
  if (t.kind() == SurfaceKind::Disk) j["fiber_dimension"] = fiber_dimension(t);
  return j;
}

int cmd_info(const std::string& complex_path, const std::string& realization_path) {
  Json j;
  if (!realization_path.empty()) {
    const io::Realization r = io::realization_from_json(io::read_json(realization_path));
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, PlanarTriangulation>) {
            j = complex_summary(x.complex());
            j["kind"] = "planar";
            j["orientation"] = x.orientation();
            j["diameter"] = diameter(x);
            j["min_delaunay_defect"] = min_delaunay_defect(x).first;
          } else if constexpr (std::is_same_v<T, InscribedPolyhedron>) {
            j = complex_summary(x.complex());
            j["kind"] = "spherical";
            j["orientation"] = x.orientation();
            j["min_empty_circle_margin"] = min_empty_circle_margin(x).first;
            j["convexity_margin"] = convexity_margin(x);
            j["origin_inside"] = origin_inside(x);
          } else {
            j = complex_summary(x.complex);
            j["kind"] = "torus";
            j["edge_defects"] = torus_delaunay_defects(x);
          }
        },
        r);
  } else {
    j = complex_summary(io::complex_from_json(io::read_json(complex_path)));
  }
  std::cout << io::dump(j);
  return 0;
}

int cmd_theta(const Globals& g, const std::string& complex_path, const std::string& alpha_path, const std::string& start_path,
              const std::string& out) {
  const TriComplex t = io::complex_from_json(io::read_json(complex_path));
  const EdgeInvariant alpha = io::alpha_from_json(t, io::read_json(alpha_path));
  std::optional<AngleStructure> start;
  if (!start_path.empty()) start = io::angles_from_json(io::read_json(start_path));
  const SolveResult r = maximize(FiberProblem::make(t, alpha, solver_options(g)), start);
  emit(out, io::dump(io::to_json(r)));
  for (const std::string& line : r.log) std::cerr << line << "\n";
  return r.status == SolveStatus::Converged ? 0 : 3;
}

int cmd_layout(const std::string& complex_path, const std::string& theta_path, const std::string& anchor, const std::string& base,
               double scale, int orientation, const std::string& out, const std::string& svg) {
  const TriComplex t = io::complex_from_json(io::read_json(complex_path));
  const AngleStructure theta = io::angles_from_json(io::read_json(theta_path));
  const auto [i, j] = parse_pair(anchor);
  const auto [phi, closure] = develop(t, theta, Anchor{i, j, parse_point(base), scale}, orientation);
  emit(out, io::dump(io::to_json(io::Realization(phi))));
  if (!svg.empty()) io::write_text(svg, io::export_svg(phi));
  std::cerr << "closure error " << io::format_double(closure) << "\n";
  return 0;
}

int cmd_lift(const std::string& in, const std::string& out, const std::string& obj) {
  const PlanarTriangulation phi = realization_as<PlanarTriangulation>(in, "planar");
  const StarRemoval chart = cone_over_boundary(phi.complex());
  const InscribedPolyhedron p = lift_to_sphere(phi, chart);
  emit(out, io::dump(io::to_json(io::Realization(p))));
  if (!obj.empty()) io::write_text(obj, io::export_obj(p));
  return 0;
}

int cmd_project(const std::string& in, int v0, const std::string& anchor, const std::string& out, const std::string& svg) {
  InscribedPolyhedron p = realization_as<InscribedPolyhedron>(in, "spherical");
  if (!anchor.empty()) {
    const auto [i, j] = parse_pair(anchor);
    const Normalization n = normalize(p, v0, i, j);
    p = n.normalized;
    std::cerr << "rotation " << io::to_json(n.g).dump() << "\n";
  }
  const PlanarChart chart = project_to_plane(p, v0);
  emit(out, io::dump(io::to_json(io::Realization(chart.planar))));
  if (!svg.empty()) io::write_text(svg, io::export_svg(chart.planar));
  return 0;
}

int cmd_morph(const Globals& g, const std::string& mode, const std::string& a_path, const std::string& b_path, int v0,
              const std::string& anchor, int samples, bool no_warm, const std::string& dir) {
  const auto [i, j] = parse_pair(anchor);
  MorphOptions options;
  options.samples = samples;
  options.warm_start = !no_warm;
  options.solver = solver_options(g);

  MorphPath path;
  Json summary;
  summary["mode"] = mode;
  if (mode == "polygon") {
    path = morph_polygon(realization_as<PlanarTriangulation>(a_path, "planar"),
                         realization_as<PlanarTriangulation>(b_path, "planar"), i, j, options);
  } else if (mode == "sphere" || mode == "sphere-origin") {
    const InscribedPolyhedron a = realization_as<InscribedPolyhedron>(a_path, "spherical");
    const InscribedPolyhedron b = realization_as<InscribedPolyhedron>(b_path, "spherical");
    SphereMorph m = mode == "sphere" ? morph_sphere(a, b, v0, i, j, options) : morph_sphere_origin(a, b, v0, i, j, options);
    summary["g_a"] = io::to_json(m.g_a);
    summary["g_b"] = io::to_json(m.g_b);
    path = std::move(m.path);
  } else {
    throw Error(ErrorCode::Parse, "unknown morph mode \"" + mode + "\"");
  }

  fs::create_directories(dir);
  std::string csv = "t,min_defect,min_angle_defect,kkt_residual,iterations,origin_inside\n";
  for (std::size_t k = 0; k < path.samples.size(); ++k) {
    const MorphSample& s = path.samples[k];
    char stem[32];
    std::snprintf(stem, sizeof stem, "sample_%03zu", k);
    const fs::path base = fs::path(dir) / stem;
    std::visit(
        [&](const auto& r) {
          io::write_text(base.string() + ".json", io::dump(io::to_json(io::Realization(r))));
          if constexpr (std::is_same_v<std::decay_t<decltype(r)>, PlanarTriangulation>)
            io::write_text(base.string() + ".svg", io::export_svg(r));
          else
            io::write_text(base.string() + ".obj", io::export_obj(r));
        },
        s.realization);
    csv += io::format_double(s.t) + "," + io::format_double(s.min_defect) + "," + io::format_double(s.min_angle_defect) + "," +
           io::format_double(s.residual) + "," + std::to_string(s.iterations) + "," + (s.origin_inside ? "1" : "0") + "\n";
  }
  io::write_text(fs::path(dir) / "defects.csv", csv);
  summary["samples"] = path.samples.size();
  summary["min_defect"] = path.min_defect();
  io::write_text(fs::path(dir) / "summary.json", io::dump(summary));
  std::cout << "samples " << path.samples.size() << "  min defect " << io::format_double(path.min_defect()) << "\n";
  return 0;
}

int finish_sweep(const SweepReport& r, const std::string& out, const std::string& svg) {
  if (!out.empty()) io::write_text(out, io::dump(io::to_json(r)));
  if (!svg.empty()) io::write_text(svg, io::export_svg(r));
  double worst = -std::numeric_limits<double>::infinity();
  for (const SeparatorPoint& s : r.separator) worst = std::max(worst, s.defect);
  std::cout << r.family << " parameter=" << io::format_double(r.parameter) << " grid=" << r.grid << " status=" << to_string(r.status)
            << " components=" << r.components << " worst_bisector_defect=" << io::format_double(worst) << " (" << r.reason << ")\n";
  return r.status == SweepStatus::Pass ? 0 : 4;
}

int cmd_export(const Globals& g, const std::string& in, const std::string& random, int vertices, double amplitude,
               const std::string& format, bool circles, const std::string& out) {
  io::Realization r;
  Rng rng(g.seed);
  if (!random.empty()) {
    if (random == "disk") {
      r = random_delaunay_disk(vertices, rng);
    } else if (random == "sphere") {
      r = random_inscribed_polyhedron(vertices, rng, PolyhedronOptions{-1.0, 1e-3, true});
    } else {
      throw Error(ErrorCode::Parse, "--random takes disk or sphere");
    }
  } else {
    r = io::realization_from_json(io::read_json(in));
  }
  if (amplitude > 0) {
    if (auto* phi = std::get_if<PlanarTriangulation>(&r)) {
      r = jitter(*phi, amplitude, rng);
    } else if (auto* p = std::get_if<InscribedPolyhedron>(&r)) {
      r = jitter(*p, amplitude, rng, 1e-4, origin_inside(*p));
    } else {
      throw Error(ErrorCode::WrongSurfaceKind, "--jitter needs a planar or spherical realization");
    }
  }
  if (format == "json") {
    emit(out, io::dump(io::to_json(r)));
  } else if (format == "svg") {
    if (!std::holds_alternative<PlanarTriangulation>(r)) throw Error(ErrorCode::WrongSurfaceKind, "SVG export needs a planar realization");
    io::SvgOptions o;
    o.circumcircles = circles;
    emit(out, io::export_svg(std::get<PlanarTriangulation>(r), o));
  } else if (format == "obj") {
    if (!std::holds_alternative<InscribedPolyhedron>(r)) throw Error(ErrorCode::WrongSurfaceKind, "OBJ export needs a spherical realization");
    emit(out, io::export_obj(std::get<InscribedPolyhedron>(r)));
  } else {
    throw Error(ErrorCode::Parse, "unknown format \"" + format + "\"");
  }
  return 0;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Deformation spaces of Delaunay triangulations"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Seed for randomized generation")->capture_default_str();
  app.add_option("--tol", g.tol, "Override the solver gradient tolerance and the sweep margin");

  std::string complex_path, realization_path, alpha_path, theta_path, start_path, out, svg, obj, anchor, base = "0,0";
  std::string mode = "polygon", a_path, b_path, random, format = "json";
  double scale = 1.0, amplitude = 0.0, width = kRectangleWitnessWidth, height = kTorusWitnessHeight;
  int orientation = 1, v0 = 0, samples = 100, grid = 100, vertices = 12;
  bool no_warm = false, circles = false;

  auto* info = app.add_subcommand("info", "Summarize a complex or realization");
  auto* info_c = info->add_option("--complex", complex_path, "Complex JSON")->check(CLI::ExistingFile);
  info->add_option("--realization", realization_path, "Realization JSON")->check(CLI::ExistingFile)->excludes(info_c);

  auto* theta = app.add_subcommand("theta", "Maximize the energy on the fiber of an edge invariant");
  theta->add_option("--complex", complex_path, "Complex JSON")->required()->check(CLI::ExistingFile);
  theta->add_option("--alpha", alpha_path, "Edge invariant JSON")->required()->check(CLI::ExistingFile);
  theta->add_option("--start", start_path, "Starting angle structure JSON")->check(CLI::ExistingFile);
  theta->add_option("-o,--output", out, "Output file (default stdout)");

  auto* layout = app.add_subcommand("layout", "Develop an angle structure into the plane");
  layout->add_option("--complex", complex_path, "Complex JSON")->required()->check(CLI::ExistingFile);
  layout->add_option("--theta", theta_path, "Angle structure JSON")->required()->check(CLI::ExistingFile);
  layout->add_option("--anchor", anchor, "Anchor edge i,j")->required();
  layout->add_option("--base", base, "Position of vertex i as x,y")->capture_default_str();
  layout->add_option("--scale", scale, "Length of the anchor edge")->capture_default_str();
  layout->add_option("--orientation", orientation, "+1 counterclockwise, -1 clockwise")->capture_default_str();
  layout->add_option("-o,--output", out, "Output realization (default stdout)");
  layout->add_option("--svg", svg, "Also write an SVG drawing");

  auto* lift = app.add_subcommand("lift", "Lift a planar triangulation to an inscribed polyhedron");
  lift->add_option("--realization", realization_path, "Planar realization JSON")->required()->check(CLI::ExistingFile);
  lift->add_option("-o,--output", out, "Output realization (default stdout)");
  lift->add_option("--obj", obj, "Also write an OBJ file");

  auto* project = app.add_subcommand("project", "Stereographically project an inscribed polyhedron");
  project->add_option("--realization", realization_path, "Spherical realization JSON")->required()->check(CLI::ExistingFile);
  project->add_option("--v0", v0, "Vertex at the north pole")->required();
  project->add_option("--anchor", anchor, "Normalize first so that edge i,j projects onto the +x direction");
  project->add_option("-o,--output", out, "Output realization (default stdout)");
  project->add_option("--svg", svg, "Also write an SVG drawing");

  auto* morph = app.add_subcommand("morph", "Delaunay-preserving morph between two realizations");
  morph->add_option("--mode", mode, "polygon, sphere or sphere-origin")
      ->check(CLI::IsMember({"polygon", "sphere", "sphere-origin"}))
      ->capture_default_str();
  morph->add_option("--a", a_path, "First realization")->required()->check(CLI::ExistingFile);
  morph->add_option("--b", b_path, "Second realization")->required()->check(CLI::ExistingFile);
  morph->add_option("--v0", v0, "Pole vertex (sphere modes)")->capture_default_str();
  morph->add_option("--anchor", anchor, "Anchor edge i,j")->required();
  morph->add_option("--samples", samples, "Number of samples including both ends")->capture_default_str()->check(CLI::Range(2, 100000));
  morph->add_flag("--no-warm-start", no_warm, "Solve every sample from a fresh feasible point");
  morph->add_option("-o,--output", out, "Output directory")->required();

  auto* sweep_r = app.add_subcommand("sweep-rectangle", "Disconnection sweep for the rectangle family");
  sweep_r->add_option("--width", width, "Rectangle width W")->capture_default_str();
  sweep_r->add_option("--grid", grid, "Grid resolution (even)")->capture_default_str();
  sweep_r->add_option("-o,--output", out, "Write the report JSON");
  sweep_r->add_option("--svg", svg, "Write the min-defect heat map");

  auto* sweep_t = app.add_subcommand("sweep-torus", "Disconnection sweep for the flat torus family");
  sweep_t->add_option("--height", height, "Height h of the lattice generator (0,h)")->capture_default_str();
  sweep_t->add_option("--grid", grid, "Grid resolution (even)")->capture_default_str();
  sweep_t->add_option("-o,--output", out, "Write the report JSON");
  sweep_t->add_option("--svg", svg, "Write the min-defect heat map");

  auto* exp = app.add_subcommand("export", "Convert or generate a realization");
  auto* exp_in = exp->add_option("--realization", realization_path, "Realization JSON")->check(CLI::ExistingFile);
  exp->add_option("--random", random, "Generate a random disk or sphere realization from --seed")
      ->check(CLI::IsMember({"disk", "sphere"}))
      ->excludes(exp_in);
  exp->add_option("--vertices", vertices, "Vertex count for --random")->capture_default_str();
  exp->add_option("--jitter", amplitude, "Perturb vertices by up to this amount, keeping the Delaunay property")
      ->check(CLI::NonNegativeNumber);
  exp->add_option("--format", format, "json, svg or obj")->check(CLI::IsMember({"json", "svg", "obj"}))->capture_default_str();
  exp->add_flag("--circumcircles", circles, "Draw circumcircles in SVG output");
  exp->add_option("-o,--output", out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*info) {
      if (complex_path.empty() && realization_path.empty()) throw Error(ErrorCode::Parse, "info needs --complex or --realization");
      return cmd_info(complex_path, realization_path);
    }
    if (*theta) return cmd_theta(g, complex_path, alpha_path, start_path, out);
    if (*layout) return cmd_layout(complex_path, theta_path, anchor, base, scale, orientation, out, svg);
    if (*lift) return cmd_lift(realization_path, out, obj);
    if (*project) return cmd_project(realization_path, v0, anchor, out, svg);
    if (*morph) return cmd_morph(g, mode, a_path, b_path, v0, anchor, samples, no_warm, out);
    if (*sweep_r) return finish_sweep(rectangle_sweep(width, grid, g.tol.value_or(kSweepMargin)), out, svg);
    if (*sweep_t) return finish_sweep(torus_sweep(height, grid, g.tol.value_or(kSweepMargin)), out, svg);
    if (*exp) {
      if (realization_path.empty() && random.empty()) throw Error(ErrorCode::Parse, "export needs --realization or --random");
      return cmd_export(g, realization_path, random, vertices, amplitude, format, circles, out);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace deform::cli
