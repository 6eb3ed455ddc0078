#include "deform/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "deform/error.hpp"

namespace deform::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::Parse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double number(const Json& j) {
  if (!j.is_number()) parse_error("expected a number");
  return j.get<double>();
}

int integer(const Json& j) {
  if (!j.is_number_integer()) parse_error("expected an integer");
  return j.get<int>();
}

std::vector<double> numbers(const Json& j) {
  if (!j.is_array()) parse_error("expected an array of numbers");
  std::vector<double> out;
  for (const Json& x : j) out.push_back(number(x));
  return out;
}

std::optional<SurfaceKind> kind_from_string(const std::string& s) {
  if (s == "disk") return SurfaceKind::Disk;
  if (s == "sphere") return SurfaceKind::Sphere;
  if (s == "torus") return SurfaceKind::Torus;
  parse_error("unknown surface kind \"" + s + "\"");
}

std::string fixed(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

// Red for negative values, green for positive, saturating at |x| = scale.
std::string defect_color(double x, double scale) {
  const double u = std::clamp(std::abs(x) / scale, 0.0, 1.0);
  const int fade = static_cast<int>(std::lround(230.0 * (1.0 - u)));
  char buf[16];
  if (x > 0.0)
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", fade, 160 + static_cast<int>(std::lround(70.0 * (1.0 - u))), fade);
  else
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", 200 + static_cast<int>(std::lround(30.0 * (1.0 - u))), fade, fade);
  return buf;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json to_json(const TriComplex& t) {
  Json j;
  j["faces"] = Json::array();
  for (const auto& f : t.faces()) j["faces"].push_back({f[0], f[1], f[2]});
  j["surface"] = to_string(t.kind());
  if (t.has_lifts()) {
    j["lifts"] = Json::array();
    for (const auto& l : t.lifts()) j["lifts"].push_back({{l[0][0], l[0][1]}, {l[1][0], l[1][1]}, {l[2][0], l[2][1]}});
  }
  return j;
}

TriComplex complex_from_json(const Json& j) {
  const Json& faces_json = field(j, "faces");
  if (!faces_json.is_array()) parse_error("\"faces\" must be an array");
  std::vector<std::array<int, 3>> faces;
  for (const Json& f : faces_json) {
    if (!f.is_array() || f.size() != 3) parse_error("each face must list three vertices");
    faces.push_back({integer(f[0]), integer(f[1]), integer(f[2])});
  }
  std::optional<SurfaceKind> kind;
  if (j.contains("surface")) {
    if (!j.at("surface").is_string()) parse_error("\"surface\" must be a string");
    kind = kind_from_string(j.at("surface").get<std::string>());
  }
  std::vector<std::array<Lift, 3>> lifts;
  if (j.contains("lifts")) {
    for (const Json& f : j.at("lifts")) {
      if (!f.is_array() || f.size() != 3) parse_error("each face needs three lifts");
      std::array<Lift, 3> l;
      for (int k = 0; k < 3; ++k) {
        if (!f[k].is_array() || f[k].size() != 2) parse_error("a lift is an integer pair");
        l[k] = {integer(f[k][0]), integer(f[k][1])};
      }
      lifts.push_back(l);
    }
  }
  return TriComplex::build(std::move(faces), kind, std::move(lifts));
}

Json to_json(const AngleStructure& theta) { return Json(theta.theta); }

AngleStructure angles_from_json(const Json& j) {
  if (j.is_object()) return angles_from_json(field(j, "theta"));
  return AngleStructure{numbers(j)};
}

Json to_json(const TriComplex& t, const EdgeInvariant& alpha) {
  Json j;
  j["edges"] = Json(std::vector<double>(alpha.values.begin(), alpha.values.begin() + t.edge_count()));
  j["boundary_vertices"] = Json(std::vector<double>(alpha.values.begin() + t.edge_count(), alpha.values.end()));
  j["edge_vertices"] = Json::array();
  for (const Edge& e : t.edges()) j["edge_vertices"].push_back({e.v0, e.v1});
  j["boundary_vertex_ids"] = t.boundary_vertices();
  return j;
}

EdgeInvariant alpha_from_json(const TriComplex& t, const Json& j) {
  EdgeInvariant alpha;
  alpha.values = numbers(field(j, "edges"));
  const std::vector<double> b = j.contains("boundary_vertices") ? numbers(j.at("boundary_vertices")) : std::vector<double>{};
  if (alpha.values.size() != static_cast<std::size_t>(t.edge_count()) || b.size() != t.boundary_vertices().size())
    throw Error(ErrorCode::MismatchedComplex, "edge invariant does not match the complex");
  alpha.values.insert(alpha.values.end(), b.begin(), b.end());
  return alpha;
}

Json to_json(const Realization& r) {
  Json j;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, TorusTriangulation>) {
          j["complex"] = to_json(x.complex);
          j["kind"] = "torus";
          j["positions"] = Json::array();
          for (const Point2& p : x.positions) j["positions"].push_back({p.x(), p.y()});
          j["lattice"] = {{x.lattice(0, 0), x.lattice(0, 1)}, {x.lattice(1, 0), x.lattice(1, 1)}};
        } else {
          j["complex"] = to_json(x.complex());
          j["kind"] = std::is_same_v<T, PlanarTriangulation> ? "planar" : "spherical";
          j["positions"] = Json::array();
          for (const auto& p : x.positions()) {
            Json row = Json::array();
            for (Eigen::Index k = 0; k < p.size(); ++k) row.push_back(p(k));
            j["positions"].push_back(row);
          }
        }
      },
      r);
  return j;
}

Realization realization_from_json(const Json& j) {
  TriComplex t = complex_from_json(field(j, "complex"));
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) parse_error("\"kind\" must be a string");
  const std::string k = kind.get<std::string>();
  const Json& pos = field(j, "positions");
  if (!pos.is_array()) parse_error("\"positions\" must be an array");
  const std::size_t dim = k == "spherical" ? 3 : 2;
  std::vector<std::vector<double>> rows;
  for (const Json& p : pos) {
    rows.push_back(numbers(p));
    if (rows.back().size() != dim) parse_error("position has the wrong dimension for kind \"" + k + "\"");
  }
  if (k == "planar") {
    std::vector<Point2> p;
    for (const auto& r : rows) p.emplace_back(r[0], r[1]);
    return PlanarTriangulation::make(std::move(t), std::move(p));
  }
  if (k == "spherical") {
    std::vector<Point3> p;
    for (const auto& r : rows) p.emplace_back(r[0], r[1], r[2]);
    return InscribedPolyhedron::make(std::move(t), std::move(p));
  }
  if (k == "torus") {
    TorusTriangulation tau;
    const Json& lat = field(j, "lattice");
    if (!lat.is_array() || lat.size() != 2) parse_error("\"lattice\" must be a 2x2 array");
    for (int r = 0; r < 2; ++r) {
      const std::vector<double> row = numbers(lat[r]);
      if (row.size() != 2) parse_error("\"lattice\" must be a 2x2 array");
      tau.lattice(r, 0) = row[0];
      tau.lattice(r, 1) = row[1];
    }
    if (t.kind() != SurfaceKind::Torus) throw Error(ErrorCode::WrongSurfaceKind, "torus realization needs a torus complex");
    tau.complex = std::move(t);
    for (const auto& r : rows) tau.positions.emplace_back(r[0], r[1]);
    if (tau.positions.size() != static_cast<std::size_t>(tau.complex.vertex_count()))
      throw Error(ErrorCode::MismatchedComplex, "position count does not match the vertex count");
    torus_delaunay_defects(tau);  // validates the geodesic triangulation
    return tau;
  }
  parse_error("unknown realization kind \"" + k + "\"");
}

Json to_json(const SolveResult& r) {
  Json j;
  j["status"] = to_string(r.status);
  j["iterations"] = r.iterations;
  j["energy"] = r.energy;
  j["kkt_residual"] = r.kkt_residual;
  j["constraint_residual"] = r.constraint_residual;
  j["theta"] = to_json(r.theta_star);
  j["log"] = r.log;
  return j;
}

Json to_json(const SweepReport& r) {
  Json j;
  j["family"] = r.family;
  j["parameter"] = r.parameter;
  j["grid"] = r.grid;
  j["margin"] = r.margin;
  j["status"] = to_string(r.status);
  j["reason"] = r.reason;
  j["components"] = r.components;
  j["witnesses"] = Json::array();
  for (const SweepWitness& w : r.witnesses)
    j["witnesses"].push_back({{"component", w.component},
                              {"a", {w.a.x(), w.a.y()}},
                              {"b", {w.b.x(), w.b.y()}},
                              {"min_defect", w.min_defect}});
  j["separator_configurations"] = r.separator_configurations;
  j["separator"] = Json::array();
  for (const SeparatorPoint& s : r.separator)
    j["separator"].push_back({{"on_bisector", {s.on_bisector.x(), s.on_bisector.y()}},
                              {"other", {s.other.x(), s.other.y()}},
                              {"edge", s.edge},
                              {"defect", s.defect}});
  j["window"] = {{"x", {r.x_min, r.x_max}}, {"y", {r.y_min, r.y_max}}};
  Json heat = Json::array();
  for (int i = 0; i < r.cells_x; ++i)
    heat.push_back(std::vector<double>(r.min_defect.begin() + i * r.cells_y, r.min_defect.begin() + (i + 1) * r.cells_y));
  j["min_defect"] = heat;
  return j;
}

Json to_json(const Rotation& g) {
  Json j = Json::array();
  for (int r = 0; r < 3; ++r) j.push_back({g.matrix()(r, 0), g.matrix()(r, 1), g.matrix()(r, 2)});
  return j;
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    parse_error(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) parse_error("cannot write " + path.string());
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string export_svg(const PlanarTriangulation& phi, const SvgOptions& options) {
  const TriComplex& t = phi.complex();
  Point2 lo = phi.position(0), hi = lo;
  for (const Point2& p : phi.positions()) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double span = std::max({hi.x() - lo.x(), hi.y() - lo.y(), 1e-12});
  const double pad = 0.05 * options.size;
  const double s = (options.size - 2.0 * pad) / span;
  const auto X = [&](const Point2& p) { return fixed(pad + s * (p.x() - lo.x())); };
  const auto Y = [&](const Point2& p) { return fixed(options.size - pad - s * (p.y() - lo.y())); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(options.size) << "\" height=\"" << fixed(options.size)
      << "\" viewBox=\"0 0 " << fixed(options.size) << " " << fixed(options.size) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (options.circumcircles) {
    for (int f = 0; f < t.face_count(); ++f) {
      const Circle c = circumcircle(phi, f);
      out << "<circle cx=\"" << X(c.center) << "\" cy=\"" << Y(c.center) << "\" r=\"" << fixed(s * c.radius)
          << "\" fill=\"none\" stroke=\"#9db4d6\" stroke-width=\"0.5\"/>\n";
    }
  }
  for (int e = 0; e < t.edge_count(); ++e) {
    const Edge& edge = t.edge(e);
    std::string color = "black";
    if (options.defect_colors && !edge.is_boundary()) color = defect_color(delaunay_defect(phi, e), 0.5);
    out << "<line x1=\"" << X(phi.position(edge.v0)) << "\" y1=\"" << Y(phi.position(edge.v0)) << "\" x2=\""
        << X(phi.position(edge.v1)) << "\" y2=\"" << Y(phi.position(edge.v1)) << "\" stroke=\"" << color
        << "\" stroke-width=\"1.5\"/>\n";
  }
  for (int v = 0; v < t.vertex_count(); ++v)
    out << "<circle cx=\"" << X(phi.position(v)) << "\" cy=\"" << Y(phi.position(v)) << "\" r=\"3\" fill=\"black\"/>\n";
  out << "</svg>\n";
  return out.str();
}

std::string export_svg(const SweepReport& r) {
  const double cell = 4.0;
  const double w = cell * r.cells_x, h = cell * r.cells_y;
  double scale = 1e-12;
  for (double d : r.min_defect)
    if (std::isfinite(d)) scale = std::max(scale, std::abs(d));
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(w) << "\" height=\"" << fixed(h) << "\" viewBox=\"0 0 "
      << fixed(w) << " " << fixed(h) << "\">\n";
  for (int i = 0; i < r.cells_x; ++i)
    for (int j = 0; j < r.cells_y; ++j) {
      const double d = r.min_defect[i * r.cells_y + j];
      out << "<rect x=\"" << fixed(cell * i) << "\" y=\"" << fixed(h - cell * (j + 1)) << "\" width=\"" << fixed(cell)
          << "\" height=\"" << fixed(cell) << "\" fill=\"" << defect_color(std::isfinite(d) ? d : -scale, scale) << "\"/>\n";
    }
  out << "</svg>\n";
  return out.str();
}

std::string export_obj(const InscribedPolyhedron& p) {
  std::ostringstream out;
  for (const Point3& v : p.positions())
    out << "v " << format_double(v.x()) << " " << format_double(v.y()) << " " << format_double(v.z()) << "\n";
  for (const auto& f : p.complex().faces()) out << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
  return out.str();
}

}  // namespace deform::io
