#include "deform/morph.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "deform/error.hpp"

namespace deform {

namespace {

double grid_t(int k, int n) { return n == 1 ? 0.0 : static_cast<double>(k) / (n - 1); }

EdgeInvariant lerp(const EdgeInvariant& a, const EdgeInvariant& b, double t) {
  EdgeInvariant out;
  out.values.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.values[i] = (1.0 - t) * a.values[i] + t * b.values[i];
  return out;
}

std::string at(double t) {
  char buf[48];
  std::snprintf(buf, sizeof buf, " at t=%.17g", t);
  return buf;
}

void require_inputs(const PlanarTriangulation& a, const PlanarTriangulation& b) {
  if (a.complex().faces() != b.complex().faces())
    throw Error(ErrorCode::MismatchedComplex, "morph endpoints are realizations of different complexes");
  if (!is_strictly_delaunay(a)) throw Error(ErrorCode::NotDelaunayInput, "first endpoint is not strictly Delaunay");
  if (!is_strictly_delaunay(b)) throw Error(ErrorCode::NotDelaunayInput, "second endpoint is not strictly Delaunay");
  if (a.orientation() != b.orientation())
    throw Error(ErrorCode::OrientationMismatch, "morph endpoints have opposite orientations");
}

// Θ along the straight path of edge invariants, one solve per sample.
class FiberPath {
 public:
  FiberPath(const PlanarTriangulation& a, const PlanarTriangulation& b, const MorphOptions& options)
      : alpha_a_(edge_invariant(a.complex(), angles_of(a))),
        alpha_b_(edge_invariant(b.complex(), angles_of(b))),
        problem_(FiberProblem::make(a.complex(), alpha_a_, options.solver)),
        warm_(options.warm_start) {}

  SolveResult solve(double t) {
    SolveResult r;
    try {
      r = maximize(problem_.with_target(lerp(alpha_a_, alpha_b_, t)), warm_ ? previous_ : std::nullopt);
    } catch (const Error& e) {
      throw Error(ErrorCode::SolverFailure, e.what() + at(t));
    }
    if (r.status != SolveStatus::Converged)
      throw Error(ErrorCode::SolverFailure, std::string("solver stopped: ") + to_string(r.status) + at(t));
    previous_ = r.theta_star;
    return r;
  }

 private:
  EdgeInvariant alpha_a_, alpha_b_;
  FiberProblem problem_;
  bool warm_;
  std::optional<AngleStructure> previous_;
};

PlanarTriangulation develop_at(const TriComplex& t, const AngleStructure& theta, const Anchor& anchor, int orientation,
                               double time) {
  try {
    return develop(t, theta, anchor, orientation).first;
  } catch (const Error& e) {
    throw Error(ErrorCode::SolverFailure, e.what() + at(time));
  }
}

struct SphereSetup {
  Normalization na, nb;
  PlanarChart ca, cb;
  int from = -1, to = -1;  // T0 labels
};

SphereSetup prepare_sphere(const InscribedPolyhedron& a, const InscribedPolyhedron& b, int v0, int from, int to) {
  if (a.complex().faces() != b.complex().faces())
    throw Error(ErrorCode::MismatchedComplex, "morph endpoints are realizations of different complexes");
  if (!same_orientation(a, b)) throw Error(ErrorCode::OrientationMismatch, "morph endpoints have opposite orientations");
  SphereSetup s;
  try {
    s.na = normalize(a, v0, from, to);
    s.nb = normalize(b, v0, from, to);
  } catch (const Error& e) {
    throw Error(ErrorCode::NormalizationFailure, e.what());
  }
  try {
    s.ca = project_to_plane(s.na.normalized, v0);
    s.cb = project_to_plane(s.nb.normalized, v0);
  } catch (const Error& e) {
    throw Error(ErrorCode::NotDelaunayInput, e.what());
  }
  s.from = s.ca.removal.child_vertex[from];
  s.to = s.ca.removal.child_vertex[to];
  return s;
}

MorphSample sphere_sample(double t, const PlanarTriangulation& planar, const StarRemoval& removal, const Rotation& g) {
  MorphSample s;
  s.t = t;
  InscribedPolyhedron lifted;
  try {
    lifted = rotated(lift_to_sphere(planar, removal), g);
  } catch (const Error& e) {
    throw Error(ErrorCode::SolverFailure, e.what() + at(t));
  }
  s.min_defect = min_empty_circle_margin(lifted).first;
  s.origin_inside = origin_inside(lifted);
  s.min_angle_defect = s.origin_inside ? min_spherical_delaunay_defect(radial_projection(lifted)).first
                                       : std::numeric_limits<double>::quiet_NaN();
  s.realization = std::move(lifted);
  return s;
}

}  // namespace

double MorphPath::min_defect() const {
  double best = std::numeric_limits<double>::infinity();
  for (const MorphSample& s : samples) best = std::min(best, s.min_defect);
  return best;
}

MorphPath morph_polygon(const PlanarTriangulation& a, const PlanarTriangulation& b, int from, int to,
                        const MorphOptions& options) {
  require_inputs(a, b);
  if (options.samples < 2) throw Error(ErrorCode::OutOfRange, "a morph needs at least two samples");
  const Anchor anchor_a = anchor_of(a, from, to);
  const Anchor anchor_b = anchor_of(b, from, to);
  FiberPath fiber(a, b, options);

  MorphPath path;
  for (int k = 0; k < options.samples; ++k) {
    const double t = grid_t(k, options.samples);
    const SolveResult r = fiber.solve(t);
    const Anchor anchor{from, to, (1.0 - t) * anchor_a.base + t * anchor_b.base,
                        (1.0 - t) * anchor_a.scale + t * anchor_b.scale};
    MorphSample s;
    s.t = t;
    s.residual = r.kkt_residual;
    s.iterations = r.iterations;
    PlanarTriangulation phi = develop_at(a.complex(), r.theta_star, anchor, a.orientation(), t);
    s.min_defect = min_delaunay_defect(phi).first;
    s.min_angle_defect = s.min_defect;
    s.realization = std::move(phi);
    path.samples.push_back(std::move(s));
  }
  return path;
}

SphereMorph morph_sphere(const InscribedPolyhedron& a, const InscribedPolyhedron& b, int v0, int from, int to,
                         const MorphOptions& options) {
  const SphereSetup setup = prepare_sphere(a, b, v0, from, to);
  const MorphPath planar = morph_polygon(setup.ca.planar, setup.cb.planar, setup.from, setup.to, options);
  SphereMorph out{{}, setup.na.g, setup.nb.g};
  for (const MorphSample& p : planar.samples) {
    MorphSample s = sphere_sample(p.t, std::get<PlanarTriangulation>(p.realization), setup.ca.removal,
                                  interpolate(setup.na.g, setup.nb.g, p.t));
    s.residual = p.residual;
    s.iterations = p.iterations;
    out.path.samples.push_back(std::move(s));
  }
  return out;
}

SphereMorph morph_sphere_origin(const InscribedPolyhedron& a, const InscribedPolyhedron& b, int v0, int from, int to,
                                const MorphOptions& options) {
  if (!origin_inside(a) || !origin_inside(b))
    throw Error(ErrorCode::OriginNotInside, "both endpoints must contain the origin");
  if (options.samples < 2) throw Error(ErrorCode::OutOfRange, "a morph needs at least two samples");
  const SphereSetup setup = prepare_sphere(a, b, v0, from, to);
  const PlanarTriangulation& pa = setup.ca.planar;
  const PlanarTriangulation& pb = setup.cb.planar;
  require_inputs(pa, pb);
  const TriComplex& t0 = pa.complex();

  // Preimage of the plane origin and the rescaled diameter at both ends.
  const PointLocation qa = locate_point(pa, Point2::Zero());
  const PointLocation qb = locate_point(pb, Point2::Zero());
  const double ra = fiber_rescale(diameter(pa), max_scale(pa, Point2::Zero()).d_max);
  const double rb = fiber_rescale(diameter(pb), max_scale(pb, Point2::Zero()).d_max);
  const auto point_in = [&](const PlanarTriangulation& phi, const PointLocation& q) {
    Point2 p = Point2::Zero();
    for (int k = 0; k < 3; ++k) p += q.barycentric[k] * phi.position(t0.face(q.face)[k]);
    return p;
  };

  FiberPath fiber(pa, pb, options);
  SphereMorph out{{}, setup.na.g, setup.nb.g};
  for (int k = 0; k < options.samples; ++k) {
    const double t = grid_t(k, options.samples);
    const SolveResult r = fiber.solve(t);
    const PlanarTriangulation shape =
        develop_at(t0, r.theta_star, Anchor{setup.from, setup.to, Point2::Zero(), 1.0}, pa.orientation(), t);
    const Point2 q = (1.0 - t) * point_in(shape, qa) + t * point_in(shape, qb);
    const double shape_diameter = diameter(shape);
    const double d_max = max_scale(shape, q).d_max;
    const double d = fiber_rescale_inverse((1.0 - t) * ra + t * rb, d_max);
    const double s = d / shape_diameter;
    const PlanarTriangulation planar = transformed(shape, s, -s * q);

    MorphSample sample = sphere_sample(t, planar, setup.ca.removal, interpolate(setup.na.g, setup.nb.g, t));
    sample.residual = r.kkt_residual;
    sample.iterations = r.iterations;
    out.path.samples.push_back(std::move(sample));
  }
  return out;
}

}  // namespace deform
