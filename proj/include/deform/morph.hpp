#pragma once

#include <variant>
#include <vector>

#include "deform/layout.hpp"
#include "deform/sphere.hpp"
#include "deform/varopt.hpp"

namespace deform {

struct MorphSample {
  double t = 0.0;
  std::variant<PlanarTriangulation, InscribedPolyhedron> realization;
  /// Planar: min of π - a - a'. Sphere: min empty-circle margin.
  double min_defect = 0.0;
  /// b + c + b' + c' - a - a' on the radial projection; NaN when the origin is outside.
  double min_angle_defect = 0.0;
  double residual = 0.0;  // KKT residual of the solve
  int iterations = 0;
  bool origin_inside = false;
};

struct MorphPath {
  std::vector<MorphSample> samples;

  double min_defect() const;
};

struct MorphOptions {
  int samples = 100;  // including both endpoints
  bool warm_start = true;
  SolverOptions solver{};
};

/// Straight-line path of edge invariants between two strictly Delaunay
/// triangulations of a convex polygon, realized by Θ and development. Base point
/// and scale of the anchor edge are interpolated linearly. Throws
/// Error{MismatchedComplex, NotDelaunayInput, OrientationMismatch, SolverFailure}.
MorphPath morph_polygon(const PlanarTriangulation& a, const PlanarTriangulation& b, int from, int to,
                        const MorphOptions& options = {});

struct SphereMorph {
  MorphPath path;
  Rotation g_a;
  Rotation g_b;
};

/// Path of strictly convex inscribed polyhedra: normalize, morph the stereographic
/// images, lift back and apply the interpolated rotation. Throws as
/// morph_polygon plus Error{NormalizationFailure}.
SphereMorph morph_sphere(const InscribedPolyhedron& a, const InscribedPolyhedron& b, int v0, int from, int to,
                         const MorphOptions& options = {});

/// As morph_sphere, keeping the origin inside: interpolates ᾱ, the preimage of
/// the plane origin and the rescaled diameter r = arctan d / arctan d_max.
/// Throws Error{OriginNotInside}.
SphereMorph morph_sphere_origin(const InscribedPolyhedron& a, const InscribedPolyhedron& b, int v0, int from, int to,
                                const MorphOptions& options = {});

}  // namespace deform
