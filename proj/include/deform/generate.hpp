#pragma once

#include <cstdint>
#include <random>

#include "deform/angles.hpp"
#include "deform/layout.hpp"
#include "deform/sphere.hpp"

namespace deform {

using Rng = std::mt19937_64;

struct DiskOptions {
  double min_defect = 1e-2;      // strictness of the Delaunay condition
  double min_angle = 0.05;       // smallest corner angle
  double boundary_slack = 0.05;  // boundary angles at most π - slack
};

/// Strictly Delaunay triangulation of a convex polygon with `vertices` vertices,
/// roughly a third of them on the boundary. Throws Error{OutOfRange} for fewer than 3.
PlanarTriangulation random_delaunay_disk(int vertices, Rng& rng, const DiskOptions& options = {});

struct PolyhedronOptions {
  double min_z = -1.0;          // sample directions with z >= min_z
  double min_margin = 1e-3;     // strict convexity margin
  bool require_origin_inside = false;
};

/// Convex hull of random unit vectors. Throws Error{OutOfRange} for fewer than 4.
InscribedPolyhedron random_inscribed_polyhedron(int vertices, Rng& rng, const PolyhedronOptions& options = {});

/// Random perturbation of every vertex by up to `amplitude`, halved until the
/// result is again strictly Delaunay with the given margin.
PlanarTriangulation jitter(const PlanarTriangulation& phi, double amplitude, Rng& rng, double min_defect = 1e-3);
InscribedPolyhedron jitter(const InscribedPolyhedron& p, double amplitude, Rng& rng, double min_margin = 1e-4,
                           bool keep_origin_inside = false);

Rotation random_rotation(Rng& rng);

/// Angle structure with independent uniform face splits, every angle >= floor.
AngleStructure random_angle_structure(const TriComplex& t, Rng& rng, double floor = 0.05);

}  // namespace deform
