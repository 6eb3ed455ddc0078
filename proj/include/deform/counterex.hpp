#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "deform/complex.hpp"
#include "deform/layout.hpp"

namespace deform {

/// Widths and heights at which the sweeps were found to separate.
inline constexpr double kRectangleWitnessWidth = 2.0;
inline constexpr double kTorusWitnessHeight = 0.5;
inline constexpr double kSweepMargin = 1e-6;

/// Rectangle [0,W]×[0,1] with boundary vertices 0:(0,0) 1:(W,0) 2:(W,½) 3:(W,1)
/// 4:(0,1) 5:(0,½), the free vertex A = 6 in the upper strip and B = 7 in the
/// lower strip. The chord 5–2 is the separating ("yellow") edge.
struct RectangleFamily {
  double width = 0.0;
  TriComplex complex;
  std::vector<Point2> positions;  // A and B hold placeholders
  int a = 6;
  int b = 7;
  int yellow_edge = -1;

  std::vector<Point2> with(const Point2& pa, const Point2& pb) const;
};

/// Throws Error{OutOfRange} unless W > 1.
RectangleFamily rectangle_family(double width);

/// Minimum of π - a - a' over the nine inner edges, and the edge attaining it.
std::pair<double, int> rectangle_min_defect(const RectangleFamily& family, const Point2& pa, const Point2& pb);

/// Geodesic triangulation of the flat torus ℝ²/Λ; edge u -> v with lift m is
/// the segment from pos(u) to pos(v) + m·lattice.
struct TorusTriangulation {
  Eigen::Matrix2d lattice;  // rows are the generators
  TriComplex complex;
  std::vector<Point2> positions;

  Point2 translation(const Lift& m) const;
  /// Corner positions of face f in the universal cover, slot 0 at pos(face[0]).
  std::array<Point2, 3> lifted_face(int f) const;
};

/// Two-vertex zigzag triangulation of the torus with lattice (1,0), (0,h):
/// A = 0 at the origin, B = 1 at (x, y), the loops at A and B with lift (1,0)
/// and four A–B edges. The loop at A is the separating edge. Throws Error{OutOfRange}.
TorusTriangulation torus_family(double h, const Point2& b);
/// Edge id of the loop at A.
int torus_yellow_edge(const TorusTriangulation& tau);

/// Per-edge b + c + b' + c' - a - a' = 2(π - a - a') in the flat metric.
/// Throws Error{DegenerateFace} when a lifted face is degenerate or inverted.
std::vector<double> torus_delaunay_defects(const TorusTriangulation& tau);

enum class SweepStatus { Pass, Inconclusive };

const char* to_string(SweepStatus status);

struct SweepWitness {
  Point2 a = Point2::Zero();  // rectangle: A; torus: unused
  Point2 b = Point2::Zero();  // rectangle: B; torus: B
  double min_defect = 0.0;
  int component = -1;
};

struct SeparatorPoint {
  Point2 on_bisector = Point2::Zero();  // the vertex held on the bisector
  Point2 other = Point2::Zero();        // least violated position of the other vertex
  int edge = -1;                        // most violated edge there
  double defect = 0.0;
};

struct SweepReport {
  std::string family;
  double parameter = 0.0;  // W or h
  int grid = 0;
  double margin = kSweepMargin;
  double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
  int cells_x = 0, cells_y = 0;
  std::vector<double> min_defect;  // heat map, row-major over (i, j) with i along x
  std::vector<char> mask;
  std::vector<int> labels;  // component of each masked cell, -1 elsewhere
  int components = 0;
  std::vector<SweepWitness> witnesses;
  std::vector<SeparatorPoint> separator;
  long long separator_configurations = 0;
  SweepStatus status = SweepStatus::Inconclusive;
  std::string reason;

  Point2 cell_point(int i, int j) const;
};

/// Symmetric slice B = (x_A, 1 - y_A) for the flood fill, and the full grid of
/// the other vertex whenever A or B sits on x = W/2. Throws Error{OutOfRange}
/// unless grid is even and at least 2.
SweepReport rectangle_sweep(double width, int grid, double margin = kSweepMargin);
SweepReport torus_sweep(double h, int grid, double margin = kSweepMargin);

/// Throws Error{InconclusiveSweep} with the report's reason unless it passed.
void require_pass(const SweepReport& report);

/// 4-neighbour connected components of a row-major mask; returns the count.
int label_components(const std::vector<char>& mask, int nx, int ny, std::vector<int>& labels);

/// Worker count: hardware concurrency capped by DELAUNAY_DEFORM_THREADS.
int worker_count();

}  // namespace deform
