#include "deform/counterex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <thread>

#include "deform/error.hpp"

namespace deform {

namespace {

constexpr double kPi = std::numbers::pi;

// Runs body(k) for k in [0, count) on worker_count() threads; each k writes only its own slots.
template <class Body>
void parallel_for(int count, Body body) {
  const int workers = std::min(worker_count(), std::max(count, 1));
  if (workers <= 1) {
    for (int k = 0; k < count; ++k) body(k);
    return;
  }
  std::vector<std::thread> threads;
  for (int w = 0; w < workers; ++w)
    threads.emplace_back([&, w] {
      for (int k = w; k < count; k += workers) body(k);
    });
  for (auto& th : threads) th.join();
}

struct OppositePair {
  int edge;
  std::array<std::array<int, 3>, 2> corners;  // (vertex at the angle, other two)
};

std::vector<OppositePair> inner_edge_corners(const TriComplex& t) {
  std::vector<OppositePair> out;
  for (int e : t.interior_edges()) {
    OppositePair p{e, {}};
    for (int s = 0; s < 2; ++s) {
      const CornerIndex c = t.opposite_corner(t.edge(e).halfedges[s]);
      const auto& f = t.face(c.face);
      p.corners[s] = {f[c.slot], f[(c.slot + 1) % 3], f[(c.slot + 2) % 3]};
    }
    out.push_back(p);
  }
  return out;
}

void finish_report(SweepReport& r, double bisector_x, double margin) {
  r.components = label_components(r.mask, r.cells_x, r.cells_y, r.labels);
  r.witnesses.assign(r.components, SweepWitness{});
  for (auto& w : r.witnesses) w.min_defect = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < r.cells_x; ++i)
    for (int j = 0; j < r.cells_y; ++j) {
      const int idx = i * r.cells_y + j;
      const int c = r.labels[idx];
      if (c >= 0 && r.min_defect[idx] > r.witnesses[c].min_defect) {
        r.witnesses[c].min_defect = r.min_defect[idx];
        r.witnesses[c].component = c;
        r.witnesses[c].a = r.cell_point(i, j);
      }
    }

  long long violated = 0;
  for (const SeparatorPoint& s : r.separator)
    if (s.defect < -margin) ++violated;
  bool left = false, right = false;
  for (const SweepWitness& w : r.witnesses) {
    left = left || w.a.x() < bisector_x;
    right = right || w.a.x() > bisector_x;
  }
  if (violated != static_cast<long long>(r.separator.size())) {
    r.status = SweepStatus::Inconclusive;
    r.reason = std::to_string(r.separator.size() - violated) + " bisector configurations are Delaunay within the margin";
  } else if (r.components < 2) {
    r.status = SweepStatus::Inconclusive;
    r.reason = "Delaunay region has " + std::to_string(r.components) + " component(s)";
  } else if (!left || !right) {
    r.status = SweepStatus::Inconclusive;
    r.reason = "no Delaunay witnesses on both sides of the bisector";
  } else {
    r.status = SweepStatus::Pass;
    r.reason = "bisector separates " + std::to_string(r.components) + " components";
  }
}

void check_grid(int grid) {
  if (grid < 2 || grid % 2 != 0) throw Error(ErrorCode::OutOfRange, "grid must be an even integer >= 2");
}

}  // namespace

int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (const char* env = std::getenv("DELAUNAY_DEFORM_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return n;
}

int label_components(const std::vector<char>& mask, int nx, int ny, std::vector<int>& labels) {
  labels.assign(mask.size(), -1);
  int count = 0;
  for (int start = 0; start < nx * ny; ++start) {
    if (!mask[start] || labels[start] >= 0) continue;
    std::queue<int> queue;
    queue.push(start);
    labels[start] = count;
    while (!queue.empty()) {
      const int idx = queue.front();
      queue.pop();
      const int i = idx / ny, j = idx % ny;
      const int next[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
      for (const auto& n : next) {
        if (n[0] < 0 || n[0] >= nx || n[1] < 0 || n[1] >= ny) continue;
        const int k = n[0] * ny + n[1];
        if (mask[k] && labels[k] < 0) {
          labels[k] = count;
          queue.push(k);
        }
      }
    }
    ++count;
  }
  return count;
}

const char* to_string(SweepStatus status) { return status == SweepStatus::Pass ? "pass" : "inconclusive"; }

Point2 SweepReport::cell_point(int i, int j) const {
  return {x_min + (x_max - x_min) * (i + 1) / grid, y_min + (y_max - y_min) * (j + 1) / grid};
}

void require_pass(const SweepReport& report) {
  if (report.status != SweepStatus::Pass) throw Error(ErrorCode::InconclusiveSweep, report.reason);
}

// ---- rectangle ----

std::vector<Point2> RectangleFamily::with(const Point2& pa, const Point2& pb) const {
  std::vector<Point2> p = positions;
  p[a] = pa;
  p[b] = pb;
  return p;
}

RectangleFamily rectangle_family(double width) {
  if (!(width > 1.0)) throw Error(ErrorCode::OutOfRange, "rectangle width must exceed 1");
  RectangleFamily fam;
  fam.width = width;
  fam.complex = TriComplex::build({{5, 2, 6}, {2, 3, 6}, {3, 4, 6}, {4, 5, 6}, {0, 1, 7}, {1, 2, 7}, {2, 5, 7}, {5, 0, 7}},
                                  SurfaceKind::Disk);
  fam.positions = {{0.0, 0.0}, {width, 0.0}, {width, 0.5}, {width, 1.0}, {0.0, 1.0}, {0.0, 0.5},
                   {width / 2, 0.75}, {width / 2, 0.25}};
  fam.yellow_edge = fam.complex.find_edge(5, 2);
  return fam;
}

namespace {

std::pair<double, int> rectangle_min_defect(const std::vector<OppositePair>& pairs, const std::array<Point2, 8>& p) {
  std::pair<double, int> best{std::numeric_limits<double>::infinity(), -1};
  for (const OppositePair& op : pairs) {
    double sum = 0.0;
    for (const auto& c : op.corners) sum += corner_angle(p[c[0]], p[c[1]], p[c[2]]);
    if (kPi - sum < best.first) best = {kPi - sum, op.edge};
  }
  return best;
}

}  // namespace

std::pair<double, int> rectangle_min_defect(const RectangleFamily& family, const Point2& pa, const Point2& pb) {
  std::array<Point2, 8> p;
  for (int v = 0; v < 8; ++v) p[v] = family.positions[v];
  p[family.a] = pa;
  p[family.b] = pb;
  return rectangle_min_defect(inner_edge_corners(family.complex), p);
}

SweepReport rectangle_sweep(double width, int grid, double margin) {
  check_grid(grid);
  const RectangleFamily fam = rectangle_family(width);
  const std::vector<OppositePair> pairs = inner_edge_corners(fam.complex);
  const int n = grid, m = grid - 1;

  SweepReport r;
  r.family = "rectangle";
  r.parameter = width;
  r.grid = grid;
  r.margin = margin;
  r.x_min = 0.0;
  r.x_max = width;
  r.y_min = 0.5;
  r.y_max = 1.0;
  r.cells_x = r.cells_y = m;
  r.min_defect.assign(m * m, 0.0);
  r.mask.assign(m * m, 0);

  std::array<Point2, 8> base;
  for (int v = 0; v < 8; ++v) base[v] = fam.positions[v];
  const auto xs = [&](int i) { return width * (i + 1) / n; };
  const auto upper = [&](int j) { return 0.5 + 0.5 * (j + 1) / n; };
  const auto lower = [&](int j) { return 0.5 - 0.5 * (j + 1) / n; };

  parallel_for(m, [&](int i) {
    std::array<Point2, 8> p = base;
    for (int j = 0; j < m; ++j) {
      p[fam.a] = {xs(i), upper(j)};
      p[fam.b] = {xs(i), lower(j)};
      const double d = rectangle_min_defect(pairs, p).first;
      r.min_defect[i * m + j] = d;
      r.mask[i * m + j] = d > margin;
    }
  });

  // One vertex on x = W/2, the other over its full strip grid.
  r.separator.assign(2 * m, SeparatorPoint{});
  parallel_for(2 * m, [&](int k) {
    const bool a_on = k < m;
    const int j = k % m;
    std::array<Point2, 8> p = base;
    SeparatorPoint s;
    s.defect = -std::numeric_limits<double>::infinity();
    s.on_bisector = {width / 2, a_on ? upper(j) : lower(j)};
    p[a_on ? fam.a : fam.b] = s.on_bisector;
    for (int i = 0; i < m; ++i)
      for (int l = 0; l < m; ++l) {
        const Point2 other{xs(i), a_on ? lower(l) : upper(l)};
        p[a_on ? fam.b : fam.a] = other;
        const auto [d, e] = rectangle_min_defect(pairs, p);
        if (d > s.defect) {
          s.defect = d;
          s.edge = e;
          s.other = other;
        }
      }
    r.separator[k] = s;
  });
  r.separator_configurations = 2LL * m * m * m;

  finish_report(r, width / 2, margin);
  for (SweepWitness& w : r.witnesses) w.b = {w.a.x(), 1.0 - w.a.y()};
  return r;
}

// ---- torus ----

Point2 TorusTriangulation::translation(const Lift& m) const {
  return m[0] * lattice.row(0).transpose() + m[1] * lattice.row(1).transpose();
}

std::array<Point2, 3> TorusTriangulation::lifted_face(int f) const {
  const auto& v = complex.face(f);
  const Lift l0 = complex.halfedge_lift(3 * f), l1 = complex.halfedge_lift(3 * f + 1);
  return {positions[v[0]], positions[v[1]] + translation(l0), positions[v[2]] + translation({l0[0] + l1[0], l0[1] + l1[1]})};
}

TorusTriangulation torus_family(double h, const Point2& b) {
  if (!(h > 0.0)) throw Error(ErrorCode::OutOfRange, "torus height must be positive");
  // Faces as (vertex, lattice offset of its copy); lifts are offset differences.
  using Copy = std::pair<int, Lift>;
  const std::array<std::array<Copy, 3>, 4> faces{{
      {{{0, {0, 0}}, {0, {1, 0}}, {1, {0, 0}}}},
      {{{0, {1, 0}}, {1, {1, 0}}, {1, {0, 0}}}},
      {{{1, {0, 0}}, {0, {1, 1}}, {0, {0, 1}}}},
      {{{1, {0, 0}}, {1, {1, 0}}, {0, {1, 1}}}},
  }};
  std::vector<std::array<int, 3>> tri;
  std::vector<std::array<Lift, 3>> lifts;
  for (const auto& f : faces) {
    tri.push_back({f[0].first, f[1].first, f[2].first});
    std::array<Lift, 3> l;
    for (int k = 0; k < 3; ++k) {
      const Lift& from = f[k].second;
      const Lift& to = f[(k + 1) % 3].second;
      l[k] = {to[0] - from[0], to[1] - from[1]};
    }
    lifts.push_back(l);
  }
  TorusTriangulation tau;
  tau.lattice << 1.0, 0.0, 0.0, h;
  tau.complex = TriComplex::build(std::move(tri), SurfaceKind::Torus, std::move(lifts));
  tau.positions = {Point2::Zero(), b};
  return tau;
}

int torus_yellow_edge(const TorusTriangulation& tau) {
  for (int e = 0; e < tau.complex.edge_count(); ++e) {
    const Edge& edge = tau.complex.edge(e);
    if (edge.v0 == 0 && edge.v1 == 0) return e;
  }
  return -1;
}

std::vector<double> torus_delaunay_defects(const TorusTriangulation& tau) {
  const TriComplex& t = tau.complex;
  std::vector<std::array<Point2, 3>> lifted(t.face_count());
  for (int f = 0; f < t.face_count(); ++f) {
    lifted[f] = tau.lifted_face(f);
    const auto& p = lifted[f];
    const double scale = std::max({(p[0] - p[1]).norm(), (p[1] - p[2]).norm(), (p[2] - p[0]).norm()});
    if (!(orient2d(p[0], p[1], p[2]) > 1e-14 * scale * scale))
      throw Error(ErrorCode::DegenerateFace, "lifted face " + std::to_string(f) + " is degenerate or inverted");
  }
  std::vector<double> out(t.edge_count());
  for (int e = 0; e < t.edge_count(); ++e) {
    double sum = 0.0;
    for (int h : t.edge(e).halfedges) {
      const CornerIndex c = t.opposite_corner(h);
      const auto& p = lifted[c.face];
      sum += corner_angle(p[c.slot], p[(c.slot + 1) % 3], p[(c.slot + 2) % 3]);
    }
    out[e] = 2.0 * (kPi - sum);
  }
  return out;
}

SweepReport torus_sweep(double h, int grid, double margin) {
  check_grid(grid);
  const TorusTriangulation family = torus_family(h, {0.5, 0.5 * h});
  const int n = grid, m = grid - 1;

  SweepReport r;
  r.family = "torus";
  r.parameter = h;
  r.grid = grid;
  r.margin = margin;
  r.x_min = 0.0;
  r.x_max = 1.0;
  r.y_min = 0.0;
  r.y_max = h;
  r.cells_x = r.cells_y = m;
  r.min_defect.assign(m * m, 0.0);
  r.mask.assign(m * m, 0);

  const auto evaluate = [&](TorusTriangulation& tau, const Point2& b) -> std::pair<double, int> {
    tau.positions[1] = b;
    std::vector<double> d;
    try {
      d = torus_delaunay_defects(tau);
    } catch (const Error&) {
      return {-std::numeric_limits<double>::infinity(), -1};
    }
    const auto it = std::min_element(d.begin(), d.end());
    return {*it, static_cast<int>(it - d.begin())};
  };

  parallel_for(m, [&](int i) {
    TorusTriangulation tau = family;
    for (int j = 0; j < m; ++j) {
      const double d = evaluate(tau, r.cell_point(i, j)).first;
      r.min_defect[i * m + j] = d;
      r.mask[i * m + j] = d > margin;
    }
  });

  r.separator.assign(m, SeparatorPoint{});
  parallel_for(m, [&](int j) {
    TorusTriangulation tau = family;
    SeparatorPoint s;
    s.on_bisector = {0.5, h * (j + 1) / n};
    std::tie(s.defect, s.edge) = evaluate(tau, s.on_bisector);
    r.separator[j] = s;
  });
  r.separator_configurations = m;

  finish_report(r, 0.5, margin);
  for (SweepWitness& w : r.witnesses) {
    w.b = w.a;
    w.a = Point2::Zero();
  }
  return r;
}

}  // namespace deform
