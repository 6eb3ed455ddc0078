#pragma once

#include <span>
#include <vector>

#include "deform/angles.hpp"
#include "deform/complex.hpp"

namespace deform {

/// Lobachevsky function Λ(x) = -∫_0^x log|2 sin t| dt. Odd, π-periodic, with
/// absolute error below 1e-14 on all finite inputs. Throws Error{NonFinite}.
double lobachevsky(double x);

/// Clausen function Cl_2(t) = Σ sin(n t) / n^2; Λ(x) = Cl_2(2x) / 2.
double clausen2(double t);

/// Volume of the ideal tetrahedron whose horospherical section has angles (a, b, c).
/// Throws Error{NotATriangle} unless a, b, c > 0 and a + b + c = π within `tol`.
double face_volume(double a, double b, double c, double tol = kAffineTolerance);

struct EnergyReport {
  double value = 0.0;
  std::vector<double> gradient;      // -log|2 sin θ_c|
  std::vector<double> hessian_diag;  // -cot θ_c
  bool clamped = false;              // some θ_c was raised to kAngleFloor for the derivatives
};

inline constexpr double kAngleFloor = 1e-12;

/// Total energy Σ_f V(θ_f) with its derivatives. Throws Error{InvalidAngleStructure}.
EnergyReport energy(const TriComplex& t, const AngleStructure& theta);

/// Unchecked energy value for any corner vector whose length is a multiple of 3.
double energy_value(std::span<const double> theta);

}  // namespace deform
