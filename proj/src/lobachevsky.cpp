#include "deform/lobachevsky.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "deform/error.hpp"

namespace deform {

namespace {

constexpr int kTerms = 40;

// c_n = ζ(2n) / (n (2n + 1) (2π)^{2n}), the coefficients of
// Cl_2(t) = t - t log t + Σ_n c_n t^{2n+1}, valid for 0 < t < 2π.
std::array<double, kTerms + 1> clausen_coefficients() {
  std::array<double, kTerms + 1> c{};
  const double two_pi = 2.0 * std::numbers::pi;
  for (int n = 1; n <= kTerms; ++n) {
    const int s = 2 * n;
    double zeta;
    if (n == 1) {
      zeta = std::numbers::pi * std::numbers::pi / 6.0;
    } else {
      // Direct sum with an Euler-Maclaurin tail; the error is far below 1e-17.
      constexpr int K = 200;
      zeta = 0.0;
      for (int k = K; k >= 1; --k) zeta += std::pow(static_cast<double>(k), -s);
      const double kk = K;
      zeta += std::pow(kk, 1 - s) / (s - 1) - 0.5 * std::pow(kk, -s) + s * std::pow(kk, -s - 1) / 12.0;
    }
    c[n] = zeta / (n * (2.0 * n + 1.0) * std::pow(two_pi, s));
  }
  return c;
}

// Cl_2 on [0, π] by the ζ series; the ratio (t / 2π)^2 is at most 1/4 there.
double clausen_series(double t) {
  static const std::array<double, kTerms + 1> coeff = clausen_coefficients();
  if (t == 0.0) return 0.0;
  const double t2 = t * t;
  double power = t;  // t^{2n+1}
  double sum = 0.0;
  for (int n = 1; n <= kTerms; ++n) {
    power *= t2;
    const double term = coeff[n] * power;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return t - t * std::log(t) + sum;
}

}  // namespace

double clausen2(double t) {
  if (!std::isfinite(t)) throw Error(ErrorCode::NonFinite, "Clausen function of a non-finite argument");
  const double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(t, two_pi);
  if (r < 0.0) r += two_pi;
  if (r <= std::numbers::pi) return clausen_series(r);
  return -clausen_series(two_pi - r);
}

double lobachevsky(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::NonFinite, "Lobachevsky function of a non-finite argument");
  const double pi = std::numbers::pi;
  // Reduce to [0, π) by periodicity, then fold onto [0, π/2] by oddness.
  double r = std::fmod(x, pi);
  if (r < 0.0) r += pi;
  if (r >= pi) r -= pi;
  if (r <= 0.5 * pi) return 0.5 * clausen_series(2.0 * r);
  return -0.5 * clausen_series(2.0 * (pi - r));
}

double face_volume(double a, double b, double c, double tol) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0) || std::abs(a + b + c - std::numbers::pi) > tol)
    throw Error(ErrorCode::NotATriangle, "angles do not form a Euclidean triangle");
  return lobachevsky(a) + lobachevsky(b) + lobachevsky(c);
}

EnergyReport energy(const TriComplex& t, const AngleStructure& theta) {
  if (!is_angle_structure(t, theta))
    throw Error(ErrorCode::InvalidAngleStructure, "energy needs a valid angle structure");
  EnergyReport report;
  report.value = energy_value(theta.theta);
  report.gradient.resize(theta.size());
  report.hessian_diag.resize(theta.size());
  for (std::size_t c = 0; c < theta.size(); ++c) {
    double a = theta.theta[c];
    if (a < kAngleFloor) {
      a = kAngleFloor;
      report.clamped = true;
    }
    report.gradient[c] = -std::log(std::abs(2.0 * std::sin(a)));
    report.hessian_diag[c] = -1.0 / std::tan(a);
  }
  return report;
}

double energy_value(std::span<const double> theta) {
  double sum = 0.0;
  for (std::size_t f = 0; f + 2 < theta.size(); f += 3)
    sum += lobachevsky(theta[f]) + lobachevsky(theta[f + 1]) + lobachevsky(theta[f + 2]);
  return sum;
}

}  // namespace deform
