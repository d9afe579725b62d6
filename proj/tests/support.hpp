#pragma once

// Fixtures and independent oracles shared by the unit tests. Nothing here
// calls into the library's numerics except to construct inputs.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <utility>
#include <random>
#include <vector>

#include "curveflow/curve.hpp"

namespace testing {

using curveflow::Curve2d;
constexpr double kPi = std::numbers::pi;

inline Eigen::VectorXd uniform_u(Eigen::Index n) {
  return Eigen::VectorXd::LinSpaced(n, 0, 2 * kPi * static_cast<double>(n - 1) / static_cast<double>(n));
}

/// Kind of the curveflow::Error thrown by fn, or nullopt when it returns normally.
template <typename F>
std::optional<curveflow::ErrorKind> error_kind(F&& fn) {
  try {
    fn();
  } catch (const curveflow::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

/// Star-shaped curve r(theta) = 1 + sum_k a_k cos(k theta) + b_k sin(k theta)
/// with small random coefficients from a seeded generator.
inline Curve2d random_smooth_curve(unsigned seed, Eigen::Index n, int modes = 4, double amplitude = 0.08) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coef(-amplitude, amplitude);
  std::vector<double> a(modes + 1), b(modes + 1);
  for (int k = 2; k <= modes; ++k) {
    a[k] = coef(rng) / k;
    b[k] = coef(rng) / k;
  }
  Eigen::MatrixX2d p(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double th = 2 * kPi * static_cast<double>(i) / static_cast<double>(n);
    double r = 1;
    for (int k = 2; k <= modes; ++k) r += a[k] * std::cos(k * th) + b[k] * std::sin(k * th);
    p(i, 0) = r * std::cos(th);
    p(i, 1) = r * std::sin(th);
  }
  return Curve2d(std::move(p));
}

/// Spectral derivative of a periodic sample on [0, 2pi) via a naive DFT.
inline Eigen::VectorXd spectral_derivative(const Eigen::VectorXd& f) {
  const Eigen::Index n = f.size();
  std::vector<std::complex<double>> F(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    std::complex<double> acc = 0;
    for (Eigen::Index j = 0; j < n; ++j)
      acc += f[j] * std::polar(1.0, -2 * kPi * static_cast<double>(k * j % n) / static_cast<double>(n));
    F[static_cast<std::size_t>(k)] = acc;
  }
  Eigen::VectorXd out(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    std::complex<double> acc = 0;
    for (Eigen::Index k = 0; k < n; ++k) {
      Eigen::Index m = k <= n / 2 ? k : k - n;
      if (2 * k == n) m = 0;  // drop the Nyquist mode
      acc += std::complex<double>(0, static_cast<double>(m)) * F[static_cast<std::size_t>(k)] *
             std::polar(1.0, 2 * kPi * static_cast<double>(k * j % n) / static_cast<double>(n));
    }
    out[j] = acc.real() / static_cast<double>(n);
  }
  return out;
}

/// Brute-force segment pairs crossing, by orientation signs (strict) plus the
/// half-open endpoint rule of the library: a touch at the start vertex of a
/// segment counts, at its end vertex does not.
inline std::vector<std::pair<Eigen::Index, Eigen::Index>> brute_force_crossings(const Eigen::MatrixX2d& p) {
  const Eigen::Index n = p.rows();
  auto orient = [](Eigen::Vector2d a, Eigen::Vector2d b, Eigen::Vector2d c) {
    return (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
  };
  std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Eigen::Index d = j - i;
      if (d == 1 || d == n - 1) continue;
      const Eigen::Vector2d a0 = p.row(i), a1 = p.row((i + 1) % n), b0 = p.row(j), b1 = p.row((j + 1) % n);
      const double o1 = orient(a0, a1, b0), o2 = orient(a0, a1, b1), o3 = orient(b0, b1, a0), o4 = orient(b0, b1, a1);
      if (o1 * o2 < 0 && o3 * o4 < 0) out.emplace_back(i, j);
    }
  }
  return out;
}

/// Closed curve made of the graph x = g(y), y in [-ymax, ymax], sampled uniformly in y,
/// followed by a straight return segment to its left. Returns the curve and the number of
/// graph samples at the front; only those well away from the join see graph-only stencils.
template <typename G>
std::pair<Curve2d, Eigen::Index> closed_graph_arc(G g, double ymax, Eigen::Index m) {
  const Eigen::Index back = m / 2;
  const double xback = std::min(g(-ymax), g(ymax)) - 0.5;
  Eigen::MatrixX2d p(m + back, 2);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double y = -ymax + 2 * ymax * static_cast<double>(i) / static_cast<double>(m - 1);
    p.row(i) << g(y), y;
  }
  for (Eigen::Index j = 0; j < back; ++j) {
    const double y = ymax - 2 * ymax * static_cast<double>(j + 1) / static_cast<double>(back + 1);
    p.row(m + j) << xback, y;
  }
  return {Curve2d(std::move(p)), m};
}

/// Analytic first/second derivatives of the radial curve r = 1 + eps cos(k theta).
struct RadialCurve {
  double eps;
  int k;

  double r(double t) const { return 1 + eps * std::cos(k * t); }
  double r1(double t) const { return -eps * k * std::sin(k * t); }
  double r2(double t) const { return -eps * k * k * std::cos(k * t); }
  Eigen::Vector2d d1(double t) const {
    return {r1(t) * std::cos(t) - r(t) * std::sin(t), r1(t) * std::sin(t) + r(t) * std::cos(t)};
  }
  Eigen::Vector2d d2(double t) const {
    return {r2(t) * std::cos(t) - 2 * r1(t) * std::sin(t) - r(t) * std::cos(t),
            r2(t) * std::sin(t) + 2 * r1(t) * std::cos(t) - r(t) * std::sin(t)};
  }
  double speed(double t) const { return d1(t).norm(); }
  double kappa(double t) const {
    const Eigen::Vector2d a = d1(t), b = d2(t);
    return (a.x() * b.y() - a.y() * b.x()) / std::pow(a.norm(), 3);
  }
};

}  // namespace testing
