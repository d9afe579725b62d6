#include "curveflow/generators.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "curveflow/error.hpp"

namespace curveflow {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

Curve2d eight_with(double d, double e, Eigen::Index n) {
  Eigen::MatrixX2d p(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = (static_cast<double>(i) + 0.5) * kTwoPi / static_cast<double>(n);
    const double s = std::sin(u), c = std::cos(u);
    const double denom = 1 + s * s;
    p(i, 0) = c * (1 + d * c) / denom;
    p(i, 1) = s * c * (1 + e * c) / denom;
  }
  return Curve2d(std::move(p));
}

}  // namespace

Curve2d make_circle(double r, Eigen::Index n, Eigen::Vector2d centre) {
  if (!(r > 0)) throw Error(ErrorKind::PreconditionFailed, "circle radius must be positive");
  Eigen::MatrixX2d p(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    p(i, 0) = centre.x() + r * std::cos(u);
    p(i, 1) = centre.y() + r * std::sin(u);
  }
  return Curve2d(std::move(p));
}

Curve2d make_ellipse(double a, double b, Eigen::Index n) {
  if (!(a > 0 && b > 0)) throw Error(ErrorKind::PreconditionFailed, "ellipse axes must be positive");
  Eigen::MatrixX2d p(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    p(i, 0) = a * std::cos(u);
    p(i, 1) = b * std::sin(u);
  }
  return Curve2d(std::move(p));
}

Curve2d make_perturbed_circle(double eps, int k, Eigen::Index n) {
  if (!(std::abs(eps) < 1)) throw Error(ErrorKind::PreconditionFailed, "|eps| must be below 1");
  Eigen::MatrixX2d p(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double th = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    const double r = 1 + eps * std::cos(k * th);
    p(i, 0) = r * std::cos(th);
    p(i, 1) = r * std::sin(th);
  }
  return Curve2d(std::move(p));
}

Curve2d make_bernoulli_lemniscate(double a, Eigen::Index n) {
  if (!(a > 0)) throw Error(ErrorKind::PreconditionFailed, "lemniscate scale must be positive");
  if (n < 64) {
    std::ostringstream msg;
    msg << "lemniscate needs n >= 64, got " << n;
    throw Error(ErrorKind::PreconditionFailed, msg.str());
  }
  return scaled(eight_with(0, 0, n), a);
}

double asymmetric_eight_height_factor(double ratio, Eigen::Index n) {
  if (!(ratio >= 0.5 && ratio <= 2)) {
    std::ostringstream msg;
    msg << "loop scale ratio must lie in [0.5, 2], got " << ratio;
    throw Error(ErrorKind::PreconditionFailed, msg.str());
  }
  if (n < 64) throw Error(ErrorKind::PreconditionFailed, "asymmetric eight needs n >= 64");
  const double d = (ratio - 1) / (ratio + 1);
  // Raising e inflates the right loop (positive signed area) and deflates the left one.
  double lo = -0.9, hi = 0.9;
  const double f_lo = signed_area(eight_with(d, lo, n)), f_hi = signed_area(eight_with(d, hi, n));
  if (!(f_lo < 0 && f_hi > 0) && !(f_lo > 0 && f_hi < 0))
    throw Error(ErrorKind::GeneratorFailed, "signed area does not change sign on the bracket");
  const bool increasing = f_hi > 0;
  for (int iter = 0; iter < 50; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double f = signed_area(eight_with(d, mid, n));
    if ((f > 0) == increasing) hi = mid;
    else lo = mid;
  }
  const double e = 0.5 * (lo + hi);
  const Curve2d c = eight_with(d, e, n);
  const double len = c.length();
  if (!(std::abs(signed_area(c)) < 1e-6 * len * len))
    throw Error(ErrorKind::GeneratorFailed, "area matching did not converge in 50 bisection steps");
  return e;
}

Curve2d make_asymmetric_eight(double ratio, Eigen::Index n) {
  const double e = asymmetric_eight_height_factor(ratio, n);
  return eight_with((ratio - 1) / (ratio + 1), e, n);
}

}  // namespace curveflow
