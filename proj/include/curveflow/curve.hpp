#pragma once

// Discrete immersed closed plane curves and their pointwise/integral geometry.
//
// A curve is N periodic samples of (x(u), y(u)) with u on [0, 2pi), spacing
// du = 2pi / N. Parameter derivatives use 4th-order periodic central
// differences; integrals are periodic trapezoid sums.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <utility>

#include "curveflow/error.hpp"

namespace curveflow {

template <typename Scalar>
using Points2 = Eigen::Matrix<Scalar, Eigen::Dynamic, 2>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;

inline constexpr Eigen::Index kMinSamples = 16;

template <typename Scalar>
Scalar polyline_length(const Points2<Scalar>& p) {
  const Eigen::Index n = p.rows();
  Scalar total = 0;
  for (Eigen::Index i = 0; i < n; ++i) total += (p.row((i + 1) % n) - p.row(i)).norm();
  return total;
}

/// Periodic sample of an immersed closed plane curve. Immutable once built.
template <typename Scalar>
class ParamCurve2 {
 public:
  using Matrix = Points2<Scalar>;

  explicit ParamCurve2(Matrix points) : points_(std::move(points)) { validate(); }

  ParamCurve2(const VectorX<Scalar>& x, const VectorX<Scalar>& y) : points_(x.size(), 2) {
    if (x.size() != y.size()) throw Error(ErrorKind::InvalidCurve, "x and y sizes differ");
    points_.col(0) = x;
    points_.col(1) = y;
    validate();
  }

  Eigen::Index size() const { return points_.rows(); }
  const Matrix& points() const { return points_; }
  auto x() const { return points_.col(0); }
  auto y() const { return points_.col(1); }
  Vector2<Scalar> point(Eigen::Index i) const { return points_.row(wrap(i)).transpose(); }

  Scalar param_step() const { return Scalar(2) * std::numbers::pi_v<Scalar> / Scalar(size()); }
  Scalar param(Eigen::Index i) const { return param_step() * Scalar(i); }

  Eigen::Index wrap(Eigen::Index i) const {
    const Eigen::Index n = size();
    return ((i % n) + n) % n;
  }

  /// Polyline segment lengths |p_{i+1} - p_i|.
  VectorX<Scalar> segment_lengths() const {
    const Eigen::Index n = size();
    VectorX<Scalar> ds(n);
    for (Eigen::Index i = 0; i < n; ++i) ds[i] = (points_.row(wrap(i + 1)) - points_.row(i)).norm();
    return ds;
  }

  Scalar length() const { return segment_lengths().sum(); }

 private:
  void validate() const {
    if (points_.rows() < kMinSamples) {
      std::ostringstream msg;
      msg << "need at least " << kMinSamples << " samples, got " << points_.rows();
      throw Error(ErrorKind::InvalidCurve, msg.str());
    }
    if (!points_.allFinite()) throw Error(ErrorKind::InvalidCurve, "non-finite sample");
    const VectorX<Scalar> ds = segment_lengths();
    const Scalar total = ds.sum();
    if (!(total > 0) || ds.minCoeff() <= Scalar(1e-12) * total) {
      throw Error(ErrorKind::InvalidCurve, "not immersed: a segment has (near) zero length");
    }
  }

  Matrix points_;
};

using Curve2d = ParamCurve2<double>;

template <typename Scalar>
struct Derivatives {
  VectorX<Scalar> xu, yu, xuu, yuu;
};

namespace detail {

template <typename Scalar>
VectorX<Scalar> periodic_d1(const Eigen::Ref<const VectorX<Scalar>>& f, Scalar h) {
  const Eigen::Index n = f.size();
  VectorX<Scalar> out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar fm2 = f[(i + n - 2) % n], fm1 = f[(i + n - 1) % n];
    const Scalar fp1 = f[(i + 1) % n], fp2 = f[(i + 2) % n];
    out[i] = (-fp2 + Scalar(8) * fp1 - Scalar(8) * fm1 + fm2) / (Scalar(12) * h);
  }
  return out;
}

template <typename Scalar>
VectorX<Scalar> periodic_d2(const Eigen::Ref<const VectorX<Scalar>>& f, Scalar h) {
  const Eigen::Index n = f.size();
  VectorX<Scalar> out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar fm2 = f[(i + n - 2) % n], fm1 = f[(i + n - 1) % n];
    const Scalar fp1 = f[(i + 1) % n], fp2 = f[(i + 2) % n];
    out[i] = (-fp2 + Scalar(16) * fp1 - Scalar(30) * f[i] + Scalar(16) * fm1 - fm2) / (Scalar(12) * h * h);
  }
  return out;
}

}  // namespace detail

/// First and second u-derivatives of x and y at each sample.
template <typename Scalar>
Derivatives<Scalar> derivatives(const ParamCurve2<Scalar>& c) {
  const Scalar h = c.param_step();
  const VectorX<Scalar> x = c.x(), y = c.y();
  return {detail::periodic_d1<Scalar>(x, h), detail::periodic_d1<Scalar>(y, h),
          detail::periodic_d2<Scalar>(x, h), detail::periodic_d2<Scalar>(y, h)};
}

/// |gamma_u| at each sample.
template <typename Scalar>
VectorX<Scalar> speed(const Derivatives<Scalar>& d) {
  return (d.xu.array().square() + d.yu.array().square()).sqrt().matrix();
}

template <typename Scalar>
VectorX<Scalar> curvature(const Derivatives<Scalar>& d) {
  const Eigen::Index n = d.xu.size();
  VectorX<Scalar> k(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar s2 = d.xu[i] * d.xu[i] + d.yu[i] * d.yu[i];
    if (!(s2 >= Scalar(1e-24))) {
      std::ostringstream msg;
      msg << "|gamma_u|^2 = " << s2 << " at sample " << i;
      throw Error(ErrorKind::DegenerateTangent, msg.str());
    }
    k[i] = (d.xu[i] * d.yuu[i] - d.yu[i] * d.xuu[i]) / (s2 * std::sqrt(s2));
  }
  return k;
}

/// Signed curvature (x_u y_uu - y_u x_uu) / |gamma_u|^3; positive for CCW convex arcs.
template <typename Scalar>
VectorX<Scalar> curvature(const ParamCurve2<Scalar>& c) {
  return curvature(derivatives(c));
}

/// Unit normal (-y_u, x_u) / |gamma_u| per sample (rotate tangent by +90 degrees).
template <typename Scalar>
Points2<Scalar> unit_normals(const Derivatives<Scalar>& d) {
  const VectorX<Scalar> s = speed(d);
  Points2<Scalar> n(d.xu.size(), 2);
  n.col(0) = (-d.yu.array() / s.array()).matrix();
  n.col(1) = (d.xu.array() / s.array()).matrix();
  return n;
}

/// Shoelace form of -\int y x_u du; positive for CCW embedded curves.
template <typename Scalar>
Scalar signed_area(const Points2<Scalar>& p) {
  const Eigen::Index n = p.rows();
  Scalar acc = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index j = (i + 1) % n;
    acc += p(i, 0) * p(j, 1) - p(j, 0) * p(i, 1);
  }
  return acc / Scalar(2);
}

template <typename Scalar>
Scalar signed_area(const ParamCurve2<Scalar>& c) {
  return signed_area<Scalar>(c.points());
}

/// \int kappa ds as a periodic trapezoid sum of kappa |gamma_u| du.
template <typename Scalar>
Scalar total_curvature(const ParamCurve2<Scalar>& c) {
  const auto d = derivatives(c);
  return (curvature(d).array() * speed(d).array()).sum() * c.param_step();
}

/// Unwrapped tangent angle atan2(y_u, x_u). Returns N + 1 values: entry N
/// continues sample 0 once around the curve, so back() - front() is 2pi times
/// the turning number.
template <typename Scalar>
VectorX<Scalar> tangent_angle(const ParamCurve2<Scalar>& c) {
  const auto d = derivatives(c);
  const VectorX<Scalar> s = speed(d);
  const Eigen::Index n = c.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(s[i] * s[i] >= Scalar(1e-24))) throw Error(ErrorKind::DegenerateTangent, "zero tangent");
  }
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  VectorX<Scalar> theta(n + 1);
  Scalar prev = std::atan2(d.yu[0], d.xu[0]);
  theta[0] = prev;
  for (Eigen::Index i = 1; i <= n; ++i) {
    const Eigen::Index k = i % n;
    const Scalar raw = std::atan2(d.yu[k], d.xu[k]);
    theta[i] = theta[i - 1] + std::remainder(raw - prev, Scalar(2) * pi);
    prev = raw;
  }
  return theta;
}

template <typename Scalar>
Scalar osc_theta(const ParamCurve2<Scalar>& c) {
  const VectorX<Scalar> theta = tangent_angle(c);
  return theta.maxCoeff() - theta.minCoeff();
}

/// Sign changes of kappa around the closed curve. Samples with |kappa| < tol are
/// transparent: the last definite sign is carried across them. The default tol
/// is 1e-6 max|kappa|.
template <typename Scalar>
int inflection_count(const VectorX<Scalar>& kappa, std::optional<Scalar> tol = std::nullopt) {
  const Scalar threshold = tol.value_or(Scalar(1e-6) * kappa.cwiseAbs().maxCoeff());
  int first_sign = 0, last_sign = 0, changes = 0;
  for (Eigen::Index i = 0; i < kappa.size(); ++i) {
    if (std::abs(kappa[i]) < threshold || kappa[i] == Scalar(0)) continue;
    const int sign = kappa[i] > 0 ? 1 : -1;
    if (first_sign == 0) first_sign = sign;
    else if (sign != last_sign) ++changes;
    last_sign = sign;
  }
  if (first_sign == 0) throw Error(ErrorKind::AllFlat, "every |kappa| is below the flatness threshold");
  if (last_sign != first_sign) ++changes;
  return changes;
}

template <typename Scalar>
int inflection_count(const ParamCurve2<Scalar>& c, std::optional<Scalar> tol = std::nullopt) {
  return inflection_count<Scalar>(curvature(c), tol);
}

/// Length of the projection onto the x-axis.
template <typename Scalar>
Scalar x_projection_length(const ParamCurve2<Scalar>& c) {
  return c.x().maxCoeff() - c.x().minCoeff();
}

template <typename Scalar>
Scalar diameter(const ParamCurve2<Scalar>& c) {
  Scalar best = 0;
  const auto& p = c.points();
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    for (Eigen::Index j = i + 1; j < p.rows(); ++j) best = std::max(best, (p.row(i) - p.row(j)).norm());
  return best;
}

// Rigid motions, scaling and reparametrization.

template <typename Scalar>
ParamCurve2<Scalar> reversed(const ParamCurve2<Scalar>& c) {
  return ParamCurve2<Scalar>(Points2<Scalar>(c.points().colwise().reverse()));
}

template <typename Scalar>
ParamCurve2<Scalar> translated(const ParamCurve2<Scalar>& c, const Vector2<Scalar>& v) {
  Points2<Scalar> p = c.points();
  p.rowwise() += v.transpose();
  return ParamCurve2<Scalar>(std::move(p));
}

template <typename Scalar>
ParamCurve2<Scalar> scaled(const ParamCurve2<Scalar>& c, Scalar s) {
  return ParamCurve2<Scalar>(Points2<Scalar>(c.points() * s));
}

template <typename Scalar>
ParamCurve2<Scalar> rotated(const ParamCurve2<Scalar>& c, Scalar angle) {
  const Eigen::Rotation2D<Scalar> rot(angle);
  return ParamCurve2<Scalar>(Points2<Scalar>(c.points() * rot.toRotationMatrix().transpose()));
}

/// Mirror image across the x-axis (y -> -y).
template <typename Scalar>
ParamCurve2<Scalar> mirrored_x_axis(const ParamCurve2<Scalar>& c) {
  Points2<Scalar> p = c.points();
  p.col(1) = -p.col(1);
  return ParamCurve2<Scalar>(std::move(p));
}

}  // namespace curveflow
