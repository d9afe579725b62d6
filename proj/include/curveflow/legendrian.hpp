#pragma once

// Contact geometry of R^3 with eta = dz - y dx: Legendrian curves, the lift of
// balanced plane curves, and Legendrian curve shortening flow as the lift of
// planar curve shortening flow.

#include <Eigen/Dense>

#include <vector>

#include "curveflow/curve.hpp"
#include "curveflow/flow.hpp"

namespace curveflow {

using Points3d = Eigen::Matrix<double, Eigen::Dynamic, 3>;

/// Closed space curve whose (x, y) projection is an immersed plane curve.
class SpaceCurve3 {
 public:
  explicit SpaceCurve3(Points3d points);

  Eigen::Index size() const { return points_.rows(); }
  const Points3d& points() const { return points_; }
  double param_step() const;
  double projected_length() const;

 private:
  Points3d points_;
};

/// A space curve satisfying z_u = y x_u to within 1e-6 of its projected length.
class LegendrianCurve3 {
 public:
  explicit LegendrianCurve3(SpaceCurve3 curve);

  const SpaceCurve3& curve() const { return curve_; }
  const Points3d& points() const { return curve_.points(); }
  Eigen::Index size() const { return curve_.size(); }
  operator const SpaceCurve3&() const { return curve_; }

 private:
  SpaceCurve3 curve_;
};

/// Discrete Legendrian defect of segment i: (z_{i+1} - z_i - (y_i + y_{i+1})(x_{i+1} - x_i) / 2) / du.
Eigen::VectorXd legendrian_defects(const SpaceCurve3& curve);

/// max_i |z_u - y x_u| on the segment midpoints; zero iff the curve is discretely Legendrian.
double legendrian_residual(const SpaceCurve3& curve);

/// z_i = z_base + trapezoid cumulative sum of y dx, with no balance check.
/// The periodicity defect z_N - z_0 is exactly -A_signed.
struct UncheckedLift {
  SpaceCurve3 curve;
  double periodicity_defect;
};
UncheckedLift lift_unchecked(const Curve2d& curve, double z_base);

/// Lift of a balanced plane curve: throws NotBalanced when |A_signed| >= 1e-6 L^2.
LegendrianCurve3 lift(const Curve2d& curve, double z_base);

Curve2d project(const SpaceCurve3& curve);

struct LiftedTrajectory {
  std::vector<double> times;
  std::vector<LegendrianCurve3> curves;
};

/// Lifts every snapshot with the same base height, so z(t, 0) = z_base throughout.
/// Throws NotBalanced naming the first offending snapshot time.
LiftedTrajectory lift_trajectory(const Trajectory& traj, double z_base);

struct LegendrianAngle {
  Eigen::VectorXd values;     // lambda_i
  double periodicity_defect;  // lambda_N - lambda_0 = discrete \int kappa ds
};

/// lambda(u) = -y(0) x_t(0) + \int_0^u kappa |gamma_w| dw with x_t from the
/// curve shortening velocity. Throws NotBalanced if |\int kappa ds| > 1e-3.
LegendrianAngle legendrian_angle(const FlowState& state);

/// Orthonormal frame {T, N, xi} at one sample, as coordinate vectors in (d/dx, d/dy, d/dz).
struct ContactFrame {
  Eigen::Vector3d tangent;
  Eigen::Vector3d normal;
  Eigen::Vector3d reeb;
  double y;  // base point height entering the metric
};

/// Metric g = dx^2 + dy^2 + eta^2 at a point with the given y.
Eigen::Matrix3d contact_metric(double y);

/// Gram matrix of {T, N, xi} under g; the identity for a valid frame.
Eigen::Matrix3d frame_gram(const ContactFrame& frame);

/// T = (x_u X + y_u Y) / |gamma_u|, N = (-y_u X + x_u Y) / |gamma_u|, xi = Z,
/// where X = d/dx + y d/dz, Y = d/dy, Z = d/dz.
std::vector<ContactFrame> contact_frames(const SpaceCurve3& curve);

/// One explicit Euler step of gamma_t = phi N + f xi with phi = f_u / |gamma_u|.
/// With include_normal = false, phi is forced to zero.
SpaceCurve3 legendrian_variation(const SpaceCurve3& curve, const Eigen::VectorXd& f, double dt,
                                 bool include_normal = true);

}  // namespace curveflow
