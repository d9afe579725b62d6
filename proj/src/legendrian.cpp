#include "curveflow/legendrian.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "curveflow/error.hpp"

namespace curveflow {

namespace {

Curve2d projection_of(const Points3d& p) { return Curve2d(Eigen::MatrixX2d(p.leftCols<2>())); }

}  // namespace

SpaceCurve3::SpaceCurve3(Points3d points) : points_(std::move(points)) {
  if (!points_.allFinite()) throw Error(ErrorKind::InvalidCurve, "non-finite sample");
  (void)projection_of(points_);  // validates the projection
}

double SpaceCurve3::param_step() const { return 2 * std::numbers::pi / static_cast<double>(size()); }

double SpaceCurve3::projected_length() const { return polyline_length<double>(points_.leftCols<2>()); }

LegendrianCurve3::LegendrianCurve3(SpaceCurve3 curve) : curve_(std::move(curve)) {
  const double residual = legendrian_residual(curve_);
  const double bound = 1e-6 * curve_.projected_length();
  if (!(residual < bound)) {
    std::ostringstream msg;
    msg << "Legendrian residual " << residual << " exceeds " << bound;
    throw Error(ErrorKind::NotBalanced, msg.str());
  }
}

Eigen::VectorXd legendrian_defects(const SpaceCurve3& curve) {
  const auto& p = curve.points();
  const Eigen::Index n = p.rows();
  const double du = curve.param_step();
  Eigen::VectorXd r(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index j = (i + 1) % n;
    r[i] = (p(j, 2) - p(i, 2) - 0.5 * (p(i, 1) + p(j, 1)) * (p(j, 0) - p(i, 0))) / du;
  }
  return r;
}

double legendrian_residual(const SpaceCurve3& curve) { return legendrian_defects(curve).cwiseAbs().maxCoeff(); }

UncheckedLift lift_unchecked(const Curve2d& curve, double z_base) {
  const auto& p = curve.points();
  const Eigen::Index n = p.rows();
  Points3d out(n, 3);
  out.leftCols<2>() = p;
  double z = z_base;
  for (Eigen::Index i = 0; i < n; ++i) {
    out(i, 2) = z;
    const Eigen::Index j = (i + 1) % n;
    z += 0.5 * (p(i, 1) + p(j, 1)) * (p(j, 0) - p(i, 0));
  }
  return {SpaceCurve3(std::move(out)), z - z_base};
}

LegendrianCurve3 lift(const Curve2d& curve, double z_base) {
  const double area = signed_area(curve);
  const double len = curve.length();
  if (!(std::abs(area) < 1e-6 * len * len)) {
    std::ostringstream msg;
    msg << "A_signed = " << area << " (needs |A_signed| < " << 1e-6 * len * len << ")";
    throw Error(ErrorKind::NotBalanced, msg.str());
  }
  return LegendrianCurve3(lift_unchecked(curve, z_base).curve);
}

Curve2d project(const SpaceCurve3& curve) { return projection_of(curve.points()); }

LiftedTrajectory lift_trajectory(const Trajectory& traj, double z_base) {
  LiftedTrajectory out;
  for (const auto& state : traj.states) {
    try {
      out.curves.push_back(lift(state.curve, z_base));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotBalanced) throw;
      std::ostringstream msg;
      msg << "snapshot at t = " << state.t << ": " << e.message();
      throw Error(ErrorKind::NotBalanced, msg.str());
    }
    out.times.push_back(state.t);
  }
  return out;
}

LegendrianAngle legendrian_angle(const FlowState& state) {
  const auto& curve = state.curve;
  const auto d = derivatives(curve);
  const Eigen::VectorXd kappa = curvature(d);
  const Eigen::VectorXd density = (kappa.array() * speed(d).array()).matrix();
  const double du = curve.param_step();
  const Eigen::Index n = curve.size();

  double total = 0;
  for (Eigen::Index i = 0; i < n; ++i) total += 0.5 * (density[i] + density[(i + 1) % n]) * du;
  if (!(std::abs(total) <= 1e-3)) {
    std::ostringstream msg;
    msg << "\\int kappa ds = " << total << " at t = " << state.t;
    throw Error(ErrorKind::NotBalanced, msg.str());
  }

  const double x_t0 = csf_velocity(curve)(0, 0);
  LegendrianAngle out;
  out.values.resize(n);
  out.values[0] = -curve.points()(0, 1) * x_t0;
  for (Eigen::Index i = 1; i < n; ++i) out.values[i] = out.values[i - 1] + 0.5 * (density[i - 1] + density[i]) * du;
  out.periodicity_defect = total;
  return out;
}

Eigen::Matrix3d contact_metric(double y) {
  Eigen::Matrix3d g;
  g << 1 + y * y, 0, -y,
       0, 1, 0,
       -y, 0, 1;
  return g;
}

Eigen::Matrix3d frame_gram(const ContactFrame& frame) {
  Eigen::Matrix3d f;
  f << frame.tangent, frame.normal, frame.reeb;
  return f.transpose() * contact_metric(frame.y) * f;
}

std::vector<ContactFrame> contact_frames(const SpaceCurve3& curve) {
  const Curve2d base = project(curve);
  const auto d = derivatives(base);
  const Eigen::VectorXd s = speed(d);
  std::vector<ContactFrame> frames;
  frames.reserve(static_cast<std::size_t>(curve.size()));
  for (Eigen::Index i = 0; i < curve.size(); ++i) {
    const double y = curve.points()(i, 1);
    const Eigen::Vector3d X(1, 0, y), Y(0, 1, 0), Z(0, 0, 1);
    frames.push_back({(d.xu[i] * X + d.yu[i] * Y) / s[i], (-d.yu[i] * X + d.xu[i] * Y) / s[i], Z, y});
  }
  return frames;
}

SpaceCurve3 legendrian_variation(const SpaceCurve3& curve, const Eigen::VectorXd& f, double dt,
                                 bool include_normal) {
  if (f.size() != curve.size()) throw Error(ErrorKind::PreconditionFailed, "f must be sampled at the curve nodes");
  const Curve2d base = project(curve);
  const auto d = derivatives(base);
  const Eigen::VectorXd s = speed(d);
  const Eigen::VectorXd fu = detail::periodic_d1<double>(f, base.param_step());
  const auto& p = curve.points();
  Points3d next = p;
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    const double phi = include_normal ? fu[i] / s[i] : 0.0;
    const double nx = -d.yu[i] / s[i], ny = d.xu[i] / s[i];
    // phi N + f xi in coordinates; N carries a d/dz part through X = d/dx + y d/dz.
    next(i, 0) += dt * phi * nx;
    next(i, 1) += dt * phi * ny;
    next(i, 2) += dt * (f[i] + phi * p(i, 1) * nx);
  }
  return SpaceCurve3(std::move(next));
}

}  // namespace curveflow
