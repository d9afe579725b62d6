#include "curveflow/diagnostics.hpp"

#include <limits>

#include "curveflow/intersections.hpp"

namespace curveflow {

DiagnosticsRecord compute_diagnostics(const Curve2d& curve, double t) {
  DiagnosticsRecord rec;
  rec.t = t;
  const auto d = derivatives(curve);
  const Eigen::VectorXd kappa = curvature(d);
  const Eigen::VectorXd ds = curve.segment_lengths();
  rec.length = ds.sum();
  rec.min_spacing = ds.minCoeff();
  rec.max_abs_kappa = kappa.cwiseAbs().maxCoeff();
  rec.signed_area = signed_area(curve);
  rec.total_curvature = (kappa.array() * speed(d).array()).sum() * curve.param_step();

  const Eigen::VectorXd theta = tangent_angle(curve);
  rec.min_theta = theta.minCoeff();
  rec.max_theta = theta.maxCoeff();
  rec.osc_theta = rec.max_theta - rec.min_theta;
  rec.inflections = inflection_count<double>(kappa);
  rec.ell = x_projection_length(curve);
  rec.y_extent = curve.y().maxCoeff() - curve.y().minCoeff();

  const auto crossings = find_self_intersections(curve);
  rec.crossings = static_cast<int>(crossings.size());
  if (crossings.size() == 1) {
    const auto areas = loop_areas(curve, crossings.front());
    rec.loop_area_one = areas.first;
    rec.loop_area_two = areas.second;
    rec.total_area = areas.total();
    rec.crossing_point = crossings.front().point;
    rec.crossing_angle = crossing_interior_angle(curve, crossings.front()).mean();
  } else {
    rec.total_area = total_loop_area<double>(curve.points());
    rec.loop_area_one = rec.total_area;
    rec.loop_area_two = 0;
  }
  rec.isoperimetric = rec.total_area > 0 ? rec.length * rec.length / rec.total_area
                                         : std::numeric_limits<double>::infinity();
  return rec;
}

}  // namespace curveflow
