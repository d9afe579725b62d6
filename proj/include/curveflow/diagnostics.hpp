#pragma once

#include <Eigen/Dense>

#include <optional>

#include "curveflow/curve.hpp"

namespace curveflow {

/// Scalar observables of one curve at one time.
struct DiagnosticsRecord {
  double t = 0;
  double length = 0;
  double signed_area = 0;
  double total_area = 0;     // A1 + A2 for a figure-eight, |A_signed| for an embedded curve
  double loop_area_one = 0;  // A1 (equals total_area when the curve has no single crossing)
  double loop_area_two = 0;
  double total_curvature = 0;
  double osc_theta = 0;
  double min_theta = 0;  // extremes of the unwrapped tangent angle, branch anchored at sample 0
  double max_theta = 0;
  int inflections = 0;
  int crossings = 0;
  std::optional<Eigen::Vector2d> crossing_point;
  std::optional<double> crossing_angle;  // interior loop angle at a single crossing
  double ell = 0;                        // x-projection length
  double y_extent = 0;
  double isoperimetric = 0;              // Q = L^2 / total_area
  double min_spacing = 0;
  double max_abs_kappa = 0;
};

DiagnosticsRecord compute_diagnostics(const Curve2d& curve, double t);

}  // namespace curveflow
