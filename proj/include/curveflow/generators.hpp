#pragma once

// Closed-curve fixtures: circles, ellipses, balanced figure-eights.

#include <Eigen/Dense>

#include "curveflow/curve.hpp"

namespace curveflow {

/// Circle of radius r centred at c, sampled CCW at u_i = 2 pi i / n.
Curve2d make_circle(double r, Eigen::Index n, Eigen::Vector2d centre = Eigen::Vector2d::Zero());

/// Ellipse (a cos u, b sin u).
Curve2d make_ellipse(double a, double b, Eigen::Index n);

/// Radial perturbation r(theta) = 1 + eps cos(k theta) of the unit circle.
Curve2d make_perturbed_circle(double eps, int k, Eigen::Index n);

/// Bernoulli lemniscate (a cos u, a sin u cos u) / (1 + sin^2 u), sampled at
/// the cell centres u_i = (i + 1/2) 2 pi / n so that no sample lands on the
/// crossing and both mirror symmetries hold exactly on the samples.
/// Requires a > 0 and n >= 64.
Curve2d make_bernoulli_lemniscate(double a, Eigen::Index n);

/// Balanced figure-eight symmetric about the x-axis whose right loop is about
/// loop_scale_ratio times as wide as its left loop:
///   x = cos u (1 + d cos u) / (1 + sin^2 u),
///   y = sin u cos u (1 + e cos u) / (1 + sin^2 u),
/// with d = (ratio - 1) / (ratio + 1) and e found by bisection so the signed
/// area vanishes. Requires ratio in [0.5, 2]; throws GeneratorFailed.
Curve2d make_asymmetric_eight(double loop_scale_ratio, Eigen::Index n);

/// Bisection parameter e used by make_asymmetric_eight.
double asymmetric_eight_height_factor(double loop_scale_ratio, Eigen::Index n);

}  // namespace curveflow
