#pragma once

// Closed-form solutions of curve shortening flow used as barriers and
// regression oracles: the shrinking circle and a scaled grim reaper.

#include <Eigen/Dense>

#include <vector>

#include "curveflow/curve.hpp"
#include "curveflow/flow.hpp"

namespace curveflow {

/// Grim reaper opening leftward and translating toward -x with speed 1 / (2 C0 tau0):
///   G(y, t) = -2 C0 tau0 log cos(1/2) + 2 C0 tau0 log cos(y / (2 C0 tau0)) - (t + tau0 / 2) / (2 C0 tau0)
/// on |y| < pi C0 tau0.
struct GrimReaper {
  double C0;
  double tau0;

  GrimReaper(double C0, double tau0);

  double width() const { return C0 * tau0; }
  double half_domain() const;  // pi C0 tau0
  double speed() const;        // 1 / (2 C0 tau0)
};

/// Throws OutOfDomain for |y| >= pi C0 tau0.
double reaper_value(const GrimReaper& r, double y, double t);

/// 1 / (4 C0) + 2 C0 tau0 log cos(1/2) = -G(0, 0): how far left of x = 0 the reaper
/// tip sits at t = 0. Signed; negative once tau0 > 1 / (8 C0^2 |log cos(1/2)|).
double push_distance(double C0, double tau0);

/// The tau0 at which push_distance changes sign.
double push_positivity_threshold(double C0);

/// Closed rectangle (-inf, 0] x [-C0 tau0, C0 tau0].
bool rectangle_containment(const Curve2d& curve, double C0, double tau0);

/// Translates the curve so that its rightmost sample lies on x = 0.
Curve2d with_rightmost_at_origin(const Curve2d& curve);

struct BarrierCheck {
  std::vector<double> times;    // flow times of the snapshots
  std::vector<double> margins;  // min_i G(y_i, t + t_offset) - x_i; -inf if a sample leaves the y-window
  std::vector<double> rightmost;
  double min_margin() const;
  bool all_positive() const;
};

/// Snapshot k is compared against the reaper at time traj.states[k].t + t_offset.
/// Throws PreconditionFailed unless the initial margin is positive.
BarrierCheck reaper_barrier_check(const Trajectory& traj, const GrimReaper& r, double t_offset);

/// sqrt(r0^2 - 2t); throws Extinct for t >= r0^2 / 2.
double shrinking_circle(double r0, double t);

}  // namespace curveflow
