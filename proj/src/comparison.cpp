#include "curveflow/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "curveflow/error.hpp"

namespace curveflow {

namespace {

const double kLogCosHalf = std::log(std::cos(0.5));

}  // namespace

GrimReaper::GrimReaper(double c0, double t0) : C0(c0), tau0(t0) {
  if (!(C0 > 0 && tau0 > 0)) throw Error(ErrorKind::PreconditionFailed, "grim reaper needs C0 > 0 and tau0 > 0");
}

double GrimReaper::half_domain() const { return std::numbers::pi * C0 * tau0; }

double GrimReaper::speed() const { return 1.0 / (2 * C0 * tau0); }

double reaper_value(const GrimReaper& r, double y, double t) {
  if (!(std::abs(y) < r.half_domain())) {
    std::ostringstream msg;
    msg << "|y| = " << std::abs(y) << " outside the reaper window " << r.half_domain();
    throw Error(ErrorKind::OutOfDomain, msg.str());
  }
  const double w = 2 * r.C0 * r.tau0;
  return -w * kLogCosHalf + w * std::log(std::cos(y / w)) - (t + 0.5 * r.tau0) / w;
}

double push_distance(double C0, double tau0) { return 1.0 / (4 * C0) + 2 * C0 * tau0 * kLogCosHalf; }

double push_positivity_threshold(double C0) { return 1.0 / (8 * C0 * C0 * -kLogCosHalf); }

bool rectangle_containment(const Curve2d& curve, double C0, double tau0) {
  const double h = C0 * tau0;
  return (curve.x().array() <= 0).all() && (curve.y().array().abs() <= h).all();
}

Curve2d with_rightmost_at_origin(const Curve2d& curve) {
  return translated(curve, Eigen::Vector2d(-curve.x().maxCoeff(), 0));
}

double BarrierCheck::min_margin() const {
  return margins.empty() ? std::numeric_limits<double>::quiet_NaN() : *std::min_element(margins.begin(), margins.end());
}

bool BarrierCheck::all_positive() const {
  return std::all_of(margins.begin(), margins.end(), [](double m) { return m > 0; });
}

BarrierCheck reaper_barrier_check(const Trajectory& traj, const GrimReaper& r, double t_offset) {
  BarrierCheck out;
  for (const auto& state : traj.states) {
    const auto& p = state.curve.points();
    double margin = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
      if (!(std::abs(p(i, 1)) < r.half_domain())) {
        margin = -std::numeric_limits<double>::infinity();
        break;
      }
      margin = std::min(margin, reaper_value(r, p(i, 1), state.t + t_offset) - p(i, 0));
    }
    out.times.push_back(state.t);
    out.margins.push_back(margin);
    out.rightmost.push_back(state.curve.x().maxCoeff());
  }
  if (out.margins.empty() || !(out.margins.front() > 0)) {
    std::ostringstream msg;
    msg << "initial curve is not strictly inside the reaper (margin "
        << (out.margins.empty() ? std::numeric_limits<double>::quiet_NaN() : out.margins.front()) << ")";
    throw Error(ErrorKind::PreconditionFailed, msg.str());
  }
  return out;
}

double shrinking_circle(double r0, double t) {
  if (!(t < 0.5 * r0 * r0)) {
    std::ostringstream msg;
    msg << "circle of radius " << r0 << " is extinct at t = " << 0.5 * r0 * r0 << " (asked t = " << t << ")";
    throw Error(ErrorKind::Extinct, msg.str());
  }
  return std::sqrt(r0 * r0 - 2 * t);
}

}  // namespace curveflow
