#pragma once

// Monitors that fold a trajectory into pass/fail reports for the qualitative
// statements about figure-eight collapse.

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "curveflow/flow.hpp"

namespace curveflow {

struct Check {
  std::string name;
  double value = 0;
  std::string relation;  // how value compares to bound: "<", "<=", ">=", "=="
  double bound = 0;
  bool pass = false;
  bool asserted = true;  // false for values that are reported but do not gate all_pass
  std::string note;
};

struct Report {
  std::string monitor;
  std::vector<Check> checks;
  std::vector<std::string> flags;  // e.g. NotAFigureEight
  std::vector<std::string> notes;

  /// True when every asserted check passes.
  bool all_pass() const;
  const Check* find(const std::string& name) const;
  bool has_flag(const std::string& flag) const;
  /// Appends a check whose pass flag is evaluated from value, relation and bound.
  Check& add(std::string name, double value, std::string relation, double bound, std::string note = {});
  Check& inform(std::string name, double value, std::string relation, double bound, std::string note = {});
};

/// Per-snapshot and per-interval checks of the balanced figure-eight invariants:
/// |A_signed| < 1e-4 L^2, |int kappa ds| < 1e-3, one crossing, inflections
/// nonincreasing, d|A|/dt in [-4pi - 0.5, -2pi + 0.5] and within 5% of
/// -2pi - 2 (interior crossing angle).
Report balanced_invariant_report(const Trajectory& traj);

// Constants of the collapse-rate recursion l(tau/2) <= (1 - c1 + c2 tau / l(tau)^2) l(tau).
double collapse_c1();     // 1 / (32 pi)
double collapse_c2();     // 16 pi log cos(1/2), negative as written
double collapse_alpha0();  // -log(1 - c1) / log 2

struct ContractionSample {
  double tau;
  double ratio;            // l(tau/2) / l(tau)
  double eta_as_written;   // 1 - c1 + c2 tau / l^2
  double eta_flipped;      // 1 - c1 + |c2| tau / l^2
};

struct CollapseReport {
  ExtinctionEstimate extinction;
  std::vector<double> taus;
  std::vector<double> ells;
  std::vector<double> alphas;
  std::vector<double> sup_ratio;  // sup over resolved tau of l(tau) / tau^alpha, per alpha
  double alpha0 = 0;
  double c1 = 0;
  double c2 = 0;
  std::vector<ContractionSample> contraction;
  Report report;
};

/// tau is measured from the extrapolated extinction time. Throws
/// ExtinctionUnresolved when the extinction bracket is wider than 20% of the
/// time from the first snapshot to the estimate.
CollapseReport collapse_report(const Trajectory& traj, const std::vector<double>& alphas);

/// pi / (4 sqrt(3) ln 2).
double alpha_threshold_prefactor();

struct IsoperimetricSample {
  double tau;
  double Q;
  double target;  // M tau^-alpha
};

struct DyadicSample {
  int j;
  double tau;  // tau0 / 2^j
  double q;    // L / sqrt(tau)
  double c;    // |A| / tau
};

struct IsoperimetricReport {
  double tau0 = 0;
  double osc_theta0 = 0;
  double M = 0;
  double alpha = 0;
  double alpha_threshold = 0;
  std::vector<IsoperimetricSample> samples;
  std::vector<DyadicSample> dyadic;
  Report report;
};

/// Q(tau) against M tau^-alpha, the alpha threshold
/// pi / (4 sqrt(3) ln 2) * exp(-4 pi M / tau0^alpha) / (osc theta(tau0) - pi),
/// Q >= 4 pi, and late-time growth of Q. Throws OscBelowPi when
/// osc theta(tau0) <= pi.
IsoperimetricReport isoperimetric_report(const Trajectory& traj, double M, double alpha);

/// (sqrt(pi) / 4) (L / sqrt(tau)) exp(-L^2 / tau).
double min_theta_bound(double L, double tau);

struct MinThetaSample {
  double t_start;
  double t_end;      // first snapshot at or after t_start + tau / 2
  double increase;   // min theta(t_end) - min theta(t_start), same branch of theta
  double bound;      // min_theta_bound(L(t_start), tau(t_start))
};

/// For each snapshot with remaining time tau, compares the rise of min theta
/// over the following tau / 2 against min_theta_bound. Increases within
/// -noise of the bound count as passing.
std::vector<MinThetaSample> min_theta_samples(const Trajectory& traj, double t_extinction);
Report min_theta_check(const Trajectory& traj, double t_extinction, double noise = 1e-9);

struct SymmetryCollapse {
  double diameter_ratio = 0;
  std::vector<double> crossing_x;
  double crossing_displacement = 0;  // max |p - p0| over snapshots, divided by L0
  int crossing_direction = 0;        // +1 right, -1 left, 0 stationary
  bool crossing_monotone = false;
  bool doubly_symmetric = false;     // initial curve invariant under x -> -x
  double ell_ratio = 0;
  double y_extent_ratio = 0;
  Report report;
};

/// Collapse-to-point verdict for an x-axis symmetric eight.
SymmetryCollapse symmetry_collapse_check(const Trajectory& traj);

}  // namespace curveflow
