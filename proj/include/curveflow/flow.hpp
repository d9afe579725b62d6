#pragma once

// Time stepping of planar curve flows gamma_t = V(gamma), with curve
// shortening flow (V = kappa N) as the primary instance.

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "curveflow/curve.hpp"
#include "curveflow/diagnostics.hpp"

namespace curveflow {

struct FlowConfig {
  double cfl = 0.1;                 // dt = cfl * h_min^2 for second-order flows
  double cfl_fourth_order = 0.02;   // dt = cfl_fourth_order * h_min^4 for curve diffusion
  int remesh_every = 10;
  double stop_area_frac = 0.01;
  double stop_kappa_h = 0.5;
  long max_steps = 5'000'000;
  std::optional<double> t_end;      // stop at the first accepted step with t >= t_end

  /// Throws InvalidConfig when a field is out of range.
  void validate() const;
};

struct FlowState {
  Curve2d curve;
  double t = 0;
  long step = 0;
};

enum class StopReason { AreaFraction, KappaResolution, EndTime, TopologyChange };

std::string to_string(StopReason reason);

struct Trajectory {
  std::vector<FlowState> states;
  std::vector<DiagnosticsRecord> diagnostics;  // one per state
  std::optional<StopReason> stop_reason;
  std::string flow_kind = "csf";
  FlowConfig config;

  std::size_t size() const { return states.size(); }
  const FlowState& initial() const { return states.front(); }
  const FlowState& final() const { return states.back(); }
};

/// A velocity field together with its explicit time-step law.
struct FlowModel {
  std::string name;
  std::function<Eigen::MatrixX2d(const Curve2d&)> velocity;
  std::function<double(double h_min, const FlowConfig&)> time_step;
};

/// Planar curve shortening velocity kappa N per sample:
/// x_t = -kappa y_u / |gamma_u|, y_t = kappa x_u / |gamma_u|.
Eigen::MatrixX2d csf_velocity(const Curve2d& curve);

FlowModel csf_model();

/// One explicit Heun (RK2) step with dt = model.time_step(h_min). A step that
/// breaks the immersion is retried with dt halved, at most 8 times, then
/// StepRejected is thrown. The curve is arclength-resampled after every
/// remesh_every accepted steps. Throws SingularityReached when the incoming
/// state already violates the kappa * h resolution criterion.
FlowState step(const FlowModel& model, const FlowState& state, const FlowConfig& config);
FlowState step(const FlowState& state, const FlowConfig& config);

/// Evolves until a stopping criterion fires. Snapshots are the initial state,
/// the first accepted state with t >= each requested output time, and the
/// final state. Throws MaxStepsExceeded.
Trajectory run(const FlowModel& model, const Curve2d& initial, const FlowConfig& config,
               std::vector<double> output_times);
Trajectory run(const Curve2d& initial, const FlowConfig& config, std::vector<double> output_times);

/// Uniform output times dt, 2 dt, ... up to horizon.
std::vector<double> uniform_times(double dt, double horizon);

struct ExtinctionEstimate {
  double t_estimate = 0;  // last time + |A| / (-slope)
  double slope = 0;       // least-squares d|A|/dt over the trailing window
  double bracket_lo = 0;  // t + |A| / 4pi for a figure-eight, t + |A| / 2pi for an embedded curve
  double bracket_hi = 0;  // t + |A| / 2pi
  double t_last = 0;
  double area_last = 0;
  bool figure_eight = false;
};

/// Extrapolates the extinction time from the decay of the total area.
/// Throws AreaNotDecreasing.
ExtinctionEstimate estimate_extinction_time(const Trajectory& traj, std::size_t window = 5);

}  // namespace curveflow
