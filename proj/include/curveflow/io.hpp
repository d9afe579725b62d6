#pragma once

// File formats: curve CSV (u,x,y) and JSON ({"n", "points"}), space-curve CSV
// (u,x,y,z), run directories and report files. Numbers are written with 17
// significant digits so files round-trip exactly.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "curveflow/curve.hpp"
#include "curveflow/experiments.hpp"
#include "curveflow/flow.hpp"
#include "curveflow/legendrian.hpp"

namespace curveflow {

namespace fs = std::filesystem;

void write_curve_csv(const fs::path& path, const Curve2d& curve);
Curve2d read_curve_csv(const fs::path& path);
void write_curve_json(const fs::path& path, const Curve2d& curve);
Curve2d read_curve_json(const fs::path& path);
/// Dispatches on the extension: .json or anything else as CSV.
Curve2d read_curve(const fs::path& path);
void write_curve(const fs::path& path, const Curve2d& curve);

void write_space_curve_csv(const fs::path& path, const SpaceCurve3& curve);
SpaceCurve3 read_space_curve_csv(const fs::path& path);

/// Extra per-snapshot columns appended to the diagnostics CSV (reaper_margin, residual).
using ExtraColumns = std::map<std::string, std::vector<double>>;

/// Header t,L,A_signed,A_total,total_curvature,osc_theta,inflections,crossings,ell,Q
/// followed by the extra columns in key order.
std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& records, const ExtraColumns& extra = {});

/// Writes diagnostics.csv, snapshots/snapshot_NNNN.csv and meta.json.
/// meta_extra is merged into meta.json as raw JSON text (an object).
void write_run(const fs::path& dir, const Trajectory& traj, const ExtraColumns& extra = {},
               const std::string& meta_extra = "{}");

/// Reads the snapshots back and recomputes their diagnostics.
Trajectory read_run(const fs::path& dir);

/// Rewrites diagnostics.csv of an existing run with additional columns.
void append_run_columns(const fs::path& dir, const ExtraColumns& extra);

/// Lifted run directory: snapshots as u,x,y,z and diagnostics.csv with a residual column.
void write_lifted_run(const fs::path& dir, const Trajectory& traj, const LiftedTrajectory& lifted, double z_base);

std::string report_json(const Report& report);
std::string report_text(const Report& report);

// nlohmann::json conversions, found by ADL.
void to_json(nlohmann::json& j, const FlowConfig& c);
void from_json(const nlohmann::json& j, FlowConfig& c);
void to_json(nlohmann::json& j, const Check& c);
void to_json(nlohmann::json& j, const Report& r);

void write_text(const fs::path& path, const std::string& text);
std::string read_text(const fs::path& path);

}  // namespace curveflow
