#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hmcf/checks.hpp"
#include "hmcf/ma_solver.hpp"
#include "hmcf/radial_ode.hpp"

namespace hmcf {

/// Trajectory CSV: data rows are `tau,theta_index,S,W,k` preceded by one
/// `# snapshot` header row per time carrying L, min_k, max_k, min_S.
/// All values use 17 significant digits so a round trip is bit exact.
void write_trajectory_csv(const FlowTrajectory& traj, std::ostream& out);
void write_trajectory_csv(const FlowTrajectory& traj, const std::string& path);

FlowTrajectory read_trajectory_csv(std::istream& in);
FlowTrajectory read_trajectory_csv(const std::string& path);

void write_radial_csv(const RadialTrajectory& traj, std::ostream& out);
void write_radial_csv(const RadialTrajectory& traj, const std::string& path);

/// Report JSON object with stable key order:
/// {name, passed, worst_violation, location:{theta,tau}, margins:[...]}.
std::string report_to_json(const CheckReport& report);
std::string reports_to_json(const std::vector<CheckReport>& reports);
void write_reports_json(const std::vector<CheckReport>& reports,
                        const std::string& path);

/// Forcing spec strings: "const:<v>" or "table:<csv path>" (columns t,c);
/// "table-inline:t:c,t:c" is the round-trip form used in trajectory files.
ForcingSchedule parse_forcing_spec(const std::string& spec,
                                   const std::string& field_name);

/// Initial-data spec strings on a grid:
///   "const:<v>"                      constant array
///   "circle:<r>[@<cx>,<cy>]"         support function of a circle
///   "harm:<a0>[;<m>:<am>[,<bm>]]..." truncated Fourier series
/// When `require_convex` is set, min(h_thth + h) > 0 is enforced by direct
/// evaluation of the harmonic series on a 4x-resolution grid.
std::vector<double> parse_initial_spec(const std::string& spec,
                                       const AngularGrid& grid,
                                       const std::string& field_name,
                                       bool require_convex);

}  // namespace hmcf
