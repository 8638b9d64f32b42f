#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "hmcf/forcing.hpp"
#include "hmcf/geometry.hpp"

namespace hmcf {

/// Coefficients of the Monge-Ampere form
///   A + B z_tautau + C z_tautheta + D z_thetatheta
///     + E (z_tautau z_thetatheta - z_thetatau^2) = 0
/// evaluated nodewise on a state.
struct MaCoefficients {
    std::vector<double> A, B, C, D, E;
};

MaCoefficients ma_coefficients(const SupportState& state,
                               const ForcingSchedule& forcing);

/// Discriminant C^2 - 4BD + 4AE per node, evaluated from the generic
/// coefficient formula (algebraically equal to 4 for this flow).
std::vector<double> discriminant(const SupportState& state,
                                 const ForcingSchedule& forcing);

struct HyperbolicityCheck {
    bool hyperbolic = false;
    double min_discriminant = 0.0;
    double min_abs_radius = 0.0;  // min |S_thth + S|
    int worst_node = -1;
    double worst_theta = 0.0;
};

/// tau-hyperbolicity: min discriminant > 0 and min |S_thth+S| above the
/// convexity floor. Never throws; failures come back with a location.
HyperbolicityCheck check_tau_hyperbolic(const SupportState& state,
                                        const ForcingSchedule& forcing);

/// W_tau = ((W_theta)^2 - 1)/(S_thth + S) + c(tau) S.
std::vector<double> pde_rhs(const SupportState& state,
                            const ForcingSchedule& forcing);

/// CFL step from the characteristic speed k (1 + |S_thetatau|):
/// dt = cfl dtheta / max_i k_i (1 + |W_theta,i|), clamped to dt_max.
double cfl_dt(const SupportState& state, double cfl,
              double dt_max = std::numeric_limits<double>::infinity());

/// One classical RK4 step of the first-order system S_tau = W,
/// W_tau = pde_rhs. Every stage revalidates convexity; a ConvexityError
/// from a stage carries the stage time.
SupportState step(const SupportState& state, double dt,
                  const ForcingSchedule& forcing);

enum class StopTag {
    HorizonReached,
    Collapsed,
    CurvatureBlowup,
    ShockSuspected,
    HyperbolicityLost,
};

const char* to_string(StopTag tag);
StopTag stop_tag_from_string(const std::string& name);

struct StopReason {
    StopTag tag = StopTag::HorizonReached;
    double tau_stop = 0.0;
    double min_s = 0.0;
    double max_k = 0.0;
    double tv_k = 0.0;
};

struct SnapshotDiagnostics {
    double length = 0.0;
    double min_k = 0.0;
    double max_k = 0.0;
    double min_s = 0.0;
};

struct FlowTrajectory {
    AngularGrid grid;
    ForcingSchedule forcing;
    std::vector<SupportState> snapshots;
    std::vector<SnapshotDiagnostics> diagnostics;
    StopReason stop;
};

struct EvolveOptions {
    double horizon = 5.0;
    double cfl = 0.4;
    double dt_max = 0.05;
    int stride = 8;           // snapshot every `stride` accepted steps
    double out_dt = 0.0;      // > 0: snapshot exactly at multiples of out_dt
    double eps_collapse = -1.0;  // < 0: auto 1e-4 * max(h)
    double k_max = -1.0;         // < 0: auto 1e3 / min initial (h_thth + h)
    double tv_factor = 50.0;
};

/// Integrate the initial value problem with s = h, w = -f until a stop
/// condition fires. Initial data that is not strictly convex terminates
/// immediately with a CurvatureBlowup stop at tau = 0.
FlowTrajectory evolve(const AngularGrid& grid, std::span<const double> h,
                      std::span<const double> f, const ForcingSchedule& forcing,
                      const EvolveOptions& opts = {});

}  // namespace hmcf
