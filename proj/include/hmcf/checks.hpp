#pragma once

#include <string>
#include <vector>

#include "hmcf/ma_solver.hpp"

namespace hmcf {

struct CheckLocation {
    double theta = 0.0;
    double tau = 0.0;
};

/// Result of one executable theorem check. `worst_violation` is the largest
/// constraint overshoot seen; the check passes iff it stays within `slack`.
struct CheckReport {
    std::string name;
    bool passed = false;
    double worst_violation = 0.0;
    CheckLocation worst_at;
    std::vector<double> margins;  // per shared time sample
    double slack = 0.0;
};

struct CheckOptions {
    double ordering_slack = 1e-6;    // absolute, for pointwise inequalities
    double derivative_rel_slack = 1e-3;  // relative, for dL/dt matching
};

/// Containment principle: the inner support function stays below the outer
/// one at every shared snapshot time. Requires same grid and forcing and
/// aligned snapshot times; those mismatches throw std::invalid_argument.
/// A violated initial ordering is reported as failed at t = 0.
CheckReport check_containment(const FlowTrajectory& outer,
                              const FlowTrajectory& inner,
                              const CheckOptions& opts = {});

/// Convexity preservation: k(theta, t) >= eta = min k(., 0) throughout.
CheckReport check_convexity_preservation(const FlowTrajectory& traj,
                                         const CheckOptions& opts = {});

/// Length law: (a) centered-difference dL/dt matches the quadrature of S_tau,
/// (b) dL/dt < 0 for t > 0, (c) the second-derivative integrand quadrature
/// int [(sigma_theta)^2 k - k + c S] dtheta is negative for t > 0.
/// Hypotheses f >= 0, c <= 0, origin interior are enforced at t = 0 and
/// violations throw NotApplicableError.
CheckReport check_length_monotonicity(const FlowTrajectory& traj,
                                      const CheckOptions& opts = {});

/// Normal-speed positivity: k - c S > 0 and sigma_tilde >= 0 at every node
/// of every snapshot.
CheckReport check_sigma_positivity(const FlowTrajectory& traj,
                                   const CheckOptions& opts = {});

}  // namespace hmcf
