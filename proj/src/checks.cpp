#include "hmcf/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hmcf/errors.hpp"

namespace hmcf {

namespace {

constexpr double time_match_tol = 1e-12;

// indices of snapshots whose times coincide in both trajectories
std::vector<std::pair<int, int>> shared_snapshots(const FlowTrajectory& a,
                                                  const FlowTrajectory& b) {
    std::vector<std::pair<int, int>> shared;
    size_t jb = 0;
    for (size_t ja = 0; ja < a.snapshots.size(); ++ja) {
        const double ta = a.snapshots[ja].tau;
        while (jb < b.snapshots.size() &&
               b.snapshots[jb].tau < ta - time_match_tol)
            ++jb;
        if (jb < b.snapshots.size() &&
            std::abs(b.snapshots[jb].tau - ta) <= time_match_tol)
            shared.emplace_back(static_cast<int>(ja), static_cast<int>(jb));
    }
    return shared;
}

// second-order first derivative on a nonuniform 3-point stencil
double centered_derivative(double tm, double lm, double t0, double l0,
                           double tp, double lp) {
    const double hm = t0 - tm;
    const double hp = tp - t0;
    return (lp * hm * hm - lm * hp * hp + l0 * (hp * hp - hm * hm)) /
           (hp * hm * (hp + hm));
}

}  // namespace

CheckReport check_containment(const FlowTrajectory& outer,
                              const FlowTrajectory& inner,
                              const CheckOptions& opts) {
    CheckReport report;
    report.name = "containment";
    report.slack = opts.ordering_slack;

    if (!(outer.grid == inner.grid))
        throw std::invalid_argument("check_containment: grids differ");
    if (!(outer.forcing == inner.forcing))
        throw std::invalid_argument("check_containment: forcings differ");
    if (outer.snapshots.empty() || inner.snapshots.empty())
        throw std::invalid_argument("check_containment: empty trajectory");

    const auto shared = shared_snapshots(outer, inner);
    if (shared.empty())
        throw std::invalid_argument(
            "check_containment: no shared snapshot times");

    const int n = outer.grid.n_nodes;
    report.worst_violation = -std::numeric_limits<double>::infinity();
    for (const auto& [jo, ji] : shared) {
        const SupportState& so = outer.snapshots[jo];
        const SupportState& si = inner.snapshots[ji];
        double margin = -std::numeric_limits<double>::infinity();
        int worst_node = 0;
        for (int i = 0; i < n; ++i) {
            const double v = si.s[i] - so.s[i];
            if (v > margin) {
                margin = v;
                worst_node = i;
            }
        }
        report.margins.push_back(margin);
        if (margin > report.worst_violation) {
            report.worst_violation = margin;
            report.worst_at = {outer.grid.theta[worst_node], so.tau};
        }
    }
    // the initial-velocity ordering f_inner >= f_outer is part of the
    // hypothesis; a violation counts as a failure at t = 0
    const SupportState& so0 = outer.snapshots[shared.front().first];
    const SupportState& si0 = inner.snapshots[shared.front().second];
    for (int i = 0; i < n; ++i) {
        const double v = si0.w[i] - so0.w[i];  // w = -f
        if (v > report.slack && v > report.worst_violation) {
            report.worst_violation = v;
            report.worst_at = {outer.grid.theta[i], so0.tau};
        }
    }
    report.passed = report.worst_violation <= report.slack;
    return report;
}

CheckReport check_convexity_preservation(const FlowTrajectory& traj,
                                         const CheckOptions& opts) {
    CheckReport report;
    report.name = "convexity-preservation";
    report.slack = opts.ordering_slack;
    if (traj.snapshots.empty())
        throw std::invalid_argument("check_convexity_preservation: empty");

    const std::vector<double> k0 = curvature_from_support(traj.snapshots[0]);
    const double eta = *std::min_element(k0.begin(), k0.end());

    report.worst_violation = -std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < traj.snapshots.size(); ++j) {
        const std::vector<double> k = curvature_from_support(traj.snapshots[j]);
        int worst_node = 0;
        for (int i = 1; i < traj.grid.n_nodes; ++i)
            if (k[i] < k[worst_node]) worst_node = i;
        const double violation = eta - k[worst_node];
        report.margins.push_back(violation);
        if (violation > report.worst_violation) {
            report.worst_violation = violation;
            report.worst_at = {traj.grid.theta[worst_node],
                               traj.snapshots[j].tau};
        }
    }
    report.passed = report.worst_violation <= report.slack;
    return report;
}

CheckReport check_length_monotonicity(const FlowTrajectory& traj,
                                      const CheckOptions& opts) {
    CheckReport report;
    report.name = "length-monotonicity";
    // sub-check slacks are folded into the margins, so pass means <= 0
    report.slack = 0.0;
    if (traj.snapshots.size() < 3)
        throw std::invalid_argument(
            "check_length_monotonicity: need at least 3 snapshots");

    const SupportState& first = traj.snapshots.front();
    const int n = traj.grid.n_nodes;
    for (int i = 0; i < n; ++i) {
        if (first.w[i] > opts.ordering_slack)
            throw NotApplicableError(
                "check_length_monotonicity: needs f >= 0 at t=0");
        if (!(first.s[i] > 0.0))
            throw NotApplicableError(
                "check_length_monotonicity: needs the origin interior at t=0");
    }
    if (!traj.forcing.non_positive())
        throw NotApplicableError("check_length_monotonicity: needs c <= 0");

    std::vector<double> length(traj.snapshots.size());
    for (size_t j = 0; j < traj.snapshots.size(); ++j)
        length[j] = curve_length(traj.snapshots[j]);

    report.worst_violation = -std::numeric_limits<double>::infinity();
    for (size_t j = 1; j + 1 < traj.snapshots.size(); ++j) {
        const SupportState& sj = traj.snapshots[j];
        const double dl_fd = centered_derivative(
            traj.snapshots[j - 1].tau, length[j - 1], sj.tau, length[j],
            traj.snapshots[j + 1].tau, length[j + 1]);
        const double dl_quad = periodic_quadrature(traj.grid, sj.w);

        // (a) derivative identity dL/dt = -int sigma dtheta = int S_tau dtheta
        const double mismatch =
            std::abs(dl_fd - dl_quad) -
            opts.derivative_rel_slack * std::max(std::abs(dl_quad), 1e-12);
        // (b) strict decrease for t > 0
        const double increase = std::max(dl_fd, dl_quad);
        // (c) concavity via the second-derivative integrand quadrature
        const std::vector<double> w_th =
            differentiate_periodic(traj.grid, sj.w, 1);
        const std::vector<double> k = curvature_from_support(sj);
        const double c = traj.forcing(sj.tau);
        std::vector<double> integrand(n);
        for (int i = 0; i < n; ++i)
            integrand[i] = (w_th[i] * w_th[i] - 1.0) * k[i] + c * sj.s[i];
        const double d2l_quad = periodic_quadrature(traj.grid, integrand);

        const double violation =
            std::max({mismatch, increase - opts.ordering_slack,
                      d2l_quad - opts.ordering_slack});
        report.margins.push_back(violation);
        if (violation > report.worst_violation) {
            report.worst_violation = violation;
            report.worst_at = {0.0, sj.tau};
        }
    }
    report.passed = report.worst_violation <= 0.0;
    return report;
}

CheckReport check_sigma_positivity(const FlowTrajectory& traj,
                                   const CheckOptions& opts) {
    CheckReport report;
    report.name = "sigma-positivity";
    report.slack = opts.ordering_slack;
    if (traj.snapshots.empty())
        throw std::invalid_argument("check_sigma_positivity: empty");

    const int n = traj.grid.n_nodes;
    report.worst_violation = -std::numeric_limits<double>::infinity();
    for (const SupportState& st : traj.snapshots) {
        const std::vector<double> k = curvature_from_support(st);
        const double c = traj.forcing(st.tau);
        double margin = -std::numeric_limits<double>::infinity();
        int worst_node = 0;
        for (int i = 0; i < n; ++i) {
            // dsigma/dt = k + c (F, N) = k - c S must stay positive
            const double v1 = -(k[i] - c * st.s[i]);
            // sigma_tilde = -W stays nonnegative once f >= 0
            const double v2 = st.w[i];
            const double v = std::max(v1, v2);
            if (v > margin) {
                margin = v;
                worst_node = i;
            }
        }
        report.margins.push_back(margin);
        if (margin > report.worst_violation) {
            report.worst_violation = margin;
            report.worst_at = {traj.grid.theta[worst_node], st.tau};
        }
    }
    report.passed = report.worst_violation <= report.slack;
    return report;
}

}  // namespace hmcf
