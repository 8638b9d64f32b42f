#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hmcf/checks.hpp"
#include "hmcf/errors.hpp"
#include "hmcf/io.hpp"
#include "hmcf/radial_ode.hpp"
#include "test_support.hpp"

using namespace hmcf;
using namespace hmcf::testing;

namespace {

FlowTrajectory run_circle(double radius, double f, double c, double horizon,
                          double out_dt = 0.01, int n = 128) {
    const AngularGrid g = AngularGrid::uniform(n);
    EvolveOptions opts;
    opts.horizon = horizon;
    opts.out_dt = out_dt;
    return evolve(g, std::vector<double>(g.n_nodes, radius),
                  std::vector<double>(g.n_nodes, f),
                  ForcingSchedule::constant(c), opts);
}

FlowTrajectory run_oval(double amp, double f, double c, double horizon,
                        double out_dt = 0.005, int n = 128) {
    const AngularGrid g = AngularGrid::uniform(n);
    EvolveOptions opts;
    opts.horizon = horizon;
    opts.out_dt = out_dt;
    std::vector<double> h(g.n_nodes);
    for (int i = 0; i < n; ++i)
        h[i] = 1.0 + amp * std::cos(2.0 * g.theta[i]);
    return evolve(g, h, std::vector<double>(g.n_nodes, f),
                  ForcingSchedule::constant(c), opts);
}

}  // namespace

TEST_CASE("containment of nested shrinking circles") {
    const FlowTrajectory outer = run_circle(2.0, 0.0, -0.1, 1.0);
    const FlowTrajectory inner = run_circle(1.0, 0.0, -0.1, 1.0);
    const CheckReport report = check_containment(outer, inner);
    CHECK(report.passed);
    CHECK(report.margins.size() > 10);
    CHECK(report.worst_violation <= 1e-6);
}

TEST_CASE("containment is transitive across three nested circles") {
    const FlowTrajectory big = run_circle(2.0, 0.0, 0.0, 0.8);
    const FlowTrajectory mid = run_circle(1.5, 0.0, 0.0, 0.8);
    const FlowTrajectory small = run_circle(1.0, 0.0, 0.0, 0.8);
    CHECK(check_containment(big, mid).passed);
    CHECK(check_containment(mid, small).passed);
    CHECK(check_containment(big, small).passed);
}

TEST_CASE("oval inside a faster-shrinking circle stays inside") {
    const AngularGrid g = AngularGrid::uniform(128);
    EvolveOptions opts;
    opts.horizon = 0.6;
    opts.out_dt = 0.01;
    std::vector<double> h(g.n_nodes);
    for (int i = 0; i < g.n_nodes; ++i)
        h[i] = 1.0 + 0.3 * std::cos(2.0 * g.theta[i]);
    const ForcingSchedule c = ForcingSchedule::constant(0.0);
    const FlowTrajectory inner =
        evolve(g, h, std::vector<double>(g.n_nodes, 1.0), c, opts);
    const FlowTrajectory outer =
        evolve(g, std::vector<double>(g.n_nodes, 2.0),
               std::vector<double>(g.n_nodes, 0.5), c, opts);
    CHECK(check_containment(outer, inner).passed);
}

TEST_CASE("swapped containment roles fail at t = 0") {
    const FlowTrajectory outer = run_circle(2.0, 0.0, 0.0, 0.5);
    const FlowTrajectory inner = run_circle(1.0, 0.0, 0.0, 0.5);
    const CheckReport report = check_containment(inner, outer);
    CHECK_FALSE(report.passed);
    // hypothesis already violated at t = 0: S_in - S_out = 2 - 1 there
    CHECK(report.margins[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.worst_violation >= 1.0);
}

TEST_CASE("containment rejects mismatched comparisons") {
    const FlowTrajectory a = run_circle(2.0, 0.0, -0.1, 0.5);
    const FlowTrajectory b = run_circle(1.0, 0.0, -0.1, 0.5, 0.01, 64);
    CHECK_THROWS_AS(check_containment(a, b), std::invalid_argument);

    const FlowTrajectory c = run_circle(1.0, 0.0, -0.2, 0.5);
    CHECK_THROWS_AS(check_containment(a, c), std::invalid_argument);
}

TEST_CASE("convexity preservation on circles and ovals") {
    const FlowTrajectory circle = run_circle(1.0, 0.0, 0.0, 1.0);
    CHECK(check_convexity_preservation(circle).passed);

    const FlowTrajectory oval = run_oval(0.3, 1.0, -0.1, 5.0);
    const CheckReport report = check_convexity_preservation(oval);
    CHECK(report.passed);

    // eta = min k_0 = 1/max(S_thth + S) = 1/1.9
    const std::vector<double> k0 =
        curvature_from_support(oval.snapshots.front());
    const double eta = *std::min_element(k0.begin(), k0.end());
    CHECK(eta == doctest::Approx(1.0 / 1.9).epsilon(1e-6));
}

TEST_CASE("corrupted trajectory fails convexity preservation with a location") {
    FlowTrajectory oval = run_oval(0.3, 1.0, -0.1, 5.0);
    REQUIRE(oval.snapshots.size() > 3);
    // flatten a snapshot: scaling S by 3 divides the curvature by 3
    SupportState& victim = oval.snapshots[oval.snapshots.size() / 2];
    for (double& v : victim.s) v *= 3.0;
    const CheckReport report = check_convexity_preservation(oval);
    CHECK_FALSE(report.passed);
    CHECK(report.worst_at.tau == doctest::Approx(victim.tau));
}

TEST_CASE("length law on a shrinking circle") {
    RadialOptions ropts;
    ropts.dt_max = 1e-3;
    const RadialTrajectory radial = integrate_radial(
        RadialProblem{1.0, ForcingSchedule::constant(0.0), 1.0, 0.0}, ropts);
    const double horizon = 0.8 * *radial.collapse_time;
    const FlowTrajectory circle = run_circle(1.0, 0.0, 0.0, horizon);
    const CheckReport report = check_length_monotonicity(circle);
    CHECK(report.passed);

    // dL/dt = 2 pi r_t on circles
    const SupportState& mid = circle.snapshots[circle.snapshots.size() / 2];
    const double quad = periodic_quadrature(circle.grid, mid.w);
    CHECK(quad == doctest::Approx(two_pi * radial.velocity_at(mid.tau))
                      .epsilon(1e-6));
}

TEST_CASE("length law on the forced oval run") {
    const FlowTrajectory oval = run_oval(0.3, 1.0, -0.1, 5.0);
    const CheckReport report = check_length_monotonicity(oval);
    CHECK(report.passed);
}

TEST_CASE("length law hypotheses are enforced") {
    const FlowTrajectory inward = run_circle(1.0, -1.0, 0.0, 0.2);
    CHECK_THROWS_AS(check_length_monotonicity(inward), NotApplicableError);

    const AngularGrid g = AngularGrid::uniform(128);
    EvolveOptions opts;
    opts.horizon = 0.2;
    opts.out_dt = 0.01;
    const FlowTrajectory positive_c =
        evolve(g, std::vector<double>(g.n_nodes, 1.0),
               std::vector<double>(g.n_nodes, 0.0),
               ForcingSchedule::constant(0.3), opts);
    CHECK_THROWS_AS(check_length_monotonicity(positive_c), NotApplicableError);
}

TEST_CASE("normal speed positivity") {
    const FlowTrajectory unforced = run_circle(1.0, 0.5, 0.0, 0.8);
    CHECK(check_sigma_positivity(unforced).passed);

    const FlowTrajectory forced = run_oval(0.3, 1.0, -0.1, 5.0);
    CHECK(check_sigma_positivity(forced).passed);

    FlowTrajectory corrupted = run_circle(1.0, 0.5, 0.0, 0.8);
    corrupted.snapshots.back().w.assign(corrupted.grid.n_nodes, 0.5);
    const CheckReport report = check_sigma_positivity(corrupted);
    CHECK_FALSE(report.passed);
    CHECK(report.worst_at.tau ==
          doctest::Approx(corrupted.snapshots.back().tau));
}

TEST_CASE("circle-data checks agree with radial quantities") {
    RadialOptions ropts;
    ropts.dt_max = 2e-4;
    const RadialTrajectory radial = integrate_radial(
        RadialProblem{1.0, ForcingSchedule::constant(0.0), 1.0, 0.0}, ropts);

    const AngularGrid g = AngularGrid::uniform(128);
    EvolveOptions opts;
    opts.horizon = 0.7 * *radial.collapse_time;
    opts.out_dt = 0.02;
    opts.cfl = 0.1;
    const FlowTrajectory traj =
        evolve(g, std::vector<double>(g.n_nodes, 1.0),
               std::vector<double>(g.n_nodes, 0.0),
               ForcingSchedule::constant(0.0), opts);

    for (size_t j = 0; j < traj.snapshots.size(); ++j) {
        const double t = traj.snapshots[j].tau;
        const double L = curve_length(traj.snapshots[j]);
        CHECK(std::abs(L - two_pi * radial.value_at(t)) < 1e-10 * L);
    }
}

TEST_CASE("reports are deterministic across serialization round trips") {
    const FlowTrajectory oval = run_oval(0.3, 1.0, -0.1, 5.0);
    const CheckReport before = check_sigma_positivity(oval);

    std::stringstream buffer;
    write_trajectory_csv(oval, buffer);
    const FlowTrajectory restored = read_trajectory_csv(buffer);
    const CheckReport after = check_sigma_positivity(restored);

    REQUIRE(before.margins.size() == after.margins.size());
    for (size_t j = 0; j < before.margins.size(); ++j)
        CHECK(before.margins[j] == after.margins[j]);
    CHECK(before.worst_violation == after.worst_violation);
}
