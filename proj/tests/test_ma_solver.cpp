#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hmcf/errors.hpp"
#include "hmcf/ma_solver.hpp"
#include "hmcf/radial_ode.hpp"
#include "test_support.hpp"

using namespace hmcf;
using namespace hmcf::testing;

namespace {
const double pi = 3.14159265358979323846;

std::vector<double> constant_array(const AngularGrid& g, double v) {
    return std::vector<double>(g.n_nodes, v);
}
}  // namespace

TEST_CASE("forcing schedule evaluation") {
    const ForcingSchedule c = ForcingSchedule::constant(-0.4);
    CHECK(c(0.0) == -0.4);
    CHECK(c(17.0) == -0.4);
    CHECK(c.bound() == 0.4);
    CHECK(c.non_positive());

    const ForcingSchedule t =
        ForcingSchedule::table({0.0, 1.0, 2.0}, {0.0, -1.0, -0.5});
    CHECK(t(0.5) == doctest::Approx(-0.5));
    CHECK(t(1.5) == doctest::Approx(-0.75));
    CHECK(t(-3.0) == 0.0);   // constant extrapolation
    CHECK(t(10.0) == -0.5);
    CHECK(t.bound() == 1.0);
    CHECK(t.non_positive());

    CHECK_THROWS_AS(ForcingSchedule::table({0.0, 0.0}, {1.0, 2.0}),
                    std::invalid_argument);
    CHECK_FALSE(ForcingSchedule::constant(0.1).non_positive());
}

TEST_CASE("pde right side on fixtures") {
    const AngularGrid g = AngularGrid::uniform(64);

    SupportState circle =
        make_state(g, constant_array(g, 2.0), constant_array(g, 0.0));
    for (double v : pde_rhs(circle, ForcingSchedule::constant(0.0)))
        CHECK(v == doctest::Approx(-0.5).epsilon(1e-15));
    for (double v : pde_rhs(circle, ForcingSchedule::constant(-1.0)))
        CHECK(v == doctest::Approx(-0.5 - 2.0).epsilon(1e-15));

    SupportState wave = make_state(
        g, constant_array(g, 1.0),
        sample_fn(g, [](double t) { return std::sin(t); }));
    const std::vector<double> rhs = pde_rhs(wave, ForcingSchedule::constant(0.0));
    for (int i = 0; i < g.n_nodes; ++i) {
        const double expected = -std::pow(std::sin(g.theta[i]), 2);
        // |W_theta - cos| <= dtheta^4/30 feeds through with a factor ~2
        CHECK(std::abs(rhs[i] - expected) < 1e-5);
    }
}

TEST_CASE("coefficients of the Monge-Ampere form") {
    const AngularGrid g = AngularGrid::uniform(64);
    const SupportState st =
        make_state(g, constant_array(g, 3.0), constant_array(g, 0.0));
    const MaCoefficients mc =
        ma_coefficients(st, ForcingSchedule::constant(-2.0));
    for (int i = 0; i < g.n_nodes; ++i) {
        CHECK(mc.A[i] == 1.0 - (-2.0) * 9.0);
        CHECK(mc.B[i] == 3.0);
        CHECK(mc.C[i] == 0.0);
        CHECK(mc.D[i] == -(-2.0) * 3.0);
        CHECK(mc.E[i] == 1.0);
    }
}

TEST_CASE("discriminant evaluates to 4 from the generic formula") {
    const AngularGrid g = AngularGrid::uniform(64);

    SupportState circle =
        make_state(g, constant_array(g, 1.0), constant_array(g, 0.0));
    for (double v : discriminant(circle, ForcingSchedule::constant(0.0)))
        CHECK(v == doctest::Approx(4.0).epsilon(1e-14));

    // hand-evaluated cell: S=3, c=-2: 0 - 4*3*6 + 4*(1+2*9)*1 = 4
    SupportState s3 = make_state(g, constant_array(g, 3.0),
                                 constant_array(g, 0.0));
    for (double v : discriminant(s3, ForcingSchedule::constant(-2.0)))
        CHECK(std::abs(v - 4.0) < 1e-12);

    SupportState oval = make_state(
        g,
        sample_fn(g, [](double t) { return 1.0 + 0.3 * std::cos(2.0 * t); }),
        constant_array(g, 0.0));
    for (double v : discriminant(oval, ForcingSchedule::constant(-0.5)))
        CHECK(std::abs(v - 4.0) < 1e-12);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> cdist(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const SupportState st = random_valid_state(rng, g);
        const ForcingSchedule c = ForcingSchedule::constant(cdist(rng));
        for (double v : discriminant(st, c)) CHECK(std::abs(v - 4.0) < 1e-12);
    }
}

TEST_CASE("tau-hyperbolicity check") {
    const AngularGrid g = AngularGrid::uniform(64);

    SupportState circle =
        make_state(g, constant_array(g, 1.0), constant_array(g, 0.0));
    CHECK(check_tau_hyperbolic(circle, ForcingSchedule::constant(0.0))
              .hyperbolic);

    SupportState oval = make_state(
        g,
        sample_fn(g, [](double t) { return 1.0 + 0.3 * std::cos(2.0 * t); }),
        constant_array(g, 0.0));
    const HyperbolicityCheck hc =
        check_tau_hyperbolic(oval, ForcingSchedule::constant(-0.2));
    CHECK(hc.hyperbolic);
    CHECK(hc.min_abs_radius == doctest::Approx(0.1).epsilon(1e-4));
    CHECK(hc.min_discriminant == doctest::Approx(4.0).epsilon(1e-13));

    // inject a state whose discrete S_thth + S vanishes at node 0: pick the
    // cos(2 theta) amplitude from the stencil eigenvalue so the cancellation
    // is exact in the discrete operator
    const double lam =
        (30.0 - 32.0 * std::cos(2.0 * g.dtheta) + 2.0 * std::cos(4.0 * g.dtheta)) /
        (12.0 * g.dtheta * g.dtheta);
    const double beta = 1.0 / (lam - 1.0);
    SupportState degenerate = make_state(
        g,
        sample_fn(g, [&](double t) { return 1.0 + beta * std::cos(2.0 * t); }),
        constant_array(g, 0.0));
    const HyperbolicityCheck bad =
        check_tau_hyperbolic(degenerate, ForcingSchedule::constant(0.0));
    CHECK_FALSE(bad.hyperbolic);
    CHECK((bad.worst_node == 0 || bad.worst_node == g.n_nodes / 2));
}

TEST_CASE("cfl step") {
    const AngularGrid g = AngularGrid::uniform(64);
    SupportState unit =
        make_state(g, constant_array(g, 1.0), constant_array(g, 0.0));
    CHECK(cfl_dt(unit, 0.5) == doctest::Approx(0.5 * g.dtheta).epsilon(1e-14));
    CHECK(cfl_dt(unit, 0.5) == doctest::Approx(0.0491).epsilon(1e-3));

    SupportState wide =
        make_state(g, constant_array(g, 2.0), constant_array(g, 0.0));
    CHECK(cfl_dt(wide, 0.5) == doctest::Approx(0.0982).epsilon(1e-3));

    CHECK(cfl_dt(wide, 0.5, 0.01) == 0.01);  // dt_max clamp

    CHECK_THROWS_AS(cfl_dt(unit, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(cfl_dt(unit, 1.5), std::invalid_argument);
}

TEST_CASE("step matches the short-time Taylor expansion") {
    const AngularGrid g = AngularGrid::uniform(64);
    SupportState unit =
        make_state(g, constant_array(g, 1.0), constant_array(g, 0.0));
    const double dt = 1e-3;
    const SupportState next = step(unit, dt, ForcingSchedule::constant(0.0));
    for (int i = 0; i < g.n_nodes; ++i) {
        CHECK(std::abs(next.s[i] - (1.0 - 0.5 * dt * dt)) < 1e-11);
        CHECK(std::abs(next.w[i] + dt) < 1e-9);
    }
    CHECK(next.tau == dt);
}

TEST_CASE("step has RK4 local order") {
    const AngularGrid g = AngularGrid::uniform(64);
    const ForcingSchedule c = ForcingSchedule::constant(-0.5);
    SupportState st = make_state(
        g,
        sample_fn(g, [](double t) { return 1.0 + 0.1 * std::cos(2.0 * t); }),
        sample_fn(g, [](double t) { return 0.1 * std::sin(t); }));

    const auto richardson_gap = [&](double dt) {
        const SupportState full = step(st, dt, c);
        const SupportState half = step(step(st, 0.5 * dt, c), 0.5 * dt, c);
        double gap = 0.0;
        for (int i = 0; i < g.n_nodes; ++i)
            gap = std::max(gap, std::abs(full.s[i] - half.s[i]));
        return gap;
    };

    const double gap1 = richardson_gap(0.04);
    const double gap2 = richardson_gap(0.02);
    CHECK(gap1 / gap2 > 20.0);  // O(dt^5) per step: ratio ~ 32
}

TEST_CASE("uniform data stays exactly uniform") {
    const AngularGrid g = AngularGrid::uniform(64);
    SupportState st =
        make_state(g, constant_array(g, 1.0), constant_array(g, 0.0));
    const ForcingSchedule c = ForcingSchedule::constant(0.0);
    for (int n = 0; n < 50; ++n) st = step(st, 5e-3, c);
    for (int i = 1; i < g.n_nodes; ++i) {
        CHECK(st.s[i] == st.s[0]);
        CHECK(st.w[i] == st.w[0]);
    }
}

TEST_CASE("m-fold symmetric data keeps the symmetry") {
    const AngularGrid g = AngularGrid::uniform(64);
    const int shift = g.n_nodes / 4;  // m = 4 symmetry
    std::vector<double> h =
        sample_fn(g, [](double t) { return 1.0 + 0.1 * std::cos(4.0 * t); });
    std::vector<double> f =
        sample_fn(g, [](double t) { return 0.2 + 0.05 * std::sin(4.0 * t); });
    const FlowTrajectory traj =
        evolve(g, h, f, ForcingSchedule::constant(-0.1), {});
    for (const SupportState& st : traj.snapshots)
        for (int i = 0; i < g.n_nodes; ++i)
            CHECK(std::abs(st.s[i] - st.s[(i + shift) % g.n_nodes]) < 1e-10);
}

TEST_CASE("circle data collapses at the radial time") {
    const AngularGrid g = AngularGrid::uniform(256);
    EvolveOptions opts;
    const FlowTrajectory traj =
        evolve(g, constant_array(g, 1.0), constant_array(g, 0.0),
               ForcingSchedule::constant(0.0), opts);
    CHECK(traj.stop.tag == StopTag::Collapsed);
    CHECK(traj.stop.tau_stop ==
          doctest::Approx(std::sqrt(pi / 2.0)).epsilon(1e-3));

    // forced circle collapses strictly earlier, at the radial time
    const FlowTrajectory forced =
        evolve(g, constant_array(g, 1.0), constant_array(g, 0.0),
               ForcingSchedule::constant(-1.0), opts);
    CHECK(forced.stop.tag == StopTag::Collapsed);
    CHECK(forced.stop.tau_stop < traj.stop.tau_stop);
    const RadialTrajectory forced_radial = integrate_radial(
        RadialProblem{1.0, ForcingSchedule::constant(-1.0), 1.0, 0.0});
    CHECK(forced.stop.tau_stop ==
          doctest::Approx(*forced_radial.collapse_time).epsilon(1e-3));
}

TEST_CASE("outward initial speed expands before collapsing") {
    const AngularGrid g = AngularGrid::uniform(64);
    // f < 0 means S_tau(.,0) = -f > 0 per the initial-value convention
    const FlowTrajectory traj =
        evolve(g, constant_array(g, 1.0), constant_array(g, -0.5),
               ForcingSchedule::constant(0.0), {});
    CHECK(traj.stop.tag == StopTag::Collapsed);
    double s_max = 0.0;
    for (const SupportState& st : traj.snapshots)
        for (double v : st.s) s_max = std::max(s_max, v);
    CHECK(s_max > 1.05);

    const RadialProblem reduced{1.0, ForcingSchedule::constant(0.0), 1.0, 0.5};
    const RadialTrajectory radial = integrate_radial(reduced);
    CHECK(traj.stop.tau_stop ==
          doctest::Approx(*radial.collapse_time).epsilon(1e-3));
    CHECK(s_max <= radial.peak_radius + 1e-6);
}

TEST_CASE("uniform pde trajectory follows the radial solution") {
    const AngularGrid g = AngularGrid::uniform(256);
    EvolveOptions opts;
    opts.out_dt = 0.01;
    const FlowTrajectory traj =
        evolve(g, constant_array(g, 1.0), constant_array(g, 0.0),
               ForcingSchedule::constant(0.0), opts);

    RadialOptions ropts;
    ropts.dt_max = 1e-3;
    const RadialTrajectory radial = integrate_radial(
        RadialProblem{1.0, ForcingSchedule::constant(0.0), 1.0, 0.0}, ropts);
    const double t_limit = 0.9 * *radial.collapse_time;

    for (size_t j = 0; j < traj.snapshots.size(); ++j) {
        const SupportState& st = traj.snapshots[j];
        if (st.tau > t_limit) break;
        const double r_ref = radial.value_at(st.tau);
        CHECK(std::abs(st.s[0] - r_ref) < 1e-4 * r_ref);
        const double v_ref = radial.velocity_at(st.tau);
        CHECK(std::abs(st.w[0] - v_ref) <= 1e-4 * std::max(std::abs(v_ref), 1e-4));
    }
}

TEST_CASE("translated circles evolve exactly for vanishing forcing") {
    // with c = 0 the first harmonic rides along unchanged:
    // S(theta, t) = r(t) + a cos(theta) solves the wave equation whenever
    // r(t) solves the radial reduction
    const AngularGrid g = AngularGrid::uniform(128);
    const double a = 0.3;
    EvolveOptions opts;
    opts.out_dt = 0.02;
    std::vector<double> h(g.n_nodes);
    for (int i = 0; i < g.n_nodes; ++i)
        h[i] = 1.0 + a * std::cos(g.theta[i]);
    const FlowTrajectory traj = evolve(g, h, constant_array(g, 0.0),
                                       ForcingSchedule::constant(0.0), opts);

    // the shock guard must not fire on the (roundoff-level) anisotropy of
    // the curvature; the run ends when min S = r(t) - a reaches the floor
    CHECK(traj.stop.tag == StopTag::Collapsed);

    RadialOptions ropts;
    ropts.dt_max = 1e-3;
    const RadialTrajectory radial = integrate_radial(
        RadialProblem{1.0, ForcingSchedule::constant(0.0), 1.0, 0.0}, ropts);
    for (const SupportState& st : traj.snapshots) {
        if (st.tau > 0.9 * *radial.collapse_time) break;
        const double r_ref = radial.value_at(st.tau);
        for (int i = 0; i < g.n_nodes; ++i)
            CHECK(std::abs(st.s[i] - (r_ref + a * std::cos(g.theta[i]))) <
                  1e-6);
    }
}

TEST_CASE("time-varying forcing feeds through to the radial reduction") {
    const ForcingSchedule c =
        ForcingSchedule::table({0.0, 0.4, 0.8}, {0.0, -0.8, -0.2});
    const AngularGrid g = AngularGrid::uniform(128);
    EvolveOptions opts;
    opts.out_dt = 0.02;
    const FlowTrajectory traj =
        evolve(g, constant_array(g, 1.0), constant_array(g, 0.0), c, opts);
    CHECK(traj.stop.tag == StopTag::Collapsed);

    RadialOptions ropts;
    ropts.dt_max = 1e-3;
    const RadialTrajectory radial =
        integrate_radial(RadialProblem{1.0, c, 1.0, 0.0}, ropts);
    REQUIRE(radial.collapse_time.has_value());
    CHECK(traj.stop.tau_stop ==
          doctest::Approx(*radial.collapse_time).epsilon(1e-3));
    for (const SupportState& st : traj.snapshots) {
        if (st.tau > 0.9 * *radial.collapse_time) break;
        CHECK(st.s[0] ==
              doctest::Approx(radial.value_at(st.tau)).epsilon(1e-4));
    }
}

TEST_CASE("evolve convergence: error halves (at least) per grid doubling") {
    const ForcingSchedule c = ForcingSchedule::constant(-0.2);
    const double t_end = 0.25;
    const auto run = [&](int n) {
        const AngularGrid g = AngularGrid::uniform(n);
        EvolveOptions opts;
        opts.horizon = t_end;
        opts.cfl = 0.3;
        std::vector<double> h = sample_fn(
            g, [](double t) { return 1.0 + 0.3 * std::cos(2.0 * t); });
        std::vector<double> f = constant_array(g, 0.2);
        return evolve(g, h, f, c, opts);
    };
    const FlowTrajectory ref = run(512);
    REQUIRE(ref.stop.tag == StopTag::HorizonReached);
    const SupportState& fine = ref.snapshots.back();

    double prev_err = 0.0;
    for (int stage = 0; stage < 3; ++stage) {
        const int n = 64 << stage;
        const FlowTrajectory traj = run(n);
        REQUIRE(traj.stop.tag == StopTag::HorizonReached);
        const SupportState& last = traj.snapshots.back();
        REQUIRE(last.tau == doctest::Approx(t_end).epsilon(1e-12));
        double err = 0.0;
        const int ratio = 512 / n;
        for (int i = 0; i < n; ++i)
            err = std::max(err, std::abs(last.s[i] - fine.s[i * ratio]));
        if (stage > 0) CHECK(prev_err / err >= 2.0);
        prev_err = err;
    }
}

TEST_CASE("trajectories are bitwise deterministic") {
    const AngularGrid g = AngularGrid::uniform(64);
    std::vector<double> h =
        sample_fn(g, [](double t) { return 1.0 + 0.25 * std::cos(2.0 * t); });
    std::vector<double> f = constant_array(g, 0.5);
    const ForcingSchedule c = ForcingSchedule::constant(-0.1);
    const FlowTrajectory a = evolve(g, h, f, c, {});
    const FlowTrajectory b = evolve(g, h, f, c, {});
    REQUIRE(a.snapshots.size() == b.snapshots.size());
    CHECK(a.stop.tau_stop == b.stop.tau_stop);
    for (size_t j = 0; j < a.snapshots.size(); ++j)
        for (int i = 0; i < g.n_nodes; ++i) {
            CHECK(a.snapshots[j].s[i] == b.snapshots[j].s[i]);
            CHECK(a.snapshots[j].w[i] == b.snapshots[j].w[i]);
        }
}

TEST_CASE("evolve input validation") {
    const AngularGrid g = AngularGrid::uniform(64);
    const std::vector<double> h(g.n_nodes, 1.0);
    const std::vector<double> short_f(10, 0.0);
    CHECK_THROWS_AS(
        evolve(g, h, short_f, ForcingSchedule::constant(0.0), {}),
        std::invalid_argument);

    EvolveOptions bad_cfl;
    bad_cfl.cfl = 0.0;
    CHECK_THROWS_AS(evolve(g, h, std::vector<double>(g.n_nodes, 0.0),
                           ForcingSchedule::constant(0.0), bad_cfl),
                    std::invalid_argument);
}

TEST_CASE("horizon stop") {
    const AngularGrid g = AngularGrid::uniform(64);
    EvolveOptions opts;
    opts.horizon = 0.05;
    const FlowTrajectory traj =
        evolve(g, std::vector<double>(g.n_nodes, 1.0),
               std::vector<double>(g.n_nodes, 0.0),
               ForcingSchedule::constant(0.0), opts);
    CHECK(traj.stop.tag == StopTag::HorizonReached);
    CHECK(traj.stop.tau_stop == doctest::Approx(0.05).epsilon(1e-10));
}

TEST_CASE("non-convex initial data stops immediately as curvature blow-up") {
    const AngularGrid g = AngularGrid::uniform(64);
    const std::vector<double> h =
        sample_fn(g, [](double t) { return 1.0 + 0.45 * std::cos(2.0 * t); });
    const FlowTrajectory traj =
        evolve(g, h, std::vector<double>(g.n_nodes, 0.0),
               ForcingSchedule::constant(0.0), {});
    CHECK(traj.stop.tag == StopTag::CurvatureBlowup);
    CHECK(traj.stop.tau_stop == 0.0);
    CHECK(traj.snapshots.empty());
}

TEST_CASE("steep admissible data terminates with a classified stop") {
    const AngularGrid g = AngularGrid::uniform(256);
    const std::vector<double> h =
        sample_fn(g, [](double t) { return 1.0 + 0.3 * std::cos(2.0 * t); });
    const FlowTrajectory traj =
        evolve(g, h, std::vector<double>(g.n_nodes, 0.0),
               ForcingSchedule::constant(0.0), {});
    CHECK(traj.stop.tag != StopTag::HorizonReached);
    CHECK((traj.stop.tag == StopTag::Collapsed ||
           traj.stop.tag == StopTag::CurvatureBlowup ||
           traj.stop.tag == StopTag::ShockSuspected));
    CHECK(traj.stop.tau_stop > 0.0);
    CHECK(traj.stop.tau_stop < 5.0);
}

TEST_CASE("trajectory diagnostics match a geometry recomputation") {
    const AngularGrid g = AngularGrid::uniform(64);
    std::vector<double> h =
        sample_fn(g, [](double t) { return 1.0 + 0.2 * std::cos(2.0 * t); });
    const FlowTrajectory traj =
        evolve(g, h, std::vector<double>(g.n_nodes, 0.5),
               ForcingSchedule::constant(-0.1), {});
    REQUIRE(traj.snapshots.size() == traj.diagnostics.size());
    for (size_t j = 0; j < traj.snapshots.size(); ++j) {
        const SupportState& st = traj.snapshots[j];
        CHECK(traj.diagnostics[j].length == curve_length(st));
        const std::vector<double> k = curvature_from_support(st);
        CHECK(traj.diagnostics[j].min_k ==
              *std::min_element(k.begin(), k.end()));
        CHECK(traj.diagnostics[j].max_k ==
              *std::max_element(k.begin(), k.end()));
        CHECK(traj.diagnostics[j].min_s ==
              *std::min_element(st.s.begin(), st.s.end()));
    }
}

TEST_CASE("discriminant stays 4 along trajectories") {
    const AngularGrid g = AngularGrid::uniform(128);
    const ForcingSchedule c = ForcingSchedule::constant(-0.1);
    std::vector<double> h =
        sample_fn(g, [](double t) { return 1.0 + 0.3 * std::cos(2.0 * t); });
    const FlowTrajectory traj =
        evolve(g, h, std::vector<double>(g.n_nodes, 1.0), c, {});
    for (const SupportState& st : traj.snapshots)
        for (double v : discriminant(st, c)) CHECK(std::abs(v - 4.0) < 1e-12);
}
