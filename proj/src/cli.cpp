#include "hmcf/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hmcf/checks.hpp"
#include "hmcf/errors.hpp"
#include "hmcf/io.hpp"
#include "hmcf/ma_solver.hpp"
#include "hmcf/sphere_flow.hpp"

namespace hmcf {

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 1;
constexpr int exit_check_failed = 2;
constexpr int exit_numerical = 3;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> parse_list(const std::string& text,
                               const std::string& field) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw std::invalid_argument(field + ": bad list entry '" + item +
                                        "'");
        }
    }
    if (out.empty())
        throw std::invalid_argument(field + ": empty list");
    return out;
}

struct EvolveArgs {
    std::string h_spec;
    std::string f_spec = "const:0";
    std::string c_spec = "const:0";
    int n_nodes = 256;
    EvolveOptions opts;
    std::string out_path;
};

void add_evolve_flags(CLI::App* cmd, EvolveArgs& args, bool h_required) {
    cmd->set_help_flag("--help", "print help");  // frees --h for data
    auto* h = cmd->add_option("--h", args.h_spec,
                              "initial support data (const:/circle:/harm:)");
    if (h_required) h->required();
    cmd->add_option("--f", args.f_spec, "initial normal speed f");
    cmd->add_option("--c", args.c_spec, "forcing c(t) (const:/table:)");
    cmd->add_option("--n", args.n_nodes, "grid nodes (even, >= 16)");
    cmd->add_option("--cfl", args.opts.cfl, "CFL number in (0,1]");
    cmd->add_option("--horizon", args.opts.horizon, "time horizon");
    cmd->add_option("--stride", args.opts.stride, "snapshot stride (steps)");
    cmd->add_option("--out-dt", args.opts.out_dt,
                    "snapshot exactly at multiples of this time");
    cmd->add_option("--dt-max", args.opts.dt_max, "time step cap");
    cmd->add_option("--eps-collapse", args.opts.eps_collapse,
                    "collapse threshold on min S (default 1e-4 max h)");
    cmd->add_option("--k-max", args.opts.k_max,
                    "curvature blow-up threshold (default 1e3/min roc)");
    cmd->add_option("--tv-factor", args.opts.tv_factor,
                    "shock trigger on TV(k) growth");
}

FlowTrajectory run_evolution(const EvolveArgs& args) {
    const AngularGrid grid = AngularGrid::uniform(args.n_nodes);
    const std::vector<double> h =
        parse_initial_spec(args.h_spec, grid, "--h", true);
    const std::vector<double> f =
        parse_initial_spec(args.f_spec, grid, "--f", false);
    const ForcingSchedule c = parse_forcing_spec(args.c_spec, "--c");
    return evolve(grid, h, f, c, args.opts);
}

void print_stop(const FlowTrajectory& traj) {
    std::cout << "stop=" << to_string(traj.stop.tag)
              << " tau_stop=" << fmt(traj.stop.tau_stop)
              << " min_S=" << fmt(traj.stop.min_s)
              << " max_k=" << fmt(traj.stop.max_k)
              << " snapshots=" << traj.snapshots.size() << "\n";
}

int cmd_evolve(const EvolveArgs& args) {
    const FlowTrajectory traj = run_evolution(args);
    if (!args.out_path.empty()) write_trajectory_csv(traj, args.out_path);
    print_stop(traj);
    return exit_ok;
}

int cmd_radial(double c0, double r0, double r1, const std::string& cbar_spec,
               const RadialOptions& opts, const std::string& out_path) {
    const ForcingSchedule cbar = parse_forcing_spec(cbar_spec, "--cbar");
    if (!cbar.non_positive())
        throw std::invalid_argument(
            "--cbar: must be non-positive for the bound suite");
    const RadialProblem problem{c0, cbar, r0, r1};
    const RadialTrajectory traj = integrate_radial(problem, opts);
    if (!out_path.empty()) write_radial_csv(traj, out_path);

    if (traj.collapse_time)
        std::cout << "collapse_time=" << fmt(*traj.collapse_time) << "\n";
    else
        std::cout << "collapse_time=none (horizon reached)\n";
    std::cout << "peak_radius=" << fmt(traj.peak_radius) << "\n";

    if (r1 == 0.0) {
        const double bound = collapse_upper_bound(problem);
        std::cout << "upper_bound=" << fmt(bound) << "\n";
        const EnvelopeReport env = energy_envelope_check(traj, problem);
        std::cout << "energy_envelope=" << (env.passed ? "pass" : "fail")
                  << "\n";
        if (traj.collapse_time) {
            const CollapseBounds bounds = check_collapse_bounds(traj, problem);
            std::cout << "lower_bound=" << fmt(bounds.lower)
                      << " (A=" << fmt(bounds.a_integral) << ")\n";
            if (!bounds.contains) return exit_check_failed;
        }
        if (!env.passed) return exit_check_failed;
    }
    return exit_ok;
}

int cmd_sphere(int dim, double r0, double r1, const std::string& c1_spec,
               int samples, const std::string& out_path) {
    const ForcingSchedule c1 = parse_forcing_spec(c1_spec, "--c1");
    RadialOptions opts;
    opts.dt_max = 1e-3;
    const SphereFamily family = sphere_flow(dim, r0, r1, c1, opts);

    const double t_end = 0.9 * family.radial.end_time();
    double worst = 0.0;
    for (int j = 1; j <= samples; ++j) {
        const double t = t_end * j / samples;
        worst = std::max(worst, verify_metric_evolution(family, t).residual);
        worst = std::max(worst, verify_normal_evolution(family, t).residual);
        worst =
            std::max(worst, verify_second_form_evolution(family, t).residual);
        // the scalar identities cancel terms that grow like 1/r^4, so their
        // rounding floor is magnitude-dependent; gate the overshoot instead
        const auto scalars = verify_scalar_evolutions(family, t);
        worst = std::max(
            worst, scalars.first.residual - 1e-14 * std::abs(scalars.first.lhs));
        worst = std::max(worst, scalars.second.residual -
                                    1e-14 * std::abs(scalars.second.lhs));
    }
    std::cout << "dim=" << dim << " samples=" << samples
              << " worst_identity_residual=" << fmt(worst) << "\n";
    if (family.radial.collapse_time)
        std::cout << "collapse_time=" << fmt(*family.radial.collapse_time)
                  << "\n";

    if (!out_path.empty()) {
        CheckReport report;
        report.name = "sphere-identities";
        report.slack = 1e-12;
        report.worst_violation = worst;
        report.passed = worst <= report.slack;
        std::ofstream out(out_path);
        out << report_to_json(report) << "\n";
    }
    return worst <= 1e-12 ? exit_ok : exit_check_failed;
}

struct VerifyArgs {
    std::string suite;
    EvolveArgs run;        // single-trajectory suites
    std::string outer_spec, inner_spec;
    std::string f_outer = "const:0", f_inner = "const:0";
    std::string out_path;
    double slack = 1e-6;
};

int cmd_verify(const VerifyArgs& args) {
    std::vector<CheckReport> reports;
    CheckOptions copts;
    copts.ordering_slack = args.slack;

    if (args.suite == "containment") {
        if (args.outer_spec.empty() || args.inner_spec.empty())
            throw std::invalid_argument(
                "--outer/--inner: required for the containment suite");
        EvolveArgs outer = args.run;
        outer.h_spec = args.outer_spec;
        outer.f_spec = args.f_outer;
        EvolveArgs inner = args.run;
        inner.h_spec = args.inner_spec;
        inner.f_spec = args.f_inner;
        if (outer.opts.out_dt <= 0.0) {
            outer.opts.out_dt = 0.01;  // shared snapshot times
            inner.opts.out_dt = 0.01;
        }
        const FlowTrajectory to = run_evolution(outer);
        const FlowTrajectory ti = run_evolution(inner);
        reports.push_back(check_containment(to, ti, copts));
    } else {
        if (args.run.h_spec.empty())
            throw std::invalid_argument("--h: required for this suite");
        const FlowTrajectory traj = run_evolution(args.run);
        if (args.suite == "convexity") {
            reports.push_back(check_convexity_preservation(traj, copts));
        } else if (args.suite == "length") {
            reports.push_back(check_length_monotonicity(traj, copts));
        } else if (args.suite == "sigma") {
            reports.push_back(check_sigma_positivity(traj, copts));
        } else if (args.suite == "all") {
            reports.push_back(check_convexity_preservation(traj, copts));
            reports.push_back(check_length_monotonicity(traj, copts));
            reports.push_back(check_sigma_positivity(traj, copts));
        } else {
            throw std::invalid_argument(
                "--suite: unknown suite '" + args.suite +
                "' (containment|convexity|length|sigma|all)");
        }
    }

    bool all_passed = true;
    for (const CheckReport& r : reports) {
        std::cout << r.name << ": " << (r.passed ? "pass" : "FAIL")
                  << " worst_violation=" << fmt(r.worst_violation)
                  << " at tau=" << fmt(r.worst_at.tau) << "\n";
        all_passed = all_passed && r.passed;
    }
    if (!args.out_path.empty()) write_reports_json(reports, args.out_path);
    return all_passed ? exit_ok : exit_check_failed;
}

}  // namespace

std::vector<SweepRow> run_sweep(const std::vector<double>& c0_values,
                                const std::vector<double>& r0_values,
                                const std::vector<double>& cbar_values,
                                const RadialOptions& opts) {
    std::vector<SweepRow> rows;
    for (double c0 : c0_values)
        for (double r0 : r0_values)
            for (double cbar : cbar_values) {
                SweepRow row;
                row.c0 = c0;
                row.r0 = r0;
                row.cbar = cbar;
                try {
                    const ForcingSchedule f = ForcingSchedule::constant(cbar);
                    if (!f.non_positive())
                        throw NotApplicableError(
                            "cbar must be non-positive for the bound suite");
                    const RadialProblem problem{c0, f, r0, 0.0};
                    const RadialTrajectory traj =
                        integrate_radial(problem, opts);
                    if (!traj.collapse_time)
                        throw IntegrationError("no collapse before horizon");
                    row.collapse_time = *traj.collapse_time;
                    row.upper_bound = collapse_upper_bound(problem);
                    row.bound_margin = row.upper_bound - row.collapse_time;
                    row.envelope_passed =
                        energy_envelope_check(traj, problem).passed;
                    row.monotone_passed = true;
                    for (size_t j = 1; j < traj.samples.size(); ++j)
                        if (!(traj.samples[j].rt < 0.0))
                            row.monotone_passed = false;
                    row.ok = true;
                } catch (const std::exception& e) {
                    row.ok = false;
                    row.error = e.what();
                }
                rows.push_back(row);
            }
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::string out =
        "c0,r0,cbar,status,collapse_time,upper_bound,bound_margin,"
        "envelope_passed,monotone_passed,error\n";
    for (const SweepRow& r : rows) {
        out += fmt(r.c0) + ',' + fmt(r.r0) + ',' + fmt(r.cbar) + ',';
        out += r.ok ? "ok," : "error,";
        out += fmt(r.collapse_time) + ',' + fmt(r.upper_bound) + ',' +
               fmt(r.bound_margin) + ',';
        out += (r.envelope_passed ? "1," : "0,");
        out += (r.monotone_passed ? "1," : "0,");
        std::string msg = r.error;
        std::replace(msg.begin(), msg.end(), ',', ';');
        out += msg + "\n";
    }
    return out;
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{
        "hmcf: forced hyperbolic mean curvature flow simulator and "
        "verification harness"};
    app.require_subcommand(1);

    // evolve-curve
    EvolveArgs ev;
    CLI::App* evolve_cmd = app.add_subcommand(
        "evolve-curve", "integrate the support-function wave equation");
    add_evolve_flags(evolve_cmd, ev, true);
    evolve_cmd->add_option("--out", ev.out_path, "trajectory csv path");

    // radial
    double c0 = 1.0, r0 = 1.0, r1 = 0.0;
    std::string cbar_spec = "const:0";
    RadialOptions ropts;
    std::string radial_out;
    CLI::App* radial_cmd =
        app.add_subcommand("radial", "integrate the reduced radial problem");
    radial_cmd->add_option("--c0", c0, "curvature coefficient (> 0)")
        ->required();
    radial_cmd->add_option("--r0", r0, "initial radius (> 0)")->required();
    radial_cmd->add_option("--r1", r1, "initial velocity");
    radial_cmd->add_option("--cbar", cbar_spec, "forcing cbar(t) <= 0");
    radial_cmd->add_option("--dt-max", ropts.dt_max, "time step cap");
    radial_cmd->add_option("--horizon", ropts.horizon, "time horizon");
    radial_cmd->add_option("--out", radial_out, "samples csv path");

    // sphere
    int dim = 2, samples = 100;
    double sr0 = 1.0, sr1 = 0.0;
    std::string c1_spec = "const:0";
    std::string sphere_out;
    CLI::App* sphere_cmd = app.add_subcommand(
        "sphere", "sphere family of the hypersurface flow + identity checks");
    sphere_cmd->add_option("--dim", dim, "intrinsic dimension n >= 1")
        ->required();
    sphere_cmd->add_option("--r0", sr0, "initial radius");
    sphere_cmd->add_option("--r1", sr1, "initial velocity");
    sphere_cmd->add_option("--c1", c1_spec, "forcing c1(t) <= 0");
    sphere_cmd->add_option("--samples", samples, "number of check times");
    sphere_cmd->add_option("--out", sphere_out, "report json path");

    // verify
    VerifyArgs vf;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "run a theorem-check suite");
    verify_cmd
        ->add_option("--suite", vf.suite,
                     "containment|convexity|length|sigma|all")
        ->required();
    add_evolve_flags(verify_cmd, vf.run, false);
    verify_cmd->add_option("--outer", vf.outer_spec,
                           "outer initial support (containment)");
    verify_cmd->add_option("--inner", vf.inner_spec,
                           "inner initial support (containment)");
    verify_cmd->add_option("--f-outer", vf.f_outer, "outer initial speed");
    verify_cmd->add_option("--f-inner", vf.f_inner, "inner initial speed");
    verify_cmd->add_option("--slack", vf.slack, "ordering slack");
    verify_cmd->add_option("--out", vf.out_path, "report json path");

    // sweep
    std::string c0_list, r0_list, cbar_list = "0";
    RadialOptions sweep_opts;
    std::string sweep_out;
    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "radial collapse sweep over a parameter grid");
    sweep_cmd->add_option("--c0", c0_list, "comma list of c0 values")
        ->required();
    sweep_cmd->add_option("--r0", r0_list, "comma list of r0 values")
        ->required();
    sweep_cmd->add_option("--cbar", cbar_list, "comma list of cbar constants");
    sweep_cmd->add_option("--dt-max", sweep_opts.dt_max, "time step cap");
    sweep_cmd->add_option("--out", sweep_out, "summary csv path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try {
        if (*evolve_cmd) return cmd_evolve(ev);
        if (*radial_cmd)
            return cmd_radial(c0, r0, r1, cbar_spec, ropts, radial_out);
        if (*sphere_cmd)
            return cmd_sphere(dim, sr0, sr1, c1_spec, samples, sphere_out);
        if (*verify_cmd) return cmd_verify(vf);
        if (*sweep_cmd) {
            const std::vector<SweepRow> rows =
                run_sweep(parse_list(c0_list, "--c0"),
                          parse_list(r0_list, "--r0"),
                          parse_list(cbar_list, "--cbar"), sweep_opts);
            const std::string csv = sweep_to_csv(rows);
            std::cout << csv;
            if (!sweep_out.empty()) {
                std::ofstream out(sweep_out);
                out << csv;
            }
            const bool any_error =
                std::any_of(rows.begin(), rows.end(),
                            [](const SweepRow& r) { return !r.ok; });
            return any_error ? exit_check_failed : exit_ok;
        }
    } catch (const NotApplicableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const IntegrationError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    } catch (const ConvexityError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numerical;
    }
    return exit_config;
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<std::string> full;
    full.push_back("hmcf");
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(full.size());
    for (const std::string& a : full) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace hmcf
