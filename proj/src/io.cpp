#include "hmcf/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hmcf/errors.hpp"

namespace hmcf {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& text, const std::string& field) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(field + ": expected a number, got '" +
                                    text + "'");
    }
    if (pos != text.size())
        throw std::invalid_argument(field + ": trailing characters in '" +
                                    text + "'");
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

}  // namespace

void write_trajectory_csv(const FlowTrajectory& traj, std::ostream& out) {
    out << "# hmcf-trajectory v1\n";
    out << "# n_nodes=" << traj.grid.n_nodes << "\n";
    out << "# forcing=" << traj.forcing.spec_string() << "\n";
    out << "# stop=" << to_string(traj.stop.tag)
        << " tau_stop=" << fmt17(traj.stop.tau_stop)
        << " min_s=" << fmt17(traj.stop.min_s)
        << " max_k=" << fmt17(traj.stop.max_k)
        << " tv_k=" << fmt17(traj.stop.tv_k) << "\n";
    out << "tau,theta_index,S,W,k\n";
    for (size_t j = 0; j < traj.snapshots.size(); ++j) {
        const SupportState& st = traj.snapshots[j];
        const SnapshotDiagnostics& d = traj.diagnostics[j];
        out << "# snapshot tau=" << fmt17(st.tau) << " L=" << fmt17(d.length)
            << " min_k=" << fmt17(d.min_k) << " max_k=" << fmt17(d.max_k)
            << " min_S=" << fmt17(d.min_s) << "\n";
        const std::vector<double> k = curvature_from_support(st);
        for (int i = 0; i < traj.grid.n_nodes; ++i)
            out << fmt17(st.tau) << ',' << i << ',' << fmt17(st.s[i]) << ','
                << fmt17(st.w[i]) << ',' << fmt17(k[i]) << "\n";
    }
}

void write_trajectory_csv(const FlowTrajectory& traj, const std::string& path) {
    std::ofstream out = open_out(path);
    write_trajectory_csv(traj, out);
}

namespace {

// "key=value" tokens from a "# ..." header line
double header_value(const std::string& line, const std::string& key) {
    const std::string token = key + "=";
    const size_t at = line.find(token);
    if (at == std::string::npos)
        throw std::invalid_argument("trajectory csv: missing '" + key +
                                    "' in header: " + line);
    size_t end = line.find(' ', at + token.size());
    if (end == std::string::npos) end = line.size();
    return parse_double(line.substr(at + token.size(),
                                    end - at - token.size()),
                        "trajectory csv " + key);
}

std::string header_text(const std::string& line, const std::string& key) {
    const std::string token = key + "=";
    const size_t at = line.find(token);
    if (at == std::string::npos)
        throw std::invalid_argument("trajectory csv: missing '" + key +
                                    "' in header: " + line);
    size_t end = line.find(' ', at + token.size());
    if (end == std::string::npos) end = line.size();
    return line.substr(at + token.size(), end - at - token.size());
}

}  // namespace

FlowTrajectory read_trajectory_csv(std::istream& in) {
    FlowTrajectory traj;
    std::string line;
    bool have_grid = false;
    bool have_stop = false;
    SupportState current;
    SnapshotDiagnostics current_diag;
    bool in_snapshot = false;

    const auto flush_snapshot = [&]() {
        if (!in_snapshot) return;
        traj.snapshots.push_back(current);
        traj.diagnostics.push_back(current_diag);
        in_snapshot = false;
    };

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("# n_nodes=", 0) == 0) {
            traj.grid = AngularGrid::uniform(
                static_cast<int>(header_value(line, "n_nodes")));
            have_grid = true;
        } else if (line.rfind("# forcing=", 0) == 0) {
            traj.forcing = parse_forcing_spec(line.substr(std::string("# forcing=").size()),
                                              "trajectory forcing");
        } else if (line.rfind("# stop=", 0) == 0) {
            traj.stop.tag = stop_tag_from_string(header_text(line, "stop"));
            traj.stop.tau_stop = header_value(line, "tau_stop");
            traj.stop.min_s = header_value(line, "min_s");
            traj.stop.max_k = header_value(line, "max_k");
            traj.stop.tv_k = header_value(line, "tv_k");
            have_stop = true;
        } else if (line.rfind("# snapshot", 0) == 0) {
            if (!have_grid)
                throw std::invalid_argument(
                    "trajectory csv: snapshot before n_nodes header");
            flush_snapshot();
            current.grid = traj.grid;
            current.tau = header_value(line, "tau");
            current.s.assign(traj.grid.n_nodes, 0.0);
            current.w.assign(traj.grid.n_nodes, 0.0);
            current_diag.length = header_value(line, "L");
            current_diag.min_k = header_value(line, "min_k");
            current_diag.max_k = header_value(line, "max_k");
            current_diag.min_s = header_value(line, "min_S");
            in_snapshot = true;
        } else if (line[0] == '#' || line.rfind("tau,", 0) == 0) {
            continue;  // banner or column row
        } else {
            if (!in_snapshot)
                throw std::invalid_argument(
                    "trajectory csv: data row outside a snapshot block");
            const std::vector<std::string> cols = split(line, ',');
            if (cols.size() != 5)
                throw std::invalid_argument(
                    "trajectory csv: expected 5 columns, got " + line);
            const int i =
                static_cast<int>(parse_double(cols[1], "theta_index"));
            if (i < 0 || i >= traj.grid.n_nodes)
                throw std::invalid_argument("trajectory csv: bad theta_index");
            current.s[i] = parse_double(cols[2], "S");
            current.w[i] = parse_double(cols[3], "W");
        }
    }
    flush_snapshot();
    if (!have_grid || !have_stop)
        throw std::invalid_argument("trajectory csv: incomplete headers");
    return traj;
}

FlowTrajectory read_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return read_trajectory_csv(in);
}

void write_radial_csv(const RadialTrajectory& traj, std::ostream& out) {
    out << "# hmcf-radial v1\n";
    out << "# c0=" << fmt17(traj.problem.c0) << " r0=" << fmt17(traj.problem.r0)
        << " r1=" << fmt17(traj.problem.r1)
        << " cbar=" << traj.problem.cbar.spec_string() << "\n";
    out << "# collapse_time="
        << (traj.collapse_time ? fmt17(*traj.collapse_time)
                               : std::string("none"))
        << " peak_radius=" << fmt17(traj.peak_radius) << "\n";
    out << "t,r,r_t\n";
    for (const RadialSample& s : traj.samples)
        out << fmt17(s.t) << ',' << fmt17(s.r) << ',' << fmt17(s.rt) << "\n";
}

void write_radial_csv(const RadialTrajectory& traj, const std::string& path) {
    std::ofstream out = open_out(path);
    write_radial_csv(traj, out);
}

namespace {

nlohmann::ordered_json report_json_object(const CheckReport& report) {
    nlohmann::ordered_json j;
    j["name"] = report.name;
    j["passed"] = report.passed;
    j["worst_violation"] = report.worst_violation;
    j["location"] = {{"theta", report.worst_at.theta},
                     {"tau", report.worst_at.tau}};
    j["margins"] = report.margins;
    j["slack"] = report.slack;
    return j;
}

}  // namespace

std::string report_to_json(const CheckReport& report) {
    return report_json_object(report).dump(2);
}

std::string reports_to_json(const std::vector<CheckReport>& reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const CheckReport& r : reports) arr.push_back(report_json_object(r));
    return arr.dump(2);
}

void write_reports_json(const std::vector<CheckReport>& reports,
                        const std::string& path) {
    std::ofstream out = open_out(path);
    out << reports_to_json(reports) << "\n";
}

ForcingSchedule parse_forcing_spec(const std::string& spec,
                                   const std::string& field) {
    if (spec.rfind("const:", 0) == 0)
        return ForcingSchedule::constant(
            parse_double(spec.substr(6), field + " const value"));
    if (spec.rfind("table-inline:", 0) == 0) {
        std::vector<double> times, values;
        for (const std::string& pair : split(spec.substr(13), ',')) {
            const std::vector<std::string> tv = split(pair, ':');
            if (tv.size() != 2)
                throw std::invalid_argument(field +
                                            ": bad table-inline pair '" +
                                            pair + "'");
            times.push_back(parse_double(tv[0], field + " time"));
            values.push_back(parse_double(tv[1], field + " value"));
        }
        return ForcingSchedule::table(std::move(times), std::move(values));
    }
    if (spec.rfind("table:", 0) == 0) {
        const std::string path = spec.substr(6);
        std::ifstream in(path);
        if (!in)
            throw std::invalid_argument(field + ": cannot open table file '" +
                                        path + "'");
        std::vector<double> times, values;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            const std::vector<std::string> cols = split(line, ',');
            if (cols.size() != 2)
                throw std::invalid_argument(
                    field + ": table rows need two columns t,c");
            times.push_back(parse_double(cols[0], field + " t"));
            values.push_back(parse_double(cols[1], field + " c"));
        }
        if (times.empty())
            throw std::invalid_argument(field + ": empty table '" + path + "'");
        return ForcingSchedule::table(std::move(times), std::move(values));
    }
    throw std::invalid_argument(
        field + ": unknown forcing spec '" + spec +
        "' (use const:<v>, table:<path> or table-inline:t:c,...)");
}

namespace {

struct Harmonic {
    int m = 0;
    double a = 0.0;  // cos coefficient
    double b = 0.0;  // sin coefficient
};

// "harm:<a0>[;<m>:<am>[,<bm>]]..."
std::vector<Harmonic> parse_harmonics(const std::string& body,
                                      const std::string& field) {
    const std::vector<std::string> parts = split(body, ';');
    std::vector<Harmonic> series;
    series.push_back({0, parse_double(parts[0], field + " a0"), 0.0});
    for (size_t p = 1; p < parts.size(); ++p) {
        const std::vector<std::string> mc = split(parts[p], ':');
        if (mc.size() != 2)
            throw std::invalid_argument(field + ": bad harmonic term '" +
                                        parts[p] + "' (want m:a[,b])");
        Harmonic h;
        h.m = static_cast<int>(parse_double(mc[0], field + " mode"));
        if (h.m < 1)
            throw std::invalid_argument(field + ": harmonic mode must be >= 1");
        const std::vector<std::string> ab = split(mc[1], ',');
        if (ab.size() > 2)
            throw std::invalid_argument(field + ": too many coefficients in '" +
                                        parts[p] + "'");
        h.a = parse_double(ab[0], field + " cos coefficient");
        h.b = ab.size() == 2 ? parse_double(ab[1], field + " sin coefficient")
                             : 0.0;
        series.push_back(h);
    }
    return series;
}

double eval_harmonics(const std::vector<Harmonic>& series, double theta) {
    double v = 0.0;
    for (const Harmonic& h : series)
        v += h.a * std::cos(h.m * theta) + h.b * std::sin(h.m * theta);
    return v;
}

// h + h'' of the series, analytically: mode m scales by (1 - m^2)
double eval_harmonics_roc(const std::vector<Harmonic>& series, double theta) {
    double v = 0.0;
    for (const Harmonic& h : series)
        v += (1.0 - double(h.m) * h.m) *
             (h.a * std::cos(h.m * theta) + h.b * std::sin(h.m * theta));
    return v;
}

}  // namespace

std::vector<double> parse_initial_spec(const std::string& spec,
                                       const AngularGrid& grid,
                                       const std::string& field,
                                       bool require_convex) {
    if (spec.rfind("const:", 0) == 0) {
        const double v = parse_double(spec.substr(6), field + " const value");
        if (require_convex && !(v > 0.0))
            throw std::invalid_argument(
                field + ": constant support must be positive, got " +
                std::to_string(v));
        return std::vector<double>(grid.n_nodes, v);
    }
    if (spec.rfind("circle:", 0) == 0) {
        const std::string body = spec.substr(7);
        const size_t at = body.find('@');
        const double radius =
            parse_double(body.substr(0, at), field + " radius");
        Vec2 center{0.0, 0.0};
        if (at != std::string::npos) {
            const std::vector<std::string> xy = split(body.substr(at + 1), ',');
            if (xy.size() != 2)
                throw std::invalid_argument(field +
                                            ": circle center wants cx,cy");
            center.x = parse_double(xy[0], field + " center x");
            center.y = parse_double(xy[1], field + " center y");
        }
        try {
            return support_of_circle(grid, radius, center);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(field + ": " + e.what());
        }
    }
    if (spec.rfind("harm:", 0) == 0) {
        const std::vector<Harmonic> series =
            parse_harmonics(spec.substr(5), field);
        if (require_convex) {
            // convexity screened on a 4x-resolution grid
            const int n4 = 4 * grid.n_nodes;
            for (int i = 0; i < n4; ++i) {
                const double theta = two_pi * i / n4;
                if (!(eval_harmonics_roc(series, theta) > 0.0))
                    throw std::invalid_argument(
                        field +
                        ": harmonic data is not strictly convex (h''+h <= 0 "
                        "near theta=" +
                        std::to_string(theta) + ")");
            }
        }
        std::vector<double> out(grid.n_nodes);
        for (int i = 0; i < grid.n_nodes; ++i)
            out[i] = eval_harmonics(series, grid.theta[i]);
        return out;
    }
    throw std::invalid_argument(
        field + ": unknown initial-data spec '" + spec +
        "' (use const:<v>, circle:<r>[@cx,cy] or harm:<a0>[;m:a[,b]]...)");
}

}  // namespace hmcf
