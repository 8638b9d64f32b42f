#pragma once

#include <string>
#include <vector>

#include "hmcf/forcing.hpp"
#include "hmcf/radial_ode.hpp"

namespace hmcf {

/// One cell of a radial parameter sweep.
struct SweepRow {
    double c0 = 0.0;
    double r0 = 0.0;
    double cbar = 0.0;
    bool ok = false;
    std::string error;        // empty when ok
    double collapse_time = 0.0;
    double upper_bound = 0.0;
    double bound_margin = 0.0;  // upper_bound - collapse_time
    bool envelope_passed = false;
    bool monotone_passed = false;  // r_t < 0 for t > 0 (r1 = 0 cells)
};

/// Run each cell of the grid independently; failures are recorded in the
/// row and do not abort the sweep.
std::vector<SweepRow> run_sweep(const std::vector<double>& c0_values,
                                const std::vector<double>& r0_values,
                                const std::vector<double>& cbar_values,
                                const RadialOptions& opts = {});

std::string sweep_to_csv(const std::vector<SweepRow>& rows);

/// Exit statuses: 0 success, 1 usage/config error, 2 check failure,
/// 3 numerical failure.
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);  // without argv[0]

}  // namespace hmcf
