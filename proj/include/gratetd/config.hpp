#ifndef GRATETD_CONFIG_HPP
#define GRATETD_CONFIG_HPP

#include <string>

#include "gratetd/medium.hpp"
#include "gratetd/pulse.hpp"
#include "gratetd/sweep.hpp"

namespace gratetd {

/// Parsed run configuration with defaults applied. Files are line-oriented
/// `key = value` entries under [medium], [pulse], [grid], [sweep], [time],
/// [output] sections; unknown sections/keys and duplicate keys are rejected.
struct RunConfig {
    struct Medium {
        std::string kind = "homogeneous"; // homogeneous | layered | lamellar
        double period = 1.0;
        double h1 = 0.5;
        double h2 = -0.5;
        double eps1 = 1.0, mu1 = 1.0, eps2 = 1.0, mu2 = 1.0;
        std::string polarization = "te";
        std::string layers; // "ztop:eps:mu; ztop:eps:mu; ..." (top-down)
        // lamellar (square-wave) grating parameters
        double interface_low = -0.25;
        double interface_high = 0.25;
        double duty = 0.5;
        double eps_above = 1.0, mu_above = 1.0, eps_below = 1.0, mu_below = 1.0;
    } medium;

    struct Pulse {
        std::string shape = "polyexp"; // polyexp | tabulated
        int order = 4;
        double sigma = 1.0;
        double amplitude = 1.0;
        double delay = 1.0;
        double theta = 1.0471975511965976; // pi/3
        std::string direction = "down";    // down | paper
        std::string table;                 // CSV path for tabulated pulses
    } pulse;

    struct Grid {
        int nx = 64;
        int nz = 64;
    } grid;

    struct Sweep {
        double kappa = 4.0;
        double tolerance = 1e-8;
        double aliasing = 3.0;
        double s1 = 0.0;   // > 0 overrides kappa/T
        double smax = 0.0; // > 0 overrides the decay-bound root
        int ns = 0;        // > 0 overrides the aliasing-guard count
    } sweep;

    struct Time {
        double t_final = 10.0;
        int nt = 0; // > 0 overrides dt <= pi/smax
    } time;

    struct Output {
        std::string dir = "out";
        int snapshot_stride = 0; // write every k-th time frame; 0 = none
        bool traces = true;
        double baseline_st = 0.0; // committed stability ratios for this config
        double baseline_es1 = 0.0;
        double baseline_es2 = 0.0;
    } output;
};

/// Parse and validate; throws Error with code "config_*", "duplicate_key",
/// "unknown_key", or the violated parameter's name.
RunConfig parse_config(const std::string& path);

MediumModel make_medium(const RunConfig& config);
IncidentPulse make_pulse(const RunConfig& config, const MediumModel& medium);
SweepPlan make_plan(const RunConfig& config, const IncidentPulse& pulse);

} // namespace gratetd

#endif
