#include "gratetd/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <span>
#include <sstream>

#include "gratetd/errors.hpp"

namespace gratetd {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

struct KeyValue {
    std::string section;
    std::string key;
    std::string value;
    int line;
};

std::vector<KeyValue> read_entries(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("config_unreadable", "cannot open config file: " + path);

    std::vector<KeyValue> entries;
    std::set<std::string> seen;
    std::string section;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line.substr(0, line.find('#')));
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                fail("config_syntax",
                     path + ":" + std::to_string(lineno) + ": malformed section header");
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            fail("config_syntax",
                 path + ":" + std::to_string(lineno) + ": expected key = value");
        KeyValue kv{section, trim(t.substr(0, eq)), trim(t.substr(eq + 1)), lineno};
        if (kv.section.empty())
            fail("config_syntax",
                 path + ":" + std::to_string(lineno) + ": entry outside any section");
        if (kv.key.empty())
            fail("config_syntax", path + ":" + std::to_string(lineno) + ": empty key");
        if (!seen.insert(kv.section + "." + kv.key).second)
            fail("duplicate_key", path + ":" + std::to_string(lineno) + ": duplicate key '" +
                                      kv.section + "." + kv.key + "'");
        entries.push_back(std::move(kv));
    }
    return entries;
}

double to_double(const KeyValue& kv) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(kv.value, &pos);
    } catch (const std::exception&) {
        fail("config_syntax",
             "line " + std::to_string(kv.line) + ": '" + kv.key + "' is not a number");
    }
    if (pos != kv.value.size())
        fail("config_syntax",
             "line " + std::to_string(kv.line) + ": trailing characters after number");
    return v;
}

int to_int(const KeyValue& kv) {
    const double v = to_double(kv);
    if (v != std::floor(v))
        fail("config_syntax", "line " + std::to_string(kv.line) + ": '" + kv.key +
                                  "' must be an integer");
    return static_cast<int>(v);
}

bool to_bool(const KeyValue& kv) {
    if (kv.value == "true" || kv.value == "1") return true;
    if (kv.value == "false" || kv.value == "0") return false;
    fail("config_syntax",
         "line " + std::to_string(kv.line) + ": '" + kv.key + "' must be a boolean");
}

std::vector<Layer> parse_layers(const std::string& text) {
    std::vector<Layer> layers;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        item = trim(item);
        if (item.empty()) continue;
        Layer l{};
        char c1 = 0, c2 = 0;
        std::stringstream ls(item);
        if (!(ls >> l.z_top >> c1 >> l.eps >> c2 >> l.mu) || c1 != ':' || c2 != ':')
            fail("config_syntax", "layers entries must look like 'ztop:eps:mu'");
        layers.push_back(l);
    }
    if (layers.empty()) fail("layers_empty", "layers list is empty");
    return layers;
}

} // namespace

RunConfig parse_config(const std::string& path) {
    RunConfig cfg;
    for (const auto& kv : read_entries(path)) {
        const std::string id = kv.section + "." + kv.key;
        if (id == "medium.kind") cfg.medium.kind = kv.value;
        else if (id == "medium.period") cfg.medium.period = to_double(kv);
        else if (id == "medium.h1") cfg.medium.h1 = to_double(kv);
        else if (id == "medium.h2") cfg.medium.h2 = to_double(kv);
        else if (id == "medium.eps1") cfg.medium.eps1 = to_double(kv);
        else if (id == "medium.mu1") cfg.medium.mu1 = to_double(kv);
        else if (id == "medium.eps2") cfg.medium.eps2 = to_double(kv);
        else if (id == "medium.mu2") cfg.medium.mu2 = to_double(kv);
        else if (id == "medium.polarization") cfg.medium.polarization = kv.value;
        else if (id == "medium.layers") cfg.medium.layers = kv.value;
        else if (id == "medium.interface_low") cfg.medium.interface_low = to_double(kv);
        else if (id == "medium.interface_high") cfg.medium.interface_high = to_double(kv);
        else if (id == "medium.duty") cfg.medium.duty = to_double(kv);
        else if (id == "medium.eps_above") cfg.medium.eps_above = to_double(kv);
        else if (id == "medium.mu_above") cfg.medium.mu_above = to_double(kv);
        else if (id == "medium.eps_below") cfg.medium.eps_below = to_double(kv);
        else if (id == "medium.mu_below") cfg.medium.mu_below = to_double(kv);
        else if (id == "pulse.shape") cfg.pulse.shape = kv.value;
        else if (id == "pulse.order") cfg.pulse.order = to_int(kv);
        else if (id == "pulse.sigma") cfg.pulse.sigma = to_double(kv);
        else if (id == "pulse.amplitude") cfg.pulse.amplitude = to_double(kv);
        else if (id == "pulse.delay") cfg.pulse.delay = to_double(kv);
        else if (id == "pulse.theta") cfg.pulse.theta = to_double(kv);
        else if (id == "pulse.direction") cfg.pulse.direction = kv.value;
        else if (id == "pulse.table") cfg.pulse.table = kv.value;
        else if (id == "grid.nx") cfg.grid.nx = to_int(kv);
        else if (id == "grid.nz") cfg.grid.nz = to_int(kv);
        else if (id == "sweep.kappa") cfg.sweep.kappa = to_double(kv);
        else if (id == "sweep.tolerance") cfg.sweep.tolerance = to_double(kv);
        else if (id == "sweep.aliasing") cfg.sweep.aliasing = to_double(kv);
        else if (id == "sweep.s1") cfg.sweep.s1 = to_double(kv);
        else if (id == "sweep.smax") cfg.sweep.smax = to_double(kv);
        else if (id == "sweep.ns") cfg.sweep.ns = to_int(kv);
        else if (id == "time.T") cfg.time.t_final = to_double(kv);
        else if (id == "time.nt") cfg.time.nt = to_int(kv);
        else if (id == "output.dir") cfg.output.dir = kv.value;
        else if (id == "output.snapshot_stride") cfg.output.snapshot_stride = to_int(kv);
        else if (id == "output.traces") cfg.output.traces = to_bool(kv);
        else if (id == "output.baseline_st") cfg.output.baseline_st = to_double(kv);
        else if (id == "output.baseline_es1") cfg.output.baseline_es1 = to_double(kv);
        else if (id == "output.baseline_es2") cfg.output.baseline_es2 = to_double(kv);
        else
            fail("unknown_key",
                 "line " + std::to_string(kv.line) + ": unknown key '" + id + "'");
    }

    // range validation before any computation
    if (!(cfg.medium.period > 0.0)) fail("period_nonpositive", "medium.period must be > 0");
    if (!(cfg.medium.h2 < cfg.medium.h1)) fail("strip_bounds", "medium requires h2 < h1");
    if (!(cfg.pulse.theta > 0.0) || !(cfg.pulse.theta < std::numbers::pi))
        fail("theta_out_of_range",
             "pulse.theta must lie strictly inside the open interval (0, pi)");
    if (cfg.pulse.shape == "polyexp" && cfg.pulse.order < 3)
        fail("pulse_order", "pulse.order must be >= 3 for simulation pulses");
    if (!(cfg.pulse.sigma > 0.0)) fail("pulse_sigma", "pulse.sigma must be > 0");
    if (!(cfg.pulse.delay >= 0.0)) fail("pulse_delay", "pulse.delay must be >= 0");
    if (cfg.pulse.direction != "down" && cfg.pulse.direction != "paper")
        fail("pulse_direction", "pulse.direction must be 'down' or 'paper'");
    if (cfg.pulse.shape != "polyexp" && cfg.pulse.shape != "tabulated")
        fail("pulse_shape", "pulse.shape must be 'polyexp' or 'tabulated'");
    if (cfg.medium.kind != "homogeneous" && cfg.medium.kind != "layered" &&
        cfg.medium.kind != "lamellar")
        fail("medium_kind", "medium.kind must be homogeneous, layered, or lamellar");
    if (cfg.grid.nx < 2 || !is_power_of_two(static_cast<std::size_t>(cfg.grid.nx)))
        fail("nx_not_power_of_two", "grid.nx must be a power of two >= 2");
    if (cfg.grid.nz < 1) fail("grid_dims", "grid.nz must be >= 1");
    if (!(cfg.time.t_final > 0.0)) fail("plan_range", "time.T must be > 0");
    if (!(cfg.sweep.tolerance > 0.0) || !(cfg.sweep.tolerance < 1.0))
        fail("plan_tolerance", "sweep.tolerance must lie in (0, 1)");
    if (!(cfg.sweep.aliasing >= 1.2)) fail("plan_aliasing", "sweep.aliasing must be >= 1.2");
    if (cfg.output.snapshot_stride < 0) fail("snapshot_stride", "snapshot stride must be >= 0");
    return cfg;
}

MediumModel make_medium(const RunConfig& cfg) {
    const auto& mc = cfg.medium;
    const ExteriorMedia ext{mc.eps1, mc.mu1, mc.eps2, mc.mu2};
    const Polarization pol =
        mc.polarization == "tm" ? Polarization::TM : Polarization::TE;

    if (mc.kind == "homogeneous") {
        const Layer layer{mc.h1, mc.eps1, mc.mu1};
        return build_layered(std::span(&layer, 1), mc.period, mc.h1, mc.h2, cfg.grid.nx,
                             cfg.grid.nz, ext, pol);
    }
    if (mc.kind == "layered") {
        const auto layers = parse_layers(mc.layers);
        return build_layered(layers, mc.period, mc.h1, mc.h2, cfg.grid.nx, cfg.grid.nz,
                             ext, pol);
    }
    // lamellar: square-wave interface profile sampled at column midpoints
    std::vector<double> profile(static_cast<std::size_t>(cfg.grid.nx));
    for (int i = 0; i < cfg.grid.nx; ++i) {
        const double frac = (i + 0.5) / cfg.grid.nx;
        profile[static_cast<std::size_t>(i)] =
            frac < mc.duty ? mc.interface_high : mc.interface_low;
    }
    return build_binary_grating(profile, mc.eps_above, mc.mu_above, mc.eps_below,
                                mc.mu_below, mc.period, mc.h1, mc.h2, cfg.grid.nx,
                                cfg.grid.nz, ext, pol);
}

IncidentPulse make_pulse(const RunConfig& cfg, const MediumModel& medium) {
    const auto dir = cfg.pulse.direction == "paper" ? IncidenceDirection::Paper
                                                    : IncidenceDirection::Down;
    if (cfg.pulse.shape == "tabulated") {
        std::ifstream in(cfg.pulse.table);
        if (!in) fail("pulse_table", "cannot open pulse table: " + cfg.pulse.table);
        std::vector<std::pair<double, double>> table;
        std::string line;
        while (std::getline(in, line)) {
            line = trim(line);
            if (line.empty() || line.front() == '#') continue;
            std::replace(line.begin(), line.end(), ',', ' ');
            std::stringstream ls(line);
            double t = 0.0, f = 0.0;
            if (!(ls >> t >> f)) fail("pulse_table", "malformed pulse table row: " + line);
            table.emplace_back(t, f);
        }
        return IncidentPulse::tabulated(std::move(table), cfg.pulse.delay, cfg.pulse.theta,
                                        medium.eps1, medium.mu1, dir);
    }
    return IncidentPulse::poly_exp(cfg.pulse.order, cfg.pulse.sigma, cfg.pulse.amplitude,
                                   cfg.pulse.delay, cfg.pulse.theta, medium.eps1,
                                   medium.mu1, dir);
}

SweepPlan make_plan(const RunConfig& cfg, const IncidentPulse& pulse) {
    SweepPlan plan = plan_sweep(pulse, cfg.time.t_final, cfg.sweep.tolerance,
                                cfg.sweep.kappa, cfg.sweep.aliasing);
    if (cfg.sweep.s1 > 0.0) plan.s1 = cfg.sweep.s1;
    if (cfg.sweep.smax > 0.0) plan.smax = cfg.sweep.smax;
    if (cfg.sweep.ns > 1) plan.ns = cfg.sweep.ns;
    if (cfg.time.nt > 1) plan.nt = cfg.time.nt;
    if (cfg.sweep.smax > 0.0 || cfg.sweep.ns > 1) {
        // re-derive the dependent counts unless explicitly pinned
        if (cfg.sweep.ns <= 1)
            plan.ns = static_cast<int>(std::ceil(
                          plan.smax * cfg.sweep.aliasing * cfg.time.t_final /
                          (2.0 * std::numbers::pi))) + 1;
        if (cfg.time.nt <= 1)
            plan.nt = static_cast<int>(std::ceil(cfg.time.t_final * plan.smax /
                                                 std::numbers::pi)) + 1;
    }
    plan.validate();
    return plan;
}

} // namespace gratetd
