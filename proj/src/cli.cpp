#include "gratetd/cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "gratetd/config.hpp"
#include "gratetd/diagnostics.hpp"
#include "gratetd/errors.hpp"
#include "gratetd/oracle.hpp"
#include "gratetd/properties.hpp"
#include "gratetd/snapshot.hpp"
#include "gratetd/solver.hpp"
#include "gratetd/sweep.hpp"

namespace gratetd {

namespace {

namespace fs = std::filesystem;

std::string shortest(double v) {
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

struct CommonOpts {
    std::string config_path;
    std::string out_dir; // overrides [output] dir when set
    int threads = 1;
    std::uint64_t seed = 1;
    std::string s_value = "0.4,5.0";
    bool modes = false;
};

struct LoadedRun {
    RunConfig config;
    MediumModel medium;
    StripMesh mesh;
    IncidentPulse pulse;
};

LoadedRun load_run(const CommonOpts& opts) {
    if (opts.config_path.empty()) fail("config_missing", "--config <path> is required");
    LoadedRun run{parse_config(opts.config_path), {}, {}, {}};
    run.medium = make_medium(run.config);
    run.mesh = build_mesh(run.medium, run.config.grid.nx, run.config.grid.nz);
    run.pulse = make_pulse(run.config, run.medium);
    if (!opts.out_dir.empty()) run.config.output.dir = opts.out_dir;
    return run;
}

cd parse_s(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        fail("config_syntax", "--s expects 're,im'");
    try {
        const double re = std::stod(text.substr(0, comma));
        const double im = std::stod(text.substr(comma + 1));
        if (!(re > 0.0)) fail("laplace_domain", "--s requires Re s > 0");
        return {re, im};
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail("config_syntax", "--s expects 're,im'");
    }
}

void write_field_snapshots(const std::string& dir, const std::string& stem,
                           const StripMesh& mesh, const SDomainField& field) {
    FieldSnapshot snap;
    snap.nx = mesh.nx;
    snap.nz = mesh.nz;
    snap.period = mesh.period;
    snap.h1 = mesh.h1;
    snap.h2 = mesh.h2;
    snap.t = 0.0;
    snap.data.resize(field.values.size());
    for (std::size_t i = 0; i < field.values.size(); ++i) snap.data[i] = field.values[i].real();
    write_snapshot(dir + "/" + stem + "_re.fld", snap);
    for (std::size_t i = 0; i < field.values.size(); ++i) snap.data[i] = field.values[i].imag();
    write_snapshot(dir + "/" + stem + "_im.fld", snap);
}

int cmd_validate(const CommonOpts& opts) {
    const auto run = load_run(opts);
    const auto report = validate(run.medium);
    if (report.empty()) {
        std::cout << "medium ok: " << run.medium.nx << "x" << run.medium.nz
                  << " cells, period " << shortest(run.medium.period) << "\n";
        return 0;
    }
    for (const auto& name : report) std::cout << "violated: " << name << "\n";
    return 3;
}

int cmd_solve_sdomain(const CommonOpts& opts) {
    const auto run = load_run(opts);
    const cd s = parse_s(opts.s_value);
    if (opts.modes) {
        const double c1 = run.pulse.c1();
        std::cout << "mode beta_1 beta_2\n";
        for (int n = -run.mesh.nx / 2; n < run.mesh.nx / 2; ++n) {
            const cd b1 = beta_symbol(run.medium, c1, 1, n, s);
            const cd b2 = beta_symbol(run.medium, c1, 2, n, s);
            std::cout << n << ' ' << shortest(b1.real()) << "+" << shortest(b1.imag())
                      << "i " << shortest(b2.real()) << "+" << shortest(b2.imag())
                      << "i\n";
        }
    }
    const auto field = solve_rp(run.medium, run.mesh, run.pulse, s);
    fs::create_directories(run.config.output.dir);
    write_field_snapshots(run.config.output.dir, "sdomain", run.mesh, field);

    const auto rho = rho_hat(run.pulse, s, run.mesh.nx, run.mesh.period);
    const auto vp = check_vp_bound(field, rho, run.mesh, s, run.medium, run.pulse.theta);
    std::cout << format_report_line(vp) << "\n";
    std::cout << "wrote " << run.config.output.dir << "/sdomain_{re,im}.fld\n";
    return 0;
}

struct SimulationData {
    SweepPlan plan;
    std::vector<SDomainField> sweep;
    TimeSeriesField series;
    std::vector<double> e1, e2;
    double parseval = 0.0;
    std::vector<EstimateReport> vp_reports;
};

SimulationData simulate_pipeline(const LoadedRun& run, int threads) {
    SimulationData data;
    data.plan = make_plan(run.config, run.pulse);
    data.sweep = run_sweep(run.medium, run.mesh, run.pulse, data.plan, threads);
    data.series = invert_to_time(data.sweep, data.plan);
    data.e1 = energy_e1(data.series, run.mesh, run.medium, run.pulse.c1());
    data.e2 = energy_e2(data.series, run.mesh, run.medium, run.pulse.c1());
    data.parseval = parseval_residual(data.sweep, data.series, data.plan, run.mesh);
    for (int k = 0; k < data.plan.ns; ++k) {
        const cd s = data.plan.s_at(k);
        const auto rho = rho_hat(run.pulse, s, run.mesh.nx, run.mesh.period);
        data.vp_reports.push_back(check_vp_bound(data.sweep[static_cast<std::size_t>(k)],
                                                 rho, run.mesh, s, run.medium,
                                                 run.pulse.theta));
    }
    return data;
}

void write_simulation_outputs(const LoadedRun& run, const SimulationData& data) {
    const std::string dir = run.config.output.dir;
    fs::create_directories(dir);

    if (run.config.output.traces) {
        std::vector<double> times(static_cast<std::size_t>(data.series.nt));
        for (int kt = 0; kt < data.series.nt; ++kt) times[kt] = data.series.time(kt);
        const std::vector<std::string> names = {"e1", "e2"};
        const std::vector<std::vector<double>> cols = {data.e1, data.e2};
        write_trace_csv(dir + "/energy.csv", times, names, cols);
    }
    if (run.config.output.snapshot_stride > 0) {
        for (int kt = 0; kt < data.series.nt; kt += run.config.output.snapshot_stride) {
            FieldSnapshot snap;
            snap.nx = run.mesh.nx;
            snap.nz = run.mesh.nz;
            snap.period = run.mesh.period;
            snap.h1 = run.mesh.h1;
            snap.h2 = run.mesh.h2;
            snap.t = data.series.time(kt);
            snap.data.assign(data.series.frame(kt), data.series.frame(kt) + data.series.ndof);
            char name[32];
            std::snprintf(name, sizeof(name), "field_%06d.fld", kt);
            write_snapshot(dir + "/" + name, snap);
        }
    }
}

int cmd_simulate(const CommonOpts& opts) {
    const auto run = load_run(opts);
    const auto data = simulate_pipeline(run, opts.threads);
    write_simulation_outputs(run, data);

    int vp_viol = 0;
    for (const auto& r : data.vp_reports)
        if (!r.pass) ++vp_viol;
    if (vp_viol > 0)
        std::cerr << "warning: solution bound exceeded at " << vp_viol << "/"
                  << data.plan.ns << " frequencies\n";

    std::cout << "plan s1=" << shortest(data.plan.s1) << " smax=" << shortest(data.plan.smax)
              << " ns=" << data.plan.ns << " nt=" << data.plan.nt << "\n";
    std::cout << "parseval_residual " << shortest(data.parseval) << "\n";
    std::cout << "wrote " << run.config.output.dir << "\n";
    return 0;
}

int cmd_report(const CommonOpts& opts) {
    const auto run = load_run(opts);
    const auto data = simulate_pipeline(run, opts.threads);

    std::vector<std::string> lines;
    bool all_pass = true;
    auto add = [&](const EstimateReport& r) {
        lines.push_back(format_report_line(r));
        all_pass = all_pass && r.pass;
    };

    for (const auto& r : data.vp_reports) add(r);
    // lemma checks on a few solved fields spread over the contour
    for (int k : {0, data.plan.ns / 2, data.plan.ns - 1}) {
        const auto& field = data.sweep[static_cast<std::size_t>(k)];
        for (const auto& r : check_lemma_tt(field, run.mesh, field.s)) add(r);
        for (int side = 1; side <= 2; ++side) {
            const auto trace = trace_of(field, run.mesh, side);
            add(check_lemma_dtn(trace, field.s, run.medium, run.pulse.c1()));
            add(check_lemma_tp(trace, field.s, run.medium, run.pulse.c1()));
        }
    }
    const StabilityBaselines base{run.config.output.baseline_st,
                                  run.config.output.baseline_es1,
                                  run.config.output.baseline_es2};
    for (const auto& r : stability_report(data.series, run.pulse, run.medium, run.mesh,
                                          data.plan.t_final, base))
        add(r);

    fs::create_directories(run.config.output.dir);
    std::ofstream out(run.config.output.dir + "/report.txt", std::ios::trunc);
    for (const auto& l : lines) {
        out << l << "\n";
        std::cout << l << "\n";
    }
    return all_pass ? 0 : 5;
}

int cmd_convergence(const CommonOpts& opts) {
    const auto run = load_run(opts);
    const cd s(0.4, 5.0);
    const std::vector<int> sizes = {16, 32, 64};

    const auto rows_h = oracle::convergence_homogeneous(
        run.pulse, s, sizes, run.medium.period, run.medium.h1, run.medium.h2);
    const double mid = 0.5 * (run.medium.h1 + run.medium.h2);
    const auto rows_l = oracle::convergence_two_layer(run.pulse, s, sizes,
                                                      run.medium.period, run.medium.h1,
                                                      run.medium.h2, mid, 2.0, 1.0);

    fs::create_directories(run.config.output.dir);
    auto dump = [&](const std::string& name,
                    const std::vector<oracle::ConvergenceRow>& rows) {
        std::ofstream out(run.config.output.dir + "/" + name, std::ios::trunc);
        out << "h,error,observed_order\n";
        std::cout << name << ":\n";
        char buf[128];
        for (const auto& r : rows) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g", r.h, r.error,
                          r.observed_order);
            out << buf << "\n";
            std::cout << "  h=" << shortest(r.h) << " error=" << shortest(r.error)
                      << " order=" << shortest(r.observed_order) << "\n";
        }
    };
    dump("convergence_homogeneous.csv", rows_h);
    dump("convergence_two_layer.csv", rows_l);
    return 0;
}

int cmd_check(const CommonOpts& opts) {
    const auto results = run_property_suite(opts.seed);
    bool all_pass = true;

    std::ostringstream body;
    for (const auto& r : results) {
        for (const auto& l : r.lines) body << l << "\n";
        all_pass = all_pass && r.pass;
    }
    std::cout << body.str();

    if (!opts.out_dir.empty()) {
        fs::create_directories(opts.out_dir);
        std::ofstream out(opts.out_dir + "/check_report.txt", std::ios::trunc);
        out << body.str();
    }
    return all_pass ? 0 : 5;
}

} // namespace

int cli_main(const std::vector<std::string>& args) {
    CLI::App app{"time-domain scattering by periodic gratings via exact "
                 "transparent boundary conditions"};
    app.require_subcommand(1);

    CommonOpts opts;
    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* c = sub->add_option("--config", opts.config_path, "run configuration file");
        if (needs_config) c->required();
        sub->add_option("--out", opts.out_dir, "output directory override");
        sub->add_option("--threads", opts.threads, "parallel sweep workers");
        sub->add_option("--seed", opts.seed, "seed for randomized checks");
    };

    auto* validate_cmd = app.add_subcommand("validate", "check the medium invariants");
    add_common(validate_cmd, true);
    auto* solve_cmd = app.add_subcommand("solve-sdomain", "single-frequency solve");
    add_common(solve_cmd, true);
    solve_cmd->add_option("--s", opts.s_value, "Laplace frequency 're,im'");
    solve_cmd->add_flag("--modes", opts.modes, "print the per-mode symbol table");
    auto* simulate_cmd = app.add_subcommand("simulate", "frequency sweep + inversion");
    add_common(simulate_cmd, true);
    auto* report_cmd = app.add_subcommand("report", "stability and lemma reports");
    add_common(report_cmd, true);
    auto* conv_cmd = app.add_subcommand("convergence", "solver-vs-oracle tables");
    add_common(conv_cmd, true);
    auto* check_cmd = app.add_subcommand("check", "randomized property suite");
    add_common(check_cmd, false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            std::cout << app.help();
            return 0;
        }
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (validate_cmd->parsed()) return cmd_validate(opts);
        if (solve_cmd->parsed()) return cmd_solve_sdomain(opts);
        if (simulate_cmd->parsed()) return cmd_simulate(opts);
        if (report_cmd->parsed()) return cmd_report(opts);
        if (conv_cmd->parsed()) return cmd_convergence(opts);
        if (check_cmd->parsed()) return cmd_check(opts);
    } catch (const Error& e) {
        std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
        const std::string& c = e.code();
        if (c == "solver_failure" || c == "sweep_failure") return 4;
        if (c == "positivity" || c == "epsmu_below_freespace" || c == "exterior_constancy")
            return 3;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 2;
}

} // namespace gratetd
