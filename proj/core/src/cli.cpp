#include "sedh/cli.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>
#include <vector>

#include "json.hpp"

#include "sedh/checkpoint.hpp"
#include "sedh/config.hpp"
#include "sedh/correlators.hpp"
#include "sedh/io.hpp"
#include "sedh/lambda.hpp"
#include "sedh/verify.hpp"

namespace fs = std::filesystem;

namespace sedh::cli {

namespace {

struct RunFiles {
    fs::path dir;
    fs::path config() const { return dir / "config.sedh"; }
    fs::path timeseries() const { return dir / "timeseries.csv"; }
    fs::path events() const { return dir / "events.jsonl"; }
    fs::path checkpoint() const { return dir / "checkpoint.sedh"; }
    fs::path summary() const { return dir / "summary.json"; }
};

int stop_to_exit(StopReason reason) {
    switch (reason) {
        case StopReason::reached_t_end: return exit_ok;
        case StopReason::ionised: return exit_ionised;
        case StopReason::aborted: return exit_error;
    }
    return exit_error;
}

/// Drive one trajectory with file-backed sinks. resume_rows >= 0 reopens the
/// time series truncated to that many rows.
StopReason drive(Trajectory& traj, const FileConfig& cfg, const RunFiles& files,
                 long long resume_rows, const std::vector<Event>& replay_events) {
    TimeSeriesWriter ts(files.timeseries().string(), resume_rows);
    EventWriter events(files.events().string(), replay_events);
    std::uint64_t hash = config_hash(cfg);

    TrajectorySinks sinks;
    sinks.row = [&](const TimeSeriesRow& row) { ts.row(row); };
    sinks.event = [&](const Event& ev) { events.event(ev); };
    sinks.checkpoint = [&](const TrajectoryProgress& pr) {
        write_checkpoint_file(files.checkpoint().string(), hash, pr);
    };

    StopReason reason = traj.run(sinks);
    ts.flush();
    write_checkpoint_file(files.checkpoint().string(), hash, traj.progress());

    TrajectorySummary summary = traj.summary();
    write_summary_json(files.summary().string(), make_run_summary(summary, cfg.run.params()),
                       reason, summary);
    return reason;
}

StopReason run_single(const FileConfig& cfg, const RunFiles& files) {
    Trajectory traj(cfg.run);
    traj.init();
    return drive(traj, cfg, files, -1, {});
}

int run_ensemble(const FileConfig& cfg, const RunFiles& top) {
    int n = cfg.run.ensemble;
    std::vector<StopReason> reasons(static_cast<std::size_t>(n), StopReason::reached_t_end);
    std::vector<std::thread> workers;
    std::vector<std::string> errors(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        workers.emplace_back([&, i]() {
            try {
                FileConfig sub = cfg;
                sub.run.seed = cfg.run.seed + static_cast<std::uint64_t>(i);
                sub.run.ensemble = 1;
                char name[32];
                std::snprintf(name, sizeof(name), "ens_%03d", i);
                RunFiles files{top.dir / name};
                fs::create_directories(files.dir);
                sub.out_dir = files.dir.string();
                std::ofstream cfg_out(files.config());
                cfg_out << canonical_config_text(sub);
                cfg_out.close();
                reasons[static_cast<std::size_t>(i)] = run_single(sub, files);
            } catch (const std::exception& err) {
                errors[static_cast<std::size_t>(i)] = err.what();
            }
        });
    }
    for (auto& w : workers) w.join();

    for (int i = 0; i < n; ++i) {
        if (!errors[static_cast<std::size_t>(i)].empty()) {
            std::cerr << "ensemble worker " << i << " failed: " << errors[static_cast<std::size_t>(i)]
                      << "\n";
            return exit_error;
        }
    }

    // merged summary over workers
    Histogram energy(-4.0, 0.0, 100), radius(0.0, 6.0, 100);
    double t_total = 0.0, n_orbit = 0.0;
    std::uint64_t pushes = 0, cutoffs = 0;
    bool any_ionised = false;
    for (int i = 0; i < n; ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "ens_%03d", i);
        std::ifstream in(top.dir / name / "summary.json");
        nlohmann::json j;
        in >> j;
        t_total += j["t_total"].get<double>();
        n_orbit += j["n_orbit"].get<double>();
        pushes += j["pushes"].get<std::uint64_t>();
        cutoffs += j["cutoff_updates"].get<std::uint64_t>();
        any_ionised = any_ionised || j["ionised"].get<bool>();
    }
    nlohmann::json j;
    j["ensemble"] = n;
    j["t_total"] = t_total;
    j["n_orbit"] = n_orbit;
    j["pushes"] = pushes;
    j["cutoff_updates"] = cutoffs;
    j["ionised"] = any_ionised;
    std::ofstream out(top.summary());
    out << j.dump(2) << "\n";

    if (any_ionised) return exit_ionised;
    return exit_ok;
}

}  // namespace

int cmd_run(const std::string& config_path, const RunOverrides& overrides) {
    try {
        FileConfig cfg = load_config_file(config_path);
        if (overrides.seed) cfg.run.seed = *overrides.seed;
        if (overrides.ensemble) cfg.run.ensemble = *overrides.ensemble;
        if (overrides.out_dir) cfg.out_dir = *overrides.out_dir;
        if (cfg.out_dir.empty()) {
            if (const char* env = std::getenv("SEDH_OUT_DIR")) cfg.out_dir = env;
        }
        if (cfg.out_dir.empty()) {
            std::cerr << "no output directory: set out_dir in the config, pass --out, "
                         "or export SEDH_OUT_DIR\n";
            return exit_error;
        }
        cfg.run.validate();

        RunFiles files{fs::path(cfg.out_dir)};
        fs::create_directories(files.dir);
        {
            std::ofstream out(files.config());
            out << canonical_config_text(cfg);
        }
        if (cfg.run.ensemble > 1) return run_ensemble(cfg, files);
        return stop_to_exit(run_single(cfg, files));
    } catch (const ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return exit_error;
    } catch (const std::exception& err) {
        std::cerr << "run failed: " << err.what() << "\n";
        return exit_error;
    }
}

int cmd_resume(const std::string& run_dir) {
    try {
        RunFiles files{fs::path(run_dir)};
        if (!fs::exists(files.config())) {
            std::cerr << "resume: missing " << files.config() << "\n";
            return exit_error;
        }
        if (!fs::exists(files.checkpoint())) {
            std::cerr << "resume: missing " << files.checkpoint() << "\n";
            return exit_error;
        }
        FileConfig cfg = load_config_file(files.config().string());
        TrajectoryProgress pr =
            read_checkpoint_file(files.checkpoint().string(), config_hash(cfg));

        Trajectory traj(cfg.run);
        traj.resume(pr);
        if (pr.state.t >= cfg.run.t_end) {
            std::cerr << "resume: run already complete\n";
            return exit_ok;
        }
        return stop_to_exit(
            drive(traj, cfg, files, static_cast<long long>(pr.rows_emitted), pr.events));
    } catch (const CheckpointError& err) {
        std::cerr << "checkpoint error: " << err.what() << "\n";
        return exit_error;
    } catch (const std::exception& err) {
        std::cerr << "resume failed: " << err.what() << "\n";
        return exit_error;
    }
}

namespace {

struct CheckLine {
    std::string name;
    double value;
    double threshold;  // pass when |value| <= threshold
    bool pass;
};

void print_table(const std::vector<CheckLine>& lines) {
    std::printf("%-44s %14s %12s  %s\n", "check", "value", "limit", "verdict");
    for (const auto& l : lines) {
        std::printf("%-44s %14.5e %12.3e  %s\n", l.name.c_str(), l.value, l.threshold,
                    l.pass ? "pass" : "FAIL");
    }
}

double analytic_target(double dt, double tau_c) {
    std::complex<double> sigma(dt, -tau_c);
    return -std::real(1.0 / (sigma * sigma)) / std::numbers::pi;
}

}  // namespace

int cmd_verify_correlators(const VerifyOptions& opts) {
    const bool full = opts.level == VerifyLevel::full;
    std::vector<CheckLine> lines;
    auto add = [&](const std::string& name, double value, double threshold) {
        lines.push_back({name, value, threshold, std::fabs(value) <= threshold});
    };

    // 1. basis contraction identity (all 81 tuples)
    auto basis = lambda_basis();
    if (opts.tamper_lambda) basis[7](2, 2) = -1.0;
    add("lambda contraction identity", lambda_contraction_error(basis), 1e-12);

    // 2. gauge + derivative consistency at random points
    int n_points = full ? 100 : 20;
    auto worst = verify::field_consistency(n_points, opts.seed, 3.0 / 137.036);
    add("gauge: |div A| h / |A|", worst.gauge, 1e-6);
    add("E vs -dA/dt (rel)", worst.e_field, 1e-5);
    add("F vs curl A (rel)", worst.f_tensor, 1e-5);

    // 3. Monte-Carlo correlator targets, z-scored
    McSettings mc;
    mc.seed = opts.seed;
    mc.threads = opts.threads;
    mc.tau_c = 0.5;
    mc.grid_n = full ? 2000.0 : 500.0;
    mc.omega_max = 40.0;
    mc.n_ensembles = full ? 20000 : 1000;
    mc.base_times = full ? 64 : 32;
    mc.t_span = full ? 1800.0 : 400.0;

    std::vector<double> dts = full ? std::vector<double>{0.5, 1.0, 2.0, 5.0}
                                   : std::vector<double>{1.0, 2.0};
    std::vector<CorrelatorPoint> points;
    for (double dt : dts) points.push_back({{}, {}, dt});
    auto estimates = mc_autocorrelator(mc, points);
    for (std::size_t k = 0; k < points.size(); ++k) {
        double target = analytic_target(points[k].dt, mc.tau_c);
        for (int i = 0; i < 3; ++i) {
            double z = (estimates[k].mean(i, i) - target) / estimates[k].se(i, i);
            add("corr dt=" + std::to_string(points[k].dt).substr(0, 4) + " diag z[" +
                    std::to_string(i) + "]",
                z, 4.0);
        }
        double worst_off = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                worst_off = std::max(worst_off,
                                     std::fabs(estimates[k].mean(i, j) / estimates[k].se(i, j)));
            }
        add("corr dt=" + std::to_string(points[k].dt).substr(0, 4) + " offdiag max|z|",
            worst_off, 4.0);
    }

    // 4. translation invariance of the synthesized correlator through order
    //    r^2 (difference estimator on shared banks)
    {
        McSettings tr = mc;
        tr.tau_c = 1.0;
        tr.grid_n = 400.0;
        tr.omega_max = 15.0;
        tr.n_ensembles = full ? 4000 : 800;
        tr.t_span = 350.0;
        tr.base_times = 32;
        CorrelatorPoint pt{{0.1, 0.0, 0.0}, {0.0, 0.0, 0.0}, 1.0};
        auto diff = mc_translation_difference(tr, pt, {0.2, 0.0, 0.0}, 0.0);
        double worst_z = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                worst_z = std::max(worst_z, std::fabs(diff.mean(i, j) / diff.se(i, j)));
            }
        add("translation invariance max|z|", worst_z, 4.0);
    }

    // 5. quadratic coefficient tensor vs the closed form
    if (full) {
        McSettings qd = mc;
        qd.tau_c = 1.5;
        qd.grid_n = 2000.0;
        qd.omega_max = 12.0;
        qd.n_ensembles = 100000;
        qd.base_times = 32;
        qd.t_span = 1800.0;
        for (double dt : {0.5, 1.0, 2.0}) {
            auto est = mc_quadratic_coefficient(qd, 0.1, dt);
            std::complex<double> sigma(dt, -qd.tau_c);
            std::complex<double> s4 = sigma * sigma * sigma * sigma;
            double coeff = 0.6 / std::numbers::pi * std::real(1.0 / s4);
            double num = 0.0, den = 0.0;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    double target = coeff * ((i == 0 && j == 0) ? -1.0 : (i == j ? -2.0 : 0.0));
                    num += (est.mean(i, j) - target) * (est.mean(i, j) - target);
                    den += target * target;
                }
            add("r^2 coefficient dt=" + std::to_string(dt).substr(0, 4) + " rel err",
                std::sqrt(num / den), 0.10);
        }
    }

    print_table(lines);
    bool all_pass = true;
    for (const auto& l : lines) all_pass = all_pass && l.pass;
    std::printf("verify-correlators: %s\n", all_pass ? "all checks passed" : "FAILURES present");
    return all_pass ? exit_ok : exit_error;
}

int cmd_analyze(const std::string& run_dir) {
    try {
        RunFiles files{fs::path(run_dir)};
        std::ifstream ts(files.timeseries());
        if (!ts) {
            std::cerr << "analyze: missing " << files.timeseries() << "\n";
            return exit_error;
        }
        std::string line;
        if (!std::getline(ts, line) || line != TimeSeriesWriter::header) {
            std::cerr << "analyze: corrupt time series header\n";
            return exit_error;
        }
        std::vector<double> t, energy, radius;
        while (std::getline(ts, line)) {
            if (line.empty()) continue;
            std::istringstream row(line);
            std::string cell;
            std::vector<double> cols;
            while (std::getline(row, cell, ',')) cols.push_back(std::stod(cell));
            if (cols.size() < 3) {
                std::cerr << "analyze: corrupt time series row\n";
                return exit_error;
            }
            t.push_back(cols[0]);
            energy.push_back(cols[1]);
            radius.push_back(cols[2]);
        }
        if (t.empty()) {
            std::cerr << "analyze: time series holds no rows\n";
            return exit_error;
        }

        // dwell weights from row time differences
        std::vector<double> w(t.size(), 0.0);
        for (std::size_t i = 1; i < t.size(); ++i) w[i] = t[i] - t[i - 1];
        w[0] = t.size() > 1 ? w[1] : 1.0;

        Histogram e_hist(-4.0, 0.0, 100), r_hist(0.0, 6.0, 100);
        for (std::size_t i = 0; i < t.size(); ++i) {
            e_hist.add(energy[i], w[i]);
            r_hist.add(radius[i], w[i]);
        }

        NumericCdf e_cdf([](double x) { return conjecture_energy_pdf(x); }, -100.0, -0.02);
        NumericCdf r_cdf([](double x) { return quantum_radial_pdf(x); }, 0.0, 30.0);
        double ks_e = ks_distance_weighted(energy, w, e_cdf);
        double ks_r = ks_distance_weighted(radius, w, r_cdf);

        nlohmann::json j;
        j["rows"] = t.size();
        j["ks_energy_vs_conjecture"] = ks_e;
        j["ks_radius_vs_quantum"] = ks_r;
        j["energy_bins_occupied"] = e_hist.occupied();
        j["radius_bins_occupied"] = r_hist.occupied();
        std::ofstream out(files.dir / "analysis.json");
        out << j.dump(2) << "\n";

        write_histogram_csv((files.dir / "energy_hist.csv").string(), e_hist,
                            [](double x) { return x < 0.0 ? conjecture_energy_pdf(x) : 0.0; });
        write_histogram_csv((files.dir / "radius_hist.csv").string(), r_hist,
                            [](double x) { return x >= 0.0 ? quantum_radial_pdf(x) : 0.0; });
        write_svg_overlay((files.dir / "energy.svg").string(), e_hist,
                          [](double x) { return x < 0.0 ? conjecture_energy_pdf(x) : 0.0; },
                          "dwell-weighted energy density vs conjecture", "E (Bohr units)");
        write_svg_overlay((files.dir / "radius.svg").string(), r_hist,
                          [](double x) { return x >= 0.0 ? quantum_radial_pdf(x) : 0.0; },
                          "dwell-weighted radial density vs 1s prediction", "r (Bohr radii)");
        std::printf("analyze: %zu rows, KS(E)=%.4f KS(r)=%.4f\n", t.size(), ks_e, ks_r);
        return exit_ok;
    } catch (const std::exception& err) {
        std::cerr << "analyze failed: " << err.what() << "\n";
        return exit_error;
    }
}

}  // namespace sedh::cli
