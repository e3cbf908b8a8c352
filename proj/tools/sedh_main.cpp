// Command line front end: run / resume / verify-correlators / analyze.

#include <string>

#include "CLI11.hpp"

#include "sedh/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"stochastic-field hydrogen orbit simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int ensemble = 0;

    auto* run = app.add_subcommand("run", "integrate a trajectory from a config file");
    run->add_option("config", config_path, "key = value configuration file")->required();
    run->add_option("--out", out_dir, "output directory (overrides config / SEDH_OUT_DIR)");
    run->add_option("--seed", seed, "master seed override")->each([&](const std::string&) {
        seed_set = true;
    });
    run->add_option("--ensemble", ensemble, "run this many seeds in parallel workers");

    std::string resume_dir;
    auto* resume = app.add_subcommand("resume", "continue a checkpointed run directory");
    resume->add_option("run_dir", resume_dir, "directory holding config.sedh + checkpoint.sedh")
        ->required();

    std::string level = "quick";
    int threads = 0;
    bool tamper = false;
    auto* verify = app.add_subcommand("verify-correlators",
                                      "field synthesis identity/consistency/correlator suite");
    verify->add_option("--level", level, "quick | full")
        ->check(CLI::IsMember({"quick", "full"}));
    verify->add_option("--threads", threads, "worker threads for the Monte-Carlo suites");
    verify->add_flag("--self-test-tamper", tamper,
                     "corrupt one basis entry; the identity check must then fail");

    std::string analyze_dir;
    auto* analyze = app.add_subcommand("analyze", "histograms + distribution distances for a run");
    analyze->add_option("run_dir", analyze_dir, "completed run directory")->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        sedh::cli::RunOverrides ov;
        if (seed_set) ov.seed = seed;
        if (!out_dir.empty()) ov.out_dir = out_dir;
        if (ensemble > 0) ov.ensemble = ensemble;
        return sedh::cli::cmd_run(config_path, ov);
    }
    if (resume->parsed()) return sedh::cli::cmd_resume(resume_dir);
    if (verify->parsed()) {
        sedh::cli::VerifyOptions opts;
        opts.level = level == "full" ? sedh::cli::VerifyLevel::full : sedh::cli::VerifyLevel::quick;
        opts.threads = threads;
        opts.tamper_lambda = tamper;
        return sedh::cli::cmd_verify_correlators(opts);
    }
    if (analyze->parsed()) return sedh::cli::cmd_analyze(analyze_dir);
    return sedh::cli::exit_error;
}
