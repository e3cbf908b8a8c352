#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace sedh::cli {

// Exit code contract: 0 completed, 1 error, 2 ionisation.
inline constexpr int exit_ok = 0;
inline constexpr int exit_error = 1;
inline constexpr int exit_ionised = 2;

struct RunOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<int> ensemble;
};

/// Run one trajectory (or an ensemble of seeds in parallel workers) from a
/// config file; writes time series, event log, checkpoints and summary into
/// the output directory.
int cmd_run(const std::string& config_path, const RunOverrides& overrides = {});

/// Continue a checkpointed run in place; the completed output files are
/// byte-identical to an uninterrupted run.
int cmd_resume(const std::string& run_dir);

enum class VerifyLevel { quick, full };

struct VerifyOptions {
    VerifyLevel level = VerifyLevel::quick;
    int threads = 0;  // 0 = hardware concurrency
    bool tamper_lambda = false;  // mutation hook: corrupt one basis entry, the suite must fail
    std::uint64_t seed = 1;
};

/// Field-synthesis verification: basis contraction identity, gauge and
/// derivative consistency, and Monte-Carlo correlator targets with a z-score
/// table. Returns 0 iff every check passes.
int cmd_verify_correlators(const VerifyOptions& opts = {});

/// Histogram + distribution-distance report for a completed run directory.
int cmd_analyze(const std::string& run_dir);

}  // namespace sedh::cli
