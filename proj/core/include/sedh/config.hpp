#pragma once

#include <cstdint>
#include <string>

#include "sedh/dynamics.hpp"

namespace sedh {

class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, std::string key, const std::string& what)
        : std::runtime_error("config line " + std::to_string(line) + " (" + key + "): " + what),
          line_number(line),
          key(std::move(key)) {}
    int line_number;
    std::string key;
};

/// Run configuration plus output settings, as read from a key-value file.
struct FileConfig {
    RunConfig run;
    std::string out_dir;
};

/// Parse `key = value` lines ('#' comments). Unknown keys are rejected with
/// the offending line and key; values are type-checked.
FileConfig parse_config(const std::string& text);
FileConfig load_config_file(const std::string& path);

/// Canonical serialization: fixed key order, full double precision. This is
/// both the reproducibility artifact written into the run directory and the
/// input of config_hash().
std::string canonical_config_text(const FileConfig& cfg);

std::uint64_t fnv1a64(const std::string& text);

/// Physics identity of a run: hashes the canonical RunConfig fields only, so
/// moving a run directory does not invalidate its checkpoints.
inline std::uint64_t config_hash(const FileConfig& cfg) {
    FileConfig physics = cfg;
    physics.out_dir.clear();
    return fnv1a64(canonical_config_text(physics));
}

}  // namespace sedh
