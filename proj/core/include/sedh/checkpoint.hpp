#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "sedh/dynamics.hpp"

namespace sedh {

class CheckpointError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Binary checkpoint: magic "SEDH", format version, config hash, then the
/// trajectory progress fields in fixed order. Raw double bits round-trip, so
/// a resumed run continues bit-identically on the same platform and build.
void write_checkpoint(std::ostream& out, std::uint64_t config_hash, const TrajectoryProgress& pr);
void write_checkpoint_file(const std::string& path, std::uint64_t config_hash,
                           const TrajectoryProgress& pr);

/// Throws CheckpointError on bad magic, version mismatch, truncation, or a
/// config hash that differs from expected_config_hash.
TrajectoryProgress read_checkpoint(std::istream& in, std::uint64_t expected_config_hash);
TrajectoryProgress read_checkpoint_file(const std::string& path,
                                        std::uint64_t expected_config_hash);

}  // namespace sedh
