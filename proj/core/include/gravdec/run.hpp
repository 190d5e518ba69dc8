#pragma once

#include <filesystem>
#include <optional>

#include "gravdec/config.hpp"

namespace gravdec {

/// Files written by a run.
struct RunArtifacts {
    std::filesystem::path csv;
    std::filesystem::path summary;
    std::optional<std::filesystem::path> oracle_report;
};

/// Execute a validated config: sample the partition, resolve the time grid,
/// run the sweep, and write
///   <out_dir>/<name>_sweep.csv     header t,gamma_abs,b_mac_1..M, every
///                                  value rendered with 17 significant digits
///   <out_dir>/<name>_summary.json  derived scales, regime ratios, seed and
///                                  config hash
/// With oracle_checks, closed forms are cross-checked against the truncated
/// Fock oracle on a subsample of modes and times, and the deviations go to
/// <out_dir>/<name>_oracle.json.
RunArtifacts run(const RunConfig& cfg, std::uint64_t seed,
                 const std::filesystem::path& out_dir,
                 bool oracle_checks = false);

}  // namespace gravdec
