#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "gravdec/ensemble.hpp"

namespace gravdec {

/// Parse, schema or physical-validation failure, with field context in the
/// message.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A fully validated run description.
struct RunConfig {
    std::string name = "run";
    Scenario scenario;
    FrequencyDistribution freq_unobserved;
    FrequencyDistribution freq_observed;
    int n_unobserved = 1;
    int n_mac = 1;
    int n_fractions = 1;
    StateTemplate state;
    TimeGrid grid;
    /// When set, t_max is resolved at run time to 5 * tau_dst (falling back
    /// to 5 * tau_dec for information-free environments).
    bool auto_t_max = true;
    std::uint64_t seed = 0;
    /// Reference time for the length scales in the summary; defaults to
    /// tau_dst when unset.
    std::optional<double> reference_time;

    void validate() const;
};

/// Load and validate a JSON run description. Unknown keys are rejected.
RunConfig load_config(const std::filesystem::path& path);

/// Parse a run description from a JSON string (the file loader and the
/// presets both end up here).
RunConfig parse_config(const std::string& text, const std::string& origin);

/// Bundled presets: "fig1a" (one unobserved oscillator at 3.6e11 rad/s, one
/// observed at 4.9e11 rad/s) and "fig1b" (1000 + 1000 modes drawn uniformly
/// from [1e11, 5e11] rad/s), both at T = 10 K, |alpha| = 1, dX = 1e-6 m.
RunConfig preset(const std::string& name);

/// JSON text of a bundled preset (what load_config would have read).
std::string preset_text(const std::string& name);

/// Canonical (sorted-key) JSON rendering of a config, the input of
/// config_hash.
std::string canonical_json(const RunConfig& cfg);

/// FNV-1a 64-bit hash of the canonical JSON rendering.
std::uint64_t config_hash(const RunConfig& cfg);

}  // namespace gravdec
