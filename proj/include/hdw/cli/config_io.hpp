#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hdw/harness/experiment.hpp"

namespace hdw::cli {

// Config text is INI: sections [scenario] [mobility] [dqn] [weighting]
// [experiment], one key = value per line, ';' or '#' comments. Every key has
// a built-in default, so an empty file is a complete configuration.

harness::Config default_config();

/// Every accepted dotted key ("scenario.grid_h", ...), in echo order.
std::vector<std::string> config_keys();

/// Sets one dotted key from text. Throws ConfigError on an unknown key or a
/// value of the wrong type.
void apply_setting(harness::Config& cfg, const std::string& key, const std::string& value);

/// Applies "key=value" overrides in order.
void apply_overrides(harness::Config& cfg, const std::vector<std::string>& overrides);

/// Parses INI text on top of the defaults, applies overrides, validates.
harness::Config parse_config(const std::string& text,
                             const std::vector<std::string>& overrides = {});

/// Reads a file (empty path means defaults only) and calls parse_config.
harness::Config load_config(const std::filesystem::path& path,
                            const std::vector<std::string>& overrides = {});

/// Fully resolved INI text. parse_config(to_ini(c)) == c.
std::string to_ini(const harness::Config& cfg);

/// Hex FNV-1a of to_ini(cfg).
std::string config_hash(const harness::Config& cfg);

}  // namespace hdw::cli
