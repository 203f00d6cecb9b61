#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "v2vq/params.hpp"

namespace v2vq {

// Shadowing draw policy for the simulator. per_slot redraws fading on every
// retransmission slot (geometric retry model); per_hop freezes one draw per
// hop for sensitivity study.
enum class FadingMode { per_slot, per_hop };

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Full parameter snapshot plus the simulator fading switch. Tracks which
// keys were set explicitly (file or override) so the CLI can report which
// values fell back to documented defaults.
struct Config {
    RadioParams radio;
    ScenarioParams scenario;
    ServiceProfile profile;
    FadingMode fading_mode = FadingMode::per_slot;
    std::set<std::string> explicit_keys;
};

// Canonical key order used by the config format and serializer.
const std::vector<std::string>& config_keys();

// Parse `key = value` lines; `#` starts a comment; unknown keys are errors.
// Keys not present keep their defaults.
Config parse_config_text(const std::string& text);
Config load_config_file(const std::string& path);

// Apply one `key=value` override on top of an existing config (last wins).
void apply_override(Config& config, const std::string& assignment);

// Render every key with 17 significant digits so parse(serialize(c))
// compares equal field-by-field.
std::string serialize_config(const Config& config);

// Keys still holding documented defaults (canonical order).
std::vector<std::string> defaulted_keys(const Config& config);

// Look up the current value of a numeric key as rendered by the serializer.
std::string config_value(const Config& config, const std::string& key);

// Validate radio, scenario and profile together, aggregating all issues.
void validate_config(const Config& config);

std::string to_string(FadingMode mode);
FadingMode fading_mode_from_string(const std::string& text);

} // namespace v2vq
