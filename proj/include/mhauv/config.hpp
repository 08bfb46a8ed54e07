#pragma once

#include <string>

#include "mhauv/engine.hpp"
#include "mhauv/scenario.hpp"

namespace mhauv {

/// Malformed configuration; the message names the key and its line.
class ConfigError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

struct Config {
    Scenario scenario = default_scenario();
    ComparisonSpec comparison;
};

/// Parses YAML text. Missing keys keep their defaults and unknown keys are
/// rejected. Without an `initial` section the vehicle starts at rest on the
/// reference.
[[nodiscard]] Config parse_config(const std::string& text, const std::string& source = "config");

[[nodiscard]] Config load_config(const std::string& path);

/// Full YAML serialization; parse_config(dump_config(c)) reproduces c.
[[nodiscard]] std::string dump_config(const Config& config);

}  // namespace mhauv
