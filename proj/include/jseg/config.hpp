#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "jseg/controller.hpp"

namespace jseg {

/// Environment variable naming a config file applied when no --params is given.
inline constexpr const char* kConfigEnvVar = "JSEG_CONFIG";

/// Applies `key = value` lines to `params`. Blank lines and `#` comments are
/// skipped; unknown keys and bad values raise ParseError with the line number.
/// `controller.idle_timeout_s = inf` disables battery saving.
void apply_config(std::string_view text, const std::string& source, ControllerParams& params);

ControllerParams load_config(const std::filesystem::path& path);

/// Every key with its current value, one per line, in a form `apply_config`
/// accepts.
std::string format_config(const ControllerParams& params);

/// Path from kConfigEnvVar, if set and non-empty.
std::optional<std::filesystem::path> config_path_from_env();

}  // namespace jseg
